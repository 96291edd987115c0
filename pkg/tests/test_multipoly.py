import random
from fractions import Fraction

import pytest

from closurelab.arith import GF, QQ
from closurelab.errors import (MissingAssignment, ParseError, RingMismatch,
                               UnknownVariable, UnsupportedField)
from closurelab.multipoly import (PolyRing, grevlex_key, parse_poly,
                                  parse_presentation, parse_univariate)


def test_parse_table_row():
    p = parse_presentation("Q[x,y]/(x^2, y^2)")
    assert p.field.kind == "rationals"
    assert p.variables == ("x", "y")
    assert len(p.relations) == 2


def test_parse_ideal_power_sugar():
    p = parse_presentation("F2[x1,x2,x3,x4]/((x1,x2,x3,x4)^2)")
    assert len(p.relations) == 10          # all quadratic monomials in 4 vars
    assert all(r.total_degree() == 2 and len(r.terms) == 1 for r in p.relations)


def test_parse_empty_relations():
    p = parse_presentation("Q[x]/()")
    assert p.relations == ()


def test_round_trip():
    texts = ["Q[x,y]/(x^2, y^2)", "Q[x,y]/(x^2 + y^3, xy)",
             "F2[x1,x2,x3,x4]/((x1,x2,x3,x4)^2)",
             "GF(2,2)[x,y]/(x^2 + t*y, xy)",
             "Q[x,y,z]/(xy, z^2, xz - yz, x^2 + y^2 - xz)"]
    for text in texts:
        p = parse_presentation(text)
        assert parse_presentation(str(p)) == p


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as err:
        parse_presentation("Q[x,y]/(x^2 + ?)")
    assert err.value.position is not None
    with pytest.raises(UnknownVariable):
        parse_presentation("Q[x]/(x*w)")
    with pytest.raises(UnsupportedField):
        parse_presentation("F6[x]/(x^2)")


def test_poly_mul_examples():
    ring = PolyRing(QQ(), ("x", "y"))
    a = parse_poly("x+y", ring)
    b = parse_poly("x-y", ring)
    assert a * b == parse_poly("x^2 - y^2", ring)
    ring2 = PolyRing(GF(2), ("x", "y"))
    s = parse_poly("x+y", ring2)
    assert s * s == parse_poly("x^2 + y^2", ring2)


def test_homogeneous_flag_propagates():
    ring = PolyRing(QQ(), ("x", "y"))
    a = parse_poly("x^2 + x*y", ring)          # degree 2, homogeneous
    b = parse_poly("x^3 - y^3", ring)          # degree 3, homogeneous
    assert a.is_homogeneous() and b.is_homogeneous()
    prod = a * b
    assert prod.is_homogeneous() and prod.total_degree() == 5
    assert not (a + ring.one()).is_homogeneous()


def test_substitute_examples():
    ring = PolyRing(QQ(), ("x", "y"))
    target = PolyRing(QQ(), ("u", "v"))
    x2 = parse_poly("x^2", ring)
    img = x2.substitute({0: parse_poly("u+v", target), 1: target.zero()})
    assert img == parse_poly("u^2 + 2*u*v + v^2", target)
    const = ring.const(Fraction(5))
    assert const.substitute({0: target.zero(), 1: target.zero()}).coeff(
        (0, 0)) == Fraction(5)
    with pytest.raises(MissingAssignment):
        parse_poly("x*y", ring).substitute({0: parse_poly("u", target)})


def test_substitute_is_morphism():
    rng = random.Random(20260808)
    for field in (QQ(), GF(7)):
        ring = PolyRing(field, ("x", "y", "z"))
        target = PolyRing(field, ("u", "v"))

        def rand_poly(r, nv, deg):
            out = r.zero()
            for _ in range(4):
                exps = tuple(rng.randint(0, deg) for _ in range(nv))
                out = out + r.monomial(exps, field.random_element(rng))
            return out

        images = {i: rand_poly(target, 2, 2) for i in range(3)}
        for _ in range(40):
            a = rand_poly(ring, 3, 2)
            b = rand_poly(ring, 3, 2)
            assert (a * b).substitute(images) == \
                a.substitute(images) * b.substitute(images)
            assert (a + b).substitute(images) == \
                a.substitute(images) + b.substitute(images)


@pytest.mark.parametrize("field", [QQ(), GF(7), GF(2, 2)])
def test_ring_axioms(field):
    rng = random.Random(42)
    ring = PolyRing(field, ("a", "b", "c", "d"))

    def rand_poly():
        out = ring.zero()
        for _ in range(rng.randint(0, 4)):
            exps = tuple(rng.randint(0, 5) for _ in range(4))
            out = out + ring.monomial(exps, field.random_element(rng))
        return out

    for _ in range(500):
        p, q, r = rand_poly(), rand_poly(), rand_poly()
        assert (p + q) * r == p * r + q * r
        assert p * q == q * p
        assert (p * q) * r == p * (q * r)
        assert p + (-p) == ring.zero()


def test_ring_mismatch():
    a = parse_poly("x", PolyRing(QQ(), ("x",)))
    b = parse_poly("x", PolyRing(GF(7), ("x",)))
    with pytest.raises(RingMismatch):
        a * b


def test_grevlex_order():
    # degree first; within a degree the last nonzero of the difference decides
    x2, xy, y2 = (2, 0), (1, 1), (0, 2)
    assert grevlex_key(x2) > grevlex_key(xy) > grevlex_key(y2)
    assert grevlex_key((1, 0)) < grevlex_key(y2)


def test_parse_univariate():
    coeffs, var = parse_univariate("Z^3-6Z^2+11Z-6", QQ())
    assert var == "Z"
    assert coeffs == [Fraction(-6), Fraction(11), Fraction(-6), Fraction(1)]
    coeffs2, _ = parse_univariate("X^2", QQ())
    assert coeffs2 == [Fraction(0), Fraction(0), Fraction(1)]
    with pytest.raises(ParseError):
        parse_univariate("X^2 + Y", QQ())
