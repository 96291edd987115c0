"""Property suites: executable forms of the structural facts the closure
construction must satisfy.  Each suite returns (name, ok, detail) triples;
the CLI `verify` command and the acceptance tests run them."""

from __future__ import annotations

import random
from fractions import Fraction

from .arith import GF, QQ
from .catalog import table1_entries
from .closure import (base_change_presentation, closure_from_presentation,
                      divides_check, etale_closure_dim, galois_factor_count,
                      generic_char_poly, local_generators, j_generators,
                      m_closure, monogenic_algebra, monogenic_tower,
                      naive_closure, product_formula_dim, transform_monic,
                      upoly_mul)
from .finalg import (AlgebraMap, FieldOps, PolyOps,
                     algebra_from_presentation, algebra_product,
                     berkowitz_charpoly, char_poly, determinant_expansion,
                     ideal_subspace_dim)
from .multipoly import PolyRing, parse_presentation

DEFAULT_SEED = 20260808


def _check(results, name, ok, detail=""):
    results.append((name, bool(ok), detail))


def reconstructed_last_map(result) -> AlgebraMap:
    """The extra map a -> trace(a)*1 - sum_s map_s(a) on an (n-1)-closure,
    which together with the existing maps realizes the n-closure."""
    a = result.input_algebra
    c = result.closure
    fieldh = a.field
    gcd = generic_char_poly(a)
    rows = []
    for j in range(a.dim):
        elem = a.element_from_dict({j: fieldh.one})
        trace = char_poly(a, elem).traces[0]
        vec = {0: trace} if trace else {}
        for mp in result.maps:
            for k, v in mp.rows[j].items():
                s = fieldh.sub(vec.get(k, fieldh.zero), v)
                if s:
                    vec[k] = s
                elif k in vec:
                    del vec[k]
        rows.append(vec)
    return AlgebraMap(a, c, rows)


def suite_trivial(seed=DEFAULT_SEED):
    """m = 0, 1, n-1 = n, > n identities plus non-vanishing, over the
    dimension-up-to-5 catalog; every computed closure is certified."""
    out = []
    for entry in table1_entries():
        a = entry.algebra()
        n = a.dim
        r0 = m_closure(a, 0)
        _check(out, f"{entry.name}: m=0 gives the base field", r0.dim == 1)
        r1 = m_closure(a, 1)
        ident = all(r1.maps[0].rows[i] == {i: a.field.one} for i in range(n))
        _check(out, f"{entry.name}: m=1 gives the algebra itself",
               r1.dim == n and ident)
        rn1 = m_closure(a, n - 1)
        rn = m_closure(a, n)
        _check(out, f"{entry.name}: dim at m=n-1 equals dim at m=n",
               rn1.dim == rn.dim, f"{rn1.dim} vs {rn.dim}")
        extra = reconstructed_last_map(rn1)
        _check(out, f"{entry.name}: reconstructed map on the (n-1)-closure is a ring morphism",
               extra.is_ring_morphism())
        rbig = m_closure(a, n + 1)
        _check(out, f"{entry.name}: m=n+1 gives the zero algebra", rbig.dim == 0)
        positive = all(m_closure(a, m).dim > 0 for m in range(1, n + 1))
        _check(out, f"{entry.name}: closures are nonzero for 1 <= m <= n", positive)
        for m, res in ((n - 1, rn1), (n, rn)):
            cert = divides_check(res)
            _check(out, f"{entry.name}: divisibility certificate at m={m}",
                   cert.get("certified", False), cert.get("mode", ""))
    return out


def suite_product(seed=DEFAULT_SEED):
    """Direct closures of product algebras match the binomial product
    formula applied to the factor closure dimensions."""
    out = []
    factor_texts = [
        ("K", "Q[x]/(x)"),            # the base field, dimension 1
        ("K[x]/(x^2)", "Q[x]/(x^2)"),
        ("K[x]/(x^3)", "Q[x]/(x^3)"),
        ("(x, y)^2", "Q[x,y]/((x,y)^2)"),
        ("K[x]/(x^4)", "Q[x]/(x^4)"),
        ("(x^2, y^2)", "Q[x,y]/(x^2,y^2)"),
    ]
    factors = [(name, algebra_from_presentation(parse_presentation(t)))
               for name, t in factor_texts]
    max_m = 3
    dims = {}
    for name, alg in factors:
        dims[name] = [m_closure(alg, m).dim for m in range(max_m + 1)]
    for i, (na, a) in enumerate(factors):
        for nb, b in factors[i:]:
            if a.dim + b.dim > 6:
                continue
            prod, _, _ = algebra_product(a, b)
            for m in range(2, max_m + 1):
                direct = m_closure(prod, m).dim
                formula = product_formula_dim(dims[na], dims[nb], m)
                _check(out, f"({na}) x ({nb}) at m={m}: direct {direct} = formula",
                       direct == formula, f"formula gives {formula}")
    # full-closure factor count: K x K[x]/(x^2) has 3!/(1!2!) identical factors
    _check(out, "full closure of K x K[x]/(x^2) has 3 identical tensor factors",
           galois_factor_count([1, 2]) == 3)
    k = algebra_from_presentation(parse_presentation("Q[x]/(x)"))
    x2 = algebra_from_presentation(parse_presentation("Q[x]/(x^2)"))
    prod, _, _ = algebra_product(k, x2)
    full = m_closure(prod, 3).dim
    factor_dim = dims["K"][1] * dims["K[x]/(x^2)"][2]
    _check(out, "full closure of K x K[x]/(x^2) matches the factor-count formula",
           full == 3 * factor_dim, f"{full} vs 3*{factor_dim}")
    return out


def suite_monogenic(seed=DEFAULT_SEED):
    """Towers of monic polynomials are free of the falling-factorial rank
    and agree with the generic pipeline."""
    out = []
    rng = random.Random(seed)
    f7 = GF(7)
    q = QQ()
    t = monogenic_tower([Fraction(0)] * 3 + [Fraction(1)], 2, q)  # Z^3, m=2
    _check(out, "tower of Z^3 at m=2 has dimension 6", t.dim == 6)
    t2 = monogenic_tower([Fraction(-1), Fraction(0), Fraction(0),
                          Fraction(0), Fraction(0), Fraction(1)], 5, q)
    _check(out, "tower of Z^5 - 1 at m=5 has dimension 120", t2.dim == 120)
    t3 = monogenic_tower([Fraction(1), Fraction(0), Fraction(0),
                          Fraction(0), Fraction(1)], 3, q)
    _check(out, "tower of Z^4 + 1 at m=3 has dimension 24", t3.dim == 24)
    for trial in range(6):
        deg = rng.randint(2, 4)
        coeffs = [f7.random_element(rng) for _ in range(deg)] + [f7.one]
        for m in range(1, min(3, deg) + 1):
            tower = monogenic_tower(coeffs, m, f7)
            expected = 1
            for i in range(m):
                expected *= deg - i
            _check(out,
                   f"trial {trial}: tower rank deg={deg} m={m} is the falling factorial",
                   tower.dim == expected, f"{tower.dim} vs {expected}")
            alg = monogenic_algebra(f7, coeffs)
            pipe = m_closure(alg, m)
            _check(out,
                   f"trial {trial}: tower and pipeline dims agree (deg={deg}, m={m})",
                   pipe.dim == tower.dim, f"{pipe.dim} vs {tower.dim}")
            for mp in tower.maps:
                if not mp.is_ring_morphism():
                    _check(out, f"trial {trial}: tower maps multiplicative", False)
                    break
    return out


def suite_etale(seed=DEFAULT_SEED):
    """Closures of split algebras K^n have the injective-map count
    n(n-1)...(n-m+1) as dimension."""
    out = []
    k = algebra_from_presentation(parse_presentation("Q[x]/(x)"))
    power = k
    for n in range(2, 6):
        power, _, _ = algebra_product(power, k)
        for m in range(0, n + 1):
            expected = etale_closure_dim(n, m)
            got = m_closure(power, m).dim
            _check(out, f"K^{n} at m={m}: dimension {expected}",
                   got == expected, f"got {got}")
    _check(out, "injective-map count vanishes for m > n",
           etale_closure_dim(4, 5) == 0)
    _check(out, "injective-map count at m=0 is 1", etale_closure_dim(7, 0) == 1)
    return out


def suite_naive(seed=DEFAULT_SEED):
    """The element-only variant fails to commute with base change while the
    true closure does not.

    Over F2 the defining ideal is the span of the 15 tensor cubes a x a x a
    with a in the maximal ideal; those cubes sum to zero (each entry counts
    a coset of even size), so the span has rank 14 and the naive closure has
    dimension 111.  The published example prints 110; see the README.
    """
    out = []
    pres2 = parse_presentation("F2[x1,x2,x3,x4]/((x1,x2,x3,x4)^2)")
    a2 = algebra_from_presentation(pres2)
    n2 = naive_closure(a2, 3)
    _check(out, "naive 3-closure over F2 has dimension 111 (rank-14 cube span)",
           n2.dim == 111, f"got {n2.dim}")
    pres4 = base_change_presentation(pres2, GF(2, 2).descriptor)
    a4 = algebra_from_presentation(pres4)
    n4 = naive_closure(a4, 3)
    _check(out, "naive 3-closure over F4 has dimension 105", n4.dim == 105,
           f"got {n4.dim}")
    _check(out, "naive closure does not commute with the base change F2 -> F4",
           n2.dim != n4.dim, f"{n2.dim} vs {n4.dim}")
    t2 = m_closure(a2, 3)
    t4 = m_closure(a4, 3)
    _check(out, "true 3-closure dimension is stable under F2 -> F4",
           t2.dim == t4.dim == 105, f"{t2.dim} vs {t4.dim}")
    _check(out, "naive and true closures differ over F2", n2.dim != t2.dim,
           f"naive {n2.dim}, true {t2.dim}")
    r1 = naive_closure(a2, 1)
    _check(out, "naive closure at m=1 is the algebra itself", r1.dim == a2.dim)
    return out


def suite_transform(seed=DEFAULT_SEED, cases=200):
    """The monic transform (Z - a_i) -> (Z - g(a_i)): multiplicativity on
    random inputs, the explicit cubic coefficient identity, and identity g."""
    out = []
    rng = random.Random(seed)
    f101 = GF(101)
    ok_mult = True
    detail = ""
    for _ in range(cases):
        d1, d2 = rng.randint(1, 3), rng.randint(1, 3)
        f = [f101.random_element(rng) for _ in range(d1)] + [f101.one]
        h = [f101.random_element(rng) for _ in range(d2)] + [f101.one]
        g = [f101.random_element(rng) for _ in range(rng.randint(1, 3) + 1)]
        lhs = transform_monic(upoly_mul(f101, f, h), g, f101)
        rhs = upoly_mul(f101, transform_monic(f, g, f101),
                        transform_monic(h, g, f101))
        if lhs != rhs:
            ok_mult = False
            detail = f"f={f} h={h} g={g}"
            break
    _check(out, f"transform is multiplicative on {cases} random cases", ok_mult, detail)

    q = QQ()
    rng2 = random.Random(seed + 1)
    ok_cubic = True
    for _ in range(25):
        r1, r2, r3 = (Fraction(rng2.randint(-9, 9)) for _ in range(3))
        f = [-r3, r2, -r1, Fraction(1)]
        got = transform_monic(f, [Fraction(0), Fraction(0), Fraction(1)], q)
        want = [-r3 * r3, r2 * r2 - 2 * r1 * r3, -(r1 * r1 - 2 * r2), Fraction(1)]
        if got != want:
            ok_cubic = False
            break
    _check(out, "cubic transform under g=X^2 matches the coefficient identity", ok_cubic)

    f = [Fraction(-6), Fraction(11), Fraction(-6), Fraction(1)]  # roots 1,2,3
    got = transform_monic(f, [Fraction(0), Fraction(0), Fraction(1)], q)
    _check(out, "squaring the roots 1,2,3 gives Z^3-14Z^2+49Z-36",
           got == [Fraction(-36), Fraction(49), Fraction(-14), Fraction(1)])
    got_id = transform_monic(f, [Fraction(0), Fraction(1)], q)
    _check(out, "g = X is the identity transform", got_id == f)
    return out


def suite_charpoly(seed=DEFAULT_SEED, cases=200):
    """Berkowitz agrees with cofactor expansion; shift and trace laws."""
    out = []
    rng = random.Random(seed)
    f = GF(1009)
    ops = FieldOps(f)
    ring = PolyRing(f, ("Z",))
    pops = PolyOps(ring)
    ok = True
    for _ in range(cases):
        k = rng.randint(1, 4)
        mat = [[f.random_element(rng) for _ in range(k)] for _ in range(k)]
        via_b = berkowitz_charpoly(mat, ops)
        zm = [[(ring.monomial((1,)) if i == j else ring.zero()) -
               ring.const(mat[i][j]) for j in range(k)] for i in range(k)]
        det = determinant_expansion(zm, pops)
        via_d = [det.coeff((e,)) for e in range(k + 1)]
        if via_b != via_d:
            ok = False
            break
    _check(out, f"Berkowitz equals cofactor expansion on {cases} random matrices", ok)

    a = algebra_from_presentation(parse_presentation("Q[x,y]/(xy, x^3+y^3)"))
    rng2 = random.Random(seed + 2)
    ok_shift = True
    ok_trace = True
    for _ in range(20):
        u = a.element([Fraction(rng2.randint(-4, 4)) for _ in range(a.dim)])
        v = a.element([Fraction(rng2.randint(-4, 4)) for _ in range(a.dim)])
        r = Fraction(rng2.randint(-4, 4))
        pu = char_poly(a, u)
        shifted = char_poly(a, u + a.one_element().scale(r))
        # P_{u+r}(Z) = P_u(Z - r): compare by evaluating at random points
        for _ in range(4):
            z = Fraction(rng2.randint(-6, 6))
            if shifted.evaluate_scalar(z) != pu.evaluate_scalar(z - r):
                ok_shift = False
        s_u, s_v = pu.traces, char_poly(a, v).traces
        s_sum = char_poly(a, u + v).traces
        s_prod = char_poly(a, u * v).traces
        if s_sum[0] != s_u[0] + s_v[0] or s_prod[-1] != s_u[-1] * s_v[-1]:
            ok_trace = False
    _check(out, "characteristic polynomial shifts with constants", ok_shift)
    _check(out, "first trace is additive and the norm is multiplicative", ok_trace)
    return out


def suite_family(seed=DEFAULT_SEED):
    """Two proved dimension families: the n^2 - 3 sequence and the
    square-zero case where the closure is the whole tensor power."""
    out = []
    for n in range(3, 9):
        if n % 2 == 0:
            text = f"Q[x,y]/(x^{n // 2 + 1}, y^{n // 2}, xy)"
        else:
            text = f"Q[x,y]/(x^{(n + 1) // 2}, y^{(n + 1) // 2}, xy)"
        a = algebra_from_presentation(parse_presentation(text))
        got = m_closure(a, 2).dim
        _check(out, f"n={n}: 2-closure of the two-variable family has dimension n^2-3",
               a.dim == n and got == n * n - 3, f"dim {a.dim}, got {got}")
    # square-zero maximal ideal with n - t*m >= 0 forces the full tensor power
    a = algebra_from_presentation(parse_presentation("Q[x,y,z,w]/((x,y,z,w)^2)"))
    _check(out, "square-zero n=5: 2-closure is the whole 25-dimensional square",
           m_closure(a, 2).dim == 25)
    b = algebra_from_presentation(parse_presentation("Q[x,y,z,w,v]/((x,y,z,w,v)^2)"))
    _check(out, "square-zero n=6: 2- and 3-closures fill the tensor powers",
           m_closure(b, 2).dim == 36 and m_closure(b, 3).dim == 216)
    return out


def suite_generators(seed=DEFAULT_SEED):
    """The nilpotent shortcut and the generic schedule generate identical
    subspaces for local catalog algebras (n <= 5, m <= 3)."""
    out = []
    for entry in table1_entries():
        a = entry.algebra()
        if not a.is_local_nilpotent():
            continue
        for m in (2, 3):
            if m > a.dim:
                continue
            gen_j = j_generators(a, m)
            gen_l = local_generators(a, m)
            dim_j, _ = ideal_subspace_dim(gen_j[0].algebra, gen_j) if gen_j else (0, None)
            dim_l, _ = ideal_subspace_dim(gen_l[0].algebra, gen_l) if gen_l else (0, None)
            _check(out, f"{entry.name} m={m}: shortcut and generic schedules agree",
                   dim_j == dim_l, f"{dim_j} vs {dim_l}")
    return out


def suite_primes(seed=DEFAULT_SEED):
    """Two-prime modular closure dimensions agree with exact rationals on
    the dimension-up-to-5 catalog."""
    out = []
    for entry in table1_entries():
        pres = entry.presentation()
        n = max(entry.expected)
        for m in {2, min(3, n)}:
            modular, mode = closure_from_presentation(pres, m)
            exact, _ = closure_from_presentation(pres, m, exact=True)
            _check(out, f"{entry.name} m={m}: modular ({mode}) matches exact",
                   modular.dim == exact.dim, f"{modular.dim} vs {exact.dim}")
    return out


SUITES = {
    "trivial": suite_trivial,
    "product": suite_product,
    "monogenic": suite_monogenic,
    "etale": suite_etale,
    "naive": suite_naive,
    "transform": suite_transform,
    "charpoly": suite_charpoly,
    "family": suite_family,
    "generators": suite_generators,
    "primes": suite_primes,
}


def run_suites(names, seed=DEFAULT_SEED):
    """Run the named suites; returns (all_ok, list of result triples)."""
    if names == ["all"] or names == "all":
        names = list(SUITES)
    results = []
    for name in names:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}")
        for item in SUITES[name](seed):
            results.append((name,) + item)
    all_ok = all(ok for _, _, ok, _ in results)
    return all_ok, results
