"""Intermediate closures of finite commutative algebras.

The m-closure of an algebra A of dimension n is the universal algebra with m
maps from A such that the product of (Z - image_s(a)) divides the
characteristic polynomial of a, for every a in every base change of A.  It
is computed as a quotient of the m-fold tensor power: the generic element
gamma = sum e_i X_i has a characteristic polynomial P(Z) with coefficients
in K[X_1..X_n]; dividing P by (Z - gamma_1), then the quotient by
(Z - gamma_2), and so on, leaves one remainder per slot, and the X-monomial
coefficients of those remainders generate the defining ideal.

Two strategies produce the same algebra:

* flat    - materialize the full tensor power and quotient once;
* staged  - quotient slot by slot, so stage s works inside
            (closure at s-1) tensor A, which is far smaller whenever the
            intermediate closures collapse.  The equivalence is an instance
            of the universal property and is cross-checked in the tests.
"""

from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass, field as dataclass_field

from .arith import (DEFAULT_MODULAR_PRIMES, Field, FieldDescriptor, GF,
                    field_create)
from .errors import (BudgetExceeded, CertificateFailure, DegreeTooSmall,
                     InfiniteFieldUnsupported, LengthMismatch,
                     ModularDisagreement, NotLocal, UnsupportedField)
from .finalg import (AlgebraElement, AlgebraMap, CharPoly, PolyOps,
                     QuotientAlgebra, RowSpace, StructureAlgebra, TableAlgebra,
                     TensorPairAlgebra, TensorPowerAlgebra,
                     algebra_from_presentation, berkowitz_charpoly, char_poly,
                     power_budget, tensor_power, vec_add_into)
from .multipoly import AlgebraPresentation, MultiPoly, PolyRing

FLAT_LIMIT = 700            # widest tensor power handled without staging
MORPHISM_PAIR_BUDGET = 512  # basis pairs checked per map on huge closures
DIVIDES_DIM_LIMIT = 600     # closures above this skip the full recomputation


# ---------------------------------------------------------------------------
# generic element and its characteristic polynomial


class GenericCharData:
    """Characteristic polynomial of gamma = sum e_i X_i.

    `coeffs` lists the Z-coefficients in ascending order as polynomials in
    X_1..X_n over the base field; the Z^(n-i) coefficient is homogeneous of
    degree i.
    """

    def __init__(self, algebra: StructureAlgebra, ring: PolyRing, coeffs):
        self.algebra = algebra
        self.ring = ring
        self.coeffs = coeffs
        n = algebra.dim
        for j, c in enumerate(coeffs):
            for mono in c.terms:
                if sum(mono) != n - j:
                    raise CertificateFailure(
                        "generic characteristic polynomial is not homogeneous")

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def specialize(self, elem: AlgebraElement) -> CharPoly:
        """P at X = coordinates of elem equals the characteristic polynomial
        of elem."""
        point = list(elem.coords)
        return CharPoly([c.evaluate(point) for c in self.coeffs],
                        self.algebra.field)


def generic_char_poly(a: StructureAlgebra) -> GenericCharData:
    """Berkowitz applied to sum_i X_i * (multiplication matrix of e_i)."""
    n = a.dim
    ring = PolyRing(a.field, tuple(f"X{i + 1}" for i in range(n)))
    entries = [[ring.zero() for _ in range(n)] for _ in range(n)]
    for k in range(n):
        cols = [a.basis_product(k, j) for j in range(n)]
        for j, col in enumerate(cols):
            for i, c in col.items():
                exps = [0] * n
                exps[k] = 1
                entries[i][j] = entries[i][j] + ring.monomial(tuple(exps), c)
    coeffs = berkowitz_charpoly(entries, PolyOps(ring))
    return GenericCharData(a, ring, coeffs)


# ---------------------------------------------------------------------------
# X-polynomials with coefficients in an algebra
#
# Represented as dicts {exponent tuple -> sparse algebra vector}.  The only
# multiplications that occur are by the slot images of gamma, supplied as a
# list of per-basis multiplier callables (index 0 being the identity).


def _xp_add_into(fieldh, target, src):
    for mono, vec in src.items():
        if mono in target:
            vec_add_into(fieldh, target[mono], vec)
            if not target[mono]:
                del target[mono]
        else:
            target[mono] = dict(vec)
    return target


def _xp_gamma_mult(fieldh, xp, mults):
    """Multiply an X-polynomial by sum_i mults[i] * X_i."""
    out = {}
    for mono, vec in xp.items():
        for i, mult in enumerate(mults):
            if mult is None:      # identity slot
                mv = vec
            else:
                mv = mult(vec)
                if not mv:
                    continue
            nm = mono[:i] + (mono[i] + 1,) + mono[i + 1:]
            if nm in out:
                vec_add_into(fieldh, out[nm], mv)
                if not out[nm]:
                    del out[nm]
            else:
                out[nm] = dict(mv)
    return out


def _xp_project(xp, project):
    out = {}
    for mono, vec in xp.items():
        img = project(vec)
        if img:
            out[mono] = img
    return out


def _synthetic_divide(fieldh, zcoeffs, mults):
    """Divide a monic Z-polynomial by (Z - gamma); returns (quotient, rem).

    Horner in Z: the quotient coefficients are the intermediate
    accumulators, the remainder is the value at gamma.
    """
    d = len(zcoeffs) - 1
    quot = [None] * d
    quot[d - 1] = zcoeffs[d]
    for k in range(d - 1, 0, -1):
        acc = _xp_gamma_mult(fieldh, quot[k], mults)
        _xp_add_into(fieldh, acc, zcoeffs[k])
        quot[k - 1] = acc
    rem = _xp_gamma_mult(fieldh, quot[0], mults)
    _xp_add_into(fieldh, rem, zcoeffs[0])
    return quot, rem


def _lift_scalar_coeffs(coeffs, unit_col=0):
    """K[X] coefficients of P as X-polynomials over any algebra, via c*1."""
    out = []
    for poly in coeffs:
        out.append({mono: {unit_col: c} for mono, c in poly.terms.items()})
    return out


def _rows_of(xp):
    return [vec for _, vec in sorted(xp.items())]


def _dedupe_rows(fieldh, rows):
    """Drop zero rows and rows equal up to scaling."""
    out = []
    seen = set()
    for vec in rows:
        vec = {k: v for k, v in vec.items() if v}
        if not vec:
            continue
        pivot = max(vec)
        inv = fieldh.inv(vec[pivot])
        key = frozenset((k, fieldh.mul(inv, v)) for k, v in vec.items())
        if key not in seen:
            seen.add(key)
            out.append(vec)
    return out


# ---------------------------------------------------------------------------
# generator schedules


def closure_ideal_rows(a: StructureAlgebra, m: int, tensor: TensorPowerAlgebra,
                       gcd: GenericCharData | None = None):
    """Defining ideal generators inside the m-fold tensor power: for each
    slot s, the X-monomial coefficients of the remainder left after dividing
    the running quotient of P by (Z - gamma_s).  The slot-1 remainder is the
    Cayley-Hamilton identity and vanishes."""
    if gcd is None:
        gcd = generic_char_poly(a)
    fieldh = a.field
    one = fieldh.one
    zc = _lift_scalar_coeffs(gcd.coeffs)
    rows = []
    for s in range(m):
        mults = [None] + [tensor.slot_multiplier(s, {i: one})
                          for i in range(1, a.dim)]
        zc, rem = _synthetic_divide(fieldh, zc, mults)
        rows.extend(_rows_of(rem))
    return rows


def j_generators(a: StructureAlgebra, m: int, budget: int | None = None):
    """Public form of the generator schedule: elements of the tensor power."""
    if m < 1:
        raise ValueError("m must be at least 1")
    tensor, _ = tensor_power(a, m, budget)
    rows = closure_ideal_rows(a, m, tensor)
    return [tensor.element_from_dict(r) for r in rows]


def local_ideal_rows(a: StructureAlgebra, m: int, tensor: TensorPowerAlgebra):
    """Generator schedule for a local algebra with nilpotent maximal ideal.

    With gamma' = gamma - X_1 (constant part removed) the characteristic
    polynomial is Z^n, and the slot-s remainder collapses to the complete
    homogeneous sum of degree n-s+1 in gamma'_1..gamma'_s.
    """
    fieldh = a.field
    one = fieldh.one
    n = a.dim
    # slot multiplier lists for gamma' (no identity term)
    slot_mults = [
        [None] + [tensor.slot_multiplier(s, {i: one}) for i in range(1, n)]
        for s in range(m)
    ]
    unit_mono = (0,) * n
    # h[k] = complete homogeneous sum of degree k in the slots used so far
    h = [{} for _ in range(n + 1)]
    h[0] = {unit_mono: {0: one}}
    rows = []
    for s in range(m):
        mults = slot_mults[s]

        def gamma_prime_mult(xp):
            # multiply by gamma'_s = sum_{i>=1} eps_s(e_i) X_i
            out = {}
            for mono, vec in xp.items():
                for i in range(1, n):
                    mv = mults[i](vec)
                    if not mv:
                        continue
                    nm = mono[:i] + (mono[i] + 1,) + mono[i + 1:]
                    if nm in out:
                        vec_add_into(fieldh, out[nm], mv)
                        if not out[nm]:
                            del out[nm]
                    else:
                        out[nm] = mv
            return out

        for k in range(1, n + 1):
            term = gamma_prime_mult(h[k - 1])
            _xp_add_into(fieldh, h[k], term)
        rows.extend(_rows_of(h[n - s]))  # degree n - (s+1) + 1
    return rows


def local_generators(a: StructureAlgebra, m: int, budget: int | None = None):
    """Elements of the tensor power generating the same ideal as
    `j_generators`, via the nilpotent shortcut."""
    if not (1 <= m <= a.dim):
        raise ValueError("need 1 <= m <= dim")
    if not a.is_local_nilpotent():
        raise NotLocal("algebra is not local with nilpotent maximal ideal")
    tensor, _ = tensor_power(a, m, budget)
    rows = local_ideal_rows(a, m, tensor)
    return [tensor.element_from_dict(r) for r in rows]


# ---------------------------------------------------------------------------
# closure results


@dataclass
class ClosureResult:
    input_algebra: StructureAlgebra
    m: int
    method: str                 # general | local-shortcut | naive
    strategy: str               # flat | staged | trivial
    closure: StructureAlgebra
    maps: list
    dim: int
    generator_count: int
    rank: int
    elapsed_ms: float
    field: FieldDescriptor
    stage_dims: tuple = ()

    def __repr__(self):
        return (f"ClosureResult(m={self.m}, dim={self.dim}, "
                f"method={self.method}, strategy={self.strategy})")


def _trivial_result(a, m, method, closure, maps, t0):
    return ClosureResult(
        input_algebra=a, m=m, method=method, strategy="trivial",
        closure=closure, maps=maps, dim=closure.dim, generator_count=0,
        rank=a.dim ** m - closure.dim, elapsed_ms=(time.perf_counter() - t0) * 1e3,
        field=a.field.descriptor)


def _base_field_algebra(fieldh: Field) -> TableAlgebra:
    return TableAlgebra(fieldh, ["1"], {})


def _zero_algebra(fieldh: Field) -> TableAlgebra:
    return TableAlgebra(fieldh, [], {})


def _verify_maps(result: ClosureResult):
    budget = None if result.closure.dim <= DIVIDES_DIM_LIMIT else MORPHISM_PAIR_BUDGET
    for i, mp in enumerate(result.maps):
        if not mp.is_ring_morphism(pair_budget=budget):
            raise CertificateFailure(
                f"structural map {i + 1} is not a ring morphism")


def m_closure(a: StructureAlgebra, m: int, method: str = "general",
              strategy: str = "auto", budget: int | None = None,
              verify: bool = True) -> ClosureResult:
    """The m-closure of a finite-dimensional commutative algebra.

    method "general" works for every algebra; "local-shortcut" requires a
    local algebra with nilpotent maximal ideal and uses the collapsed
    generator schedule.  The strategy picks between the flat tensor-power
    quotient and the staged slot-by-slot pipeline ("auto" stages once the
    tensor power would exceed FLAT_LIMIT columns).
    """
    t0 = time.perf_counter()
    n = a.dim
    if m < 0:
        raise ValueError("m must be nonnegative")
    if method == "local" or method == "local-shortcut":
        method = "local-shortcut"
        if not a.is_local_nilpotent():
            raise NotLocal("algebra is not local with nilpotent maximal ideal")
    elif method != "general":
        raise ValueError(f"unknown method {method!r}")

    if m == 0:
        return _trivial_result(a, m, method, _base_field_algebra(a.field), [], t0)
    if m > n:
        zero = _zero_algebra(a.field)
        maps = [AlgebraMap(a, zero, [{} for _ in range(n)]) for _ in range(m)]
        return _trivial_result(a, m, method, zero, maps, t0)
    if m == 1:
        ident = AlgebraMap(a, a, [{i: a.field.one} for i in range(n)])
        return _trivial_result(a, m, method, a, [ident], t0)

    if strategy == "auto":
        strategy = "flat" if n ** m <= FLAT_LIMIT else "staged"
    if method == "local-shortcut" and strategy != "flat":
        strategy = "flat"

    if strategy == "flat":
        result = _flat_closure(a, m, method, budget, t0)
    elif strategy == "staged":
        result = _staged_closure(a, m, budget, t0)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    if verify:
        _verify_maps(result)
    return result


def _flat_closure(a, m, method, budget, t0):
    tensor, embeddings = tensor_power(a, m, budget)
    if method == "local-shortcut":
        rows = local_ideal_rows(a, m, tensor)
    else:
        rows = closure_ideal_rows(a, m, tensor)
    generator_count = sum(1 for r in rows if r)
    span = RowSpace(a.field, tensor.dim)
    span.close_under(_dedupe_rows(a.field, rows),
                     tensor.generator_multipliers())
    quot = QuotientAlgebra(tensor, span)
    maps = []
    for emb in embeddings:
        maps.append(AlgebraMap(a, quot,
                               [quot.project(row) for row in emb.rows]))
    return ClosureResult(
        input_algebra=a, m=m, method=method, strategy="flat", closure=quot,
        maps=maps, dim=quot.dim, generator_count=generator_count,
        rank=span.rank, elapsed_ms=(time.perf_counter() - t0) * 1e3,
        field=a.field.descriptor)


def _staged_closure(a, m, budget, t0):
    """Quotient one slot at a time.

    Stage s works in D = C x A where C is the closure after s-1 slots.  The
    running quotient polynomial of P by the first s-1 linear factors has
    exact coefficients in C; evaluating it at the new slot's generic element
    yields the stage relations, and synthetic division carries the quotient
    forward.  Stage 1 is Cayley-Hamilton and must leave a zero remainder.
    """
    fieldh = a.field
    n = a.dim
    one = fieldh.one
    limit = budget if budget is not None else power_budget()
    gcd = generic_char_poly(a)

    current = a
    maps = [AlgebraMap(a, a, [{i: one} for i in range(n)])]
    zc = _lift_scalar_coeffs(gcd.coeffs)
    mults = [None] + [a.mult_by({i: one}) for i in range(1, n)]
    zc, rem = _synthetic_divide(fieldh, zc, mults)
    if any(rem.values()):
        raise CertificateFailure("Cayley-Hamilton remainder is nonzero")

    generator_count = 0
    stage_dims = [n]
    for s in range(2, m + 1):
        if current.dim * n > limit:
            raise BudgetExceeded(
                f"stage {s} width {current.dim * n} exceeds the budget {limit}")
        pair = TensorPairAlgebra(current, a)
        lift = pair.n  # index stride: u -> u*n + 0
        zc = [{mono: {u * lift: c for u, c in vec.items()}
               for mono, vec in coeff.items()} for coeff in zc]
        gamma_mults = [None] + [pair.right_multiplier({i: one})
                                for i in range(1, n)]
        zc, rem = _synthetic_divide(fieldh, zc, gamma_mults)
        rows = _rows_of(rem)
        generator_count += sum(1 for r in rows if r)
        span = RowSpace(fieldh, pair.dim)
        multipliers = [pair.left_multiplier(vec)
                       for _, vec in current.generator_elements()]
        multipliers.extend(pair.right_multiplier(vec)
                           for _, vec in a.generator_elements())
        span.close_under(_dedupe_rows(fieldh, rows), multipliers)
        quot = QuotientAlgebra(pair, span)
        new_maps = [AlgebraMap(a, quot,
                               [quot.project({u * lift: c for u, c in row.items()})
                                for row in mp.rows])
                    for mp in maps]
        new_maps.append(AlgebraMap(a, quot,
                                   [quot.project({i: one}) for i in range(n)]))
        zc = [_xp_project(coeff, quot.project) for coeff in zc]
        current = quot
        maps = new_maps
        stage_dims.append(current.dim)

    return ClosureResult(
        input_algebra=a, m=m, method="general", strategy="staged",
        closure=current, maps=maps, dim=current.dim,
        generator_count=generator_count, rank=n ** m - current.dim,
        elapsed_ms=(time.perf_counter() - t0) * 1e3,
        field=fieldh.descriptor, stage_dims=tuple(stage_dims))


def s_closure(a: StructureAlgebra, m: int, **kwargs) -> ClosureResult:
    """Alias of m_closure; the set {1..m} labels the structural maps."""
    return m_closure(a, m, **kwargs)


# ---------------------------------------------------------------------------
# naive variant (imposing divisibility for elements of A only)


NAIVE_ENUM_LIMIT = 200_000


def naive_closure(a: StructureAlgebra, m: int,
                  budget: int | None = None) -> ClosureResult:
    """Quotient of the tensor power by the remainders of P_a for a in A
    itself (no base change).  Finite fields only: the enumeration runs over
    coset representatives of A modulo constants, which suffices because
    shifting an element by a constant shifts both P_a and the linear factors
    together.  Over an infinite field the construction coincides with the
    true closure, so it is deliberately not re-implemented."""
    t0 = time.perf_counter()
    fieldh = a.field
    if fieldh.order is None:
        raise InfiniteFieldUnsupported(
            "naive closure over an infinite field equals the true closure; "
            "compute it with m_closure instead")
    n = a.dim
    if not (1 <= m <= n):
        raise ValueError("need 1 <= m <= dim")
    q = fieldh.order
    if q ** (n - 1) > (budget or NAIVE_ENUM_LIMIT):
        raise BudgetExceeded(f"naive enumeration {q}^{n - 1} is too large")
    tensor, embeddings = tensor_power(a, m, budget)
    rows = []
    count = 0
    scalars = list(fieldh.elements())

    def tuples(k):
        if k == 0:
            yield ()
            return
        for rest in tuples(k - 1):
            for c in scalars:
                yield rest + (c,)

    for tail in tuples(n - 1):
        coords = (fieldh.zero,) + tail
        elem = a.element(coords)
        p = char_poly(a, elem)
        zc = [{0: c} if c else {} for c in p.coeffs]
        vec = elem.to_dict()
        for s in range(m):
            mult = tensor.slot_multiplier(s, vec) if vec else None
            d = len(zc) - 1
            quot = [None] * d
            quot[d - 1] = zc[d]
            for k in range(d - 1, 0, -1):
                acc = dict(mult(quot[k])) if mult else {}
                vec_add_into(fieldh, acc, zc[k])
                quot[k - 1] = acc
            rem = dict(mult(quot[0])) if mult else {}
            vec_add_into(fieldh, rem, zc[0])
            if rem:
                rows.append(rem)
                count += 1
            zc = quot
    span = RowSpace(fieldh, tensor.dim)
    span.close_under(_dedupe_rows(fieldh, rows),
                     tensor.generator_multipliers())
    quot = QuotientAlgebra(tensor, span)
    maps = [AlgebraMap(a, quot, [quot.project(row) for row in emb.rows])
            for emb in embeddings]
    return ClosureResult(
        input_algebra=a, m=m, method="naive", strategy="flat", closure=quot,
        maps=maps, dim=quot.dim, generator_count=count, rank=span.rank,
        elapsed_ms=(time.perf_counter() - t0) * 1e3, field=fieldh.descriptor)


# ---------------------------------------------------------------------------
# monogenic algebras


def upoly_mul(fieldh, a, b):
    out = [fieldh.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = fieldh.add(out[i + j], fieldh.mul(x, y))
    return out


def monogenic_algebra(fieldh: Field, coeffs, varname: str = "x") -> TableAlgebra:
    """K[x]/(f) for a monic f, basis 1, x, ..., x^(n-1)."""
    n = len(coeffs) - 1
    if coeffs[-1] != fieldh.one:
        raise ValueError("polynomial must be monic")
    neg = fieldh.neg
    # powers x^n .. x^(2n-2) as vectors
    powers = {}
    cur = {i: neg(c) for i, c in enumerate(coeffs[:-1]) if c}
    powers[n] = dict(cur)
    for e in range(n + 1, 2 * n - 1):
        nxt = {}
        for i, c in cur.items():
            if i + 1 < n:
                nxt[i + 1] = fieldh.add(nxt.get(i + 1, fieldh.zero), c) \
                    if i + 1 in nxt else c
            else:
                for j, rc in powers[n].items():
                    w = fieldh.mul(c, rc)
                    if j in nxt:
                        s = fieldh.add(nxt[j], w)
                        if s:
                            nxt[j] = s
                        else:
                            del nxt[j]
                    elif w:
                        nxt[j] = w
        cur = nxt
        powers[e] = dict(cur)
    table = {}
    for i in range(n):
        for j in range(i, n):
            e = i + j
            if e < n:
                table[(i, j)] = {e: fieldh.one}
            else:
                table[(i, j)] = dict(powers[e])
    labels = ["1"] + [varname if e == 1 else f"{varname}^{e}"
                      for e in range(1, n)]
    if n >= 2:
        gen_vec = {1: fieldh.one}
    else:
        gen_vec = {0: neg(coeffs[0])} if coeffs[0] else {}
    return TableAlgebra(fieldh, labels, table,
                        generators=[(varname, gen_vec)])


def transform_monic(f_coeffs, g_coeffs, fieldh: Field):
    """Map a monic polynomial prod (Z - a_i) to prod (Z - g(a_i)).

    Computed as the characteristic polynomial of multiplication by g(x) in
    K[x]/(f), which needs no knowledge of the roots.  Multiplicative in f.
    """
    n = len(f_coeffs) - 1
    if n == 0:
        return [fieldh.one]
    algebra = monogenic_algebra(fieldh, f_coeffs)
    x = algebra.element_from_dict(algebra.generator_elements()[0][1])
    g_of_x = algebra.zero_element()
    for c in reversed(g_coeffs):
        g_of_x = g_of_x * x + algebra.one_element().scale(c)
    return char_poly(algebra, g_of_x).coeffs


@dataclass
class TowerDescription:
    """Root-by-root splitting tower of a monic polynomial."""

    base: str                    # field descriptor string or "Z"
    degree: int
    m: int
    dim: int
    relations: tuple             # human-readable relation strings
    algebra: StructureAlgebra | None = None
    maps: list = dataclass_field(default_factory=list)


def monogenic_tower(f_coeffs, m: int, fieldh: Field | None = None,
                    varname: str = "x") -> TowerDescription:
    """Split off m roots of a monic polynomial one at a time.

    Stage i adjoins a root x_i of the running polynomial and divides it out,
    so the result is free of dimension n(n-1)...(n-m+1).  Over a field the
    tower is returned as a structure algebra with its maps x -> x_i; over
    the integers (fieldh None) only the symbolic description is built, and
    monicness keeps every division integral.
    """
    from .arith import QQ
    integral = fieldh is None
    fh = QQ() if integral else fieldh
    n = len(f_coeffs) - 1
    if m > n:
        raise DegreeTooSmall(f"cannot split {m} roots off degree {n}")
    if m < 0:
        raise ValueError("m must be nonnegative")

    names = tuple(f"{varname}{i + 1}" for i in range(m))
    ring = PolyRing(fh, names)
    # rewrite rules: bounds[i] = n - i, and x_i^(n-i) rewrites to rule[i]
    bounds = [n - i for i in range(m)]
    rules = {}

    def reduce_tower(p: MultiPoly) -> MultiPoly:
        while True:
            target = None
            for mono in p.terms:
                for i in range(m):
                    if i in rules and mono[i] >= bounds[i]:
                        target = (mono, i)
                        break
                if target:
                    break
            if not target:
                return p
            mono, i = target
            c = p.terms[mono]
            drop = list(mono)
            drop[i] -= bounds[i]
            p = p - ring.monomial(mono, c) + \
                rules[i].mul_monomial(tuple(drop), c)

    # current polynomial: Z-coefficients as MultiPoly in x_1..x_m
    cur = [ring.const(c) for c in f_coeffs]
    relations = []
    for i in range(m):
        deg = len(cur) - 1
        rel_parts = [f"{names[i]}^{deg}"] if deg != 1 else [names[i]]
        rel_poly = ring.monomial(tuple(deg if j == i else 0 for j in range(m)))
        for e in range(deg):
            coeff = cur[e]
            if not coeff.is_zero():
                shift = tuple(e if j == i else 0 for j in range(m))
                rel_poly = rel_poly + coeff.mul_monomial(shift)
        relations.append(str(rel_poly))
        # rewrite rule: x_i^deg = -(lower part)
        low = ring.zero()
        for e in range(deg):
            shift = tuple(e if j == i else 0 for j in range(m))
            low = low - cur[e].mul_monomial(shift)
        rules[i] = low
        # divide by (Z - x_i): quotient via Horner, coefficients reduced
        xi = ring.var(i)
        quot = [ring.zero()] * deg
        quot[deg - 1] = cur[deg]
        for k in range(deg - 1, 0, -1):
            quot[k - 1] = reduce_tower(cur[k] + xi * quot[k])
        cur = quot

    expected = 1
    for i in range(m):
        expected *= n - i

    if integral:
        return TowerDescription(base="Z", degree=n, m=m, dim=expected,
                                relations=tuple(relations))

    # assemble the structure algebra on the monomial basis
    basis = []

    def gen_basis(i, mono):
        if i == m:
            basis.append(tuple(mono))
            return
        for e in range(bounds[i]):
            mono[i] = e
            gen_basis(i + 1, mono)
        mono[i] = 0

    gen_basis(0, [0] * m)
    from .multipoly import grevlex_key
    basis.sort(key=grevlex_key)
    index = {b: i for i, b in enumerate(basis)}
    table = {}
    for i in range(len(basis)):
        for j in range(i, len(basis)):
            prod = reduce_tower(ring.monomial(
                tuple(a + b for a, b in zip(basis[i], basis[j]))))
            vec = {index[mo]: c for mo, c in prod.terms.items()}
            if vec:
                table[(i, j)] = vec
    labels = []
    for b in basis:
        if not any(b):
            labels.append("1")
        else:
            labels.append("*".join(
                nm if e == 1 else f"{nm}^{e}"
                for nm, e in zip(names, b) if e))
    gens = []
    for i in range(m):
        reduced = reduce_tower(ring.var(i))
        gens.append((names[i],
                     {index[mo]: c for mo, c in reduced.terms.items()}))
    algebra = TableAlgebra(fh, labels, table, generators=gens,
                           check=len(basis) <= 40)
    if algebra.dim != expected:
        raise CertificateFailure("tower dimension mismatch")
    maps = []
    source = monogenic_algebra(fh, f_coeffs)
    for i in range(m):
        rows = []
        xi = ring.var(i)
        acc = ring.one()
        for e in range(n):
            vec = {index[mo]: c for mo, c in reduce_tower(acc).terms.items()}
            rows.append(vec)
            acc = acc * xi
        maps.append(AlgebraMap(source, algebra, rows))
    return TowerDescription(base=str(fh.descriptor), degree=n, m=m,
                            dim=algebra.dim, relations=tuple(relations),
                            algebra=algebra, maps=maps)


# ---------------------------------------------------------------------------
# closed-form dimension helpers


def etale_closure_dim(n: int, m: int) -> int:
    """Number of injective maps from an m-set into an n-set."""
    if m == 0:
        return 1
    if m > n:
        return 0
    out = 1
    for i in range(m):
        out *= n - i
    return out


def product_formula_dim(dims_a, dims_b, m: int) -> int:
    """Closure dimension of a product from the factor closure dimensions:
    sum_k C(m,k) * dim A^(k) * dim B^(m-k)."""
    if len(dims_a) < m + 1 or len(dims_b) < m + 1:
        raise LengthMismatch("need factor dimensions for 0..m")
    return sum(math.comb(m, k) * dims_a[k] * dims_b[m - k]
               for k in range(m + 1))


def galois_factor_count(parts) -> int:
    """n!/(n_1! ... n_t!) identical tensor factors in the full closure of a
    product of algebras of dimensions n_1..n_t."""
    n = sum(parts)
    out = math.factorial(n)
    for p in parts:
        out //= math.factorial(p)
    return out


# ---------------------------------------------------------------------------
# divisibility certificate


def divides_check(result: ClosureResult, dim_limit: int | None = None) -> dict:
    """Certify that the product of (Z - map_s(gamma)) divides P inside the
    closure: re-run the slot divisions with coefficients in the closure and
    demand a zero remainder at every slot.  By genericity this certifies the
    divisibility for every base change at once."""
    limit = DIVIDES_DIM_LIMIT if dim_limit is None else dim_limit
    c = result.closure
    if result.m == 0 or c.dim == 0:
        return {"certified": True, "mode": "vacuous"}
    if c.dim > limit:
        return {"certified": False, "mode": "skipped",
                "reason": f"closure dimension {c.dim} above limit {limit}"}
    a = result.input_algebra
    fieldh = a.field
    gcd = generic_char_poly(a)
    zc = _lift_scalar_coeffs(gcd.coeffs)
    for s in range(result.m):
        rows = result.maps[s].rows
        mults = []
        for i in range(a.dim):
            row = rows[i]
            if i == 0:
                mults.append(None)
            else:
                mults.append(c.mult_by(row))
        zc, rem = _synthetic_divide(fieldh, zc, mults)
        if any(rem.values()):
            raise CertificateFailure(
                f"slot {s + 1} remainder is nonzero in the closure")
    return {"certified": True, "mode": "recomputed"}


# ---------------------------------------------------------------------------
# char-0 modular orchestration


def modular_primes():
    raw = os.environ.get("CLOSURELAB_PRIMES")
    if raw:
        parts = tuple(int(x) for x in raw.replace(",", " ").split())
        if len(parts) < 2:
            raise UnsupportedField("CLOSURELAB_PRIMES needs two primes")
        return parts[:2]
    return DEFAULT_MODULAR_PRIMES


def presentation_mod_p(pres: AlgebraPresentation, p: int) -> AlgebraPresentation:
    """Reduce a rational presentation modulo p."""
    target = GF(p)
    ring = PolyRing(target, pres.variables)
    rels = []
    for rel in pres.relations:
        terms = {}
        for mono, c in rel.terms.items():
            if c.denominator % p == 0:
                raise UnsupportedField(f"denominator of {c} vanishes mod {p}")
            v = target.mul(target.from_int(c.numerator),
                           target.inv(target.from_int(c.denominator)))
            if v:
                terms[mono] = v
        rels.append(MultiPoly(ring, terms))
    return AlgebraPresentation(target.descriptor, pres.variables, tuple(rels))


def base_change_presentation(pres: AlgebraPresentation,
                             desc: FieldDescriptor) -> AlgebraPresentation:
    """Reinterpret a presentation over a larger field.  Supported when every
    coefficient lies in the prime subfield (all catalog inputs do)."""
    source = field_create(pres.field)
    target = field_create(desc)
    ring = PolyRing(target, pres.variables)
    rels = []
    for rel in pres.relations:
        terms = {}
        for mono, c in rel.terms.items():
            if pres.field.kind == "rationals":
                v = target.mul(target.from_int(c.numerator),
                               target.inv(target.from_int(c.denominator)))
            elif pres.field.kind == "prime" and desc.p == pres.field.p:
                v = target.from_int(int(c))
            else:
                raise UnsupportedField(
                    f"cannot embed {pres.field} into {desc}")
            if v:
                terms[mono] = v
        rels.append(MultiPoly(ring, terms))
    return AlgebraPresentation(desc, pres.variables, tuple(rels))


def closure_from_presentation(pres: AlgebraPresentation, m: int,
                              method: str = "general", exact: bool = False,
                              strategy: str = "auto",
                              budget: int | None = None):
    """Compute a closure dimension from a presentation.

    Over the rationals the default mode reduces modulo two independent
    31-bit primes and requires the ranks to agree; `exact` forces honest
    rational arithmetic.  Over finite fields the computation is always
    exact.  Returns (ClosureResult, mode_string).
    """
    if pres.field.kind != "rationals" or exact:
        algebra = algebra_from_presentation(pres)
        result = m_closure(algebra, m, method=method, strategy=strategy,
                           budget=budget)
        mode = "exact" if pres.field.kind == "rationals" else str(pres.field)
        return result, mode
    p1, p2 = modular_primes()
    res1 = m_closure(algebra_from_presentation(presentation_mod_p(pres, p1)),
                     m, method=method, strategy=strategy, budget=budget)
    res2 = m_closure(algebra_from_presentation(presentation_mod_p(pres, p2)),
                     m, method=method, strategy=strategy, budget=budget)
    if res1.dim != res2.dim or res1.rank != res2.rank:
        raise ModularDisagreement(
            f"mod {p1} gives dim {res1.dim}, mod {p2} gives dim {res2.dim}")
    return res1, f"mod {p1}&{p2}"
