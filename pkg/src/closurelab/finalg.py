"""Finite-dimensional commutative algebras given by structure constants.

An algebra is a basis e_0, ..., e_{n-1} with e_0 = 1 and sparse products
e_i e_j = sum_k c_ijk e_k.  Elements handled internally are sparse dicts
{basis index: scalar}; the public AlgebraElement wraps dense coordinates.

The module also houses the exact linear algebra: a canonical reduced row
space over any of the supported fields (pivot = largest column index, so the
lexicographically smallest basis labels survive into quotients), and the
division-free Berkowitz characteristic polynomial.
"""

from __future__ import annotations

from heapq import heapify, heappop, heappush

from .arith import Field
from .errors import FieldMismatch, RingMismatch
from .groebner import GroebnerBasis, buchberger, normal_form, standard_monomials
from .multipoly import AlgebraPresentation, PolyRing

# ---------------------------------------------------------------------------
# sparse vectors


def vec_scale(field, vec, c):
    if not c:
        return {}
    mul = field.mul
    return {k: mul(c, v) for k, v in vec.items()}


def vec_add_into(field, target, vec, c=None):
    """target += c*vec, in place."""
    add = field.add
    mul = field.mul
    if c is None:
        c = field.one
    for k, v in vec.items():
        w = mul(c, v)
        if k in target:
            s = add(target[k], w)
            if s:
                target[k] = s
            else:
                del target[k]
        elif w:
            target[k] = w
    return target


# ---------------------------------------------------------------------------
# canonical row space (reduced row echelon, pivot = largest column)


class RowSpace:
    """Exact row space accumulator with canonical pivots.

    The pivot of a row is its largest column index, so the set of pivot
    columns (and hence any quotient basis chosen as the complement) depends
    only on the span, never on insertion order.  Stored rows are reduced at
    insertion time and normalized to pivot coefficient 1.
    """

    def __init__(self, field: Field, width: int):
        self.field = field
        self.width = width
        self.rows = {}          # pivot column -> sparse row

    @property
    def rank(self):
        return len(self.rows)

    def pivots(self):
        return set(self.rows)

    def reduce(self, vec: dict) -> dict:
        """Fully reduced representative of vec modulo the row space."""
        rows = self.rows
        field = self.field
        sub = field.sub
        mul = field.mul
        out = {k: v for k, v in vec.items() if v}
        cand = [-c for c in out if c in rows]
        heapify(cand)
        while cand:
            c = -heappop(cand)
            if c not in out:
                continue
            coef = out.pop(c)
            for c2, v2 in rows[c].items():
                if c2 == c:
                    continue
                w = mul(coef, v2)
                if c2 in out:
                    s = sub(out[c2], w)
                    if s:
                        out[c2] = s
                    else:
                        del out[c2]
                        continue
                else:
                    out[c2] = field.neg(w)
                if c2 in rows:
                    heappush(cand, -c2)
        return out

    def insert_reduced(self, row: dict) -> int:
        """Insert an already-reduced nonzero row; returns its pivot column."""
        pivot = max(row)
        lead = row[pivot]
        if lead != self.field.one:
            inv = self.field.inv(lead)
            mul = self.field.mul
            row = {k: mul(inv, v) for k, v in row.items()}
        self.rows[pivot] = row
        return pivot

    def add(self, vec: dict):
        """Reduce and insert; returns the new pivot or None if dependent."""
        r = self.reduce(vec)
        if not r:
            return None
        return self.insert_reduced(r)

    def close_under(self, seeds, multipliers):
        """Grow the span until it is stable under every multiplier map.

        `multipliers` are callables dict -> dict.  Rows spawned from a newly
        inserted pivot are recomputed from the stored row, keeping the work
        queue small.  The final span is the smallest multiplier-closed
        subspace containing the seeds.
        """
        queue = []
        seen = set()
        for vec in seeds:
            pivot = self.add(vec)
            if pivot is not None and pivot not in seen:
                seen.add(pivot)
                queue.append(pivot)
        qi = 0
        while qi < len(queue):
            pivot = queue[qi]
            qi += 1
            base = self.rows[pivot]
            for mult in multipliers:
                p2 = self.add(mult(base))
                if p2 is not None and p2 not in seen:
                    seen.add(p2)
                    queue.append(p2)
        return self.rank


# ---------------------------------------------------------------------------
# Berkowitz characteristic polynomial


class FieldOps:
    """Ring-operation adapter for plain field scalars."""

    def __init__(self, field: Field):
        self.add = field.add
        self.sub = field.sub
        self.mul = field.mul
        self.neg = field.neg
        self.zero = field.zero
        self.one = field.one


class PolyOps:
    """Ring-operation adapter for MultiPoly entries."""

    def __init__(self, ring: PolyRing):
        self.add = lambda a, b: a + b
        self.sub = lambda a, b: a - b
        self.mul = lambda a, b: a * b
        self.neg = lambda a: -a
        self.zero = ring.zero()
        self.one = ring.one()


def berkowitz_charpoly(matrix, ops):
    """Characteristic polynomial det(Z*I - M) of a square matrix over any
    commutative ring, by the division-free Berkowitz scheme.

    Returns coefficients in ascending Z order; the leading entry is 1.
    """
    n = len(matrix)
    poly = [ops.one]  # descending coefficients, 0x0 block
    for r in range(1, n + 1):
        d = matrix[r - 1][r - 1]
        row = matrix[r - 1][: r - 1]
        col = [matrix[i][r - 1] for i in range(r - 1)]
        # toeplitz column entries: 1, -d, -R C, -R A C, -R A^2 C, ...
        entries = [ops.one, ops.neg(d)]
        w = list(row)
        for _ in range(r - 2):
            s = ops.zero
            for a, b in zip(w, col):
                s = ops.add(s, ops.mul(a, b))
            entries.append(ops.neg(s))
            w = [  # w <- w A, over the leading (r-1)x(r-1) block
                _dot(ops, w, [matrix[i][j] for i in range(r - 1)])
                for j in range(r - 1)
            ]
        if r >= 2:
            s = ops.zero
            for a, b in zip(w, col):
                s = ops.add(s, ops.mul(a, b))
            entries.append(ops.neg(s))
        new_poly = [ops.zero] * (r + 1)
        for j, pj in enumerate(poly):
            for i in range(len(entries)):
                if i + j <= r:
                    new_poly[i + j] = ops.add(new_poly[i + j],
                                              ops.mul(entries[i], pj))
        poly = new_poly
    return list(reversed(poly))


def _dot(ops, u, v):
    s = ops.zero
    for a, b in zip(u, v):
        s = ops.add(s, ops.mul(a, b))
    return s


def determinant_expansion(matrix, ops):
    """Cofactor expansion along the first row; the independent oracle used
    to cross-check Berkowitz."""
    n = len(matrix)
    if n == 0:
        return ops.one
    if n == 1:
        return matrix[0][0]
    total = ops.zero
    for j in range(n):
        entry = matrix[0][j]
        minor = [[matrix[i][k] for k in range(n) if k != j]
                 for i in range(1, n)]
        term = ops.mul(entry, determinant_expansion(minor, ops))
        total = ops.add(total, term) if j % 2 == 0 else ops.sub(total, term)
    return total


# ---------------------------------------------------------------------------
# algebras


class StructureAlgebra:
    """Base class; concrete subclasses provide basis products."""

    field: Field
    dim: int
    labels: list

    def basis_product(self, i: int, j: int) -> dict:
        raise NotImplementedError

    # -- generic derived operations

    def unit(self) -> dict:
        return {0: self.field.one} if self.dim else {}

    def mult_vec(self, u: dict, v: dict) -> dict:
        """Product of two sparse elements."""
        out = {}
        field = self.field
        mul = field.mul
        for i, a in u.items():
            for j, b in v.items():
                vec_add_into(field, out, self.basis_product(i, j), mul(a, b))
        return out

    def mult_by(self, v: dict):
        """Multiplier callable for a fixed sparse element."""
        items = sorted(v.items())

        def apply(w):
            out = {}
            field = self.field
            mul = field.mul
            for j, b in w.items():
                for i, a in items:
                    vec_add_into(field, out, self.basis_product(i, j),
                                 mul(a, b))
            return out

        return apply

    def generator_elements(self):
        """Ring generators as (name, sparse vector); defaults to the whole
        non-unit basis."""
        return [(self.label_str(i), {i: self.field.one})
                for i in range(1, self.dim)]

    def generator_multipliers(self):
        """Multiplier callables whose closure generates the action of the
        whole algebra on any subspace."""
        return [self.mult_by(vec) for _, vec in self.generator_elements()]

    def label(self, i: int):
        return self.labels[i]

    def label_str(self, i: int) -> str:
        return _label_to_str(self.label(i))

    def element(self, coords) -> "AlgebraElement":
        return AlgebraElement(self, list(coords))

    def element_from_dict(self, vec: dict) -> "AlgebraElement":
        coords = [self.field.zero] * self.dim
        for k, v in vec.items():
            coords[k] = v
        return AlgebraElement(self, coords)

    def zero_element(self):
        return AlgebraElement(self, [self.field.zero] * self.dim)

    def one_element(self):
        coords = [self.field.zero] * self.dim
        if self.dim:
            coords[0] = self.field.one
        return AlgebraElement(self, coords)

    def is_local_nilpotent(self) -> bool:
        """True when every non-unit basis element is nilpotent; the span of
        e_1..e_{n-1} is then the maximal ideal."""
        for i in range(1, self.dim):
            m = mult_matrix_sparse(self, {i: self.field.one})
            steps = 0
            power = m
            while (1 << steps) < self.dim:
                power = _sparse_mat_mul(self.field, power, power)
                steps += 1
            if any(power[j] for j in range(self.dim)):
                return False
        return True

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim}, field={self.field.descriptor})"


def _label_to_str(label):
    if isinstance(label, tuple):
        return "(" + ",".join(_label_to_str(x) for x in label) + ")"
    return str(label)


def _sparse_mat_mul(field, a, b):
    """Product of matrices stored as lists of column dicts."""
    out = []
    for j in range(len(b)):
        col = {}
        for k, v in b[j].items():
            vec_add_into(field, col, a[k], v)
        out.append(col)
    return out


def mult_matrix_sparse(algebra, vec: dict):
    """Columns of multiplication by vec, as sparse dicts."""
    cols = []
    field = algebra.field
    for j in range(algebra.dim):
        col = {}
        for i, a in vec.items():
            vec_add_into(field, col, algebra.basis_product(i, j), a)
        cols.append(col)
    return cols


class TableAlgebra(StructureAlgebra):
    """Algebra with an explicit sparse structure-constant table."""

    def __init__(self, field, labels, table, generators=None, check=True):
        """`table` maps (i, j) with i <= j to sparse product dicts; pairs
        with zero product may be omitted."""
        self.field = field
        self.labels = list(labels)
        self.dim = len(self.labels)
        self._table = {}
        one = field.one
        for (i, j), vec in table.items():
            key = (i, j) if i <= j else (j, i)
            clean = {k: v for k, v in vec.items() if v}
            if key[0] == 0:
                # products with the identity are structural, never stored
                if clean != {key[1]: one}:
                    raise ValueError("basis element 0 is not an identity")
                continue
            if clean:
                self._table[key] = clean
        self._generators = generators
        if check:
            self._check_axioms()

    def basis_product(self, i, j):
        if i == 0:
            return {j: self.field.one}
        if j == 0:
            return {i: self.field.one}
        key = (i, j) if i <= j else (j, i)
        return self._table.get(key, {})

    def generator_elements(self):
        if self._generators is not None:
            return self._generators
        return super().generator_elements()

    def _check_axioms(self, rng=None):
        field = self.field
        n = self.dim
        if n <= 20:
            triples = ((i, j, k) for i in range(n) for j in range(i, n)
                       for k in range(j, n))
        else:
            import random
            r = random.Random(0)
            triples = ((r.randrange(n), r.randrange(n), r.randrange(n))
                       for _ in range(200))
        for i, j, k in triples:
            left = {}
            for t, c in self.basis_product(i, j).items():
                vec_add_into(field, left, self.basis_product(t, k), c)
            right = {}
            for t, c in self.basis_product(j, k).items():
                vec_add_into(field, right, self.basis_product(i, t), c)
            if left != right:
                raise ValueError(f"associativity fails at basis triple {(i, j, k)}")


class TensorPowerAlgebra(StructureAlgebra):
    """m-fold tensor power of a factor algebra, basis indexed by m-tuples.

    Structure constants are computed slotwise on demand; only pairs actually
    touched are cached.
    """

    def __init__(self, factor: StructureAlgebra, m: int):
        self.factor = factor
        self.m = m
        self.field = factor.field
        n = factor.dim
        self.n = n
        self.dim = n ** m
        self.strides = [n ** (m - 1 - s) for s in range(m)]
        self._cache = {}

    @property
    def labels(self):
        return [self.decode(i) for i in range(self.dim)]

    def label(self, i: int):
        return self.decode(i)

    def decode(self, index: int):
        out = []
        for stride in self.strides:
            out.append(index // stride % self.n)
        return tuple(out)

    def encode(self, tup):
        return sum(t * s for t, s in zip(tup, self.strides))

    def label_str(self, i):
        tup = self.decode(i)
        return "(" + ",".join(_label_to_str(self.factor.labels[t]) for t in tup) + ")"

    def basis_product(self, i, j):
        key = (i, j) if i <= j else (j, i)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        ti, tj = self.decode(key[0]), self.decode(key[1])
        mul = self.field.mul
        partial = [(0, self.field.one)]
        for s in range(self.m):
            slot = self.factor.basis_product(ti[s], tj[s])
            if not slot:
                partial = []
                break
            stride = self.strides[s]
            partial = [(base + k * stride, mul(c, v))
                       for base, c in partial for k, v in slot.items()]
        out = {}
        for idx, c in partial:
            if c:
                out[idx] = self.field.add(out[idx], c) if idx in out else c
        out = {k: v for k, v in out.items() if v}
        self._cache[key] = out
        return out

    def embed(self, s: int, vec: dict) -> dict:
        """Image of a factor element under the slot-s embedding."""
        stride = self.strides[s]
        return {k * stride: v for k, v in vec.items()}

    def slot_multiplier(self, s: int, vec: dict):
        """Fast multiplier for the slot-s embedding of a factor element."""
        n = self.n
        stride = self.strides[s]
        factor = self.factor
        field = self.field
        mul = field.mul
        add = field.add
        # product of vec with each factor basis element
        cols = mult_matrix_sparse(factor, vec)

        def apply(w):
            out = {}
            for col, c in w.items():
                a = col // stride % n
                base = col - a * stride
                for k, pc in cols[a].items():
                    idx = base + k * stride
                    v = mul(c, pc)
                    if idx in out:
                        sv = add(out[idx], v)
                        if sv:
                            out[idx] = sv
                        else:
                            del out[idx]
                    elif v:
                        out[idx] = v
            return out

        return apply

    def generator_elements(self):
        out = []
        for s in range(self.m):
            for name, vec in self.factor.generator_elements():
                out.append((f"{name}[{s + 1}]", self.embed(s, vec)))
        return out

    def generator_multipliers(self):
        out = []
        for s in range(self.m):
            for _, vec in self.factor.generator_elements():
                out.append(self.slot_multiplier(s, vec))
        return out

    def embedding_map(self, s: int) -> "AlgebraMap":
        rows = [self.embed(s, {i: self.field.one})
                for i in range(self.factor.dim)]
        return AlgebraMap(self.factor, self, rows)


class TensorPairAlgebra(StructureAlgebra):
    """Tensor product of two algebras, basis indexed by (left, right) pairs.

    Labels flatten the left label with the right one, so iterated pairs over
    the same right factor carry tuple labels of growing length.
    """

    def __init__(self, left: StructureAlgebra, right: StructureAlgebra):
        if left.field != right.field:
            raise FieldMismatch("tensor factors over different fields")
        self.left = left
        self.right = right
        self.field = left.field
        self.n = right.dim
        self.dim = left.dim * right.dim
        self._cache = {}

    @property
    def labels(self):
        return [self.pair_label(i) for i in range(self.dim)]

    def label(self, i: int):
        return self.pair_label(i)

    def pair_label(self, index):
        u, i = divmod(index, self.n)
        llabel = self.left.label(u)
        if not isinstance(llabel, tuple):
            llabel = (llabel,)
        return llabel + (self.right.label(i),)

    def label_str(self, index):
        return _label_to_str(self.pair_label(index))

    def basis_product(self, i, j):
        key = (i, j) if i <= j else (j, i)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        u1, r1 = divmod(key[0], self.n)
        u2, r2 = divmod(key[1], self.n)
        lp = self.left.basis_product(u1, u2)
        rp = self.right.basis_product(r1, r2)
        mul = self.field.mul
        add = self.field.add
        out = {}
        for u, cu in lp.items():
            base = u * self.n
            for r, cr in rp.items():
                idx = base + r
                v = mul(cu, cr)
                if idx in out:
                    s = add(out[idx], v)
                    if s:
                        out[idx] = s
                    else:
                        del out[idx]
                elif v:
                    out[idx] = v
        self._cache[key] = out
        return out

    def embed_left(self, vec: dict) -> dict:
        return {u * self.n: c for u, c in vec.items()}

    def embed_right(self, vec: dict) -> dict:
        return dict(vec)

    def left_multiplier(self, vec: dict):
        cols = mult_matrix_sparse(self.left, vec)
        n = self.n
        field = self.field
        mul = field.mul
        add = field.add

        def apply(w):
            out = {}
            for col, c in w.items():
                u, r = divmod(col, n)
                for u2, cu in cols[u].items():
                    idx = u2 * n + r
                    v = mul(c, cu)
                    if idx in out:
                        s = add(out[idx], v)
                        if s:
                            out[idx] = s
                        else:
                            del out[idx]
                    elif v:
                        out[idx] = v
            return out

        return apply

    def right_multiplier(self, vec: dict):
        cols = mult_matrix_sparse(self.right, vec)
        n = self.n
        field = self.field
        mul = field.mul
        add = field.add

        def apply(w):
            out = {}
            for col, c in w.items():
                base = col - col % n
                for r2, cr in cols[col % n].items():
                    idx = base + r2
                    v = mul(c, cr)
                    if idx in out:
                        s = add(out[idx], v)
                        if s:
                            out[idx] = s
                        else:
                            del out[idx]
                    elif v:
                        out[idx] = v
            return out

        return apply

    def generator_elements(self):
        out = [(f"{name}(x)1", self.embed_left(vec))
               for name, vec in self.left.generator_elements()]
        out.extend((f"1(x){name}", self.embed_right(vec))
                   for name, vec in self.right.generator_elements())
        return out

    def generator_multipliers(self):
        out = [self.left_multiplier(vec)
               for _, vec in self.left.generator_elements()]
        out.extend(self.right_multiplier(vec)
                   for _, vec in self.right.generator_elements())
        return out


class QuotientAlgebra(StructureAlgebra):
    """Quotient of a parent algebra by a multiplier-closed row space."""

    def __init__(self, parent: StructureAlgebra, span: RowSpace):
        self.parent = parent
        self.span = span
        self.field = parent.field
        pivots = span.pivots()
        self.basis_cols = [c for c in range(parent.dim) if c not in pivots]
        self.dim = len(self.basis_cols)
        self.col_to_index = {c: i for i, c in enumerate(self.basis_cols)}
        self._cache = {}
        if self.dim and self.basis_cols[0] != 0:
            # the identity column was absorbed into the span: unit ideal
            self.basis_cols = []
            self.dim = 0
            self.col_to_index = {}

    @property
    def labels(self):
        return [self.parent.label(c) for c in self.basis_cols]

    def label(self, i: int):
        return self.parent.label(self.basis_cols[i])

    def label_str(self, i):
        return self.parent.label_str(self.basis_cols[i])

    def project(self, parent_vec: dict) -> dict:
        """Canonical image of a parent element in quotient coordinates."""
        reduced = self.span.reduce(parent_vec)
        if not self.dim:
            return {}
        return {self.col_to_index[c]: v for c, v in reduced.items()}

    def lift(self, vec: dict) -> dict:
        return {self.basis_cols[i]: v for i, v in vec.items()}

    def basis_product(self, i, j):
        key = (i, j) if i <= j else (j, i)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        prod = self.parent.basis_product(self.basis_cols[key[0]],
                                         self.basis_cols[key[1]])
        out = self.project(prod)
        self._cache[key] = out
        return out

    def projection_map(self) -> "AlgebraMap":
        rows = [self.project({c: self.field.one})
                for c in range(self.parent.dim)]
        return AlgebraMap(self.parent, self, rows)

    def generator_elements(self):
        out = []
        for name, vec in self.parent.generator_elements():
            img = self.project(vec)
            if img:
                out.append((name, img))
        return out


class AlgebraElement:
    """Dense element of a structure algebra."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: StructureAlgebra, coords):
        if len(coords) != algebra.dim:
            raise ValueError("coordinate length does not match the dimension")
        self.algebra = algebra
        self.coords = list(coords)

    def to_dict(self):
        return {i: c for i, c in enumerate(self.coords) if c}

    def _check(self, other):
        if self.algebra is not other.algebra and self.algebra != other.algebra:
            raise RingMismatch("elements of different algebras")

    def __add__(self, other):
        self._check(other)
        add = self.algebra.field.add
        return AlgebraElement(self.algebra,
                              [add(a, b) for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._check(other)
        sub = self.algebra.field.sub
        return AlgebraElement(self.algebra,
                              [sub(a, b) for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        neg = self.algebra.field.neg
        return AlgebraElement(self.algebra, [neg(a) for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            prod = self.algebra.mult_vec(self.to_dict(), other.to_dict())
            return self.algebra.element_from_dict(prod)
        return self.scale(other)

    def scale(self, c):
        mul = self.algebra.field.mul
        return AlgebraElement(self.algebra, [mul(c, a) for a in self.coords])

    def __pow__(self, e: int):
        acc = self.algebra.one_element()
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def is_zero(self):
        return not any(self.coords)

    def __eq__(self, other):
        return (isinstance(other, AlgebraElement)
                and self.algebra == other.algebra
                and self.coords == other.coords)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coords):
            if c:
                terms.append(f"{self.algebra.field.format_scalar(c)}*"
                             f"{self.algebra.label_str(i)}")
        return " + ".join(terms) if terms else "0"


class AlgebraMap:
    """Linear map between algebras, given by images of basis elements."""

    def __init__(self, source: StructureAlgebra, target: StructureAlgebra,
                 rows, name=None):
        self.source = source
        self.target = target
        self.rows = rows      # list over source basis of sparse target dicts
        self.name = name

    def apply_dict(self, vec: dict) -> dict:
        out = {}
        for i, c in vec.items():
            vec_add_into(self.target.field, out, self.rows[i], c)
        return out

    def apply(self, elem: AlgebraElement) -> AlgebraElement:
        return self.target.element_from_dict(self.apply_dict(elem.to_dict()))

    def compose(self, after: "AlgebraMap") -> "AlgebraMap":
        """after o self."""
        rows = [after.apply_dict(row) for row in self.rows]
        return AlgebraMap(self.source, after.target, rows)

    def is_unital(self) -> bool:
        return self.apply_dict(self.source.unit()) == self.target.unit()

    def is_ring_morphism(self, pair_budget: int | None = None) -> bool:
        """Check multiplicativity on basis pairs.

        With a budget, a deterministic subsample of pairs is checked (used
        for very large targets); pass None to check every pair.
        """
        if not self.is_unital():
            return False
        n = self.source.dim
        pairs = [(i, j) for i in range(n) for j in range(i, n)]
        if pair_budget is not None and len(pairs) > pair_budget:
            step = len(pairs) // pair_budget
            pairs = pairs[::step][:pair_budget]
        for i, j in pairs:
            left = self.target.mult_vec(self.rows[i], self.rows[j])
            right = {}
            for k, c in self.source.basis_product(i, j).items():
                vec_add_into(self.target.field, right, self.rows[k], c)
            if left != right:
                return False
        return True

    def matrix(self):
        """Dense matrix, row i = coordinates of the image of e_i."""
        out = []
        zero = self.target.field.zero
        for row in self.rows:
            dense = [zero] * self.target.dim
            for k, v in row.items():
                dense[k] = v
            out.append(dense)
        return out


# ---------------------------------------------------------------------------
# named operations


def algebra_from_presentation(pres: AlgebraPresentation,
                              gb: GroebnerBasis | None = None) -> TableAlgebra:
    """Structure constants of a zero-dimensional presentation: the basis is
    the list of standard monomials (1 first), products are reduced by the
    Groebner normal form."""
    if gb is None:
        gb = buchberger(pres)
    ring = gb.ring
    std = standard_monomials(gb)
    index = {m: i for i, m in enumerate(std)}
    table = {}
    for i in range(len(std)):
        for j in range(i, len(std)):
            mono = tuple(a + b for a, b in zip(std[i], std[j]))
            prod = normal_form(ring.monomial(mono), gb)
            vec = {index[m]: c for m, c in prod.terms.items()}
            if vec:
                table[(i, j)] = vec
    labels = [_mono_label(ring, m) for m in std]
    generators = []
    for v, name in enumerate(ring.var_names):
        img = normal_form(ring.var(v), gb)
        vec = {index[m]: c for m, c in img.terms.items()}
        generators.append((name, vec))
    algebra = TableAlgebra(ring.field, labels, table, generators=generators)
    algebra.presentation = pres
    algebra.groebner = gb
    return algebra


def _mono_label(ring: PolyRing, mono):
    if not any(mono):
        return "1"
    parts = []
    for name, e in zip(ring.var_names, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def algebra_product(a: StructureAlgebra, b: StructureAlgebra):
    """Direct product with componentwise multiplication.

    Returns (product, projection_onto_a, projection_onto_b).  The basis is
    (1,1), then the non-unit basis of A in the first slot, then the full
    basis of B in the second slot.
    """
    if a.field != b.field:
        raise FieldMismatch("product factors over different fields")
    field = a.field
    na, nb = a.dim, b.dim

    # internal direct-sum coordinates: 0..na-1 from A, na..na+nb-1 from B
    def from_sum(acoords: dict, bcoords: dict) -> dict:
        """Convert direct-sum coordinates to product-basis coordinates."""
        out = {}
        a0 = acoords.get(0, field.zero)
        if a0:
            out[0] = a0
        for i, c in acoords.items():
            if i:
                out[i] = c
        b0 = field.sub(bcoords.get(0, field.zero), a0)
        if b0:
            out[na] = b0
        for j, c in bcoords.items():
            if j:
                out[na + j] = c
        return out

    def parts(k: int):
        """Direct-sum coordinates of product basis element k."""
        if k == 0:
            return {0: field.one}, {0: field.one}
        if k < na:
            return {k: field.one}, {}
        return {}, {k - na: field.one}

    table = {}
    dim = na + nb
    for i in range(dim):
        for j in range(i, dim):
            ai, bi = parts(i)
            aj, bj = parts(j)
            vec = from_sum(a.mult_vec(ai, aj), b.mult_vec(bi, bj))
            if vec:
                table[(i, j)] = vec
    labels = [(0, 0)] + [(1, i) for i in range(1, na)] + \
        [(2, j) for j in range(nb)]
    prod = TableAlgebra(field, labels, table)
    proj_a = AlgebraMap(prod, a, [parts(k)[0] for k in range(dim)])
    proj_b = AlgebraMap(prod, b, [parts(k)[1] for k in range(dim)])
    return prod, proj_a, proj_b


DEFAULT_POWER_BUDGET = 20_000


def power_budget() -> int:
    """Cap on the dimension of any tensor power or staged product, from
    CLOSURELAB_BUDGET when set."""
    import os
    raw = os.environ.get("CLOSURELAB_BUDGET")
    return int(raw) if raw else DEFAULT_POWER_BUDGET


def tensor_power(a: StructureAlgebra, m: int, budget: int | None = None):
    """m-fold tensor power with its slot embeddings epsilon_1..epsilon_m."""
    limit = budget if budget is not None else power_budget()
    if m < 0:
        raise ValueError("negative tensor power")
    if a.dim ** m > limit:
        from .errors import BudgetExceeded
        raise BudgetExceeded(f"{a.dim}^{m} exceeds the budget {limit}")
    if m == 0:
        base = TableAlgebra(a.field, ["1"], {})
        return base, []
    power = TensorPowerAlgebra(a, m)
    return power, [power.embedding_map(s) for s in range(m)]


def mult_matrix(a: StructureAlgebra, elem: AlgebraElement):
    """Dense matrix of multiplication by elem; column j holds a*e_j."""
    cols = mult_matrix_sparse(a, elem.to_dict())
    zero = a.field.zero
    out = [[zero] * a.dim for _ in range(a.dim)]
    for j, col in enumerate(cols):
        for i, v in col.items():
            out[i][j] = v
    return out


class CharPoly:
    """Monic characteristic polynomial with its trace coefficients."""

    def __init__(self, coeffs, field):
        self.coeffs = coeffs          # ascending; leading entry is 1
        self.field = field
        n = len(coeffs) - 1
        # P(Z) = sum (-1)^i s_i Z^(n-i), so s_i = (-1)^i * coeff of Z^(n-i)
        self.traces = []
        for i in range(1, n + 1):
            c = coeffs[n - i]
            self.traces.append(c if i % 2 == 0 else field.neg(c))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __eq__(self, other):
        return isinstance(other, CharPoly) and self.coeffs == other.coeffs

    def evaluate_element(self, elem: AlgebraElement) -> AlgebraElement:
        algebra = elem.algebra
        acc = algebra.zero_element()
        for c in reversed(self.coeffs):
            acc = acc * elem + algebra.one_element().scale(c)
        return acc

    def evaluate_scalar(self, x):
        f = self.field
        acc = f.zero
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, x), c)
        return acc

    def __repr__(self):
        from .multipoly import format_univariate
        return format_univariate(self.coeffs, self.field)


def char_poly(a: StructureAlgebra, elem: AlgebraElement) -> CharPoly:
    """det(Z*I - M_elem) via Berkowitz; division free, so it works over any
    supported field including small characteristic."""
    m = mult_matrix(a, elem)
    coeffs = berkowitz_charpoly(m, FieldOps(a.field))
    return CharPoly(coeffs, a.field)


def ideal_subspace_dim(a: StructureAlgebra, gens):
    """Dimension of the smallest multiplication-closed subspace containing
    the generators, with the row space that spans it."""
    span = RowSpace(a.field, a.dim)
    seeds = [g.to_dict() if isinstance(g, AlgebraElement) else dict(g)
             for g in gens]
    # deduplicate seeds up to scaling
    unique = []
    seen = set()
    for vec in seeds:
        if not vec:
            continue
        pivot = max(vec)
        inv = a.field.inv(vec[pivot])
        key = frozenset((k, a.field.mul(inv, v)) for k, v in vec.items())
        if key not in seen:
            seen.add(key)
            unique.append(vec)
    span.close_under(unique, a.generator_multipliers())
    return span.rank, span


def quotient_algebra(a: StructureAlgebra, gens):
    """Quotient by the ideal generated by `gens`, with the projection map.

    The quotient basis keeps the smallest-labelled complement of the pivot
    columns; a unit ideal yields the zero algebra (dimension 0).
    """
    _, span = ideal_subspace_dim(a, gens)
    quot = QuotientAlgebra(a, span)
    return quot, quot.projection_map()
