"""Exact scalar arithmetic over Q, GF(p) and small extension fields GF(p^k).

Scalars are plain Python values so that hot loops stay cheap:

* rationals      -> fractions.Fraction (always in lowest terms)
* GF(p)          -> int in [0, p)
* GF(p^k)        -> int in [0, p^k); base-p digits are the coefficients of
                    1, t, ..., t^(k-1) where t is the extension generator.

In every case the zero element is falsy, so sparse containers can drop
entries with a bare truth test.  Field handles carry the operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DivisionByZero, NotPrime, ReducibleModulus, UnsupportedField

MAX_FIELD_SIZE = 1 << 61

# Two primes below 2^31 used as char-0 surrogates in modular mode; products
# of residues fit in 64-bit intermediates.
DEFAULT_MODULAR_PRIMES = (2147483629, 2147483587)

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 2^64."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# dense univariate arithmetic over GF(p), used only for modulus validation
# and the first-irreducible search


def _poly_trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_mulmod(f, g, mod, p):
    prod = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                prod[i + j] = (prod[i + j] + a * b) % p
    return _poly_remmod(prod, mod, p)


def _poly_remmod(f, mod, p):
    f = list(f)
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], p - 2, p)
    while len(f) - 1 >= dm and _poly_trim(f):
        shift = len(f) - 1 - dm
        c = f[-1] * inv_lead % p
        for i, m in enumerate(mod):
            f[shift + i] = (f[shift + i] - c * m) % p
        _poly_trim(f)
    return f


def _poly_gcd(f, g, p):
    f, g = list(f), list(g)
    _poly_trim(f)
    _poly_trim(g)
    while g:
        f = _poly_remmod(f, g, p)
        f, g = g, f
        _poly_trim(g)
    return f


def _frobenius_power(i, mod, p):
    """X^(p^i) reduced mod `mod`, via repeated X -> X^p."""
    x = _poly_remmod([0, 1], mod, p)
    for _ in range(i):
        acc = [1]
        base = list(x)
        e = p
        while e:
            if e & 1:
                acc = _poly_mulmod(acc, base, mod, p)
            base = _poly_mulmod(base, base, mod, p)
            e >>= 1
        x = acc
    return x


def is_irreducible(modulus, p: int) -> bool:
    """Check a monic polynomial over GF(p):  gcd(X^(p^i) - X, f) = 1 for
    i < deg f, and X^(p^k) = X mod f."""
    k = len(modulus) - 1
    if k < 1:
        return False
    x = [0, 1]
    for i in range(1, k):
        xi = _frobenius_power(i, modulus, p)
        diff = [((xi[j] if j < len(xi) else 0) - (x[j] if j < len(x) else 0)) % p
                for j in range(max(len(xi), len(x)))]
        g = _poly_gcd(modulus, diff, p)
        if len(g) != 1:
            return False
    xk = _frobenius_power(k, modulus, p)
    diff = [(xk[j] if j < len(xk) else 0) - (x[j] if j < len(x) else 0)
            for j in range(max(len(xk), len(x)))]
    return not _poly_trim([d % p for d in diff])


# Fixed moduli for the most common small extensions (reproducible runs).
_FIXED_MODULI = {
    (2, 2): (1, 1, 1),        # t^2 + t + 1
    (2, 3): (1, 1, 0, 1),     # t^3 + t + 1
    (3, 2): (2, 2, 1),        # t^2 + 2t + 2
}


def default_modulus(p: int, k: int) -> tuple:
    """Fixed table entry when available, otherwise the first monic
    irreducible of degree k in lexicographic order of the low digits."""
    if (p, k) in _FIXED_MODULI:
        return _FIXED_MODULI[(p, k)]
    for low in range(p ** k):
        coeffs = []
        v = low
        for _ in range(k):
            coeffs.append(v % p)
            v //= p
        cand = tuple(coeffs) + (1,)
        if is_irreducible(list(cand), p):
            return cand
    raise ReducibleModulus(f"no irreducible modulus found for GF({p}^{k})")


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldDescriptor:
    """Tag describing one of the supported exact fields."""

    kind: str                 # "rationals" | "prime" | "extension"
    p: int = 0
    k: int = 1
    modulus: tuple = ()       # coefficients of 1, t, ..., t^k; monic

    def __str__(self):
        if self.kind == "rationals":
            return "Q"
        if self.kind == "prime":
            return f"F{self.p}"
        return f"GF({self.p},{self.k})"


def rationals() -> FieldDescriptor:
    return FieldDescriptor("rationals")


def prime_field(p: int) -> FieldDescriptor:
    return FieldDescriptor("prime", p=p)


def extension_field(p: int, k: int, modulus=None) -> FieldDescriptor:
    if modulus is None:
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        modulus = default_modulus(p, k)
    return FieldDescriptor("extension", p=p, k=k, modulus=tuple(modulus))


class Field:
    """Handle providing exact arithmetic on raw scalar values."""

    descriptor: FieldDescriptor
    char: int
    order: int | None    # None means infinite (the rationals)

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def from_int(self, n: int):
        raise NotImplementedError

    def elements(self):
        """Iterate all field elements (finite fields only)."""
        raise UnsupportedField("field is not finite")

    def random_element(self, rng):
        raise NotImplementedError

    def parse_scalar(self, text: str):
        raise NotImplementedError

    def format_scalar(self, a) -> str:
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Field) and self.descriptor == other.descriptor

    def __hash__(self):
        return hash(self.descriptor)

    def __repr__(self):
        return f"Field({self.descriptor})"


class RationalField(Field):
    def __init__(self):
        self.descriptor = rationals()
        self.char = 0
        self.order = None
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of zero")
        return 1 / Fraction(a)

    def from_int(self, n):
        return Fraction(n)

    def random_element(self, rng):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))

    def parse_scalar(self, text):
        return Fraction(text.strip())

    def format_scalar(self, a):
        return str(a)


class PrimeField(Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if p >= MAX_FIELD_SIZE:
            raise UnsupportedField(f"field size {p} exceeds 2^61")
        self.descriptor = prime_field(p)
        self.p = p
        self.char = p
        self.order = p
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        a %= self.p
        if not a:
            raise DivisionByZero("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def from_int(self, n):
        return n % self.p

    def elements(self):
        return range(self.p)

    def random_element(self, rng):
        return rng.randrange(self.p)

    def parse_scalar(self, text):
        text = text.strip()
        if "/" in text:
            num, den = text.split("/")
            return self.mul(self.from_int(int(num)), self.inv(self.from_int(int(den))))
        return self.from_int(int(text))

    def format_scalar(self, a):
        return str(a % self.p)


class ExtensionField(Field):
    """GF(p^k) with elements packed as integers in [0, p^k).

    Base-p digit i of an element is the coefficient of t^i.  For small
    orders the multiplication and inverse tables are precomputed.
    """

    _TABLE_LIMIT = 256

    def __init__(self, p: int, k: int, modulus):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if k < 2:
            raise UnsupportedField("extension degree must be >= 2")
        modulus = tuple(int(c) % p for c in modulus[:-1]) + (1,)
        if len(modulus) != k + 1:
            raise ReducibleModulus(f"modulus degree must be {k}")
        if not is_irreducible(list(modulus), p):
            raise ReducibleModulus(
                f"modulus is reducible over GF({p})")
        if p ** k >= MAX_FIELD_SIZE:
            raise UnsupportedField(f"field size {p}^{k} exceeds 2^61")
        self.descriptor = FieldDescriptor("extension", p=p, k=k, modulus=modulus)
        self.p = p
        self.k = k
        self.modulus = modulus
        self.char = p
        self.order = p ** k
        self.zero = 0
        self.one = 1
        self.gen = p if k >= 1 else 0   # the element t
        self._mul_table = None
        self._inv_table = None
        if self.order <= self._TABLE_LIMIT:
            self._build_tables()

    # -- digit helpers

    def _digits(self, a):
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _pack(self, digits):
        v = 0
        for d in reversed(digits):
            v = v * self.p + d % self.p
        return v

    def _build_tables(self):
        q = self.order
        table = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                v = self._mul_raw(a, b)
                table[a][b] = v
                table[b][a] = v
        self._mul_table = table
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if table[a][b] == 1:
                    inv[a] = b
                    break
        self._inv_table = inv

    def _mul_raw(self, a, b):
        da, db = self._digits(a), self._digits(b)
        p = self.p
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        # reduce by the monic modulus
        for i in range(len(prod) - 1, self.k - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(self.k):
                    prod[i - self.k + j] = (prod[i - self.k + j] - c * self.modulus[j]) % p
        return self._pack(prod[: self.k])

    # -- field ops

    def add(self, a, b):
        p = self.p
        out = 0
        mult = 1
        for _ in range(self.k):
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        p = self.p
        out = 0
        mult = 1
        for _ in range(self.k):
            out += (-a % p) * mult
            a //= p
            mult *= p
        return out

    def mul(self, a, b):
        if self._mul_table is not None:
            return self._mul_table[a][b]
        return self._mul_raw(a, b)

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of zero")
        if self._inv_table is not None:
            return self._inv_table[a]
        return self.pow(a, self.order - 2)

    def pow(self, a, e):
        acc = 1
        while e:
            if e & 1:
                acc = self.mul(acc, a)
            a = self.mul(a, a)
            e >>= 1
        return acc

    def from_int(self, n):
        return n % self.p

    def embed_prime(self, a):
        """Image of a GF(p) residue in this field."""
        return a % self.p

    def elements(self):
        return range(self.order)

    def random_element(self, rng):
        return rng.randrange(self.order)

    def parse_scalar(self, text):
        from .multipoly import parse_scalar_text
        return parse_scalar_text(self, text)

    def format_scalar(self, a):
        digits = self._digits(a)
        parts = []
        for i in range(self.k - 1, -1, -1):
            c = digits[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("t" if c == 1 else f"{c}t")
            else:
                parts.append(f"t^{i}" if c == 1 else f"{c}t^{i}")
        return "+".join(parts) if parts else "0"


_FIELD_CACHE: dict[FieldDescriptor, Field] = {}


def field_create(desc: FieldDescriptor) -> Field:
    """Instantiate (and cache) the field behind a descriptor."""
    if desc in _FIELD_CACHE:
        return _FIELD_CACHE[desc]
    if desc.kind == "rationals":
        f = RationalField()
    elif desc.kind == "prime":
        f = PrimeField(desc.p)
    elif desc.kind == "extension":
        modulus = desc.modulus or default_modulus(desc.p, desc.k)
        f = ExtensionField(desc.p, desc.k, modulus)
    else:
        raise UnsupportedField(f"unknown field kind {desc.kind!r}")
    _FIELD_CACHE[f.descriptor] = f
    return f


def QQ() -> Field:
    return field_create(rationals())


def GF(p: int, k: int = 1) -> Field:
    if k == 1:
        return field_create(prime_field(p))
    return field_create(extension_field(p, k))


def field_from_order(q: int) -> Field:
    """GF(q) for a prime power q, or raise."""
    if is_prime(q):
        return GF(q)
    for p in range(2, q):
        if q % p == 0:
            if not is_prime(p):
                break
            k = 0
            v = q
            while v % p == 0:
                v //= p
                k += 1
            if v == 1:
                return GF(p, k)
            break
    raise UnsupportedField(f"{q} is not a prime power")
