"""Exact arithmetic in the Galois field GF(p^r).

A field is described by a prime ``p``, an extension degree ``r`` and a monic
irreducible modulus of degree ``r`` over Z_p (coefficients listed constant
term first).  Elements are residue polynomials of degree < r and are
enumerated canonically: element number ``i`` has the base-p digits of ``i``
as its coefficient vector (least significant digit = constant term), so that
element 0 is the zero of the field and element 1 is the unit.  This fixed
enumeration is what makes integer-encoded coefficients in user input and in
serialized output unambiguous.

The field trace down to the prime field is Tr(x) = sum of x^(p^j) for
j = 0..r-1; it always lands in Z_p and is returned as a plain residue.
"""

from __future__ import annotations

import gmpy2
import numpy as np

_TABLE_LIMIT = 512  # build q-by-q lookup tables only below this order


class FieldError(ValueError):
    """Base class for field construction/usage errors."""


class NotPrimeError(FieldError):
    def __init__(self, p):
        super().__init__(f"characteristic {p} is not prime")
        self.p = p


class ReducibleModulusError(FieldError):
    def __init__(self, modulus):
        super().__init__(f"modulus {list(modulus)} is reducible or not monic")
        self.modulus = tuple(modulus)


class DegreeMismatchError(FieldError):
    def __init__(self, expected, got):
        super().__init__(f"modulus degree {got} does not match extension degree {expected}")
        self.expected = expected
        self.got = got


# ---------------------------------------------------------------------------
# small polynomial helpers over Z_p (coefficient tuples, constant term first,
# no trailing zeros except for the zero polynomial -> empty tuple)

def _ptrim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pmod(a, m, p):
    # m monic
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            a[i] = 0
            for j in range(dm):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _ptrim(a[:dm])


def _ppowmod(a, e, m, p):
    result = (1,)
    base = _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _ptrim(a), _ptrim(b)
    while b:
        # make b monic before reduction
        inv = pow(b[-1], p - 2, p)
        b = tuple((c * inv) % p for c in b)
        a, b = b, _pmod(a, b, p)
    return a


def _is_irreducible(modulus, p):
    """Rabin irreducibility test for a monic polynomial over Z_p."""
    r = len(modulus) - 1
    if r < 1:
        return False
    x = (0, 1)
    # x^(p^r) must reduce to x modulo the polynomial
    xp = x
    for _ in range(r):
        xp = _ppowmod(xp, p, modulus, p)
    if _ptrim(_pmod(_psub(xp, x, p), modulus, p)):
        return False
    # no factor of degree p^(r/t) for prime divisors t of r
    for t in _prime_divisors(r):
        xp = x
        for _ in range(r // t):
            xp = _ppowmod(xp, p, modulus, p)
        g = _pgcd(_psub(xp, x, p), modulus, p)
        if len(g) - 1 != 0:
            return False
    return True


def _psub(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _ptrim(out)


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _default_modulus(p, r):
    """Lexicographically smallest monic irreducible of degree r over Z_p.

    Candidates are compared by their coefficient vector read from the
    constant term up, so the choice is deterministic across runs.
    """
    if r == 1:
        return (0, 1)
    for low in range(p ** r):
        coeffs = []
        v = low
        for _ in range(r):
            coeffs.append(v % p)
            v //= p
        cand = tuple(coeffs) + (1,)
        if _is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {r} over Z_{p}")  # unreachable


class FieldElement:
    """An element of a GaloisField, identified by its enumeration index."""

    __slots__ = ("field", "index")

    def __init__(self, field, index):
        self.field = field
        self.index = index

    @property
    def coeffs(self):
        """Length-r coefficient vector over Z_p, constant term first."""
        return self.field.index_to_coeffs(self.index)

    def __int__(self):
        return self.index

    def __index__(self):
        return self.index

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.index == other.index
        if isinstance(other, int):
            return self.index == other
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.modulus, self.index))

    def __bool__(self):
        return self.index != 0

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError("elements belong to different fields")
            return other.index
        if isinstance(other, int):
            return self.field.element(other).index
        return NotImplemented

    def __add__(self, other):
        j = self._coerce(other)
        return FieldElement(self.field, self.field.add_index(self.index, j))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg_index(self.index))

    def __sub__(self, other):
        j = self._coerce(other)
        return FieldElement(self.field, self.field.add_index(self.index, self.field.neg_index(j)))

    def __mul__(self, other):
        j = self._coerce(other)
        return FieldElement(self.field, self.field.mul_index(self.index, j))

    __rmul__ = __mul__

    def __pow__(self, e):
        return FieldElement(self.field, self.field.pow_index(self.index, e))

    def trace(self):
        return self.field.trace_index(self.index)

    def __repr__(self):
        return f"GF({self.field.q})[{self.index}]"


class GaloisField:
    """GF(p^r) with a fixed irreducible modulus and canonical element order.

    Immutable after construction; all operations are pure, so instances can
    be shared freely between threads.
    """

    def __init__(self, p, r=1, modulus=None):
        p = int(p)
        if p < 2 or not gmpy2.is_prime(p):
            raise NotPrimeError(p)
        if r < 1:
            raise FieldError(f"extension degree {r} must be >= 1")
        if modulus is None:
            modulus = _default_modulus(p, r)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != r + 1:
                raise DegreeMismatchError(r, len(modulus) - 1)
            if modulus[-1] != 1:
                raise ReducibleModulusError(modulus)
            if not _is_irreducible(modulus, p):
                raise ReducibleModulusError(modulus)
        self.p = p
        self.r = r
        self.q = p ** r
        self.modulus = modulus
        self._tables = None
        self._trace_table = self._build_trace_table()

    # -- enumeration ------------------------------------------------------

    def index_to_coeffs(self, i):
        if not 0 <= i < self.q:
            raise FieldError(f"element index {i} outside [0, {self.q})")
        out = []
        for _ in range(self.r):
            out.append(i % self.p)
            i //= self.p
        return tuple(out)

    def coeffs_to_index(self, coeffs):
        i = 0
        for c in reversed(tuple(coeffs)[: self.r]):
            i = i * self.p + (c % self.p)
        return i

    def element(self, i):
        if isinstance(i, FieldElement):
            if i.field != self:
                raise FieldError("element from a different field")
            return i
        i = int(i)
        if self.r == 1:
            return FieldElement(self, i % self.p)
        if not 0 <= i < self.q:
            raise FieldError(f"element index {i} outside [0, {self.q})")
        return FieldElement(self, i)

    @property
    def zero(self):
        return FieldElement(self, 0)

    @property
    def one(self):
        return FieldElement(self, 1)

    def elements(self):
        return (FieldElement(self, i) for i in range(self.q))

    # -- index arithmetic --------------------------------------------------

    def add_index(self, i, j):
        if self.r == 1:
            return (i + j) % self.p
        p = self.p
        a, b = i, j
        out = 0
        mult = 1
        for _ in range(self.r):
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg_index(self, i):
        if self.r == 1:
            return (-i) % self.p
        p = self.p
        out = 0
        mult = 1
        for _ in range(self.r):
            out += ((-i) % p) * mult
            i //= p
            mult *= p
        return out

    def mul_index(self, i, j):
        if self.r == 1:
            return (i * j) % self.p
        a = _ptrim(self.index_to_coeffs(i))
        b = _ptrim(self.index_to_coeffs(j))
        c = _pmod(_pmul(a, b, self.p), self.modulus, self.p)
        return self.coeffs_to_index(c + (0,) * (self.r - len(c)))

    def pow_index(self, i, e):
        if e < 0:
            raise FieldError("negative exponents not supported")
        result = 1
        base = i
        while e:
            if e & 1:
                result = self.mul_index(result, base)
            base = self.mul_index(base, base)
            e >>= 1
        return result

    def _build_trace_table(self):
        out = []
        for i in range(self.q):
            acc = 0
            for j in range(self.r):
                acc = self.add_index(acc, self.pow_index(i, self.p ** j))
            # trace of any element lies in the prime subfield
            out.append(acc % self.p)
        return tuple(out)

    def trace_index(self, i):
        return self._trace_table[i]

    def trace(self, x):
        return self.trace_index(self.element(x).index)

    # -- vectorized lookup tables ------------------------------------------

    def tables(self):
        """(add, mul, neg, trace) numpy lookup tables for vectorized loops.

        Only built for small fields (q <= 512); larger fields fall back to
        per-element arithmetic.
        """
        if self._tables is None:
            if self.q > _TABLE_LIMIT:
                raise FieldError(f"lookup tables unavailable for q={self.q} > {_TABLE_LIMIT}")
            q = self.q
            add = np.empty((q, q), dtype=np.int32)
            mul = np.empty((q, q), dtype=np.int32)
            for i in range(q):
                for j in range(i, q):
                    s = self.add_index(i, j)
                    m = self.mul_index(i, j)
                    add[i, j] = add[j, i] = s
                    mul[i, j] = mul[j, i] = m
            neg = np.array([self.neg_index(i) for i in range(q)], dtype=np.int32)
            trace = np.array(self._trace_table, dtype=np.int32)
            self._tables = (add, mul, neg, trace)
        return self._tables

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, GaloisField):
            return self.p == other.p and self.modulus == other.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        return f"GaloisField(p={self.p}, r={self.r}, modulus={list(self.modulus)})"

    def spec_string(self):
        base = f"{self.p}^{self.r}"
        if self.modulus == _default_modulus(self.p, self.r):
            return base
        return base + "/" + ",".join(str(c) for c in self.modulus)


def make_field(p, r=1, modulus=None):
    """Construct GF(p^r), validating primality and irreducibility."""
    return GaloisField(p, r, modulus)


def _factor_prime_power(q):
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    original = q
    for p in range(2, q + 1):
        if p * p > q:
            return q, 1
        if q % p == 0:
            r = 0
            while q % p == 0:
                q //= p
                r += 1
            if q != 1:
                raise FieldError(f"{original} is not a prime power")
            return p, r
    return q, 1


def parse_field_spec(text):
    """Parse a field spec string: "q", "p^r" or "p^r/c0,c1,...,cr".

    A bare integer is interpreted as a prime power and factored.  Explicit
    modulus coefficients are listed constant term first.
    """
    text = text.strip()
    modulus = None
    if "/" in text:
        head, _, tail = text.partition("/")
        modulus = [int(c) for c in tail.split(",") if c.strip() != ""]
    else:
        head = text
    if "^" in head:
        ps, _, rs = head.partition("^")
        p, r = int(ps), int(rs)
    else:
        p, r = _factor_prime_power(int(head))
    return make_field(p, r, modulus)
