"""Exact arithmetic with roots of unity and integer polynomials.

``CyclotomicInt`` represents an element of Z[zeta_m] as a full length-m
group-ring vector: entry j is the integer coefficient of zeta_m^j.  Products
are cyclic convolutions; reduction modulo the m-th cyclotomic polynomial is
applied only when a canonical form is needed (equality, zero tests,
extraction of rational integers).  Mixed orders lift transparently to the
lcm order via zeta_m = zeta_L^(L/m).

``CycloRational`` attaches a single positive integer denominator, which is
all the closed formulas need (their coefficients carry a uniform 1/D^r
prefactor).  ``IntPolynomial`` is an arbitrary-precision integer-coefficient
polynomial used for characteristic polynomials of recurrences.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction


class NotAUnitError(ValueError):
    def __init__(self, u, m):
        super().__init__(f"{u} is not a unit modulo {m}")
        self.u = u
        self.m = m


class NotRationalIntegerError(ValueError):
    """Raised when a value expected to be a rational integer is not.

    Carries the offending canonical form; in the closed-form pipelines this
    signals an implementation bug, not a data error.
    """

    def __init__(self, canonical, den=1):
        super().__init__(f"value with canonical form {canonical} (den={den}) is not a rational integer")
        self.canonical = canonical
        self.den = den


# ---------------------------------------------------------------------------
# integer polynomials


class IntPolynomial:
    """Integer-coefficient polynomial, constant term first, no trailing zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @property
    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return IntPolynomial([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    def __sub__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return IntPolynomial([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])

    def __neg__(self):
        return IntPolynomial([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPolynomial(out)

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by X^k."""
        if not self.coeffs:
            return self
        return IntPolynomial((0,) * k + self.coeffs)

    def content(self):
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def primitive(self):
        """Divide out the content; normalize the leading coefficient to be positive."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.coeffs[-1] < 0:
            g = -g
        return IntPolynomial([c // g for c in self.coeffs])

    def divmod_exact(self, divisor):
        """Quotient and remainder by a monic integer polynomial (exact over Z)."""
        if not divisor.coeffs or divisor.coeffs[-1] != 1:
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        d = divisor.degree
        if self.degree < d:
            return IntPolynomial(), IntPolynomial(rem)
        quot = [0] * (self.degree - d + 1)
        for i in range(self.degree, d - 1, -1):
            c = rem[i]
            if c:
                quot[i - d] = c
                for j in range(d + 1):
                    rem[i - d + j] -= c * divisor.coeffs[j]
        return IntPolynomial(quot), IntPolynomial(rem)

    def __call__(self, x):
        """Evaluate by Horner's rule; x may be an int or a CyclotomicInt."""
        if isinstance(x, CyclotomicInt):
            acc = CyclotomicInt(x.order)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_json(self):
        return list(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in range(self.degree, -1, -1):
            c = self.coeffs[e]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                term = str(mag)
            else:
                xpow = "X" if e == 1 else f"X^{e}"
                term = xpow if mag == 1 else f"{mag}*{xpow}"
            if not parts:
                parts.append(term if c > 0 else "-" + term)
            else:
                parts.append(f"{sign} {term}")
        return " ".join(parts)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"


_CYCLOTOMIC_CACHE = {}


def cyclotomic_polynomial(m):
    """The m-th cyclotomic polynomial, by recursive division of X^m - 1."""
    if m < 1:
        raise ValueError("order must be >= 1")
    if m not in _CYCLOTOMIC_CACHE:
        if m == 1:
            phi = IntPolynomial([-1, 1])
        else:
            num = IntPolynomial([-1] + [0] * (m - 1) + [1])
            for d in range(1, m):
                if m % d == 0:
                    num, rem = num.divmod_exact(cyclotomic_polynomial(d))
                    assert rem.is_zero()
            phi = num
        _CYCLOTOMIC_CACHE[m] = phi
    return _CYCLOTOMIC_CACHE[m]


# ---------------------------------------------------------------------------
# cyclotomic integers


class CyclotomicInt:
    """Element of Z[zeta_m] as a length-m integer group-ring vector."""

    __slots__ = ("order", "coeffs", "_canon")

    def __init__(self, order, coeffs=()):
        order = int(order)
        if order < 1:
            raise ValueError("order must be >= 1")
        c = [0] * order
        for j, v in enumerate(coeffs):
            c[j % order] += int(v)
        self.order = order
        self.coeffs = tuple(c)
        self._canon = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zeta(cls, m, e=1):
        """zeta_m^e."""
        c = [0] * m
        c[e % m] = 1
        return cls(m, c)

    @classmethod
    def from_int(cls, n, order=1):
        c = [0] * order
        c[0] = int(n)
        return cls(order, c)

    # -- canonical form ------------------------------------------------------

    def canonical(self):
        """Coefficients of the remainder modulo Phi_m (tuple of length deg Phi_m)."""
        if self._canon is None:
            phi = cyclotomic_polynomial(self.order)
            _, rem = IntPolynomial(self.coeffs).divmod_exact(phi)
            c = list(rem.coeffs) + [0] * (phi.degree - len(rem.coeffs))
            self._canon = tuple(c[: phi.degree])
        return self._canon

    def is_zero(self):
        return all(c == 0 for c in self.canonical())

    def lift(self, order):
        """Rewrite in Z[zeta_order]; order must be a multiple of self.order."""
        if order == self.order:
            return self
        if order % self.order != 0:
            raise ValueError(f"cannot lift order {self.order} to non-multiple {order}")
        step = order // self.order
        c = [0] * order
        for j, v in enumerate(self.coeffs):
            c[j * step] = v
        return CyclotomicInt(order, c)

    def _pair(self, other):
        if isinstance(other, int):
            other = CyclotomicInt.from_int(other, self.order)
        if not isinstance(other, CyclotomicInt):
            return None, None
        if self.order == other.order:
            return self, other
        L = math.lcm(self.order, other.order)
        return self.lift(L), other.lift(L)

    # -- ring operations ------------------------------------------------------

    def __add__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return CyclotomicInt(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return CyclotomicInt(a.order, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return CyclotomicInt(self.order, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicInt(self.order, [c * other for c in self.coeffs])
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        m = a.order
        out = [0] * m
        for i, ai in enumerate(a.coeffs):
            if ai:
                for j, bj in enumerate(b.coeffs):
                    if bj:
                        k = i + j
                        out[k - m if k >= m else k] += ai * bj
        return CyclotomicInt(m, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("exponent must be >= 0")
        result = CyclotomicInt.from_int(1, self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = CyclotomicInt.from_int(other, 1)
        if not isinstance(other, CyclotomicInt):
            return NotImplemented
        a, b = self._pair(other)
        return a.canonical() == b.canonical()

    def __hash__(self):
        # hash via the embedding-stable pair (minimal data): canonical at own order
        return hash((self.order, self.canonical()))

    # -- extraction -----------------------------------------------------------

    def to_integer(self):
        """The value as a rational integer, or NotRationalIntegerError."""
        can = self.canonical()
        if any(c != 0 for c in can[1:]):
            raise NotRationalIntegerError(can)
        return can[0] if can else 0

    def rewrite(self, order):
        """Re-express the value in Z[zeta_order] (any order, not only multiples).

        Solves for integer coordinates on the power basis of Z[zeta_order]
        inside Z[zeta_lcm]; raises ValueError when the value does not lie in
        the target ring.
        """
        L = math.lcm(self.order, order)
        target_deg = cyclotomic_polynomial(order).degree
        # basis vectors: canonical coords at order L of zeta_order^j
        cols = []
        for j in range(target_deg):
            cols.append(CyclotomicInt.zeta(order, j).lift(L).canonical())
        rhs = self.lift(L).canonical()
        sol = _solve_integer_combination(cols, rhs)
        if sol is None:
            raise ValueError(f"value is not an element of Z[zeta_{order}]")
        return CyclotomicInt(order, sol + [0] * (order - len(sol)))

    def embed_complex(self):
        """Floating-point shadow at zeta_m = exp(2*pi*i/m)."""
        return sum(c * cmath.exp(2j * cmath.pi * j / self.order) for j, c in enumerate(self.coeffs) if c)

    # -- serialization ----------------------------------------------------------

    def to_json(self):
        can = self.canonical()
        return {"order": self.order, "coeffs": list(can) + [0] * (self.order - len(can))}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["order"]), [int(c) for c in data["coeffs"]])

    def __str__(self):
        can = self.canonical()
        parts = []
        for j, c in enumerate(can):
            if c == 0:
                continue
            if not parts:
                parts.append(str(c) if j == 0 else f"{c}*z^{j}")
            else:
                sign = "-" if c < 0 else "+"
                mag = abs(c)
                parts.append(f"{sign} {mag}*z^{j}" if j else f"{sign} {mag}")
        body = " ".join(parts) if parts else "0"
        return f"{body} (order {self.order})"

    def __repr__(self):
        return f"CyclotomicInt(order={self.order}, canonical={list(self.canonical())})"


def galois_conjugate(a, u):
    """Apply the automorphism zeta_m -> zeta_m^u; u must be a unit mod m."""
    m = a.order
    if math.gcd(u, m) != 1:
        raise NotAUnitError(u, m)
    out = [0] * m
    for j, c in enumerate(a.coeffs):
        if c:
            out[(u * j) % m] += c
    return CyclotomicInt(m, out)


def _solve_integer_combination(cols, rhs):
    """Solve sum_j x_j * cols[j] == rhs for integers x_j (exact, or None)."""
    ncols = len(cols)
    nrows = len(rhs)
    mat = [[Fraction(cols[j][i]) for j in range(ncols)] + [Fraction(rhs[i])] for i in range(nrows)]
    pivots = []
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, nrows) if mat[r][col] != 0), None)
        if piv is None:
            continue
        mat[row], mat[piv] = mat[piv], mat[row]
        inv = mat[row][col]
        mat[row] = [v / inv for v in mat[row]]
        for r in range(nrows):
            if r != row and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[row])]
        pivots.append(col)
        row += 1
    # inconsistency check
    for r in range(row, nrows):
        if mat[r][ncols] != 0:
            return None
    sol = [Fraction(0)] * ncols
    for rr, col in enumerate(pivots):
        sol[col] = mat[rr][ncols]
    if any(v.denominator != 1 for v in sol):
        return None
    return [int(v) for v in sol]


# ---------------------------------------------------------------------------
# rationals over Z[zeta_m]


class CycloRational:
    """num/den with num a CyclotomicInt and den a positive integer."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        if isinstance(num, int):
            num = CyclotomicInt.from_int(num)
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        g = math.gcd(den, *num.coeffs) if any(num.coeffs) else den
        if g > 1:
            num = CyclotomicInt(num.order, [c // g for c in num.coeffs])
            den //= g
        self.num = num
        self.den = den

    def _pair(self, other):
        if isinstance(other, (int, CyclotomicInt)):
            other = CycloRational(other)
        if not isinstance(other, CycloRational):
            return None
        return other

    def __add__(self, other):
        other = self._pair(other)
        if other is None:
            return NotImplemented
        return CycloRational(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._pair(other)
        if other is None:
            return NotImplemented
        return CycloRational(self.num * other.den - other.num * self.den, self.den * other.den)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return CycloRational(-self.num, self.den)

    def __mul__(self, other):
        other = self._pair(other)
        if other is None:
            return NotImplemented
        return CycloRational(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("exponent must be >= 0")
        return CycloRational(self.num**e, self.den**e)

    def __eq__(self, other):
        other = self._pair(other)
        if other is None:
            return NotImplemented
        return (self.num * other.den) == (other.num * self.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def is_zero(self):
        return self.num.is_zero()

    def to_integer(self):
        n = self.num.to_integer()
        if n % self.den != 0:
            raise NotRationalIntegerError(self.num.canonical(), self.den)
        return n // self.den

    def to_cyclotomic(self):
        """The value as a CyclotomicInt; raises unless it is an algebraic integer.

        Integrality is decided on the canonical form: the power basis is a
        Z-basis of Z[zeta_m], so the denominator must divide every canonical
        coordinate.
        """
        if self.den == 1:
            return self.num
        can = self.num.canonical()
        if all(c % self.den == 0 for c in can):
            m = self.num.order
            coeffs = [c // self.den for c in can]
            return CyclotomicInt(m, coeffs + [0] * (m - len(coeffs)))
        raise NotRationalIntegerError(can, self.den)

    def embed_complex(self):
        return self.num.embed_complex() / self.den

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den}

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num}) / {self.den}"

    def __repr__(self):
        return f"CycloRational({self.num!r}, {self.den})"
