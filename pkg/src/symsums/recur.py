"""Integer linear recurrences satisfied by the exponential-sum sequences.

The closed form makes the sequence a finite linear combination of n-th
powers of cyclotomic algebraic integers, so it is annihilated by the product
of (X - eigenvalue) over all eigenvalue multisets; that product has rational
integer coefficients by Galois stability.  The minimal integer recurrence is
recovered from sequence data alone by exact fraction-free elimination on the
Hankel system: the kernel of the window matrix is the set of annihilating
polynomials up to the window degree, and the gcd of a kernel basis is the
minimal one valid on the prefix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

import gmpy2

from .cyclo import (
    CycloRational,
    CyclotomicInt,
    IntPolynomial,
    cyclotomic_polynomial,
    galois_conjugate,
)
from .symfun import period_for_degree


class InsufficientTermsError(ValueError):
    def __init__(self, have, need):
        super().__init__(f"need at least {need} sequence terms, got {have}")
        self.have = have
        self.need = need


class NoRecurrenceFoundError(RuntimeError):
    def __init__(self, max_degree):
        super().__init__(f"no integer recurrence of degree <= {max_degree} fits the sequence")
        self.max_degree = max_degree


@dataclass(frozen=True)
class RecurrenceCertificate:
    poly: IntPolynomial
    checked_range: int
    satisfied: bool


# ---------------------------------------------------------------------------
# polynomials with known cyclotomic roots


def _expand_root_product(roots, order):
    """prod (X - root) with CyclotomicInt coefficients, constant term first."""
    coeffs = [CyclotomicInt.from_int(1, order)]
    for root in roots:
        nxt = [CyclotomicInt(order)] * (len(coeffs) + 1)
        for j, c in enumerate(coeffs):
            nxt[j + 1] = nxt[j + 1] + c
            nxt[j] = nxt[j] - root * c
        coeffs = nxt
    return coeffs


def _to_int_polynomial(coeffs):
    out = []
    for c in coeffs:
        out.append(c.to_integer())  # NotRationalIntegerError signals a bug upstream
    return IntPolynomial(out)


def _eigenvalue_at(D, multiset):
    c = [0] * D
    c[0] += 1
    for a in multiset:
        c[a % D] += 1
    return CyclotomicInt(D, c)


def char_poly(q, D):
    """The characteristic polynomial annihilating the exponential-sum
    sequence: product of (X - (1 + zeta_D^(a_1) + ... + zeta_D^(a_{q-1})))
    over all descending multisets; degree C(D+q-2, q-1)."""
    if q < 2 or D < 1:
        raise ValueError("need q >= 2 and D >= 1")
    roots = [_eigenvalue_at(D, ms) for ms in combinations_with_replacement(range(D), q - 1)]
    poly = _to_int_polynomial(_expand_root_product(roots, D))
    assert poly.degree == math.comb(D + q - 2, q - 1)
    return poly


def minimal_poly_algebraic(D, multiset):
    """Minimal polynomial of 1 + zeta_D^(a_1) + ... + zeta_D^(a_r): the monic
    product over the Galois orbit (units mod D acting on exponents)."""
    alpha = _eigenvalue_at(D, tuple(multiset))
    orbit = {}
    for u in range(1, D + 1):
        if math.gcd(u, D) == 1:
            conj = galois_conjugate(alpha, u)
            orbit[conj.canonical()] = conj
    poly = _to_int_polynomial(_expand_root_product(list(orbit.values()), D))
    assert poly(alpha).is_zero(), "minimal polynomial does not vanish at its root"
    return poly


def lcm_char_poly(field, k_max):
    """lcm of the minimal polynomials of all eigenvalues: the char polynomial
    with repeated irreducible factors collapsed to multiplicity one."""
    D = period_for_degree(field.p, k_max)
    seen = {}
    for ms in combinations_with_replacement(range(D), field.q - 1):
        poly = minimal_poly_algebraic(D, ms)
        seen[poly.coeffs] = poly
    out = IntPolynomial([1])
    for poly in seen.values():
        out = out * poly
    return out


# ---------------------------------------------------------------------------
# recurrences from sequence data


def _sequence_channels(seq):
    """Integer coordinate channels of a sequence of ints / cyclotomic values."""
    values = []
    has_cyclo = False
    for v in seq:
        if isinstance(v, CycloRational):
            v = v.to_cyclotomic()
        if isinstance(v, CyclotomicInt):
            has_cyclo = True
        elif not isinstance(v, int):
            raise TypeError(f"sequence values must be int or cyclotomic, got {type(v)!r}")
        values.append(v)
    if not has_cyclo:
        return [list(values)]
    L = 1
    for v in values:
        if isinstance(v, CyclotomicInt):
            L = math.lcm(L, v.order)
    width = cyclotomic_polynomial(L).degree
    channels = [[] for _ in range(width)]
    for v in values:
        if isinstance(v, int):
            v = CyclotomicInt.from_int(v, L)
        can = v.lift(L).canonical()
        for c in range(width):
            channels[c].append(can[c] if c < len(can) else 0)
    return channels


def _fraction_free_kernel(rows, ncols):
    """Exact nullspace basis (primitive integer vectors) of an integer matrix."""
    mat = [[gmpy2.mpz(v) for v in row] for row in rows]
    nrows = len(mat)
    prev = gmpy2.mpz(1)
    pivot_cols = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        pc = mat[r][c]
        for i in range(r + 1, nrows):
            vic = mat[i][c]
            row_i, row_r = mat[i], mat[r]
            for j in range(c + 1, ncols):
                num = pc * row_i[j] - vic * row_r[j]
                quo, rem = gmpy2.f_divmod(num, prev)
                assert rem == 0, "fraction-free elimination lost exact divisibility"
                row_i[j] = quo
            row_i[c] = gmpy2.mpz(0)
        prev = pc
        pivot_cols.append(c)
        r += 1
        if r == nrows:
            break
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    basis = []
    for f in free_cols:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for rr in range(len(pivot_cols) - 1, -1, -1):
            pc = pivot_cols[rr]
            s = Fraction(0)
            for j in range(pc + 1, ncols):
                if x[j]:
                    s += Fraction(int(mat[rr][j])) * x[j]
            x[pc] = -s / Fraction(int(mat[rr][pc]))
        den = math.lcm(*(v.denominator for v in x))
        vec = [int(v * den) for v in x]
        g = math.gcd(*vec)
        basis.append([v // g for v in vec])
    return basis


def _poly_pseudo_rem(a, b):
    """Pseudo-remainder of primitive integer polynomials (lc(b)-scaled)."""
    ac = list(a.coeffs)
    bc = b.coeffs
    db = len(bc) - 1
    lb = bc[-1]
    while len(ac) - 1 >= db and any(ac):
        while ac and ac[-1] == 0:
            ac.pop()
        if len(ac) - 1 < db:
            break
        factor = ac[-1]
        shift = len(ac) - 1 - db
        ac = [c * lb for c in ac]
        for j in range(db + 1):
            ac[shift + j] -= factor * bc[j]
        while ac and ac[-1] == 0:
            ac.pop()
    return IntPolynomial(ac)


def _poly_gcd(a, b):
    """gcd of integer polynomials (primitive, positive leading coefficient)."""
    a, b = a.primitive(), b.primitive()
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    while not b.is_zero():
        r = _poly_pseudo_rem(a, b)
        a, b = b, (r.primitive() if not r.is_zero() else r)
    return a.primitive()


def minimal_integer_recurrence(seq, max_degree):
    """Lowest-degree primitive integer polynomial annihilating the sequence.

    Values may be ints or cyclotomic integers; a common recurrence is sought
    across all canonical coordinates.  The kernel of the degree-max_degree
    Hankel window is the space of annihilators up to that degree, and its
    polynomial gcd is the minimal one; minimality is relative to the
    provided prefix.  The all-zero sequence returns the degree-0 marker 1.
    """
    seq = list(seq)
    need = 2 * max_degree + 2
    if len(seq) < need:
        raise InsufficientTermsError(len(seq), need)
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    channels = _sequence_channels(seq)
    if all(all(v == 0 for v in ch) for ch in channels):
        return IntPolynomial([1])
    width = max_degree + 1
    rows = []
    for ch in channels:
        for n in range(len(seq) - max_degree):
            rows.append(ch[n : n + width])
    basis = _fraction_free_kernel(rows, width)
    if not basis:
        raise NoRecurrenceFoundError(max_degree)
    g = IntPolynomial(basis[0])
    for vec in basis[1:]:
        g = _poly_gcd(g, IntPolynomial(vec))
        if g.degree == 0:
            break
    g = g.primitive()
    cert = verify_recurrence(seq, g)
    assert cert.satisfied, "kernel polynomial fails to annihilate the sequence"
    return g


def verify_recurrence(seq, poly):
    """Check sum_i poly_i * s(n+i) = 0 exactly for every admissible offset."""
    if poly.is_zero():
        raise ValueError("polynomial must be nonzero")
    seq = list(seq)
    d = poly.degree
    if len(seq) <= d:
        raise InsufficientTermsError(len(seq), d + 1)
    channels = _sequence_channels(seq)
    ok = True
    for ch in channels:
        for n in range(len(ch) - d):
            if sum(c * ch[n + i] for i, c in enumerate(poly.coeffs)) != 0:
                ok = False
                break
        if not ok:
            break
    return RecurrenceCertificate(poly=poly, checked_range=len(seq), satisfied=ok)


def poly_divides(a, b):
    """Exact divisibility test over the rationals with an integer-quotient check."""
    if a.is_zero():
        raise ValueError("divisor must be nonzero")
    if b.is_zero():
        return True
    if b.degree < a.degree:
        return False
    rem = [Fraction(c) for c in b.coeffs]
    quo = [Fraction(0)] * (b.degree - a.degree + 1)
    da = a.degree
    lc = Fraction(a.coeffs[-1])
    for i in range(b.degree, da - 1, -1):
        c = rem[i]
        if c:
            f = c / lc
            quo[i - da] = f
            for j in range(da + 1):
                rem[i - da + j] -= f * Fraction(a.coeffs[j])
    if any(rem):
        return False
    return all(f.denominator == 1 for f in quo)
