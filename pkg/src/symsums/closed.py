"""Exact closed forms for binomial/multinomial sums twisted by periodic
exponents, and their specialization to exponential sums over GF(q).

A sum like sum_l binom(n,l) a^l xi^F(l) with F periodic of period D splits
over congruence classes mod D; each class is a linear combination of n-th
powers of the circulant eigenvalues 1 + a*zeta_D^(-j).  The same mechanism
applied once per coordinate turns the nested multinomial sum with a
componentwise-periodic exponent into

    S(n) = sum over multisets J of  c_J * (1 + zeta_D^(-j_1) + ... + zeta_D^(-j_r))^n,

with exact cyclotomic-rational coefficients carrying a uniform 1/D^r
prefactor.  Everything here is computed in Z[zeta]: the discrete transforms
run on integer group-ring vectors (floating point appears only as an exact
carrier of bounded integers inside matrix products).

For exponential sums the table of exponents is Tr of the multiplicity
recursion with all coordinates reduced into one period window.  When the
full D^(q-1) table is too large to materialize, the coefficients are built
instead from the image of the period lattice in the truncated unit group
(see _grouptransform); both constructions produce the same closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations_with_replacement

import numpy as np

from .cyclo import CycloRational, CyclotomicInt
from .symfun import period_for_degree  # noqa: F401  (re-exported)

_DIRECT_LIMIT = 1 << 18  # largest exponent table materialized directly


class PeriodicExponentTable:
    """A function F(b_1,...,b_r) on [0,D)^r with values read as exponents of
    a root xi of order M (so xi^D = 1 is not required of M itself; the table
    only promises periodicity D per coordinate)."""

    def __init__(self, arity, period, xi_order, values):
        self.arity = int(arity)
        self.period = int(period)
        self.xi_order = int(xi_order)
        if self.arity < 1 or self.period < 1 or self.xi_order < 1:
            raise ValueError("arity, period and xi order must be >= 1")
        arr = np.asarray(values, dtype=np.int64)
        if arr.shape != (self.period,) * self.arity:
            arr = arr.reshape((self.period,) * self.arity)
        if arr.min(initial=0) < 0 or arr.max(initial=0) >= self.xi_order:
            raise ValueError(f"table entries must lie in [0, {self.xi_order})")
        self.values = arr

    @classmethod
    def from_function(cls, arity, period, xi_order, fn):
        shape = (period,) * arity
        vals = np.empty(shape, dtype=np.int64)
        for idx in np.ndindex(shape):
            vals[idx] = fn(*idx) % xi_order
        return cls(arity, period, xi_order, vals)


@dataclass(frozen=True)
class ClosedTerm:
    """One closed-form term: eigenvalue lambda_J for a descending multiset J
    and its coefficient num/den (den is the uniform D^r)."""

    multiset: tuple
    eigenvalue: CyclotomicInt
    num: CyclotomicInt
    den: int

    def coefficient(self):
        return CycloRational(self.num, self.den)


class ClosedForm:
    """S(n) = sum_J (num_J / den) * lambda_J^n, exact over Z[zeta]."""

    def __init__(self, period, arity, xi_order, terms):
        self.period = period
        self.arity = arity
        self.xi_order = xi_order
        self.terms = tuple(terms)
        self.den = period**arity

    def __iter__(self):
        return iter(self.terms)

    def eval(self, n):
        """Exact value at n as a CycloRational."""
        if n < 0:
            raise ValueError("n must be >= 0")
        L = math.lcm(self.period, self.xi_order)
        acc = CyclotomicInt(L)
        for t in self.terms:
            if any(t.num.coeffs):
                acc = acc + t.num * t.eigenvalue**n
        return CycloRational(acc, self.den)

    def eval_range(self, n_lo, n_hi):
        """[eval(n) for n in range(n_lo, n_hi + 1)], sharing eigenvalue powers."""
        if n_lo < 0 or n_hi < n_lo:
            raise ValueError("need 0 <= n_lo <= n_hi")
        L = math.lcm(self.period, self.xi_order)
        live = [t for t in self.terms if any(t.num.coeffs)]
        fast = self._eval_range_fast(live, L, n_lo, n_hi)
        if fast is not None:
            return fast
        powers = [t.eigenvalue.lift(L) ** n_lo for t in live]
        lams = [t.eigenvalue.lift(L) for t in live]
        nums = [t.num.lift(L) for t in live]
        out = []
        for _ in range(n_lo, n_hi + 1):
            acc = [0] * L
            for num, pw in zip(nums, powers):
                m = num * pw
                for s, c in enumerate(m.coeffs):
                    acc[s] += c
            out.append(CycloRational(CyclotomicInt(L, acc), self.den))
            powers = [pw * lam for pw, lam in zip(powers, lams)]
        return out

    def _eval_range_fast(self, live, L, n_lo, n_hi):
        # vectorized iterative powers; only taken when every intermediate
        # integer provably fits in int64
        if not live:
            return [CycloRational(CyclotomicInt(L), self.den) for _ in range(n_lo, n_hi + 1)]
        lam1 = max(sum(abs(c) for c in t.eigenvalue.coeffs) for t in live)
        num_max = max(max(abs(c) for c in t.num.coeffs) for t in live)
        if num_max * L * max(lam1, 1) ** (n_hi + 1) >= 2**62:
            return None
        lam = np.array([t.eigenvalue.lift(L).coeffs for t in live], dtype=np.int64)
        num = np.array([t.num.lift(L).coeffs for t in live], dtype=np.int64)
        idx = (np.arange(L)[:, None] - np.arange(L)[None, :]) % L  # (s, u) -> s-u
        lam_circ = lam[:, idx]  # (T, L, L): entry [t, s, u] = lam[t, (s-u)%L]
        pw = np.zeros((len(live), L), dtype=np.int64)
        pw[:, 0] = 1
        for _ in range(n_lo):
            pw = np.einsum("tu,tsu->ts", pw, lam_circ)
        out = []
        for _ in range(n_lo, n_hi + 1):
            # tot[t, s] = sum_u num[t,u] * pw[t,(s-u)%L]
            tot = np.einsum("tu,tsu->ts", num, pw[:, idx])
            vec = tot.sum(axis=0)
            out.append(CycloRational(CyclotomicInt(L, [int(v) for v in vec]), self.den))
            pw = np.einsum("tu,tsu->ts", pw, lam_circ)
        return out

    def to_json(self):
        return {
            "D": self.period,
            "r": self.arity,
            "xi_order": self.xi_order,
            "terms": [
                {
                    "multiset": list(t.multiset),
                    "eigenvalue": t.eigenvalue.to_json(),
                    "coeff_num": t.num.to_json(),
                    "coeff_den": t.den,
                }
                for t in self.terms
            ],
        }

    def render(self):
        """Human-readable lines, one per term with a nonzero coefficient."""
        lines = []
        for t in self.terms:
            if t.num.is_zero():
                continue
            lam = "1" + "".join(f"+xi_{self.period}^(-{j})" for j in t.multiset)
            try:
                coeff = str(CycloRational(t.num, t.den).to_integer())
            except Exception:
                coeff = f"({t.num})/{t.den}"
            lines.append(f"{coeff} * ({lam})^n")
        return lines


def _eigenvalue(D, multiset):
    c = [0] * D
    c[0] += 1
    for j in multiset:
        c[(-j) % D] += 1
    return CyclotomicInt(D, c)


# ---------------------------------------------------------------------------
# split binomial sums and the r = 1 twisted closed form


def rt_split_sum(n, t, D, a=1):
    """Sum of a^j binom(n,j) over j = t (mod D), via circulant eigenvalues:
    (1/D) * sum_m zeta_D^(t m) (1 + a zeta_D^(-m))^n."""
    if not 0 <= t < D:
        raise ValueError("need 0 <= t < D")
    if n < 0:
        raise ValueError("n must be >= 0")
    if isinstance(a, int):
        a = CyclotomicInt.from_int(a)
    L = math.lcm(D, a.order)
    a = a.lift(L)
    acc = CyclotomicInt(L)
    for m in range(D):
        lam = CyclotomicInt.from_int(1, L) + a * CyclotomicInt.zeta(L, (-(m * (L // D))) % L)
        acc = acc + CyclotomicInt.zeta(L, (t * m * (L // D)) % L) * lam**n
    return CycloRational(acc, D)


def twisted_binomial_closed(n, table, a=1):
    """Closed value of sum_l binom(n,l) a^l xi^F(l) for a period-D exponent
    table F (arity 1): (1/D) sum_t xi^F(t) sum_j zeta_D^(t j) lambda_j^n."""
    if table.arity != 1:
        raise ValueError("twisted binomial sums take an arity-1 table")
    if isinstance(a, int):
        a = CyclotomicInt.from_int(a)
    D, M = table.period, table.xi_order
    L = math.lcm(math.lcm(D, M), a.order)
    a = a.lift(L)
    lam_pow = []
    for j in range(D):
        lam = CyclotomicInt.from_int(1, L) + a * CyclotomicInt.zeta(L, (-(j * (L // D))) % L)
        lam_pow.append(lam**n)
    acc = CyclotomicInt(L)
    for t in range(D):
        xi_f = CyclotomicInt.zeta(L, (int(table.values[t]) * (L // M)) % L)
        for j in range(D):
            acc = acc + xi_f * CyclotomicInt.zeta(L, (t * j * (L // D)) % L) * lam_pow[j]
    return CycloRational(acc, D)


def twisted_binomial_direct(n, table, a=1):
    """The defining sum sum_l binom(n,l) a^l xi^F(l), exactly (oracle)."""
    if table.arity != 1:
        raise ValueError("twisted binomial sums take an arity-1 table")
    if isinstance(a, int):
        a = CyclotomicInt.from_int(a)
    D, M = table.period, table.xi_order
    L = math.lcm(math.lcm(D, M), a.order)
    a = a.lift(L)
    acc = CyclotomicInt(L)
    apow = CyclotomicInt.from_int(1, L)
    for l in range(n + 1):
        e = int(table.values[l % D])
        acc = acc + math.comb(n, l) * apow * CyclotomicInt.zeta(L, (e * (L // M)) % L)
        apow = apow * a
    return acc


# ---------------------------------------------------------------------------
# the general multi-sum closed form (explicit table)


def _axis_transform(arr, D, L, sign):
    """Apply, along every table axis of arr (shape (D,)*r + (L,)), the
    transform out[j] = sum_b in[b] * zeta_D^(sign*j*b), acting on group-ring
    vectors by exponent shifts.  Exact: the matmul carries bounded integers
    in float64."""
    step = L // D
    W = np.zeros((D * L, D * L), dtype=np.float64)
    eye = np.eye(L)
    for b in range(D):
        for j in range(D):
            shift = (sign * j * b * step) % L
            W[b * L : (b + 1) * L, j * L : (j + 1) * L] = np.roll(eye, shift, axis=1)
    r = arr.ndim - 1
    out = arr.astype(np.float64)
    for axis in range(r):
        moved = np.moveaxis(out, axis, -2)
        shape = moved.shape
        flat = moved.reshape(-1, D * L)
        flat = flat @ W
        out = np.moveaxis(flat.reshape(shape), -2, axis)
    result = np.rint(out).astype(np.int64)
    if not np.array_equal(result.astype(np.float64), out):
        raise ArithmeticError("transform left the exact-integer range")
    return result


def _aggregate_multisets(d_vectors, D, r):
    """Sum transform vectors over all index tuples sharing a multiset.

    d_vectors has shape (D,)*r + (L,); returns dict descending-multiset ->
    length-L integer vector.
    """
    L = d_vectors.shape[-1]
    flat = d_vectors.reshape(-1, L)
    n = flat.shape[0]
    idx = np.arange(n)
    tuples = np.empty((n, r), dtype=np.int64)
    rem = idx
    for axis in range(r - 1, -1, -1):
        tuples[:, axis] = rem % D
        rem = rem // D
    keys = np.sort(tuples, axis=1)[:, ::-1]
    order = np.lexsort(keys.T[::-1])
    keys_sorted = keys[order]
    vec_sorted = flat[order]
    boundaries = np.ones(n, dtype=bool)
    boundaries[1:] = np.any(keys_sorted[1:] != keys_sorted[:-1], axis=1)
    starts = np.flatnonzero(boundaries)
    sums = np.add.reduceat(vec_sorted, starts, axis=0)
    out = {}
    for row, vec in zip(keys_sorted[starts], sums):
        out[tuple(int(v) for v in row)] = vec
    return out


def general_closed_coefficients(table):
    """Closed form for the nested multinomial sum twisted by the table.

    One coefficient per descending multiset (j_1 >= ... >= j_r) over [0, D);
    distinct rearrangements of a multiset are collected into its single
    coefficient, which carries the uniform denominator D^r.
    """
    D, r, M = table.period, table.arity, table.xi_order
    L = math.lcm(D, M)
    den = D**r
    if den > (_DIRECT_LIMIT << 4):
        raise ValueError(f"table of size {den} too large to materialize; D^r > {_DIRECT_LIMIT << 4}")
    step = L // M
    flat_vals = table.values.reshape(-1)
    G = np.zeros((flat_vals.size, L), dtype=np.int64)
    G[np.arange(flat_vals.size), (flat_vals * step) % L] = 1
    G = G.reshape(table.values.shape + (L,))
    d = _axis_transform(G, D, L, sign=+1)
    groups = _aggregate_multisets(d, D, r)
    terms = []
    for asc in combinations_with_replacement(range(D), r):
        multiset = tuple(reversed(asc))
        vec = groups.get(multiset)
        num = CyclotomicInt(L, [int(v) for v in vec]) if vec is not None else CyclotomicInt(L)
        terms.append(ClosedTerm(multiset=multiset, eigenvalue=_eigenvalue(D, multiset), num=num, den=den))
    return ClosedForm(D, r, M, terms)


def closed_form_eval(cf, n):
    """Evaluate a ClosedForm at n (exact CycloRational)."""
    return cf.eval(n)


# ---------------------------------------------------------------------------
# specialization to exponential sums over GF(q)


def _exp_table_values(field, spec, D):
    """Vectorized exponent table: entry at b is Tr(sum_j beta_j * [T^k_j] of
    prod_i (1 + alpha_i T)^(b_i)) as an exponent of zeta_p.

    Exponents live in [0, D) directly: in the truncated product a zero
    exponent and the period-lifted exponent D give the same unit, which is
    the periodic extension the closed form requires.
    """
    add_t, mul_t, _, trace_t = field.tables()
    rho = field.q - 1
    kmax = spec.k_max
    polys = np.zeros((1, kmax + 1), dtype=np.int32)
    polys[0, 0] = 1
    for i in range(1, rho + 1):
        alpha = i
        blocks = [polys]
        cur = polys
        for _ in range(1, D):
            nxt = cur.copy()
            nxt[:, 1:] = add_t[cur[:, 1:], mul_t[alpha, cur[:, :-1]]]
            blocks.append(nxt)
            cur = nxt
        # digit for coordinate i varies fastest: C-order layout over (b_1,...,b_i)
        polys = np.stack(blocks, axis=1).reshape(-1, kmax + 1)
    acc = np.zeros(polys.shape[0], dtype=np.int32)
    for k, b in spec.terms:
        acc = add_t[acc, mul_t[b, polys[:, k]]]
    return trace_t[acc].astype(np.int64).reshape((D,) * rho)


def exp_sum_closed(field, spec):
    """Closed form of the exponential sum of the spec over the field.

    The period is D = p^(floor(log_p k_s) + 1) for the top degree k_s; the
    exponent function has arity q-1 and values in [0, p).  Small tables are
    materialized and transformed directly; for large D^(q-1) the same
    coefficients come from the image-group construction.
    """
    spec.validate_for(field)
    D = period_for_degree(field.p, spec.k_max)
    rho = field.q - 1
    if D**rho <= _DIRECT_LIMIT:
        table = PeriodicExponentTable(rho, D, field.p, _exp_table_values(field, spec, D))
        return general_closed_coefficients(table)
    from ._grouptransform import group_closed_coefficients

    groups, group_count = group_closed_coefficients(field, spec, D)
    den = D**rho
    scale = den // group_count
    L = math.lcm(D, field.p)
    terms = []
    for asc in combinations_with_replacement(range(D), rho):
        multiset = tuple(reversed(asc))
        vec = groups.get(multiset)
        num = CyclotomicInt(L, [int(v) * scale for v in vec]) if vec is not None else CyclotomicInt(L)
        terms.append(ClosedTerm(multiset=multiset, eigenvalue=_eigenvalue(D, multiset), num=num, den=den))
    return ClosedForm(D, rho, field.p, terms)


# ---------------------------------------------------------------------------
# demo helpers


def pisano_period(m):
    """Period of the Fibonacci sequence modulo m, by cycle detection."""
    if m < 2:
        raise ValueError("modulus must be >= 2")
    a, b = 0, 1
    for i in range(1, 6 * m * m + 1):
        a, b = b, (a + b) % m
        if (a, b) == (0, 1):
            return i
    raise ArithmeticError("Pisano period not found")  # unreachable


def fibonacci_mod_table(m):
    """Exponent table F(l) = fib(l) mod m over one Pisano period, with
    xi of order pi(m)."""
    period = pisano_period(m)
    vals = []
    a, b = 0, 1
    for _ in range(period):
        vals.append((a % m) % period)  # exponents of a root of order pi(m)
        a, b = b, (a + b) % m
    return PeriodicExponentTable(1, period, period, vals)
