"""Multinomial and partition forms of the exponential sums, and the induced
equal-sum sections of multinomial coefficient lists.

Tuples over GF(q) with the same multiplicity pattern share their function
value, so the q^n-term exponential sum collapses to a sum over compositions
(one multiplicity per nonzero element, the count of zeros implied) weighted
by multinomial coefficients.  Grouping the coefficients by the trace class
of the shared value splits the full multinomial list into p sublists with
equal sums exactly when the sum vanishes; for p = 2 the same grouping reads
as an integer solution of the partition-indexed Diophantine equation
sum_lambda binom(n, lambda) * x_lambda = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cyclo import CyclotomicInt
from .symfun import SymmetricSpec, _lambda_rec, lucas_binomial_mod_p  # noqa: F401  (re-exported op)


class InvalidCompositionError(ValueError):
    pass


class OddCharacteristicError(ValueError):
    def __init__(self, p):
        super().__init__(f"Diophantine deltas require characteristic 2, got p={p}")
        self.p = p


# ---------------------------------------------------------------------------
# enumeration


def compositions(n, parts):
    """Free multiplicity vectors (m_1, ..., m_parts) with sum <= n, in nested
    loop order: m_1 from 0..n, m_2 from 0..n-m_1, and so on."""
    if parts == 0:
        yield ()
        return
    for head in range(n + 1):
        for tail in compositions(n - head, parts - 1):
            yield (head,) + tail


def _compositions_with_coeff(n, parts):
    """(m, multinomial) pairs where multinomial counts tuples realizing m,
    built from incremental binomial products."""

    def rec(remaining, slots, prefix, coeff):
        if slots == 0:
            yield prefix, coeff
            return
        for head in range(remaining + 1):
            yield from rec(remaining - head, slots - 1, prefix + (head,), coeff * math.comb(remaining, head))

    yield from rec(n, parts, (), 1)


def multinomial_coefficient(n, parts):
    """n! / (m_0*! m_1! ... ) with the implied part m_0* = n - sum(parts)."""
    parts = tuple(int(v) for v in parts)
    if any(v < 0 for v in parts):
        raise InvalidCompositionError(f"negative part in {parts}")
    if sum(parts) > n:
        raise InvalidCompositionError(f"parts {parts} exceed n={n}")
    out = 1
    remaining = n
    for v in parts:
        out *= math.comb(remaining, v)
        remaining -= v
    return out


def multinomial_list(n, q):
    """The full ordered multinomial coefficient list L(n; q).

    Enumerates (m_0, ..., m_{q-2}) in nested loop order with the last
    coordinate dependent (the conventional display order).
    """
    if q < 2:
        raise ValueError("q must be >= 2")
    return [coeff for _, coeff in _compositions_with_coeff(n, q - 1)]


def partitions_into_at_most(n, q):
    """Partitions of n with at most q parts, right-padded with zeros to
    length q, in descending lexicographic order."""

    def rec(remaining, max_part, slots):
        if remaining == 0:
            yield ()
            return
        if slots == 0:
            return
        lo = -(-remaining // slots)  # parts are weakly decreasing, so first >= ceil
        for head in range(min(remaining, max_part), lo - 1, -1):
            for tail in rec(remaining - head, head, slots - 1):
                yield (head,) + tail

    for part in rec(n, n, q):
        yield part + (0,) * (q - len(part))


def distinct_permutations(items):
    """All distinct rearrangements of a tuple (each exactly once)."""
    items = tuple(items)
    counts = {}
    for v in items:
        counts[v] = counts.get(v, 0) + 1
    values = sorted(counts)

    def rec(k):
        if k == 0:
            yield ()
            return
        for v in values:
            if counts[v]:
                counts[v] -= 1
                for tail in rec(k - 1):
                    yield (v,) + tail
                counts[v] += 1

    yield from rec(len(items))


# ---------------------------------------------------------------------------
# evaluators


def _trace_of_spec_value(field, spec, m, cache):
    acc = 0
    level = field.q - 1
    for k, b in spec.terms:
        lam = _lambda_rec(field, level, k, tuple(m), cache)
        if lam:
            acc = field.add_index(acc, field.mul_index(b, lam))
    return field.trace_index(acc)


def exp_sum_multinomial(field, spec, n, cache=None):
    """Exponential sum as a multinomial-weighted sum over multiplicity
    vectors; must agree with brute-force enumeration exactly."""
    spec.validate_for(field)
    if cache is None:
        cache = {}
    counts = [0] * field.p
    for m, coeff in _compositions_with_coeff(n, field.q - 1):
        counts[_trace_of_spec_value(field, spec, m, cache)] += coeff
    return CyclotomicInt(field.p, counts)


def exp_sum_partition(field, spec, n, cache=None):
    """Exponential sum grouped by integer partitions of n with at most q
    parts; each distinct rearrangement of the padded partition contributes
    once, with its first entry read as the multiplicity of zero."""
    spec.validate_for(field)
    if cache is None:
        cache = {}
    counts = [0] * field.p
    for lam in partitions_into_at_most(n, field.q):
        coeff = multinomial_coefficient(n, lam)
        for gamma in distinct_permutations(lam):
            counts[_trace_of_spec_value(field, spec, gamma[1:], cache)] += coeff
    return CyclotomicInt(field.p, counts)


# ---------------------------------------------------------------------------
# section reports


@dataclass(frozen=True)
class SectionReport:
    """The p sublists of L(n;q) grouped by trace class, with their sums."""

    n: int
    q: int
    p: int
    sublists: tuple
    sums: tuple
    balanced: bool
    trivial: bool

    def to_json(self):
        return {
            "n": self.n,
            "q": self.q,
            "p": self.p,
            "sublists": [list(s) for s in self.sublists],
            "sums": list(self.sums),
            "balanced": self.balanced,
            "trivial": self.trivial,
        }


def pq_section(field, spec, n, cache=None):
    """Assign each composition's multinomial coefficient to the sublist
    indexed by the trace of the shared function value.

    Balanced means all sublist sums are equal (each q^n / p), which happens
    exactly when the exponential sum vanishes; trivial means the sublists
    coincide as multisets.  Sublists are reported sorted.
    """
    spec.validate_for(field)
    if cache is None:
        cache = {}
    sublists = [[] for _ in range(field.p)]
    for m, coeff in _compositions_with_coeff(n, field.q - 1):
        sublists[_trace_of_spec_value(field, spec, m, cache)].append(coeff)
    for s in sublists:
        s.sort()
    sums = tuple(sum(s) for s in sublists)
    balanced = len(set(sums)) == 1
    trivial = all(s == sublists[0] for s in sublists[1:])
    return SectionReport(
        n=n,
        q=field.q,
        p=field.p,
        sublists=tuple(tuple(s) for s in sublists),
        sums=sums,
        balanced=balanced,
        trivial=trivial,
    )


# ---------------------------------------------------------------------------
# Diophantine solutions (characteristic 2)


@dataclass(frozen=True)
class DiophantineSolution:
    """Partition-indexed deltas x_lambda with sum binom(n,lambda)*x_lambda = 0
    whenever the exponential sum vanishes."""

    n: int
    partitions: tuple
    deltas: tuple
    certified: bool

    def weighted_sum(self):
        return sum(multinomial_coefficient(self.n, lam) * d for lam, d in zip(self.partitions, self.deltas))

    def to_json(self):
        return {
            "partitions": [list(lam) for lam in self.partitions],
            "deltas": list(self.deltas),
            "certified": self.certified,
        }


def diophantine_solution(field, spec, n, cache=None):
    """For p = 2: each rearrangement of a padded partition contributes +/-1
    according to the parity of the trace, giving integer deltas x_lambda.

    Certified means the multinomial-weighted delta sum vanishes, i.e. the
    exponential sum is zero.  Odd characteristic is refused: the tuple
    contributions are then p-th roots of unity, not rational integers.
    """
    if field.p != 2:
        raise OddCharacteristicError(field.p)
    spec.validate_for(field)
    if cache is None:
        cache = {}
    partitions = []
    deltas = []
    for lam in partitions_into_at_most(n, field.q):
        delta = 0
        for gamma in distinct_permutations(lam):
            delta += 1 if _trace_of_spec_value(field, spec, gamma[1:], cache) == 0 else -1
        partitions.append(lam)
        deltas.append(delta)
    sol = DiophantineSolution(n=n, partitions=tuple(partitions), deltas=tuple(deltas), certified=False)
    certified = sol.weighted_sum() == 0
    return DiophantineSolution(n=n, partitions=sol.partitions, deltas=sol.deltas, certified=certified)
