"""Elementary symmetric polynomials over GF(q) and the brute-force oracle.

The value of the degree-k elementary symmetric polynomial on a tuple depends
only on how many times each nonzero field element occurs in it.  That
reduction is computed by a recursion on the multiplicity vector (one
coordinate per nonzero element, in canonical order); the same recursion,
evaluated modulo p with coordinates lifted into a fixed period window, later
feeds the closed-form machinery.

``brute_force_exp_sum`` enumerates all q^n tuples by definition and is the
oracle every other evaluator is checked against.  It accumulates a length-p
count vector indexed by the trace of the function value, which is exact; the
returned value is the corresponding element of Z[zeta_p].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cyclo import CyclotomicInt
from .gf import FieldError

_CHUNK = 1 << 20  # max tuples per vectorized block


class ArityMismatchError(ValueError):
    pass


class BudgetExceededError(RuntimeError):
    def __init__(self, total, budget):
        super().__init__(f"enumeration of {total} tuples exceeds budget {budget}")
        self.total = total
        self.budget = budget


def lucas_binomial_mod_p(n, k, p):
    """binom(n, k) mod p as a product of digitwise binomials (Lucas)."""
    if k < 0 or k > n:
        return 0
    out = 1
    while k or n:
        nd, kd = n % p, k % p
        if kd > nd:
            return 0
        out = (out * math.comb(nd, kd)) % p
        n //= p
        k //= p
    return out


def period_for_degree(p, k):
    """Smallest power of p exceeding k: the Lucas period of binom(., k) mod p."""
    if k < 1:
        raise ValueError("degree must be >= 1")
    e = 1
    while p**e <= k:
        e += 1
    return p**e


@dataclass(frozen=True)
class SymmetricSpec:
    """A linear combination sum_j beta_j * e_{n, k_j} of elementary symmetric
    polynomials, as (degree, beta-index) pairs with strictly increasing
    degrees k_j >= 1 and nonzero coefficients."""

    terms: tuple

    def __post_init__(self):
        terms = tuple((int(k), int(b)) for k, b in self.terms)
        if not terms:
            raise ValueError("spec needs at least one term")
        degrees = [k for k, _ in terms]
        if any(k < 1 for k in degrees):
            raise ValueError("degrees must be >= 1")
        if sorted(set(degrees)) != degrees:
            raise ValueError("degrees must be strictly increasing")
        if any(b == 0 for _, b in terms):
            raise ValueError("coefficients must be nonzero")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def single(cls, k, beta=1):
        return cls(((k, beta),))

    @property
    def degrees(self):
        return tuple(k for k, _ in self.terms)

    @property
    def k_max(self):
        return self.terms[-1][0]

    def validate_for(self, field):
        for _, b in self.terms:
            if not 1 <= b < field.q:
                raise FieldError(f"coefficient index {b} outside [1, {field.q})")

    def spec_string(self):
        return ",".join(f"{k}" if b == 1 else f"{k}:{b}" for k, b in self.terms)


def parse_sym_spec(text, field=None):
    """Parse "k1:b1,k2:b2,..." (":b" optional, beta defaults to 1)."""
    terms = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if ":" in chunk:
            ks, _, bs = chunk.partition(":")
            terms.append((int(ks), int(bs)))
        else:
            terms.append((int(chunk), 1))
    terms.sort()
    spec = SymmetricSpec(tuple(terms))
    if field is not None:
        spec.validate_for(field)
    return spec


# ---------------------------------------------------------------------------
# evaluation


def esym_eval(field, n, k, xs):
    """e_{n,k} at a tuple, via the prefix recurrence on (e_0, ..., e_k).

    Appending a variable with value x updates e_t <- e_t + x*e_{t-1}; this is
    the [T^k] coefficient of prod_i (1 + x_i T) computed incrementally.
    Degrees k > n give 0.
    """
    xs = [field.element(x).index for x in xs]
    if len(xs) != n:
        raise ArityMismatchError(f"expected {n} variables, got {len(xs)}")
    if k < 0:
        raise ValueError("degree must be >= 0")
    kk = min(k, n)
    state = [1] + [0] * kk
    for i, x in enumerate(xs):
        if x:
            for t in range(min(i + 1, kk), 0, -1):
                state[t] = field.add_index(state[t], field.mul_index(x, state[t - 1]))
    return field.element(state[k] if k <= n else 0)


def lambda_eval(field, k, m, cache=None):
    """The multiplicity-vector recursion for e_{n,k}: value in GF(q) at a
    tuple containing m[i-1] copies of the i-th nonzero element.

    Zero whenever k < 0 or k exceeds sum(m).  Binomials are reduced mod p by
    Lucas' theorem before scaling.  ``cache`` may be shared across calls; it
    is keyed on (level, k, m-prefix).
    """
    m = tuple(int(v) for v in m)
    if len(m) != field.q - 1:
        raise ArityMismatchError(f"need {field.q - 1} multiplicities, got {len(m)}")
    if any(v < 0 for v in m):
        raise ValueError("multiplicities must be >= 0")
    if cache is None:
        cache = {}
    return field.element(_lambda_rec(field, len(m), k, m, cache))


def _lambda_rec(field, level, k, m, cache):
    # index arithmetic throughout; returns an element index
    if k < 0:
        return 0
    key = (level, k, m[:level])
    hit = cache.get(key)
    if hit is not None:
        return hit
    p = field.p
    if level == 1:
        # the first nonzero element is the unit, so a_1^k * binom(m_1, k)
        # reduces to the binomial residue embedded in the prime subfield
        val = lucas_binomial_mod_p(m[0], k, p)
    else:
        a = level  # the level-l recursion scales by powers of the l-th nonzero element
        ml = m[level - 1]
        val = 0
        apow = 1
        for j in range(0, min(ml, k) + 1):
            if j:
                apow = field.mul_index(apow, a)
            c = lucas_binomial_mod_p(ml, j, p)
            if c:
                inner = _lambda_rec(field, level - 1, k - j, m, cache)
                if inner:
                    val = field.add_index(val, field.mul_index(field.mul_index(c, apow), inner))
    cache[key] = val
    return val


def lambda_periodic(field, k, m, D=None, cache=None):
    """Periodic extension of the multiplicity recursion (mod p semantics).

    Coordinates may be any integers; nonpositive entries are lifted by the
    smallest positive multiple of the period D (so 0 becomes D), after which
    the plain recursion applies.  The result is invariant under adding any
    multiple of D to any single coordinate.
    """
    if D is None:
        D = period_for_degree(field.p, k)
    lifted = []
    for v in m:
        v = int(v)
        if v <= 0:
            v += ((-v) // D + 1) * D
        lifted.append(v)
    return lambda_eval(field, k, lifted, cache=cache)


def _spec_state_degree(spec, n):
    return min(spec.k_max, n)


def _combine_terms_index(field, spec, state, n):
    acc = 0
    for k, b in spec.terms:
        if k <= n and state[k]:
            acc = field.add_index(acc, field.mul_index(b, state[k]))
    return acc


def brute_force_exp_sum(field, spec, n, budget=10**8):
    """Exponential sum by definitional enumeration of all q^n tuples.

    Exact: accumulates a count per trace class and forms the corresponding
    element of Z[zeta_p].  Raises BudgetExceededError when q^n exceeds the
    enumeration budget.
    """
    spec.validate_for(field)
    total = field.q**n
    if total > budget:
        raise BudgetExceededError(total, budget)
    counts = [0] * field.p
    kk = _spec_state_degree(spec, n)
    init = (1,) + (0,) * kk
    try:
        tables = field.tables()
    except FieldError:
        tables = None
    if tables is None:
        _brute_scalar(field, spec, n, 0, init, counts)
    else:
        _brute_vector(field, spec, n, tables, counts)
    return CyclotomicInt(field.p, counts)


def _brute_scalar(field, spec, n, depth, state, counts):
    if depth == n:
        counts[field.trace_index(_combine_terms_index(field, spec, state, n))] += 1
        return
    kk = len(state) - 1
    hi = min(depth + 1, kk)
    for x in range(field.q):
        if x == 0:
            nxt = state
        else:
            s = list(state)
            for t in range(hi, 0, -1):
                s[t] = field.add_index(s[t], field.mul_index(x, s[t - 1]))
            nxt = tuple(s)
        _brute_scalar(field, spec, n, depth + 1, nxt, counts)


def _brute_vector(field, spec, n, tables, counts):
    add_t, mul_t, _, trace_t = tables
    q = field.q
    kk = _spec_state_degree(spec, n)

    # longest suffix that fits in one block
    m = 0
    while m < n and q ** (m + 1) <= _CHUNK:
        m += 1

    def eval_block(depth, state):
        states = np.array([state], dtype=np.int32)
        for pos in range(depth, n):
            cnt = states.shape[0]
            states = np.repeat(states, q, axis=0)
            xs = np.tile(np.arange(q, dtype=np.int32), cnt)
            for t in range(min(pos + 1, kk), 0, -1):
                states[:, t] = add_t[states[:, t], mul_t[xs, states[:, t - 1]]]
        acc = np.zeros(states.shape[0], dtype=np.int32)
        for k, b in spec.terms:
            if k <= n:
                acc = add_t[acc, mul_t[b, states[:, k]]]
        hist = np.bincount(trace_t[acc], minlength=field.p)
        for t in range(field.p):
            counts[t] += int(hist[t])

    def walk(depth, state):
        if n - depth <= m:
            eval_block(depth, state)
            return
        hi = min(depth + 1, kk)
        for x in range(q):
            if x == 0:
                nxt = state
            else:
                s = list(state)
                for t in range(hi, 0, -1):
                    s[t] = field.add_index(s[t], field.mul_index(x, s[t - 1]))
                nxt = tuple(s)
            walk(depth + 1, nxt)

    walk(0, (1,) + (0,) * kk)
