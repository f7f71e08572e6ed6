import math
import random
from math import comb

import numpy as np

from symsums import (
    CycloRational,
    CyclotomicInt,
    PeriodicExponentTable,
    SymmetricSpec,
    closed_form_eval,
    exp_sum_closed,
    exp_sum_multinomial,
    general_closed_coefficients,
    make_field,
    rt_split_sum,
    twisted_binomial_closed,
)
from symsums.closed import fibonacci_mod_table, pisano_period, twisted_binomial_direct
from symsums.symfun import period_for_degree

zeta = CyclotomicInt.zeta


# ---------------------------------------------------------------------------
# split sums


def test_rt_split_n_zero():
    assert rt_split_sum(0, 0, 5).to_integer() == 1
    for t in range(1, 5):
        assert rt_split_sum(0, t, 5).is_zero()


def test_rt_split_direct_binomials():
    assert rt_split_sum(3, 1, 2).to_integer() == comb(3, 1) + comb(3, 3)
    assert sum(rt_split_sum(6, t, 3).to_integer() for t in range(3)) == 2**6


def test_rt_split_against_congruence_classes():
    roots = {1: CyclotomicInt.from_int(1), 3: zeta(3), 4: zeta(4)}
    for D in range(2, 7):
        for order, a in roots.items():
            for n in range(0, 13):
                L = math.lcm(D, order)
                for t in range(D):
                    direct = CyclotomicInt(L)
                    for j in range(t, n + 1, D):
                        direct = direct + comb(n, j) * a**j
                    assert rt_split_sum(n, t, D, a) == CycloRational(direct)


# ---------------------------------------------------------------------------
# twisted binomial sums (arity 1)


def test_twisted_trivial_exponent():
    tbl = PeriodicExponentTable(1, 4, 1, [0, 0, 0, 0])
    for n in range(10):
        assert twisted_binomial_closed(n, tbl).to_integer() == 2**n


def test_twisted_nega_hadamard_matches_direct():
    for k in (2, 3):
        D = period_for_degree(2, k)
        tbl = PeriodicExponentTable(1, D, 2, [comb(t, k) % 2 for t in range(D)])
        for n in range(13):
            assert twisted_binomial_closed(n, tbl, zeta(4)) == CycloRational(twisted_binomial_direct(n, tbl, zeta(4)))


def test_twisted_pisano_matches_direct():
    assert pisano_period(3) == 8
    assert pisano_period(2) == 3
    tbl = fibonacci_mod_table(3)
    for n in range(17):
        assert twisted_binomial_closed(n, tbl) == CycloRational(twisted_binomial_direct(n, tbl))


# ---------------------------------------------------------------------------
# the general closed form


def test_general_r1_trivial_table():
    # F = 0 recovers sum binom(n, l) = 2^n: c_0 = 1 and all other terms vanish
    tbl = PeriodicExponentTable(1, 6, 1, [0] * 6)
    cf = general_closed_coefficients(tbl)
    for term in cf.terms:
        expected = 1 if term.multiset == (0,) else 0
        assert CycloRational(term.num, term.den) == CycloRational(CyclotomicInt.from_int(expected))
    assert cf.eval(9).to_integer() == 2**9


def _direct_nested_sum(table, n):
    D, r, M = table.period, table.arity, table.xi_order
    L = math.lcm(D, M)
    acc = CyclotomicInt(L)

    def rec(prefix, remaining, coeff):
        nonlocal acc
        if len(prefix) == r:
            cell = tuple(v % D for v in prefix)
            acc = acc + coeff * zeta(L, (int(table.values[cell]) * (L // M)) % L)
            return
        for v in range(remaining + 1):
            rec(prefix + (v,), remaining - v, coeff * comb(remaining, v))

    rec((), n, 1)
    return acc


def test_general_closed_equals_direct_random_tables():
    rng = random.Random(42)
    cases = [(1, 5, 4), (2, 3, 2), (2, 4, 4), (3, 3, 3), (3, 5, 5), (2, 8, 2)]
    for r, D, M in cases:
        vals = [rng.randrange(M) for _ in range(D**r)]
        tbl = PeriodicExponentTable(r, D, M, np.array(vals).reshape((D,) * r))
        cf = general_closed_coefficients(tbl)
        for n in range(0, 11):
            assert cf.eval(n) == CycloRational(_direct_nested_sum(tbl, n)), (r, D, M, n)


def test_closed_form_n0_is_table_origin():
    rng = random.Random(1)
    vals = [rng.randrange(3) for _ in range(25)]
    tbl = PeriodicExponentTable(2, 5, 3, np.array(vals).reshape(5, 5))
    cf = general_closed_coefficients(tbl)
    expected = zeta(15, vals[0] * 5)  # xi_3^F(0,0) at the lcm order
    assert cf.eval(0) == CycloRational(expected)


def test_eigenvalue_symmetry():
    tbl = PeriodicExponentTable(2, 4, 2, np.zeros((4, 4), dtype=int))
    cf = general_closed_coefficients(tbl)
    for term in cf.terms:
        assert tuple(sorted(term.multiset, reverse=True)) == term.multiset
        rebuilt = CyclotomicInt(4, [0] * 4)
        acc = [0] * 4
        acc[0] += 1
        for j in term.multiset:
            acc[(-j) % 4] += 1
        assert term.eigenvalue == CyclotomicInt(4, acc)


def test_xi5_triple_sum_closed():
    tbl = PeriodicExponentTable.from_function(3, 5, 5, lambda a, b, c: (a + b + c) % 5)
    cf = general_closed_coefficients(tbl)
    beta = 1 + 3 * zeta(5)
    for n in range(0, 11):
        direct = _direct_nested_sum(tbl, n)
        assert direct == beta**n  # the sum telescopes by the multinomial theorem
        assert cf.eval(n) == CycloRational(direct)


# ---------------------------------------------------------------------------
# exponential sums over GF(q)


def test_exp_sum_closed_f4_values(F4):
    cf = exp_sum_closed(F4, SymmetricSpec.single(3))
    assert cf.period == 4 and cf.arity == 3
    values = {3: 28, 4: 64, 5: 304, 6: 1216}
    for n, expected in values.items():
        assert cf.eval(n).to_integer() == expected
    assert cf.eval(0).to_integer() == 1


def test_exp_sum_closed_f4_paper_formula(F4):
    # 4^(n-1) + 3*2^(n-1) - (3/4)(2i)^n - (3/4)(-2i)^n  for n >= 1
    cf = exp_sum_closed(F4, SymmetricSpec.single(3))
    for n in range(1, 13):
        formula = (
            CycloRational(CyclotomicInt.from_int(4 ** (n - 1) + 3 * 2 ** (n - 1)))
            - CycloRational((2 * zeta(4)) ** n * 3, 4)
            - CycloRational((-2 * zeta(4)) ** n * 3, 4)
        )
        assert cf.eval(n) == formula


def test_exp_sum_closed_f3_zero(F3):
    cf = exp_sum_closed(F3, SymmetricSpec.single(3))
    assert cf.eval(5).to_cyclotomic().is_zero()


def test_exp_sum_closed_gf2_reduces_to_binary_closed_form(F2):
    # the binary case: coefficients match (1/2^r) sum_t (-1)^(sum binom(t,k_i)) zeta^(-jt)
    for terms in [((2, 1),), ((3, 1),), ((1, 1), (4, 1)), ((2, 1), (5, 1)), ((8, 1),)]:
        spec = SymmetricSpec(terms)
        D = period_for_degree(2, spec.k_max)
        cf = exp_sum_closed(F2, spec)
        by_multiset = {t.multiset: t for t in cf.terms}
        for j in range(D):
            acc = CyclotomicInt(D)
            for t in range(D):
                sign = sum(comb(t, k) for k, _ in spec.terms) % 2
                acc = acc + (-1 if sign else 1) * zeta(D, (-j * t) % D)
            term = by_multiset[((D - j) % D,)]
            assert CycloRational(term.num, term.den) == CycloRational(acc, D)
            assert term.eigenvalue == 1 + zeta(D, j)


def test_exp_sum_closed_small_grid_agreement():
    rng = random.Random(99)
    for q, r in ((2, 1), (3, 1), (4, 2), (5, 1)):
        field = make_field(*((2, 2) if q == 4 else (q, r)))
        for _ in range(4):
            n = rng.randrange(1, 6)
            ks = sorted(rng.sample(range(1, n + 1), k=min(2, n)))
            spec = SymmetricSpec(tuple((k, rng.randrange(1, field.q)) for k in ks))
            cf = exp_sum_closed(field, spec)
            for m in range(0, n + 2):
                assert cf.eval(m) == CycloRational(exp_sum_multinomial(field, spec, m))


def test_group_path_equals_direct_path(F4, F8, F9):
    from symsums._grouptransform import group_closed_coefficients

    cases = [(F4, SymmetricSpec.single(3)), (F4, SymmetricSpec(((1, 2), (2, 3)))), (F8, SymmetricSpec.single(3)), (F9, SymmetricSpec.single(2))]
    for field, spec in cases:
        D = period_for_degree(field.p, spec.k_max)
        direct = exp_sum_closed(field, spec)  # small: direct table path
        groups, n_h = group_closed_coefficients(field, spec, D)
        den = D ** (field.q - 1)
        assert den % n_h == 0
        scale = den // n_h
        L = math.lcm(D, field.p)
        for term in direct.terms:
            vec = groups.get(term.multiset)
            num = CyclotomicInt(L, [int(v) * scale for v in vec]) if vec is not None else CyclotomicInt(L)
            assert num == term.num.lift(L), (field.q, spec.terms, term.multiset)


def test_group_path_large_case_agrees(F8):
    # D = 8 pushes the table to 8^7 entries: exercised through the group path
    spec = SymmetricSpec.single(4)
    cf = exp_sum_closed(F8, spec)
    for n in range(0, 7):
        assert cf.eval(n) == CycloRational(exp_sum_multinomial(F8, spec, n))


def test_group_path_equals_direct_odd_prime_square_period():
    # q = 5 with top degree 5: period 25 = p^2, table 25^4; the direct
    # transform still fits, so every one of the 20475 coefficients can be
    # compared against the image-group construction
    from symsums._grouptransform import group_closed_coefficients
    from symsums.closed import _exp_table_values

    field = make_field(5)
    spec = SymmetricSpec(((2, 3), (5, 4)))
    D = period_for_degree(5, spec.k_max)
    table = PeriodicExponentTable(field.q - 1, D, field.p, _exp_table_values(field, spec, D))
    direct = general_closed_coefficients(table)
    groups, n_h = group_closed_coefficients(field, spec, D)
    den = D ** (field.q - 1)
    assert den % n_h == 0
    scale = den // n_h
    L = math.lcm(D, field.p)
    for term in direct.terms:
        vec = groups.get(term.multiset)
        num = CyclotomicInt(L, [int(v) * scale for v in vec]) if vec is not None else CyclotomicInt(L)
        assert num == term.num.lift(L), term.multiset


def test_eval_range_matches_eval(F4):
    cf = exp_sum_closed(F4, SymmetricSpec.single(3))
    values = cf.eval_range(0, 10)
    for n, v in enumerate(values):
        assert v == cf.eval(n)


def test_closed_form_json(F4):
    cf = exp_sum_closed(F4, SymmetricSpec.single(2))
    data = cf.to_json()
    assert data["D"] == cf.period and data["r"] == 3
    assert len(data["terms"]) == len(cf.terms)
    term = data["terms"][0]
    assert set(term) == {"multiset", "eigenvalue", "coeff_num", "coeff_den"}


def test_closed_form_eval_function(F4):
    cf = exp_sum_closed(F4, SymmetricSpec.single(3))
    assert closed_form_eval(cf, 4).to_integer() == 64
