import math
import random

import pytest

from symsums import (
    CyclotomicInt,
    IntPolynomial,
    InsufficientTermsError,
    NoRecurrenceFoundError,
    SymmetricSpec,
    char_poly,
    exp_sum_closed,
    exp_sum_multinomial,
    lcm_char_poly,
    make_field,
    minimal_integer_recurrence,
    minimal_poly_algebraic,
    poly_divides,
    verify_recurrence,
)
from symsums.closed import PeriodicExponentTable, general_closed_coefficients
from symsums.symfun import period_for_degree

P = IntPolynomial
zeta = CyclotomicInt.zeta


def _product(factors):
    out = P([1])
    for f in factors:
        out = out * f
    return out


MU_43 = _product([P([-4, 1]), P([-2, 1]), P([4, 0, 1])])
MU_83 = _product([P([-4, 1]), P([4, 1]), P([16, 0, 1]), P([32, -8, 1]), P([8, -4, 1]), P([8, 4, 1])])
P_43_REFERENCE = _product(
    [
        P([-4, 1]),
        P([-2, 1]),
        P([-2, 1]),
        P([0, 1]),
        P([0, 1]),
        P([2, 1]),
        P([4, 0, 1]),
        P([10, -6, 1]),
        P([8, -4, 1]),
        P([2, -2, 1]),
        P([2, -2, 1]),
        P([10, -2, 1]),
        P([2, 2, 1]),
    ]
)


def test_char_poly_q2_d2():
    assert char_poly(2, 2) == P([0, -2, 1])  # (X-2)X


def test_char_poly_q2_d4():
    assert char_poly(2, 4) == _product([P([0, 1]), P([-2, 1]), P([2, -2, 1])])


def test_char_poly_f4_matches_reference_factorization():
    p43 = char_poly(4, 4)
    assert p43.degree == math.comb(4 + 4 - 2, 3) == 20
    assert p43 == P_43_REFERENCE


def test_char_poly_degree_formula():
    for q, D in ((2, 8), (3, 3), (4, 2), (5, 5)):
        assert char_poly(q, D).degree == math.comb(D + q - 2, q - 1)


def test_minimal_poly_examples():
    assert minimal_poly_algebraic(1, (0,)) == P([-2, 1])
    assert minimal_poly_algebraic(4, (1,)) == P([2, -2, 1])
    quartic = minimal_poly_algebraic(5, (1, 2, 3))
    alpha = 1 + zeta(5) + zeta(5, 2) + zeta(5, 3)
    assert quartic(alpha).is_zero()
    assert quartic.degree == 4
    assert quartic.coeffs[-1] == 1  # monic


def test_minimal_poly_is_galois_stable_root_product():
    poly = minimal_poly_algebraic(8, (1, 3))
    alpha = 1 + zeta(8) + zeta(8, 3)
    assert poly(alpha).is_zero()


def test_minimal_poly_irreducibility_sanity():
    # orbit products over a Galois extension are irreducible by construction;
    # sanity-check squarefreeness and the absence of rational roots
    from fractions import Fraction

    for D, ms in ((4, (1,)), (5, (1, 2, 3)), (8, (1, 3)), (9, (1,)), (12, (5, 7))):
        poly = minimal_poly_algebraic(D, ms)
        if poly.degree < 2:
            continue
        c0, lead = poly.coeffs[0], poly.coeffs[-1]
        candidates = {Fraction(0)}
        if c0:
            divs = [d for d in range(1, abs(c0) + 1) if c0 % d == 0]
            candidates = {Fraction(s * d, 1) for d in divs for s in (1, -1)}
        for root in candidates:
            value = sum(Fraction(c) * root**i for i, c in enumerate(poly.coeffs))
            assert value != 0, (D, ms, root)
        # squarefree: gcd(poly, poly') is constant
        deriv = IntPolynomial([i * c for i, c in enumerate(poly.coeffs)][1:])
        from symsums.recur import _poly_gcd

        assert _poly_gcd(poly, deriv).degree == 0


def test_lcm_char_poly_q2(F2):
    assert lcm_char_poly(F2, 1) == P([0, -2, 1])


def test_lcm_char_poly_f4(F4):
    chi = lcm_char_poly(F4, 3)
    # ten distinct irreducible factors of P_{4,3}, each once: degree 16
    assert chi.degree == 16
    assert poly_divides(MU_43, chi)
    assert poly_divides(chi, P_43_REFERENCE)


def test_poly_divides():
    assert poly_divides(MU_43, char_poly(4, 4))
    assert not poly_divides(P([-1, 1]), P([-2, 1]))
    assert poly_divides(P([-1, 1]), P([1, -2, 1]))
    assert not poly_divides(P([0, 2]), P([0, 0, 1]))  # 2X divides X^2 over Q but not over Z


def test_minimal_recurrence_geometric():
    assert minimal_integer_recurrence([5**n for n in range(10)], 4) == P([-5, 1])


def test_minimal_recurrence_fibonacci():
    seq = [0, 1]
    for _ in range(14):
        seq.append(seq[-1] + seq[-2])
    assert minimal_integer_recurrence(seq, 5) == P([-1, -1, 1])


def test_minimal_recurrence_f4(F4):
    cache = {}
    seq = [exp_sum_multinomial(F4, SymmetricSpec.single(3), n, cache).to_integer() for n in range(1, 21)]
    mu = minimal_integer_recurrence(seq, 9)
    assert mu == MU_43 == P([32, -24, 12, -6, 1])
    assert poly_divides(mu, char_poly(4, 4))
    assert poly_divides(mu, lcm_char_poly(F4, 3))


def test_minimal_recurrence_f4_from_zero_picks_up_x(F4):
    # the eigenvalue-0 coefficient is nonzero, so the n=0 term needs the X factor
    cache = {}
    seq = [exp_sum_multinomial(F4, SymmetricSpec.single(3), n, cache).to_integer() for n in range(0, 21)]
    mu = minimal_integer_recurrence(seq, 9)
    assert mu == MU_43 * P([0, 1])


def test_minimal_recurrence_f8(F8):
    cf = exp_sum_closed(F8, SymmetricSpec.single(3))
    seq = [v.to_cyclotomic().to_integer() for v in cf.eval_range(1, 40)]
    mu = minimal_integer_recurrence(seq, 15)
    assert mu == MU_83
    assert poly_divides(mu, char_poly(8, 4))
    assert poly_divides(mu, lcm_char_poly(F8, 3))


def test_verify_recurrence_f8(F8):
    cf = exp_sum_closed(F8, SymmetricSpec.single(3))
    seq = [v.to_cyclotomic().to_integer() for v in cf.eval_range(1, 30)]
    cert = verify_recurrence(seq, MU_83)
    assert cert.satisfied and cert.checked_range == 30


def test_minimal_recurrence_f3_e7(F3):
    cache = {}
    seq = [exp_sum_multinomial(F3, SymmetricSpec.single(7), n, cache).to_integer() for n in range(0, 101)]
    p37 = char_poly(3, 9)
    q37, rem = p37.divmod_exact(P([0, 1]))
    assert rem.is_zero()
    mu_tail = minimal_integer_recurrence(seq[1:], 45)
    assert mu_tail == q37 and mu_tail.degree == 44
    # from n = 0 the zero eigenvalue contributes, giving the full product
    assert minimal_integer_recurrence(seq, 45) == p37
    assert verify_recurrence(seq, p37).satisfied


def test_xi5_minimal_recurrence():
    tbl = PeriodicExponentTable.from_function(3, 5, 5, lambda a, b, c: (a + b + c) % 5)
    cf = general_closed_coefficients(tbl)
    seq = [cf.eval(n).to_cyclotomic() for n in range(0, 15)]
    quartic = P([61, 14, 6, -1, 1])
    quintic = P([-244, 5, -10, 10, -5, 1])
    mu = minimal_integer_recurrence(seq, 6)
    # the sum telescopes to (1+3 zeta_5)^n, so the true minimal annihilator is
    # the degree-4 minimal polynomial of 1+3 zeta_5; the degree-5 polynomial is
    # (X-4) times it and annihilates as well
    assert mu == quartic
    assert quintic == P([-4, 1]) * quartic
    assert verify_recurrence(seq, quintic).satisfied
    p_s = char_poly(4, 5)
    assert p_s.degree == 35
    assert poly_divides(quintic, p_s)
    assert poly_divides(mu, p_s)


def test_verify_recurrence_constant():
    cert = verify_recurrence([7] * 9, P([-1, 1]))
    assert cert.satisfied


def test_verify_recurrence_failure_detected():
    cert = verify_recurrence([1, 2, 4, 8, 17], P([-2, 1]))
    assert not cert.satisfied


def test_minimal_recurrence_zero_sequence_marker():
    assert minimal_integer_recurrence([0] * 12, 4) == P([1])


def test_minimal_recurrence_errors():
    with pytest.raises(InsufficientTermsError):
        minimal_integer_recurrence([1, 2, 3], 4)
    rng = random.Random(11)
    noise = [rng.randrange(-9, 10) for _ in range(20)]
    with pytest.raises(NoRecurrenceFoundError):
        minimal_integer_recurrence(noise, 3)


def test_minimal_recurrence_cyclotomic_channels():
    beta = 1 + 2 * zeta(4)
    seq = [beta**n for n in range(12)]
    mu = minimal_integer_recurrence(seq, 4)
    # minimal polynomial of 1 + 2i is X^2 - 2X + 5
    assert mu == P([5, -2, 1])


def test_degree_bound_corollary():
    # Pochhammer bound (D)_q / q! = C(D+q-1, q) is >= the exact degree C(D+q-2, q-1)
    for q, D in ((2, 2), (2, 4), (3, 9), (4, 4), (8, 4)):
        exact = math.comb(D + q - 2, q - 1)
        bound = math.comb(D + q - 1, q)
        assert exact <= bound
        assert char_poly(q, D).degree == exact


def test_char_poly_annihilates_sequences():
    grid = [((2, 1), (2, 1)), ((3, 1), (2, 1)), ((2, 2), (3, 1)), ((3, 1), (3, 2)), ((5, 1), (2, 3))]
    for (p, r), (k, beta) in grid:
        field = make_field(p, r)
        spec = SymmetricSpec.single(k, beta)
        D = period_for_degree(field.p, k)
        poly = char_poly(field.q, D)
        chi = lcm_char_poly(field, k)
        terms = poly.degree + 6
        # long prefixes via the closed evaluator; anchor its first values
        # against the multinomial evaluator before trusting the tail
        cf = exp_sum_closed(field, spec)
        seq = [v.to_cyclotomic() for v in cf.eval_range(0, terms)]
        cache = {}
        for n in range(0, 5):
            assert seq[n] == exp_sum_multinomial(field, spec, n, cache)
        assert verify_recurrence(seq, poly).satisfied
        assert verify_recurrence(seq, chi).satisfied
        assert poly_divides(chi, poly)
