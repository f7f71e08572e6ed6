import pytest

from symsums import (
    DegreeMismatchError,
    FieldError,
    NotPrimeError,
    ReducibleModulusError,
    make_field,
    parse_field_spec,
)


def test_prime_field_default_modulus():
    f = make_field(2, 1)
    assert (f.p, f.r, f.q) == (2, 1, 2)
    assert f.modulus == (0, 1)  # the polynomial x


def test_gf4_explicit_modulus(F4):
    assert F4.modulus == (1, 1, 1)
    alpha = F4.element(2)
    assert (alpha * alpha).index == 3  # alpha^2 = alpha + 1


def test_gf9_default_modulus_is_lex_smallest():
    f = make_field(3, 2)
    # x^2, x^2+x, x^2+1 (reducible: x^2, x^2+x; x^2+1 has no root mod 3)
    assert f.modulus == (1, 0, 1)


def test_gf8_default_modulus():
    assert make_field(2, 3).modulus == (1, 1, 0, 1)


def test_not_prime_rejected():
    with pytest.raises(NotPrimeError):
        make_field(4, 1)
    with pytest.raises(NotPrimeError):
        make_field(1, 1)


def test_reducible_modulus_rejected():
    with pytest.raises(ReducibleModulusError):
        make_field(2, 2, [0, 0, 1])  # x^2
    with pytest.raises(ReducibleModulusError):
        make_field(2, 2, [1, 0, 1])  # (x+1)^2
    with pytest.raises(ReducibleModulusError):
        make_field(2, 2, [1, 1, 0])  # not monic of degree 2


def test_degree_mismatch():
    with pytest.raises(DegreeMismatchError):
        make_field(2, 3, [1, 1, 1])


def test_trace_values_gf4(F4):
    assert F4.trace(0) == 0
    assert F4.trace(1) == 0  # 1 + 1 = 0
    assert F4.trace(2) == 1  # alpha + alpha^2 = 1
    assert F4.trace(3) == 1


def test_trace_lands_in_prime_field(F8, F9):
    for f in (F8, F9):
        for i in range(f.q):
            assert 0 <= f.trace_index(i) < f.p


def test_trace_additivity_and_frobenius(F8, F9):
    for f in (F8, F9):
        for i in range(f.q):
            for j in range(f.q):
                x, y = f.element(i), f.element(j)
                assert (x + y).trace() == (x.trace() + y.trace()) % f.p
                # Frobenius is additive: (x+y)^p = x^p + y^p
                assert ((x + y) ** f.p) == (x**f.p + y**f.p)
            assert (f.element(i) ** f.p).trace() == f.element(i).trace()


def test_field_ops_examples(F3, F4):
    assert (F4.element(2) * F4.element(2)).index == 3
    for f in (F3, F4):
        for i in range(f.q):
            assert (f.element(i) + f.zero) == f.element(i)
    assert (F3.element(2) * F3.element(2)).index == 1


def test_enumeration_roundtrip(F9):
    seen = set()
    for i in range(F9.q):
        coeffs = F9.index_to_coeffs(i)
        assert F9.coeffs_to_index(coeffs) == i
        seen.add(coeffs)
    assert len(seen) == F9.q
    assert F9.index_to_coeffs(0) == (0, 0)
    assert F9.index_to_coeffs(1) == (1, 0)


def test_inverse_style_pow(F8):
    # x^(q-1) = 1 for nonzero x
    for i in range(1, F8.q):
        assert (F8.element(i) ** (F8.q - 1)).index == 1


def test_parse_field_spec_forms():
    assert parse_field_spec("4").q == 4
    assert parse_field_spec("2^2").q == 4
    f = parse_field_spec("2^3/1,0,1,1")
    assert f.modulus == (1, 0, 1, 1)
    assert parse_field_spec("9").p == 3
    with pytest.raises(FieldError):
        parse_field_spec("6")
    with pytest.raises(ReducibleModulusError):
        parse_field_spec("2^2/0,0,1")


def test_tables_match_scalar_ops(F9):
    add_t, mul_t, neg_t, trace_t = F9.tables()
    for i in range(F9.q):
        assert neg_t[i] == F9.neg_index(i)
        assert trace_t[i] == F9.trace_index(i)
        for j in range(F9.q):
            assert add_t[i, j] == F9.add_index(i, j)
            assert mul_t[i, j] == F9.mul_index(i, j)
