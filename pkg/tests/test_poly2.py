"""Arithmetic in GF(2)[t]/t^n and the multivariate variant."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from t3f.poly2 import (
    BoundMismatchError,
    MultiTruncPoly,
    NotInvertibleError,
    SubstitutionError,
    TruncPoly,
    all_trunc_polys,
)


def P(bound, *exponents):
    return TruncPoly.from_exponents(bound, exponents)


def naive_mul(a: TruncPoly, b: TruncPoly) -> TruncPoly:
    """Independent oracle: schoolbook convolution over GF(2)."""
    coeffs = [0] * a.bound
    for i in range(a.bound):
        for j in range(b.bound):
            if i + j < a.bound and (a.mask >> i & 1) and (b.mask >> j & 1):
                coeffs[i + j] ^= 1
    return TruncPoly.from_exponents(a.bound, [i for i, c in enumerate(coeffs) if c])


def naive_pow(a: TruncPoly, k: int) -> TruncPoly:
    out = TruncPoly.one(a.bound)
    for _ in range(k):
        out = naive_mul(out, a)
    return out


def test_mul_cross_terms_cancel():
    # (1+t)^2 over GF(2): the 2t term vanishes
    assert P(3, 0, 1) * P(3, 0, 1) == P(3, 0, 2)


def test_mul_identity():
    for p in all_trunc_polys(4):
        assert TruncPoly.one(4) * p == p


def test_mul_geometric_telescope():
    assert P(4, 0, 1) * P(4, 0, 1, 2, 3) == TruncPoly.one(4)


def test_mul_matches_naive_oracle_exhaustive_small():
    for a in all_trunc_polys(5):
        for b in all_trunc_polys(5):
            assert a * b == naive_mul(a, b)


def test_mul_bound_mismatch():
    with pytest.raises(BoundMismatchError):
        P(3, 1) * P(4, 1)


def test_pow_squaring_example():
    assert P(5, 0, 1) ** 4 == P(5, 0, 4)


def test_pow_zero_exponent():
    for p in all_trunc_polys(4):
        assert p ** 0 == TruncPoly.one(4)


def test_pow_two_paths_agree_exhaustive():
    for bound in range(2, 7):
        for a in all_trunc_polys(bound):
            for k in range(65):
                assert a._pow_squaring(k) == a._pow_frobenius_split(k)


def test_pow_matches_naive_oracle_sampled():
    for a in all_trunc_polys(5):
        for k in (0, 1, 2, 3, 7, 12, 31):
            assert a ** k == naive_pow(a, k)


@given(st.integers(0, 2 ** 16 - 1), st.integers(0, 2 ** 16 - 1), st.integers(0, 64))
@settings(max_examples=200)
def test_pow_two_paths_agree_random_n16(mask, other_mask, k):
    a = TruncPoly(16, mask)
    assert a._pow_squaring(k) == a._pow_frobenius_split(k)
    b = TruncPoly(16, other_mask)
    assert a * b == b * a


@given(st.integers(0, 2 ** 16 - 1), st.integers(0, 2 ** 16 - 1), st.integers(0, 2 ** 16 - 1))
@settings(max_examples=200)
def test_ring_laws_random_n16(x, y, z):
    a, b, c = TruncPoly(16, x), TruncPoly(16, y), TruncPoly(16, z)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)


def test_freshmans_dream_exhaustive_n6():
    for bound in range(1, 7):
        for a in all_trunc_polys(bound):
            for b in all_trunc_polys(bound):
                assert (a + b) ** 2 == a ** 2 + b ** 2


@given(st.integers(0, 2 ** 10 - 1), st.integers(0, 2 ** 10 - 1))
@settings(max_examples=300)
def test_freshmans_dream_random_n10(x, y):
    a, b = TruncPoly(10, x), TruncPoly(10, y)
    assert (a + b) ** 2 == a ** 2 + b ** 2


def test_compose_char2_cancellation():
    s = P(4, 1, 2)
    assert s.compose(s) == P(4, 1)


def test_compose_identity_substitution():
    t = TruncPoly.t(5)
    for p in all_trunc_polys(5):
        assert p.compose(t) == p


def test_compose_reflection_has_order_two():
    s5 = P(5, 1, 2, 3, 4)
    assert s5.compose(s5) == P(5, 1)


def test_compose_rejects_constant_term():
    with pytest.raises(SubstitutionError):
        P(4, 0, 1).compose(P(4, 0))


def test_compose_associativity_exhaustive_n5():
    for bound in range(2, 6):
        zero_const = [q for q in all_trunc_polys(bound) if not q.mask & 1]
        for p in all_trunc_polys(bound):
            for q in zero_const:
                for r in zero_const:
                    assert p.compose(q).compose(r) == p.compose(q.compose(r))


def test_inverse_examples():
    assert P(4, 0, 1).inverse() == P(4, 0, 1, 2, 3)
    assert TruncPoly.one(6).inverse() == TruncPoly.one(6)
    assert P(5, 0, 2).inverse() == P(5, 0, 2, 4)


def test_inverse_multiplies_back_to_one():
    for bound in range(1, 8):
        for a in all_trunc_polys(bound, constant_bit=1):
            assert a * a.inverse() == TruncPoly.one(bound)


def test_inverse_rejects_nonunit():
    with pytest.raises(NotInvertibleError):
        P(4, 1).inverse()


def test_bound_cap():
    with pytest.raises(ValueError):
        TruncPoly(65, 0)


def test_rendering():
    assert str(P(5, 0, 2, 4)) == "1 + t^2 + t^4"
    assert str(P(3, 1)) == "t"
    assert str(TruncPoly.zero(3)) == "0"
    assert P(5, 0, 2, 4).bitstring() == "10101"


def M(bounds, *alphas):
    p = MultiTruncPoly.zero(bounds)
    for alpha in alphas:
        p = p.with_term(alpha)
    return p


def test_multi_mul_example():
    a = M((2, 2), (0, 0), (1, 0))  # 1 + t1
    b = M((2, 2), (0, 0), (0, 1))  # 1 + t2
    assert a * b == M((2, 2), (0, 0), (1, 0), (0, 1), (1, 1))


def test_multi_mul_identity():
    one = MultiTruncPoly.one((2, 3))
    for mask in range(1 << 6):
        p = MultiTruncPoly((2, 3), mask)
        assert one * p == p


def test_multi_inverse_example():
    a = M((2, 2), (0, 0), (1, 0))  # 1 + t1, and t1^2 = 0
    assert a.inverse() == a
    assert a * a == MultiTruncPoly.one((2, 2))


def test_multi_inverse_all_units():
    bounds = (2, 2, 2)
    for mask in range(1 << 8):
        p = MultiTruncPoly(bounds, mask)
        if p.constant_term():
            assert p * p.inverse() == MultiTruncPoly.one(bounds)


def test_multi_errors():
    with pytest.raises(BoundMismatchError):
        MultiTruncPoly.one((2, 2)) * MultiTruncPoly.one((2, 3))
    with pytest.raises(NotInvertibleError):
        MultiTruncPoly.var((2, 2), 0).inverse()


def test_multi_ring_laws_exhaustive_tiny():
    polys = [MultiTruncPoly((2, 2), m) for m in range(16)]
    for a in polys:
        for b in polys:
            assert a * b == b * a
            for c in polys:
                assert (a * b) * c == a * (b * c)
                assert a * (b + c) == a * b + a * c


def test_multi_rendering():
    assert str(M((3, 2), (0, 0), (2, 1))) == "1 + t1^2 t2"
