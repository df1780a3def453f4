"""Rings of pairs, reconstruction, and the ideal chain of F0(n)."""

import pytest

from t3f.fields import (
    cartesian,
    check_axioms,
    find_isomorphism,
    is_field_morphism,
    make_f0,
    make_tf,
)
from t3f.poly2 import TruncPoly
from t3f.qstruct import (
    check_qring,
    field_from_qring,
    frobenius_kernel,
    ideal_chain,
    ideals,
    induced_field_map,
    is_ring_morphism,
    lift_field_morphism,
    q_of,
    qring_from_tables,
    quotient,
    ring_morphisms,
    subfield_from_ideal,
)


def P(bound, *exponents):
    return TruncPoly.from_exponents(bound, exponents)


def test_q_of_tf3_is_even_residues():
    q = q_of(make_tf(3))
    assert q.elements == [0, 2, 4, 6]
    assert q.tau == 2


def test_q_of_tf3_hash_matches_quotient_formula():
    # q# = q/(q-1), inverses taken mod 8; independent of the construction path
    q = q_of(make_tf(3))
    for x in q.elements:
        expected = x * pow(x - 1, -1, 8) % 8
        assert q.hash_(x) == expected
    assert q.hash_(2) == 2
    assert (2 * 2) % 8 == (2 + 2) % 8
    assert q.hash_(0) == 0


def test_q_of_f03_tau_is_zero():
    # in the characteristic-2 ambient, q_{1,1} is the zero translation
    q = q_of(make_f0(3))
    assert q.tau == TruncPoly.zero(3)
    assert check_qring(q).passed


def test_check_qring_tf4_passes_but_tau_not_unique():
    report = check_qring(q_of(make_tf(4)))
    assert report.passed
    flagged = [c for c in report.checks if c.status == "flagged"]
    assert any("2-unit uniqueness" in c.name for c in flagged)
    # the second 2-unit is 2 + 8
    assert "10" in flagged[0].witness


def test_check_qring_passes_on_small_fields():
    for f in (make_tf(2), make_tf(3), make_f0(2), make_f0(4)):
        assert check_qring(q_of(f)).passed


def test_zero_ring_reported_degenerate_and_fails():
    q = qring_from_tables("zero ring", ["0"], [["0"]], [["0"]], "0")
    report = check_qring(q)
    assert any("degenerate" in c.name for c in report.checks)
    # the zero ring is (vacuously) unital, so it is not a Q-ring
    assert not report.passed


def test_reconstruction_tf3():
    f = make_tf(3)
    rebuilt = field_from_qring(q_of(f))
    assert check_axioms(rebuilt).passed
    iso = find_isomorphism(f, rebuilt)
    assert iso is not None


def test_reconstruction_canonical_witness():
    for f in (make_tf(2), make_tf(3), make_f0(3), make_f0(4)):
        q = q_of(f)
        rebuilt = field_from_qring(q)
        phi = dict(q.from_field_elem)
        assert is_field_morphism(f, rebuilt, phi)
        assert len(set(phi.values())) == f.size


def test_zero_product_ring_reconstruction():
    # two-element ring with zero product; tau = 0 gives r*s = r+s
    els = ["0", "e"]
    add = [["0", "e"], ["e", "0"]]
    mul = [["0", "0"], ["0", "0"]]
    q0 = qring_from_tables("R0", els, add, mul, "0")
    assert check_qring(q0).passed
    f0 = field_from_qring(q0)
    assert f0.mul("e", "0") == "e"  # r*s = r+s+tau with tau = 0
    assert check_axioms(f0).passed
    assert find_isomorphism(f0, make_f0(2)) is not None


def test_zero_product_ring_tau_shift_is_not_an_isomorphism():
    # the claimed shift r -> r+tau is multiplicative but not ternary-additive
    # for tau != 0: the two reconstructions have characteristics 1 and 2 and
    # cannot be isomorphic at all
    from t3f.fields import characteristic

    els = ["0", "e"]
    add = [["0", "e"], ["e", "0"]]
    mul = [["0", "0"], ["0", "0"]]
    q0 = qring_from_tables("R0", els, add, mul, "0")
    qe = qring_from_tables("Re", els, add, mul, "e")
    f0, fe = field_from_qring(q0), field_from_qring(qe)
    assert check_axioms(fe).passed  # F(R)_tau is a 3-field either way
    shift = {"0": "e", "e": "0"}  # r -> r + tau
    multiplicative = all(
        shift[f0.mul(a, b)] == fe.mul(shift[a], shift[b]) for a in els for b in els
    )
    assert multiplicative
    assert not is_field_morphism(f0, fe, shift)
    assert characteristic(f0) == 1 and characteristic(fe) == 2
    assert find_isomorphism(f0, fe) is None
    # F(R)_e is the prime field of characteristic 2
    assert find_isomorphism(fe, make_tf(2)) is not None


def test_ideal_chain_n4():
    result = ideals(4)
    assert [i.k for i in result["chain"]] == [1, 2, 3]
    assert result["intersection_law"] and result["sum_law"]
    assert result["exhaustive_match"]


def test_ideal_chain_n2():
    result = ideals(2)
    chain = result["chain"]
    assert len(chain) == 1
    assert chain[0].members == frozenset({TruncPoly.zero(2), P(2, 1)})
    assert result["exhaustive_match"]


def test_ideal_exhaustive_match_up_to_5():
    for n in range(2, 6):
        assert ideals(n)["exhaustive_match"], n


def test_quotient_f05_mod_i3():
    data = quotient(5, 3)
    assert data.quotient.label == "F0(3)"
    assert data.is_morphism
    assert data.kernel_matches_chain


def test_quotient_identity_edge():
    data = quotient(4, 4)
    assert data.is_morphism and data.kernel_matches_chain
    assert all(k == v for k, v in data.morphism.items())


def test_quotient_all_k_up_to_8():
    for n in range(2, 9):
        for k in range(1, n + 1):
            data = quotient(n, k)
            assert data.is_morphism and data.kernel_matches_chain, (n, k)


def test_frobenius_kernel_is_ceil_half_chain():
    for n in range(2, 11):
        k = (n + 1) // 2
        assert frobenius_kernel(n) == ideal_chain(n)[k - 1].members, n


def test_frobenius_kernel_zero_product():
    # the product vanishes on the kernel: (1+P1)(1+P2) = 1+P1+P2
    for n in range(2, 9):
        f = make_f0(n)
        kernel = [TruncPoly(n, 1 ^ q.mask) for q in frobenius_kernel(n)]
        for a in kernel:
            for b in kernel:
                assert f.mul(a, b) == f.tadd(a, b, f.unit)


def test_subfield_from_ideal_i2_in_f04():
    f = make_f0(4)
    sub = subfield_from_ideal(f, ideal_chain(4)[1].members)
    assert sub.elements == sorted(
        [P(4, 0), P(4, 0, 2), P(4, 0, 3), P(4, 0, 2, 3)]
    )
    assert check_axioms(sub).passed


def test_subfield_from_ideal_top_and_trivial():
    f = make_f0(5)
    top = subfield_from_ideal(f, ideal_chain(5)[3].members)
    assert top.size == 2
    trivial = subfield_from_ideal(f, frozenset({TruncPoly.zero(5)}))
    assert trivial.elements == [f.unit]


def test_subfield_from_ideal_rejects_non_ideal():
    f = make_f0(4)
    with pytest.raises(ValueError):
        subfield_from_ideal(f, frozenset({TruncPoly.zero(4), P(4, 1)}))


def test_field_morphisms_lift_to_ring_morphisms():
    from t3f.fields import find_morphisms

    f1, f2 = make_f0(3), make_f0(2)
    q1, q2 = q_of(f1), q_of(f2)
    morphisms = find_morphisms(f1, f2)
    assert morphisms
    for phi in morphisms:
        psi = lift_field_morphism(q1, q2, phi)
        assert is_ring_morphism(q1, q2, psi)


def test_tau_preserving_ring_morphisms_induce_field_morphisms():
    f1, f2 = make_f0(3), make_f0(3)
    q1, q2 = q_of(f1), q_of(f2)
    psis = ring_morphisms(q1, q2, tau_preserving=True)
    assert psis
    for psi in psis:
        phi = induced_field_map(q1, q2, psi)
        assert is_field_morphism(f1, f2, phi)


def test_non_tau_preserving_morphism_can_fail_to_induce():
    # the zero ring morphism into Q(TF(3)) does not respect the 2-unit and
    # its induced carrier map is not a field morphism
    f1, f2 = make_tf(2), make_tf(3)
    q1, q2 = q_of(f1), q_of(f2)
    zero_map = {x: q2.zero for x in q1.elements}
    assert is_ring_morphism(q1, q2, zero_map)
    assert zero_map[q1.tau] != q2.tau
    phi = induced_field_map(q1, q2, zero_map)
    assert not is_field_morphism(f1, f2, phi)


def test_sets_do_not_recombine_into_full_sum():
    # [Q(F1) (+) Q(F2)] union [F1 x F2] is smaller than U(F1) (+) U(F2)
    tf2 = make_tf(2)
    prod = cartesian(tf2, tf2)
    q_part = {(a, b) for a in (0, 2) for b in (0, 2)}
    f_part = {(a, b) for a in (1, 3) for b in (1, 3)}
    graded_union = q_part | f_part
    full_sum = {(a, b) for a in range(4) for b in range(4)}
    assert graded_union != full_sum
    assert len(graded_union) == 8 and len(full_sum) == 16
    amb = prod.ambient
    assert set(amb.elements) == graded_union
