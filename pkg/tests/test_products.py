"""Unitization of algebras and the split-sequence correspondence."""

import pytest

from t3f.fields import (
    cartesian,
    check_axioms,
    find_isomorphism,
    make_f0,
    make_multivariate,
    make_tf,
    restrict_field,
)
from t3f.poly2 import MultiTruncPoly, TruncPoly
from t3f.products import (
    SplitSequence,
    gf2_algebra,
    ideal_algebra,
    is_q_algebra,
    nilpotent_inverse,
    projection_sequence,
    semidirect_check,
    truncated_nilpotent_algebra,
    unitize,
    zero_product_algebra,
)
from t3f.qstruct import ideal_chain, q_of


def P(bound, *exponents):
    return TruncPoly.from_exponents(bound, exponents)


ONE = make_f0(1)  # the 3-field {1}


def test_nilpotent_algebra_hash_closed_form():
    alg = truncated_nilpotent_algebra(ONE, 3)
    report = is_q_algebra(alg)
    assert report.axioms_hold and report.is_nilpotent and report.is_q_algebra
    assert report.closed_form_agrees
    t = P(3, 1)
    assert report.hash_map[t] == P(3, 1, 2)


def test_zero_product_algebra_hash_is_identity():
    alg = zero_product_algebra(ONE, 2)
    report = is_q_algebra(alg)
    assert report.is_q_algebra
    assert all(report.hash_map[a] == a for a in alg.elements)


def test_ideal_algebra_hash_is_inverse():
    big = make_f0(4)
    alg = ideal_algebra(big, ONE_IN := restrict_field(big, [big.unit]), ideal_chain(4)[0].members)
    report = is_q_algebra(alg)
    assert report.is_q_algebra
    for f in big.elements:
        q = TruncPoly(4, 1 ^ f.mask)
        assert report.hash_map[q] == TruncPoly(4, 1 ^ big.inv(f).mask)


def test_gf2_is_not_a_q_algebra():
    report = is_q_algebra(gf2_algebra(ONE))
    assert report.axioms_hold
    assert not report.is_q_algebra
    assert report.offending == 1


def test_q_of_field_is_an_algebra_over_it():
    # the action f1 . q_{1,f} = q_{f1, f1 f} is ambient multiplication
    for f in (make_tf(3), make_f0(4)):
        q = q_of(f)
        alg = ideal_algebra(f, f, q.elements)
        report = is_q_algebra(alg)
        assert report.axioms_hold
        assert report.is_q_algebra


def test_unitize_zero_product_dim2():
    uni = unitize(zero_product_algebra(ONE, 2))
    assert uni.is_3field
    assert uni.ternary.unit == (ONE.unit, 0)
    assert check_axioms(uni.ternary).passed
    target = cartesian(make_f0(2), make_f0(2))
    assert find_isomorphism(uni.ternary, target) is not None


def test_unitize_nilpotent_ideal_of_f03():
    members = ideal_chain(3)[0].members
    over_one = unitize(ideal_algebra(make_f0(3), restrict_field(make_f0(3), [make_f0(3).unit]), members))
    assert over_one.is_3field and over_one.ternary.size == 4

    sub = restrict_field(make_f0(3), [P(3, 0), P(3, 0, 2)])
    over_sub = unitize(ideal_algebra(make_f0(3), sub, members))
    assert over_sub.is_3field and over_sub.ternary.size == 8
    assert check_axioms(over_sub.ternary).passed


def test_unitize_non_q_algebra_is_flagged_not_a_field():
    uni = unitize(gf2_algebra(ONE))
    assert not uni.is_3field
    report = check_axioms(uni.ternary)
    assert not report.passed
    assert any("inverse" in c.name for c in report.failures())


def test_q_unit_equivalence_both_directions():
    algebras = [
        zero_product_algebra(ONE, 1),
        zero_product_algebra(ONE, 2),
        zero_product_algebra(ONE, 3),
        truncated_nilpotent_algebra(ONE, 2),
        truncated_nilpotent_algebra(ONE, 3),
        truncated_nilpotent_algebra(ONE, 4),
        gf2_algebra(ONE),
        ideal_algebra(make_f0(3), restrict_field(make_f0(3), [make_f0(3).unit]), ideal_chain(3)[0].members),
        ideal_algebra(make_f0(4), restrict_field(make_f0(4), [make_f0(4).unit]), ideal_chain(4)[1].members),
        ideal_algebra(make_tf(3), make_tf(3), frozenset({0, 4})),
    ]
    for alg in algebras:
        uni = unitize(alg)
        assert uni.algebra_report.is_q_algebra == uni.is_3field, alg.label
        if uni.is_3field:
            assert check_axioms(uni.ternary).passed, alg.label


def test_nilpotent_inverse_examples():
    uni = unitize(truncated_nilpotent_algebra(ONE, 3))
    one = ONE.unit
    t = P(3, 1)
    zero = TruncPoly.zero(3)
    assert nilpotent_inverse(uni, (one, t)) == (one, P(3, 1, 2))
    assert nilpotent_inverse(uni, (one, zero)) == (one, zero)


def test_nilpotent_inverse_field_part():
    sub = restrict_field(make_f0(3), [P(3, 0), P(3, 0, 2)])
    uni = unitize(ideal_algebra(make_f0(3), sub, ideal_chain(3)[0].members))
    zero = uni.algebra.zero
    for f in sub.elements:
        assert nilpotent_inverse(uni, (f, zero)) == (sub.inv(f), zero)


def test_semidirect_product_projection_with_unit_section():
    seq = projection_sequence(make_f0(3), make_tf(2))
    data = semidirect_check(seq)
    assert data.algebra_report.is_q_algebra
    assert data.iso_verified
    assert len(data.kernel_ideal) == 4
    # with the unit section the rebuilt pair (f1, q_{1,f0}) lands on (f0, f1);
    # the kernel consists of q_{1,(f0, quer(1))}
    f0_field = make_f0(3)
    tf2 = make_tf(2)
    amb = data.sequence.total.ambient
    for f1 in tf2.elements:
        for f0 in f0_field.elements:
            j = amb.add(amb.one, amb.from_field((f0, tf2.quer(tf2.unit))))
            assert j in data.kernel_ideal
            assert data.iso[(f1, j)] == (f0, f1)


def test_semidirect_diagonal_section_formula():
    # honest subfield instance: S = <1+t^2> inside F0(3), sigma diagonal
    f0 = make_f0(3)
    sub = restrict_field(f0, [P(3, 0), P(3, 0, 2)])
    seq = projection_sequence(f0, sub, section_map={g: g for g in sub.elements})
    data = semidirect_check(seq)
    assert data.iso_verified
    amb = data.sequence.total.ambient
    for f1 in sub.elements:
        for f0e in f0.elements:
            j = amb.add(amb.one, amb.from_field((f0e, sub.unit)))
            image = data.iso[(f1, j)]
            # Phi(f1 (+) q_{1,f0}) = (1 + f0 + f1, f1) computed in U(F0(3))
            expected_first = TruncPoly(3, 1 ^ f0e.mask ^ f1.mask)
            assert image == (expected_first, f1)


def test_semidirect_trivial_sequence():
    f = make_f0(4)
    seq = SplitSequence(f, f, {x: x for x in f.elements}, {x: x for x in f.elements})
    data = semidirect_check(seq)
    assert data.iso_verified
    assert len(data.kernel_ideal) == 1


def test_semidirect_multivariate_reduction():
    # F(2,2) = F(2) x| J2 with |J2| = 4, by killing the second variable
    total = make_multivariate([2, 2])
    quot = make_multivariate([2])

    def drop_second(p: MultiTruncPoly) -> MultiTruncPoly:
        out = MultiTruncPoly.zero((2,))
        for alpha in p.terms():
            if alpha[1] == 0:
                out = out.with_term((alpha[0],))
        return out

    def lift(p: MultiTruncPoly) -> MultiTruncPoly:
        out = MultiTruncPoly.zero((2, 2))
        for alpha in p.terms():
            out = out.with_term((alpha[0], 0))
        return out

    seq = SplitSequence(
        total,
        quot,
        {x: drop_second(x) for x in total.elements},
        {g: lift(g) for g in quot.elements},
    )
    data = semidirect_check(seq)
    assert data.iso_verified
    assert len(data.kernel_ideal) == 4
    rebuilt = unitize(data.algebra).ternary
    assert find_isomorphism(rebuilt, total) is not None


def test_unitize_then_split_recovers_algebra():
    alg = zero_product_algebra(ONE, 2)
    uni = unitize(alg)
    tern = uni.ternary
    seq = SplitSequence(
        tern,
        ONE,
        {x: x[0] for x in tern.elements},
        {ONE.unit: tern.unit},
    )
    data = semidirect_check(seq)
    assert data.iso_verified
    amb = tern.ambient
    j = {a: amb.add(amb.one, amb.from_field((ONE.unit, a))) for a in alg.elements}
    assert set(j.values()) == set(data.kernel_ideal)
    for a in alg.elements:
        for b in alg.elements:
            assert j[alg.add(a, b)] == amb.add(j[a], j[b])
            assert j[alg.mul(a, b)] == amb.mul(j[a], j[b])
            assert j[alg.action(ONE.unit, a)] == data.algebra.action(ONE.unit, j[a])


def test_module_action_identity():
    # q_{1,f} a = a + f a in the binary unitization
    big = make_f0(3)
    alg = ideal_algebra(big, big, q_of(big).elements)
    uni = unitize(alg)
    amb = uni.binary
    base = big.ambient
    for f in big.elements:
        q = base.add(base.one, f)  # q_{1,f} in U(F0(3))
        for a in alg.elements:
            left = amb.mul((q, alg.zero), (base.zero, a))
            expected = alg.add(a, alg.action(f, a))
            # (q,0)(0,a) = (0, q.a)
            assert left == (base.zero, expected)


def test_binary_unitization_ideal_is_qring():
    from t3f.qstruct import check_qring

    uni = unitize(zero_product_algebra(ONE, 2))
    q = q_of(uni.ternary)
    # the carrier is literally Q(F) (+) A: pairs (grade-0, algebra element)
    assert all(uni.binary.grade(x) == 0 for x in q.elements)
    assert len(q.elements) == len(ONE.elements) * len(uni.algebra.elements)
    assert check_qring(q).passed
