"""Subfield lattice, exponent semigroups, and the binomial identities."""

import pytest

from t3f.fields import find_isomorphism, make_f0
from t3f.poly2 import TruncPoly, all_trunc_polys
from t3f.subfields import (
    binomial_power_expansion,
    binomial_subset_criterion,
    classification_crosscheck,
    digit_subset_sums,
    exhaustive_subfields,
    exponents,
    generated_subfield,
    generated_subfield_via_subring,
    is_power_of_binomial,
    min_nilpotency_degree,
    semigroup_subfield,
    squares_subfield,
    subfield_lattice,
    subsemigroups,
)


def P(bound, *exps):
    return TruncPoly.from_exponents(bound, exps)


def members(semis):
    return [sorted(s.members) for s in semis]


def test_generated_subfield_t2_in_f05():
    sub = generated_subfield(5, [P(5, 0, 2)])
    assert sub.carrier == tuple(
        sorted([P(5, 0), P(5, 0, 2), P(5, 0, 4), P(5, 0, 2, 4)])
    )
    assert find_isomorphism(sub.as_field(), make_f0(3)) is not None


def test_generated_subfield_trivial():
    sub = generated_subfield(4, [])
    assert sub.carrier == (P(4, 0),)


def test_generated_subfield_perturbed_generator():
    # 1 + t^2(1+t) generates a field isomorphic to <1+t^2>
    a = generated_subfield(5, [P(5, 0, 2, 3)])
    b = generated_subfield(5, [P(5, 0, 2)])
    assert a.size == b.size == 4
    assert find_isomorphism(a.as_field(), b.as_field()) is not None
    assert min_nilpotency_degree(5, P(5, 0, 2, 3)) == 3


def test_generated_subfield_matches_subring_path():
    for n in range(2, 7):
        for g in all_trunc_polys(n, constant_bit=1):
            assert generated_subfield(n, [g]).carrier == generated_subfield_via_subring(
                n, [g]
            ), (n, g)


def test_min_nilpotency_degree_examples():
    assert min_nilpotency_degree(5, P(5, 0, 1)) == 5
    assert min_nilpotency_degree(5, P(5, 0, 2, 3)) == 3
    assert min_nilpotency_degree(5, P(5, 0, 4)) == 2
    assert min_nilpotency_degree(7, P(7, 0)) == 1


def test_generated_size_matches_nilpotency_degree():
    for n in range(2, 8):
        for g in all_trunc_polys(n, constant_bit=1):
            m = min_nilpotency_degree(n, g)
            assert generated_subfield(n, [g]).size == 1 << (m - 1)


def test_subsemigroups_small():
    assert members(subsemigroups(2)) == [[], [1]]
    assert members(subsemigroups(3)) == [[], [2], [1, 2]]


def test_subsemigroups_n5_examples():
    sets = {frozenset(m) for m in members(subsemigroups(5))}
    assert frozenset({2, 4}) in sets
    assert frozenset({3, 4}) in sets
    assert frozenset({1, 2, 3, 4}) in sets
    assert frozenset({1}) not in sets  # 1+1 = 2 would be required


def test_canonical_generator_recursion():
    semis = {frozenset(s.members): s for s in subsemigroups(7)}
    assert semis[frozenset({2, 4, 6})].generators == (2,)
    assert semis[frozenset({2, 3, 4, 5, 6})].generators == (2, 3)
    assert semis[frozenset()].generators == ()


def test_lattice_counts_match_semigroup_counts():
    for n in range(2, 11):
        lat = subfield_lattice(n)
        assert len(lat.nodes) == len(subsemigroups(n))


def test_lattice_n3():
    lat = subfield_lattice(3)
    assert sorted(s.size for s in lat.nodes) == [1, 2, 4]
    assert len(lat.edges) == 2
    assert "graph subfield_lattice_3" in lat.to_dot()


def test_exponents_examples():
    n = 5
    full = generated_subfield(n, [P(n, 0, 1)])
    assert sorted(full.exponents.members) == [1, 2, 3, 4]
    trivial = generated_subfield(n, [])
    assert sorted(trivial.exponents.members) == []
    quadratic = generated_subfield(n, [P(n, 0, 2)])
    assert sorted(quadratic.exponents.members) == [2, 4]


def test_squares_subfield():
    s5 = squares_subfield(5)
    assert s5.carrier == tuple(
        sorted([P(5, 0), P(5, 0, 2), P(5, 0, 4), P(5, 0, 2, 4)])
    )
    assert squares_subfield(2).carrier == (P(2, 0),)
    s6 = squares_subfield(6)
    assert s6.size == 4
    assert find_isomorphism(s6.as_field(), make_f0(3)) is not None


def test_squares_isomorphic_to_ceil_half():
    for n in range(2, 10):
        s = squares_subfield(n)
        assert s.size == make_f0((n + 1) // 2).size
        assert min_nilpotency_degree(n, max(s.carrier)) <= (n + 1) // 2 + 1


def test_exhaustive_scan_n3_matches_canonical_exactly():
    found = {f for f in exhaustive_subfields(3)}
    canonical = {semigroup_subfield(s).carrier for s in subsemigroups(3)}
    assert found == canonical


def test_exhaustive_scan_finds_all_canonical_and_only_isomorphic_extras():
    for n in range(2, 6):
        found = set(exhaustive_subfields(n))
        canonical = {semigroup_subfield(s).carrier for s in subsemigroups(n)}
        assert canonical <= found
        # every extra subfield is isomorphic to a canonical one
        by_size = {}
        for s in subsemigroups(n):
            sub = semigroup_subfield(s)
            by_size.setdefault(sub.size, []).append(sub)
        for carrier in found - canonical:
            field = make_f0(n)
            from t3f.fields import restrict_field

            sub_field = restrict_field(field, carrier)
            assert any(
                find_isomorphism(sub_field, c.as_field()) is not None
                for c in by_size[len(carrier)]
            ), (n, carrier)


def test_exhaustive_scan_has_non_canonical_subfields_at_n4():
    # {1, 1+t^2+t^3} is closed but not supported on a semigroup
    found = set(exhaustive_subfields(4))
    canonical = {semigroup_subfield(s).carrier for s in subsemigroups(4)}
    assert (P(4, 0), P(4, 0, 2, 3)) in found - canonical


def test_subring_correspondence_exhaustive():
    # subfields correspond to subrings of the pair ring containing tau = 0
    for n in range(2, 6):
        found = set(exhaustive_subfields(n))
        subrings = set()
        qs = [TruncPoly(n, m << 1) for m in range(1 << (n - 1))]
        for mask in range(1 << len(qs)):
            subset = {qs[i] for i in range(len(qs)) if mask >> i & 1}
            if not subset or TruncPoly.zero(n) not in subset:
                continue
            if all(a + b in subset and a * b in subset for a in subset for b in subset):
                subrings.add(tuple(sorted(subset)))
        lifted = {
            tuple(sorted(TruncPoly(n, 1 ^ q.mask) for q in ring)) for ring in subrings
        }
        assert lifted == found


def test_generated_equals_semigroup_carrier_for_monomial_generators():
    for n in range(2, 8):
        for mask in range(1, 1 << (n - 1)):
            gens = [v + 1 for v in range(n - 1) if mask >> v & 1]
            sub = generated_subfield(
                n, [P(n, 0, g) for g in gens]
            )
            semi = next(
                s
                for s in subsemigroups(n)
                if s.members == _bounded(n, gens)
            )
            assert sub.carrier == semigroup_subfield(semi).carrier, (n, gens)


def _bounded(n, gens):
    from t3f.subfields import _bounded_closure

    return _bounded_closure(n, gens)


def test_classification_holds_at_n3():
    report = classification_crosscheck(3)
    assert report.corollary_holds


def test_classification_counterexamples_from_n4():
    report = classification_crosscheck(5)
    assert report.exponent_equal_implies_isomorphic
    assert not report.corollary_holds
    normalized = {frozenset(pair) for pair in report.isomorphic_with_distinct_exponents}
    # <1+t^3> and <1+t^4> are both two-element subfields of F0(5)
    assert frozenset({frozenset({3}), frozenset({4})}) in normalized


def test_digit_subset_sums():
    assert digit_subset_sums(0) == frozenset()
    assert digit_subset_sums(1) == frozenset({1})
    assert digit_subset_sums(5) == frozenset({1, 4, 5})
    assert digit_subset_sums(7) == frozenset({1, 2, 3, 4, 5, 6, 7})


def test_binomial_forward_exact_range():
    for n in range(2, 13):
        for k in range(1, n):
            alpha = 1
            while k * alpha < n:
                lhs = P(n, 0, k) ** alpha
                assert lhs == binomial_power_expansion(n, k, alpha), (n, k, alpha)
                alpha += 1


def test_binomial_forward_truncated_everywhere():
    for n in range(2, 11):
        for k in range(1, n):
            for alpha in range(0, 2 * n):
                assert P(n, 0, k) ** alpha == binomial_power_expansion(n, k, alpha)


def test_binomial_converse_criterion_vs_brute_force():
    for n in range(2, 10):
        for k in range(1, n):
            for mask in range(1 << (n - 1)):
                member_set = frozenset(
                    v + 1 for v in range(n - 1) if mask >> v & 1
                )
                p = TruncPoly.from_exponents(n, [0] + sorted(member_set))
                brute = is_power_of_binomial(n, k, p) is not None
                assert binomial_subset_criterion(n, k, member_set) == brute, (
                    n,
                    k,
                    sorted(member_set),
                )
