"""Subfields of F0(n), exponent semigroups, and the subfield lattice.

Exponent sets live in {1,...,n-1} and are closed under addition whenever the
sum stays below n (higher sums vanish under t^n = 0).  Each such semigroup S
carries the canonical subfield {1 + masks supported on S}.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import ThreeField, find_isomorphism, make_f0, restrict_field
from .poly2 import TruncPoly


@dataclass(frozen=True)
class ExponentSemigroup:
    n: int
    members: frozenset
    generators: tuple[int, ...]

    def contains(self, x: int) -> bool:
        return x in self.members


@dataclass
class Subfield:
    n: int
    carrier: tuple[TruncPoly, ...]
    exponents: ExponentSemigroup
    generators: tuple[TruncPoly, ...]

    @property
    def size(self) -> int:
        return len(self.carrier)

    def as_field(self) -> ThreeField:
        return restrict_field(make_f0(self.n), self.carrier)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "order": self.size,
            "semigroup": sorted(self.exponents.members),
            "semigroup_generators": list(self.exponents.generators),
            "generators": [str(g) for g in self.generators],
        }


def _bounded_closure(n: int, seed) -> frozenset:
    current = set(seed)
    changed = True
    while changed:
        changed = False
        for a in list(current):
            for b in list(current):
                s = a + b
                if s <= n - 1 and s not in current:
                    current.add(s)
                    changed = True
    return frozenset(current)


def canonical_generators(n: int, members: frozenset) -> tuple[int, ...]:
    """Minimal generators by the greedy recursion s_{k+1} = min S \\ <s_1..s_k>."""
    gens: list[int] = []
    generated: frozenset = frozenset()
    while True:
        rest = sorted(m for m in members if m not in generated)
        if not rest:
            return tuple(gens)
        gens.append(rest[0])
        generated = _bounded_closure(n, gens)


def subsemigroups(n: int) -> list[ExponentSemigroup]:
    """All subsets of {1..n-1} closed under bounded addition."""
    if not 1 <= n <= 20:
        raise ValueError("n must be in 1..20")
    out = []
    limit = 1 << n  # bit v marks membership of exponent v
    valid = ((1 << n) - 1) & ~1
    for mask in range(limit):
        if mask & ~valid:
            continue
        closed = True
        m = mask
        while m and closed:
            a = (m & -m).bit_length() - 1
            if (mask << a) & valid & ~mask:
                closed = False
            m &= m - 1
        if closed:
            members = frozenset(v for v in range(1, n) if mask >> v & 1)
            out.append(
                ExponentSemigroup(n, members, canonical_generators(n, members))
            )
    out.sort(key=lambda s: (len(s.members), sorted(s.members)))
    return out


def semigroup_subfield(s: ExponentSemigroup) -> Subfield:
    """The canonical subfield of all 1 + masks supported on the semigroup."""
    n = s.n
    exps = sorted(s.members)
    carrier = []
    for pick in range(1 << len(exps)):
        mask = 1
        for i, e in enumerate(exps):
            if pick >> i & 1:
                mask |= 1 << e
        carrier.append(TruncPoly(n, mask))
    return Subfield(
        n=n,
        carrier=tuple(sorted(carrier)),
        exponents=s,
        generators=tuple(
            TruncPoly.from_exponents(n, [0, g]) for g in s.generators
        ),
    )


def exponents(n: int, carrier) -> ExponentSemigroup:
    """Ex F = {a : 1 + t^a lies in the subfield}."""
    members = frozenset(
        a
        for a in range(1, n)
        if TruncPoly.from_exponents(n, [0, a]) in set(carrier)
    )
    return ExponentSemigroup(n, members, canonical_generators(n, members))


def generated_subfield(n: int, gens) -> Subfield:
    """Closure of {1} and the generators under ternary addition and product."""
    field = make_f0(n)
    gens = tuple(gens)
    current = {field.unit, *gens}
    frontier = list(current)
    while frontier:
        new = []
        for a in frontier:
            x = field.inv(a)
            if x not in current:
                current.add(x)
                new.append(x)
            for b in list(current):
                for x in (field.mul(a, b), field.hsum(a, b), field.usum(a, b)):
                    if x not in current:
                        current.add(x)
                        new.append(x)
        frontier = new
    carrier = tuple(sorted(current))
    return Subfield(
        n=n,
        carrier=carrier,
        exponents=exponents(n, carrier),
        generators=gens,
    )


def generated_subfield_via_subring(n: int, gens) -> tuple[TruncPoly, ...]:
    """Independent path: 1 + (subring generated by tau and the q_i).

    tau = q_{1,1} is the zero polynomial here, so the subring is generated by
    the q_i = 1 + g_i under GF(2) addition and multiplication.
    """
    qs = [TruncPoly(n, 1 ^ g.mask) for g in gens]
    current = {TruncPoly.zero(n), *qs}
    frontier = list(current)
    while frontier:
        new = []
        for a in frontier:
            for b in list(current):
                for x in (a + b, a * b):
                    if x not in current:
                        current.add(x)
                        new.append(x)
        frontier = new
    return tuple(sorted(TruncPoly(n, 1 ^ q.mask) for q in current))


def min_nilpotency_degree(n: int, p: TruncPoly) -> int:
    """Least m with (p-1)^m = 0; the subfield generated by p has 2^(m-1) elements."""
    q = TruncPoly(n, p.mask ^ 1)
    power = TruncPoly.one(n)
    for m in range(1, n + 1):
        power = power * q
        if power.mask == 0:
            return m
    raise AssertionError("p - 1 must be nilpotent in the truncated ring")


def squares_subfield(n: int) -> Subfield:
    """Image of the squaring morphism: masks supported on even exponents."""
    if n < 2:
        raise ValueError("n must be >= 2")
    field = make_f0(n)
    carrier = tuple(sorted({field.mul(x, x) for x in field.elements}))
    return Subfield(
        n=n,
        carrier=carrier,
        exponents=exponents(n, carrier),
        generators=(TruncPoly.from_exponents(n, [0, 2]),) if n > 2 else (field.unit,),
    )


# ---------------------------------------------------------------------------
# lattice


@dataclass
class SubfieldLattice:
    n: int
    nodes: list[Subfield]
    edges: list[tuple[int, int]]  # cover relations by inclusion, child -> parent

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "nodes": [s.to_json() for s in self.nodes],
            "edges": self.edges,
        }

    def to_dot(self) -> str:
        lines = [f'graph subfield_lattice_{self.n} {{', "  rankdir=BT;"]
        for i, s in enumerate(self.nodes):
            label = "{" + ",".join(str(m) for m in sorted(s.exponents.members)) + "}"
            lines.append(f'  n{i} [label="{label}\\norder {s.size}"];')
        for a, b in self.edges:
            lines.append(f"  n{a} -- n{b};")
        lines.append("}")
        return "\n".join(lines)


def subfield_lattice(n: int) -> SubfieldLattice:
    """One canonical subfield per sub-semigroup, ordered by inclusion."""
    if n > 10:
        raise ValueError("lattice construction capped at n = 10")
    semis = subsemigroups(n)
    nodes = [semigroup_subfield(s) for s in semis]
    contains = [
        [s.members < t.members for t in semis] for s in semis
    ]
    edges = []
    for i, si in enumerate(semis):
        for j, sj in enumerate(semis):
            if not contains[i][j]:
                continue
            if any(
                contains[i][k] and contains[k][j] for k in range(len(semis))
            ):
                continue
            edges.append((i, j))
    return SubfieldLattice(n, nodes, edges)


def exhaustive_subfields(n: int) -> list[tuple[TruncPoly, ...]]:
    """Every operation-closed subset of F0(n) containing 1 (desk scale only)."""
    if n > 5:
        raise ValueError("exhaustive scan capped at n = 5")
    field = make_f0(n)
    els = field.elements
    size = len(els)
    idx = {e: i for i, e in enumerate(els)}
    unit_bit = 1 << idx[field.unit]
    mul_t = [[idx[field.mul(a, b)] for b in els] for a in els]
    hsum_t = [[idx[field.hsum(a, b)] for b in els] for a in els]
    usum_t = [[idx[field.usum(a, b)] for b in els] for a in els]
    inv_t = [idx[field.inv(a)] for a in els]

    found = []
    for mask in range(1 << size):
        if not mask & unit_bit:
            continue
        bits = [i for i in range(size) if mask >> i & 1]
        ok = True
        for i in bits:
            if not mask >> inv_t[i] & 1:
                ok = False
                break
            row_m, row_h, row_u = mul_t[i], hsum_t[i], usum_t[i]
            for j in bits:
                if not (
                    mask >> row_m[j] & 1
                    and mask >> row_h[j] & 1
                    and mask >> row_u[j] & 1
                ):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append(tuple(sorted(els[i] for i in bits)))
    return found


@dataclass
class ClassificationReport:
    n: int
    pairs_checked: int
    exponent_equal_implies_isomorphic: bool
    isomorphic_with_distinct_exponents: list[tuple[frozenset, frozenset]]

    @property
    def corollary_holds(self) -> bool:
        return (
            self.exponent_equal_implies_isomorphic
            and not self.isomorphic_with_distinct_exponents
        )


def classification_crosscheck(n: int) -> ClassificationReport:
    """Exponent equality versus brute-force isomorphism on canonical subfields.

    Distinct semigroups can still carry isomorphic subfields (already for
    single generators: the minimal nilpotency degree alone fixes the class),
    so counterexamples are expected and returned, not suppressed.
    """
    subs = [semigroup_subfield(s) for s in subsemigroups(n)]
    fields_ = [s.as_field() for s in subs]
    mismatches = []
    equal_ok = True
    pairs = 0
    for i in range(len(subs)):
        for j in range(i + 1, len(subs)):
            pairs += 1
            same_exp = subs[i].exponents.members == subs[j].exponents.members
            iso = find_isomorphism(fields_[i], fields_[j]) is not None
            if same_exp and not iso:
                equal_ok = False
            if iso and not same_exp:
                mismatches.append(
                    (subs[i].exponents.members, subs[j].exponents.members)
                )
    return ClassificationReport(n, pairs, equal_ok, mismatches)


# ---------------------------------------------------------------------------
# binomial lemma helpers


def digit_subset_sums(alpha: int) -> frozenset:
    """All sums of subsets of the binary digits of alpha, zero excluded."""
    sums = {0}
    v = 0
    while alpha:
        if alpha & 1:
            sums |= {s + (1 << v) for s in sums}
        alpha >>= 1
        v += 1
    return frozenset(sums - {0})


def binomial_power_expansion(n: int, k: int, alpha: int) -> TruncPoly:
    """1 + sum of t^(k m) over the digit subset sums m of alpha, truncated."""
    return TruncPoly.from_exponents(
        n, [0] + [k * m for m in digit_subset_sums(alpha) if k * m < n]
    )


def is_power_of_binomial(n: int, k: int, p: TruncPoly) -> int | None:
    """Brute-force membership oracle: the exponent alpha, or None."""
    base = TruncPoly.from_exponents(n, [0, k])
    order = 1
    power = base
    while power != TruncPoly.one(n):
        power = power * base
        order += 1
    x = TruncPoly.one(n)
    for alpha in range(order):
        if x == p:
            return alpha
        x = x * base
    return None


def binomial_subset_criterion(n: int, k: int, members: frozenset) -> bool:
    """The converse test: N = k * (digit subset sums of its own power content)."""
    if any(m % k for m in members):
        return False
    digits = [v for v in range(n.bit_length() + 1) if k * (1 << v) in members]
    alpha = sum(1 << v for v in digits)
    expected = {k * m for m in digit_subset_sums(alpha) if k * m <= n - 1}
    return members == frozenset(expected)
