"""Substitution endomorphisms of F0(n), their matrices, and the group structure.

An endomorphism is determined by the image of t: a polynomial with zero
constant term.  It is an automorphism exactly when that image has t as its
lowest term; those are indexed by alpha with bits (eps_2, ..., eps_{n-1}),
matching the canonical listing A_0, A_1, ... of the matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .fields import make_f0
from .groups import FiniteGroup
from .poly2 import TruncPoly
from .subfields import squares_subfield


@dataclass(frozen=True)
class Endo:
    """Unital endomorphism of F0(n), as the substitution polynomial for t."""

    n: int
    p0: TruncPoly

    def __post_init__(self) -> None:
        if self.p0.bound != self.n:
            raise ValueError("substitution polynomial bound must equal n")
        if self.p0.mask & 1:
            raise ValueError("substitution polynomial must have zero constant term")

    def apply(self, f: TruncPoly) -> TruncPoly:
        """Image of a field element 1 + Q0: substitute p0 into Q0."""
        q = TruncPoly(self.n, f.mask & ~1)
        return TruncPoly(self.n, (f.mask & 1) | q.compose(self.p0).mask)

    def then(self, second: "Endo") -> "Endo":
        """The composite mapping f -> second(self(f))."""
        return Endo(self.n, self.p0.compose(second.p0))

    def __str__(self) -> str:
        return f"t -> {self.p0}"


def identity_endo(n: int) -> Endo:
    return Endo(n, TruncPoly.t(n))


def endo_from_alpha(n: int, alpha: int) -> Endo:
    """Automorphism A_alpha: coefficient bits of alpha land on t^2..t^(n-1)."""
    if not 0 <= alpha < 1 << (n - 2):
        raise ValueError("alpha out of range")
    return Endo(n, TruncPoly(n, 0b10 | alpha << 2))


def alpha_of_endo(e: Endo) -> int:
    return e.p0.mask >> 2


def is_automorphism(e: Endo, search_inverse: bool = False) -> bool:
    """Criterion: t is the lowest term; optionally cross-checked by searching
    a compositional inverse among all substitution polynomials."""
    criterion = e.p0.min_degree() == 1
    if search_inverse:
        t = TruncPoly.t(e.n)
        found = any(
            TruncPoly(e.n, m << 1).compose(e.p0) == t
            for m in range(1 << (e.n - 1))
        )
        if found != criterion:
            raise AssertionError("lowest-term criterion disagrees with inverse search")
    return criterion


# ---------------------------------------------------------------------------
# GF(2) matrices (rows as bit masks over columns 1..n-1)


@dataclass(frozen=True)
class AutMatrix:
    n: int
    rows: tuple[int, ...]  # rows[v-1] bit (l-1) = coefficient of t^l in image of t^v

    def entry(self, k: int, l: int) -> int:
        """1-indexed entry: coefficient of t^l in the image of t^k."""
        return self.rows[k - 1] >> (l - 1) & 1

    def is_upper_unitriangular(self) -> bool:
        for i, row in enumerate(self.rows):
            if row & ((1 << i) - 1) or not row >> i & 1:
                return False
        return True

    def as_lists(self) -> list[list[int]]:
        size = self.n - 1
        return [[row >> j & 1 for j in range(size)] for row in self.rows]

    def __mul__(self, other: "AutMatrix") -> "AutMatrix":
        out = []
        for row in self.rows:
            acc = 0
            r, j = row, 0
            while r:
                if r & 1:
                    acc ^= other.rows[j]
                r >>= 1
                j += 1
            out.append(acc)
        return AutMatrix(self.n, tuple(out))

    def inverse(self) -> "AutMatrix":
        size = self.n - 1
        rows = list(self.rows)
        aug = [1 << i for i in range(size)]
        for col in range(size):
            pivot = next(i for i in range(col, size) if rows[i] >> col & 1)
            rows[col], rows[pivot] = rows[pivot], rows[col]
            aug[col], aug[pivot] = aug[pivot], aug[col]
            for i in range(size):
                if i != col and rows[i] >> col & 1:
                    rows[i] ^= rows[col]
                    aug[i] ^= aug[col]
        return AutMatrix(self.n, tuple(aug))

    def text_rows(self) -> list[str]:
        return [" ".join(str(v) for v in row) for row in self.as_lists()]


def identity_matrix(n: int) -> AutMatrix:
    return AutMatrix(n, tuple(1 << i for i in range(n - 1)))


def aut_matrix(e: Endo) -> AutMatrix:
    """Row v holds the coordinates of the image of t^v on t^1..t^(n-1)."""
    if not is_automorphism(e):
        raise ValueError("matrix representation is defined for automorphisms")
    rows = []
    power = TruncPoly.one(e.n)
    for _ in range(1, e.n):
        power = power * e.p0
        rows.append(power.mask >> 1)
    return AutMatrix(e.n, tuple(rows))


def _multinomial(k: int, parts: tuple[int, ...]) -> int:
    out = factorial(k)
    for p in parts:
        out //= factorial(p)
    return out


def aut_matrix_via_multinomial(e: Endo) -> AutMatrix:
    """Entries from the multinomial expansion of powers of the substitution
    polynomial, reduced mod 2; an arithmetic path independent of the
    truncated carrier."""
    if not is_automorphism(e):
        raise ValueError("matrix representation is defined for automorphisms")
    n = e.n
    eps = [e.p0.mask >> v & 1 for v in range(n)]
    rows = []
    for k in range(1, n):
        row = 0
        for l in range(k, n):
            total = 0
            for parts in _compositions(k, l, n):
                if all(eps[j] or parts[j - 1] == 0 for j in range(1, n)):
                    total += _multinomial(k, parts)
            if total & 1:
                row |= 1 << (l - 1)
        rows.append(row)
    return AutMatrix(n, tuple(rows))


def _compositions(k: int, l: int, n: int):
    """Tuples (i_1..i_{n-1}) with sum k and weighted sum l."""

    def rec(j: int, rem_k: int, rem_l: int):
        if j == n - 1:
            if rem_k == 0 and rem_l == 0:
                yield ()
            return
        max_i = min(rem_k, rem_l // j) if j else rem_k
        for i in range(max_i + 1):
            for rest in rec(j + 1, rem_k - i, rem_l - i * j):
                yield (i,) + rest

    yield from rec(1, k, l)


# ---------------------------------------------------------------------------
# inverses, three ways


def aut_inverse(e: Endo) -> Endo:
    """Compositional inverse; the coefficient recursion, matrix inversion and
    power iteration must all agree."""
    if not is_automorphism(e):
        raise ValueError("only automorphisms are invertible")
    n = e.n
    # (i) coefficient recursion over powers of p0
    powers = [None, e.p0]
    for m in range(2, n):
        powers.append(powers[-1] * e.p0)
    eps_hat = [0, 1] + [0] * (n - 2)
    for l in range(2, n):
        s = 0
        for m in range(1, l):
            s ^= eps_hat[m] & (powers[m].mask >> l & 1)
        eps_hat[l] = s
    via_recursion = TruncPoly.from_exponents(n, [v for v in range(1, n) if eps_hat[v]])

    # (ii) invert the matrix; its first row is the image of t
    via_matrix = TruncPoly(n, aut_matrix(e).inverse().rows[0] << 1)

    # (iii) power iteration: the inverse is the (order-1)-st compositional power
    order = 1
    q = e.p0
    t = TruncPoly.t(n)
    while q != t:
        q = q.compose(e.p0)
        order += 1
    via_power = t
    for _ in range(order - 1):
        via_power = via_power.compose(e.p0)

    if not (via_recursion == via_matrix == via_power):
        raise AssertionError(
            f"inverse paths disagree for {e}: {via_recursion}, {via_matrix}, {via_power}"
        )
    if via_recursion.compose(e.p0) != t or e.p0.compose(via_recursion) != t:
        raise AssertionError("inverse does not compose to the identity")
    return Endo(n, via_recursion)


def endo_order(e: Endo) -> int:
    t = TruncPoly.t(e.n)
    order = 1
    q = e.p0
    while q != t:
        q = q.compose(e.p0)
        order += 1
    return order


# ---------------------------------------------------------------------------
# the full group


@dataclass
class AutGroup:
    n: int
    group: FiniteGroup  # labels A_alpha, index alpha
    endos: list[Endo]

    @property
    def order(self) -> int:
        return self.group.order

    def matrices(self) -> list[AutMatrix]:
        return [aut_matrix(e) for e in self.endos]


def generate_aut_group(n: int) -> AutGroup:
    """All 2^(n-2) substitution automorphisms with their composition table.

    Composition of substitutions is associative by construction; the table
    axioms are still verified exhaustively at small orders.
    """
    if not 3 <= n <= 12:
        raise ValueError("n must be in 3..12")
    count = 1 << (n - 2)
    endos = [endo_from_alpha(n, a) for a in range(count)]
    index = {e.p0.mask: a for a, e in enumerate(endos)}
    # mul(i, j) = apply j first, then i; its polynomial substitutes p_i into p_j
    table = []
    for i in range(count):
        row = []
        for j in range(count):
            composed = endos[j].p0.compose(endos[i].p0)
            row.append(index[composed.mask])
        table.append(row)
    group = FiniteGroup(
        f"Aut F0({n})", table, labels=[f"A_{a}" for a in range(count)]
    )
    if not group.check_group_axioms():
        raise AssertionError("composition table failed the group axioms")
    return AutGroup(n, group, endos)


def appendix_text(n: int) -> str:
    """Matrices in the fixture layout: index header, 0/1 rows, blank separators."""
    blocks = []
    aut = generate_aut_group(n)
    for a, e in enumerate(aut.endos):
        blocks.append("\n".join([f"A_{a}"] + aut_matrix(e).text_rows()))
    return "\n\n".join(blocks) + "\n"


# ---------------------------------------------------------------------------
# reflection and conjugation


def reflection(n: int) -> Endo:
    """Substitution by the full sum of powers; an involution."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return Endo(n, TruncPoly.from_exponents(n, range(1, n)))


def reflection_image_formula(n: int, f: TruncPoly) -> TruncPoly:
    """Displayed form: coefficients carried onto powers of the reflection polynomial."""
    s = reflection(n).p0
    acc = TruncPoly.one(n) if f.mask & 1 else TruncPoly.zero(n)
    power = TruncPoly.one(n)
    for v in range(1, n):
        power = power * s
        if f.mask >> v & 1:
            acc = acc + power
    return acc


@dataclass
class ConjugationData:
    n: int
    fixed_field_elements: list[TruncPoly]
    fixed_automorphism_alphas: list[int]
    monomial_fixed: dict[int, bool]  # exponent -> t^k fixed?
    claimed_range_holds: bool  # all 1 + I_k with k >= n/2 fixed, as claimed
    claim_counterexamples: list[int]
    corrected_rule_matches: bool  # fixed iff k + 2^v2(k) >= n


def conjugation(n: int) -> ConjugationData:
    """Fixed points of the reflection on the field and on the automorphisms.

    The claimed fixed range (all of 1 + I_k for k >= n/2) fails in general;
    the computed truth for monomials is k + 2^{v2(k)} >= n, reported against
    the claim rather than silently replacing it.
    """
    field = make_f0(n)
    r = reflection(n)
    fixed_field = sorted(f for f in field.elements if r.apply(f) == f)

    aut = generate_aut_group(n)
    r_alpha = alpha_of_endo(r)
    tab = aut.group.table
    fixed_auts = [
        a
        for a in range(aut.order)
        if tab[r_alpha][tab[a][r_alpha]] == a
    ]

    monomial_fixed = {}
    for k in range(1, n):
        mono = TruncPoly.from_exponents(n, [0, k])
        monomial_fixed[k] = r.apply(mono) == mono

    counterexamples = [
        k for k in range((n + 1) // 2, n) if not monomial_fixed[k]
    ]
    corrected = all(
        monomial_fixed[k] == (k + (k & -k) >= n) for k in range(1, n)
    )
    return ConjugationData(
        n=n,
        fixed_field_elements=fixed_field,
        fixed_automorphism_alphas=fixed_auts,
        monomial_fixed=monomial_fixed,
        claimed_range_holds=not counterexamples,
        claim_counterexamples=counterexamples,
        corrected_rule_matches=corrected,
    )


def conjugation_pairs(aut: AutGroup) -> list[tuple[int, int]]:
    """Pairs (alpha, alpha*) with alpha* != alpha, for dotted graph edges."""
    r_alpha = alpha_of_endo(reflection(aut.n))
    tab = aut.group.table
    pairs = []
    for a in range(aut.order):
        star = tab[r_alpha][tab[a][r_alpha]]
        if star > a:
            pairs.append((a, star))
    return pairs


# ---------------------------------------------------------------------------
# filtrations


@dataclass
class GammaData:
    n: int
    k: int
    member_alphas: list[int]
    order: int
    is_subgroup: bool
    is_normal: bool
    truncation_is_morphism: bool
    truncation_kernel_matches: bool
    quotient_order_two_chain: bool
    splitting_involution: int | None


def gamma_subgroup_alphas(n: int, k: int) -> list[int]:
    """Automorphisms whose polynomial is t plus terms of degree >= k."""
    return [
        a for a in range(1 << (n - 2)) if a & ((1 << max(k - 2, 0)) - 1) == 0
    ]


def gamma_filtration(n: int, k: int, aut: AutGroup | None = None) -> GammaData:
    """The filtration subgroup at level k, with the splitting data."""
    if not 2 <= k <= n - 1:
        raise ValueError("need 2 <= k <= n-1")
    aut = aut or generate_aut_group(n)
    members = gamma_subgroup_alphas(n, k)
    member_set = set(members)
    tab = aut.group.table

    is_subgroup = all(tab[a][b] in member_set for a in members for b in members)
    is_normal = aut.group.is_normal(frozenset(members))

    # truncation to bound k is a group morphism onto Aut F0(k) with kernel Gamma_{n,k}
    morphism_ok = True
    kernel_ok = True
    if k >= 3:
        small = generate_aut_group(k)
        small_index = {e.p0.mask: a for a, e in enumerate(small.endos)}

        def trunc(a: int) -> int:
            return small_index[aut.endos[a].p0.truncate(k).mask]

        for a in range(aut.order):
            for b in range(aut.order):
                if trunc(tab[a][b]) != small.group.table[trunc(a)][trunc(b)]:
                    morphism_ok = False
        kernel_ok = [a for a in range(aut.order) if trunc(a) == 0] == members
    else:
        # Aut F0(2) is trivial: everything truncates to the identity
        kernel_ok = members == list(range(aut.order))

    # the successive quotients all have order 2
    chain_ok = True
    prev = aut.order if k == 2 else None
    sizes = [len(gamma_subgroup_alphas(n, j)) for j in range(2, n)]
    for bigger, smaller in zip(sizes, sizes[1:]):
        if bigger != 2 * smaller:
            chain_ok = False

    involution = None
    next_members = set(gamma_subgroup_alphas(n, k + 1)) if k + 1 <= n - 1 else {0}
    for a in members:
        if a not in next_members and tab[a][a] == 0:
            involution = a
            break
    return GammaData(
        n=n,
        k=k,
        member_alphas=members,
        order=len(members),
        is_subgroup=is_subgroup,
        is_normal=is_normal,
        truncation_is_morphism=morphism_ok,
        truncation_kernel_matches=kernel_ok,
        quotient_order_two_chain=chain_ok,
        splitting_involution=involution,
    )


# ---------------------------------------------------------------------------
# restriction to the subfield of squares


@dataclass
class FrobeniusRestrictionData:
    n: int
    target_bound: int  # ceil(n/2): the squares subfield is F0 of this bound
    printed_target_bound: int  # floor(n/2), as printed; differs for odd n
    restriction_verified: bool  # truncated polynomial acts as the restriction
    kernel_alphas: list[int]
    kernel_matches_characterization: bool
    kernel_is_commutative: bool
    image_order: int
    surjective_onto_target: bool
    floor_truncation_image_order: int | None
    fixed_power_levels: dict[int, dict]  # k -> data for automorphisms fixing 1+t^(2^k)


def frobenius_restriction(n: int, aut: AutGroup | None = None) -> FrobeniusRestrictionData:
    """Restriction of automorphisms to the subfield of squares.

    The squares subfield of F0(n) is F0(ceil(n/2)); for odd n this differs
    from the printed floor(n/2) target, whose truncation image is reported
    separately.
    """
    if n < 4:
        raise ValueError("n must be >= 4")
    aut = aut or generate_aut_group(n)
    m = (n + 1) // 2
    field = make_f0(n)

    # identify squares with F0(m) through exponent doubling
    def spread(h: TruncPoly) -> TruncPoly:
        return TruncPoly.from_exponents(n, [2 * v for v in h.exponents() if 2 * v < n])

    small_field = make_f0(m)
    restriction_ok = True
    for e in aut.endos:
        restricted = Endo(m, e.p0.truncate(m)) if e.p0.truncate(m).mask & 2 else None
        if restricted is None:
            restriction_ok = False
            break
        for h in small_field.elements:
            if e.apply(spread(h)) != spread(restricted.apply(h)):
                restriction_ok = False
                break
        if not restriction_ok:
            break

    kernel = [
        a for a, e in enumerate(aut.endos) if e.p0.truncate(m) == TruncPoly.t(m)
    ]
    characterization = gamma_subgroup_alphas(n, m)
    tab = aut.group.table
    commutative = all(
        tab[a][b] == tab[b][a] for a in kernel for b in kernel
    )
    image_order = aut.order // len(kernel)
    target_order = 1 << (m - 2) if m >= 3 else 1

    floor_m = n // 2
    floor_image = None
    if floor_m >= 2:
        floor_kernel = sum(
            1 for e in aut.endos if e.p0.truncate(floor_m) == TruncPoly.t(floor_m)
        )
        floor_image = aut.order // floor_kernel

    # automorphisms fixing 1 + t^(2^k)
    fixed_levels = {}
    k = 1
    while 1 << k <= n:
        mono = TruncPoly.from_exponents(n, [0, 1 << k])
        fixing = [a for a, e in enumerate(aut.endos) if e.apply(mono) == mono]
        predicted = [
            a
            for a, e in enumerate(aut.endos)
            if all(
                not (e.p0.mask >> i & 1)
                for i in range(2, n)
                if i << k < n
            )
        ]
        quotient_bound = -(-n >> k) if n >> k else 1  # ceil(n / 2^k)
        quotient_bound = (n + (1 << k) - 1) >> k
        expected_index = 1 << (quotient_bound - 2) if quotient_bound >= 3 else 1
        fixed_levels[k] = {
            "fixing": fixing,
            "matches_characterization": fixing == predicted,
            "index_matches_quotient": len(fixing) * expected_index == aut.order,
        }
        k += 1

    return FrobeniusRestrictionData(
        n=n,
        target_bound=m,
        printed_target_bound=floor_m,
        restriction_verified=restriction_ok,
        kernel_alphas=kernel,
        kernel_matches_characterization=kernel == characterization,
        kernel_is_commutative=commutative,
        image_order=image_order,
        surjective_onto_target=image_order == target_order,
        floor_truncation_image_order=floor_image,
        fixed_power_levels=fixed_levels,
    )
