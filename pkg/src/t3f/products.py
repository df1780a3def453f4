"""Algebras over 3-fields, unitization, and split exact sequences.

The ternary unitization of an algebra A over F lives on pairs (f, a) with
product (f1,a1)(f2,a2) = (f1 f2, f1.a2 + f2.a1 + a1 a2); it is a 3-field
exactly when every a admits a partner a# with a*a# = a + a#.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .fields import (
    AmbientRing,
    ThreeField,
    ambient_of,
    check_axioms,
    is_field_morphism,
)


@dataclass
class QAlgebra:
    """Binary algebra over a unital 3-field, with the action given explicitly."""

    label: str
    field: ThreeField
    elements: list
    add: Callable
    mul: Callable
    action: Callable  # (field element, algebra element) -> algebra element
    zero: object
    render: Callable = str

    def neg(self, a):
        for cand in self.elements:
            if self.add(a, cand) == self.zero:
                return cand
        raise ValueError("no additive inverse")


@dataclass
class AlgebraReport:
    label: str
    axioms_hold: bool
    axiom_witness: str | None
    is_nilpotent: bool
    is_q_algebra: bool
    hash_map: dict | None
    offending: object | None
    closed_form_agrees: bool | None


def algebra_axioms(alg: QAlgebra) -> tuple[bool, str | None]:
    """The four action axioms of a binary algebra over a 3-field."""
    F = alg.field
    for a in alg.elements:
        if alg.action(F.unit, a) != a:
            return False, f"1.a != a at a={alg.render(a)}"
    for f in F.elements:
        for a in alg.elements:
            for b in alg.elements:
                if alg.action(f, alg.add(a, b)) != alg.add(
                    alg.action(f, a), alg.action(f, b)
                ):
                    return False, f"f(a+b) != fa+fb at f={F.render(f)}"
    for f1 in F.elements:
        for f2 in F.elements:
            for a in alg.elements:
                if alg.action(F.mul(f1, f2), a) != alg.action(
                    f1, alg.action(f2, a)
                ):
                    return False, "(f1 f2)a != f1(f2 a)"
                for f3 in F.elements:
                    lhs = alg.action(F.tadd(f1, f2, f3), a)
                    rhs = alg.add(
                        alg.add(alg.action(f1, a), alg.action(f2, a)),
                        alg.action(f3, a),
                    )
                    if lhs != rhs:
                        return False, "(f1+f2+f3)a != f1a+f2a+f3a"
    return True, None


def nilpotency_class(alg: QAlgebra) -> int | None:
    """Least k with A^k = 0, by iterating products of the whole carrier."""
    current = set(alg.elements)
    for k in range(1, len(alg.elements) + 2):
        if current == {alg.zero}:
            return k
        current = {
            alg.mul(a, b) for a in current for b in alg.elements
        }
    return None


def is_q_algebra(alg: QAlgebra) -> AlgebraReport:
    """Search a # partner for every element; cross-check the nilpotent closed form."""
    axioms_ok, witness = algebra_axioms(alg)
    nilpotent = nilpotency_class(alg) is not None

    hash_map: dict = {}
    offending = None
    for a in alg.elements:
        partners = [
            p for p in alg.elements if alg.mul(a, p) == alg.add(a, p)
        ]
        if not partners:
            offending = a
            break
        hash_map[a] = partners[0]

    closed_agrees = None
    if offending is None and nilpotent:
        closed_agrees = True
        for a in alg.elements:
            # a# = -(a + a^2 + ... + a^N)
            acc = alg.zero
            power = a
            while power != alg.zero:
                acc = alg.add(acc, power)
                power = alg.mul(power, a)
            closed = alg.neg(acc)
            if alg.mul(a, closed) != alg.add(a, closed):
                closed_agrees = False
            elif closed != hash_map[a]:
                # multiple partners may exist; the closed form must be one
                if alg.mul(a, closed) == alg.add(a, closed):
                    hash_map[a] = closed

    return AlgebraReport(
        label=alg.label,
        axioms_hold=axioms_ok,
        axiom_witness=witness,
        is_nilpotent=nilpotent,
        is_q_algebra=offending is None,
        hash_map=hash_map if offending is None else None,
        offending=offending,
        closed_form_agrees=closed_agrees,
    )


# ---------------------------------------------------------------------------
# unitization


@dataclass
class Unitization:
    field: ThreeField  # the base F
    algebra: QAlgebra
    ternary: ThreeField  # A+_F on pairs (f, a)
    binary: AmbientRing  # A++_F = U(F) (+) A
    is_3field: bool
    algebra_report: AlgebraReport


def unitize(alg: QAlgebra) -> Unitization:
    """Ternary unitization F (+) A and binary unitization U(F) (+) A.

    The construction always yields a unital 3-ring; the 3-field flag follows
    the Q-algebra test, with every inverse verified by multiplication.
    """
    F = alg.field
    report = is_q_algebra(alg)
    neg_cache = {a: alg.neg(a) for a in alg.elements}

    def mul(x, y):
        (f1, a1), (f2, a2) = x, y
        return (
            F.mul(f1, f2),
            alg.add(
                alg.add(alg.action(f1, a2), alg.action(f2, a1)), alg.mul(a1, a2)
            ),
        )

    def tadd(x, y, z):
        return (
            F.tadd(x[0], y[0], z[0]),
            alg.add(alg.add(x[1], y[1]), z[1]),
        )

    unit = (F.unit, alg.zero)
    elements = [(f, a) for f in F.elements for a in alg.elements]
    inv_map: dict = {}
    if report.is_q_algebra:
        for x in elements:
            f, a = x
            finv = F.inv(f)
            # (f,a)^-1 = f^-1 (1, f^-1 a)^-1 with (1,b)^-1 = (1, b#)
            b = alg.action(finv, a)
            candidate = mul((finv, alg.zero), (F.unit, report.hash_map[b]))
            if mul(x, candidate) != unit:
                candidate = next(
                    (y for y in elements if mul(x, y) == unit), None
                )
            inv_map[x] = candidate

    is_3field = report.is_q_algebra and all(
        v is not None and mul(k, v) == unit for k, v in inv_map.items()
    )

    ternary = ThreeField(
        label=f"({alg.label})+ over {F.label}",
        kind="unitization",
        params={"field": F.label, "algebra": alg.label},
        elements=elements,
        unit=unit,
        tadd=tadd,
        mul=mul,
        quer=lambda x: (F.quer(x[0]), neg_cache[x[1]]),
        inv=(lambda x: inv_map[x]) if is_3field else (lambda x: x),
        render=lambda x: f"({F.render(x[0])}, {alg.render(x[1])})",
    )

    amb = ambient_of(F)

    def bin_mul(x, y):
        (u1, a1), (u2, a2) = x, y
        return (
            amb.mul(u1, u2),
            alg.add(alg.add(_mod_action(alg, amb, u1, a2), _mod_action(alg, amb, u2, a1)), alg.mul(a1, a2)),
        )

    binary = AmbientRing(
        label=f"U({F.label}) (+) {alg.label}",
        iter_elements=lambda: ((u, a) for u in amb.elements for a in alg.elements),
        add=lambda x, y: (amb.add(x[0], y[0]), alg.add(x[1], y[1])),
        mul=bin_mul,
        neg=lambda x: (amb.neg(x[0]), neg_cache[x[1]]),
        zero=(amb.zero, alg.zero),
        one=(amb.one, alg.zero),
        grade=lambda x: amb.grade(x[0]),
        render=lambda x: f"({amb.render(x[0])}, {alg.render(x[1])})",
        from_field=lambda p: (amb.from_field(p[0]), p[1]),
        to_field=lambda x: (amb.to_field(x[0]), x[1]),
    )
    ternary.ambient = binary
    return Unitization(F, alg, ternary, binary, is_3field, report)


def _mod_action(alg: QAlgebra, amb: AmbientRing, u, a):
    """U(F)-module structure: q_{1,f} a = a + f a, units act through the algebra."""
    if amb.grade(u) == 1:
        return alg.action(amb.to_field(u), a)
    # u = q_{1,f} acts as a + f.a; recover f = u - 1 from the ambient picture
    f = amb.to_field(amb.add(u, amb.neg(amb.one)))
    return alg.add(a, alg.action(f, a))


def nilpotent_inverse(unitization: Unitization, x) -> object:
    """Inverse of (f, a) through the geometric series, verified by multiplying back."""
    F = unitization.field
    alg = unitization.algebra
    tern = unitization.ternary
    unit = tern.unit
    f, a = x
    if nilpotency_class(alg) is not None:
        finv = F.inv(f)
        b = alg.action(finv, a)
        acc = alg.zero
        power = b
        while power != alg.zero:
            acc = alg.add(acc, power)
            power = alg.mul(power, b)
        inner = (F.unit, alg.neg(acc))
        candidate = tern.mul((finv, alg.zero), inner)
        if tern.mul(x, candidate) == unit:
            return candidate
    candidate = next((y for y in tern.elements if tern.mul(x, y) == unit), None)
    if candidate is None:
        raise ValueError(f"{tern.render(x)} is not invertible")
    return candidate


# ---------------------------------------------------------------------------
# split exact sequences and semidirect products


@dataclass
class SplitSequence:
    total: ThreeField
    quotient: ThreeField
    pi: dict
    sigma: dict


@dataclass
class SemidirectData:
    sequence: SplitSequence
    kernel_ideal: list  # grade-0 ambient elements of the total field
    algebra: QAlgebra
    algebra_report: AlgebraReport
    iso: dict  # (f, j) -> total element
    iso_verified: bool


def semidirect_check(seq: SplitSequence) -> SemidirectData:
    """Equip Ker Q(pi) with the section action and rebuild the total field.

    Verifies that pi is an epimorphism split by sigma, that the kernel ideal
    is a Q-algebra under g.j = sigma(g) j, and that (f, j) -> sigma(f) + j
    is an isomorphism from the unitization onto the total field.
    """
    total, quot, pi, sigma = seq.total, seq.quotient, seq.pi, seq.sigma
    if not is_field_morphism(total, quot, pi):
        raise ValueError("pi is not a 3-field morphism")
    if set(pi.values()) != set(quot.elements):
        raise ValueError("pi is not surjective")
    if not is_field_morphism(quot, total, sigma):
        raise ValueError("sigma is not a 3-field morphism")
    for g in quot.elements:
        if pi[sigma[g]] != g:
            raise ValueError("sigma is not a section of pi")

    amb = ambient_of(total)
    # q_{1,f} is the zero of Q(quotient) exactly when pi(f) = quer(1)
    kernel_target = quot.quer(quot.unit)
    kernel = sorted(
        amb.add(amb.one, amb.from_field(f))
        for f in total.elements
        if pi[f] == kernel_target
    )

    algebra = QAlgebra(
        label=f"Ker Q(pi) in {total.label}",
        field=quot,
        elements=kernel,
        add=amb.add,
        mul=amb.mul,
        action=lambda g, j: amb.mul(amb.from_field(sigma[g]), j),
        zero=amb.zero,
        render=amb.render,
    )
    report = is_q_algebra(algebra)

    iso = {}
    for f in quot.elements:
        for j in kernel:
            iso[(f, j)] = amb.to_field(amb.add(amb.from_field(sigma[f]), j))

    verified = report.is_q_algebra and len(set(iso.values())) == total.size
    if verified:
        uni = unitize(algebra)
        phi = {x: iso[x] for x in uni.ternary.elements}
        verified = uni.is_3field and is_field_morphism(uni.ternary, total, phi)

    return SemidirectData(
        sequence=seq,
        kernel_ideal=kernel,
        algebra=algebra,
        algebra_report=report,
        iso=iso,
        iso_verified=verified,
    )


def zero_product_algebra(field: ThreeField, dim: int, trivial_action: bool = True) -> QAlgebra:
    """GF(2)^dim with vanishing products and the trivial field action."""
    if not trivial_action:
        raise ValueError("only the trivial action is predefined for zero products")
    return QAlgebra(
        label=f"zero-product dim {dim}",
        field=field,
        elements=list(range(1 << dim)),
        add=lambda a, b: a ^ b,
        mul=lambda a, b: 0,
        action=lambda f, a: a,
        zero=0,
        render=lambda a: format(a, f"0{dim}b"),
    )


def gf2_algebra(field: ThreeField) -> QAlgebra:
    """GF(2) itself as an algebra; 1 has no # partner, so no Q-algebra."""
    return QAlgebra(
        label="GF(2)",
        field=field,
        elements=[0, 1],
        add=lambda a, b: a ^ b,
        mul=lambda a, b: a & b,
        action=lambda f, a: a,
        zero=0,
    )


def truncated_nilpotent_algebra(field: ThreeField, n: int) -> QAlgebra:
    """The maximal ideal t GF(2)[t]/t^n with the trivial field action."""
    from .poly2 import TruncPoly

    elements = [TruncPoly(n, m << 1) for m in range(1 << (n - 1))]
    return QAlgebra(
        label=f"t GF(2)[t]/t^{n}",
        field=field,
        elements=elements,
        add=lambda a, b: a + b,
        mul=lambda a, b: a * b,
        action=lambda f, a: a,
        zero=TruncPoly.zero(n),
    )


def ideal_algebra(big: ThreeField, scalars: ThreeField, members) -> QAlgebra:
    """An ideal of the ring of pairs of ``big`` as an algebra over a subfield.

    ``scalars`` must be carried by a subset of ``big``; the action is ambient
    multiplication.
    """
    amb = ambient_of(big)
    for f in scalars.elements:
        if not big.has(f):
            raise ValueError("scalar field is not carried by a subset of the big field")
    return QAlgebra(
        label=f"ideal({len(members)}) of {big.label} over {scalars.label}",
        field=scalars,
        elements=sorted(members),
        add=amb.add,
        mul=amb.mul,
        action=lambda f, j: amb.mul(amb.from_field(f), j),
        zero=amb.zero,
        render=amb.render,
    )


def projection_sequence(f1: ThreeField, f2: ThreeField, section_map: dict | None = None) -> SplitSequence:
    """The second-projection sequence of a product, with a supplied or trivial section.

    Without an explicit section the unit section g -> (1, g) is used; it is
    the only one when f2 does not embed into f1.
    """
    from .fields import cartesian

    total = cartesian(f1, f2)
    pi = {x: x[1] for x in total.elements}
    if section_map is None:
        sigma = {g: (f1.unit, g) for g in f2.elements}
    else:
        sigma = {g: (section_map[g], g) for g in f2.elements}
    return SplitSequence(total, f2, pi, sigma)
