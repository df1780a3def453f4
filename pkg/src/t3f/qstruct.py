"""Rings of pairs, abstract Q-rings, reconstruction, and the ideals of F0(n).

The ring of pairs of a 3-field F is realized inside the graded ambient ring:
the map q_{1,f} corresponds to the ambient element 1 + f, so its carrier is
exactly the grade-0 part of U(F).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable

from .fields import (
    AmbientRing,
    AxiomReport,
    CheckResult,
    ThreeField,
    all_ideals,
    ambient_of,
    make_f0,
)
from .poly2 import TruncPoly, all_trunc_polys


@dataclass
class QRing:
    """Finite commutative non-unital ring with a 2-unit and a #-involution."""

    label: str
    elements: list
    add: Callable
    mul: Callable
    tau: object
    hash_: Callable
    zero: object
    render: Callable = str
    source_field: ThreeField | None = None
    from_field_elem: dict | None = None  # f -> q_{1,f}
    to_field_elem: dict | None = None  # q_{1,f} -> f

    def neg(self, q):
        for cand in self.elements:
            if self.add(q, cand) == self.zero:
                return cand
        raise ValueError(f"no additive inverse for {self.render(q)}")

    def sub(self, a, b):
        return self.add(a, self.neg(b))


def q_of(field: ThreeField) -> QRing:
    """The ring of pairs, with tau = q_{1,1} and q_{1,f}^# = q_{1, f^{-1}}."""
    amb = ambient_of(field)
    from_f = {
        f: amb.add(amb.one, amb.from_field(f)) for f in field.elements
    }
    to_f = {q: f for f, q in from_f.items()}
    hash_map = {from_f[f]: from_f[field.inv(f)] for f in field.elements}
    return QRing(
        label=f"Q({field.label})",
        elements=sorted(from_f.values()),
        add=amb.add,
        mul=amb.mul,
        tau=from_f[field.unit],
        hash_=hash_map.__getitem__,
        zero=amb.zero,
        render=amb.render,
        source_field=field,
        from_field_elem=from_f,
        to_field_elem=to_f,
    )


def check_qring(q: QRing, budget: int = 2_000_000) -> AxiomReport:
    """Verify the Q-ring axioms and the listed consequences.

    The 2-unit is not unique in general (consequence 3); all 2-units are
    reported, and a flagged entry records when the designated tau is not the
    only one.
    """
    report = AxiomReport(q.label)
    els = q.elements
    n = len(els)

    if n == 0 or all(q.mul(a, b) == q.zero for a in els for b in els):
        report.checks.append(
            CheckResult(
                "degenerate ring (zero or zero-product)",
                "pass",
                "exhaustive",
                detail="accepted: zero-product rings are legitimate Q-rings",
            )
        )

    bad = next((x for x in els if q.mul(q.tau, x) != q.add(x, x)), None)
    report.checks.append(
        CheckResult(
            "2-unit law (tau*q = q+q)",
            "pass" if bad is None else "fail",
            "exhaustive",
            None if bad is None else f"q={q.render(bad)}",
        )
    )

    two_units = [
        t for t in els if all(q.mul(t, x) == q.add(x, x) for x in els)
    ]
    unique = len(two_units) == 1
    report.checks.append(
        CheckResult(
            "2-unit uniqueness",
            "pass" if unique else "flagged",
            "exhaustive",
            None if unique else "2-units: " + ", ".join(q.render(t) for t in two_units),
            detail="" if unique else "multiple 2-units exist; uniqueness is not an axiom",
        )
    )

    hash_ok = True
    hash_unique = True
    witness = None
    for x in els:
        candidates = [p for p in els if q.mul(x, p) == q.add(x, p)]
        declared = q.hash_(x)
        if declared not in candidates:
            hash_ok = False
            witness = f"q={q.render(x)}"
            break
        if len(candidates) != 1:
            hash_unique = False
            witness = f"q={q.render(x)} has {len(candidates)} candidates"
    report.checks.append(
        CheckResult(
            "#-element law (q*q# = q+q#)",
            "pass" if hash_ok else "fail",
            "exhaustive",
            None if hash_ok else witness,
        )
    )
    report.checks.append(
        CheckResult(
            "#-element uniqueness",
            "pass" if hash_ok and hash_unique else "fail",
            "exhaustive",
            None if hash_unique else witness,
        )
    )
    if hash_ok:
        bad = next((x for x in els if q.hash_(q.hash_(x)) != x), None)
        report.checks.append(
            CheckResult(
                "# is an involution",
                "pass" if bad is None else "fail",
                "exhaustive",
                None if bad is None else f"q={q.render(bad)}",
            )
        )
        tau_fixed = q.hash_(q.tau) == q.tau
        report.checks.append(
            CheckResult("tau# = tau", "pass" if tau_fixed else "fail", "exhaustive")
        )

    unital = any(
        all(q.mul(e, x) == x for x in els) for e in els
    )
    report.checks.append(
        CheckResult(
            "never unital",
            "fail" if unital else "pass",
            "exhaustive",
            detail="a Q-ring cannot contain a multiplicative unit",
        )
    )

    # tau^n = 2^(n-1) tau, additively
    power = q.tau
    ok = True
    for k in range(2, min(n, 12) + 2):
        power = q.mul(power, q.tau)
        multiple = q.zero
        for _ in range(1 << (k - 1)):
            multiple = q.add(multiple, q.tau)
        if power != multiple:
            ok = False
            witness = f"tau^{k}"
            break
    report.checks.append(
        CheckResult(
            "tau powers (tau^n = 2^(n-1) tau)",
            "pass" if ok else "fail",
            "exhaustive",
            None if ok else witness,
        )
    )

    # consequence 4: any two #-candidates p1, p2 satisfy (p1-p2)(q-1) = 0,
    # i.e. (p1-p2)*q = p1-p2 within the unitization
    ok = True
    for x in els:
        candidates = [p for p in els if q.mul(x, p) == q.add(x, p)]
        for p1 in candidates:
            for p2 in candidates:
                d = q.sub(p1, p2)
                if q.mul(d, x) != d:
                    ok = False
                    witness = f"q={q.render(x)}"
    report.checks.append(
        CheckResult(
            "#-candidate relation ((q1#-q2#)(q-1) = 0)",
            "pass" if ok else "fail",
            "exhaustive",
            None if ok else witness,
        )
    )
    return report


def _ring_generators(q: QRing) -> list:
    """A small generating set of the ring under addition and multiplication."""

    def closure(gens):
        current = {q.zero, *gens}
        frontier = list(current)
        while frontier:
            new = []
            for x in frontier:
                for y in list(current):
                    for v in (q.add(x, y), q.mul(x, y)):
                        if v not in current:
                            current.add(v)
                            new.append(v)
            frontier = new
        return current

    gens: list = []
    span = closure(gens)
    for x in q.elements:
        if x not in span:
            gens.append(x)
            span = closure(gens)
    return gens


def ring_morphisms(src: QRing, dst: QRing, tau_preserving: bool = False) -> list[dict]:
    """All binary ring morphisms, by generator images with congruence closure.

    With ``tau_preserving`` the designated 2-units must correspond; this is
    the hypothesis under which the induced carrier map of the underlying
    3-fields is again a morphism.
    """
    gens = _ring_generators(src)

    def propagate(base: dict) -> dict | None:
        phi = dict(base)
        frontier = list(phi)
        while frontier:
            new = []
            for a in frontier:
                for b in list(phi):
                    for x, y in ((a, b), (b, a)):
                        for op_s, op_d in ((src.add, dst.add), (src.mul, dst.mul)):
                            v = op_s(x, y)
                            w = op_d(phi[x], phi[y])
                            if v in phi:
                                if phi[v] != w:
                                    return None
                            else:
                                phi[v] = w
                                new.append(v)
            frontier = new
        return phi

    results: list[dict] = []
    seed = {src.zero: dst.zero}
    if tau_preserving:
        seed[src.tau] = dst.tau

    def search(phi: dict):
        missing = [g for g in gens if g not in phi]
        if not missing:
            if len(phi) == len(src.elements):
                results.append(phi)
            return
        g = missing[0]
        for y in dst.elements:
            closed = propagate({**phi, g: y})
            if closed is not None:
                search(closed)

    start = propagate(seed)
    if start is not None:
        search(start)
    uniq = []
    seen = set()
    for phi in results:
        key = tuple(sorted((repr(k), repr(v)) for k, v in phi.items()))
        if key not in seen:
            seen.add(key)
            uniq.append(phi)
    return uniq


def lift_field_morphism(q1: QRing, q2: QRing, phi: dict) -> dict:
    """Q(phi): q_{1,f} -> q_{1, phi(f)} for a 3-field morphism phi."""
    return {
        q1.from_field_elem[f]: q2.from_field_elem[phi[f]]
        for f in q1.source_field.elements
    }


def is_ring_morphism(src: QRing, dst: QRing, psi: dict) -> bool:
    for a in src.elements:
        for b in src.elements:
            if psi[src.add(a, b)] != dst.add(psi[a], psi[b]):
                return False
            if psi[src.mul(a, b)] != dst.mul(psi[a], psi[b]):
                return False
    return True


def induced_field_map(q1: QRing, q2: QRing, psi: dict) -> dict:
    """The carrier map defined by psi(q_{1,f}) = q_{1, Phi(f)}."""
    return {
        f: q2.to_field_elem[psi[q1.from_field_elem[f]]]
        for f in q1.source_field.elements
    }


def field_from_qring(q: QRing) -> ThreeField:
    """Reconstruct the 3-field on the carrier of a Q-ring.

    Ternary sum f1+f2+f3-tau, product tau-f-g+fg, unit tau, querelement
    tau-f, inverse the #-involution.
    """
    neg_cache = {x: q.neg(x) for x in q.elements}

    def tadd(a, b, c):
        return q.add(q.add(q.add(a, b), c), neg_cache[q.tau])

    def mul(a, b):
        return q.add(q.add(q.add(q.tau, neg_cache[a]), neg_cache[b]), q.mul(a, b))

    return ThreeField(
        label=f"F({q.label})",
        kind="reconstructed",
        params={"source": q.label},
        elements=list(q.elements),
        unit=q.tau,
        tadd=tadd,
        mul=mul,
        quer=lambda a: q.add(q.tau, neg_cache[a]),
        inv=q.hash_,
        render=q.render,
    )


def qring_from_tables(label: str, elements: list, add_table, mul_table, tau) -> QRing:
    """Abstract Q-ring from explicit tables; # derived by scan (must be unique)."""
    idx = {e: i for i, e in enumerate(elements)}

    def add(a, b):
        return add_table[idx[a]][idx[b]]

    def mul(a, b):
        return mul_table[idx[a]][idx[b]]

    zero = next(
        e for e in elements if all(add(e, x) == x for x in elements)
    )
    hash_map = {}
    for x in elements:
        candidates = [p for p in elements if mul(x, p) == add(x, p)]
        hash_map[x] = candidates[0] if candidates else x
    return QRing(
        label=label,
        elements=list(elements),
        add=add,
        mul=mul,
        tau=tau,
        hash_=hash_map.__getitem__,
        zero=zero,
    )


# ---------------------------------------------------------------------------
# ideals of F0(n)


@dataclass
class Ideal:
    """Ideal of the ring of pairs of F0(n): all polynomials of degree >= k."""

    n: int
    k: int
    members: frozenset

    @property
    def generator(self) -> TruncPoly:
        return TruncPoly.from_exponents(self.n, [self.k])

    def __len__(self) -> int:
        return len(self.members)


def ideal_chain(n: int) -> list[Ideal]:
    """The structural ideals I_k, k = 1..n-1."""
    if not 2 <= n <= 16:
        raise ValueError("n must be in 2..16")
    out = []
    for k in range(1, n):
        low = (1 << k) - 1
        members = frozenset(
            TruncPoly(n, m) for m in range(1 << n) if m & low == 0
        )
        out.append(Ideal(n, k, members))
    return out


def ideals(n: int, exhaustive_limit: int = 8) -> dict:
    """Structural ideal chain, cross-checked against closure enumeration.

    The exhaustive path enumerates every nonzero additively closed,
    U-multiplication-closed subset generated from single elements; it must
    find exactly the chain.
    """
    chain = ideal_chain(n)
    result = {
        "n": n,
        "chain": chain,
        "intersection_law": all(
            chain[max(s, t) - 1].members == chain[s - 1].members & chain[t - 1].members
            for s in range(1, n)
            for t in range(1, n)
        ),
        "sum_law": all(
            chain[min(s, t) - 1].members
            == frozenset(
                a + b for a in chain[s - 1].members for b in chain[t - 1].members
            )
            for s in range(1, n)
            for t in range(1, n)
        ),
        "exhaustive_match": None,
    }
    if n <= exhaustive_limit:
        found = all_ideals(make_f0(n))
        result["exhaustive_match"] = sorted(found, key=len) == sorted(
            (i.members for i in chain), key=len
        )
    return result


# ---------------------------------------------------------------------------
# truncation and Frobenius morphisms


@dataclass
class QuotientData:
    n: int
    k: int
    quotient: ThreeField
    morphism: dict
    is_morphism: bool
    kernel_matches_chain: bool


def truncation_morphism(n: int, k: int) -> Callable[[TruncPoly], TruncPoly]:
    def mu(p: TruncPoly) -> TruncPoly:
        return p.truncate(k)

    return mu


def quotient(n: int, k: int) -> QuotientData:
    """F0(n) / I_k realized as F0(k) through degree truncation."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    big = make_f0(n)
    small = make_f0(k)
    mu = truncation_morphism(n, k)
    phi = {f: mu(f) for f in big.elements}

    ok = phi[big.unit] == small.unit
    for a in big.elements:
        for b in big.elements:
            if phi[big.mul(a, b)] != small.mul(phi[a], phi[b]):
                ok = False
            if phi[big.hsum(a, b)] != small.hsum(phi[a], phi[b]):
                ok = False

    if k == n:
        kernel_ok = all(phi[f] == f for f in big.elements)
    else:
        kernel = {f for f in big.elements if phi[f] == small.unit}
        expected = {
            TruncPoly(n, 1 ^ q.mask) for q in ideal_chain(n)[k - 1].members
        }
        kernel_ok = kernel == expected
    return QuotientData(n, k, small, phi, ok, kernel_ok)


def frobenius_kernel(n: int) -> frozenset:
    """Kernel ideal of the squaring morphism on F0(n): I_ceil(n/2)."""
    f = make_f0(n)
    kernel_elems = {x for x in f.elements if f.mul(x, x) == f.unit}
    return frozenset(TruncPoly(n, x.mask ^ 1) for x in kernel_elems)


# ---------------------------------------------------------------------------
# subfields cut out by ideals


def subfield_from_ideal(field: ThreeField, members: frozenset) -> ThreeField:
    """The carrier 1 + J with inherited operations, verified closed."""
    amb = ambient_of(field)
    if not _is_ideal(amb, members):
        raise ValueError("the given subset is not an ideal of the ambient ring")
    lifted = sorted(amb.add(amb.one, j) for j in members)
    for x in lifted:
        if amb.grade(x) != 1:
            raise ValueError("1 + J left the unit part; not an ideal of Q")
    carrier = sorted(amb.to_field(x) for x in lifted)
    elems = set(carrier)
    # ternary closure reduces to the hsum/usum pair loops
    for a in carrier:
        if field.inv(a) not in elems:
            raise ValueError("1 + J is not closed under inversion")
        for b in carrier:
            if field.mul(a, b) not in elems:
                raise ValueError("1 + J is not closed under multiplication")
            if field.hsum(a, b) not in elems or field.usum(a, b) not in elems:
                raise ValueError("1 + J is not closed under ternary addition")
    return ThreeField(
        label=f"1+J inside {field.label}",
        kind="ideal-subfield",
        params={"ideal_size": len(members)},
        elements=carrier,
        unit=field.unit,
        tadd=field.tadd,
        mul=field.mul,
        quer=field.quer,
        inv=field.inv,
        render=field.render,
    )


def _is_ideal(amb: AmbientRing, members: frozenset) -> bool:
    if amb.zero not in members:
        return False
    for x in members:
        for y in members:
            if amb.add(x, y) not in members:
                return False
        for u in amb.elements:
            if amb.mul(u, x) not in members:
                return False
    return True
