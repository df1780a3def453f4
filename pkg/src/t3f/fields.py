"""Finite unital 3-fields and their concrete constructions.

A 3-field here is a finite carrier with a ternary addition, a binary
multiplication with unit, additive querelements and multiplicative inverses,
and no zero element.  Every construction also exposes (where available) the
graded local ring it embeds into, with grade 1 on the field and grade 0 on
the non-units.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from itertools import product as iproduct
from math import prod
from typing import Callable, Iterable

from .poly2 import MultiTruncPoly, TruncPoly, all_trunc_polys


class CarrierTooLargeError(ValueError):
    """Requested construction exceeds the documented desk-scale caps."""


# ---------------------------------------------------------------------------
# graded ambient rings


@dataclass
class AmbientRing:
    """Unital commutative local ring with residue field GF(2).

    ``grade`` is the ring morphism onto GF(2); the grade-1 part is the
    3-field of units, the grade-0 part its ring of pairs.
    """

    label: str
    iter_elements: Callable[[], Iterable]
    add: Callable
    mul: Callable
    neg: Callable
    zero: object
    one: object
    grade: Callable
    render: Callable = str
    # translation between field elements and their grade-1 ambient images;
    # identity for the concrete carriers, tagging for the generic one
    from_field: Callable = lambda f: f
    to_field: Callable = lambda x: x

    _elements: list | None = None

    @property
    def elements(self) -> list:
        if self._elements is None:
            self._elements = sorted(self.iter_elements())
        return self._elements

    def grade0(self) -> list:
        return [x for x in self.elements if self.grade(x) == 0]

    def grade1(self) -> list:
        return [x for x in self.elements if self.grade(x) == 1]


def _ambient_mod2n(n: int) -> AmbientRing:
    size = 1 << n
    return AmbientRing(
        label=f"Z/2^{n}",
        iter_elements=lambda: range(size),
        add=lambda a, b: (a + b) % size,
        mul=lambda a, b: (a * b) % size,
        neg=lambda a: (-a) % size,
        zero=0,
        one=1,
        grade=lambda a: a & 1,
    )


def _ambient_trunc(n: int) -> AmbientRing:
    return AmbientRing(
        label=f"GF(2)[t]/t^{n}",
        iter_elements=lambda: all_trunc_polys(n),
        add=lambda a, b: a + b,
        mul=lambda a, b: a * b,
        neg=lambda a: a,
        zero=TruncPoly.zero(n),
        one=TruncPoly.one(n),
        grade=lambda a: a.mask & 1,
    )


def _ambient_multi(bounds: tuple[int, ...]) -> AmbientRing:
    cells = prod(bounds)
    return AmbientRing(
        label="GF(2)[" + ",".join(f"t{i+1}" for i in range(len(bounds))) + "]/"
        + "(" + ",".join(f"t{i+1}^{n}" for i, n in enumerate(bounds)) + ")",
        iter_elements=lambda: (MultiTruncPoly(bounds, m) for m in range(1 << cells)),
        add=lambda a, b: a + b,
        mul=lambda a, b: a * b,
        neg=lambda a: a,
        zero=MultiTruncPoly.zero(bounds),
        one=MultiTruncPoly.one(bounds),
        grade=lambda a: a.constant_term(),
    )


def _ambient_pair(u1: AmbientRing, u2: AmbientRing) -> AmbientRing:
    # U(F1 x F2) is the same-grade part of U(F1) (+) U(F2), not the full sum
    def elems():
        for a in u1.elements:
            for b in u2.elements:
                if u1.grade(a) == u2.grade(b):
                    yield (a, b)

    return AmbientRing(
        label=f"[{u1.label}] * [{u2.label}] (matched grading)",
        iter_elements=elems,
        add=lambda a, b: (u1.add(a[0], b[0]), u2.add(a[1], b[1])),
        mul=lambda a, b: (u1.mul(a[0], b[0]), u2.mul(a[1], b[1])),
        neg=lambda a: (u1.neg(a[0]), u2.neg(a[1])),
        zero=(u1.zero, u2.zero),
        one=(u1.one, u2.one),
        grade=lambda a: u1.grade(a[0]),
        render=lambda a: f"({u1.render(a[0])}, {u2.render(a[1])})",
    )


# ---------------------------------------------------------------------------
# the 3-field abstraction


class ThreeField:
    """Finite unital 3-field given by closures over a concrete carrier.

    Element identity is plain equality of the carrier values; the carrier is
    kept in canonically sorted order so that every derived listing, table and
    report is deterministic.
    """

    def __init__(
        self,
        label: str,
        kind: str,
        params: dict,
        elements,
        unit,
        tadd: Callable,
        mul: Callable,
        quer: Callable,
        inv: Callable,
        render: Callable = str,
        ambient: AmbientRing | None = None,
        size: int | None = None,
    ):
        self.label = label
        self.kind = kind
        self.params = params
        self.unit = unit
        self.tadd = tadd
        self.mul = mul
        self.quer = quer
        self.inv = inv
        self.render = render
        self.ambient = ambient
        self._iter_elements = elements if callable(elements) else None
        self._elements = None if callable(elements) else sorted(elements)
        self._size = size if size is not None else len(self._elements)
        self._index: dict | None = None

    @property
    def size(self) -> int:
        return self._size

    @property
    def elements(self) -> list:
        if self._elements is None:
            self._elements = sorted(self._iter_elements())
        return self._elements

    def index(self, x) -> int:
        if self._index is None:
            self._index = {e: i for i, e in enumerate(self.elements)}
        return self._index[x]

    def has(self, x) -> bool:
        if self._index is None:
            self._index = {e: i for i, e in enumerate(self.elements)}
        return x in self._index

    # binary reductions of the ternary sum; any ternary sum decomposes as
    # tadd(a,b,c) = usum(hsum(a,b), c)
    def hsum(self, a, b):
        return self.tadd(a, b, self.unit)

    def usum(self, a, b):
        return self.tadd(a, self.quer(self.unit), b)

    def power(self, a, k: int):
        result = self.unit
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def mul_order(self, a) -> int:
        k = 1
        x = a
        while x != self.unit:
            x = self.mul(x, a)
            k += 1
            if k > self.size + 1:
                raise RuntimeError("element order exceeds carrier size; not a group")
        return k

    def mult_order_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for x in self.elements:
            o = self.mul_order(x)
            hist[o] = hist.get(o, 0) + 1
        return hist

    def to_json(self, carrier_limit: int = 4096, tables: bool = False) -> dict:
        out = {
            "label": self.label,
            "kind": self.kind,
            "params": self.params,
            "size": self.size,
            "characteristic": characteristic(self) if self.size <= carrier_limit else None,
        }
        if self.size <= carrier_limit:
            out["carrier"] = [self.render(x) for x in self.elements]
        if tables and self.size <= 256:
            els = self.elements
            out["mul_table"] = [
                [self.index(self.mul(a, b)) for b in els] for a in els
            ]
        return out

    def __repr__(self) -> str:
        return f"ThreeField({self.label}, size={self.size})"


# ---------------------------------------------------------------------------
# constructors


def make_tf(n: int) -> ThreeField:
    """Prime 3-field of odd residues modulo 2**n."""
    if n < 1:
        raise ValueError("n must be >= 1 (the size-1 prime field is TF(1))")
    if n > 20:
        raise CarrierTooLargeError("TF(n) supported for n <= 20")
    size = 1 << n
    return ThreeField(
        label=f"TF({n})",
        kind="tf",
        params={"n": n},
        elements=list(range(1, size, 2)),
        unit=1,
        tadd=lambda a, b, c: (a + b + c) % size,
        mul=lambda a, b: a * b % size,
        quer=lambda a: (-a) % size,
        inv=lambda a: pow(a, -1, size),
        ambient=_ambient_mod2n(n),
        size=size // 2,
    )


def make_f0(n: int) -> ThreeField:
    """Extension of {1} carried by units of GF(2)[t]/t^n with constant term 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > 24:
        raise CarrierTooLargeError("F0(n) supported for n <= 24")
    one = TruncPoly.one(n)
    return ThreeField(
        label=f"F0({n})",
        kind="f0",
        params={"n": n},
        elements=lambda: all_trunc_polys(n, constant_bit=1),
        unit=one,
        tadd=lambda a, b, c: TruncPoly(n, a.mask ^ b.mask ^ c.mask),
        mul=lambda a, b: a * b,
        quer=lambda a: a,
        inv=lambda a: a.inverse(),
        ambient=_ambient_trunc(n),
        size=1 << (n - 1),
    )


def make_multivariate(bounds) -> ThreeField:
    """Multivariate extension on GF(2)[t1..tk]/(t_i^{n_i}), constant coefficient 1."""
    bounds = tuple(int(b) for b in bounds)
    if not bounds or any(b < 1 for b in bounds):
        raise ValueError("bounds must be naturals >= 1")
    cells = prod(bounds)
    if cells > 1 << 16:
        raise CarrierTooLargeError("exponent box larger than 2^16 cells")
    label = f"F({','.join(str(b) for b in bounds)})"
    return ThreeField(
        label=label,
        kind="multi",
        params={"bounds": list(bounds)},
        elements=lambda: (
            MultiTruncPoly(bounds, m << 1 | 1) for m in range(1 << (cells - 1))
        ),
        unit=MultiTruncPoly.one(bounds),
        tadd=lambda a, b, c: MultiTruncPoly(bounds, a.mask ^ b.mask ^ c.mask),
        mul=lambda a, b: a * b,
        quer=lambda a: a,
        inv=lambda a: a.inverse(),
        ambient=_ambient_multi(bounds),
        size=1 << (cells - 1),
    )


def cartesian(f1: ThreeField, f2: ThreeField) -> ThreeField:
    """Cartesian product with pointwise operations (no zero, so a 3-field)."""
    ambient = None
    if f1.ambient is not None and f2.ambient is not None:
        ambient = _ambient_pair(f1.ambient, f2.ambient)
    return ThreeField(
        label=f"{f1.label} x {f2.label}",
        kind="cartesian",
        params={"factors": [f1.label, f2.label]},
        elements=[(a, b) for a in f1.elements for b in f2.elements],
        unit=(f1.unit, f2.unit),
        tadd=lambda a, b, c: (f1.tadd(a[0], b[0], c[0]), f2.tadd(a[1], b[1], c[1])),
        mul=lambda a, b: (f1.mul(a[0], b[0]), f2.mul(a[1], b[1])),
        quer=lambda a: (f1.quer(a[0]), f2.quer(a[1])),
        inv=lambda a: (f1.inv(a[0]), f2.inv(a[1])),
        render=lambda a: f"({f1.render(a[0])}, {f2.render(a[1])})",
        ambient=ambient,
    )


def from_tables(label: str, elements: list, unit, tadd_table, mul_table) -> ThreeField:
    """Build a (candidate) 3-field from explicit operation tables.

    Used for degenerate counterexamples in tests; quer/inv are found by scan
    and fall back to the identity where no witness exists.
    """
    idx = {e: i for i, e in enumerate(elements)}

    def tadd(a, b, c):
        return tadd_table[idx[a]][idx[b]][idx[c]]

    def mul(a, b):
        return mul_table[idx[a]][idx[b]]

    def quer(a):
        for cand in elements:
            if all(tadd(a, cand, s) == s for s in elements):
                return cand
        return a

    def inv(a):
        for cand in elements:
            if all(mul(mul(a, cand), s) == s for s in elements):
                return cand
        return a

    return ThreeField(label, "table", {}, list(elements), unit, tadd, mul, quer, inv)


def restrict_field(field: ThreeField, carrier, label: str | None = None) -> ThreeField:
    """A 3-field on a subset of the carrier, with the operations inherited.

    Closure is verified through the binary reductions; a non-closed subset is
    rejected.
    """
    carrier = sorted(set(carrier))
    members = set(carrier)
    if field.unit not in members:
        raise ValueError("subfield must contain the unit")
    for a in carrier:
        if field.inv(a) not in members or field.quer(a) not in members:
            raise ValueError("subset not closed under inverse/querelement")
        for b in carrier:
            if (
                field.mul(a, b) not in members
                or field.hsum(a, b) not in members
                or field.usum(a, b) not in members
            ):
                raise ValueError("subset not closed under the operations")
    sub_ambient = None
    if field.ambient is not None:
        parent = field.ambient

        def sub_elements():
            for f in carrier:
                yield parent.from_field(f)
                yield parent.add(parent.one, parent.from_field(f))

        sub_ambient = AmbientRing(
            label=f"U(sub) in {parent.label}",
            iter_elements=sub_elements,
            add=parent.add,
            mul=parent.mul,
            neg=parent.neg,
            zero=parent.zero,
            one=parent.one,
            grade=parent.grade,
            render=parent.render,
            from_field=parent.from_field,
            to_field=parent.to_field,
        )
    return ThreeField(
        label=label or f"subfield({len(carrier)}) of {field.label}",
        kind="subfield",
        params={"parent": field.label, "size": len(carrier)},
        elements=carrier,
        unit=field.unit,
        tadd=field.tadd,
        mul=field.mul,
        quer=field.quer,
        inv=field.inv,
        render=field.render,
        ambient=sub_ambient,
    )


def ambient_of(field: ThreeField) -> AmbientRing:
    """The graded local ring of a field; built generically when not attached.

    The generic carrier tags elements as (0, f) for the pair q_{1,f} = 1+f and
    (1, f) for the unit f itself; all ring operations reduce to field
    operations through the translation picture.
    """
    if field.ambient is not None:
        return field.ambient

    unit = field.unit

    def add(x, y):
        (ga, a), (gb, b) = x, y
        if ga == 0 and gb == 0:
            return (0, field.tadd(unit, a, b))
        if ga == 1 and gb == 1:
            return (0, field.tadd(a, b, field.quer(unit)))
        f, q = (a, b) if ga == 1 else (b, a)
        return (1, field.tadd(unit, f, q))

    def mul(x, y):
        (ga, a), (gb, b) = x, y
        if ga == 1 and gb == 1:
            return (1, field.mul(a, b))
        if ga == 0 and gb == 0:
            return (0, field.tadd(a, b, field.mul(a, b)))
        q, f = (a, b) if ga == 0 else (b, a)
        return (0, field.tadd(f, field.mul(q, f), field.quer(unit)))

    def neg(x):
        g, a = x
        if g == 1:
            return (1, field.quer(a))
        # -(1+a) = 1 + (-2-a)
        return (0, field.quer(field.tadd(unit, unit, a)))

    return AmbientRing(
        label=f"U({field.label})",
        iter_elements=lambda: [(0, f) for f in field.elements]
        + [(1, f) for f in field.elements],
        add=add,
        mul=mul,
        neg=neg,
        zero=(0, field.quer(unit)),
        one=(1, unit),
        grade=lambda x: x[0],
        render=lambda x: (f"q(1,{field.render(x[1])})" if x[0] == 0 else field.render(x[1])),
        from_field=lambda f: (1, f),
        to_field=lambda x: x[1],
    )


# ---------------------------------------------------------------------------
# axiom checking


@dataclass
class CheckResult:
    name: str
    status: str  # "pass" | "fail" | "flagged"
    mode: str  # "exhaustive" | "sampled(...)"
    witness: str | None = None
    detail: str = ""

    def line(self) -> str:
        extra = f"  [{self.witness}]" if self.witness else ""
        note = f"  -- {self.detail}" if self.detail else ""
        return f"{self.status.upper():7s} {self.name} ({self.mode}){extra}{note}"


@dataclass
class AxiomReport:
    label: str
    checks: list[CheckResult] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status == "fail"]

    def summary(self) -> str:
        lines = [f"axiom report for {self.label}:"]
        lines.extend("  " + c.line() for c in self.checks)
        lines.append(f"  => {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def _tuple_stream(sizes: tuple[int, ...], budget: int, seed: int):
    """All index tuples when the full grid fits the budget, else a seeded sample."""
    total = prod(sizes)
    if total <= budget:
        return iproduct(*(range(s) for s in sizes)), "exhaustive"
    rng = random.Random(seed)
    count = budget

    def sample():
        for _ in range(count):
            yield tuple(rng.randrange(s) for s in sizes)

    return sample(), f"sampled({count}, seed={seed})"


def check_axioms(field: ThreeField, budget: int = 2_000_000, seed: int = 0) -> AxiomReport:
    """Verify the 3-ring/3-field axioms, exhaustively where the budget allows.

    Also reports, for every y != 1, whether x + y - xy = 1 admits a
    nontrivial solution; for a finite field other than {1} it always does.
    """
    report = AxiomReport(field.label)
    els = field.elements
    n = len(els)
    r = field.render

    def run(name, sizes, predicate, witness_fmt):
        stream, mode = _tuple_stream(sizes, budget, seed)
        for tup in stream:
            if not predicate(*tup):
                report.checks.append(
                    CheckResult(name, "fail", mode, witness_fmt(*tup))
                )
                return
        report.checks.append(CheckResult(name, "pass", mode))

    one = field.unit
    run(
        "multiplicative unit (1*1*r = r)",
        (n,),
        lambda i: field.mul(one, field.mul(one, els[i])) == els[i]
        and field.mul(one, els[i]) == els[i],
        lambda i: f"r={r(els[i])}",
    )
    run(
        "multiplication commutative",
        (n, n),
        lambda i, j: field.mul(els[i], els[j]) == field.mul(els[j], els[i]),
        lambda i, j: f"a={r(els[i])}, b={r(els[j])}",
    )
    run(
        "multiplication associative",
        (n, n, n),
        lambda i, j, k: field.mul(field.mul(els[i], els[j]), els[k])
        == field.mul(els[i], field.mul(els[j], els[k])),
        lambda i, j, k: f"a={r(els[i])}, b={r(els[j])}, c={r(els[k])}",
    )

    def tadd_commutes(i, j, k):
        a, b, c = els[i], els[j], els[k]
        v = field.tadd(a, b, c)
        return (
            v == field.tadd(a, c, b)
            and v == field.tadd(b, a, c)
            and v == field.tadd(b, c, a)
            and v == field.tadd(c, a, b)
            and v == field.tadd(c, b, a)
        )

    run(
        "ternary addition totally commutative",
        (n, n, n),
        tadd_commutes,
        lambda i, j, k: f"a={r(els[i])}, b={r(els[j])}, c={r(els[k])}",
    )

    def tadd_assoc(i, j, k, l, m):
        a, b, c, d, e = els[i], els[j], els[k], els[l], els[m]
        v = field.tadd(field.tadd(a, b, c), d, e)
        return v == field.tadd(a, field.tadd(b, c, d), e) and v == field.tadd(
            a, b, field.tadd(c, d, e)
        )

    run(
        "ternary addition bracket-free",
        (n, n, n, n, n),
        tadd_assoc,
        lambda *t: "(" + ", ".join(r(els[i]) for i in t) + ")",
    )
    run(
        "querelements (r + quer(r) + s = s)",
        (n, n),
        lambda i, j: field.tadd(els[i], field.quer(els[i]), els[j]) == els[j],
        lambda i, j: f"r={r(els[i])}, s={r(els[j])}",
    )
    run(
        "multiplicative inverses (r * inv(r) * s = s)",
        (n, n),
        lambda i, j: field.mul(field.mul(els[i], field.inv(els[i])), els[j]) == els[j],
        lambda i, j: f"r={r(els[i])}, s={r(els[j])}",
    )
    run(
        "distributivity over ternary sums",
        (n, n, n, n),
        lambda s, i, j, k: field.mul(els[s], field.tadd(els[i], els[j], els[k]))
        == field.tadd(
            field.mul(els[s], els[i]),
            field.mul(els[s], els[j]),
            field.mul(els[s], els[k]),
        ),
        lambda s, i, j, k: f"s={r(els[s])} over ({r(els[i])}, {r(els[j])}, {r(els[k])})",
    )

    # embedding criterion: x + y - xy = 1, i.e. tadd(x, y, quer(x*y)) = 1
    if n > 1:
        bad = None
        for y in els:
            if y == one:
                continue
            if not any(
                x != one and field.tadd(x, y, field.quer(field.mul(x, y))) == one
                for x in els
            ):
                bad = y
                break
        report.checks.append(
            CheckResult(
                "embedding criterion has nontrivial solutions for every y != 1",
                "pass" if bad is None else "fail",
                "exhaustive",
                None if bad is None else f"y={r(bad)}",
                detail="finite field with more than one element never embeds into a binary field",
            )
        )
    else:
        report.checks.append(
            CheckResult(
                "embedding criterion vacuous on {1}",
                "pass",
                "exhaustive",
                detail="the one-element field embeds into every binary field",
            )
        )
    return report


def characteristic(field: ThreeField) -> int:
    """Size of the prime subfield generated by the unit."""
    seen = {field.unit}
    frontier = [field.unit]
    while frontier:
        new = []
        current = list(seen)
        for a in frontier:
            for b in current:
                for x in (
                    field.hsum(a, b),
                    field.usum(a, b),
                    field.mul(a, b),
                ):
                    if x not in seen:
                        seen.add(x)
                        new.append(x)
            for x in (field.quer(a), field.inv(a)):
                if x not in seen:
                    seen.add(x)
                    new.append(x)
        frontier = new
    return len(seen)


# ---------------------------------------------------------------------------
# multiplicative structure of F0(n)


@dataclass
class MultGroupDecomposition:
    n: int
    generators: list[TruncPoly]
    orders: list[int]
    corrected_formula_orders: list[int]
    corrected_formula_matches: bool
    printed_formula_orders: list[int | None]
    printed_formula_matches: bool
    multiplicities: dict[int, int]
    orders_multiply_to_carrier: bool
    unique_factorization_verified: bool | None


def mult_group_decomposition(n: int, factorization_limit: int = 12) -> MultGroupDecomposition:
    """Generators 1 + t^(2k+1) of the multiplicative group of F0(n).

    Orders are computed directly.  Two closed forms are evaluated against
    them: the corrected reading min{2^t : 2^t (2k+1) >= n} and the printed
    reading min{2^t : 2^t k >= n}, which fails at k = 0.
    """
    if not 2 <= n <= 20:
        raise ValueError("n must be in 2..20")
    f = make_f0(n)
    ks = [k for k in range(n) if 2 * k + 1 <= n - 1]
    gens = [TruncPoly.from_exponents(n, [0, 2 * k + 1]) for k in ks]
    orders = [f.mul_order(g) for g in gens]

    def min_pow2(lower: Callable[[int], bool]) -> int | None:
        for t in range(0, 64):
            if lower(1 << t):
                return 1 << t
        return None

    corrected = [min_pow2(lambda s, k=k: s * (2 * k + 1) >= n) for k in ks]
    printed = [min_pow2(lambda s, k=k: s * k >= n) for k in ks]

    mults: dict[int, int] = {}
    for o in orders:
        mults[o] = mults.get(o, 0) + 1

    verified = None
    if n <= factorization_limit:
        products = {}
        ok = True
        for alphas in iproduct(*(range(o) for o in orders)):
            p = f.unit
            for g, a in zip(gens, alphas):
                p = f.mul(p, f.power(g, a))
            if p in products:
                ok = False
                break
            products[p] = alphas
        verified = ok and len(products) == f.size

    return MultGroupDecomposition(
        n=n,
        generators=gens,
        orders=orders,
        corrected_formula_orders=corrected,
        corrected_formula_matches=corrected == orders,
        printed_formula_orders=printed,
        printed_formula_matches=printed == orders,
        multiplicities=mults,
        orders_multiply_to_carrier=prod(orders) == f.size,
        unique_factorization_verified=verified,
    )


# ---------------------------------------------------------------------------
# Cartesian decomposability


def _ideal_closure(amb: AmbientRing, gens: Iterable) -> frozenset:
    """Smallest subset containing gens, additively closed and U-multiplication closed."""
    universe = amb.elements
    current = {amb.zero}
    current.update(gens)
    frontier = list(current)
    while frontier:
        new = []
        for x in frontier:
            for y in list(current):
                s = amb.add(x, y)
                if s not in current:
                    current.add(s)
                    new.append(s)
            for u in universe:
                p = amb.mul(u, x)
                if p not in current:
                    current.add(p)
                    new.append(p)
        frontier = new
    return frozenset(current)


def all_ideals(field: ThreeField) -> list[frozenset]:
    """Every nonzero ideal of the ring of pairs, by closure-from-generators."""
    amb = ambient_of(field)
    q_part = amb.grade0()
    known: set[frozenset] = {frozenset({amb.zero})}
    frontier = [frozenset({amb.zero})]
    while frontier:
        nxt = []
        for ideal in frontier:
            for q in q_part:
                if q in ideal:
                    continue
                bigger = _ideal_closure(amb, set(ideal) | {q})
                if bigger not in known:
                    known.add(bigger)
                    nxt.append(bigger)
        frontier = nxt
    return sorted(
        (i for i in known if len(i) > 1),
        key=lambda s: (len(s), sorted(repr(x) for x in s)),
    )


@dataclass
class CartesianDecomposition:
    decomposable: bool
    witness: tuple[frozenset, frozenset] | None


def is_cartesian_decomposable(field: ThreeField, max_size: int = 64) -> CartesianDecomposition:
    """Search for a ring direct-sum splitting of the ring of pairs."""
    if field.size > max_size:
        raise CarrierTooLargeError(f"carrier {field.size} > {max_size}")
    amb = ambient_of(field)
    q_size = len(amb.grade0())
    ideals = all_ideals(field)
    zero = amb.zero
    for i, q1 in enumerate(ideals):
        for q2 in ideals[i:]:
            if len(q1) * len(q2) != q_size:
                continue
            if q1 & q2 == {zero}:
                return CartesianDecomposition(True, (q1, q2))
    return CartesianDecomposition(False, None)


# ---------------------------------------------------------------------------
# direct sum of units


@dataclass
class DirectSumUnits:
    fields: list[ThreeField]
    carrier: list[tuple]
    invertibles: list[tuple]
    equals_cartesian_product: bool


def direct_sum_units(fields: list[ThreeField]) -> DirectSumUnits:
    """Grading-sum-1 tuples in the sum of the ambient rings.

    The invertible elements (those with a power equal to (1,...,1)) are
    computed by brute force and compared with the plain Cartesian product.
    """
    if len(fields) % 2 == 0:
        raise ValueError("an odd number of fields is required to have a unit")
    ambients = [ambient_of(f) for f in fields]
    carrier = [
        tup
        for tup in iproduct(*(a.elements for a in ambients))
        if sum(a.grade(x) for a, x in zip(ambients, tup)) % 2 == 1
    ]
    ones = tuple(a.one for a in ambients)

    def tuple_mul(x, y):
        return tuple(a.mul(u, v) for a, u, v in zip(ambients, x, y))

    invertibles = []
    for tup in carrier:
        power = tup
        seen = {tup}
        invertible = tup == ones
        while not invertible:
            power = tuple_mul(power, tup)
            if power == ones:
                invertible = True
            elif power in seen:
                break
            seen.add(power)
        if invertible:
            invertibles.append(tup)

    expected = {
        tup for tup in iproduct(*(f.elements for f in fields))
    }
    return DirectSumUnits(
        fields=fields,
        carrier=carrier,
        invertibles=invertibles,
        equals_cartesian_product=set(invertibles) == expected,
    )


# ---------------------------------------------------------------------------
# ternary group algebra


class AbelianGroup:
    """Finite abelian group as a product of cyclic factors."""

    def __init__(self, orders: tuple[int, ...]):
        self.orders = tuple(int(o) for o in orders) or (1,)
        self.elements = [tuple(g) for g in iproduct(*(range(o) for o in self.orders))]
        self.index = {g: i for i, g in enumerate(self.elements)}
        self.identity = tuple(0 for _ in self.orders)

    def mul(self, a, b):
        return tuple((x + y) % o for x, y, o in zip(a, b, self.orders))

    def inv(self, a):
        return tuple((-x) % o for x, o in zip(a, self.orders))

    @property
    def size(self) -> int:
        return len(self.elements)


@dataclass
class GroupAlgebraReading:
    name: str
    carrier_size: int
    closed_under_mul: bool
    mul_witness: str | None
    closed_under_tadd: bool
    inverse_closed: bool | None
    is_3field: bool
    axiom_report: AxiomReport | None


@dataclass
class GroupAlgebraReport:
    modulus_exponent: int
    group_orders: tuple[int, ...]
    readings: list[GroupAlgebraReading]
    flagged: list[str]

    def reading(self, name: str) -> GroupAlgebraReading:
        for rd in self.readings:
            if rd.name == name:
                return rd
        raise KeyError(name)


def _ga_render(f: tuple, group: AbelianGroup) -> str:
    parts = []
    for coeff, g in zip(f, group.elements):
        if coeff == 0:
            continue
        if g == group.identity:
            parts.append(str(coeff))
        else:
            gname = "*".join(
                f"g{i+1}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(g)
                if e
            )
            parts.append(gname if coeff == 1 else f"{coeff}{gname}")
    return " + ".join(parts) if parts else "0"


def ternary_group_algebra(
    modulus_exponent: int, group_orders, axiom_budget: int | None = None
) -> GroupAlgebraReport:
    """Carve candidate 3-fields out of the group algebra (Z/2^n)[G].

    Three readings are reported: the literal one (unit coefficient at the
    group identity), its intersection with the unit group of the algebra,
    and the full unit group.  Closure under multiplication depends only on
    coefficient parities, so it is decided exactly on parity classes and a
    failing class is lifted to a concrete witness pair.
    """
    n = modulus_exponent
    if n < 1:
        raise ValueError("modulus exponent must be >= 1")
    orders = tuple(int(o) for o in group_orders) or (1,)
    for o in orders:
        if o < 1 or o & (o - 1):
            raise ValueError("group must be a finite abelian 2-group")
    group = AbelianGroup(orders)
    mod = 1 << n
    if mod * group.size > 1 << 16:
        raise CarrierTooLargeError("|R| * |G| exceeds 2^16")

    size = group.size
    id_idx = group.index[group.identity]
    inv_perm = [group.index[group.inv(g)] for g in group.elements]
    mul_idx = [
        [group.index[group.mul(a, b)] for b in group.elements] for a in group.elements
    ]

    def conv(a: tuple, b: tuple) -> tuple:
        out = [0] * size
        for i, ai in enumerate(a):
            if ai:
                row = mul_idx[i]
                for j, bj in enumerate(b):
                    if bj:
                        out[row[j]] = (out[row[j]] + ai * bj) % mod
        return tuple(out)

    one = tuple(1 if i == id_idx else 0 for i in range(size))

    def aug(f: tuple) -> int:
        return sum(f) % mod

    def rg_inverse(f: tuple) -> tuple | None:
        u = aug(f)
        if u % 2 == 0:
            return None
        uinv = pow(u, -1, mod)
        scaled = tuple(c * uinv % mod for c in f)
        m = tuple((a - b) % mod for a, b in zip(one, scaled))
        acc = one
        power = one
        for _ in range(64):
            power = conv(power, m)
            if all(c == 0 for c in power):
                break
            acc = tuple((x + y) % mod for x, y in zip(acc, power))
        else:
            return None
        candidate = tuple(c * uinv % mod for c in acc)
        return candidate if conv(f, candidate) == one else None

    # parity-class machinery: membership in every reading depends only on
    # coefficient parities, and so does the parity vector of a product
    def member_parity(reading: str, pf: tuple) -> bool:
        if reading == "literal":
            return pf[id_idx] == 1
        if reading == "unit-intersected":
            return pf[id_idx] == 1 and sum(pf) % 2 == 1
        return sum(pf) % 2 == 1  # full unit group

    def parity_conv(pf: tuple, pg: tuple) -> tuple:
        out = [0] * size
        for i, a in enumerate(pf):
            if a:
                row = mul_idx[i]
                for j, b in enumerate(pg):
                    if b:
                        out[row[j]] ^= 1
        return tuple(out)

    all_parities = list(iproduct((0, 1), repeat=size))

    def carrier_iter(reading: str):
        for f in iproduct(range(mod), repeat=size):
            if member_parity(reading, tuple(c & 1 for c in f)):
                yield f

    readings: list[GroupAlgebraReading] = []
    flagged: list[str] = []
    for reading in ("literal", "unit-intersected", "full-unit-group"):
        classes = [p for p in all_parities if member_parity(reading, p)]
        carrier_size = len(classes) * (mod // 2) ** size

        closed_mul = True
        witness = None
        for pf in classes:
            for pg in classes:
                if not member_parity(reading, parity_conv(pf, pg)):
                    closed_mul = False
                    f = tuple(pf)  # 0/1 residues realize the parity class
                    g = tuple(pg)
                    witness = (
                        f"({_ga_render(f, group)}) * ({_ga_render(g, group)})"
                        f" = {_ga_render(conv(f, g), group)}"
                    )
                    break
            if not closed_mul:
                break

        # ternary sums change parities by XOR of three vectors
        closed_tadd = all(
            member_parity(
                reading, tuple(a ^ b ^ c for a, b, c in zip(pf, pg, ph))
            )
            for pf in classes
            for pg in classes
            for ph in classes
        )

        inverse_closed: bool | None = None
        axiom_report = None
        is_3field = False
        if closed_mul and closed_tadd:
            carrier = list(carrier_iter(reading))
            inverse_closed = True
            for f in carrier:
                finv = rg_inverse(f)
                if finv is None or not member_parity(
                    reading, tuple(c & 1 for c in finv)
                ):
                    inverse_closed = False
                    break
            if inverse_closed:
                inv_cache = {f: rg_inverse(f) for f in carrier}
                budget = axiom_budget
                if budget is None:
                    budget = 2_000_000 if len(carrier) <= 64 else 50_000
                gfield = ThreeField(
                    label=f"F_G[{reading}] over Z/2^{n}, G={orders}",
                    kind="group-algebra",
                    params={"modulus_exponent": n, "group_orders": list(orders)},
                    elements=carrier,
                    unit=one,
                    tadd=lambda a, b, c: tuple(
                        (x + y + z) % mod for x, y, z in zip(a, b, c)
                    ),
                    mul=conv,
                    quer=lambda a: tuple((-x) % mod for x in a),
                    inv=inv_cache.__getitem__,
                    render=lambda f: _ga_render(f, group),
                )
                axiom_report = check_axioms(gfield, budget=budget)
                is_3field = axiom_report.passed

        readings.append(
            GroupAlgebraReading(
                name=reading,
                carrier_size=carrier_size,
                closed_under_mul=closed_mul,
                mul_witness=witness,
                closed_under_tadd=closed_tadd,
                inverse_closed=inverse_closed,
                is_3field=is_3field,
                axiom_report=axiom_report,
            )
        )
        if reading != "full-unit-group" and not (closed_mul and closed_tadd):
            flagged.append(
                f"reading '{reading}' is not closed for R=Z/2^{n}, G={orders}: "
                f"{witness}; the stated construction cannot be a 3-field as written"
            )

    return GroupAlgebraReport(
        modulus_exponent=n,
        group_orders=orders,
        readings=readings,
        flagged=flagged,
    )


# ---------------------------------------------------------------------------
# morphism and isomorphism search


def is_field_morphism(src: ThreeField, dst: ThreeField, phi: dict) -> bool:
    """Check a carrier map for unitality and compatibility with both operations.

    Ternary sums reduce to the two binary combinations hsum/usum, so pair
    loops suffice.
    """
    if phi.get(src.unit) != dst.unit:
        return False
    for a in src.elements:
        if a not in phi:
            return False
        if phi[src.quer(a)] != dst.quer(phi[a]):
            return False
    for a in src.elements:
        fa = phi[a]
        for b in src.elements:
            fb = phi[b]
            if phi[src.mul(a, b)] != dst.mul(fa, fb):
                return False
            if phi[src.hsum(a, b)] != dst.hsum(fa, fb):
                return False
            if phi[src.usum(a, b)] != dst.usum(fa, fb):
                return False
    return True


def _propagate(src: ThreeField, dst: ThreeField, base: dict) -> dict | None:
    """Close a partial map under the derived binary operations.

    Returns the closed partial map, or None on an inconsistency.
    """
    phi = dict(base)
    frontier = list(phi)
    while frontier:
        new = []
        for a in frontier:
            for op_s, op_d in (
                (src.mul, dst.mul),
                (src.hsum, dst.hsum),
                (src.usum, dst.usum),
            ):
                for b in list(phi):
                    for x, y in ((a, b), (b, a)):
                        v = op_s(x, y)
                        w = op_d(phi[x], phi[y])
                        if v in phi:
                            if phi[v] != w:
                                return None
                        else:
                            phi[v] = w
                            new.append(v)
            for op_s, op_d in ((src.quer, dst.quer), (src.inv, dst.inv)):
                v = op_s(a)
                w = op_d(phi[a])
                if v in phi:
                    if phi[v] != w:
                        return None
                else:
                    phi[v] = w
                    new.append(v)
        frontier = new
    return phi


def find_isomorphism(f1: ThreeField, f2: ThreeField, seed: int = 0) -> dict | None:
    """Backtracking generator-mapping search for a 3-field isomorphism."""
    if f1.size != f2.size:
        return None
    if f1.mult_order_histogram() != f2.mult_order_histogram():
        return None
    rng = random.Random(seed)
    orders2: dict[int, list] = {}
    for x in f2.elements:
        orders2.setdefault(f2.mul_order(x), []).append(x)

    def search(phi: dict) -> dict | None:
        if len(phi) == f1.size:
            return phi if is_field_morphism(f1, f2, phi) else None
        pending = next(a for a in f1.elements if a not in phi)
        used = set(phi.values())
        candidates = [
            y for y in orders2[f1.mul_order(pending)] if y not in used
        ]
        rng.shuffle(candidates)
        for y in candidates:
            closed = _propagate(f1, f2, {**phi, pending: y})
            if closed is None:
                continue
            if len(set(closed.values())) != len(closed):
                continue
            result = search(closed)
            if result is not None:
                return result
        return None

    start = _propagate(f1, f2, {f1.unit: f2.unit})
    if start is None:
        return None
    return search(start)


def find_morphisms(src: ThreeField, dst: ThreeField, limit: int | None = None) -> list[dict]:
    """All unital 3-field morphisms, found by generator mapping with closure."""
    results: list[dict] = []

    def search(phi: dict):
        if limit is not None and len(results) >= limit:
            return
        if len(phi) == src.size:
            if is_field_morphism(src, dst, phi):
                results.append(phi)
            return
        pending = next(a for a in src.elements if a not in phi)
        for y in dst.elements:
            closed = _propagate(src, dst, {**phi, pending: y})
            if closed is not None:
                search(closed)

    start = _propagate(src, dst, {src.unit: dst.unit})
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
