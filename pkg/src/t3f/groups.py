"""Small finite groups: tables, fingerprints, identification, cycle graphs.

Everything here is desk scale.  The reference catalog is built
constructively (cyclic and dihedral groups, direct products, and the
specific semidirect products needed to name the truncated substitution
groups); no external group database is consulted.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from math import lcm


@dataclass(frozen=True)
class GroupFingerprint:
    order: int
    abelian: bool
    order_histogram: tuple[tuple[int, int], ...]
    center_order: int
    derived_order: int
    exponent: int


class FiniteGroup:
    """Multiplication table on indices 0..m-1 with printable labels."""

    def __init__(self, name: str, table: list[list[int]], labels: list[str] | None = None):
        self.name = name
        self.table = table
        self.order = len(table)
        self.labels = labels or [f"g{i}" for i in range(self.order)]
        self._identity: int | None = None
        self._orders: list[int] | None = None

    @staticmethod
    def from_op(name: str, elements: list, op, labels=None) -> "FiniteGroup":
        idx = {e: i for i, e in enumerate(elements)}
        table = [[idx[op(a, b)] for b in elements] for a in elements]
        return FiniteGroup(name, table, labels)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    @property
    def identity(self) -> int:
        if self._identity is None:
            self._identity = next(
                e
                for e in range(self.order)
                if all(self.table[e][j] == j == self.table[j][e] for j in range(self.order))
            )
        return self._identity

    def inverse(self, i: int) -> int:
        e = self.identity
        return next(j for j in range(self.order) if self.table[i][j] == e)

    def element_order(self, i: int) -> int:
        if self._orders is None:
            self._orders = [0] * self.order
        if self._orders[i]:
            return self._orders[i]
        e = self.identity
        k, x = 1, i
        while x != e:
            x = self.table[x][i]
            k += 1
        self._orders[i] = k
        return k

    def is_abelian(self) -> bool:
        return all(
            self.table[i][j] == self.table[j][i]
            for i in range(self.order)
            for j in range(i)
        )

    def check_group_axioms(self, associativity_limit: int = 64) -> bool:
        """Closure is structural; identity/inverses always checked, associativity
        exhaustively up to the given order."""
        if any(
            not 0 <= v < self.order for row in self.table for v in row
        ):
            return False
        _ = self.identity
        for i in range(self.order):
            self.inverse(i)
        if self.order <= associativity_limit:
            r = range(self.order)
            for a in r:
                ta = self.table[a]
                for b in r:
                    tab = ta[b]
                    tb = self.table[b]
                    for c in r:
                        if self.table[tab][c] != ta[tb[c]]:
                            return False
        return True

    def subgroup_closure(self, gens) -> frozenset:
        current = {self.identity, *gens}
        frontier = list(current)
        while frontier:
            new = []
            for a in frontier:
                for b in list(current):
                    for v in (self.table[a][b], self.table[b][a]):
                        if v not in current:
                            current.add(v)
                            new.append(v)
            frontier = new
        return frozenset(current)

    def center(self) -> frozenset:
        return frozenset(
            i
            for i in range(self.order)
            if all(self.table[i][j] == self.table[j][i] for j in range(self.order))
        )

    def derived_subgroup(self) -> frozenset:
        comms = {
            self.table[self.table[a][b]][
                self.table[self.inverse(a)][self.inverse(b)]
            ]
            for a in range(self.order)
            for b in range(self.order)
        }
        return self.subgroup_closure(comms)

    def fingerprint(self) -> GroupFingerprint:
        hist: dict[int, int] = {}
        for i in range(self.order):
            o = self.element_order(i)
            hist[o] = hist.get(o, 0) + 1
        return GroupFingerprint(
            order=self.order,
            abelian=self.is_abelian(),
            order_histogram=tuple(sorted(hist.items())),
            center_order=len(self.center()),
            derived_order=len(self.derived_subgroup()),
            exponent=lcm(*hist.keys()),
        )

    def is_normal(self, subgroup: frozenset) -> bool:
        return all(
            self.table[self.table[g][h]][self.inverse(g)] in subgroup
            for g in range(self.order)
            for h in subgroup
        )

    # -- isomorphism testing ------------------------------------------------

    def _generating_sequence(self) -> list[int]:
        gens: list[int] = []
        span = self.subgroup_closure(gens)
        for x in sorted(range(self.order), key=lambda i: -self.element_order(i)):
            if x not in span:
                gens.append(x)
                span = self.subgroup_closure(gens)
                if len(span) == self.order:
                    break
        return gens

    def isomorphism_to(self, other: "FiniteGroup") -> dict | None:
        if self.order != other.order:
            return None
        if self.fingerprint() != other.fingerprint():
            return None
        gens = self._generating_sequence()
        by_order: dict[int, list[int]] = {}
        for j in range(other.order):
            by_order.setdefault(other.element_order(j), []).append(j)

        def propagate(base: dict) -> dict | None:
            phi = dict(base)
            frontier = list(phi)
            while frontier:
                new = []
                for a in frontier:
                    for b in list(phi):
                        for x, y in ((a, b), (b, a)):
                            v = self.table[x][y]
                            w = other.table[phi[x]][phi[y]]
                            if v in phi:
                                if phi[v] != w:
                                    return None
                            else:
                                phi[v] = w
                                new.append(v)
                frontier = new
            if len(set(phi.values())) != len(phi):
                return None
            return phi

        def search(phi: dict) -> dict | None:
            if len(phi) == self.order:
                return phi
            g = next(x for x in gens if x not in phi)
            used = set(phi.values())
            for y in by_order[self.element_order(g)]:
                if y in used:
                    continue
                closed = propagate({**phi, g: y})
                if closed is not None:
                    result = search(closed)
                    if result is not None:
                        return result
            return None

        start = propagate({self.identity: other.identity})
        return search(start) if start is not None else None

    def automorphisms(self) -> list[dict]:
        gens = self._generating_sequence()
        by_order: dict[int, list[int]] = {}
        for j in range(self.order):
            by_order.setdefault(self.element_order(j), []).append(j)
        results = []

        def propagate(base):
            phi = dict(base)
            frontier = list(phi)
            while frontier:
                new = []
                for a in frontier:
                    for b in list(phi):
                        for x, y in ((a, b), (b, a)):
                            v = self.table[x][y]
                            w = self.table[phi[x]][phi[y]]
                            if v in phi:
                                if phi[v] != w:
                                    return None
                            else:
                                phi[v] = w
                                new.append(v)
                frontier = new
            return phi

        def search(phi):
            if len(phi) == self.order:
                if len(set(phi.values())) == self.order:
                    results.append(phi)
                return
            g = next(x for x in gens if x not in phi)
            for y in by_order[self.element_order(g)]:
                closed = propagate({**phi, g: y})
                if closed is not None and len(set(closed.values())) == len(closed):
                    search(closed)

        search(propagate({self.identity: self.identity}))
        return results

    # -- cycle graph ---------------------------------------------------------

    def maximal_cyclic_subgroups(self) -> list[tuple[int, frozenset]]:
        """Pairs (generator, member set), one per maximal cyclic subgroup."""
        cyclic: dict[frozenset, int] = {}
        for x in range(self.order):
            members = []
            y = x
            while y != self.identity:
                members.append(y)
                y = self.table[y][x]
            key = frozenset(members + [self.identity])
            if key not in cyclic:
                cyclic[key] = x
        maximal = [
            (gen, s)
            for s, gen in cyclic.items()
            if not any(s < t for t in cyclic if t != s)
        ]
        maximal.sort(key=lambda p: (len(p[1]), p[0]))
        return maximal

    def cycle_graph_edges(self) -> list[tuple[int, int]]:
        edges: set[frozenset] = set()
        for gen, members in self.maximal_cyclic_subgroups():
            if len(members) == 1:
                continue
            path = [self.identity]
            y = gen
            while y != self.identity:
                path.append(y)
                y = self.table[y][gen]
            path.append(self.identity)
            for a, b in zip(path, path[1:]):
                if a != b:
                    edges.add(frozenset((a, b)))
        return sorted(tuple(sorted(e)) for e in edges)

    def cycle_graph_dot(self, conjugation_pairs=None) -> str:
        lines = [f'graph "{self.name}" {{', "  node [shape=circle];"]
        for i in range(self.order):
            lines.append(f'  "{self.labels[i]}";')
        for a, b in self.cycle_graph_edges():
            lines.append(f'  "{self.labels[a]}" -- "{self.labels[b]}";')
        for a, b in conjugation_pairs or []:
            lines.append(
                f'  "{self.labels[a]}" -- "{self.labels[b]}" [style=dotted];'
            )
        lines.append("}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# constructions


def cyclic_group(m: int) -> FiniteGroup:
    return FiniteGroup.from_op(f"C{m}", list(range(m)), lambda a, b: (a + b) % m)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    elements = list(iproduct(range(g.order), range(h.order)))
    return FiniteGroup.from_op(
        f"{g.name}x{h.name}",
        elements,
        lambda a, b: (g.table[a[0]][b[0]], h.table[a[1]][b[1]]),
    )


def dihedral_group(m: int) -> FiniteGroup:
    """Order 2m: rotations and reflections of the m-gon."""
    elements = list(iproduct(range(m), range(2)))

    def op(a, b):
        (i, s), (j, t) = a, b
        return ((i + (j if s == 0 else -j)) % m, s ^ t)

    return FiniteGroup.from_op(f"D{m}", elements, op)


def quaternion_group() -> FiniteGroup:
    units = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    base = {
        ("1", "1"): "1", ("i", "i"): "-1", ("j", "j"): "-1", ("k", "k"): "-1",
        ("i", "j"): "k", ("j", "k"): "i", ("k", "i"): "j",
        ("j", "i"): "-k", ("k", "j"): "-i", ("i", "k"): "-j",
    }

    def op(a, b):
        sa, ca = (-1, a[1:]) if a.startswith("-") else (1, a)
        sb, cb = (-1, b[1:]) if b.startswith("-") else (1, b)
        if ca == "1":
            core = cb
        elif cb == "1":
            core = ca
        else:
            core = base[(ca, cb)]
        s = sa * sb
        if core.startswith("-"):
            s, core = -s, core[1:]
        return core if s == 1 else "-" + core

    return FiniteGroup.from_op("Q8", units, op, labels=units)


def semidirect_product(n: FiniteGroup, h: FiniteGroup, action: dict[int, dict[int, int]], name: str | None = None) -> FiniteGroup:
    """(a, x)(b, y) = (a * action[x](b), x y); action maps h-elements to
    automorphism tables of n."""
    elements = list(iproduct(range(n.order), range(h.order)))

    def op(p, q):
        (a, x), (b, y) = p, q
        return (n.table[a][action[x][b]], h.table[x][y])

    return FiniteGroup.from_op(name or f"{n.name}:{h.name}", elements, op)


def klein_four() -> FiniteGroup:
    g = direct_product(cyclic_group(2), cyclic_group(2))
    g.name = "C2xC2"
    return g


def _involutive_actions(n: FiniteGroup, h: FiniteGroup) -> list[dict]:
    """All actions of h on n, i.e. homomorphisms h -> Aut(n).

    Generator images range over the full automorphism group; assignments
    that violate the relations of h are rejected during word extension.
    """
    autos = n.automorphisms()
    by_perm = [tuple(a[i] for i in range(n.order)) for a in autos]
    identity_perm = tuple(range(n.order))

    def perm_mul(p, q):
        return tuple(p[q[i]] for i in range(n.order))

    actions = []
    h_gens = h._generating_sequence()
    for assignment in iproduct(range(len(by_perm)), repeat=len(h_gens)):
        perms = {g: by_perm[k] for g, k in zip(h_gens, assignment)}
        # extend to all of h by words; reject inconsistent assignments
        known = {h.identity: identity_perm}
        ok = True
        frontier = [h.identity]
        while frontier and ok:
            new = []
            for x in frontier:
                for g in h_gens:
                    y = h.table[x][g]
                    p = perm_mul(known[x], perms[g])
                    if y in known:
                        if known[y] != p:
                            ok = False
                            break
                    else:
                        known[y] = p
                        new.append(y)
                if not ok:
                    break
            frontier = new
        if ok and len(known) == h.order:
            actions.append({x: {i: p[i] for i in range(n.order)} for x, p in known.items()})
    return actions


# ---------------------------------------------------------------------------
# identification


def _abelian_2_groups(order: int) -> list[FiniteGroup]:
    out = []

    def partitions(k, max_part):
        if k == 0:
            yield []
            return
        for p in range(min(k, max_part), 0, -1):
            for rest in partitions(k - p, p):
                yield [p] + rest

    e = order.bit_length() - 1
    if 1 << e != order:
        return [cyclic_group(order)]
    for part in partitions(e, e):
        g = cyclic_group(1 << part[0])
        for p in part[1:]:
            g = direct_product(g, cyclic_group(1 << p))
        g.name = "x".join(f"C{1 << p}" for p in part)
        out.append(g)
    return out


def reference_groups(order: int) -> list[FiniteGroup]:
    """Catalog entries of the given order, abelian and named semidirects."""
    refs = list(_abelian_2_groups(order))
    if order % 2 == 0 and order >= 4:
        refs.append(dihedral_group(order // 2))
    if order == 8:
        refs.append(quaternion_group())
    if order == 16:
        refs.append(g16_reference())
    if order == 32:
        refs.extend(g32_candidates())
    return refs


def g16_reference() -> FiniteGroup:
    """K4 : C4 with C4 swapping the two K4 generators; equals (C4xC2):C2."""
    k4 = klein_four()
    c4 = cyclic_group(4)
    swap = {0: 0, 1: 2, 2: 1, 3: 3}  # exchange the two factors of K4
    ident = {i: i for i in range(4)}
    action = {0: ident, 1: swap, 2: ident, 3: swap}
    g = semidirect_product(k4, c4, action, name="(C4xC2):C2")
    return g


def g32_candidates() -> list[FiniteGroup]:
    """All ((C4xC2):C2) : C2 for involutive actions, deduplicated by fingerprint."""
    base = g16_reference()
    c2 = cyclic_group(2)
    seen = set()
    out = []
    for action in _involutive_actions(base, c2):
        g = semidirect_product(base, c2, action, name="((C4xC2):C2):C2")
        fp = g.fingerprint()
        if fp not in seen:
            seen.add(fp)
            out.append(g)
    return out


def identify_group(g: FiniteGroup) -> tuple[str, GroupFingerprint]:
    """Name by fingerprint match plus an isomorphism test against the catalog."""
    if g.order > 64:
        raise ValueError("identification capped at order 64")
    fp = g.fingerprint()
    for ref in reference_groups(g.order):
        if ref.fingerprint() == fp and g.isomorphism_to(ref) is not None:
            return ref.name, fp
    return "unidentified", fp
