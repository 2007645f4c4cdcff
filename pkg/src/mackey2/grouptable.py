"""Finite groups as multiplication tables, with the subgroup combinatorics
used by the Burnside-type rings: subgroup enumeration, conjugacy classes,
centralizers, double cosets, and canonical labels."""

from __future__ import annotations

from itertools import product
from typing import FrozenSet, List, Optional, Sequence, Tuple

from .groupoid import StructureError


class GroupTable:
    """A finite group given by a total multiplication table.

    `mult[a][b]` is the product a·b ("a after b").  Element 0 need not be the
    identity; the identity is located at validation time.
    """

    __slots__ = ("order", "mult", "names", "name", "e", "_inv",
                 "_subgroups", "_subgroup_classes", "_canonical_key",
                 "_element_orders")

    def __init__(self, mult, names=None, name=""):
        self.mult = tuple(tuple(int(x) for x in row) for row in mult)
        self.order = len(self.mult)
        self.name = name
        self.names = tuple(names) if names is not None else tuple(
            str(i) for i in range(self.order))
        self.e = None
        self._inv = None
        self._subgroups = None
        self._subgroup_classes = None
        self._canonical_key = None
        self._element_orders = None
        self._locate_identity()

    def _locate_identity(self):
        n = self.order
        for row in self.mult:
            if len(row) != n:
                raise StructureError("multiplication table is not square")
            for x in row:
                if not (0 <= x < n):
                    raise StructureError("table entry out of range")
        for e in range(n):
            if all(self.mult[e][b] == b and self.mult[b][e] == b for b in range(n)):
                self.e = e
                break
        if self.e is None:
            raise StructureError("table has no two-sided identity")
        inv = [None] * n
        for a in range(n):
            for b in range(n):
                if self.mult[a][b] == self.e and self.mult[b][a] == self.e:
                    inv[a] = b
                    break
            if inv[a] is None:
                raise StructureError(f"element {a} is not invertible")
        self._inv = tuple(inv)

    def validate(self):
        n = self.order
        for a in range(n):
            for b in range(n):
                ab = self.mult[a][b]
                for c in range(n):
                    if self.mult[ab][c] != self.mult[a][self.mult[b][c]]:
                        raise StructureError(
                            f"associativity fails at ({a},{b},{c})")
        return True

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def conj(self, g: int, a: int) -> int:
        """g·a·g⁻¹."""
        return self.mult[self.mult[g][a]][self._inv[g]]

    def element_order(self, a: int) -> int:
        if self._element_orders is None:
            orders = []
            for x in range(self.order):
                k, y = 1, x
                while y != self.e:
                    y = self.mult[y][x]
                    k += 1
                orders.append(k)
            self._element_orders = tuple(orders)
        return self._element_orders[a]

    def elements(self):
        return range(self.order)

    # -- subgroups -------------------------------------------------------

    def closure(self, gens) -> FrozenSet[int]:
        elems = {self.e}
        frontier = [self.e]
        gens = list(gens)
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = self.mult[x][g]
                    if y not in elems:
                        elems.add(y)
                        new.append(y)
            frontier = new
        # gens might not contain inverses explicitly, but in a finite group
        # the closure under multiplication already contains them.
        return frozenset(elems)

    def subgroups(self) -> List[FrozenSet[int]]:
        """All subgroups, sorted by (order, sorted element tuple)."""
        if self._subgroups is None:
            found = {frozenset([self.e])}
            frontier = [frozenset([self.e])]
            while frontier:
                new = []
                for H in frontier:
                    for g in range(self.order):
                        if g in H:
                            continue
                        K = self.closure(set(H) | {g})
                        if K not in found:
                            found.add(K)
                            new.append(K)
                frontier = new
            self._subgroups = sorted(found, key=lambda H: (len(H), sorted(H)))
        return self._subgroups

    def conjugate_subgroup(self, g: int, H) -> FrozenSet[int]:
        return frozenset(self.conj(g, h) for h in H)

    def subgroup_conjugacy_classes(self) -> List[Tuple[FrozenSet[int], ...]]:
        """Orbits of subgroups under conjugation; each orbit sorted, and the
        orbit list sorted by its representative (the minimal member)."""
        if self._subgroup_classes is None:
            subs = self.subgroups()
            seen = set()
            classes = []
            for H in subs:
                if H in seen:
                    continue
                orbit = {self.conjugate_subgroup(g, H) for g in range(self.order)}
                seen |= orbit
                classes.append(tuple(sorted(orbit, key=lambda K: sorted(K))))
            classes.sort(key=lambda orb: (len(orb[0]), sorted(orb[0])))
            self._subgroup_classes = classes
        return self._subgroup_classes

    def subgroup_class_reps(self) -> List[FrozenSet[int]]:
        return [orb[0] for orb in self.subgroup_conjugacy_classes()]

    def centralizer(self, H) -> FrozenSet[int]:
        return frozenset(a for a in range(self.order)
                         if all(self.mult[a][h] == self.mult[h][a] for h in H))

    def normalizer(self, H) -> FrozenSet[int]:
        H = frozenset(H)
        return frozenset(g for g in range(self.order)
                         if self.conjugate_subgroup(g, H) == H)

    def double_cosets(self, K, H) -> List[Tuple[int, Tuple[int, ...]]]:
        """K\\G/H as (representative, sorted orbit) pairs, reps minimal."""
        K, H = sorted(K), sorted(H)
        remaining = set(range(self.order))
        out = []
        while remaining:
            g = min(remaining)
            orbit = {self.mult[self.mult[k][g]][h] for k in K for h in H}
            remaining -= orbit
            out.append((g, tuple(sorted(orbit))))
        return out

    def left_cosets(self, H) -> List[Tuple[int, ...]]:
        H = sorted(H)
        remaining = set(range(self.order))
        out = []
        while remaining:
            g = min(remaining)
            coset = tuple(sorted(self.mult[g][h] for h in H))
            remaining -= set(coset)
            out.append(coset)
        return out

    def subgroup_table(self, H) -> Tuple["GroupTable", Tuple[int, ...]]:
        """The subgroup as an abstract GroupTable plus its element embedding."""
        elems = tuple(sorted(H))
        index = {g: i for i, g in enumerate(elems)}
        mult = [[index[self.mult[a][b]] for b in elems] for a in elems]
        sub = GroupTable(mult, names=[self.names[g] for g in elems],
                         name=f"{self.name}⟨{len(elems)}⟩")
        return sub, elems

    # -- canonical forms ---------------------------------------------------

    def canonical_key(self):
        """Isomorphism-complete canonical form of the multiplication table.

        Minimal relabelled table over all generating tuples of minimal
        length, elements ordered by BFS discovery.
        """
        if self._canonical_key is None:
            self._canonical_key = _canonical_table(self.mult, self.e)[0]
        return self._canonical_key

    def canonical_relabelling(self):
        """A relabelling g -> position achieving canonical_key()."""
        return _canonical_table(self.mult, self.e)[1]

    def __repr__(self):
        return f"GroupTable({self.name or '?'}, order={self.order})"


def _bfs_order(mult, e, gens):
    """Element order by BFS words over gens; None if gens don't generate."""
    n = len(mult)
    order = [e]
    seen = {e}
    i = 0
    while i < len(order):
        x = order[i]
        for g in gens:
            y = mult[x][g]
            if y not in seen:
                seen.add(y)
                order.append(y)
        i += 1
    return order if len(order) == n else None


_canonical_cache = {}


def _canonical_table(mult, e):
    key = mult
    got = _canonical_cache.get(key)
    if got is not None:
        return got
    n = len(mult)
    if n == 1:
        result = (((0,),), (0,))
        _canonical_cache[key] = result
        return result
    best = None
    best_relab = None
    k = 1
    while best is None:
        for gens in product(range(n), repeat=k):
            if e in gens:
                continue
            order = _bfs_order(mult, e, gens)
            if order is None:
                continue
            pos = [0] * n
            for i, g in enumerate(order):
                pos[g] = i
            table = tuple(tuple(pos[mult[a][b]] for b in order) for a in order)
            if best is None or table < best:
                best = table
                best_relab = tuple(pos)
        k += 1
        if k > n:
            raise StructureError("group not generated by its own elements?")
    _canonical_cache[key] = (best, best_relab)
    return best, best_relab


def group_isomorphism(A: GroupTable, B: GroupTable) -> Optional[Tuple[int, ...]]:
    """An isomorphism A -> B as an index map, or None.

    Found by comparing canonical relabellings, so it also certifies the
    canonical keys.
    """
    if A.order != B.order:
        return None
    ka, ra = _canonical_table(A.mult, A.e)
    kb, rb = _canonical_table(B.mult, B.e)
    if ka != kb:
        return None
    inv_rb = [0] * B.order
    for g, p in enumerate(rb):
        inv_rb[p] = g
    return tuple(inv_rb[ra[a]] for a in range(A.order))


def subgroup_canonical_key(G: GroupTable, H) -> tuple:
    """Key identifying the conjugacy class invariants of H ≤ G that matter
    for multiset comparisons: (order, canonical table of H as a group)."""
    sub, _ = G.subgroup_table(H)
    return (len(H), sub.canonical_key())
