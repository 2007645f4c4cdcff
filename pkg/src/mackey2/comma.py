"""Iso-comma squares of groupoids, the diagonal embedding, and the Mackey
square test.

The apex of (i/u) has as objects the triples (x, y, g: i(x) -> u(y)) and as
morphisms the pairs of morphisms compatible with the connecting isos.
"""

from __future__ import annotations

from typing import Iterable, List, Optional

from .groupoid import (FiniteGroupoid, GroupoidFunctor, NatIso, StructureError,
                       compose_functors, identity_functor, is_equivalence_functor,
                       is_faithful, is_fully_faithful, natiso_vert,
                       whisker_functor_natiso, whisker_natiso_functor)


class IsoCommaSquare:
    """The square (i/u) with projections p, q and connecting 2-cell gamma:
    i∘p => u∘q whose component at (x, y, g) is g."""

    __slots__ = ("i", "u", "apex", "p", "q", "gamma", "obj_triples",
                 "_obj_index")

    def __init__(self, i, u, apex, p, q, gamma, obj_triples):
        self.i = i
        self.u = u
        self.apex = apex
        self.p = p
        self.q = q
        self.gamma = gamma
        self.obj_triples = obj_triples
        self._obj_index = {t: k for k, t in enumerate(obj_triples)}

    def object_index(self, x: int, y: int, g: int) -> int:
        return self._obj_index[(x, y, g)]

    def pair_into(self, f: GroupoidFunctor, g: GroupoidFunctor,
                  delta: NatIso) -> GroupoidFunctor:
        """The induced functor ⟨f, g, delta⟩ : T -> (i/u) for a cone
        delta: i∘f => u∘g over the cospan."""
        A = self.apex
        T = f.domain
        obj = [self._obj_index[(f.obj_map[t], g.obj_map[t], delta.components[t])]
               for t in T.objects()]
        mor_index = {A.mor_labels[m]: m for m in A.morphisms()}
        mor = [mor_index[(obj[T.src[m]], f.mor_map[m], g.mor_map[m])]
               for m in T.morphisms()]
        return GroupoidFunctor(T, A, obj, mor, name="⟨f,g,δ⟩", check=False)


def iso_comma(i: GroupoidFunctor, u: GroupoidFunctor) -> IsoCommaSquare:
    if i.codomain is not u.codomain:
        raise StructureError("iso-comma needs a cospan (shared codomain)")
    A, B, C = i.domain, u.domain, i.codomain
    triples = []
    for x in A.objects():
        ix = i.obj_map[x]
        for y in B.objects():
            uy = u.obj_map[y]
            for g in C.hom(ix, uy):
                triples.append((x, y, g))
    obj_index = {t: k for k, t in enumerate(triples)}
    # a morphism is (source object index, mA, mB); its target is forced
    src, tgt, labels = [], [], []
    mor_index = {}
    for k, (x, y, g) in enumerate(triples):
        for mA in A.out_morphisms(x):
            imA = i.mor_map[mA]
            for mB in B.out_morphisms(y):
                g2 = C.compose(u.mor_map[mB], C.compose(g, C.inv(imA)))
                k2 = obj_index[(A.tgt[mA], B.tgt[mB], g2)]
                lbl = (k, mA, mB)
                mor_index[lbl] = len(src)
                src.append(k)
                tgt.append(k2)
                labels.append(lbl)
    ident = [mor_index[(k, A.identity[x], B.identity[y])]
             for k, (x, y, g) in enumerate(triples)]

    def rule(m2, m1):
        k1, a1, b1 = labels[m1]
        _, a2, b2 = labels[m2]
        return mor_index[(k1, A.compose(a2, a1), B.compose(b2, b1))]

    def inv_rule(m):
        k, a, b = labels[m]
        return mor_index[(tgt[m], A.inv(a), B.inv(b))]

    apex = FiniteGroupoid(len(triples), src, tgt, ident, compose_rule=rule,
                          inverse_rule=inv_rule, obj_labels=triples,
                          mor_labels=labels, name="(i/u)")
    p = GroupoidFunctor(apex, A, [t[0] for t in triples],
                        [l[1] for l in labels], name="p", check=False)
    q = GroupoidFunctor(apex, B, [t[1] for t in triples],
                        [l[2] for l in labels], name="q", check=False)
    gamma = NatIso(compose_functors(i, p), compose_functors(u, q),
                   tuple(t[2] for t in triples), check=False)
    return IsoCommaSquare(i, u, apex, p, q, gamma, tuple(triples))


def diagonal_functor(i: GroupoidFunctor,
                     square: Optional[IsoCommaSquare] = None) -> GroupoidFunctor:
    """Δ_i = ⟨Id, Id, id_i⟩ : H -> (i/i), for faithful i.  Fully faithful."""
    if not is_faithful(i):
        raise StructureError("diagonal needs a faithful functor")
    if square is None:
        square = iso_comma(i, i)
    H = i.domain
    delta = square.pair_into(identity_functor(H), identity_functor(H),
                             NatIso(i, i, tuple(i.codomain.identity[i.obj_map[x]]
                                                for x in H.objects()),
                                    check=False))
    delta.name = "Δ"
    if not is_fully_faithful(delta):
        raise StructureError("diagonal failed to be fully faithful")
    return delta


def comparison_functor(square: IsoCommaSquare, v: GroupoidFunctor,
                       j: GroupoidFunctor, gamma: NatIso) -> GroupoidFunctor:
    """⟨v, j, gamma⟩ : L -> (i/u) for a candidate square over the cospan."""
    expected_src = compose_functors(square.i, v)
    expected_tgt = compose_functors(square.u, j)
    if not (gamma.source.same_as(expected_src)
            and gamma.target.same_as(expected_tgt)):
        raise StructureError("candidate 2-cell has the wrong boundary")
    return square.pair_into(v, j, gamma)


def is_mackey_square(i: GroupoidFunctor, u: GroupoidFunctor,
                     v: GroupoidFunctor, j: GroupoidFunctor,
                     gamma: NatIso) -> bool:
    """True iff ⟨v, j, gamma⟩ into (i/u) is an equivalence."""
    square = iso_comma(i, u)
    cmp = comparison_functor(square, v, j, gamma)
    return is_equivalence_functor(cmp)


# -- universal property, tested against finite probes -----------------------


def all_functors(T: FiniteGroupoid, A: FiniteGroupoid):
    """Brute-force enumeration of functors T -> A (probe groupoids only)."""
    objs = list(T.objects())
    if not objs:
        yield GroupoidFunctor(T, A, (), (), check=False)
        return

    def assign(k, obj_map):
        if k == len(objs):
            yield from fill_mors(obj_map)
            return
        for a in A.objects():
            yield from assign(k + 1, obj_map + [a])

    def fill_mors(obj_map):
        mors = list(T.morphisms())

        def rec(k, mor_map):
            if k == len(mors):
                F = GroupoidFunctor(T, A, obj_map, mor_map, check=False)
                try:
                    F.validate()
                except StructureError:
                    return
                yield F
                return
            m = mors[k]
            if m == T.identity[T.src[m]] and T.src[m] == T.tgt[m] \
                    and T.identity[T.src[m]] == m:
                yield from rec(k + 1, mor_map + [A.identity[obj_map[T.src[m]]]])
                return
            for am in A.hom(obj_map[T.src[m]], obj_map[T.tgt[m]]):
                yield from rec(k + 1, mor_map + [am])

        yield from rec(0, [])

    yield from assign(0, [])


def check_comma_universal_property(square: IsoCommaSquare,
                                   probe: FiniteGroupoid) -> bool:
    """Exhaustively test both clauses of the comma universal property
    against every cone on the probe groupoid."""
    from .equivalence import natiso_candidates

    i, u = square.i, square.u
    A, B = i.domain, u.domain
    # (a): cones (f, g, delta) factor uniquely
    for f in all_functors(probe, A):
        for g in all_functors(probe, B):
            fi = compose_functors(i, f)
            gu = compose_functors(u, g)
            for delta in natiso_candidates(fi, gu):
                h = square.pair_into(f, g, delta)
                if not compose_functors(square.p, h).same_as(f):
                    return False
                if not compose_functors(square.q, h).same_as(g):
                    return False
                whisk = whisker_natiso_functor(square.gamma, h)
                if whisk.components != delta.components:
                    return False
                # uniqueness among all functors probe -> apex
                for h2 in all_functors(probe, square.apex):
                    if h2.same_as(h):
                        continue
                    if (compose_functors(square.p, h2).same_as(f)
                            and compose_functors(square.q, h2).same_as(g)
                            and whisker_natiso_functor(square.gamma, h2)
                            .components == delta.components):
                        return False
    # (b): 2-dimensional part
    hs = list(all_functors(probe, square.apex))
    for h in hs:
        for h2 in hs:
            ph, ph2 = compose_functors(square.p, h), compose_functors(square.p, h2)
            qh, qh2 = compose_functors(square.q, h), compose_functors(square.q, h2)
            gh = whisker_natiso_functor(square.gamma, h)
            gh2 = whisker_natiso_functor(square.gamma, h2)
            for tau_a in natiso_candidates(ph, ph2):
                for tau_b in natiso_candidates(qh, qh2):
                    lhs = natiso_vert(gh2, whisker_functor_natiso(i, tau_a))
                    rhs = natiso_vert(whisker_functor_natiso(u, tau_b), gh)
                    if lhs.components != rhs.components:
                        continue
                    matches = []
                    for tau in natiso_candidates(h, h2):
                        pt = whisker_functor_natiso(square.p, tau)
                        qt = whisker_functor_natiso(square.q, tau)
                        if (pt.components == tau_a.components
                                and qt.components == tau_b.components):
                            matches.append(tau)
                    if len(matches) != 1:
                        return False
    return True
