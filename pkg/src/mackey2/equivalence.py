"""Skeletons, equivalence decisions, and natural-iso searches.

Equivalence of finite groupoids is decided by matching connected components
and their vertex groups (found by generator-image search inside the
canonical-form machinery), and every positive answer comes with an explicit
witness: functor, quasi-inverse, and the two natural isomorphisms.
"""

from __future__ import annotations

from typing import List, Optional, Tuple

from .groupoid import (FiniteGroupoid, GroupoidFunctor, NatIso, StructureError,
                       compose_functors, identity_functor, identity_natiso,
                       is_fully_faithful, natiso_inverse, whisker_functor_natiso)
from .grouptable import GroupTable, group_isomorphism


class SkeletonWitness:
    """A deterministic skeleton of a groupoid with its comparison data.

    retraction∘inclusion = Id on the skeleton strictly, and `transport`
    is the natural iso inclusion∘retraction => Id whose component at any
    base object is an identity.
    """

    __slots__ = ("groupoid", "skeleton", "inclusion", "retraction",
                 "transport", "base_objects", "obj_transport")

    def __init__(self, groupoid, skeleton, inclusion, retraction, transport,
                 base_objects, obj_transport):
        self.groupoid = groupoid
        self.skeleton = skeleton
        self.inclusion = inclusion
        self.retraction = retraction
        self.transport = transport
        self.base_objects = base_objects
        self.obj_transport = obj_transport


def _spanning_transport(G: FiniteGroupoid):
    """Per component: base object (minimal) and a morphism base -> x for
    every object x, found by BFS over morphisms in index order."""
    comps = G.component_partition()
    bases = [block[0] for block in comps]
    trans = [None] * G.n_objects
    for base in bases:
        trans[base] = G.identity[base]
        queue = [base]
        while queue:
            x = queue.pop(0)
            for m in G.out_morphisms(x):
                y = G.tgt[m]
                if trans[y] is None:
                    trans[y] = G.compose(m, trans[x])
                    queue.append(y)
    return bases, trans


def skeletalize(G: FiniteGroupoid) -> SkeletonWitness:
    """One object per component; vertex group = loops at the base object."""
    bases, trans = _spanning_transport(G)
    comps = G.component_partition()
    n_comp = len(comps)
    loop_lists = [G.loops(b) for b in bases]
    mor_index = {}
    src, tgt, ident, labels = [], [], [], []
    for c, loops in enumerate(loop_lists):
        for m in loops:
            mor_index[m] = len(src)
            src.append(c)
            tgt.append(c)
            labels.append(m)
    for c, b in enumerate(bases):
        ident.append(mor_index[G.identity[b]])

    def rule(g, f):
        return mor_index[G.compose(labels[g], labels[f])]

    def inv_rule(m):
        return mor_index[G.inv(labels[m])]

    S = FiniteGroupoid(n_comp, src, tgt, ident, compose_rule=rule,
                       inverse_rule=inv_rule, obj_labels=bases,
                       mor_labels=labels,
                       name=(G.name + "/≃") if G.name else "skel")
    incl = GroupoidFunctor(S, G, bases, labels, name="incl", check=False)
    # retraction: x -> its component; m: x->y -> t_y⁻¹ ∘ m ∘ t_x
    robj = [G.component_of(x) for x in G.objects()]
    rmor = []
    for m in G.morphisms():
        x, y = G.src[m], G.tgt[m]
        loop = G.compose(G.inv(trans[y]), G.compose(m, trans[x]))
        rmor.append(mor_index[loop])
    retr = GroupoidFunctor(G, S, robj, rmor, name="retr", check=False)
    transport = NatIso(compose_functors(incl, retr), identity_functor(G),
                       tuple(trans), check=False)
    return SkeletonWitness(G, S, incl, retr, transport, tuple(bases),
                           tuple(trans))


_skel_cache = {}


def skeleton_of(G: FiniteGroupoid) -> SkeletonWitness:
    got = _skel_cache.get(id(G))
    if got is None:
        got = skeletalize(G)
        _skel_cache[id(G)] = got
    return got


def vertex_group_table(G: FiniteGroupoid, x: int) -> Tuple[GroupTable, list]:
    """The automorphism group of x as a GroupTable plus its loop list."""
    loops = G.loops(x)
    index = {m: i for i, m in enumerate(loops)}
    mult = [[index[G.compose(a, b)] for b in loops] for a in loops]
    return GroupTable(mult, name=f"Aut({x})"), loops


def groupoid_canonical_key(G: FiniteGroupoid) -> tuple:
    """Multiset invariant deciding equivalence: sorted component keys
    (vertex order, object count, canonical vertex group table)."""
    keys = []
    for block in G.component_partition():
        table, _ = vertex_group_table(G, block[0])
        keys.append((table.order, len(block), table.canonical_key()))
    return tuple(sorted(keys))


class EquivalenceWitness:
    __slots__ = ("forward", "backward", "unit", "counit")

    def __init__(self, forward, backward, unit, counit):
        self.forward = forward      # F : G -> H
        self.backward = backward    # F' : H -> G
        self.unit = unit            # Id_G => F'∘F
        self.counit = counit        # F∘F' => Id_H


def _match_components(G, H):
    """Pair components with isomorphic vertex groups; None if impossible.

    Returns a list over components of G: (component of H, vertex iso as a
    morphism-index map from loops at G's base to loops at H's base).
    """
    gb = skeleton_of(G)
    hb = skeleton_of(H)
    if len(gb.base_objects) != len(hb.base_objects):
        return None
    g_data = [vertex_group_table(G, b) for b in gb.base_objects]
    h_data = [vertex_group_table(H, b) for b in hb.base_objects]
    used = [False] * len(hb.base_objects)
    assignment = []
    for (gt, gloops) in g_data:
        found = False
        for j, (ht, hloops) in enumerate(h_data):
            if used[j]:
                continue
            iso = group_isomorphism(gt, ht)
            if iso is not None:
                used[j] = True
                assignment.append((j, {gloops[a]: hloops[iso[a]]
                                       for a in range(gt.order)}))
                found = True
                break
        if not found:
            return None
    return assignment


def are_equivalent(G: FiniteGroupoid, H: FiniteGroupoid):
    """Equivalence witness (or None): components must biject with isomorphic
    vertex groups; the witness quadruple is assembled through skeletons."""
    assignment = _match_components(G, H)
    if assignment is None:
        return None
    gb, hb = skeleton_of(G), skeleton_of(H)
    SG, SH = gb.skeleton, hb.skeleton
    # skeleton-level iso phi: SG -> SH
    obj_map = [j for j, _ in assignment]
    h_index = {lbl: i for i, lbl in enumerate(SH.mor_labels)}
    mor_map = [0] * SG.n_morphisms
    for m in SG.morphisms():
        c = SG.src[m]
        mor_map[m] = h_index[assignment[c][1][SG.mor_labels[m]]]
    phi = GroupoidFunctor(SG, SH, obj_map, mor_map, name="φ", check=False)
    phi_inv_obj = [0] * SH.n_objects
    for c, j in enumerate(obj_map):
        phi_inv_obj[j] = c
    phi_inv_mor = [0] * SH.n_morphisms
    for m in SG.morphisms():
        phi_inv_mor[mor_map[m]] = m
    phi_inv = GroupoidFunctor(SH, SG, phi_inv_obj, phi_inv_mor, name="φ⁻¹",
                              check=False)
    F = compose_functors(hb.inclusion, compose_functors(phi, gb.retraction))
    Fp = compose_functors(gb.inclusion, compose_functors(phi_inv, hb.retraction))
    # F'∘F = incl_G ∘ retr_G because the skeleton isos cancel strictly
    unit = natiso_inverse(gb.transport)        # Id_G => incl∘retr
    counit = hb.transport                      # incl∘retr => Id_H
    unit = NatIso(identity_functor(G), compose_functors(Fp, F),
                  unit.components, check=False)
    counit = NatIso(compose_functors(F, Fp), identity_functor(H),
                    counit.components, check=False)
    return EquivalenceWitness(F, Fp, unit, counit)


def quasi_inverse(F: GroupoidFunctor):
    """Canonical quasi-inverse of an equivalence.

    Returns (G, eps: F∘G => Id, eta: Id => G∘F) with minimal-index choices.
    Raises if F is not an equivalence.
    """
    dom, cod = F.domain, F.codomain
    choice = {}
    for y in cod.objects():
        found = None
        for x in dom.objects():
            for m in cod.hom(F.obj_map[x], y):
                found = (x, m)
                break
            if found:
                break
        if found is None:
            raise StructureError("functor is not essentially surjective")
        choice[y] = found
    if not is_fully_faithful(F):
        raise StructureError("functor is not fully faithful")

    def lift(x, xp, m):
        # unique n: x -> xp with F(n) = m
        for n in dom.hom(x, xp):
            if F.mor_map[n] == m:
                return n
        raise StructureError("fully-faithful lift missing")

    obj_map = [choice[y][0] for y in cod.objects()]
    eps_comp = [choice[y][1] for y in cod.objects()]
    mor_map = []
    for m in cod.morphisms():
        y, yp = cod.src[m], cod.tgt[m]
        mm = cod.compose(cod.inv(eps_comp[yp]), cod.compose(m, eps_comp[y]))
        mor_map.append(lift(obj_map[y], obj_map[yp], mm))
    G = GroupoidFunctor(cod, dom, obj_map, mor_map, name="q-inv", check=False)
    eps = NatIso(compose_functors(F, G), identity_functor(cod),
                 tuple(eps_comp), check=False)
    eta_comp = []
    for x in dom.objects():
        y = F.obj_map[x]
        eta_comp.append(lift(x, obj_map[y], cod.inv(eps_comp[y])))
    eta = NatIso(identity_functor(dom), compose_functors(G, F),
                 tuple(eta_comp), check=False)
    return G, eps, eta


def natiso_candidates(F: GroupoidFunctor, G: GroupoidFunctor):
    """All natural isos F => G between parallel functors.

    Components are propagated along a spanning transport of the domain, so
    the search is (choices at one object per component) x (loop checks).
    """
    if not (F.domain is G.domain and F.codomain is G.codomain):
        return
    dom, cod = F.domain, F.codomain
    bases, trans = _spanning_transport(dom)
    results = [[]]
    # choose components at base objects, independently per component
    per_component = []
    for base in bases:
        cands = []
        for c in cod.hom(F.obj_map[base], G.obj_map[base]):
            cands.append(c)
        if not cands:
            return
        per_component.append((base, cands))

    def fill(choice_by_base):
        comp = [None] * dom.n_objects
        for (base, _), c in zip(per_component, choice_by_base):
            comp[base] = c
        for x in dom.objects():
            if comp[x] is None:
                t = trans[x]
                b = bases[dom.component_of(x)]
                comp[x] = cod.compose(G.mor_map[t],
                                      cod.compose(comp[b], cod.inv(F.mor_map[t])))
        for m in dom.morphisms():
            x, y = dom.src[m], dom.tgt[m]
            if cod.compose(G.mor_map[m], comp[x]) != cod.compose(comp[y], F.mor_map[m]):
                return None
        return NatIso(F, G, tuple(comp), check=False)

    def rec(i, chosen):
        if i == len(per_component):
            nat = fill(chosen)
            if nat is not None:
                yield nat
            return
        for c in per_component[i][1]:
            yield from rec(i + 1, chosen + [c])

    yield from rec(0, [])


def exists_natiso(F, G):
    for nat in natiso_candidates(F, G):
        return nat
    return None
