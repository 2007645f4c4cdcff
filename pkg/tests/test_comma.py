"""Iso-comma squares: double-coset decomposition, universal property,
diagonal embedding, Mackey square detection."""

import pytest

from mackey2.catalog import group_groupoid, group_table, subgroup_inclusion
from mackey2.comma import (check_comma_universal_property, diagonal_functor,
                           is_mackey_square, iso_comma)
from mackey2.equivalence import are_equivalent, groupoid_canonical_key, skeleton_of
from mackey2.groupoid import (GroupoidFunctor, NatIso, StructureError,
                              compose_functors, connected_components, coproduct,
                              empty_groupoid, identity_functor, is_faithful,
                              is_fully_faithful)
from mackey2.grouptable import subgroup_canonical_key


def c2_in_s3():
    S3 = group_table("S3")
    t = next(a for a in S3.elements() if S3.element_order(a) == 2)
    return subgroup_inclusion(S3, S3.closure([t]))


def c3_in_s3():
    S3 = group_table("S3")
    r = next(a for a in S3.elements() if S3.element_order(a) == 3)
    return subgroup_inclusion(S3, S3.closure([r]))


def test_iso_comma_c2_s3_counts():
    i = c2_in_s3()
    sq = iso_comma(i, i)
    assert sq.apex.n_objects == 6
    assert sq.apex.n_morphisms == 24
    comps = connected_components(sq.apex)
    assert sorted(v for _, v in comps) == [1, 2]
    sq.apex.validate()
    assert is_faithful(sq.q) and is_faithful(sq.p)


def test_iso_comma_trivial_to_c2():
    C2 = group_table("C2")
    i = subgroup_inclusion(C2, [C2.e])
    sq = iso_comma(i, i)
    assert sq.apex.n_objects == 2
    assert sq.apex.n_morphisms == 2
    assert len(sq.apex.component_partition()) == 2
    assert all(v == 1 for _, v in connected_components(sq.apex))


def test_iso_comma_identity_cospan_equivalent_to_g():
    for name in ("C2", "S3"):
        G = group_groupoid(name)
        sq = iso_comma(identity_functor(G), identity_functor(G))
        assert are_equivalent(sq.apex, G) is not None


def test_iso_comma_rejects_mismatched_codomain():
    i = c2_in_s3()
    C2 = group_groupoid("C2")
    with pytest.raises(StructureError):
        iso_comma(i, identity_functor(C2))


def test_double_coset_decomposition_catalog():
    """#components = |K\\G/H| with vertex groups K ∩ gHg⁻¹, all catalog
    groups, all subgroup class pairs."""
    for name in ("C4", "S3", "D4", "A4"):
        G = group_table(name)
        reps = G.subgroup_class_reps()
        for H in reps:
            for K in reps:
                i = subgroup_inclusion(G, H)
                u = subgroup_inclusion(G, K)
                sq = iso_comma(i, u)
                dcs = G.double_cosets(K, H)
                comps = connected_components(sq.apex)
                assert len(comps) == len(dcs)
                expected = sorted(
                    subgroup_canonical_key(
                        G, frozenset(K) & G.conjugate_subgroup(g, H))
                    for g, _ in dcs)
                got = []
                uq = compose_functors(u, sq.q)
                for block, _ in comps:
                    # vertex group of the component of (•,•,g) inside G
                    loops = sq.apex.loops(block[0])
                    elems = frozenset(uq.mor_map[m] for m in loops)
                    got.append(subgroup_canonical_key(G, elems))
                assert sorted(got) == expected


def test_faithful_leg_inherits():
    i = c2_in_s3()
    u = c3_in_s3()
    sq = iso_comma(i, u)
    assert is_faithful(sq.q)


def test_diagonal_functor():
    # identity: equivalence onto (Id/Id)
    C2 = group_groupoid("C2")
    d = diagonal_functor(identity_functor(C2))
    sq = iso_comma(identity_functor(C2), identity_functor(C2))
    assert is_fully_faithful(d)
    # trivial in C2: hits exactly one of two components
    C2t = group_table("C2")
    i = subgroup_inclusion(C2t, [C2t.e])
    sq = iso_comma(i, i)
    d = diagonal_functor(i, sq)
    hit = {sq.apex.component_of(d.obj_map[x]) for x in d.domain.objects()}
    assert len(hit) == 1
    assert len(sq.apex.component_partition()) == 2
    # C2 in S3: essential image is the vertex-order-2 component
    i = c2_in_s3()
    sq = iso_comma(i, i)
    d = diagonal_functor(i, sq)
    hit = {sq.apex.component_of(d.obj_map[x]) for x in d.domain.objects()}
    assert len(hit) == 1
    comp = sq.apex.component_partition()[hit.pop()]
    assert sq.apex.vertex_order(comp[0]) == 2
    # injective on objects
    assert len(set(d.obj_map)) == d.domain.n_objects


def test_diagonal_requires_faithful():
    C2 = group_groupoid("C2")
    C1 = group_groupoid("C1")
    proj = GroupoidFunctor(C2, C1, [0], [0, 0])
    with pytest.raises(StructureError):
        diagonal_functor(proj)


def test_is_mackey_square_on_iso_comma_itself():
    i = c2_in_s3()
    u = c3_in_s3()
    sq = iso_comma(i, u)
    assert is_mackey_square(i, u, sq.p, sq.q, sq.gamma)


def test_is_mackey_square_double_coset_model():
    """The classical double-coset groupoid over K = H = C2 ≤ S3."""
    S3 = group_table("S3")
    i = c2_in_s3()
    H = frozenset(S3.closure([next(a for a in S3.elements()
                                   if S3.element_order(a) == 2)]))
    dcs = S3.double_cosets(H, H)
    assert len(dcs) == 2
    parts = []
    incls_v, incls_j, gammas = [], [], []
    for g, _ in dcs:
        inter = frozenset(H) & S3.conjugate_subgroup(g, H)
        incl = subgroup_inclusion(S3, inter)
        L = incl.domain
        parts.append(L)
        # v: conjugation-inclusion k -> g⁻¹kg into H, j: plain inclusion
        ginv = S3.inv(g)
        vmor = [S3.conj(ginv, incl.mor_map[m]) for m in L.morphisms()]
        incls_v.append((L, vmor))
        incls_j.append(incl)
        gammas.append(g)
    total, part_incls = coproduct(parts)
    Hi = subgroup_inclusion(S3, H)
    Hdom = Hi.domain
    # v, j as functors total -> Hdom composed within S3's one object
    h_index = {Hi.mor_map[m]: m for m in Hdom.morphisms()}
    vobj = [0] * total.n_objects
    vmor_total = [0] * total.n_morphisms
    jmor_total = [0] * total.n_morphisms
    for k, incl in enumerate(part_incls):
        L, vmor = incls_v[k]
        for m in L.morphisms():
            vmor_total[incl.mor_map[m]] = h_index[vmor[m]]
            jmor_total[incl.mor_map[m]] = h_index[incls_j[k].mor_map[m]]
    v = GroupoidFunctor(total, Hdom, vobj, vmor_total)
    j = GroupoidFunctor(total, Hdom, vobj, jmor_total)
    gamma = NatIso(compose_functors(Hi, v), compose_functors(Hi, j),
                   tuple(gammas[k] for k, _ in enumerate(parts)
                         for _ in parts[k].objects()))
    assert is_mackey_square(Hi, Hi, v, j, gamma)
    # the empty groupoid over the same cospan is not a Mackey square
    E = empty_groupoid()
    ve = GroupoidFunctor(E, Hdom, (), ())
    ge = NatIso(compose_functors(Hi, ve), compose_functors(Hi, ve), ())
    assert not is_mackey_square(Hi, Hi, ve, ve, ge)


def test_comma_universal_property_probes():
    from mackey2.groupoid import FiniteGroupoid
    # probes with at most 2 objects
    C1 = group_groupoid("C1")
    C2 = group_groupoid("C2")
    two_pts, _ = coproduct([C1, C1])
    interval = FiniteGroupoid(
        2, (0, 1, 0, 1), (0, 1, 1, 0), (0, 1),
        compose_table={(0, 0): 0, (1, 1): 1, (2, 0): 2, (1, 2): 2,
                       (3, 1): 3, (0, 3): 3, (3, 2): 0, (2, 3): 1},
        name="I")
    interval.validate()
    i = c2_in_s3()
    u = c3_in_s3()
    for square in (iso_comma(i, u), iso_comma(i, i)):
        for probe in (empty_groupoid(), C1, C2, two_pts, interval):
            assert check_comma_universal_property(square, probe)
