"""Finite groupoids, functors between them, and natural isomorphisms.

Objects and morphisms are dense integer indices.  Composition is stored as a
table filled on demand from a composition rule, so derived groupoids
(iso-commas, coproducts) never materialize the full table of composable
pairs unless asked to.
"""

from __future__ import annotations

from typing import Callable, Iterable, Optional, Sequence


class StructureError(ValueError):
    """Raised when groupoid/functor/natiso data violates its axioms."""


class FiniteGroupoid:
    """A finite groupoid on integer-indexed objects and morphisms.

    `compose(g, f)` means "g after f" and is defined iff tgt(f) == src(g).
    Instances are immutable after construction and compared by identity.
    """

    __slots__ = (
        "n_objects", "src", "tgt", "identity", "name",
        "obj_labels", "mor_labels",
        "_inv", "_inv_rule", "_compose", "_compose_rule",
        "_out", "_components", "_comp_of_obj", "_loops",
    )

    def __init__(self, n_objects, src, tgt, identity,
                 compose_rule=None, compose_table=None,
                 inverse=None, inverse_rule=None,
                 obj_labels=None, mor_labels=None, name=""):
        self.n_objects = int(n_objects)
        self.src = tuple(src)
        self.tgt = tuple(tgt)
        self.identity = tuple(identity)
        self.name = name
        self.obj_labels = tuple(obj_labels) if obj_labels is not None else None
        self.mor_labels = tuple(mor_labels) if mor_labels is not None else None
        if len(self.src) != len(self.tgt):
            raise StructureError("src/tgt length mismatch")
        if len(self.identity) != self.n_objects:
            raise StructureError("one identity morphism per object required")
        for x, e in enumerate(self.identity):
            if not (0 <= e < len(self.src)) or self.src[e] != x or self.tgt[e] != x:
                raise StructureError(f"identity of object {x} is not a loop at it")
        self._compose = dict(compose_table) if compose_table else {}
        self._compose_rule = compose_rule
        self._inv = list(inverse) if inverse is not None else [None] * len(self.src)
        self._inv_rule = inverse_rule
        self._out = None
        self._components = None
        self._comp_of_obj = None
        self._loops = None

    # -- basic accessors -------------------------------------------------

    @property
    def n_morphisms(self):
        return len(self.src)

    def objects(self):
        return range(self.n_objects)

    def morphisms(self):
        return range(len(self.src))

    def compose(self, g: int, f: int) -> int:
        """Composite g∘f; requires tgt(f) == src(g)."""
        if self.tgt[f] != self.src[g]:
            raise StructureError(f"morphisms {g} and {f} are not composable")
        key = (g, f)
        got = self._compose.get(key)
        if got is None:
            if self._compose_rule is None:
                raise StructureError(f"composite of {key} missing from table")
            got = self._compose_rule(g, f)
            self._compose[key] = got
        return got

    def inv(self, m: int) -> int:
        got = self._inv[m]
        if got is None:
            if self._inv_rule is not None:
                got = self._inv_rule(m)
            else:
                got = self._search_inverse(m)
            self._inv[m] = got
        return got

    def _search_inverse(self, m):
        e_src = self.identity[self.src[m]]
        for n in self.out_morphisms(self.tgt[m]):
            if self.src[n] == self.tgt[m] and self.tgt[n] == self.src[m]:
                if self.compose(n, m) == e_src:
                    return n
        raise StructureError(f"morphism {m} has no inverse")

    def out_morphisms(self, x: int):
        """All morphisms with source x."""
        if self._out is None:
            out = [[] for _ in range(self.n_objects)]
            for m, s in enumerate(self.src):
                out[s].append(m)
            self._out = [tuple(ms) for ms in out]
        return self._out[x]

    def hom(self, x: int, y: int):
        return [m for m in self.out_morphisms(x) if self.tgt[m] == y]

    def loops(self, x: int):
        return self.hom(x, x)

    # -- connectivity ----------------------------------------------------

    def component_partition(self):
        """Partition of objects into connected components (sorted blocks)."""
        if self._components is None:
            n = self.n_objects
            parent = list(range(n))

            def find(a):
                while parent[a] != a:
                    parent[a] = parent[parent[a]]
                    a = parent[a]
                return a

            for m in self.morphisms():
                ra, rb = find(self.src[m]), find(self.tgt[m])
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
            blocks = {}
            for x in range(n):
                blocks.setdefault(find(x), []).append(x)
            comps = tuple(tuple(sorted(b)) for b in
                          sorted(blocks.values(), key=lambda b: min(b)))
            self._components = comps
            comp_of = [0] * n
            for ci, block in enumerate(comps):
                for x in block:
                    comp_of[x] = ci
            self._comp_of_obj = tuple(comp_of)
        return self._components

    def component_of(self, x: int) -> int:
        self.component_partition()
        return self._comp_of_obj[x]

    def vertex_order(self, x: int) -> int:
        """Number of automorphisms of the object x."""
        return len(self.loops(x))

    # -- validation ------------------------------------------------------

    def validate(self):
        """Exhaustive check of the groupoid axioms.  O(#composable pairs)."""
        n_mor = len(self.src)
        for m in range(n_mor):
            e_s, e_t = self.identity[self.src[m]], self.identity[self.tgt[m]]
            if self.compose(m, e_s) != m or self.compose(e_t, m) != m:
                raise StructureError(f"identities are not units at morphism {m}")
            i = self.inv(m)
            if self.src[i] != self.tgt[m] or self.tgt[i] != self.src[m]:
                raise StructureError(f"inverse of {m} has wrong endpoints")
            if self.compose(i, m) != e_s or self.compose(m, i) != e_t:
                raise StructureError(f"inverse law fails at morphism {m}")
        for f in range(n_mor):
            for g in self.out_morphisms(self.tgt[f]):
                gf = self.compose(g, f)
                if self.src[gf] != self.src[f] or self.tgt[gf] != self.tgt[g]:
                    raise StructureError(f"composite {g}∘{f} has wrong endpoints")
                for h in self.out_morphisms(self.tgt[g]):
                    if self.compose(h, gf) != self.compose(self.compose(h, g), f):
                        raise StructureError(
                            f"associativity fails at ({h},{g},{f})")
        return True

    def __repr__(self):
        tag = self.name or "groupoid"
        return f"<{tag}: {self.n_objects} obj, {len(self.src)} mor>"


class GroupoidFunctor:
    """A functor between finite groupoids, stored as index maps."""

    __slots__ = ("domain", "codomain", "obj_map", "mor_map", "name")

    def __init__(self, domain, codomain, obj_map, mor_map, name="", check=True):
        self.domain = domain
        self.codomain = codomain
        self.obj_map = tuple(obj_map)
        self.mor_map = tuple(mor_map)
        self.name = name
        if check:
            if len(self.obj_map) != domain.n_objects:
                raise StructureError("object map has wrong length")
            if len(self.mor_map) != domain.n_morphisms:
                raise StructureError("morphism map has wrong length")
            for m in domain.morphisms():
                fm = self.mor_map[m]
                if (codomain.src[fm] != self.obj_map[domain.src[m]]
                        or codomain.tgt[fm] != self.obj_map[domain.tgt[m]]):
                    raise StructureError(f"functor breaks src/tgt at {m}")
            for x in domain.objects():
                if self.mor_map[domain.identity[x]] != codomain.identity[self.obj_map[x]]:
                    raise StructureError(f"functor breaks identity at object {x}")

    def on_obj(self, x: int) -> int:
        return self.obj_map[x]

    def on_mor(self, m: int) -> int:
        return self.mor_map[m]

    def validate(self):
        """Exhaustive composition-preservation check."""
        dom, cod = self.domain, self.codomain
        for f in dom.morphisms():
            for g in dom.out_morphisms(dom.tgt[f]):
                if self.mor_map[dom.compose(g, f)] != cod.compose(
                        self.mor_map[g], self.mor_map[f]):
                    raise StructureError(f"functor breaks composition at ({g},{f})")
        return True

    def same_as(self, other: "GroupoidFunctor") -> bool:
        return (self.domain is other.domain and self.codomain is other.codomain
                and self.obj_map == other.obj_map and self.mor_map == other.mor_map)

    def __repr__(self):
        return f"<functor {self.name or ''} {self.domain!r} -> {self.codomain!r}>"


def identity_functor(G: FiniteGroupoid) -> GroupoidFunctor:
    return GroupoidFunctor(G, G, range(G.n_objects), range(G.n_morphisms),
                           name="id", check=False)


def compose_functors(g: GroupoidFunctor, f: GroupoidFunctor) -> GroupoidFunctor:
    """g∘f (apply f first)."""
    if f.codomain is not g.domain:
        raise StructureError("functors not composable")
    return GroupoidFunctor(
        f.domain, g.codomain,
        tuple(g.obj_map[x] for x in f.obj_map),
        tuple(g.mor_map[m] for m in f.mor_map),
        check=False)


def is_faithful(F: GroupoidFunctor) -> bool:
    """True iff F is injective on every hom-set."""
    dom = F.domain
    for x in dom.objects():
        seen = {}
        for m in dom.out_morphisms(x):
            key = (dom.tgt[m], F.mor_map[m])
            if key in seen:
                return False
            seen[key] = m
    return True


def is_full(F: GroupoidFunctor) -> bool:
    dom, cod = F.domain, F.codomain
    for x in dom.objects():
        for y in dom.objects():
            image = {F.mor_map[m] for m in dom.hom(x, y)}
            target = set(cod.hom(F.obj_map[x], F.obj_map[y]))
            if image != target:
                return False
    return True


def is_fully_faithful(F: GroupoidFunctor) -> bool:
    dom, cod = F.domain, F.codomain
    for x in dom.objects():
        for y in dom.objects():
            hom = dom.hom(x, y)
            image = {F.mor_map[m] for m in hom}
            if len(image) != len(hom):
                return False
            if image != set(cod.hom(F.obj_map[x], F.obj_map[y])):
                return False
    return True


def is_essentially_surjective(F: GroupoidFunctor) -> bool:
    cod = F.codomain
    cod.component_partition()
    hit = {cod.component_of(F.obj_map[x]) for x in F.domain.objects()}
    return len(hit) == len(cod.component_partition())


def is_equivalence_functor(F: GroupoidFunctor) -> bool:
    return is_essentially_surjective(F) and is_fully_faithful(F)


class NatIso:
    """A natural isomorphism between parallel functors (all 2-cells of a
    groupoid are invertible, so no separate invertibility flag)."""

    __slots__ = ("source", "target", "components")

    def __init__(self, source, target, components, check=True):
        self.source = source
        self.target = target
        self.components = tuple(components)
        if check:
            if (source.domain is not target.domain
                    or source.codomain is not target.codomain):
                raise StructureError("natural iso needs parallel functors")
            dom, cod = source.domain, source.codomain
            if len(self.components) != dom.n_objects:
                raise StructureError("one component per object required")
            for x in dom.objects():
                c = self.components[x]
                if (cod.src[c] != source.obj_map[x]
                        or cod.tgt[c] != target.obj_map[x]):
                    raise StructureError(f"component at {x} has wrong endpoints")
            for m in dom.morphisms():
                x, y = dom.src[m], dom.tgt[m]
                lhs = cod.compose(target.mor_map[m], self.components[x])
                rhs = cod.compose(self.components[y], source.mor_map[m])
                if lhs != rhs:
                    raise StructureError(f"naturality fails at morphism {m}")

    def at(self, x: int) -> int:
        return self.components[x]

    def __repr__(self):
        return f"<natiso {self.source!r} => {self.target!r}>"


def identity_natiso(F: GroupoidFunctor) -> NatIso:
    cod = F.codomain
    return NatIso(F, F, tuple(cod.identity[F.obj_map[x]]
                              for x in F.domain.objects()), check=False)


def natiso_vert(beta: NatIso, alpha: NatIso) -> NatIso:
    """Vertical composite beta∘alpha (alpha first)."""
    if not alpha.target.same_as(beta.source):
        raise StructureError("natisos not vertically composable")
    cod = alpha.source.codomain
    comps = tuple(cod.compose(beta.components[x], alpha.components[x])
                  for x in range(len(alpha.components)))
    return NatIso(alpha.source, beta.target, comps, check=False)


def natiso_inverse(alpha: NatIso) -> NatIso:
    cod = alpha.source.codomain
    return NatIso(alpha.target, alpha.source,
                  tuple(cod.inv(c) for c in alpha.components), check=False)


def whisker_functor_natiso(K: GroupoidFunctor, alpha: NatIso) -> NatIso:
    """K∘alpha : K∘F => K∘G for alpha: F => G with K out of their codomain."""
    if alpha.source.codomain is not K.domain:
        raise StructureError("whiskering mismatch")
    return NatIso(compose_functors(K, alpha.source),
                  compose_functors(K, alpha.target),
                  tuple(K.mor_map[c] for c in alpha.components), check=False)


def whisker_natiso_functor(alpha: NatIso, L: GroupoidFunctor) -> NatIso:
    """alpha∘L : F∘L => G∘L for alpha: F => G with L into their domain."""
    if L.codomain is not alpha.source.domain:
        raise StructureError("whiskering mismatch")
    return NatIso(compose_functors(alpha.source, L),
                  compose_functors(alpha.target, L),
                  tuple(alpha.components[x] for x in L.obj_map), check=False)


def natisos_equal(a: NatIso, b: NatIso) -> bool:
    return (a.source.same_as(b.source) and a.target.same_as(b.target)
            and a.components == b.components)


# -- constructions -----------------------------------------------------------


def from_group(table) -> FiniteGroupoid:
    """One-object groupoid whose morphisms are the elements of a group table."""
    table.validate()
    n = table.order
    mult = table.mult

    def rule(g, f):
        return mult[g][f]

    return FiniteGroupoid(
        1, (0,) * n, (0,) * n, (table.e,),
        compose_rule=rule,
        inverse=[table.inv(a) for a in range(n)],
        mor_labels=table.names, name=table.name or "group")


def coproduct(parts: Sequence[FiniteGroupoid]):
    """Disjoint union; returns (groupoid, list of inclusion functors)."""
    obj_off, mor_off = [], []
    o = m = 0
    for P in parts:
        obj_off.append(o)
        mor_off.append(m)
        o += P.n_objects
        m += P.n_morphisms
    src, tgt, ident = [], [], []
    owner = []  # morphism -> part index
    for k, P in enumerate(parts):
        src.extend(obj_off[k] + s for s in P.src)
        tgt.extend(obj_off[k] + t for t in P.tgt)
        owner.extend([k] * P.n_morphisms)
    for k, P in enumerate(parts):
        ident.extend(mor_off[k] + e for e in P.identity)

    def rule(g, f):
        k = owner[f]
        return mor_off[k] + parts[k].compose(g - mor_off[k], f - mor_off[k])

    def inv_rule(mm):
        k = owner[mm]
        return mor_off[k] + parts[k].inv(mm - mor_off[k])

    total = FiniteGroupoid(
        o, src, tgt, ident, compose_rule=rule, inverse_rule=inv_rule,
        obj_labels=[(k, x) for k, P in enumerate(parts) for x in P.objects()],
        mor_labels=[(k, mm) for k, P in enumerate(parts) for mm in P.morphisms()],
        name="⊔".join(P.name or "?" for P in parts) if parts else "∅")
    incls = [
        GroupoidFunctor(P, total,
                        [obj_off[k] + x for x in P.objects()],
                        [mor_off[k] + mm for mm in P.morphisms()],
                        name=f"incl{k}", check=False)
        for k, P in enumerate(parts)
    ]
    return total, incls


def empty_groupoid() -> FiniteGroupoid:
    return FiniteGroupoid(0, (), (), (), compose_rule=lambda g, f: 0, name="∅")


def copair_functors(parts_incl, fs, codomain) -> GroupoidFunctor:
    """The functor out of a coproduct determined by functors on the parts.

    `parts_incl` are the inclusions returned by `coproduct`; `fs[k]` must have
    the same domain as inclusion k.
    """
    total = parts_incl[0].codomain if parts_incl else None
    if total is None:
        return GroupoidFunctor(empty_groupoid(), codomain, (), (), check=False)
    obj_map = [0] * total.n_objects
    mor_map = [0] * total.n_morphisms
    for incl, f in zip(parts_incl, fs):
        if f.domain is not incl.domain:
            raise StructureError("copair component has wrong domain")
        for x in f.domain.objects():
            obj_map[incl.obj_map[x]] = f.obj_map[x]
        for m in f.domain.morphisms():
            mor_map[incl.mor_map[m]] = f.mor_map[m]
    return GroupoidFunctor(total, codomain, obj_map, mor_map, check=False)


def connected_components(G: FiniteGroupoid):
    """List of (object block, vertex group order) pairs."""
    return [(block, G.vertex_order(block[0])) for block in G.component_partition()]
