"""Built-in group catalog and the JSON text formats for groups/groupoids.

Catalog names: C1, C2, C3, C4, C6, V4, S3, D4, Q8, A4, D6, S4.
`MACKEY2_CATALOG` may point at a directory of extra `<name>.json` group files.
"""

from __future__ import annotations

import json
import os
from itertools import permutations
from typing import Dict, List, Optional

from .groupoid import (FiniteGroupoid, GroupoidFunctor, StructureError,
                       from_group)
from .grouptable import GroupTable


def _perm_mul(a, b):
    # (a∘b)(x) = a(b(x))
    return tuple(a[b[x]] for x in range(len(a)))


def _cycle_name(p) -> str:
    n = len(p)
    seen = [False] * n
    parts = []
    for i in range(n):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        parts.append("(" + "".join(str(k + 1) for k in cyc) + ")")
    return "".join(parts) if parts else "e"


def _perm_group(perms, name) -> GroupTable:
    elems = sorted(set(perms))
    index = {p: i for i, p in enumerate(elems)}
    mult = [[index[_perm_mul(a, b)] for b in elems] for a in elems]
    return GroupTable(mult, names=[_cycle_name(p) for p in elems], name=name)


def _cyclic(n, name) -> GroupTable:
    mult = [[(a + b) % n for b in range(n)] for a in range(n)]
    names = ["e"] + [f"g{k}" if k > 1 else "g" for k in range(1, n)]
    return GroupTable(mult, names=names, name=name)


def _direct_product(A: GroupTable, B: GroupTable, name) -> GroupTable:
    nb = B.order

    def enc(a, b):
        return a * nb + b

    mult = [[enc(A.mult[a1][a2], B.mult[b1][b2])
             for a2 in range(A.order) for b2 in range(B.order)]
            for a1 in range(A.order) for b1 in range(B.order)]
    names = [f"({A.names[a]},{B.names[b]})"
             for a in range(A.order) for b in range(B.order)]
    return GroupTable(mult, names=names, name=name)


def _dihedral(n, name) -> GroupTable:
    # symmetries of the regular n-gon as permutations of the vertices
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    elems = []
    r = tuple(range(n))
    for _ in range(n):
        elems.append(r)
        elems.append(_perm_mul(ref, r))
        r = _perm_mul(rot, r)
    return _perm_group(elems, name)


def _quaternion() -> GroupTable:
    # 1, -1, i, -i, j, -j, k, -k
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    idx = {nm: t for t, nm in enumerate(names)}

    def neg(w):
        return w[1:] if w.startswith("-") else "-" + w

    base = {("1", "1"): "1", ("i", "i"): "-1", ("j", "j"): "-1",
            ("k", "k"): "-1", ("i", "j"): "k", ("j", "i"): "-k",
            ("j", "k"): "i", ("k", "j"): "-i", ("k", "i"): "j",
            ("i", "k"): "-j"}

    def mul(a, b):
        sign = 1
        if a.startswith("-"):
            sign, a = -sign, a[1:]
        if b.startswith("-"):
            sign, b = -sign, b[1:]
        if a == "1":
            out = b
        elif b == "1":
            out = a
        else:
            out = base[(a, b)]
        if out.startswith("-"):
            sign, out = -sign, out[1:]
        return out if sign == 1 else neg(out)

    mult = [[idx[mul(a, b)] for b in names] for a in names]
    return GroupTable(mult, names=names, name="Q8")


def _alternating(n, name) -> GroupTable:
    def sign(p):
        s = 1
        for i in range(len(p)):
            for j in range(i + 1, len(p)):
                if p[i] > p[j]:
                    s = -s
        return s

    return _perm_group([p for p in permutations(range(n)) if sign(p) == 1], name)


def _symmetric(n, name) -> GroupTable:
    return _perm_group(list(permutations(range(n))), name)


_BUILDERS = {
    "C1": lambda: _cyclic(1, "C1"),
    "C2": lambda: _cyclic(2, "C2"),
    "C3": lambda: _cyclic(3, "C3"),
    "C4": lambda: _cyclic(4, "C4"),
    "C6": lambda: _cyclic(6, "C6"),
    "V4": lambda: _direct_product(_cyclic(2, "C2"), _cyclic(2, "C2"), "V4"),
    "S3": lambda: _symmetric(3, "S3"),
    "D4": lambda: _dihedral(4, "D4"),
    "Q8": _quaternion,
    "A4": lambda: _alternating(4, "A4"),
    "D6": lambda: _dihedral(6, "D6"),
    "S4": lambda: _symmetric(4, "S4"),
}

CATALOG_NAMES = tuple(_BUILDERS)

_table_cache: Dict[str, GroupTable] = {}
_groupoid_cache: Dict[int, FiniteGroupoid] = {}


def group_table(name: str) -> GroupTable:
    """Resolve a group: catalog name, then MACKEY2_CATALOG dir, then a path."""
    if name in _table_cache:
        return _table_cache[name]
    if name in _BUILDERS:
        table = _BUILDERS[name]()
    else:
        path = None
        cat_dir = os.environ.get("MACKEY2_CATALOG")
        if cat_dir:
            candidate = os.path.join(cat_dir, name + ".json")
            if os.path.exists(candidate):
                path = candidate
        if path is None and os.path.exists(name):
            path = name
        if path is None:
            raise KeyError(f"unknown group {name!r}")
        with open(path, "r", encoding="utf-8") as fh:
            table = group_from_json(json.load(fh), name=os.path.basename(path))
    _table_cache[name] = table
    return table


def group_groupoid(name_or_table) -> FiniteGroupoid:
    """The one-object groupoid of a (named) group, cached per table."""
    table = (name_or_table if isinstance(name_or_table, GroupTable)
             else group_table(name_or_table))
    got = _groupoid_cache.get(id(table))
    if got is None:
        got = from_group(table)
        _groupoid_cache[id(table)] = got
    return got


_inclusion_cache: Dict[tuple, GroupoidFunctor] = {}


def subgroup_inclusion(table: GroupTable, H) -> GroupoidFunctor:
    """The inclusion functor of a subgroup H (element set) of a group table,
    as one-object groupoids.  Cached, so repeated calls share instances."""
    elems = tuple(sorted(H))
    key = (id(table), elems)
    got = _inclusion_cache.get(key)
    if got is None:
        sub, embedding = table.subgroup_table(elems)
        HG = from_group(sub)
        GG = group_groupoid(table)
        got = GroupoidFunctor(HG, GG, [0], list(embedding),
                              name=f"incl[{','.join(table.names[g] for g in elems)}]",
                              check=False)
        _inclusion_cache[key] = got
    return got


def conjugation_natiso(incl_a: GroupoidFunctor, incl_b: GroupoidFunctor,
                       g: int):
    """The 2-cell gamma_g: incl_a => incl_b∘c_g-style between parallel
    one-object functors into a group, with single component g.

    Valid iff g·a(x)·g⁻¹ = b(x) pointwise; raises otherwise.
    """
    from .groupoid import NatIso
    return NatIso(incl_a, incl_b, (g,))


# -- JSON formats --------------------------------------------------------


def group_from_json(doc: dict, name="") -> GroupTable:
    if "order" not in doc or "table" not in doc:
        raise StructureError("group JSON needs 'order' and 'table'")
    order = int(doc["order"])
    table = doc["table"]
    if len(table) != order:
        raise StructureError("group table size disagrees with order")
    return GroupTable(table, names=doc.get("names"),
                      name=doc.get("name", name))


def group_to_json(table: GroupTable) -> dict:
    return {"order": table.order,
            "table": [list(row) for row in table.mult],
            "names": list(table.names),
            "name": table.name}


def groupoid_to_json(G: FiniteGroupoid) -> dict:
    compose = []
    for f in G.morphisms():
        for g in G.out_morphisms(G.tgt[f]):
            compose.append([g, f, G.compose(g, f)])
    return {
        "objects": G.n_objects,
        "morphisms": [[G.src[m], G.tgt[m]] for m in G.morphisms()],
        "compose": compose,
        "identities": list(G.identity),
        "inverses": [G.inv(m) for m in G.morphisms()],
    }


def groupoid_from_json(doc: dict) -> FiniteGroupoid:
    mors = doc["morphisms"]
    table = {(g, f): h for g, f, h in doc["compose"]}
    G = FiniteGroupoid(
        int(doc["objects"]),
        [m[0] for m in mors], [m[1] for m in mors],
        doc["identities"], compose_table=table,
        inverse=doc.get("inverses"))
    G.validate()
    return G
