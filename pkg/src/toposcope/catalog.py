"""Built-in example sites and the standard presheaf/subobject test families."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement

from .fincat import FinCategory, validate_category
from . import presheaf as ps
from . import cohesion


class BudgetExceeded(Exception):
    pass


@lru_cache(maxsize=None)
def build_delta1() -> FinCategory:
    """The reflexive-graph site: one node object, one edge object.

    Seven morphisms: the identities, the two endpoint inclusions d0, d1, the
    collapse s (s∘d0 = s∘d1 = id0) and the two constant endo-edges
    e0 = d0∘s, e1 = d1∘s.
    """
    return validate_category({
        "name": "delta1",
        "objects": ["O0", "O1"],
        "morphisms": [
            ("id0", "O0", "O0"), ("id1", "O1", "O1"),
            ("d0", "O0", "O1"), ("d1", "O0", "O1"),
            ("s", "O1", "O0"), ("e0", "O1", "O1"), ("e1", "O1", "O1"),
        ],
        "identities": {"O0": "id0", "O1": "id1"},
        "compose": [
            ("s", "d0", "id0"), ("s", "d1", "id0"),
            ("d0", "s", "e0"), ("d1", "s", "e1"),
            ("s", "e0", "s"), ("s", "e1", "s"),
            ("e0", "d0", "d0"), ("e0", "d1", "d0"),
            ("e1", "d0", "d1"), ("e1", "d1", "d1"),
            ("e0", "e0", "e0"), ("e0", "e1", "e0"),
            ("e1", "e0", "e1"), ("e1", "e1", "e1"),
        ],
    })


def _monotone_maps(a: int, b: int):
    """Order-preserving maps [a] -> [b] as value tuples."""
    for vals in combinations_with_replacement(range(b + 1), a + 1):
        yield vals


@lru_cache(maxsize=None)
def build_delta_trunc(n: int) -> FinCategory:
    """The full subcategory of the simplex category on [0], ..., [n].

    Morphisms are all order-preserving maps, named by their value tuples;
    only n <= 2 fits the morphism-count budget.
    """
    if n not in (1, 2):
        raise BudgetExceeded("truncation at %d exceeds the morphism budget" % n)
    objects = ["[%d]" % k for k in range(n + 1)]
    morphisms = []
    values = {}
    for a in range(n + 1):
        for b in range(n + 1):
            for vals in _monotone_maps(a, b):
                name = "%s_%d%d" % ("".join(map(str, vals)), a, b)
                morphisms.append((name, objects[a], objects[b]))
                values[name] = (a, b, vals)
    identities = {
        objects[a]: "%s_%d%d" % ("".join(map(str, range(a + 1))), a, a)
        for a in range(n + 1)
    }
    compose = []
    for g, (b1, c, gv) in values.items():
        for f, (a, b2, fv) in values.items():
            if b1 != b2:
                continue
            hv = tuple(gv[v] for v in fv)
            h = "%s_%d%d" % ("".join(map(str, hv)), a, c)
            compose.append((g, f, h))
    return validate_category({
        "name": "delta%d" % n,
        "objects": objects,
        "morphisms": morphisms,
        "identities": identities,
        "compose": compose,
    })


@lru_cache(maxsize=None)
def build_two_point_cone() -> FinCategory:
    """A pre-cohesive site distinct from delta1: maps of a point and a pair.

    Objects T (terminal) and V; V carries the two points q0, q1, the
    retraction r, the two constant endomaps c0 = q0∘r, c1 = q1∘r, and the
    swap involution w: the full transformation structure on a two-element
    set, so associativity holds by function composition.
    """
    t_set, v_set = (0,), (0, 1)
    funcs = {
        "idT": (t_set, t_set, {0: 0}),
        "idV": (v_set, v_set, {0: 0, 1: 1}),
        "q0": (t_set, v_set, {0: 0}),
        "q1": (t_set, v_set, {0: 1}),
        "r": (v_set, t_set, {0: 0, 1: 0}),
        "c0": (v_set, v_set, {0: 0, 1: 0}),
        "c1": (v_set, v_set, {0: 1, 1: 1}),
        "w": (v_set, v_set, {0: 1, 1: 0}),
    }
    obj_of = {t_set: "T", v_set: "V"}
    morphisms = [(n, obj_of[d], obj_of[c]) for n, (d, c, _) in funcs.items()]
    compose = []
    for g, (gd, gc, gm) in funcs.items():
        for f, (fd, fc, fm) in funcs.items():
            if fc != gd:
                continue
            hm = {x: gm[fm[x]] for x in fd}
            h = next(
                n for n, (d, c, m) in funcs.items()
                if d == fd and c == gc and m == hm)
            compose.append((g, f, h))
    return validate_category({
        "name": "two_point_cone",
        "objects": ["T", "V"],
        "morphisms": morphisms,
        "identities": {"T": "idT", "V": "idV"},
        "compose": compose,
    })


CATALOG_BUILDERS = {
    "delta1": build_delta1,
    "delta2": lambda: build_delta_trunc(2),
    "two_point_cone": build_two_point_cone,
}


def catalog_sites() -> dict[str, FinCategory]:
    """All built-in sites used by catalog sweeps."""
    return {name: build() for name, build in CATALOG_BUILDERS.items()}


@lru_cache(maxsize=None)
def build_parallel_edges():
    """The two-node, two-parallel-edge reflexive graph and its one-edge part.

    Returns (X, u) on delta1: X has nodes a, b, their loops and two parallel
    edges e1, e2 from a to b; u is the subobject generated by e1 (both nodes,
    both loops, the edge e1).
    """
    C = build_delta1()
    X = ps.validate_presheaf(C, {
        "carrier": {"O0": ["a", "b"], "O1": ["la", "lb", "e1", "e2"]},
        "action": {
            "d0": {"la": "a", "lb": "b", "e1": "a", "e2": "a"},
            "d1": {"la": "a", "lb": "b", "e1": "b", "e2": "b"},
            "s": {"a": "la", "b": "lb"},
            "e0": {"la": "la", "lb": "lb", "e1": "la", "e2": "la"},
            "e1": {"la": "la", "lb": "lb", "e1": "lb", "e2": "lb"},
        },
    }, label="parallel_edges")
    u = ps.generated_subobject(X, {"O1": ["e1"]}, label="one_edge")
    return X, u


def catalog_presheaves(C: FinCategory, max_size: int | None = None) -> list[ps.Presheaf]:
    """The standard presheaf family on a catalog site, for sweeps and audits."""
    out = [
        ps.initial(C),
        ps.terminal(C),
        cohesion.p_upperstar(C, 2),
        cohesion.p_upperstar(C, 3),
    ]
    if cohesion.check_precohesive(C).verdict:
        out.append(cohesion.p_uppershriek(C, 2))
    out.extend(ps.yoneda(C, c) for c in range(C.n_obj))
    out.append(ps.subobject_classifier(C))
    if C.name == "delta1":
        X, u = build_parallel_edges()
        out.extend([X, u.as_presheaf()])
    uniq: list[ps.Presheaf] = []
    for x in out:
        if x not in uniq and (max_size is None or x.total_size <= max_size):
            uniq.append(x)
    return uniq


def catalog_subobjects(C: FinCategory, max_ambient_size: int = 8) -> list[ps.Subobject]:
    """Every subobject of every small catalog presheaf, plus the named ones."""
    out: list[ps.Subobject] = []
    for x in catalog_presheaves(C):
        if x.total_size <= max_ambient_size:
            out.extend(ps.all_subobjects(x))
    if C.name == "delta1":
        X, u = build_parallel_edges()
        if u not in out:
            out.append(u)
    return out
