"""The pre-cohesive adjoint string for presheaves over finite sets.

For a site with a terminal object and a point in every object, the global
geometric morphism to finite sets carries the string
pieces ⊣ discrete ⊣ sections ⊣ codiscrete, computed here as
``p_shriek`` (connected components), ``p_upperstar`` (constant presheaves),
``p_star_direct`` (global sections) and ``p_uppershriek`` (functions on
points).  ``check_precohesive`` verifies the finite site-level criteria;
hyperconnectedness is checked via the proxy "every object has a point" and
its two used consequences (the discrete skeleton is monic, sections of a
constant presheaf recover the set), so any divergence surfaces as an error.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fincat import FinCategory, chosen_terminal, points, terminal_objects, NoTerminal
from . import presheaf as ps


class NotPrecohesive(Exception):
    pass


class SkeletonNotMonic(Exception):
    pass


class EquivalenceBroken(Exception):
    def __init__(self, report):
        self.report = report
        super().__init__("three-way equivalence broken: %s" % (report,))


@dataclass(frozen=True)
class CohesiveStructure:
    site: FinCategory
    terminal: int
    points_table: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class PrecohesionReport:
    local: bool
    hyperconnected: bool
    pi0_preserves_products: bool
    connected_unit: bool

    @property
    def verdict(self) -> bool:
        return (self.local and self.hyperconnected
                and self.pi0_preserves_products and self.connected_unit)


def cohesive_structure(C: FinCategory) -> CohesiveStructure:
    t = chosen_terminal(C)
    table = tuple(C.hom(t, c) for c in range(C.n_obj))
    return CohesiveStructure(C, t, table)


def check_precohesive(C: FinCategory) -> PrecohesionReport:
    """Site-level pre-cohesion flags.

    ``pi0_preserves_products`` uses the finite criterion: components preserve
    colimits and every presheaf is a colimit of representables, so it
    suffices that every binary product of representables is connected.
    """
    local = bool(terminal_objects(C))
    hyper = local and all(len(points(C, c)) > 0 for c in range(C.n_obj))
    prods = all(
        ps.pi0(ps.product(ps.yoneda(C, c), ps.yoneda(C, d))).count == 1
        for c in range(C.n_obj) for d in range(C.n_obj)
    )
    unit = ps.pi0(ps.terminal(C)).count == 1
    return PrecohesionReport(local, hyper, prods, unit)


def _require(C: FinCategory) -> CohesiveStructure:
    report = check_precohesive(C)
    if not report.verdict:
        raise NotPrecohesive("site %r is not pre-cohesive: %s" % (C.name, report))
    return cohesive_structure(C)


def p_shriek(X: ps.Presheaf) -> ps.Pi0:
    """Connected components of X (the discrete reflection)."""
    return ps.pi0(X)


def p_shriek_map(f: ps.NatTransf) -> dict:
    """The induced map on components."""
    return ps.pi0_map(f)


def p_shriek_iso(f: ps.NatTransf) -> bool:
    m = ps.pi0_map(f)
    return len(set(m.values())) == len(m) == ps.pi0(f.target).count


def p_upperstar(C: FinCategory, values) -> ps.Presheaf:
    """Discrete inclusion: the constant presheaf at a finite set."""
    size = values if isinstance(values, int) else len(tuple(values))
    return ps.constant(C, values, label="p*%s" % size)


def p_star_direct(X: ps.Presheaf) -> tuple[str, ...]:
    """Global sections of X, cross-checked against evaluation at the terminal.

    Enumerates Nat(1, X) and verifies that evaluation at the terminal object
    is a bijection onto X(terminal); returns the carrier at the terminal.
    """
    cs = _require(X.site)
    pts = ps.global_points(X)
    values = [g.at(cs.terminal, "*") for g in pts]
    if sorted(values) != list(X.at(cs.terminal)):
        raise RuntimeError(
            "global sections disagree with evaluation at the terminal; this is a bug")
    return X.at(cs.terminal)


def p_star_map(f: ps.NatTransf) -> dict:
    """The induced map on global sections (evaluation at the terminal)."""
    cs = _require(f.source.site)
    return dict(f.component[cs.terminal])


def p_star_iso(f: ps.NatTransf) -> bool:
    cs = _require(f.source.site)
    comp = f.component[cs.terminal]
    return len(set(comp.values())) == len(comp) == len(f.target.at(cs.terminal))


def _function_name(pts, values) -> str:
    return "[%s]" % ",".join("%s:%s" % (p, v) for p, v in zip(pts, values))


def p_uppershriek(C: FinCategory, values) -> ps.Presheaf:
    """Codiscrete inclusion: carrier(c) = functions from points(c) to the set."""
    cs = _require(C)
    if isinstance(values, int):
        names = tuple(str(i) for i in range(values))
    else:
        names = tuple(str(v) for v in values)
    # points ordered by name everywhere, so names and actions stay aligned
    sorted_points = [
        tuple(sorted(cs.points_table[c], key=C.mor_name)) for c in range(C.n_obj)
    ]
    point_names = [
        tuple(C.mor_name(q) for q in sorted_points[c]) for c in range(C.n_obj)
    ]

    def functions(c):
        pts = point_names[c]
        if not pts:
            yield ()
            return
        def rec(i):
            if i == len(pts):
                yield ()
                return
            for rest in rec(i + 1):
                for v in names:
                    yield (v,) + rest
        yield from rec(0)

    carrier = []
    tables = []  # per object: function name -> {point name: value}
    for c in range(C.n_obj):
        table = {}
        for vals in functions(c):
            table[_function_name(point_names[c], vals)] = dict(zip(point_names[c], vals))
        carrier.append(tuple(sorted(table)))
        tables.append(table)

    action = []
    for f in range(C.n_mor):
        d, c = C.dom[f], C.cod[f]
        amap = {}
        for name, fun in tables[c].items():
            vals = tuple(
                fun[C.mor_name(C.compose(f, q))] for q in sorted_points[d]
            )
            amap[name] = _function_name(point_names[d], vals)
        action.append(amap)
    return ps.Presheaf(C, carrier, action, label="p^!%d" % len(names))


def discrete_skeleton(X: ps.Presheaf) -> ps.Subobject:
    """The image of the counit (constant on global sections) -> X.

    At each object it selects the restrictions of global sections along the
    unique map to the terminal; injectivity of those restrictions is the
    monicity given by hyperconnectedness and is asserted.
    """
    cs = _require(X.site)
    C = X.site
    sections = X.at(cs.terminal)
    selected = []
    for c in range(C.n_obj):
        bang = C.hom(c, cs.terminal)[0]
        values = [X.act(bang, x) for x in sections]
        if len(set(values)) != len(values):
            raise SkeletonNotMonic(
                "restrictions of global sections collide at %s" % C.obj_name(c))
        selected.append(set(values))
    return ps.Subobject(X, selected, label="skeleton(%s)" % (X.label or "?"))


@dataclass(frozen=True)
class LemmaPi0Report:
    """Verdicts of the three-way equivalence for one map.

    Legs: internally orthogonal to the discrete two-element object; the
    components map is a bijection; internally orthogonal to every constant
    presheaf of the tested sizes.  The legs are a genuine equivalence
    whenever size 2 is among the tested sizes.
    """

    internal_to_two: bool
    pi0_iso: bool
    per_size: tuple

    @property
    def all_sizes(self) -> bool:
        return all(v for _, v in self.per_size)

    @property
    def agree(self) -> bool:
        return self.internal_to_two == self.pi0_iso == self.all_sizes


def check_lemma_pi0(f: ps.NatTransf, sizes=(0, 1, 2, 3)) -> LemmaPi0Report:
    """Check the three-way equivalence on one map; disagreement is an error."""
    from . import envelope as env

    C = f.source.site
    _require(C)
    leg_two = env.is_internally_orthogonal(f, p_upperstar(C, 2)).holds
    leg_pi0 = p_shriek_iso(f)
    per_size = tuple(
        (n, env.is_internally_orthogonal(f, p_upperstar(C, n)).holds) for n in sizes
    )
    report = LemmaPi0Report(leg_two, leg_pi0, per_size)
    if not report.agree:
        raise EquivalenceBroken(report)
    return report
