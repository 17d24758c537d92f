"""Top-level verifiers: replay the envelope theory on a site, emit reports.

Each verifier produces a Report with a stable claim id, a self-contained
statement of the claim, a verdict, witnesses (mandatory when the verdict is
false) and wall time.  Verdicts and witnesses are deterministic; only the
timing field varies between runs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .fincat import FinCategory
from . import presheaf as ps
from . import sieves as sv
from . import envelope as env
from . import cohesion
from . import catalog

REPORT_FORMAT = "toposcope-report"
REPORT_VERSION = 1

MINIMALITY_NOTE = (
    "minimality is certified against the fully enumerated topology lattice "
    "and the tested set sizes only; larger sites fall back to the direct and "
    "connectivity legs"
)


@dataclass
class Report:
    id: str
    anchor: str
    verdict: bool
    witnesses: list = field(default_factory=list)
    millis: float = 0.0
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.verdict and not self.witnesses:
            raise ValueError("a false report must carry at least one witness")

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "anchor": self.anchor,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "millis": self.millis,
            "details": self.details,
        }


def report_document(site_name: str, reports: list[Report]) -> dict:
    return {
        "format": REPORT_FORMAT,
        "version": REPORT_VERSION,
        "site": site_name,
        "claims": [r.to_dict() for r in sorted(reports, key=lambda r: r.id)],
    }


def render_text(reports: list[Report]) -> str:
    lines = []
    for r in sorted(reports, key=lambda r: r.id):
        lines.append("[%s] %s  (%.1f ms)" % ("PASS" if r.verdict else "FAIL", r.id, r.millis))
        lines.append("    claim: %s" % r.anchor)
        for w in r.witnesses:
            lines.append("    witness: %s" % (w,))
        for k, v in r.details.items():
            lines.append("    %s: %s" % (k, v))
    return "\n".join(lines)


def _ms(t0: float) -> float:
    return round((time.perf_counter() - t0) * 1000.0, 2)


def verify_weak_aufhebung(C: FinCategory, max_a: int = 3,
                          budget: int | None = None) -> Report:
    """Check that the envelope of the discrete pair is the least subtopos
    through which both the discrete and codiscrete inclusions factor.

    Legs: (a) every discrete and codiscrete presheaf of size up to max_a is a
    sheaf for the computed envelope; (b) the envelope equals the meet of the
    lattice-oracle envelopes over that family; (c) no enumerated topology
    keeping the whole family sheaves exceeds it; (d) it agrees with the
    connectivity covering criterion.  When the lattice oracle exceeds its
    budget, legs (b) and (c) are skipped and flagged while (a) and (d) run.
    """
    t0 = time.perf_counter()
    report = cohesion.check_precohesive(C)
    if not report.verdict:
        raise cohesion.NotPrecohesive("site %r is not pre-cohesive: %s" % (C.name, report))
    p2 = cohesion.p_upperstar(C, 2)
    j = env.envelope_topology(p2)
    family = [cohesion.p_upperstar(C, a) for a in range(max_a + 1)]
    family += [cohesion.p_uppershriek(C, a) for a in range(max_a + 1)]

    witnesses: list = []
    legs: dict = {}

    failures = []
    for member in family:
        res = sv.is_sheaf(member, j)
        if not res.holds:
            failures.append({"member": member.label, "witness": res.witness})
    legs["a_family_are_sheaves"] = not failures
    witnesses.extend(failures)

    # Sizes below 2 cannot separate: the equality legs need the two-element
    # object in the tested family, otherwise only consistency is checkable.
    separating = max_a >= 2
    oracle_skipped = False
    try:
        tops = sv.enumerate_topologies(C, budget=budget)
        meet = None
        for member in family:
            e = env.oracle_envelope(member, budget=budget)
            meet = e if meet is None else sv.meet_topologies(meet, e)
        if separating:
            legs["b_meet_of_oracle_envelopes"] = meet == j
        else:
            legs["b_meet_of_oracle_envelopes"] = j.leq(meet)
            legs["b_note"] = "max_a < 2: checked envelope <= truncated meet only"
        if not legs["b_meet_of_oracle_envelopes"]:
            witnesses.append({
                "leg": "b", "expected": j.describe(), "got": meet.describe()})
        if separating:
            above = []
            for t in tops:
                if all(sv.is_sheaf(member, t).holds for member in family):
                    if not t.leq(j):
                        above.append(t.describe())
            legs["c_maximal_in_lattice"] = not above
            witnesses.extend({"leg": "c", "topology": d} for d in above)
        else:
            legs["c_maximal_in_lattice"] = None
            legs["c_note"] = "max_a < 2: the truncated family cannot witness maximality"
        legs["lattice_size"] = len(tops)
    except sv.TooLarge as exc:
        oracle_skipped = True
        legs["b_meet_of_oracle_envelopes"] = None
        legs["c_maximal_in_lattice"] = None
        legs["oracle_skipped"] = str(exc)

    conn = env.connectivity_covering_criterion(C)
    legs["d_connectivity_criterion"] = conn == j
    if conn != j:
        witnesses.append({
            "leg": "d", "envelope": j.describe(), "connectivity": conn.describe()})

    checked = [v for k, v in legs.items()
               if k.startswith(("a_", "b_", "c_", "d_")) and v is not None]
    verdict = all(checked)
    return Report(
        id="weak-aufhebung",
        anchor=("the least subtopos through which both the discrete and the "
                "codiscrete inclusion factor exists and is the envelope of "
                "the discrete two-element object"),
        verdict=verdict,
        witnesses=witnesses,
        millis=_ms(t0),
        details={
            "site": C.name,
            "max_a": max_a,
            "envelope_covers": j.describe(),
            "envelope_is_trivial": j.is_trivial,
            "legs": legs,
            "oracle_skipped": oracle_skipped,
            "minimality_scope": MINIMALITY_NOTE,
        },
    )


def verify_dense_implies_pstar_iso(C: FinCategory) -> Report:
    """Check that dense monos for the envelope of the discrete pair have
    bijective global sections, and exhibit the one-way-ness witness.
    """
    t0 = time.perf_counter()
    p2 = cohesion.p_upperstar(C, 2)
    j = env.envelope_topology(p2)
    witnesses: list = []

    for c in range(C.n_obj):
        for r in j.covers_at(c):
            incl = sv.sieve_subobject(C, r).inclusion()
            if not cohesion.p_star_iso(incl):
                witnesses.append({
                    "leg": "covering-sieves",
                    "object": C.obj_name(c),
                    "sieve": sv.sieve_label(C, r),
                })

    dense_checked = 0
    for u in catalog.catalog_subobjects(C):
        if sv.is_dense_subobject(u, j):
            dense_checked += 1
            if not cohesion.p_star_iso(u.inclusion()):
                witnesses.append({
                    "leg": "dense-subobjects",
                    "ambient": u.ambient.label,
                    "selected_sizes": [len(s) for s in u.selected],
                })

    one_way = None
    for u in catalog.catalog_subobjects(C):
        if cohesion.p_star_iso(u.inclusion()) and not sv.is_dense_subobject(u, j):
            one_way = {
                "ambient": u.ambient.label,
                "selected_sizes": [len(s) for s in u.selected],
            }
            break

    return Report(
        id="dense-implies-sections-iso",
        anchor=("every dense mono for the envelope of the discrete two-element "
                "object induces a bijection on global sections; the converse "
                "fails in general"),
        verdict=not witnesses,
        witnesses=witnesses,
        millis=_ms(t0),
        details={
            "site": C.name,
            "dense_subobjects_checked": dense_checked,
            "sections_iso_but_not_dense": one_way,
        },
    )


def check_minus_infinity(C: FinCategory) -> Report:
    """Check that the envelope of the initial presheaf is the topology of
    dense sieves, coverwise."""
    t0 = time.perf_counter()
    e = env.envelope_topology(ps.initial(C))
    nn = sv.double_negation(C)
    witnesses = []
    if e != nn:
        for c in range(C.n_obj):
            if e.covers[c] != nn.covers[c]:
                witnesses.append({
                    "object": C.obj_name(c),
                    "envelope": [sv.sieve_label(C, s) for s in e.covers_at(c)],
                    "dense": [sv.sieve_label(C, s) for s in nn.covers_at(c)],
                })
    return Report(
        id="envelope-of-initial-is-dense-topology",
        anchor=("the envelope of the initial object is the topology whose "
                "covers are exactly the dense sieves"),
        verdict=e == nn,
        witnesses=witnesses,
        millis=_ms(t0),
        details={"site": C.name, "covers": e.describe()},
    )


def reproduce_counterexample() -> Report:
    """Replay the two-parallel-edges counterexample on the reflexive-graph site.

    Claims: the one-edge subobject induces a bijection on connected
    components and on global sections, yet is not stably orthogonal to the
    discrete two-element object; the witnessing pullback is the two-node
    discrete subgraph.
    """
    t0 = time.perf_counter()
    C = catalog.build_delta1()
    X, u = catalog.build_parallel_edges()
    p2 = cohesion.p_upperstar(C, 2)
    incl = u.inclusion()

    pi_w, pi_x = ps.pi0(incl.source), ps.pi0(incl.target)
    claim1 = cohesion.p_shriek_iso(incl) and pi_w.count == 1 and pi_x.count == 1

    stable = env.is_stably_orthogonal(u, p2)
    wit = stable.witness or {}
    claim2 = (not stable.holds
              and wit.get("object") == "O1"
              and wit.get("element") == "e2"
              and wit.get("pullback_components") == 2)

    claim3 = (cohesion.p_star_iso(incl)
              and len(incl.source.at(C.obj_index("O0"))) == 2
              and len(X.at(C.obj_index("O0"))) == 2)

    witnesses = [{
        "claim": "components-iso", "holds": claim1,
        "components": [pi_w.count, pi_x.count],
    }, {
        "claim": "not-stably-orthogonal", "holds": claim2,
        "witness": wit,
    }, {
        "claim": "sections-iso", "holds": claim3,
        "sections": [len(incl.source.at(0)), len(X.at(0))],
    }]
    return Report(
        id="parallel-edges-counterexample",
        anchor=("for the one-edge subobject of the two-node two-parallel-edge "
                "reflexive graph: components and sections are bijective, but "
                "stable orthogonality to the discrete pair fails with a "
                "two-component pullback"),
        verdict=claim1 and claim2 and claim3,
        witnesses=witnesses,
        millis=_ms(t0),
        details={"site": "delta1"},
    )


def check_weak_generation(C: FinCategory, z: ps.Presheaf, z_label: str = "") -> Report:
    """Report whether the envelope of z is the trivial topology, i.e. whether
    z weakly generates the whole presheaf topos."""
    t0 = time.perf_counter()
    e = env.envelope_topology(z)
    generates = e.is_trivial
    witnesses = []
    if not generates:
        witnesses.append({"nontrivial_covers": e.describe()})
    return Report(
        id="weak-generation-%s" % (z_label or z.label or "object"),
        anchor="the object weakly generates the topos iff its envelope is the "
               "trivial topology (every presheaf a sheaf)",
        verdict=generates,
        witnesses=witnesses,
        millis=_ms(t0),
        details={"site": C.name, "object": z_label or z.label},
    )


def run_all(C: FinCategory, max_a: int = 3, budget: int | None = None,
            include_counterexample: bool = True) -> list[Report]:
    """Every verifier on one site.  Weak generation is checked for the
    subobject classifier, which must always pass."""
    reports = []
    if include_counterexample:
        reports.append(reproduce_counterexample())
    reports.append(check_minus_infinity(C))
    reports.append(check_weak_generation(C, ps.subobject_classifier(C), "omega"))
    reports.append(verify_weak_aufhebung(C, max_a=max_a, budget=budget))
    reports.append(verify_dense_implies_pstar_iso(C))
    return reports
