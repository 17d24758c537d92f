"""Command-line surface: validate sites, list structure, run the verifiers.

Exit codes: 0 for a true verdict or a successful listing, 1 for a false
verdict, 2 for input or usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog, cohesion, envelope, presheaf as ps, sieves as sv, verify
from .fincat import CategoryError, FinCategory
from .sitefile import SiteFile, SiteFileError, load_site

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_INPUT = 2

INPUT_ERRORS = (
    SiteFileError, CategoryError, ps.PresheafError, sv.SieveError,
    sv.TopologyError, sv.TooLarge, catalog.BudgetExceeded,
    cohesion.NotPrecohesive, OSError,
)


def _resolve_site(spec: str) -> SiteFile:
    builder = catalog.CATALOG_BUILDERS.get(spec)
    if builder is not None:
        C = builder()
        sf = SiteFile(C.name, C)
        if spec == "delta1":
            X, u = catalog.build_parallel_edges()
            sf.presheaves = {"parallel_edges": X}
            sf.subobjects = {"one_edge": u}
        return sf
    return load_site(spec)


def _resolve_object(sf: SiteFile, name: str) -> ps.Presheaf:
    C = sf.category
    builtin = {
        "initial": lambda: ps.initial(C),
        "terminal": lambda: ps.terminal(C),
        "omega": lambda: ps.subobject_classifier(C),
        "pstar2": lambda: cohesion.p_upperstar(C, 2),
    }
    if name in builtin:
        return builtin[name]()
    if name in sf.presheaves:
        return sf.presheaves[name]
    raise SiteFileError(
        "unknown object %r: expected one of %s or a presheaf from the site file"
        % (name, "/".join(sorted(builtin))))


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _emit_reports(site_name: str, reports, fmt: str, out: str | None) -> int:
    if fmt == "machine":
        _emit(json.dumps(verify.report_document(site_name, reports), indent=2), out)
    else:
        _emit(verify.render_text(reports), out)
    return EXIT_TRUE if all(r.verdict for r in reports) else EXIT_FALSE


def _cmd_validate(args) -> int:
    sf = _resolve_site(args.site)
    C = sf.category
    lines = ["site %s: %d objects, %d morphisms: valid"
             % (C.name or args.site, C.n_obj, C.n_mor)]
    for pname, X in sf.presheaves.items():
        lines.append("presheaf %s: sizes %s: valid"
                     % (pname, [len(X.at(c)) for c in range(C.n_obj)]))
    for sname, u in sf.subobjects.items():
        lines.append("subobject %s of %s: sizes %s: valid"
                     % (sname, u.ambient.label, [len(s) for s in u.selected]))
    _emit("\n".join(lines), args.out)
    return EXIT_TRUE


def _cmd_omega(args) -> int:
    sf = _resolve_site(args.site)
    C = sf.category
    om = ps.subobject_classifier(C)
    lines = []
    for c in range(C.n_obj):
        lines.append("Omega(%s): %d sieves" % (C.obj_name(c), len(om.at(c))))
        for s in sv.sieves_on(C, c):
            lines.append("  %s" % sv.sieve_label(C, s))
    _emit("\n".join(lines), args.out)
    return EXIT_TRUE


def _cmd_topologies(args) -> int:
    sf = _resolve_site(args.site)
    C = sf.category
    tops = sv.enumerate_topologies(C, budget=args.budget)
    lines = ["%d topologies on %s" % (len(tops), C.name or args.site)]
    for i, t in enumerate(tops):
        tags = []
        if t == sv.trivial_topology(C):
            tags.append("trivial")
        if t == sv.degenerate_topology(C):
            tags.append("degenerate")
        if t == sv.double_negation(C):
            tags.append("dense-sieves")
        lines.append("#%d (%d covers)%s" % (i, t.total, " " + ",".join(tags) if tags else ""))
        for oname, labels in t.describe().items():
            lines.append("  %s: %s" % (oname, " ".join(labels)))
    _emit("\n".join(lines), args.out)
    return EXIT_TRUE


def _cmd_envelope(args) -> int:
    sf = _resolve_site(args.site)
    z = _resolve_object(sf, args.object)
    top = envelope.envelope_topology(z)
    lines = ["envelope of %s on %s%s"
             % (args.object, sf.category.name or args.site,
                " (trivial topology)" if top.is_trivial else "")]
    for oname, labels in top.describe().items():
        lines.append("  %s: %s" % (oname, " ".join(labels)))
    _emit("\n".join(lines), args.out)
    return EXIT_TRUE


def _cmd_precohesive(args) -> int:
    sf = _resolve_site(args.site)
    rep = cohesion.check_precohesive(sf.category)
    lines = ["local: %s" % rep.local,
             "hyperconnected: %s" % rep.hyperconnected,
             "pi0_preserves_products: %s" % rep.pi0_preserves_products,
             "connected_unit: %s" % rep.connected_unit,
             "pre-cohesive: %s" % rep.verdict]
    _emit("\n".join(lines), args.out)
    return EXIT_TRUE if rep.verdict else EXIT_FALSE


def _cmd_verify_theorem(args) -> int:
    sf = _resolve_site(args.site)
    report = verify.verify_weak_aufhebung(sf.category, max_a=args.max_a, budget=args.budget)
    return _emit_reports(sf.category.name or args.site, [report], args.format, args.out)


def _cmd_verify_all(args) -> int:
    if args.catalog or not args.sites:
        sites = list(catalog.catalog_sites().items())
    else:
        sites = []
        for spec in args.sites:
            sf = _resolve_site(spec)
            sites.append((sf.category.name or spec, sf.category))
    reports = []
    first = True
    for name, C in sites:
        for r in verify.run_all(C, max_a=args.max_a, budget=args.budget,
                                include_counterexample=first):
            r.details.setdefault("site", name)
            r.id = "%s/%s" % (name, r.id)
            reports.append(r)
        first = False
    return _emit_reports("catalog", reports, args.format, args.out)


def _cmd_report(args) -> int:
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SiteFileError("cannot read report %s: %s" % (args.file, exc))
    if doc.get("format") != verify.REPORT_FORMAT:
        raise SiteFileError("not a %s document" % verify.REPORT_FORMAT)
    if args.format == "machine":
        _emit(json.dumps(doc, indent=2), args.out)
    else:
        reports = [verify.Report(**claim) for claim in doc.get("claims", [])]
        _emit(verify.render_text(reports), args.out)
    return EXIT_TRUE if all(c.get("verdict") for c in doc.get("claims", [])) else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toposcope",
        description="Presheaf-topos workbench on finite sites: sieves, "
                    "topologies, envelopes, cohesion, and theorem verifiers.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        p.add_argument("--out", help="write output to this path instead of stdout")
        return p

    p = add("validate", _cmd_validate, help="validate a site file or builtin site")
    p.add_argument("site")
    p = add("omega", _cmd_omega, help="sieve counts and sieves per object")
    p.add_argument("site")
    p = add("topologies", _cmd_topologies, help="enumerate all topologies")
    p.add_argument("site")
    p.add_argument("--budget", type=int, default=None,
                   help="override the enumeration budget (TOPOSCOPE_ENUM_BUDGET)")
    p = add("envelope", _cmd_envelope, help="covers of the least subtopos containing an object")
    p.add_argument("site")
    p.add_argument("--object", required=True,
                   help="initial|terminal|omega|pstar2 or a presheaf name from the site file")
    p = add("precohesive", _cmd_precohesive, help="pre-cohesion flags of the site")
    p.add_argument("site")
    p = add("verify-theorem", _cmd_verify_theorem,
            help="verify the least-subtopos theorem on one site")
    p.add_argument("site")
    p.add_argument("--max-a", type=int, default=3)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--format", choices=("text", "machine"), default="text")
    p = add("verify-all", _cmd_verify_all, help="run every verifier")
    p.add_argument("sites", nargs="*")
    p.add_argument("--catalog", action="store_true",
                   help="run over the builtin catalog (default when no sites given)")
    p.add_argument("--max-a", type=int, default=3)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--format", choices=("text", "machine"), default="text")
    p = add("report", _cmd_report, help="re-render a saved machine report")
    p.add_argument("file")
    p.add_argument("--format", choices=("text", "machine"), default="text")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_TRUE
    try:
        return args.fn(args)
    except INPUT_ERRORS as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
