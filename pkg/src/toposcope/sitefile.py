"""The .site file format: a YAML schema for sites, presheaves and subobjects.

Identity morphisms and identity composites are implicit; only non-forced
composition entries are listed.  See docs/FORMAT.md for the grammar and
annotated examples.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import yaml

from .fincat import FinCategory, validate_category
from . import presheaf as ps


class SiteFileError(Exception):
    pass


@dataclass
class SiteFile:
    name: str
    category: FinCategory
    presheaves: dict = field(default_factory=dict)
    subobjects: dict = field(default_factory=dict)


def _require(doc, key, kind):
    if key not in doc:
        raise SiteFileError("site file is missing the %r section" % key)
    if not isinstance(doc[key], kind):
        raise SiteFileError("section %r has the wrong shape" % key)
    return doc[key]


def parse_site(text: str) -> SiteFile:
    """Parse and fully validate a .site document.

    Structural problems raise SiteFileError; mathematical problems raise the
    validation errors of the category/presheaf layers, with their witnesses.
    """
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise SiteFileError("not valid YAML: %s" % exc) from exc
    if not isinstance(doc, dict):
        raise SiteFileError("a site file must be a mapping at the top level")

    name = str(doc.get("name", ""))
    objects = _require(doc, "objects", list)
    morphisms = []
    for entry in _require(doc, "morphisms", list):
        if not isinstance(entry, dict) or not {"name", "dom", "cod"} <= set(entry):
            raise SiteFileError("morphism entries need name/dom/cod: %r" % (entry,))
        morphisms.append((str(entry["name"]), str(entry["dom"]), str(entry["cod"])))
    identities = {str(k): str(v) for k, v in _require(doc, "identities", dict).items()}
    compose = []
    for entry in doc.get("compose", []):
        if not isinstance(entry, list) or len(entry) != 3:
            raise SiteFileError("compose entries are [after, first, result]: %r" % (entry,))
        compose.append(tuple(str(x) for x in entry))

    category = validate_category({
        "name": name,
        "objects": [str(o) for o in objects],
        "morphisms": morphisms,
        "identities": identities,
        "compose": compose,
    })

    presheaves = {}
    for pname, block in (doc.get("presheaves") or {}).items():
        if not isinstance(block, dict):
            raise SiteFileError("presheaf block %r must be a mapping" % pname)
        presheaves[str(pname)] = ps.validate_presheaf(category, {
            "carrier": block.get("carrier", {}),
            "action": block.get("action", {}),
        }, label=str(pname))

    subobjects = {}
    for sname, block in (doc.get("subobjects") or {}).items():
        if not isinstance(block, dict) or "of" not in block:
            raise SiteFileError("subobject block %r needs an 'of' field" % sname)
        ambient = presheaves.get(str(block["of"]))
        if ambient is None:
            raise SiteFileError(
                "subobject %r refers to unknown presheaf %r" % (sname, block["of"]))
        select = block.get("select", {})
        chosen = [set() for _ in range(category.n_obj)]
        for oname, elems in select.items():
            chosen[category.obj_index(str(oname))] = {str(e) for e in elems}
        subobjects[str(sname)] = ps.Subobject(ambient, chosen, label=str(sname))

    return SiteFile(name, category, presheaves, subobjects)


def load_site(path) -> SiteFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SiteFileError("cannot read %s: %s" % (path, exc)) from exc
    return parse_site(text)


def dump_site(sf: SiteFile) -> str:
    """Serialize back to the .site format (identities and their composites
    stay implicit).  Round-trips through parse_site to an equal category."""
    C = sf.category
    doc: dict = {"name": sf.name or C.name}
    doc["objects"] = list(C.obj_names)
    # identities are listed too, so the morphism order survives a round-trip
    doc["morphisms"] = [
        {"name": C.mor_name(m), "dom": C.obj_name(C.dom[m]), "cod": C.obj_name(C.cod[m])}
        for m in range(C.n_mor)
    ]
    doc["identities"] = {
        C.obj_name(o): C.mor_name(C.identity[o]) for o in range(C.n_obj)
    }
    compose = []
    for g in range(C.n_mor):
        for f in range(C.n_mor):
            if not C.composable(g, f) or C.is_identity(g) or C.is_identity(f):
                continue
            compose.append([C.mor_name(g), C.mor_name(f), C.mor_name(C.compose(g, f))])
    doc["compose"] = compose

    if sf.presheaves:
        blocks = {}
        for pname, X in sf.presheaves.items():
            action = {}
            for m in range(C.n_mor):
                if C.is_identity(m):
                    continue
                action[C.mor_name(m)] = {x: X.act(m, x) for x in X.at(C.cod[m])}
            blocks[pname] = {
                "carrier": {C.obj_name(c): list(X.at(c)) for c in range(C.n_obj)},
                "action": action,
            }
        doc["presheaves"] = blocks

    if sf.subobjects:
        doc["subobjects"] = {
            sname: {
                "of": u.ambient.label,
                "select": {
                    C.obj_name(c): sorted(u.selected[c]) for c in range(C.n_obj)
                },
            }
            for sname, u in sf.subobjects.items()
        }
    return yaml.safe_dump(doc, sort_keys=False, default_flow_style=None)


def save_site(path, sf: SiteFile) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_site(sf))
