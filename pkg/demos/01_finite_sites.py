#!/usr/bin/env python3
# Build a finite site by hand, validate it, and poke at its structure.
#
# A site here is a finite category given by an explicit composition table.
# The running example is the reflexive-graph site: an object of nodes, an
# object of edges, two endpoint inclusions, and the collapse map.

from toposcope import (
    build_delta1, build_delta_trunc, build_two_point_cone,
    chosen_terminal, points, terminal_objects, validate_category,
)
from toposcope.fincat import NonAssociative
from toposcope.sitefile import SiteFile, dump_site

C = build_delta1()
print("validated:", C)
print("objects:", C.obj_names)
print("morphisms:", C.mor_names)

# Composition is just a table lookup; s∘d0 is the node identity.
s, d0 = C.mor_index("s"), C.mor_index("d0")
print("s∘d0 =", C.mor_name(C.compose(s, d0)))

# The node object is terminal: exactly one morphism into it from anywhere.
print("terminal objects:", [C.obj_name(t) for t in terminal_objects(C)])
print("chosen terminal:", C.obj_name(chosen_terminal(C)))

# Points of the edge object = morphisms from the terminal = the two endpoints.
o1 = C.obj_index("O1")
print("points of O1:", [C.mor_name(q) for q in points(C, o1)])

# Validation is exhaustive: break one composite and the scan names a triple.
raw = {
    "name": "broken",
    "objects": ["O0", "O1"],
    "morphisms": [("id0", "O0", "O0"), ("id1", "O1", "O1"),
                  ("d0", "O0", "O1"), ("d1", "O0", "O1"),
                  ("s", "O1", "O0"), ("e0", "O1", "O1"), ("e1", "O1", "O1")],
    "identities": {"O0": "id0", "O1": "id1"},
    "compose": [("s", "d0", "id0"), ("s", "d1", "id0"),
                ("d0", "s", "e0"), ("d1", "s", "e1"),
                ("s", "e0", "s"), ("s", "e1", "s"),
                ("e0", "d0", "d0"), ("e0", "d1", "d0"),
                ("e1", "d0", "d1"), ("e1", "d1", "d1"),
                ("e0", "e0", "e1"),  # should be e0
                ("e0", "e1", "e0"), ("e1", "e0", "e1"), ("e1", "e1", "e1")],
}
try:
    validate_category(raw)
except NonAssociative as err:
    print("caught:", err)

# Two more catalog sites: the 2-truncated simplex category, and the site of
# maps between a one-point and a two-point set.
for D in (build_delta_trunc(2), build_two_point_cone()):
    print(D, "| terminal:", D.obj_name(chosen_terminal(D)))

# Sites round-trip through a YAML-based .site file (see docs/FORMAT.md).
print()
print(dump_site(SiteFile("two_point_cone", build_two_point_cone())))
