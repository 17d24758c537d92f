#!/usr/bin/env python3
# The presheaf calculus on the reflexive-graph site: presheaves are reflexive
# graphs, and every construction below is computed by explicit enumeration.

from toposcope import (
    build_delta1, build_parallel_edges, constant, exponential,
    generated_subobject, nat_transformations, pi0, product,
    pullback_subobject, subobject_classifier, terminal, yoneda,
)

C = build_delta1()

# The representable on the edge object is the "generic edge": two nodes,
# one real edge, and the two degenerate loops.
y1 = yoneda(C, C.obj_index("O1"))
print("y(O1) carriers:", [y1.at(c) for c in range(2)])

# The graph with two nodes and two parallel edges, plus its one-edge part.
X, u = build_parallel_edges()
print("X nodes:", X.at(0), "edges:", X.at(1))
print("one-edge subobject selects:", [sorted(s) for s in u.selected])

# Hom-sets are enumerated exhaustively.  Maps into the discrete pair are
# exactly the two-colourings that are constant on connected components.
p2 = constant(C, 2, label="discrete pair")
print("|Nat(X, discrete pair)| =", len(nat_transformations(X, p2)),
      " (X is connected: pi0 =", pi0(X).count, ")")

# Global points of X = maps from the terminal graph = the two nodes.
print("|Nat(1, X)| =", len(nat_transformations(terminal(C), X)))

# Products are pointwise; the square of the generic edge has 4 nodes, 9 edges.
sq = product(y1, y1)
print("y(O1)^2 sizes:", [len(sq.at(c)) for c in range(2)], "pi0:", pi0(sq).count)

# Exponentials: carrier at c is Nat(y(c) x X, Z).  Raising the discrete pair
# to a connected graph gives the discrete pair back.
e = exponential(p2, y1)
print("(discrete pair)^(y(O1)) sizes:", [len(e.at(c)) for c in range(2)])

# The subobject classifier: sieves on each object.  Reflexive graphs have
# the famous five truth values at the edge object.
omega = subobject_classifier(C)
print("Omega carriers:")
for c in range(2):
    print("  %s:" % C.obj_name(c), omega.at(c))

# Nat(X, Omega) is in bijection with the subgraphs of X.
print("|Nat(X, Omega)| =", len(nat_transformations(X, omega)))

# Connected components via union-find over all elements and actions.  The
# two one-edge subgraphs overlap in the bare nodes: two components.
v = generated_subobject(X, {"O1": ["e2"]}, label="other_edge")
overlap = pullback_subobject(u, v.inclusion())
print("components of X:", pi0(X).count,
      "| components of the overlap of the two edges:",
      pi0(overlap.as_presheaf()).count)
