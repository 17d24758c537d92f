#!/usr/bin/env python3
# Orthogonality in three strengths, and envelopes: the least subtopos whose
# sheaves include a given object, computed two independent ways.

from toposcope import (
    build_delta1, build_delta_trunc, build_parallel_edges, constant,
    double_negation, envelope_topology, initial, is_internally_orthogonal,
    is_orthogonal, is_stably_orthogonal, oracle_envelope,
    subobject_classifier, terminal,
)

C = build_delta1()
X, u = build_parallel_edges()
p2 = constant(C, 2, label="discrete pair")

# Plain orthogonality: restriction along the map is a bijection of hom-sets.
print("u orthogonal to the discrete pair:", is_orthogonal(u.inclusion(), p2).holds)

# Internal orthogonality strengthens this to the exponential level.
print("u internally orthogonal:", is_internally_orthogonal(u.inclusion(), p2).holds)

# Stable orthogonality quantifies over all pullbacks, and here it FAILS:
# pulling the one-edge subobject back along the other edge leaves the two
# bare nodes, which a two-colouring can tell apart.
verdict = is_stably_orthogonal(u, p2)
print("u stably orthogonal:", verdict.holds)
print("witness:", verdict.witness)

# The envelope of an object: covers are the sieves all of whose pullbacks
# are orthogonal to it.  For the initial presheaf this recovers exactly the
# dense-sieve topology.
print("\nenvelope(initial) == dense sieves:",
      envelope_topology(initial(C)) == double_negation(C))

# For the discrete pair on reflexive graphs the envelope is trivial: the
# pair is so hard to approximate that only the whole topos contains it.
j = envelope_topology(p2)
print("envelope(discrete pair) on reflexive graphs:", j.describe())

# For the terminal object everything covers (every topos contains it).
print("envelope(terminal) total covers:", envelope_topology(terminal(C)).total)

# The subobject classifier weakly generates: its envelope is always trivial.
print("envelope(classifier) is trivial:",
      envelope_topology(subobject_classifier(C)).is_trivial)

# The independent oracle: enumerate every topology, keep those for which the
# object is a sheaf, and join them.  It must agree with the direct route.
print("oracle agrees on the discrete pair:", oracle_envelope(p2) == j)

# On the 2-truncated simplex site the discrete pair's envelope is NOT
# trivial: the boundary sieve of the top simplex covers.  (That subtopos is
# the 1-skeletal level.)
D = build_delta_trunc(2)
jD = envelope_topology(constant(D, 2, label="discrete pair"))
print("\nenvelope on the 2-truncated simplex site is trivial:", jD.is_trivial)
for oname, covers in jD.describe().items():
    print("  %s: %d cover(s)" % (oname, len(covers)))
