"""Law-level property tests over the catalog, driven by hypothesis."""

import hypothesis.strategies as st
from hypothesis import given, settings

import toposcope as tc
from toposcope import envelope as env, sieves as sv

SITES = list(tc.catalog_sites().values())

PULLBACK_CASES = [
    (C, r, f, g)
    for C in SITES
    for c in range(C.n_obj)
    for r in sv.sieves_on(C, c)
    for f in C.into(c)
    for g in C.into(C.dom[f])
]

TOPOLOGY_TRIPLES = [
    (C, tuple(sv.enumerate_topologies(C))) for C in SITES
]

SMALL = {
    C.name: [x for x in tc.catalog_presheaves(C) if x.total_size <= 6]
    for C in SITES
}
SMALL_CASES = [(C, x, y) for C in SITES for x in SMALL[C.name] for y in SMALL[C.name]]

SEED_POOL = [
    (C, c, r.members)
    for C in SITES
    for c in range(C.n_obj)
    for r in sv.sieves_on(C, c)
]


@given(st.sampled_from(PULLBACK_CASES))
@settings(max_examples=80, deadline=None)
def test_pullback_composes(case):
    C, r, f, g = case
    lhs = sv.pullback_sieve(C, g, sv.pullback_sieve(C, f, r))
    rhs = sv.pullback_sieve(C, C.compose(f, g), r)
    assert lhs == rhs


@given(st.sampled_from(PULLBACK_CASES))
@settings(max_examples=80, deadline=None)
def test_membership_via_pullback(case):
    C, r, f, _ = case
    assert r.contains(f) == (
        sv.pullback_sieve(C, f, r) == sv.max_sieve(C, C.dom[f]))


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_lattice_laws(data):
    C, tops = data.draw(st.sampled_from(TOPOLOGY_TRIPLES))
    j = data.draw(st.sampled_from(tops))
    k = data.draw(st.sampled_from(tops))
    meet = sv.meet_topologies(j, k)
    join = sv.join_topologies(j, k)
    assert meet == sv.meet_topologies(k, j)
    assert join == sv.join_topologies(k, j)
    assert sv.join_topologies(j, meet) == j  # absorption
    assert sv.meet_topologies(j, join) == j
    assert meet in tops and join in tops


@given(st.data())
@settings(max_examples=30, deadline=None)
def test_closure_lands_in_enumeration(data):
    C, tops = data.draw(st.sampled_from(TOPOLOGY_TRIPLES))
    pool = [(c, r.members) for c in range(C.n_obj) for r in sv.sieves_on(C, c)]
    seeds = data.draw(st.sets(st.sampled_from(pool), max_size=4))
    assignment = [set() for _ in range(C.n_obj)]
    for c, mask in seeds:
        assignment[c].add(mask)
    closed = sv._close_assignment(C, assignment)
    assert closed in tops
    assert sv.validate_topology(C, closed) == closed


@given(st.data())
@settings(max_examples=30, deadline=None)
def test_yoneda_counts(data):
    C, x, _ = data.draw(st.sampled_from(SMALL_CASES))
    c = data.draw(st.integers(min_value=0, max_value=C.n_obj - 1))
    assert len(tc.nat_transformations(tc.yoneda(C, c), x)) == len(x.at(c))


@given(st.sampled_from(SMALL_CASES))
@settings(max_examples=30, deadline=None)
def test_pi0_of_coproduct(case):
    C, x, y = case
    assert tc.pi0(tc.coproduct(x, y)).count == tc.pi0(x).count + tc.pi0(y).count


@given(st.data())
@settings(max_examples=15, deadline=None)
def test_exponential_adjunction(data):
    C, x, y = data.draw(st.sampled_from(SMALL_CASES))
    z = data.draw(st.sampled_from(SMALL[C.name]))
    lhs = len(tc.nat_transformations(tc.product(y, x), z))
    rhs = len(tc.nat_transformations(y, tc.exponential(z, x)))
    assert lhs == rhs


@given(st.sampled_from(SMALL_CASES))
@settings(max_examples=20, deadline=None)
def test_product_symmetry(case):
    C, x, y = case
    assert tc.find_iso(tc.product(x, y), tc.product(y, x)) is not None


@given(st.data())
@settings(max_examples=20, deadline=None)
def test_composition_of_nats_associative(data):
    C, x, y = data.draw(st.sampled_from(SMALL_CASES))
    z = data.draw(st.sampled_from(SMALL[C.name]))
    fs = tc.nat_transformations(x, y)
    gs = tc.nat_transformations(y, z)
    if not fs or not gs:
        return
    f = data.draw(st.sampled_from(fs))
    g = data.draw(st.sampled_from(gs))
    hs = tc.nat_transformations(z, z)
    h = data.draw(st.sampled_from(hs))
    assert f.then(g.then(h)) == f.then(g).then(h)


@given(st.data())
@settings(max_examples=25, deadline=None)
def test_envelope_antitone_sampled(data):
    C, tops = data.draw(st.sampled_from(TOPOLOGY_TRIPLES))
    z = data.draw(st.sampled_from(SMALL[C.name]))
    t = data.draw(st.sampled_from(tops))
    e = env.envelope_topology(z)
    assert sv.is_sheaf(z, t).holds == t.leq(e)
