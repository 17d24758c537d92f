from itertools import combinations

import pytest

import toposcope as tc
from toposcope import sieves as sv

from conftest import terminal_category, discrete_two


def brute_force_sieves(C, c):
    """Independent oracle: close every subset of hom(-, c) and deduplicate."""
    into = C.into(c)
    out = set()
    for k in range(len(into) + 1):
        for combo in combinations(into, k):
            mask = sum(1 << m for m in combo)
            changed = True
            while changed:
                changed = False
                for m in range(C.n_mor):
                    if not mask >> m & 1:
                        continue
                    for g in C.into(C.dom[m]):
                        gm = C.compose(m, g)
                        if not mask >> gm & 1:
                            mask |= 1 << gm
                            changed = True
            out.add(mask)
    return out


def test_sieves_on_delta1(delta1):
    o0, o1 = 0, 1
    s0 = sv.sieves_on(delta1, o0)
    assert len(s0) == 2
    s1 = sv.sieves_on(delta1, o1)
    labels = [sv.sieve_label(delta1, s) for s in s1]
    assert labels == ["{}", "{d0,e0}", "{d1,e1}", "{d0,d1,e0,e1}", "{d0,d1,e0,e1,id1}"]


def test_sieves_match_bruteforce_closure(delta1, two_point_cone):
    for C in (delta1, two_point_cone, terminal_category()):
        for c in range(C.n_obj):
            fast = {s.members for s in sv.sieves_on(C, c)}
            assert fast == brute_force_sieves(C, c)


def test_singleton_closure(delta1):
    # {s} closes to the maximal sieve on O0, since s∘d_i = id0
    s = sv.generate_sieve(delta1, 0, ["s"])
    assert s == sv.max_sieve(delta1, 0)
    # {d0} closes to {d0, e0}
    s = sv.generate_sieve(delta1, 1, ["d0"])
    assert sv.sieve_label(delta1, s) == "{d0,e0}"


def test_make_sieve_rejects_unclosed(delta1):
    with pytest.raises(sv.NotASieve):
        sv.make_sieve(delta1, 1, ["d0"])
    assert sv.make_sieve(delta1, 1, ["d0", "e0"]).size == 2


def test_sieves_terminal_category():
    C = terminal_category()
    assert [sv.sieve_label(C, s) for s in sv.sieves_on(C, 0)] == ["{}", "{id}"]


def test_pullback_examples(delta1):
    r = sv.make_sieve(delta1, 1, ["d0", "e0"])
    d1 = delta1.mor_index("d1")
    assert sv.pullback_sieve(delta1, d1, r) == sv.empty_sieve(0)
    id1 = delta1.mor_index("id1")
    assert sv.pullback_sieve(delta1, id1, r) == r
    for c in range(2):
        for f in delta1.into(c):
            assert sv.pullback_sieve(delta1, f, sv.max_sieve(delta1, c)) == \
                sv.max_sieve(delta1, delta1.dom[f])


def test_pullback_codomain_mismatch(delta1):
    with pytest.raises(sv.CodomainMismatch):
        sv.pullback_sieve(delta1, delta1.mor_index("s"), sv.max_sieve(delta1, 1))


def test_pullback_functoriality(all_sites):
    for C in all_sites.values():
        for c in range(C.n_obj):
            for r in sv.sieves_on(C, c):
                for f in C.into(c):
                    fr = sv.pullback_sieve(C, f, r)
                    for g in C.into(C.dom[f]):
                        lhs = sv.pullback_sieve(C, g, fr)
                        rhs = sv.pullback_sieve(C, C.compose(f, g), r)
                        assert lhs == rhs


def test_membership_criterion(all_sites):
    # f ∈ R iff f*R is the maximal sieve on dom f
    for C in all_sites.values():
        for c in range(C.n_obj):
            for r in sv.sieves_on(C, c):
                for f in C.into(c):
                    pulled = sv.pullback_sieve(C, f, r)
                    assert r.contains(f) == (pulled == sv.max_sieve(C, C.dom[f]))


def test_validate_trivial(delta1):
    t = sv.validate_topology(delta1, {
        "O0": [sv.max_sieve(delta1, 0)], "O1": [sv.max_sieve(delta1, 1)]})
    assert t == sv.trivial_topology(delta1)


def test_validate_unstable(delta1):
    with pytest.raises(sv.UnstableUnder):
        sv.validate_topology(delta1, {
            "O0": [sv.max_sieve(delta1, 0)],
            "O1": [sv.max_sieve(delta1, 1), ["d0", "e0"]],
        })


def test_validate_missing_maximal(delta1):
    with pytest.raises(sv.MissingMaximal):
        sv.validate_topology(delta1, {"O0": [sv.max_sieve(delta1, 0)], "O1": []})


def test_validate_transitivity(delta1):
    # the empty sieve covering both objects forces everything to cover
    with pytest.raises(sv.TransitivityFail):
        sv.validate_topology(delta1, {
            "O0": [sv.max_sieve(delta1, 0), sv.empty_sieve(0)],
            "O1": [sv.max_sieve(delta1, 1), sv.empty_sieve(1)],
        })


def test_double_negation_delta1(delta1):
    nn = sv.double_negation(delta1)
    assert nn.describe() == {
        "O0": ["{id0,s}"],
        "O1": ["{d0,d1,e0,e1}", "{d0,d1,e0,e1,id1}"],
    }
    assert sv.validate_topology(delta1, nn) == nn


def test_double_negation_terminal_category():
    C = terminal_category()
    nn = sv.double_negation(C)
    assert nn == sv.trivial_topology(C)


def test_double_negation_validates_everywhere(all_sites):
    for C in all_sites.values():
        nn = sv.double_negation(C)
        assert sv.validate_topology(C, nn) == nn


def test_double_negation_is_largest_keeping_initial_a_sheaf(all_sites):
    for C in all_sites.values():
        nn = sv.double_negation(C)
        for t in sv.enumerate_topologies(C):
            assert sv.is_sheaf(tc.initial(C), t).holds == t.leq(nn)


def test_enumerate_counts(delta1, two_point_cone, delta2):
    assert len(sv.enumerate_topologies(delta1)) == 3
    assert len(sv.enumerate_topologies(terminal_category())) == 2
    assert len(sv.enumerate_topologies(discrete_two())) == 4
    assert len(sv.enumerate_topologies(two_point_cone)) == 3
    assert len(sv.enumerate_topologies(delta2)) == 4


def test_enumerate_members_are_topologies(all_sites):
    for C in all_sites.values():
        tops = sv.enumerate_topologies(C)
        for t in tops:
            assert sv.validate_topology(C, t) == t
        assert sv.trivial_topology(C) in tops
        assert sv.degenerate_topology(C) in tops
        assert sv.double_negation(C) in tops


def test_enumerate_budget(delta2, monkeypatch):
    with pytest.raises(sv.TooLarge):
        sv.enumerate_topologies(delta2, budget=3)
    monkeypatch.setenv(sv.BUDGET_ENV_VAR, "3")
    with pytest.raises(sv.TooLarge):
        sv.enumerate_topologies(delta2)


def test_lattice_laws_against_enumeration(all_sites):
    for C in all_sites.values():
        tops = sv.enumerate_topologies(C)
        for j in tops:
            for k in tops:
                meet = sv.meet_topologies(j, k)
                join = sv.join_topologies(j, k)
                assert meet in tops and join in tops
                assert meet.leq(j) and meet.leq(k)
                assert j.leq(join) and k.leq(join)
                for other in tops:
                    if other.leq(j) and other.leq(k):
                        assert other.leq(meet)
                    if j.leq(other) and k.leq(other):
                        assert join.leq(other)


def test_meet_join_with_extremes(delta1):
    nn = sv.double_negation(delta1)
    assert sv.meet_topologies(nn, sv.trivial_topology(delta1)) == sv.trivial_topology(delta1)
    assert sv.join_topologies(nn, sv.degenerate_topology(delta1)) == sv.degenerate_topology(delta1)
    assert sv.join_topologies(sv.trivial_topology(delta1), nn) == nn


def test_everything_is_sheaf_for_trivial(delta1, parallel_edges):
    X, _ = parallel_edges
    t = sv.trivial_topology(delta1)
    for x in [X, tc.terminal(delta1), tc.initial(delta1), tc.constant(delta1, 3)]:
        assert sv.is_sheaf(x, t).holds


def test_degenerate_sheaves_are_terminal_like(delta1, parallel_edges):
    X, _ = parallel_edges
    deg = sv.degenerate_topology(delta1)
    assert sv.is_sheaf(tc.terminal(delta1), deg).holds
    assert not sv.is_sheaf(tc.initial(delta1), deg).holds
    assert not sv.is_sheaf(tc.constant(delta1, 2), deg).holds
    assert not sv.is_sheaf(X, deg).holds


def test_discrete_pair_is_not_a_dense_sheaf(delta1):
    nn = sv.double_negation(delta1)
    res = sv.is_sheaf(tc.constant(delta1, 2), nn)
    assert not res.holds
    assert res.witness["object"] == "O1"
    assert res.witness["sieve"] == "{d0,d1,e0,e1}"
    assert res.witness["sections"] == 2
    assert res.witness["families"] == 4


def test_dense_subobjects(delta1, parallel_edges):
    X, u = parallel_edges
    triv = sv.trivial_topology(delta1)
    deg = sv.degenerate_topology(delta1)
    assert sv.is_dense_subobject(tc.full_subobject(X), triv)
    assert not sv.is_dense_subobject(u, triv)
    assert sv.is_dense_subobject(u, deg)


def test_sieve_subobject_matches_pullback(delta1):
    # realizing f*R as a subobject equals pulling the realized R back along y(f)
    for c in range(delta1.n_obj):
        for r in sv.sieves_on(delta1, c):
            sub = sv.sieve_subobject(delta1, r)
            for f in delta1.into(c):
                d = delta1.dom[f]
                g = tc.yoneda_map(tc.yoneda(delta1, c), d, delta1.mor_name(f))
                lhs = tc.pullback_subobject(sub, g)
                rhs = sv.sieve_subobject(delta1, sv.pullback_sieve(delta1, f, r))
                assert lhs.key() == rhs.key()
