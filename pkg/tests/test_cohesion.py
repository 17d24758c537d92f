import pytest

import toposcope as tc
from toposcope import cohesion as co

from conftest import discrete_two, pointless_site


def test_precohesive_flags(all_sites):
    for C in all_sites.values():
        rep = co.check_precohesive(C)
        assert rep.verdict, (C.name, rep)


def test_not_local():
    rep = co.check_precohesive(discrete_two())
    assert not rep.local and not rep.verdict


def test_not_hyperconnected():
    rep = co.check_precohesive(pointless_site())
    assert rep.local and not rep.hyperconnected and not rep.verdict


def test_cohesive_structure_terminal_choice(delta1):
    cs = co.cohesive_structure(delta1)
    assert delta1.obj_name(cs.terminal) == "O0"
    assert [delta1.mor_name(q) for q in cs.points_table[1]] == ["d0", "d1"]


def test_discrete_inclusion(delta1):
    assert co.p_upperstar(delta1, 0) == tc.initial(delta1)
    assert tc.find_iso(co.p_upperstar(delta1, 1), tc.terminal(delta1)) is not None
    p2 = co.p_upperstar(delta1, 2)
    assert [len(p2.at(c)) for c in range(2)] == [2, 2]


def test_codiscrete_inclusion(delta1):
    c2 = co.p_uppershriek(delta1, 2)
    assert [len(c2.at(c)) for c in range(2)] == [2, 4]
    assert co.p_uppershriek(delta1, 0) == tc.initial(delta1)
    assert tc.find_iso(co.p_uppershriek(delta1, 1), tc.terminal(delta1)) is not None


def test_codiscrete_needs_precohesion():
    with pytest.raises(co.NotPrecohesive):
        co.p_uppershriek(discrete_two(), 2)


def test_global_sections(parallel_edges, delta1):
    X, _ = parallel_edges
    assert co.p_star_direct(X) == ("a", "b")
    assert co.p_star_direct(tc.terminal(delta1)) == ("*",)
    assert co.p_star_direct(tc.initial(delta1)) == ()


def test_adjunction_cardinalities(delta1, parallel_edges):
    X, u = parallel_edges
    shapes = [X, u.as_presheaf(), tc.terminal(delta1), tc.initial(delta1),
              tc.yoneda(delta1, 1), tc.subobject_classifier(delta1)]
    for a in range(5):
        disc = co.p_upperstar(delta1, a)
        codisc = co.p_uppershriek(delta1, a)
        for x in shapes:
            comps = tc.pi0(x).count
            sections = len(co.p_star_direct(x))
            assert len(tc.nat_transformations(x, disc)) == a ** comps
            assert len(tc.nat_transformations(x, codisc)) == a ** sections
            assert len(tc.nat_transformations(disc, x)) == sections ** a


def test_discrete_and_codiscrete_are_full(delta1):
    for a in range(4):
        for b in range(4):
            assert len(tc.nat_transformations(
                co.p_upperstar(delta1, a), co.p_upperstar(delta1, b))) == b ** a
            assert len(tc.nat_transformations(
                co.p_uppershriek(delta1, a), co.p_uppershriek(delta1, b))) == b ** a


def test_sections_and_pieces_of_discrete(delta1):
    for a in range(5):
        disc = co.p_upperstar(delta1, a)
        assert tc.pi0(disc).count == a
        assert len(co.p_star_direct(disc)) == a


def test_pi0_preserves_products_of_catalog_presheaves(delta1, parallel_edges):
    X, u = parallel_edges
    shapes = [X, u.as_presheaf(), tc.terminal(delta1), tc.yoneda(delta1, 1),
              co.p_upperstar(delta1, 2), co.p_uppershriek(delta1, 2)]
    for a in shapes:
        for b in shapes:
            assert tc.pi0(tc.product(a, b)).count == tc.pi0(a).count * tc.pi0(b).count


def test_discrete_skeleton(parallel_edges, delta1):
    X, _ = parallel_edges
    sk = co.discrete_skeleton(X)
    assert sorted(sk.selected[0]) == ["a", "b"]
    assert sorted(sk.selected[1]) == ["la", "lb"]
    disc = co.p_upperstar(delta1, 3)
    assert co.discrete_skeleton(disc).is_full
    y1 = tc.yoneda(delta1, 1)
    sk1 = co.discrete_skeleton(y1)
    assert sorted(sk1.selected[0]) == ["d0", "d1"]
    assert sorted(sk1.selected[1]) == ["e0", "e1"]


def test_components_and_sections_maps(parallel_edges):
    X, u = parallel_edges
    incl = u.inclusion()
    assert co.p_shriek_iso(incl)
    assert co.p_star_iso(incl)
    m = co.p_shriek_map(incl)
    assert m == {0: 0}


def test_lemma_harness_counterexample_map(parallel_edges):
    X, u = parallel_edges
    rep = co.check_lemma_pi0(u.inclusion(), sizes=(0, 1, 2, 3))
    assert rep.agree
    assert rep.internal_to_two and rep.pi0_iso and rep.all_sizes


def test_lemma_harness_point_inclusion(delta1):
    # one point into the discrete pair: components go 1 -> 2
    p2 = co.p_upperstar(delta1, 2)
    point = [t for t in tc.nat_transformations(tc.terminal(delta1), p2)][0]
    rep = co.check_lemma_pi0(point, sizes=(0, 1, 2, 3))
    assert rep.agree
    assert not rep.internal_to_two and not rep.pi0_iso and not rep.all_sizes
    # sizes 0 and 1 cannot separate; 2 and 3 do
    assert dict(rep.per_size) == {0: True, 1: True, 2: False, 3: False}


def test_lemma_harness_identity(parallel_edges):
    X, _ = parallel_edges
    rep = co.check_lemma_pi0(tc.identity_nat(X))
    assert rep.internal_to_two and rep.pi0_iso and rep.all_sizes


def test_lemma_harness_needs_size_two(delta1):
    # without a separating size the truncated quantifier breaks the equivalence
    p2 = co.p_upperstar(delta1, 2)
    point = tc.nat_transformations(tc.terminal(delta1), p2)[0]
    with pytest.raises(co.EquivalenceBroken):
        co.check_lemma_pi0(point, sizes=(1,))


def test_lemma_harness_needs_precohesion(delta1):
    C = discrete_two()
    one = tc.terminal(C)
    with pytest.raises(co.NotPrecohesive):
        co.check_lemma_pi0(tc.identity_nat(one))
