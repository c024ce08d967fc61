import math

import pytest

from covertool import fixtures as F
from covertool.errors import CycleGraphError, DomainError, MalformedInput, NotAutomorphism, NotConnected
from covertool.graphcore import (
    Graph,
    GraphAction,
    all_cycles,
    arc_regularity,
    bfs_distances,
    edge_flip_involution_exists,
    find_isomorphism,
    girth,
    is_bipartite,
    is_connected,
    isomorphic,
    quotient_by_involution,
    regularity_degree,
    s_arc_count,
    spanning_data,
    stabilizer_order_expected,
    transitive_on_s_arcs,
)
from covertool.permgroup import Permutation, PermGroup
from covertool.voltage import derived_cover, is_cdc

from oracles import all_cycles as nx_cycles
from oracles import nx_isomorphic, s_arcs, s_regular_brute


def test_graph_validation():
    with pytest.raises(MalformedInput):
        Graph(3, [(0, 0)])
    with pytest.raises(MalformedInput):
        Graph(3, [(0, 1), (1, 0)])
    with pytest.raises(MalformedInput):
        Graph(2, [(0, 2)])
    with pytest.raises(MalformedInput):
        Graph.from_json({"edges": []})
    X = Graph(3, [(2, 1), (0, 1)])
    assert X.edges == ((0, 1), (1, 2))
    assert Graph.from_json(X.to_json()) == X


def test_basic_invariants():
    P = F.generalized_petersen(5, 2)
    assert P.regular_degree() == 3 and P.num_edges == 15
    assert girth(P) == 5
    assert is_bipartite(P) is None
    assert girth(F.cube()) == 4 and is_bipartite(F.cube()) is not None
    assert girth(Graph(4, [(0, 1), (2, 3)])) == math.inf
    assert not is_connected(Graph(4, [(0, 1), (2, 3)]))
    assert max(bfs_distances(P, 0)) == 2


def test_spanning_data_betti():
    for X in (F.complete_graph(4), F.generalized_petersen(5, 2), F.cube()):
        sd = spanning_data(X)
        assert sd.betti == X.num_edges - X.n + 1


def test_all_cycles_matches_networkx():
    for X in (F.complete_graph(4), F.cube(), F.generalized_petersen(5, 2)):
        ours = {frozenset(c) for c in all_cycles(X)}
        theirs = {frozenset(c) for c in nx_cycles(X)}
        assert len(all_cycles(X)) == len(nx_cycles(X))
        assert ours == theirs


def test_isomorphism_against_networkx():
    pairs = [
        (F.generalized_petersen(5, 2), F.kneser_petersen()[0]),
        (F.generalized_petersen(10, 2), F.generalized_petersen(10, 3)),
        (F.generalized_petersen(8, 3), F.generalized_petersen(8, 1)),
        (F.cube(), F.generalized_petersen(4, 1)),
    ]
    for X, Y in pairs:
        iso = find_isomorphism(X, Y)
        assert (iso is not None) == nx_isomorphic(X, Y)
        if iso is not None:
            assert X.relabel(iso) == Y


def test_graph_action_rejects_non_automorphism():
    X = F.cycle_graph(4)
    with pytest.raises(NotAutomorphism):
        GraphAction(X, PermGroup(4, [Permutation.parse("(1 2)", 4)]))


@pytest.mark.parametrize("name,group,s", [("F4", "A4", 1), ("F4", "S4", 2), ("F10", "A5", 2), ("F10", "S5", 3)])
def test_regularity_examples(name, group, s):
    fx = F.resolve(name)
    G = fx.groups[group]
    act = GraphAction(fx.graph, G)
    reg = arc_regularity(act)
    assert reg.s == s and reg.verified
    assert s_regular_brute(fx.graph, G.elements(), s)
    assert G.order() == fx.graph.n * stabilizer_order_expected(s)


def test_s_arc_count_matches_enumeration():
    X = F.generalized_petersen(5, 2)
    for s in range(4):
        assert s_arc_count(X, s) == len(s_arcs(X, s))


def test_transitive_on_s_arcs():
    fx = F.f10()
    act = GraphAction(fx.graph, fx.groups["A5"])
    assert transitive_on_s_arcs(act, 2)
    assert not transitive_on_s_arcs(act, 3)


def test_regularity_rejects_cycles_and_disconnected():
    C = F.cycle_graph(6)
    rot = Permutation([1, 2, 3, 4, 5, 0])
    with pytest.raises(CycleGraphError):
        arc_regularity(GraphAction(C, PermGroup(6, [rot])))
    X = Graph(4, [(0, 1), (2, 3)])
    with pytest.raises(NotConnected):
        regularity_degree(GraphAction(X, PermGroup(4)))


def test_stabilizer_order_bounds():
    with pytest.raises(DomainError):
        stabilizer_order_expected(6)


def test_edge_flip():
    fx = F.f4()
    assert edge_flip_involution_exists(GraphAction(fx.graph, fx.groups["S4"]))
    # A4 on K4: the arc-stabilizer is trivial and the unique flip of an edge is a double transposition
    assert edge_flip_involution_exists(GraphAction(fx.graph, fx.groups["A4"]))


def test_quotient_cube_antipodal_is_k4_cdc():
    Q3 = F.cube()
    # antipodal map of GP(4,1): outer i <-> inner i+2
    c = [(i + 2) % 4 + 4 for i in range(4)] + [(i + 2) % 4 for i in range(4)]
    Q, zeta = quotient_by_involution(Q3, c)
    assert nx_isomorphic(Q, F.complete_graph(4))
    assert is_cdc(Q, zeta)
    assert nx_isomorphic(derived_cover(Q, zeta).derived, Q3)


def test_quotient_of_dodecahedron_by_central_involution():
    fx = F.f20a()
    A5xZ2 = fx.groups["A5xZ2"]
    centre = [z for z in A5xZ2.elements() if z.order() == 2
              and all(z * g == g * z for g in A5xZ2.generators)]
    assert len(centre) == 1
    Q, zeta = quotient_by_involution(fx.graph, centre[0])
    assert nx_isomorphic(Q, F.generalized_petersen(5, 2))
    assert not is_cdc(Q, zeta)
    assert nx_isomorphic(derived_cover(Q, zeta).derived, fx.graph)


def test_quotient_hexagon_by_half_turn():
    C6 = F.cycle_graph(6)
    Q, zeta = quotient_by_involution(C6, [3, 4, 5, 0, 1, 2])
    assert Q.n == 3 and Q.num_edges == 3
    assert sum(zeta.bits) % 2 == 1


def test_quotient_rejects_bad_involutions():
    C6 = F.cycle_graph(6)
    with pytest.raises(DomainError):
        quotient_by_involution(C6, [0, 5, 4, 3, 2, 1])  # reflection with fixed points
    with pytest.raises(NotAutomorphism):
        quotient_by_involution(C6, [1, 0, 2, 3, 4, 5])
    C4 = F.cycle_graph(4)
    with pytest.raises(DomainError):
        quotient_by_involution(C4, [2, 3, 0, 1])  # quotient would have a double edge
    K2 = Graph(2, [(0, 1)])
    with pytest.raises(DomainError):
        quotient_by_involution(K2, [1, 0])


def test_isomorphic_shorthand():
    assert isomorphic(F.cube(), F.generalized_petersen(4, 1))
    assert not isomorphic(F.cube(), F.generalized_petersen(5, 2))
