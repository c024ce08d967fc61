import pytest

from covertool import fixtures as F
from covertool.chains import (
    ChainEdge,
    ChainNode,
    ChainSummary,
    explore,
    graph_digest,
    identify,
    nonsplit_chain_probe,
    rearrange_two_step,
    split_length,
    split_length_summary,
    two_step_candidates,
    verify_atmost2,
)
from covertool.errors import DomainError, NotTransitive
from covertool.graphcore import Graph
from covertool.lifting import SplitKind
from covertool.permgroup import Permutation, PermGroup
from covertool.voltage import VoltageAssignment, derived_cover, is_cdc

from oracles import nx_isomorphic


def test_identify_census():
    for name in ("F4", "F8", "F10", "F16", "F20A", "F20B"):
        assert identify(F.resolve(name).graph) == name
    assert identify(F.generalized_petersen(6, 1)) is None
    assert identify(F.cycle_graph(4)) is None


def test_graph_digest_is_stable():
    X = F.generalized_petersen(5, 2)
    assert graph_digest(X) == graph_digest(Graph(10, reversed(X.edges)))
    assert graph_digest(X) != graph_digest(F.cube())


def test_k4_chain():
    fx = F.f4()
    s = explore(fx.graph, fx.groups["A4"], 2)
    root_edges = s.children(0)
    assert [(e.kind, e.cdc) for e in root_edges] == [(SplitKind.SPLIT_SECTIONAL, True)]
    assert split_length(fx.graph, fx.groups["A4"]) == 1
    assert verify_atmost2(s)


def test_petersen_s5_split_length_one():
    fx = F.f10()
    assert split_length(fx.graph, fx.groups["S5"]) == 1


def test_split_length_summary_exactness():
    fx = F.f10()
    s = split_length_summary(fx.graph, fx.groups["A5"])
    assert s.split_length == 2 and s.exact
    s = split_length_summary(fx.graph, fx.groups["A5"], vertex_budget=25)
    assert s.partial and not s.exact


def test_class_budget_marks_partial():
    fx = F.f10()
    s = explore(fx.graph, fx.groups["A5"], 1, class_budget=1)
    assert s.partial and len(s.nodes) == 2


def test_explore_group_orders_and_json():
    fx = F.f10()
    s = explore(fx.graph, fx.groups["A5"], 2)
    for n in s.nodes:
        assert n.group.order() == 60 * 2 ** n.depth
        assert n.graph.n == 10 * 2 ** n.depth
    js = s.to_json()
    # chains reach the depth limit, so the lengths are only lower bounds
    assert js["split_length"] == 2 and not js["exact"]
    f40 = next(n for n in s.nodes if n.label == "F40")
    assert nx_isomorphic(f40.graph, F.f40().graph)
    dot = s.to_dot()
    assert dot.startswith("digraph chain {") and dot.count("->") == len(s.edges)


def test_explore_rejects_bad_roots():
    C6 = F.cycle_graph(6)
    rot = PermGroup(6, [Permutation([1, 2, 3, 4, 5, 0])])
    with pytest.raises(DomainError):
        explore(C6, rot, 1)
    K4 = F.complete_graph(4)
    with pytest.raises(NotTransitive):
        explore(K4, PermGroup(4, [Permutation.parse("(1 2)", 4)]), 1)
    with pytest.raises(ValueError):
        explore(K4, F.f4().groups["A4"], 1, follow="sideways")


def test_verify_atmost2_rejects_three_split_steps():
    fake = ChainSummary([], [], 3)
    X = F.complete_graph(4)
    G = F.f4().groups["A4"]
    fake.nodes = [ChainNode(i, X, G, i) for i in range(4)]
    fake.edges = [ChainEdge(i, i + 1, SplitKind.SPLIT_SECTIONAL, True) for i in range(3)]
    assert not verify_atmost2(fake)
    fake.edges = fake.edges[:2]
    assert not verify_atmost2(fake)  # two sectional steps
    fake.edges[1].kind = SplitKind.SPLIT_TRANSITIVE
    assert verify_atmost2(fake)


def test_rearrange_petersen_diamond():
    fx = F.f10()
    cands = two_step_candidates(fx.graph, fx.groups["A5"])
    assert len(cands) == 1
    z1, z2, kind = cands[0]
    assert kind is SplitKind.SPLIT_TRANSITIVE
    assert is_cdc(fx.graph, z1)
    r = rearrange_two_step(fx.graph, fx.groups["A5"], z1, z2)
    assert r.bottom_matches and not r.same_middle
    assert identify(r.middle) == "F20A"
    assert r.new_first_kind is SplitKind.SPLIT_TRANSITIVE
    X2 = derived_cover(derived_cover(fx.graph, z1).derived, z2).derived
    assert nx_isomorphic(derived_cover(r.middle, r.middle_voltage).derived, X2)


def test_rearrange_refuses_bad_second_step():
    fx = F.f4()
    assert two_step_candidates(fx.graph, fx.groups["A4"]) == []
    f10 = F.f10()
    z1 = VoltageAssignment.constant(f10.graph)
    with pytest.raises(DomainError):
        rearrange_two_step(f10.graph, f10.groups["A5"], z1, VoltageAssignment.constant(f10.graph))


def test_nonsplit_probe_on_square():
    C4 = F.cycle_graph(4)
    D8 = PermGroup(4, [Permutation([1, 2, 3, 0]), Permutation([0, 3, 2, 1])])
    probe = nonsplit_chain_probe(C4, D8, 2, relaxed=True)
    assert probe.length == 2
    assert [n.graph.n for n in probe.chain] == [4, 8, 16]
    assert nonsplit_chain_probe(C4, D8, 0, relaxed=True).length == 0
