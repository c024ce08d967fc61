import itertools

import pytest

from covertool import fixtures as F
from covertool.errors import DomainError, NotConnected, NotLiftable, NotTransitive
from covertool.graphcore import GraphAction, arc_regularity
from covertool.lifting import (
    SplitKind,
    classify_split,
    complements_of_deck,
    lift_automorphism,
    lifted_group,
    mixed_criterion,
    sections_of,
    split_kind,
)
from covertool.permgroup import Permutation, PermGroup
from covertool.voltage import VoltageAssignment, derived_cover

from oracles import closure, orbits_of


def _cdc(fx):
    return derived_cover(fx.graph, VoltageAssignment.constant(fx.graph))


def brute_complements(lifted):
    """Complements found by picking one of the two lifts of every generator."""
    deck = tuple(lifted.deck)
    n = len(deck)
    target = lifted.base_group.order()
    found = set()
    for choice in itertools.product((0, 1), repeat=len(lifted.lifts)):
        gens = [tuple(g) if c == 0 else tuple(deck[g[i]] for i in range(n))
                for g, c in zip(lifted.lifts, choice)]
        elems = closure(n, gens)
        if len(elems) == target and deck not in elems:
            found.add(frozenset(elems))
    return found


def test_lift_commutes_with_projection_and_deck():
    fx = F.f4()
    cover = _cdc(fx)
    for g in fx.groups["S4"].elements():
        h = lift_automorphism(cover, g)
        assert cover.derived.is_automorphism(h)
        assert all(h[x] >> 1 == g[x >> 1] for x in range(8))
        assert h * cover.deck == cover.deck * h


def test_non_liftable_automorphism():
    fx = F.f10()
    space_vec = F.petersen_classes()["F20A"]
    z = VoltageAssignment.from_class_vector(fx.graph, space_vec)
    cover = derived_cover(fx.graph, z)
    bad = [g for g in fx.groups["S5"].generators if not g.is_even()]
    with pytest.raises(NotLiftable):
        for g in bad:
            lift_automorphism(cover, g)


def test_lifted_group_order_and_disconnected_cover():
    fx = F.f10()
    L = lifted_group(_cdc(fx), fx.groups["S5"])
    assert L.group.order() == 240
    assert all(L.project(h) in fx.groups["S5"] for h in L.group.generators)
    zero = derived_cover(fx.graph, VoltageAssignment.constant(fx.graph, 0))
    with pytest.raises(NotConnected):
        lifted_group(zero, fx.groups["A5"])


@pytest.mark.parametrize("name,group,vec,kind", [
    ("F4", "A4", None, SplitKind.SPLIT_SECTIONAL),
    ("F4", "S4", None, SplitKind.SPLIT_MIXED),
    ("F10", "A5", None, SplitKind.SPLIT_SECTIONAL),
    ("F10", "S5", None, SplitKind.SPLIT_MIXED),
    ("F10", "A5", "F20A", SplitKind.SPLIT_TRANSITIVE),
])
def test_complements_against_brute_force(name, group, vec, kind):
    fx = F.resolve(name)
    X = fx.graph
    z = VoltageAssignment.constant(X) if vec is None else VoltageAssignment.from_class_vector(X, F.petersen_classes()[vec])
    cover = derived_cover(X, z)
    report = classify_split(cover, fx.groups[group])
    assert report.kind is kind
    ours = {frozenset(tuple(x) for x in c.subgroup.elements()) for c in report.complements}
    assert ours == brute_complements(report.lifted)
    for c in report.complements:
        gens = [tuple(g) for g in c.generators]
        assert (len(orbits_of(X.n * 2, gens)) == 1) == c.is_transitive


def test_nonsplit_has_no_complements():
    fx = F.f8()
    z = VoltageAssignment.from_class_vector(fx.graph, F.f16_class())
    report = classify_split(derived_cover(fx.graph, z), fx.groups["Aut"])
    assert report.kind is SplitKind.NON_SPLIT and not report.complements
    assert brute_complements(report.lifted) == set()


def test_split_kind_rules():
    assert split_kind([]) is SplitKind.NON_SPLIT
    assert SplitKind.SPLIT_MIXED.has_sectional and SplitKind.SPLIT_MIXED.has_transitive
    assert not SplitKind.NON_SPLIT.is_split


def test_intransitive_group_refused():
    K4 = F.complete_graph(4)
    G = PermGroup(4, [Permutation.parse("(1 2)", 4)])
    with pytest.raises(NotTransitive):
        classify_split(derived_cover(K4, VoltageAssignment.constant(K4)), G)


def test_mixed_criterion():
    fx = F.f4()
    cover = _cdc(fx)
    assert mixed_criterion(cover, fx.groups["S4"]) is True
    assert mixed_criterion(cover, fx.groups["A4"]) is False
    f10 = F.f10()
    z = VoltageAssignment.from_class_vector(f10.graph, F.petersen_classes()["F20A"])
    with pytest.raises(DomainError):
        mixed_criterion(derived_cover(f10.graph, z), f10.groups["A5"])


def test_sections_of_sectional_complement():
    fx = F.f4()
    cover = _cdc(fx)
    report = classify_split(cover, fx.groups["A4"])
    (comp,) = report.complements
    a, b = sections_of(comp, cover)
    assert sorted(x >> 1 for x in a) == list(range(4))
    assert sorted(a + b) == list(range(8))


def test_transitive_complement_drops_regularity_by_one():
    # Petersen/A5 is 2-regular; its transitive complement on the dodecahedron is 1-regular
    fx = F.f10()
    base_s = arc_regularity(GraphAction(fx.graph, fx.groups["A5"])).s
    z = VoltageAssignment.from_class_vector(fx.graph, F.petersen_classes()["F20A"])
    cover = derived_cover(fx.graph, z)
    for c in classify_split(cover, fx.groups["A5"]).complements:
        K = PermGroup(cover.derived.n, list(c.generators))
        assert arc_regularity(GraphAction(cover.derived, K)).s == base_s - 1
