import pytest

from covertool import fixtures as F
from covertool.cosetfam import (
    CosetGraphSpec,
    coset_graph,
    double_coset,
    family_generators,
    family_verify,
    materialize_split_cover,
    split_cover_from_conditions,
    theorem_conditions,
)
from covertool.errors import BudgetExceeded, DomainError, MalformedInput
from covertool.graphcore import GraphAction, arc_regularity
from covertool.lifting import SplitKind
from covertool.permgroup import Permutation, PermGroup, Subgroup, alternating_group, symmetric_group

from oracles import closure, compose, nx_isomorphic, sympy_order


def P(text, n):
    return Permutation.parse(text, n)


def test_k4_as_coset_graph():
    S4 = symmetric_group(4)
    H = Subgroup(S4, (P("(2 3 4)", 4), P("(2 3)", 4)))
    spec = CosetGraphSpec.build(S4, H, P("(1 2)", 4))
    assert spec.valency == 3 and len(spec.D) == 18
    cg = coset_graph(spec)
    assert cg.connected
    assert nx_isomorphic(cg.graph, F.complete_graph(4))
    act = cg.action()
    assert arc_regularity(act).s == 2


def test_double_coset_against_brute_force():
    S4 = symmetric_group(4)
    H = PermGroup(4, [P("(1 2)", 4)])
    b = P("(2 3)", 4)
    elems = closure(4, [tuple(h) for h in H.generators])
    expected = sorted({compose(compose(h1, tuple(b)), h2) for h1 in elems for h2 in elems})
    assert [tuple(x) for x in double_coset(H, b)] == expected
    with pytest.raises(BudgetExceeded):
        double_coset(S4, b, budget=100)


def test_coset_graph_preconditions():
    S4 = symmetric_group(4)
    A4 = alternating_group(4)
    V4 = Subgroup(S4, (P("(1 2)(3 4)", 4), P("(1 3)(2 4)", 4)))
    with pytest.raises(DomainError, match="core"):
        coset_graph(CosetGraphSpec.build(S4, V4, P("(1 2)", 4)))
    outside = Subgroup(S4, (P("(1 2)", 4),))
    with pytest.raises(DomainError, match="not a subgroup"):
        coset_graph(CosetGraphSpec(A4, outside, P("(1 2 3)", 4), double_coset(outside, P("(1 2 3)", 4))))
    H = Subgroup(S4, (P("(2 3 4)", 4), P("(2 3)", 4)))
    with pytest.raises(DomainError, match="loops"):
        coset_graph(CosetGraphSpec.build(S4, H, P("(2 3)", 4)))
    with pytest.raises(BudgetExceeded):
        coset_graph(CosetGraphSpec.build(S4, H, P("(1 2)", 4)), size_budget=3)


def test_family_generators_shape():
    fam = family_generators(0)
    assert str(fam.a) == "(1 2 3)(4 5 6)(7 8 9)"
    assert str(fam.r) == "(1 2)(4 5)(7 8)"
    assert str(fam.b) == "(3 6)(4 7)(5 8)(9 10)"
    with pytest.raises(MalformedInput):
        family_generators(-1)
    for k in range(4):
        fam = family_generators(k)
        assert fam.n == 12 * k + 10
        assert fam.a.order() == 3 and fam.r.order() == 2 and fam.b.order() == 2
        assert fam.a.conj(fam.r) == ~fam.a


@pytest.mark.parametrize("k", [0, 1])
def test_family_order_against_sympy(k):
    fam = family_generators(k)
    assert family_verify(k).order == sympy_order(fam.n, [fam.a, fam.b])


def test_family_verify_budget():
    with pytest.raises(BudgetExceeded):
        family_verify(20, degree_budget=100)


def test_family_parity_analysis():
    # r_k has 4k+3 transpositions, so it is odd; a_k and b_k are even
    for k in range(6):
        fam = family_generators(k)
        assert len(fam.r.cycles()) == 4 * k + 3
        assert not fam.r.is_even()
        assert fam.a.is_even() and fam.b.is_even()
        assert fam.r not in fam.G


def _normalizer_of_l0():
    # N(<a_0>) in S_9 = (C3 wr S3) extended by an inverting involution, order 2 * 162
    n = 10
    gens = [P(t, n) for t in ("(1 2 3)", "(4 5 6)", "(7 8 9)", "(1 4)(2 5)(3 6)", "(4 7)(5 8)(6 9)", "(2 3)(5 6)(8 9)")]
    return n, closure(n, [tuple(g) for g in gens])


def test_no_even_replacement_for_r0():
    fam = family_generators(0)
    n, N = _normalizer_of_l0()
    # b is an involution, so conjugating by it is b h b
    a, b = tuple(fam.a), tuple(fam.b)
    a_inv = tuple(~fam.a)
    assert len(N) == 324
    for x in N:
        xi = tuple(sorted(range(n), key=x.__getitem__))
        assert compose(compose(xi, a), x) in (a, a_inv)
    L = closure(n, [a])
    candidates = []
    for x in N:
        if Permutation(x).is_even() and x not in L and compose(x, x) in L:
            candidates.append(x)
    assert candidates
    for x in candidates:
        H = closure(n, [a, x])
        assert len(H) == 6
        conj = {compose(compose(b, h), b) for h in H}
        # a cubic base graph needs |H : H^b ∩ H| = 3, i.e. an intersection of order 2
        assert len(H & conj) == 1
    # the odd r_0 does give index 3
    H = closure(n, [a, tuple(fam.r)])
    conj = {compose(compose(b, h), b) for h in H}
    assert len(H & conj) == 2


def test_theorem_conditions_on_family_and_counterexamples():
    fam = family_generators(0)
    rep = theorem_conditions(fam.G, fam.H, fam.L, fam.b)
    assert rep.holds
    assert rep.diagnostics["index_L_in_L_cap_Lb"] == 3
    assert rep.diagnostics["H_inside_G"] is False
    # b commuting with L: intersection is all of L
    rep = theorem_conditions(fam.G, fam.H, fam.L, Permutation.identity(10))
    assert not rep.holds and rep.first_failure == "<b, L> = G"
    with pytest.raises(DomainError):
        theorem_conditions(fam.G, fam.L, fam.L, fam.b)


def test_split_cover_on_s4_gives_cube():
    # Cos(S4, S3, ...) = K4; L = <(2 3 4)>, r = (3 4), b = (1 2)
    S4 = symmetric_group(4)
    H = PermGroup(4, [P("(2 3 4)", 4), P("(3 4)", 4)])
    L = PermGroup(4, [P("(2 3 4)", 4)])
    b, r = P("(1 2)", 4), P("(3 4)", 4)
    assert theorem_conditions(S4, H, L, b).holds
    base_spec, cover_spec = split_cover_from_conditions(S4, H, L, b, r)
    m = materialize_split_cover(base_spec, cover_spec)
    assert nx_isomorphic(m.base.graph, F.complete_graph(4))
    assert nx_isomorphic(m.cover.graph, F.cube())
    assert m.report.kind is SplitKind.SPLIT_MIXED
    with pytest.raises(DomainError):
        split_cover_from_conditions(S4, H, L, b, P("(1 2)", 4))
