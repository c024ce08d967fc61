"""Coset graphs Cos(G, H, HbH), the split-transitive cover conditions, and
the explicit alternating-group family built from ``a_k``, ``r_k``, ``b_k``.

Cosets are right cosets ``Hx``.  With the right-action convention
``(h*x)[i] = x[h[i]]`` a coset is stored by its canonical key, the
lexicographically least image tuple among ``{h*x : h in H}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from operator import itemgetter

import numpy as np

from .errors import BudgetExceeded, DomainError, MalformedInput
from .graphcore import Graph, GraphAction, is_connected, quotient_by_involution, s_arc_count, transitive_on_s_arcs
from .lifting import SplitReport, classify_split
from .permgroup import (
    ELEMENT_BUDGET,
    Permutation,
    PermGroup,
    Subgroup,
    alternating_group,
    as_group,
    conjugate_intersection,
    core_is_trivial,
    symmetric_group,
)
from .voltage import derived_cover

COSET_BUDGET = 1_000_000
FAMILY_DEGREE_BUDGET = 200

__all__ = [
    "CosetGraph",
    "CosetGraphSpec",
    "ConditionReport",
    "FamilyInstance",
    "FamilyVerification",
    "alternating_group",
    "coset_graph",
    "double_coset",
    "family_generators",
    "family_materialize",
    "family_verify",
    "materialize_split_cover",
    "split_cover_from_conditions",
    "symmetric_group",
    "theorem_conditions",
]


def _elements(H, budget: int) -> list[Permutation]:
    return as_group(H).elements(budget)


def _check_inside(G: PermGroup, H, what: str) -> None:
    bad = [h for h in as_group(H).generators if h not in G]
    if bad:
        raise DomainError(f"{what} is not a subgroup of G: {bad[0]} lies outside G")


def double_coset(H, b: Permutation, budget: int = ELEMENT_BUDGET) -> list[Permutation]:
    """All distinct products ``h1 * b * h2``, sorted."""
    order = as_group(H).order()
    if order * order > budget:
        raise BudgetExceeded(f"|H|^2 = {order * order} exceeds budget {budget}")
    elems = _elements(H, budget)
    return sorted({h1 * b * h2 for h1 in elems for h2 in elems})


@dataclass
class CosetGraphSpec:
    G: PermGroup
    H: Subgroup
    b: Permutation
    D: list[Permutation]

    @classmethod
    def build(cls, G, H, b: Permutation, budget: int = ELEMENT_BUDGET) -> CosetGraphSpec:
        G = as_group(G)
        if not isinstance(H, Subgroup):
            H = Subgroup(G, tuple(as_group(H).generators))
        return cls(G, H, Permutation._raw(b), double_coset(H, b, budget))

    @property
    def valency(self) -> int:
        return len(self.D) // self.H.order

    def right_coset_reps(self) -> list[Permutation]:
        """One representative of each right coset ``Hd`` inside ``D``."""
        Hel = _elements(self.H, ELEMENT_BUDGET)
        seen, reps = set(), []
        for d in self.D:
            if d in seen:
                continue
            reps.append(d)
            seen.update(h * d for h in Hel)
        return reps


@dataclass
class CosetGraph:
    spec: CosetGraphSpec
    graph: Graph
    keys: list[tuple]
    generator_actions: list[np.ndarray]
    connected: bool

    def action(self) -> GraphAction:
        return GraphAction(self.graph, generators=self.generator_actions, order=self.spec.G.order())


def coset_graph(spec: CosetGraphSpec, size_budget: int = COSET_BUDGET) -> CosetGraph:
    """Materialize Cos(G, H, D).

    Every coset is reached by BFS along G's generators; each coset ``Hx`` is
    joined to ``H d x`` for the right-coset representatives ``d`` of ``D``.
    Vertex indices follow the sorted order of the canonical keys.
    """
    G, H = spec.G, spec.H
    _check_inside(G, H, "H")
    if spec.b not in G:
        raise DomainError("b lies outside G")
    hord = H.order
    ncosets, rem = divmod(G.order(), hord)
    if rem:
        raise DomainError("|H| does not divide |G|")
    if ncosets > size_budget:
        raise BudgetExceeded(f"{ncosets} cosets exceed budget {size_budget}")
    if not core_is_trivial(G, H):
        raise DomainError("the core of H in G is nontrivial; the coset action is not faithful")

    getters = [itemgetter(*h) for h in _elements(H, ELEMENT_BUDGET)]

    def key(x):
        return min(g(x) for g in getters)

    reps = [itemgetter(*d) for d in spec.right_coset_reps()]

    start = key(tuple(range(G.degree)))
    index = {start: 0}
    order = [start]
    gen_img: list[list[int]] = [[] for _ in G.generators]
    nbrs: list[list[tuple]] = []
    for x in order:
        nbrs.append([key(d(x)) for d in reps])
        for j, g in enumerate(G.generators):
            # coset Hx . g = H(x*g), and (x*g)[i] = g[x[i]]
            y = key(itemgetter(*x)(g))
            if y not in index:
                index[y] = len(order)
                order.append(y)
            gen_img[j].append(index[y])
    if len(order) != ncosets:
        raise DomainError(f"found {len(order)} cosets, expected {ncosets}")

    # final pass: indices by canonical key order
    ranked = sorted(range(ncosets), key=order.__getitem__)
    relabel = [0] * ncosets
    for new, old in enumerate(ranked):
        relabel[old] = new
    adj: list[list[int]] = [[] for _ in range(ncosets)]
    for old, ns in enumerate(nbrs):
        u = relabel[old]
        adj[u] = sorted({relabel[index[y]] for y in ns})
    for u, ns in enumerate(adj):
        if u in ns:
            raise DomainError("D meets H: the coset graph has loops")
    X = Graph._trusted(ncosets, adj)
    if any(len(a) != spec.valency for a in X.adj):
        raise DomainError("adjacency is not symmetric; D is not closed under inverses")
    rl = np.array(relabel, dtype=np.int64)
    actions = []
    for img in gen_img:
        act = np.empty(ncosets, dtype=np.int64)
        act[rl] = rl[np.array(img, dtype=np.int64)]
        actions.append(act)
    keys = [order[i] for i in ranked]
    return CosetGraph(spec, X, keys, actions, is_connected(X))


# --- the existence conditions ----------------------------------------------

@dataclass
class ConditionReport:
    holds: bool
    diagnostics: dict = field(default_factory=dict)
    first_failure: str | None = None

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        return {"holds": self.holds, "first_failure": self.first_failure, "diagnostics": self.diagnostics}


def theorem_conditions(G, H, L, b: Permutation, budget: int = ELEMENT_BUDGET) -> ConditionReport:
    """Check ``b^2 in L``, ``<b, L> = G`` and ``|L : L^b ∩ L| = 3``.

    Also reported, without affecting the verdict: whether ``H`` and ``L``
    lie inside ``G``, which the coset construction needs.
    """
    G = as_group(G)
    Hg, Lg = as_group(H), as_group(L)
    if Hg.order() != 2 * Lg.order() or any(x not in Hg for x in Lg.generators):
        raise DomainError("L must be a subgroup of index 2 in H")
    b = Permutation._raw(b)
    diag: dict = {}
    diag["b_squared_in_L"] = (b * b) in Lg
    gen = PermGroup(G.degree, list(Lg.generators) + [b])
    if set(gen.generators) == set(G.generators):
        gen = G
    diag["generated_order"] = gen.order()
    diag["generates_G"] = gen.order() == G.order() and all(x in G for x in gen.generators)
    Ls = L if isinstance(L, Subgroup) else Subgroup(Lg, tuple(Lg.generators))
    inter = conjugate_intersection(Ls, b, budget).order
    diag["index_L_in_L_cap_Lb"] = Lg.order() // inter
    diag["L_inside_G"] = all(x in G for x in Lg.generators)
    diag["H_inside_G"] = all(x in G for x in Hg.generators)
    checks = [
        ("b^2 in L", diag["b_squared_in_L"]),
        ("<b, L> = G", diag["generates_G"]),
        ("|L : L^b ∩ L| = 3", diag["index_L_in_L_cap_Lb"] == 3),
    ]
    failure = next((name for name, ok in checks if not ok), None)
    return ConditionReport(failure is None, diag, failure)


def _direct_with_c(G: PermGroup) -> tuple[PermGroup, Permutation]:
    n = G.degree
    c = Permutation._raw(list(range(n)) + [n + 1, n])

    def ext(g):
        return Permutation._raw(list(g) + [n, n + 1])

    return PermGroup(n + 2, [ext(g) for g in G.generators] + [c]), c


def _extend(g: Permutation, n: int) -> Permutation:
    return Permutation._raw(list(g) + list(range(len(g), n)))


def split_cover_from_conditions(G, H, L, b: Permutation, r: Permutation,
                                budget: int = ELEMENT_BUDGET) -> tuple[CosetGraphSpec, CosetGraphSpec]:
    """Specs of the base Cos(G, H, HbH) and the cover Cos(K, D, DbD).

    ``K = G x <c>`` with ``c`` swapping two new points, ``D = <L, rc>``.
    """
    G = as_group(G)
    rep = theorem_conditions(G, H, L, b, budget)
    if not rep.holds:
        raise DomainError(f"conditions fail: {rep.first_failure}")
    r = Permutation._raw(r)
    Hg, Lg = as_group(H), as_group(L)
    if r.is_identity() or not (r * r).is_identity():
        raise DomainError("r must be an involution")
    if r not in Hg or r in Lg:
        raise DomainError("r must lie in H but not in L")
    if any(x.conj(r) not in Lg for x in Lg.generators):
        raise DomainError("r does not normalize L")
    _check_inside(G, Hg, "H")
    K, c = _direct_with_c(G)
    m = K.degree
    Dg = PermGroup(m, [_extend(x, m) for x in Lg.generators] + [_extend(r, m) * c])
    base = CosetGraphSpec.build(G, Subgroup(G, tuple(Hg.generators)), b, budget)
    cover = CosetGraphSpec.build(K, Subgroup(K, tuple(Dg.generators)), _extend(b, m), budget)
    assert len(cover.D) == len(base.D) and cover.H.order == 2 * Lg.order()
    return base, cover


@dataclass
class SplitCoverMaterialized:
    base: CosetGraph
    cover: CosetGraph
    deck: list[int]
    report: SplitReport


def materialize_split_cover(base_spec: CosetGraphSpec, cover_spec: CosetGraphSpec,
                            size_budget: int = COSET_BUDGET) -> SplitCoverMaterialized:
    """Build both coset graphs, quotient the cover by ``c`` and classify the split.

    The action of G on the quotient is read off the cover coset action of
    ``K``'s first generators (those of G); the deck is ``K``'s last generator.
    """
    base = coset_graph(base_spec, size_budget)
    cover = coset_graph(cover_spec, size_budget)
    acts = cover.generator_actions
    deck = acts[-1].tolist()
    Q, zeta = quotient_by_involution(cover.graph, deck)
    from .graphcore import quotient_labels

    labels = quotient_labels(cover.graph, deck)
    fibre = [0] * Q.n
    for v, lab in enumerate(labels):
        fibre[lab >> 1] = v
    gens_on_q = []
    for act in acts[:-1]:
        gens_on_q.append(Permutation._raw(labels[act[fibre[q]]] >> 1 for q in range(Q.n)))
    G_on_q = PermGroup(Q.n, gens_on_q)
    report = classify_split(derived_cover(Q, zeta), G_on_q)
    return SplitCoverMaterialized(base, cover, deck, report)


# --- the alternating family ------------------------------------------------

@dataclass
class FamilyInstance:
    k: int
    n: int
    a: Permutation
    r: Permutation
    b: Permutation
    L: PermGroup
    H: PermGroup

    @property
    def G(self) -> PermGroup:
        return PermGroup(self.n, [self.a, self.b])


def family_generators(k: int) -> FamilyInstance:
    """The three permutations of degree ``12k + 10`` (points 0-based)."""
    if k < 0:
        raise MalformedInput("k must be nonnegative")
    n = 12 * k + 10
    a = [(3 * i - 3, 3 * i - 2, 3 * i - 1) for i in range(1, 4 * k + 4)]
    r = [(0, 1)]
    b = [(12 * k + 8, 12 * k + 9)]
    for i in range(1, 2 * k + 2):
        r += [(6 * i - 3, 6 * i - 2), (6 * i, 6 * i + 1)]
        b += [(6 * i - 4, 6 * i - 1), (6 * i - 3, 6 * i), (6 * i - 2, 6 * i + 1)]
    a, r, b = (Permutation.from_cycles(x, n) for x in (a, r, b))
    return FamilyInstance(k, n, a, r, b, PermGroup(n, [a]), PermGroup(n, [a, r]))


@dataclass
class FamilyVerification:
    k: int
    n: int
    order: int
    expected_order: int
    conditions: ConditionReport
    product: Permutation
    cycle_checks: dict
    parity: dict
    subgroup_checks: dict
    failures: list[str]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "degree": self.n,
            "order": str(self.order),
            "expected_order": str(self.expected_order),
            "conditions": self.conditions.to_json(),
            "b_times_b_conj_a": str(self.product),
            "cycle_checks": self.cycle_checks,
            "parity_even": self.parity,
            "subgroups": self.subgroup_checks,
            "failures": self.failures,
            "passed": self.passed,
        }


def _cycle_checks(prod: Permutation, k: int) -> dict:
    n = 12 * k + 10
    # 1-based residues: ones = {3l+1}, twos = {3l+2}, threes = {3l}
    ones = {3 * l for l in range(4 * k + 4)}
    twos = {3 * l + 1 for l in range(4 * k + 3)}
    threes = {3 * l - 1 for l in range(1, 4 * k + 4)}
    cycles = prod.cycles()
    out = {"single_cycle": len(cycles) == 1}
    cyc = cycles[0] if cycles else ()
    out["length"] = len(cyc)
    out["length_ok"] = len(cyc) == 8 * k + 7
    out["support_ok"] = set(cyc) == ones | threes
    out["fixes_twos"] = all(prod[x] == x for x in twos)
    ok = out["single_cycle"] and out["support_ok"]
    if ok:
        # split the cycle into e (on ones) and f (on threes): starting at 12k+7,
        # the points of ``ones`` come first, then those of ``threes``.
        start = 12 * k + 6
        pos = cyc.index(start)
        seq = list(cyc[pos:] + cyc[:pos])
        e, f = seq[: 4 * k + 4], seq[4 * k + 4:]
        out["e_on_ones"] = set(e) == ones
        out["f_on_threes"] = set(f) == threes
        out["e_first_last"] = [e[0] + 1, e[-1] + 1]
        out["f_first_last"] = [f[0] + 1, f[-1] + 1] if f else []
        out["endpoints_ok"] = (
            out["e_on_ones"] and out["f_on_threes"]
            and out["e_first_last"] == [12 * k + 7, 12 * k + 10]
            and out["f_first_last"] == [12 * k + 6, 12 * k + 9]
        )
    else:
        out["endpoints_ok"] = False
    out["ok"] = all(out[x] for x in ("single_cycle", "length_ok", "support_ok", "fixes_twos", "endpoints_ok"))
    assert max(cyc, default=0) < n
    return out


def family_verify(k: int, degree_budget: int = FAMILY_DEGREE_BUDGET) -> FamilyVerification:
    """Group-theoretic certificate for one member of the family.

    Checks the order of ``<a, b>`` against ``n!/2``, the three cover
    conditions, the cycle structure of ``b * b^a`` and the parity of
    ``a``, ``r`` and ``b``.
    """
    if k < 0:
        raise MalformedInput("k must be nonnegative")
    if 12 * k + 10 > degree_budget:
        raise BudgetExceeded(f"degree {12 * k + 10} exceeds budget {degree_budget}")
    fam = family_generators(k)
    G = fam.G
    order, expected = G.order(), math.factorial(fam.n) // 2
    cond = theorem_conditions(G, fam.H, fam.L, fam.b)
    prod = fam.b * fam.b.conj(fam.a)
    cycles = _cycle_checks(prod, k)
    parity = {"a": fam.a.is_even(), "r": fam.r.is_even(), "b": fam.b.is_even()}
    inter = conjugate_intersection(Subgroup(symmetric_group(fam.n), tuple(fam.H.generators)), fam.b)
    sub = {
        "L_order": fam.L.order(),
        "H_order": fam.H.order(),
        "r_inverts_a": fam.a.conj(fam.r) == ~fam.a,
        "H_cap_Hb_order": inter.order,
        "H_cap_Hb_is_r": inter.order == 2 and fam.r in inter,
        "b_involution": (fam.b * fam.b).is_identity() and not fam.b.is_identity(),
    }
    failures = []
    if order != expected:
        failures.append(f"|<a,b>| = {order}, expected {expected}")
    if not cond.holds:
        failures.append(f"condition fails: {cond.first_failure}")
    if not cycles["ok"]:
        failures.append("b * b^a does not have the stated cycle structure")
    for name, even in parity.items():
        if not even:
            failures.append(f"{name}_{k} is an odd permutation, so it is not in the alternating group")
    if not (sub["L_order"] == 3 and sub["H_order"] == 6 and sub["r_inverts_a"]
            and sub["H_cap_Hb_is_r"] and sub["b_involution"]):
        failures.append("subgroup invariants fail")
    return FamilyVerification(k, fam.n, order, expected, cond, prod, cycles, parity, sub, failures)


@dataclass
class FamilyMaterialization:
    k: int
    cover: dict
    base: dict
    classification: str | None

    def to_json(self) -> dict:
        return {"k": self.k, "cover": self.cover, "base": self.base, "classification": self.classification}


def _graph_stats(cg: CosetGraph, G: PermGroup, s_values=(1, 2)) -> dict:
    X = cg.graph
    act = cg.action()
    out = {
        "vertices": X.n,
        "cubic": X.regular_degree() == 3,
        "connected": cg.connected,
        "group_order": G.order(),
    }
    for s in s_values:
        count = s_arc_count(X, s)
        out[f"{s}_arcs"] = count
        out[f"{s}_arc_transitive"] = transitive_on_s_arcs(act, s)
        out[f"{s}_regular"] = out[f"{s}_arc_transitive"] and count == G.order()
    return out


def family_materialize(k: int = 0, size_budget: int = COSET_BUDGET) -> FamilyMaterialization:
    """Build the family's coset graphs explicitly (k = 0 only at default budget).

    The cover Cos(G, L, LbL) is built directly.  The base Cos(G, H, HbH)
    needs ``H <= G``; when that fails the error is recorded instead.
    """
    fam = family_generators(k)
    G = fam.G
    cover_spec = CosetGraphSpec.build(G, Subgroup(G, (fam.a,)), fam.b)
    cover = _graph_stats(coset_graph(cover_spec, size_budget), G, (1,))
    base: dict
    classification = None
    try:
        base_cg = coset_graph(CosetGraphSpec.build(G, Subgroup(G, (fam.a, fam.r)), fam.b), size_budget)
        base = _graph_stats(base_cg, G, (1, 2))
        base_spec, split_spec = split_cover_from_conditions(G, fam.H, fam.L, fam.b, fam.r)
        classification = materialize_split_cover(base_spec, split_spec, 2 * size_budget).report.kind.value
    except DomainError as exc:
        base = {"error": str(exc)}
    return FamilyMaterialization(k, cover, base, classification)
