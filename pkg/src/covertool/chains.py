"""Chains of consecutive G-admissible 2-covers.

A chain starts at ``(X0, G0)``; each step picks a nonzero admissible class of
the current node, builds the derived cover and replaces the group by its
lift.  Steps are labelled with their split kind relative to the group
being lifted.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Iterator

from .errors import DomainError, NotTransitive
from .graphcore import (
    Graph,
    GraphAction,
    arc_regularity,
    find_isomorphism,
    girth,
    is_bipartite,
    is_connected,
    quotient_by_involution,
    quotient_labels,
)
from .lifting import SplitKind, classify_split, lift_automorphism, lifted_group
from .permgroup import Permutation, PermGroup, as_group
from .voltage import (
    Cover,
    VoltageAssignment,
    admissible_classes,
    derived_cover,
    is_cdc,
)

VERTEX_BUDGET = 5000
CLASS_BUDGET = 64
DEFAULT_DEPTH = 3

FOLLOW_MODES = ("all", "split", "nonsplit")


def graph_digest(X: Graph) -> str:
    payload = json.dumps([X.n, X.edges], separators=(",", ":")).encode()
    return hashlib.sha256(payload).hexdigest()[:16]


@dataclass
class ChainNode:
    id: int
    graph: Graph
    group: PermGroup
    depth: int
    parent: int | None = None
    class_vector: int | None = None
    kind: SplitKind | None = None
    label: str | None = None

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "depth": self.depth,
            "vertices": self.graph.n,
            "group_order": self.group.order(),
            "graph_hash": graph_digest(self.graph),
            "identification": self.label,
        }


@dataclass
class ChainEdge:
    parent: int
    child: int
    kind: SplitKind
    cdc: bool
    class_vectors: list[int] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "parent": self.parent,
            "child": self.child,
            "kind": self.kind.value,
            "cdc": self.cdc,
            "class_vectors": [format(v, "x") for v in self.class_vectors],
        }


@dataclass
class ChainSummary:
    nodes: list[ChainNode]
    edges: list[ChainEdge]
    max_depth: int
    follow: str = "all"
    partial: list[str] = field(default_factory=list)
    length: int = 0
    split_length: int = 0
    sectional_length: int = 0
    transitive_length: int = 0

    @property
    def exact(self) -> bool:
        """Lengths are exact when no budget cut the tree and no chain hit the depth limit."""
        return not self.partial and self.length < self.max_depth

    def children(self, node_id: int) -> list[ChainEdge]:
        return [e for e in self.edges if e.parent == node_id]

    def paths(self) -> Iterator[list[ChainEdge]]:
        """Every root-to-leaf path, as lists of edges."""
        def walk(nid, acc):
            out = self.children(nid)
            if not out:
                yield list(acc)
                return
            for e in out:
                acc.append(e)
                yield from walk(e.child, acc)
                acc.pop()

        if self.nodes:
            yield from walk(self.nodes[0].id, [])

    def to_json(self) -> dict:
        return {
            "nodes": [n.to_json() for n in self.nodes],
            "edges": [e.to_json() for e in self.edges],
            "length": self.length,
            "split_length": self.split_length,
            "sectional_length": self.sectional_length,
            "transitive_length": self.transitive_length,
            "exact": self.exact,
            "partial": self.partial,
            "follow": self.follow,
        }

    def to_dot(self) -> str:
        lines = ["digraph chain {", "  rankdir=BT;"]
        for n in self.nodes:
            name = n.label or f"{n.graph.n} vertices"
            lines.append(f'  n{n.id} [label="{name}\\n|G|={n.group.order()}"];')
        for e in self.edges:
            tag = "CDC" if e.cdc else "non-CDC"
            style = "solid" if e.kind.is_split else "dashed"
            lines.append(f'  n{e.child} -> n{e.parent} [label="{tag}\\n{e.kind.value}", style={style}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _longest(summary: ChainSummary, ok) -> int:
    best = 0
    for path in summary.paths():
        run = 0
        for e in path:
            if not ok(e):
                break
            run += 1
        best = max(best, run)
    return best


def _fill_lengths(summary: ChainSummary) -> None:
    summary.length = _longest(summary, lambda e: True)
    summary.split_length = _longest(summary, lambda e: e.kind.is_split)
    summary.sectional_length = _longest(summary, lambda e: e.kind.has_sectional)
    summary.transitive_length = _longest(summary, lambda e: e.kind.has_transitive)


def identify(X: Graph) -> str | None:
    """Census name of a graph isomorphic to ``X``, if it is one of the fixtures."""
    from . import fixtures

    candidates = {
        4: ["F4"], 8: ["F8"], 10: ["F10"], 16: ["F16"], 20: ["F20A", "F20B"], 40: ["F40"],
    }.get(X.n, [])
    if X.regular_degree() != 3:
        return None
    for name in candidates:
        if find_isomorphism(X, fixtures.CENSUS[name]().graph) is not None:
            return name
    return None


def _dedup_key(X: Graph, G: PermGroup) -> tuple:
    return (X.n, girth(X), is_bipartite(X) is not None, G.order())


def _check_root(X: Graph, G: PermGroup, relaxed: bool) -> None:
    if not is_connected(X):
        raise DomainError("the base graph must be connected")
    for g in G.generators:
        if not X.is_automorphism(g):
            raise DomainError(f"{g} is not an automorphism")
    if relaxed:
        if not G.is_transitive():
            raise NotTransitive("the group must be vertex-transitive")
        return
    act = GraphAction(X, G)
    if not act.is_vertex_transitive():
        raise NotTransitive("the group must be vertex-transitive")
    arc_regularity(act)  # rejects cycle graphs


def explore(X: Graph, G, max_depth: int = DEFAULT_DEPTH, vertex_budget: int = VERTEX_BUDGET,
            class_budget: int = CLASS_BUDGET, follow: str = "all", relaxed: bool = False,
            label: bool = True) -> ChainSummary:
    """Breadth-first exploration of G-admissible 2-cover chains from ``(X, G)``.

    ``follow`` restricts which steps are expanded: ``"split"`` keeps only
    split covers, ``"nonsplit"`` only non-split ones.  Children of one level
    are merged when their graphs are isomorphic and their groups have equal
    order.
    """
    if follow not in FOLLOW_MODES:
        raise ValueError(f"follow must be one of {FOLLOW_MODES}")
    G = as_group(G)
    _check_root(X, G, relaxed)
    root = ChainNode(0, X, G, 0, label=identify(X) if label else None)
    summary = ChainSummary([root], [], max_depth, follow)
    level = [root]
    for depth in range(1, max_depth + 1):
        nxt: list[ChainNode] = []
        buckets: dict[tuple, list[ChainNode]] = {}
        for node in level:
            space = admissible_classes(node.graph, node.group)
            vectors = space.vectors()
            if len(vectors) > class_budget:
                summary.partial.append(f"node {node.id}: {len(vectors)} classes, kept {class_budget}")
                vectors = vectors[:class_budget]
            if 2 * node.graph.n > vertex_budget:
                if vectors:
                    summary.partial.append(f"node {node.id}: covers exceed {vertex_budget} vertices")
                continue
            for vec in vectors:
                zeta = space.voltage(vec)
                cover = derived_cover(node.graph, zeta)
                kind = classify_split(cover, node.group).kind
                if follow == "split" and not kind.is_split:
                    continue
                if follow == "nonsplit" and kind.is_split:
                    continue
                lifted = lifted_group(cover, node.group).group
                child = _merge(buckets, cover.derived, lifted)
                if child is None:
                    child = ChainNode(len(summary.nodes), cover.derived, lifted, depth, node.id, vec, kind)
                    if label:
                        child.label = identify(child.graph)
                    summary.nodes.append(child)
                    buckets.setdefault(_dedup_key(child.graph, lifted), []).append(child)
                    nxt.append(child)
                cdc = is_cdc(node.graph, zeta)
                edge = next((e for e in summary.edges
                             if e.parent == node.id and e.child == child.id and e.kind is kind and e.cdc == cdc), None)
                if edge is None:
                    summary.edges.append(ChainEdge(node.id, child.id, kind, cdc, [vec]))
                else:
                    edge.class_vectors.append(vec)
        level = nxt
        if not level:
            break
    _fill_lengths(summary)
    for n in summary.nodes:
        assert n.group.order() == 2 ** n.depth * G.order()
    return summary


def _merge(buckets, graph: Graph, group: PermGroup) -> ChainNode | None:
    for other in buckets.get(_dedup_key(graph, group), []):
        if find_isomorphism(graph, other.graph) is not None:
            return other
    return None


def split_length(X: Graph, G, max_depth: int = DEFAULT_DEPTH, vertex_budget: int = VERTEX_BUDGET,
                 class_budget: int = CLASS_BUDGET) -> int:
    """Split-length of ``(X, G)``; a lower bound when exploration was cut short.

    Use :func:`split_length_summary` to see whether the value is exact.
    """
    return split_length_summary(X, G, max_depth, vertex_budget, class_budget).split_length


def split_length_summary(X: Graph, G, max_depth: int = DEFAULT_DEPTH, vertex_budget: int = VERTEX_BUDGET,
                         class_budget: int = CLASS_BUDGET) -> ChainSummary:
    summary = explore(X, G, max_depth, vertex_budget, class_budget, follow="split")
    if X.regular_degree() == 3:
        # at most two split steps on a cubic graph; checked, not assumed
        assert summary.split_length <= 2, "split-length above 2 on a cubic graph"
    return summary


def verify_atmost2(summary: ChainSummary) -> bool:
    """Each path has at most two split steps, and two only as one transitive plus one sectional."""
    for path in summary.paths():
        split = [e.kind for e in path if e.kind.is_split]
        if len(split) > 2:
            return False
        if len(split) == 2:
            a, b = split
            ok = (a is SplitKind.SPLIT_TRANSITIVE and b.has_sectional) or \
                 (b is SplitKind.SPLIT_TRANSITIVE and a.has_sectional)
            if not ok:
                return False
    return True


# --- two-step rearrangement ------------------------------------------------

@dataclass
class Rearrangement:
    middle: Graph
    middle_voltage: VoltageAssignment      # X2 over the new middle graph
    bottom: Graph
    bottom_voltage: VoltageAssignment      # new middle graph over X0
    bottom_group: PermGroup
    old_second_kind: SplitKind
    new_first_kind: SplitKind
    same_middle: bool
    bottom_matches: bool

    def to_json(self) -> dict:
        return {
            "middle_vertices": self.middle.n,
            "middle_hash": graph_digest(self.middle),
            "old_second_kind": self.old_second_kind.value,
            "new_first_kind": self.new_first_kind.value,
            "same_middle": self.same_middle,
            "bottom_matches": self.bottom_matches,
        }


def _project_group(gens, labels: list[int], m: int) -> PermGroup:
    fibre = [0] * m
    for v, lab in enumerate(labels):
        fibre[lab >> 1] = v
    return PermGroup(m, [Permutation._raw(labels[g[fibre[q]]] >> 1 for q in range(m)) for g in gens])


def rearrange_two_step(X0: Graph, G0, zeta1: VoltageAssignment, zeta2: VoltageAssignment) -> Rearrangement:
    """Swap the order of the two steps in ``X2 -> X1 -> X0``.

    ``zeta1`` lives on ``X0`` and derives ``X1``; ``zeta2`` lives on ``X1``
    and derives ``X2``.  The second step must be split-transitive or
    split-sectional relative to the lift of ``G0``.  The lift of the first
    deck involution inside a complement is quotiented out of ``X2``; the
    resulting bottom step must carry the old second step's split kind.
    """
    G0 = as_group(G0)
    cover1 = derived_cover(X0, zeta1)
    G1 = lifted_group(cover1, G0).group
    if zeta2.graph != cover1.derived:
        raise DomainError("the second voltage assignment does not live on the first cover")
    cover2 = derived_cover(cover1.derived, zeta2)
    report = classify_split(cover2, G1)
    kind = report.kind
    if kind not in (SplitKind.SPLIT_TRANSITIVE, SplitKind.SPLIT_SECTIONAL):
        raise DomainError(f"second step is {kind.value}; need split-transitive or split-sectional")
    M = report.complements[0].subgroup
    c1 = cover1.deck
    lift = lift_automorphism(cover2, c1)
    c1_bar = lift if lift in M else lift * cover2.deck
    if c1_bar not in M:
        raise DomainError("no lift of the first deck involution inside the complement")
    X2 = cover2.derived
    middle, zeta_mid = quotient_by_involution(X2, c1_bar)
    labels = quotient_labels(X2, c1_bar)
    G2 = report.lifted.group
    G1p = _project_group(G2.generators, labels, middle.n)
    c2_down = _project_group([cover2.deck], labels, middle.n).generators[0]
    bottom, zeta_bot = quotient_by_involution(middle, c2_down)
    labels2 = quotient_labels(middle, c2_down)
    G0p = _project_group(G1p.generators, labels2, bottom.n)
    new_kind = classify_split(derived_cover(bottom, zeta_bot), G0p).kind
    return Rearrangement(
        middle, zeta_mid, bottom, zeta_bot, G0p, kind, new_kind,
        find_isomorphism(middle, cover1.derived) is not None,
        find_isomorphism(bottom, X0) is not None,
    )


def two_step_candidates(X0: Graph, G0) -> list[tuple[VoltageAssignment, VoltageAssignment, SplitKind]]:
    """All ``(zeta1, zeta2)`` whose second step is split-transitive or split-sectional."""
    G0 = as_group(G0)
    out = []
    s1 = admissible_classes(X0, G0)
    for v1 in s1.vectors():
        z1 = s1.voltage(v1)
        cover1 = derived_cover(X0, z1)
        G1 = lifted_group(cover1, G0).group
        s2 = admissible_classes(cover1.derived, G1)
        for v2 in s2.vectors():
            z2 = s2.voltage(v2)
            kind = classify_split(derived_cover(cover1.derived, z2), G1).kind
            if kind in (SplitKind.SPLIT_TRANSITIVE, SplitKind.SPLIT_SECTIONAL):
                out.append((z1, z2, kind))
    return out


# --- non-split probe -------------------------------------------------------

@dataclass
class NonSplitProbe:
    summary: ChainSummary
    chain: list[ChainNode]

    @property
    def length(self) -> int:
        return len(self.chain) - 1 if self.chain else 0

    def to_json(self) -> dict:
        return {
            "length": self.length,
            "lower_bound": not self.summary.exact,
            "chain": [n.to_json() for n in self.chain],
            "summary": self.summary.to_json(),
        }


def nonsplit_chain_probe(X: Graph, G, depth: int, relaxed: bool = False,
                         vertex_budget: int = VERTEX_BUDGET, class_budget: int = CLASS_BUDGET) -> NonSplitProbe:
    """Longest chain of consecutive non-split 2-covers found within the budgets.

    ``relaxed`` admits cycle graphs, asking only for vertex-transitivity.
    """
    if depth <= 0:
        return NonSplitProbe(ChainSummary([], [], 0, "nonsplit"), [])
    summary = explore(X, G, depth, vertex_budget, class_budget, follow="nonsplit", relaxed=relaxed)
    best: list[ChainEdge] = []
    for path in summary.paths():
        if len(path) > len(best):
            best = path
    nodes = {n.id: n for n in summary.nodes}
    chain = [summary.nodes[0]] + [nodes[e.child] for e in best]
    return NonSplitProbe(summary, chain)
