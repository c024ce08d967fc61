"""Z2 voltage assignments and the 2-covers they derive.

A voltage assignment puts one bit on every edge (both arcs of an edge carry
the same value because Z2 is its own inverse).  The derived cover has vertex
``2*v + i`` over base vertex ``v``; base edge ``{u, v}`` with voltage ``z``
lifts to ``{2u + i, 2v + (i ^ z)}`` for ``i = 0, 1``.

Cover classes are identified with cotree bit-vectors over the BFS spanning
tree rooted at 0: bit ``j`` is the voltage of the ``j``-th cotree edge once
every tree edge has been switched to 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import gf2
from .errors import BudgetExceeded, DomainError, MalformedInput, NotAutomorphism
from .graphcore import Graph, SpanningData, is_connected, spanning_data
from .permgroup import Permutation, PermGroup, as_group

BETTI_BUDGET = 62


class VoltageAssignment:
    """One Z2 value per edge of ``graph``, indexed like ``graph.edges``."""

    __slots__ = ("graph", "bits")

    def __init__(self, graph: Graph, bits: Sequence[int]):
        bits = tuple(int(b) for b in bits)
        if len(bits) != graph.num_edges:
            raise MalformedInput(f"{len(bits)} voltages for {graph.num_edges} edges")
        if any(b not in (0, 1) for b in bits):
            raise MalformedInput("voltages must be 0 or 1")
        self.graph = graph
        self.bits = bits

    @classmethod
    def constant(cls, graph: Graph, bit: int = 1) -> VoltageAssignment:
        return cls(graph, [bit] * graph.num_edges)

    @classmethod
    def from_edge_list(cls, graph: Graph, triples: Iterable[Sequence[int]]) -> VoltageAssignment:
        bits: list[int | None] = [None] * graph.num_edges
        for t in triples:
            u, v, b = (int(x) for x in t)
            i = graph.eid(u, v)
            if bits[i] is not None:
                raise MalformedInput(f"edge ({u}, {v}) listed twice")
            bits[i] = b
        if any(b is None for b in bits):
            raise MalformedInput("voltage list does not cover every edge")
        return cls(graph, bits)

    @classmethod
    def from_class_vector(cls, graph: Graph, vector: int, sd: SpanningData | None = None) -> VoltageAssignment:
        sd = sd or base_spanning(graph)
        if vector >> sd.betti:
            raise MalformedInput(f"class vector has more than {sd.betti} bits")
        bits = [0] * graph.num_edges
        for j, e in enumerate(sd.cotree_edges):
            bits[e] = vector >> j & 1
        return cls(graph, bits)

    def __call__(self, u: int, v: int) -> int:
        return self.bits[self.graph.eid(u, v)]

    def class_vector(self, sd: SpanningData | None = None) -> int:
        """Cotree bit-vector of the equivalence class."""
        sd = sd or base_spanning(self.graph)
        return sum(walk_voltage(self, c) << j for j, c in enumerate(sd.base_cycles))

    def to_json(self) -> dict:
        return {
            "graph": self.graph.to_json(),
            "voltages": [[u, v, b] for (u, v), b in zip(self.graph.edges, self.bits)],
        }

    @classmethod
    def from_json(cls, data: dict, graph: Graph | None = None) -> VoltageAssignment:
        try:
            g = graph if graph is not None else Graph.from_json(data["graph"])
            return cls.from_edge_list(g, data["voltages"])
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, MalformedInput):
                raise
            raise MalformedInput(f"bad voltage JSON: {exc}") from None

    def __eq__(self, other) -> bool:
        return isinstance(other, VoltageAssignment) and self.graph == other.graph and self.bits == other.bits

    def __hash__(self) -> int:
        return hash(self.bits)

    def __repr__(self) -> str:
        return f"VoltageAssignment({''.join(map(str, self.bits))})"


def base_spanning(X: Graph) -> SpanningData:
    """The canonical spanning data (BFS from vertex 0), cached on the graph."""
    sd = X.__dict__.get("_spanning0")
    if sd is None:
        sd = spanning_data(X, 0)
        X.__dict__["_spanning0"] = sd
    return sd


def walk_voltage(zeta: VoltageAssignment, walk: Sequence[tuple[int, int]]) -> int:
    """Sum of voltages along a walk, mod 2."""
    X = zeta.graph
    total = 0
    prev = None
    for u, v in walk:
        if prev is not None and u != prev:
            raise DomainError(f"walk breaks at arc ({u}, {v})")
        total ^= zeta.bits[X.eid(u, v)]
        prev = v
    return total


def image_walk(walk: Sequence[tuple[int, int]], g: Sequence[int]) -> list[tuple[int, int]]:
    return [(g[u], g[v]) for u, v in walk]


@dataclass
class Cover:
    """A derived 2-cover with its projection and deck transformation."""

    base: Graph
    zeta: VoltageAssignment
    derived: Graph
    deck: Permutation

    @staticmethod
    def project(x: int) -> int:
        return x >> 1

    def fibre(self, v: int) -> tuple[int, int]:
        return (2 * v, 2 * v + 1)

    def is_connected(self) -> bool:
        return is_connected(self.derived)


def derived_cover(X: Graph, zeta: VoltageAssignment) -> Cover:
    if zeta.graph != X:
        raise MalformedInput("voltage assignment belongs to a different graph")
    adj: list[list[int]] = [[] for _ in range(2 * X.n)]
    for (u, v), z in zip(X.edges, zeta.bits):
        for i in (0, 1):
            a, b = 2 * u + i, 2 * v + (i ^ z)
            adj[a].append(b)
            adj[b].append(a)
    derived = Graph._trusted(2 * X.n, adj)
    deck = Permutation._raw(x ^ 1 for x in range(2 * X.n))
    return Cover(X, zeta, derived, deck)


def is_connected_cover(X: Graph, zeta: VoltageAssignment) -> bool:
    """Connected iff some fundamental cycle carries voltage 1."""
    sd = base_spanning(X)
    return any(walk_voltage(zeta, c) for c in sd.base_cycles)


def is_cdc(X: Graph, zeta: VoltageAssignment) -> bool:
    """Whether ``zeta`` is equivalent to the all-ones assignment.

    Checked on the fundamental cycles: each must carry voltage equal to its
    length mod 2.
    """
    sd = base_spanning(X)
    return all(walk_voltage(zeta, c) == len(c) % 2 for c in sd.base_cycles)


def _check_automorphisms(X: Graph, G) -> list[Permutation]:
    gens = list(as_group(G).generators)
    for i, g in enumerate(gens):
        if not X.is_automorphism(g):
            raise NotAutomorphism(f"generator {i} ({g}) is not an automorphism")
    return gens


def lifts_group(X: Graph, zeta: VoltageAssignment, G: PermGroup) -> bool:
    """Whether every element of ``G`` lifts along the cover derived from ``zeta``.

    Testing fundamental cycles against generators suffices: closed-walk
    voltages are linear on the cycle space.
    """
    gens = _check_automorphisms(X, G)
    sd = base_spanning(X)
    for g in gens:
        for c in sd.base_cycles:
            if walk_voltage(zeta, image_walk(c, g)) != walk_voltage(zeta, c):
                return False
    return True


def normalize_to_tree(zeta: VoltageAssignment, sd: SpanningData | None = None) -> VoltageAssignment:
    """Equivalent assignment with every tree edge switched to 0."""
    X = zeta.graph
    sd = sd or base_spanning(X)
    pot = [0] * X.n
    for v in sorted(range(X.n), key=lambda v: sd.depth[v]):
        p = sd.parent[v]
        if p >= 0:
            pot[v] = pot[p] ^ zeta(p, v)
    out = VoltageAssignment(X, [z ^ pot[u] ^ pot[v] for (u, v), z in zip(X.edges, zeta.bits)])
    for c in sd.base_cycles:
        assert walk_voltage(out, c) == walk_voltage(zeta, c)
    return out


def coboundary(X: Graph, subset: int) -> VoltageAssignment:
    """Voltage 1 exactly on the edges leaving the vertex set encoded by ``subset``."""
    return VoltageAssignment(X, [(subset >> u ^ subset >> v) & 1 for u, v in X.edges])


def sectional_voltage_witness(X: Graph, zeta: VoltageAssignment, G: PermGroup) -> VoltageAssignment | None:
    """An equivalent assignment invariant edge-by-edge under ``G``, if one exists.

    Unknowns are the switching bits ``s_v``; each edge ``uv`` and generator
    ``g`` contributes ``s_u + s_v + s_ug + s_vg = zeta(uv) + zeta(ug vg)``.
    """
    gens = _check_automorphisms(X, G)
    rows, rhs = [], []
    for g in gens:
        for (u, v), z in zip(X.edges, zeta.bits):
            gu, gv = g[u], g[v]
            rows.append((1 << u) ^ (1 << v) ^ (1 << gu) ^ (1 << gv))
            rhs.append(z ^ zeta(gu, gv))
    s = gf2.solve(rows, rhs, X.n)
    if s is None:
        return None
    out = VoltageAssignment(X, [z ^ ((s >> u ^ s >> v) & 1) for (u, v), z in zip(X.edges, zeta.bits)])
    for g in gens:
        assert all(out(g[u], g[v]) == out(u, v) for u, v in X.edges)
    return out


def is_arcwise_invariant(zeta: VoltageAssignment, G: PermGroup) -> bool:
    X = zeta.graph
    return all(zeta(g[u], g[v]) == zeta(u, v) for g in as_group(G).generators for u, v in X.edges)


@dataclass
class AdmissibleSpace:
    """The G-invariant subspace of cover classes, as a GF(2) basis of cotree vectors."""

    graph: Graph
    spanning: SpanningData
    basis: list[int]
    constraints: int = 0
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def betti(self) -> int:
        return self.spanning.betti

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def vectors(self, include_zero: bool = False) -> list[int]:
        out = list(gf2.span(self.basis))
        return out if include_zero else out[1:]

    def __contains__(self, vector: int) -> bool:
        return gf2.rank(self.basis + [vector]) == len(self.basis)

    def voltage(self, vector: int) -> VoltageAssignment:
        return VoltageAssignment.from_class_vector(self.graph, vector, self.spanning)


def cycle_vector(walk: Sequence[tuple[int, int]], X: Graph, sd: SpanningData) -> int:
    """Coordinates of a closed walk in the cycle space, w.r.t. the fundamental cycles."""
    x = 0
    pos = sd.cotree_position
    for u, v in walk:
        j = pos.get(X.eid(u, v))
        if j is not None:
            x ^= 1 << j
    return x


def admissible_classes(X: Graph, G: PermGroup, betti_budget: int = BETTI_BUDGET) -> AdmissibleSpace:
    """All cover classes along which ``G`` lifts."""
    gens = _check_automorphisms(X, G)
    sd = base_spanning(X)
    if sd.betti > betti_budget:
        raise BudgetExceeded(f"Betti number {sd.betti} exceeds budget {betti_budget}")
    rows = []
    for g in gens:
        for j, c in enumerate(sd.base_cycles):
            rows.append(cycle_vector(image_walk(c, g), X, sd) ^ (1 << j))
    return AdmissibleSpace(X, sd, gf2.nullspace(rows, sd.betti), len(rows))
