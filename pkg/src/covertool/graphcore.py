"""Simple undirected graphs and the machinery the cover analysis needs.

Vertices are dense integers ``0..n-1``.  Arcs are ordered pairs ``(u, v)``
of adjacent vertices; walks are sequences of arcs.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BudgetExceeded,
    CycleGraphError,
    DomainError,
    MalformedInput,
    NotAutomorphism,
    NotConnected,
)
from .permgroup import ELEMENT_BUDGET, Permutation, PermGroup, find_element_mapping, tuple_stabilizer

ISO_BUDGET = 2000
S_ARC_CAP = 10_000_000


class Graph:
    """An immutable simple graph."""

    __slots__ = ("n", "adj", "edges", "__dict__")

    def __init__(self, n: int, edges: Iterable[Sequence[int]]):
        if n < 0:
            raise MalformedInput("negative vertex count")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        normalized = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise MalformedInput(f"edge {e} out of range for {n} vertices")
            if u == v:
                raise MalformedInput(f"loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in normalized:
                raise MalformedInput(f"parallel edge {key}")
            normalized.add(key)
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in nbrs)
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(normalized))

    @classmethod
    def _trusted(cls, n: int, adj: Sequence[Sequence[int]]) -> Graph:
        """Build from an adjacency list already known to be simple and symmetric."""
        g = cls.__new__(cls)
        g.n = n
        g.adj = tuple(tuple(sorted(a)) for a in adj)
        g.edges = tuple((u, v) for u in range(n) for v in g.adj[u] if u < v)
        return g

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    def eid(self, u: int, v: int) -> int:
        """Index of the edge carrying arc ``(u, v)``."""
        try:
            return self.edge_index[(u, v) if u < v else (v, u)]
        except KeyError:
            raise DomainError(f"({u}, {v}) is not an arc") from None

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edge_index

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def regular_degree(self) -> int | None:
        ds = set(self.degrees())
        return ds.pop() if len(ds) == 1 else None

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u]]

    @cached_property
    def edge_array(self) -> np.ndarray:
        return np.array(self.edges, dtype=np.int64).reshape(-1, 2)

    @cached_property
    def _edge_keys(self) -> np.ndarray:
        e = self.edge_array
        return np.sort(e[:, 0] * self.n + e[:, 1])

    def is_automorphism(self, g: Sequence[int]) -> bool:
        if len(g) != self.n:
            return False
        if not self.edges:
            return True
        g = np.asarray(g, dtype=np.int64)
        img = g[self.edge_array]
        lo = np.minimum(img[:, 0], img[:, 1])
        hi = np.maximum(img[:, 0], img[:, 1])
        return bool(np.array_equal(np.sort(lo * self.n + hi), self._edge_keys))

    def relabel(self, mapping: Sequence[int]) -> Graph:
        """The graph with vertex ``v`` renamed ``mapping[v]``."""
        return Graph(self.n, ((mapping[u], mapping[v]) for u, v in self.edges))

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> Graph:
        try:
            return cls(int(data["n"]), data["edges"])
        except (KeyError, TypeError, IndexError) as exc:
            raise MalformedInput(f"bad graph JSON: {exc}") from None

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"


# --- basic structure -------------------------------------------------------

def bfs_distances(X: Graph, source: int) -> list[int]:
    dist = [-1] * X.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in X.adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def is_connected(X: Graph) -> bool:
    if X.n == 0:
        return True
    return min(bfs_distances(X, 0)) >= 0


def is_bipartite(X: Graph) -> list[int] | None:
    """A proper two-colouring, or None when an odd cycle exists."""
    colour = [-1] * X.n
    for s in range(X.n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in X.adj[u]:
                if colour[w] < 0:
                    colour[w] = 1 - colour[u]
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return None
    return colour


def girth(X: Graph) -> float:
    """Length of a shortest cycle (``inf`` for forests)."""
    best = math.inf
    for s in range(X.n):
        dist = [-1] * X.n
        parent = [-1] * X.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in X.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


@dataclass
class SpanningData:
    """BFS spanning tree with its fundamental cycles.

    ``base_cycles[j]`` is the fundamental cycle of ``cotree_edges[j]``, as a
    closed walk of arcs starting and ending at the cotree edge's first vertex.
    """

    root: int
    parent: list[int]
    parent_arc: list[tuple[int, int] | None]
    depth: list[int]
    tree_edges: set[int]
    cotree_edges: list[int]
    base_cycles: list[list[tuple[int, int]]]
    cotree_position: dict[int, int] = field(default_factory=dict)

    @property
    def betti(self) -> int:
        return len(self.cotree_edges)

    def tree_path(self, v: int) -> list[int]:
        """Vertices from ``v`` up to the root."""
        path = [v]
        while self.parent[path[-1]] >= 0:
            path.append(self.parent[path[-1]])
        return path


def spanning_data(X: Graph, root: int = 0) -> SpanningData:
    dist = [-1] * X.n
    parent = [-1] * X.n
    dist[root] = 0
    queue = deque([root])
    tree = set()
    while queue:
        u = queue.popleft()
        for w in X.adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                parent[w] = u
                tree.add(X.eid(u, w))
                queue.append(w)
    if min(dist, default=0) < 0:
        raise NotConnected("spanning data needs a connected graph")
    parent_arc = [(v, parent[v]) if parent[v] >= 0 else None for v in range(X.n)]
    cotree = [i for i in range(X.num_edges) if i not in tree]
    cycles = []
    for i in cotree:
        u, v = X.edges[i]
        # climb to the lowest common ancestor
        up_u, up_v = [u], [v]
        a, b = u, v
        while dist[a] > dist[b]:
            a = parent[a]
            up_u.append(a)
        while dist[b] > dist[a]:
            b = parent[b]
            up_v.append(b)
        while a != b:
            a, b = parent[a], parent[b]
            up_u.append(a)
            up_v.append(b)
        verts = [u, v] + up_v[1:] + up_u[-2::-1]
        cycles.append([(verts[k], verts[k + 1]) for k in range(len(verts) - 1)])
    sd = SpanningData(root, parent, parent_arc, dist, tree, cotree, cycles)
    sd.cotree_position = {e: j for j, e in enumerate(cotree)}
    return sd


def all_cycles(X: Graph, max_vertices: int = 12) -> list[list[int]]:
    """Every simple cycle as a vertex list; exponential, for small graphs only."""
    if X.n > max_vertices:
        raise BudgetExceeded(f"cycle enumeration limited to {max_vertices} vertices")
    out = []
    for s in range(X.n):
        stack = [(s, [s])]
        while stack:
            u, path = stack.pop()
            for w in X.adj[u]:
                if w == s and len(path) >= 3 and path[1] < path[-1]:
                    out.append(path)
                elif w > s and w not in path:
                    stack.append((w, path + [w]))
    return out


# --- isomorphism -----------------------------------------------------------

def _initial_colours(X: Graph) -> list[tuple]:
    out = []
    for v in range(X.n):
        dist = bfs_distances(X, v)
        counts: dict[int, int] = {}
        for d in dist:
            counts[d] = counts.get(d, 0) + 1
        out.append((X.degree(v), tuple(sorted(counts.items()))))
    return out


def _refine(X: Graph, Y: Graph, cx: list[int], cy: list[int]):
    """Joint colour refinement; returns None as soon as the histograms differ."""
    while True:
        sig_x = [(cx[v], tuple(sorted(cx[w] for w in X.adj[v]))) for v in range(X.n)]
        sig_y = [(cy[v], tuple(sorted(cy[w] for w in Y.adj[v]))) for v in range(Y.n)]
        if sorted(sig_x) != sorted(sig_y):
            return None
        table = {s: i for i, s in enumerate(sorted(set(sig_x)))}
        nx = [table[s] for s in sig_x]
        ny = [table[s] for s in sig_y]
        if len(table) == len(set(cx)):
            return nx, ny
        cx, cy = nx, ny


def find_isomorphism(X: Graph, Y: Graph, budget: int = ISO_BUDGET) -> list[int] | None:
    """A vertex bijection ``f`` with ``f(X) = Y``, or None."""
    if max(X.n, Y.n) > budget:
        raise BudgetExceeded(f"isomorphism test limited to {budget} vertices")
    if X.n != Y.n or X.num_edges != Y.num_edges or sorted(X.degrees()) != sorted(Y.degrees()):
        return None
    if X.n == 0:
        return []
    ix, iy = _initial_colours(X), _initial_colours(Y)
    if sorted(ix) != sorted(iy):
        return None
    table = {s: i for i, s in enumerate(sorted(set(ix)))}
    start = ([table[s] for s in ix], [table[s] for s in iy])

    def search(cx, cy):
        refined = _refine(X, Y, cx, cy)
        if refined is None:
            return None
        cx, cy = refined
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(cx):
            cells.setdefault(c, []).append(v)
        target = None
        for c, members in sorted(cells.items(), key=lambda kv: (len(kv[1]), kv[0])):
            if len(members) > 1:
                target = c
                break
        if target is None:
            where = {c: v for v, c in enumerate(cy)}
            f = [where[c] for c in cx]
            if all(Y.has_edge(f[u], f[v]) for u, v in X.edges):
                return f
            return None
        v = cells[target][0]
        fresh = max(cx) + 1
        for w in [u for u, c in enumerate(cy) if c == target]:
            nx, ny = list(cx), list(cy)
            nx[v] = fresh
            ny[w] = fresh
            f = search(nx, ny)
            if f is not None:
                return f
        return None

    return search(*start)


def isomorphic(X: Graph, Y: Graph, budget: int = ISO_BUDGET) -> bool:
    return find_isomorphism(X, Y, budget) is not None


def transport_group(group: PermGroup, mapping: Sequence[int]) -> PermGroup:
    """Conjugate a vertex action along a vertex bijection ``v -> mapping[v]``."""
    m = Permutation(mapping)
    return PermGroup(group.degree, [m.inverse() * g * m for g in group.generators])


# --- group actions on graphs ----------------------------------------------

class GraphAction:
    """A group acting on the vertices of a graph by automorphisms.

    ``generators`` may be plain index arrays so that very large actions (coset
    graphs with hundreds of thousands of vertices) need no stabilizer chain;
    the group order must then be supplied.
    """

    def __init__(self, graph: Graph, group: PermGroup | None = None, *,
                 generators: Sequence[Sequence[int]] | None = None, order: int | None = None):
        self.graph = graph
        self.group = group
        if group is not None:
            if group.degree != graph.n:
                raise MalformedInput("group degree differs from vertex count")
            generators = group.generators
        if generators is None:
            raise MalformedInput("need a group or explicit generators")
        self.generators = [np.asarray(g, dtype=np.int64) for g in generators]
        for i, g in enumerate(self.generators):
            if not graph.is_automorphism(g):
                raise NotAutomorphism(f"generator {i} does not preserve edges")
        self._order = order

    @property
    def order(self) -> int:
        if self._order is None:
            self._order = self.group.order()
        return self._order

    def is_vertex_transitive(self) -> bool:
        return _orbit_size_vectorized(self.generators, np.array([0]), self.graph.n) == self.graph.n

    def is_edge_transitive(self) -> bool:
        X = self.graph
        if not X.edges:
            return True
        index = X.edge_index
        gens = [g.tolist() for g in self.generators]
        seen = {0}
        queue = [0]
        for e in queue:
            u, v = X.edges[e]
            for g in gens:
                a, b = g[u], g[v]
                f = index[(a, b) if a < b else (b, a)]
                if f not in seen:
                    seen.add(f)
                    queue.append(f)
        return len(seen) == len(X.edges)


def _orbit_size_vectorized(gens: list[np.ndarray], start: np.ndarray, size: int) -> int:
    seen = np.zeros(size, dtype=bool)
    seen[start] = True
    frontier = start
    count = len(start)
    while len(frontier):
        nxt = []
        for g in gens:
            img = g[frontier]
            img = np.unique(img[~seen[img]])
            seen[img] = True
            nxt.append(img)
        frontier = np.unique(np.concatenate(nxt)) if nxt else np.array([], dtype=np.int64)
        count += len(frontier)
    return count


def s_arc_count(X: Graph, s: int) -> int:
    d = X.regular_degree()
    if d is not None:
        return X.n * d * (d - 1) ** (s - 1) if s >= 1 else X.n
    # paths counted by dynamic programming on arcs
    counts = {(u, v): 1 for u, v in X.arcs()}
    for _ in range(s - 1):
        nxt: dict[tuple[int, int], int] = {}
        for (u, v), c in counts.items():
            for w in X.adj[v]:
                if w != u:
                    nxt[(v, w)] = nxt.get((v, w), 0) + c
        counts = nxt
    return sum(counts.values())


def enumerate_s_arcs(X: Graph, s: int) -> np.ndarray:
    """All s-arcs as rows of an ``(N, s+1)`` array, in lexicographic order."""
    d = X.regular_degree()
    if d is not None and d > 0:
        adj = np.array(X.adj, dtype=np.int64)
        arcs = np.arange(X.n, dtype=np.int64).reshape(-1, 1)
        for step in range(s):
            last = arcs[:, -1]
            ext = adj[last].reshape(-1)
            arcs = np.repeat(arcs, d, axis=0)
            arcs = np.column_stack([arcs, ext])
            if step >= 1:
                arcs = arcs[arcs[:, -1] != arcs[:, -3]]
        return arcs
    rows = [[v] for v in range(X.n)]
    for _ in range(s):
        rows = [r + [w] for r in rows for w in X.adj[r[-1]] if len(r) < 2 or w != r[-2]]
    return np.array(rows, dtype=np.int64).reshape(-1, s + 1)


def _arc_keys(arcs: np.ndarray, n: int) -> np.ndarray:
    keys = np.zeros(len(arcs), dtype=np.int64)
    for col in range(arcs.shape[1]):
        keys = keys * n + arcs[:, col]
    return keys


def transitive_on_s_arcs(act: GraphAction, s: int) -> bool:
    X = act.graph
    arcs = enumerate_s_arcs(X, s)
    if len(arcs) == 0:
        return True
    if (s + 1) * math.log2(max(X.n, 2)) < 62:
        keys = _arc_keys(arcs, X.n)
        order = np.argsort(keys)
        sorted_keys = keys[order]
        seen = np.zeros(len(arcs), dtype=bool)
        seen[order[0]] = True
        frontier = np.array([order[0]])
        total = 1
        while len(frontier):
            nxt = []
            for g in act.generators:
                img_keys = _arc_keys(g[arcs[frontier]], X.n)
                idx = order[np.searchsorted(sorted_keys, img_keys)]
                idx = np.unique(idx[~seen[idx]])
                seen[idx] = True
                nxt.append(idx)
            frontier = np.unique(np.concatenate(nxt))
            total += len(frontier)
        return total == len(arcs)
    start = tuple(int(x) for x in arcs[0])
    gens = [g.tolist() for g in act.generators]
    seen = {start}
    queue = [start]
    for t in queue:
        for g in gens:
            u = tuple(g[x] for x in t)
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return len(seen) == len(arcs)


@dataclass
class Regularity:
    s: int | None
    verified: bool  # False when the s-arc cap forced the order-arithmetic fallback


def arc_regularity(act: GraphAction, cap: int = S_ARC_CAP) -> Regularity:
    """Find the ``s`` for which the group acts regularly on s-arcs."""
    X = act.graph
    if not is_connected(X):
        raise NotConnected("regularity needs a connected graph")
    if X.n > 2 and X.regular_degree() == 2:
        raise CycleGraphError("cycle graphs are s-arc-transitive for every s")
    order = act.order
    if not act.is_vertex_transitive():
        return Regularity(None, True)
    s = 1
    while True:
        count = s_arc_count(X, s)
        if count > order or count == 0:
            return Regularity(None, True)
        if count > cap:
            # fallback: order arithmetic plus vertex transitivity only
            return Regularity(s if count == order else None, False)
        if not transitive_on_s_arcs(act, s):
            return Regularity(None, True)
        if count == order:
            return Regularity(s, True)
        s += 1


def regularity_degree(act: GraphAction, cap: int = S_ARC_CAP) -> int | None:
    return arc_regularity(act, cap).s


_STABILIZER_ORDERS = {1: 3, 2: 6, 3: 12, 4: 24, 5: 48}


def stabilizer_order_expected(s: int) -> int:
    """Vertex-stabilizer order of an s-regular group on a cubic graph."""
    try:
        return _STABILIZER_ORDERS[s]
    except KeyError:
        raise DomainError(f"cubic s-regular groups have 1 <= s <= 5, got {s}") from None


def edge_flip_involution_exists(act: GraphAction, budget: int = ELEMENT_BUDGET) -> bool:
    """Whether some involution of the group reverses an edge."""
    X, G = act.graph, act.group
    if G is None:
        raise MalformedInput("edge-flip search needs a group with a stabilizer chain")
    if not X.edges:
        return False
    u, v = X.edges[0]
    arcs = {(u, v)}
    queue = [(u, v)]
    for a in queue:
        for g in G.generators:
            b = (g[a[0]], g[a[1]])
            if b not in arcs:
                arcs.add(b)
                queue.append(b)
    if len(arcs) != 2 * X.num_edges:
        raise DomainError("group is not arc-transitive")
    t = find_element_mapping(G, (u, v), (v, u))
    assert t is not None
    stab = tuple_stabilizer(G, (u, v))
    for k in stab.elements(budget):
        x = t * k
        if not x.is_identity() and (x * x).is_identity():
            return True
    return False


# --- quotients -------------------------------------------------------------

def _check_semiregular_involution(X: Graph, c: Sequence[int]) -> None:
    if len(c) != X.n:
        raise MalformedInput("involution degree differs from vertex count")
    if not X.is_automorphism(c):
        raise NotAutomorphism("not an automorphism")
    for v in range(X.n):
        if c[c[v]] != v:
            raise DomainError("not an involution")
        if c[v] == v:
            raise DomainError(f"fixed point {v}")
        if X.has_edge(v, c[v]):
            raise DomainError(f"edge inside the orbit {{{v}, {c[v]}}}")


def quotient_labels(X: Graph, c: Sequence[int]) -> list[int]:
    """Derived-cover index of each vertex: ``2*fibre + (0 for the smaller rep, 1 otherwise)``."""
    reps = sorted({min(v, c[v]) for v in range(X.n)})
    pos = {r: i for i, r in enumerate(reps)}
    return [2 * pos[min(v, c[v])] + (0 if v < c[v] else 1) for v in range(X.n)]


def quotient_by_involution(X: Graph, c: Sequence[int]):
    """Quotient by a fixed-point-free involutory automorphism, plus its Z2 voltages.

    The returned voltage assignment rebuilds ``X`` as its derived cover, with
    vertex ``v`` landing on derived vertex ``quotient_labels(X, c)[v]``.
    """
    from .voltage import VoltageAssignment

    _check_semiregular_involution(X, c)
    labels = quotient_labels(X, c)
    m = X.n // 2
    edges: dict[tuple[int, int], int] = {}
    hits: dict[tuple[int, int], int] = {}
    for u, v in X.edges:
        a, b = labels[u] >> 1, labels[v] >> 1
        key = (a, b) if a < b else (b, a)
        edges[key] = (labels[u] ^ labels[v]) & 1
        hits[key] = hits.get(key, 0) + 1
    # each quotient edge must be covered by exactly the two edges of one c-orbit
    if any(h != 2 for h in hits.values()):
        raise DomainError("quotient is not simple (a vertex sees both vertices of a fibre)")
    Q = Graph(m, edges)
    bits = [edges[e] for e in Q.edges]
    return Q, VoltageAssignment(Q, bits)
