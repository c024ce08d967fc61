"""Independent reference computations used to cross-check the package.

Nothing here calls the package's group or graph algorithms: orders come from
sympy, isomorphism and cycles from networkx, everything else from brute force.
"""

import itertools

import networkx as nx
from sympy.combinatorics import Permutation as SymPerm
from sympy.combinatorics import PermutationGroup


def sympy_order(degree, gens):
    gens = [SymPerm(list(g)) for g in gens] or [SymPerm(list(range(degree)))]
    return PermutationGroup(gens).order()


def closure(degree, gens):
    """All elements of the group generated by ``gens`` (tuples, right action)."""
    ident = tuple(range(degree))
    seen = {ident}
    queue = [ident]
    for x in queue:
        for g in gens:
            y = tuple(g[x[i]] for i in range(degree))
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def compose(p, q):
    return tuple(q[p[i]] for i in range(len(p)))


def to_nx(X):
    G = nx.Graph()
    G.add_nodes_from(range(X.n))
    G.add_edges_from(X.edges)
    return G


def nx_isomorphic(X, Y):
    return nx.is_isomorphic(to_nx(X), to_nx(Y))


def all_cycles(X):
    """Every cycle as a vertex list, via networkx."""
    return [list(c) for c in nx.simple_cycles(to_nx(X))]


def cycle_voltage(bits_by_edge, cyc):
    total = 0
    for a, b in zip(cyc, cyc[1:] + cyc[:1]):
        total ^= bits_by_edge[(a, b) if a < b else (b, a)]
    return total


def voltage_map(X, bits):
    return dict(zip(X.edges, bits))


def cdc_by_cycles(X, bits):
    vm = voltage_map(X, bits)
    return all(cycle_voltage(vm, c) == len(c) % 2 for c in all_cycles(X))


def lifts_by_cycles(X, bits, elements, cycles=None):
    vm = voltage_map(X, bits)
    cycles = cycles if cycles is not None else all_cycles(X)
    return all(cycle_voltage(vm, [g[v] for v in c]) == cycle_voltage(vm, c) for g in elements for c in cycles)


def arcwise_witness_exists(X, bits, gens):
    """Brute force over every switching set S of vertices."""
    n = X.n
    for S in range(1 << n):
        new = {(u, v): b ^ ((S >> u ^ S >> v) & 1) for (u, v), b in zip(X.edges, bits)}
        if all(new[(min(g[u], g[v]), max(g[u], g[v]))] == new[(u, v)] for g in gens for u, v in X.edges):
            return True
    return False


def index2_count(degree, elements):
    """Number of index-2 subgroups, from the subgroup generated by squares."""
    squares = {compose(x, x) for x in elements}
    S = closure(degree, list(squares))
    quotient = len(elements) // len(S)
    d = quotient.bit_length() - 1
    assert 1 << d == quotient
    return (1 << d) - 1


def s_arcs(X, s):
    arcs = [[v] for v in range(X.n)]
    for _ in range(s):
        arcs = [a + [w] for a in arcs for w in X.adj[a[-1]] if len(a) < 2 or w != a[-2]]
    return arcs


def s_regular_brute(X, elements, s):
    arcs = s_arcs(X, s)
    first = arcs[0]
    images = {tuple(g[v] for v in first) for g in elements}
    return len(images) == len(arcs) == len(elements)


def orbits_of(degree, gens):
    seen, out = set(), []
    for p in range(degree):
        if p in seen:
            continue
        orb = {p}
        queue = [p]
        for x in queue:
            for g in gens:
                if g[x] not in orb:
                    orb.add(g[x])
                    queue.append(g[x])
        seen |= orb
        out.append(sorted(orb))
    return out


def subsets(n):
    return itertools.chain.from_iterable(itertools.combinations(range(n), k) for k in range(n + 1))
