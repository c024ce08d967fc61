"""Named graphs, their standard groups, and the voltage data of the two
non-CDC constructions with sectional complements.

Census names follow the Foster census: F4 = K4, F8 = cube, F10 = Petersen,
F16 = Moebius-Kantor, F20A = dodecahedron, F20B = Desargues, F40.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cache

from .errors import DomainError, MalformedInput
from .graphcore import Graph, find_isomorphism, transport_group
from .lifting import lifted_group
from .permgroup import Permutation, PermGroup, alternating_group, symmetric_group
from .voltage import VoltageAssignment, admissible_classes, derived_cover


@dataclass
class Fixture:
    graph: Graph
    groups: dict[str, PermGroup] = field(default_factory=dict)
    voltage: VoltageAssignment | None = None


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise MalformedInput("complete graph needs n >= 1")
    return Graph(n, itertools.combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise MalformedInput("cycle needs n >= 3")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def generalized_petersen(n: int, k: int) -> Graph:
    """GP(n, k): outer cycle ``0..n-1``, spokes ``i -- n+i``, inner edges ``n+i -- n+i+k``."""
    if n < 3 or not 1 <= k < n or 2 * k == n:
        raise MalformedInput(f"invalid generalized Petersen parameters ({n}, {k})")
    edges = set()
    for i in range(n):
        edges.add(tuple(sorted((i, (i + 1) % n))))
        edges.add((i, n + i))
        edges.add(tuple(sorted((n + i, n + (i + k) % n))))
    return Graph(2 * n, edges)


def circulant(n: int, connection: set[int] | list[int]) -> Graph:
    """Cay(Z_n, S) for a connection set closed under negation."""
    conn = {a % n for a in connection}
    if n < 3 or 0 in conn or any((-a) % n not in conn for a in conn):
        raise MalformedInput(f"invalid connection set {sorted(conn)} for Z_{n}")
    return Graph(n, {tuple(sorted((i, (i + a) % n))) for i in range(n) for a in conn})


def dihedral_action(n: int) -> tuple[Permutation, Permutation]:
    """Rotation ``i -> i+1`` and reflection ``i -> -i`` on Z_n."""
    rot = Permutation._raw((i + 1) % n for i in range(n))
    ref = Permutation._raw((-i) % n for i in range(n))
    return rot, ref


def generalized_petersen_dihedral(n: int) -> PermGroup:
    rot = Permutation._raw([(i + 1) % n for i in range(n)] + [n + (i + 1) % n for i in range(n)])
    ref = Permutation._raw([(-i) % n for i in range(n)] + [n + (-i) % n for i in range(n)])
    return PermGroup(2 * n, [rot, ref])


def construction_circulant(n: int) -> Fixture:
    """Cay(Z_2n, {1, -1, n}) with steps at voltage 0 and diameters at voltage 1.

    Groups: the full dihedral group ``D4n`` and its vertex-transitive index-2
    subgroups ``Z2n`` (rotations) and ``D2n`` (generated by the double rotation
    and the parity-swapping reflection ``i -> 1 - i``).
    """
    if n < 2:
        raise MalformedInput("need n >= 2")
    m = 2 * n
    X = circulant(m, {1, m - 1, n})
    rot, ref = dihedral_action(m)
    bits = [1 if (v - u) % m == n else 0 for u, v in X.edges]
    groups = {
        "D": PermGroup(m, [rot, ref]),
        "Z": PermGroup(m, [rot]),
        "Dhalf": PermGroup(m, [rot * rot, ref * rot]),
    }
    return Fixture(X, groups, VoltageAssignment(X, bits))


def _dihedral_z2_element(i: int, j: int, z: int, n: int) -> int:
    return (i % n) + n * (j + 2 * z)


def cartesian_prism(n: int) -> Fixture:
    """C_2n x K_2 as the Cayley graph of ``D2n x Z2 = <a, b, c>`` on ``{b, ab, c}``.

    Vertex ``a^i b^j c^z`` is ``i + n*(j + 2z)``.  Edges join ``g`` and ``g s``;
    the group acts by left multiplication, so edge labels are preserved.
    Voltages: b-edges and c-edges 1, ab-edges 0.
    """
    if n < 2:
        raise MalformedInput("need n >= 2")
    idx = _dihedral_z2_element
    edges = {}
    for i in range(n):
        for j in (0, 1):
            for z in (0, 1):
                g = idx(i, j, z, n)
                for label, target in (
                    ("b", idx(i, 1 - j, z, n)),
                    ("ab", idx(i + (1 if j == 0 else -1), 1 - j, z, n)),
                    ("c", idx(i, j, 1 - z, n)),
                ):
                    edges[tuple(sorted((g, target)))] = label
    X = Graph(4 * n, edges)
    bits = [0 if edges[e] == "ab" else 1 for e in X.edges]

    def left(f):
        out = [0] * (4 * n)
        for i in range(n):
            for j in (0, 1):
                for z in (0, 1):
                    out[idx(i, j, z, n)] = idx(*f(i, j, z), n)
        return Permutation._raw(out)

    a = left(lambda i, j, z: (i + 1, j, z))
    b = left(lambda i, j, z: (-i, 1 - j, z))
    c = left(lambda i, j, z: (i, j, 1 - z))
    return Fixture(X, {"D2nxZ2": PermGroup(4 * n, [a, b, c])}, VoltageAssignment(X, bits))


def kneser_petersen() -> tuple[Graph, list[tuple[int, int]]]:
    """Petersen graph on the 2-subsets of {0..4}, adjacent when disjoint."""
    pairs = list(itertools.combinations(range(5), 2))
    pos = {p: i for i, p in enumerate(pairs)}
    edges = [(pos[p], pos[q]) for p, q in itertools.combinations(pairs, 2) if not set(p) & set(q)]
    return Graph(10, edges), pairs


def _induced_on_pairs(g: Permutation, pairs) -> Permutation:
    pos = {p: i for i, p in enumerate(pairs)}
    return Permutation._raw(pos[tuple(sorted((g[a], g[b])))] for a, b in pairs)


def cube() -> Graph:
    return generalized_petersen(4, 1)


# --- census ----------------------------------------------------------------

@cache
def f4() -> Fixture:
    return Fixture(complete_graph(4), {"A4": alternating_group(4), "S4": symmetric_group(4)})


@cache
def f10() -> Fixture:
    K, pairs = kneser_petersen()
    X = generalized_petersen(5, 2)
    iso = find_isomorphism(K, X)
    groups = {}
    for name, G in (("A5", alternating_group(5)), ("S5", symmetric_group(5))):
        induced = PermGroup(10, [_induced_on_pairs(g, pairs) for g in G.generators])
        groups[name] = transport_group(induced, iso)
    return Fixture(X, groups)


def _lift_and_transport(base: Graph, zeta: VoltageAssignment, G: PermGroup, target: Graph) -> PermGroup:
    cover = derived_cover(base, zeta)
    lifted = lifted_group(cover, G).group
    iso = find_isomorphism(cover.derived, target)
    if iso is None:
        raise DomainError("derived cover is not isomorphic to the requested fixture")
    return transport_group(lifted, iso)


@cache
def petersen_classes() -> dict[str, int]:
    """Cotree vectors of the A5-admissible covers of F10 whose derived graph is F20A / F20B."""
    X, A5 = f10().graph, f10().groups["A5"]
    space = admissible_classes(X, A5)
    dodeca, desargues = generalized_petersen(10, 2), generalized_petersen(10, 3)
    out = {}
    for vec in space.vectors():
        D = derived_cover(X, space.voltage(vec)).derived
        if "F20A" not in out and find_isomorphism(D, dodeca) is not None:
            out["F20A"] = vec
        elif "F20B" not in out and find_isomorphism(D, desargues) is not None:
            out["F20B"] = vec
    return out


@cache
def f8() -> Fixture:
    K4 = f4()
    aut = _lift_and_transport(K4.graph, VoltageAssignment.constant(K4.graph), K4.groups["S4"], cube())
    sub = _lift_and_transport(K4.graph, VoltageAssignment.constant(K4.graph), K4.groups["A4"], cube())
    return Fixture(cube(), {"Aut": aut, "S4xZ2": aut, "A4xZ2": sub})


@cache
def f16_class() -> int:
    """Cotree vector of the Aut(F8)-admissible cover of the cube that is F16."""
    F8 = f8()
    space = admissible_classes(F8.graph, F8.groups["Aut"])
    mk = generalized_petersen(8, 3)
    for vec in space.vectors():
        if find_isomorphism(derived_cover(F8.graph, space.voltage(vec)).derived, mk) is not None:
            return vec
    raise DomainError("no admissible cover of the cube is isomorphic to GP(8,3)")


@cache
def f16() -> Fixture:
    F8 = f8()
    zeta = VoltageAssignment.from_class_vector(F8.graph, f16_class())
    aut = _lift_and_transport(F8.graph, zeta, F8.groups["Aut"], generalized_petersen(8, 3))
    return Fixture(generalized_petersen(8, 3), {"Aut": aut})


@cache
def f20a() -> Fixture:
    F10 = f10()
    zeta = VoltageAssignment.from_class_vector(F10.graph, petersen_classes()["F20A"])
    aut = _lift_and_transport(F10.graph, zeta, F10.groups["A5"], generalized_petersen(10, 2))
    return Fixture(generalized_petersen(10, 2), {"Aut": aut, "A5xZ2": aut})


@cache
def f20b() -> Fixture:
    F10 = f10()
    cdc = VoltageAssignment.constant(F10.graph)
    target = generalized_petersen(10, 3)
    aut = _lift_and_transport(F10.graph, cdc, F10.groups["S5"], target)
    sub = _lift_and_transport(F10.graph, cdc, F10.groups["A5"], target)
    return Fixture(target, {"Aut": aut, "S5xZ2": aut, "A5xZ2": sub})


@cache
def f40() -> Fixture:
    F20A = f20a()
    cover = derived_cover(F20A.graph, VoltageAssignment.constant(F20A.graph))
    G = lifted_group(cover, F20A.groups["A5xZ2"]).group
    return Fixture(cover.derived, {"A5xZ2xZ2": G})


CENSUS = {"F4": f4, "F8": f8, "F10": f10, "F16": f16, "F20A": f20a, "F20B": f20b, "F40": f40}

_GP_RE = re.compile(r"^GP\((\d+),(\d+)\)$")
_C_RE = re.compile(r"^C\((\d+);([\d,]+)\)$")


def resolve(name: str) -> Fixture:
    """Look up a census name, ``GP(n,k)`` or ``C(n;a,b,...)``."""
    key = name.replace(" ", "")
    if key in CENSUS:
        return CENSUS[key]()
    if key == "F20":
        return f20a()
    m = _GP_RE.match(key)
    if m:
        n, k = int(m.group(1)), int(m.group(2))
        return Fixture(generalized_petersen(n, k), {"D": generalized_petersen_dihedral(n)})
    m = _C_RE.match(key)
    if m:
        n = int(m.group(1))
        conn = {int(a) for a in m.group(2).split(",") if a}
        conn |= {(-a) % n for a in conn}
        rot, ref = dihedral_action(n)
        return Fixture(circulant(n, conn), {"D": PermGroup(n, [rot, ref])})
    raise MalformedInput(f"unknown fixture {name!r}")
