"""Lifted groups on 2-covers and the split / sectional / transitive trichotomy."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import DomainError, NotConnected, NotLiftable, NotTransitive
from .graphcore import bfs_distances
from .permgroup import Permutation, PermGroup, Subgroup, as_group, index2_subgroups
from .voltage import Cover, _check_automorphisms


class SplitKind(str, Enum):
    NON_SPLIT = "NonSplit"
    SPLIT_SECTIONAL = "SplitSectional"
    SPLIT_TRANSITIVE = "SplitTransitive"
    SPLIT_MIXED = "SplitMixed"

    @property
    def is_split(self) -> bool:
        return self is not SplitKind.NON_SPLIT

    @property
    def has_sectional(self) -> bool:
        return self in (SplitKind.SPLIT_SECTIONAL, SplitKind.SPLIT_MIXED)

    @property
    def has_transitive(self) -> bool:
        return self in (SplitKind.SPLIT_TRANSITIVE, SplitKind.SPLIT_MIXED)


def lift_automorphism(cover: Cover, g) -> Permutation:
    """The lift of ``g`` sending ``(0, 0)`` to ``(0^g, 0)``.

    ``(v, i)`` goes to ``(v^g, i + delta(v))``; delta is propagated along a
    BFS tree and then checked on every edge.
    """
    X, zeta = cover.base, cover.zeta
    if len(g) != X.n or not X.is_automorphism(g):
        raise NotLiftable("not an automorphism of the base graph")
    dist = bfs_distances(X, 0)
    delta = [0] * X.n
    seen = [False] * X.n
    seen[0] = True
    for u in sorted(range(X.n), key=dist.__getitem__):
        for v in X.adj[u]:
            if not seen[v]:
                seen[v] = True
                delta[v] = delta[u] ^ zeta(u, v) ^ zeta(g[u], g[v])
    for u, v in X.edges:
        if delta[u] ^ zeta(u, v) ^ zeta(g[u], g[v]) ^ delta[v]:
            raise NotLiftable(f"{Permutation._raw(g)} does not lift")
    return Permutation._raw(2 * g[x >> 1] + ((x & 1) ^ delta[x >> 1]) for x in range(2 * X.n))


@dataclass
class LiftedGroup:
    cover: Cover
    base_group: PermGroup
    lifts: list[Permutation]
    deck: Permutation
    group: PermGroup

    def project(self, h) -> Permutation:
        """The base automorphism covered by ``h``."""
        return Permutation._raw(h[2 * v] >> 1 for v in range(self.cover.base.n))


def lifted_group(cover: Cover, G: PermGroup) -> LiftedGroup:
    G = as_group(G)
    gens = _check_automorphisms(cover.base, G)
    if not cover.is_connected():
        raise NotConnected("the cover is disconnected")
    lifts = [lift_automorphism(cover, g) for g in gens]
    group = PermGroup(cover.derived.n, lifts + [cover.deck])
    if group.order() != 2 * G.order():
        raise DomainError(f"lifted group has order {group.order()}, expected {2 * G.order()}")
    return LiftedGroup(cover, G, lifts, cover.deck, group)


@dataclass
class Complement:
    subgroup: Subgroup
    is_transitive: bool
    orbits: list[list[int]]

    @property
    def generators(self) -> tuple[Permutation, ...]:
        return self.subgroup.generators

    def to_json(self) -> dict:
        return {
            "generators": [str(g) for g in self.generators],
            "transitive": self.is_transitive,
            "orbit_sizes": [len(o) for o in self.orbits],
        }


@dataclass
class SplitReport:
    kind: SplitKind
    complements: list[Complement]
    lifted: LiftedGroup = field(repr=False)

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "lifted_order": self.lifted.group.order(),
            "complements": [c.to_json() for c in self.complements],
        }


def split_kind(complements: list[Complement]) -> SplitKind:
    if not complements:
        return SplitKind.NON_SPLIT
    trans = [c.is_transitive for c in complements]
    if all(trans):
        return SplitKind.SPLIT_TRANSITIVE
    if not any(trans):
        return SplitKind.SPLIT_SECTIONAL
    return SplitKind.SPLIT_MIXED


def complements_of_deck(lifted: LiftedGroup) -> list[Complement]:
    """Index-2 subgroups of the lifted group that avoid the deck transformation."""
    out = []
    for K in index2_subgroups(lifted.group):
        if lifted.deck in K:
            continue
        orbits = K.orbits()
        out.append(Complement(K, len(orbits) == 1, orbits))
    return out


def classify_split(cover: Cover, G: PermGroup) -> SplitReport:
    G = as_group(G)
    if not G.is_transitive():
        raise NotTransitive("classification needs a vertex-transitive group")
    lifted = lifted_group(cover, G)
    comps = complements_of_deck(lifted)
    for c in comps:
        if not c.is_transitive:
            # with G vertex-transitive an intransitive complement splits into two sections
            assert len(c.orbits) == 2
    return SplitReport(split_kind(comps), comps, lifted)


def mixed_criterion(cover: Cover, G: PermGroup, report: SplitReport | None = None) -> bool:
    """Whether ``G`` has a vertex-transitive subgroup of index 2.

    Valid only when a sectional complement exists; the answer then decides
    whether a transitive complement exists too.
    """
    G = as_group(G)
    report = report or classify_split(cover, G)
    if not report.kind.has_sectional:
        raise DomainError(f"no sectional complement ({report.kind.value})")
    return any(K.is_transitive() for K in index2_subgroups(G))


def sections_of(complement: Complement | Subgroup, cover: Cover) -> tuple[list[int], list[int]]:
    """The two orbits of an intransitive complement; each is a section of the cover."""
    orbits = complement.orbits() if isinstance(complement, Subgroup) else complement.orbits
    if len(orbits) == 1:
        raise DomainError("complement is transitive; it has no invariant section")
    if len(orbits) != 2:
        raise DomainError(f"complement has {len(orbits)} orbits")
    for orb in orbits:
        fibres = sorted(x >> 1 for x in orb)
        if fibres != list(range(cover.base.n)):
            raise DomainError("orbit is not a section")
    return orbits[0], orbits[1]
