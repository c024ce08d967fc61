"""Finite permutation groups.

Permutations act on the right, as in the group-theory literature this
package serves: ``i ** p`` is written ``p[i]`` and the product ``p * q``
applies ``p`` first, then ``q``.  Conjugation is ``p ** q = q^-1 p q``.

Points are 0-indexed internally.  Cycle notation for I/O is 1-indexed,
so ``"(1 2 3)"`` is the 3-cycle on internal points 0, 1, 2.
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Iterable, Sequence

from .errors import BudgetExceeded, MalformedInput

ELEMENT_BUDGET = 10_000

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def _mul(p: tuple, q: tuple) -> tuple:
    return tuple(map(q.__getitem__, p))


def _inv(p: tuple) -> tuple:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


class Permutation(tuple):
    """A bijection of ``{0, ..., n-1}`` stored as its image tuple."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise MalformedInput(f"not a permutation: {images!r}")
        return tuple.__new__(cls, images)

    @classmethod
    def _raw(cls, images) -> Permutation:
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return tuple.__new__(cls, range(degree))

    @classmethod
    def from_cycles(cls, cycles, degree: int) -> Permutation:
        """Build from 0-indexed cycles, e.g. ``[(0, 1, 2), (3, 4)]``."""
        images = list(range(degree))
        seen = set()
        for cyc in cycles:
            cyc = list(cyc)
            for x in cyc:
                if not 0 <= x < degree or x in seen:
                    raise MalformedInput(f"bad cycle {cyc} for degree {degree}")
                seen.add(x)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a] = b
        return tuple.__new__(cls, images)

    @classmethod
    def parse(cls, text: str, degree: int) -> Permutation:
        """Parse 1-indexed disjoint-cycle notation such as ``"(1 2 3)(4 5)"``."""
        text = text.strip()
        stripped = _CYCLE_RE.sub("", text).strip()
        if stripped:
            raise MalformedInput(f"cannot parse permutation {text!r}")
        cycles = []
        for body in _CYCLE_RE.findall(text):
            parts = body.replace(",", " ").split()
            try:
                cycles.append([int(x) - 1 for x in parts])
            except ValueError:
                raise MalformedInput(f"cannot parse permutation {text!r}") from None
        return cls.from_cycles(cycles, degree)

    @property
    def degree(self) -> int:
        return len(self)

    def __mul__(self, other) -> Permutation:
        if len(self) != len(other):
            raise MalformedInput("degree mismatch in product")
        return tuple.__new__(Permutation, map(other.__getitem__, self))

    def __pow__(self, k):
        if isinstance(k, tuple):
            # conjugation by a permutation
            k = Permutation._raw(k)
            return (~k) * self * k
        if k < 0:
            return (~self) ** (-k)
        result = Permutation.identity(len(self))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __invert__(self) -> Permutation:
        return tuple.__new__(Permutation, _inv(self))

    inverse = __invert__

    def conj(self, g) -> Permutation:
        """``g^-1 * self * g``."""
        return self ** Permutation._raw(g)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = [False] * len(self)
        out = []
        for i in range(len(self)):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = self[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return reduce(math.lcm, (len(c) for c in self.cycles()), 1)

    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def support(self) -> list[int]:
        return [i for i, x in enumerate(self) if i != x]

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r}, degree={len(self)})"


def _check_degree(degree: int, perms: Sequence) -> list[Permutation]:
    out = []
    for p in perms:
        if not isinstance(p, Permutation):
            p = Permutation(p)
        if len(p) != degree:
            raise MalformedInput(f"generator of degree {len(p)} in a group of degree {degree}")
        out.append(p)
    return out


class _StabChain:
    """Base and strong generating set built by deterministic Schreier-Sims."""

    def __init__(self, degree: int, gens: Sequence[tuple]):
        self.degree = degree
        self.ident = tuple(range(degree))
        self.base: list[int] = []
        self.strong: list[list[tuple]] = []
        self.trans: list[dict[int, tuple]] = []
        self.tinv: list[dict[int, tuple]] = []
        self._tested: list[set] = []
        gens = list(dict.fromkeys(g for g in gens if g != self.ident))
        for g in gens:
            if all(g[b] == b for b in self.base):
                self._new_level(self._first_moved(g))
        for lvl in range(len(self.base)):
            fixed = self.base[:lvl]
            self.strong[lvl] = [g for g in gens if all(g[b] == b for b in fixed)]
            self._grow_orbit(lvl)
        self._complete()

    @staticmethod
    def _first_moved(g) -> int:
        for i, x in enumerate(g):
            if i != x:
                return i
        raise AssertionError("identity has no moved point")

    def _new_level(self, point: int) -> None:
        self.base.append(point)
        self.strong.append([])
        self.trans.append({point: self.ident})
        self.tinv.append({point: self.ident})
        self._tested.append(set())

    def _grow_orbit(self, lvl: int) -> None:
        trans, tinv, gens = self.trans[lvl], self.tinv[lvl], self.strong[lvl]
        queue = deque(trans)
        while queue:
            p = queue.popleft()
            up = trans[p]
            for s in gens:
                q = s[p]
                if q not in trans:
                    uq = _mul(up, s)
                    trans[q] = uq
                    tinv[q] = _inv(uq)
                    queue.append(q)

    def strip(self, h: tuple, start: int = 0) -> tuple[tuple, int]:
        base, tinv = self.base, self.tinv
        for lvl in range(start, len(base)):
            x = h[base[lvl]]
            inv = tinv[lvl].get(x)
            if inv is None:
                return h, lvl
            if inv is not self.ident:
                h = _mul(h, inv)
        return h, len(base)

    def _complete(self) -> None:
        ident = self.ident
        lvl = len(self.base) - 1
        while lvl >= 0:
            added = False
            trans, tinv, tested = self.trans[lvl], self.tinv[lvl], self._tested[lvl]
            gens = self.strong[lvl]
            for p in list(trans):
                up = trans[p]
                for si, s in enumerate(gens):
                    if (p, si) in tested:
                        continue
                    tested.add((p, si))
                    h = _mul(_mul(up, s), tinv[s[p]])
                    if h == ident:
                        continue
                    h, j = self.strip(h, lvl + 1)
                    if j == len(self.base) and h == ident:
                        continue
                    if j == len(self.base):
                        self._new_level(self._first_moved(h))
                    for m in range(lvl + 1, j + 1):
                        self.strong[m].append(h)
                        self._grow_orbit(m)
                    lvl = j
                    added = True
                    break
                if added:
                    break
            if not added:
                lvl -= 1

    @property
    def order(self) -> int:
        return math.prod(len(t) for t in self.trans)

    def contains(self, p: tuple) -> bool:
        h, j = self.strip(p)
        return j == len(self.base) and h == self.ident


class PermGroup:
    """A permutation group given by generators; BSGS built on demand."""

    def __init__(self, degree: int, generators: Iterable = ()):
        if degree < 1:
            raise MalformedInput("degree-0 groups are not supported")
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(_check_degree(degree, list(generators)))

    @cached_property
    def _chain(self) -> _StabChain:
        return _StabChain(self.degree, self.generators)

    @property
    def base(self) -> list[int]:
        return list(self._chain.base)

    @property
    def strong_generators(self) -> list[Permutation]:
        seen = {}
        for level in self._chain.strong:
            for g in level:
                seen.setdefault(g, None)
        return [Permutation._raw(g) for g in seen]

    def transversal(self, level: int) -> dict[int, Permutation]:
        return {p: Permutation._raw(u) for p, u in self._chain.trans[level].items()}

    def order(self) -> int:
        return self._chain.order

    def __len__(self) -> int:
        return self.order()

    def contains(self, p) -> bool:
        if len(p) != self.degree:
            return False
        return self._chain.contains(tuple(p))

    __contains__ = contains

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def orbit(self, point: int) -> list[int]:
        seen = {point}
        queue = [point]
        for p in queue:
            for g in self.generators:
                q = g[p]
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
        return sorted(seen)

    def orbits(self) -> list[list[int]]:
        done = [False] * self.degree
        out = []
        for p in range(self.degree):
            if not done[p]:
                orb = self.orbit(p)
                for q in orb:
                    done[q] = True
                out.append(orb)
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def elements(self, budget: int = ELEMENT_BUDGET) -> list[Permutation]:
        """All elements, in breadth-first order from the identity."""
        if self.order() > budget:
            raise BudgetExceeded(f"group of order {self.order()} exceeds element budget {budget}")
        ident = self.identity()
        seen = {ident}
        out = [ident]
        for x in out:
            for g in self.generators:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    out.append(y)
        return out

    def subgroup(self, generators: Iterable) -> Subgroup:
        return Subgroup(self, tuple(_check_degree(self.degree, list(generators))))

    def is_normal(self, sub: PermGroup) -> bool:
        return all(h.conj(g) in sub for h in sub.generators for g in self.generators)

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators)
        return f"PermGroup(degree={self.degree}, generators=[{gens}])"


@dataclass
class Subgroup:
    """A subgroup of ``parent`` given by generators."""

    parent: PermGroup
    generators: tuple[Permutation, ...]
    group: PermGroup = field(init=False, repr=False)

    def __post_init__(self):
        self.group = PermGroup(self.parent.degree, self.generators)

    @property
    def order(self) -> int:
        return self.group.order()

    @property
    def index(self) -> int:
        return self.parent.order() // self.order

    def __contains__(self, p) -> bool:
        return p in self.group

    def elements(self, budget: int = ELEMENT_BUDGET) -> list[Permutation]:
        return self.group.elements(budget)

    def is_transitive(self) -> bool:
        return self.group.is_transitive()

    def orbits(self) -> list[list[int]]:
        return self.group.orbits()


def as_group(G) -> PermGroup:
    return G.group if isinstance(G, Subgroup) else G


def build_group(degree: int, generators: Iterable) -> PermGroup:
    """Build a group and its stabilizer chain eagerly."""
    G = PermGroup(degree, generators)
    G.order()
    return G


def orbit_with_words(G: PermGroup, point: int) -> dict[int, Permutation]:
    """Map each point of the orbit of ``point`` to an element sending ``point`` there."""
    G = as_group(G)
    if not 0 <= point < G.degree:
        raise MalformedInput(f"point {point} outside degree {G.degree}")
    words = {point: G.identity()}
    queue = [point]
    for p in queue:
        wp = words[p]
        for g in G.generators:
            q = g[p]
            if q not in words:
                words[q] = wp * g
                queue.append(q)
    return words


def find_element_mapping(G: PermGroup, src: Sequence[int], dst: Sequence[int]) -> Permutation | None:
    """An element ``g`` with ``src[i]^g == dst[i]`` for every ``i``, or None."""
    G = as_group(G)
    src, dst = tuple(src), tuple(dst)
    if len(src) != len(dst):
        raise MalformedInput("tuples of unequal length")
    words = {src: G.identity()}
    queue = [src]
    found = G.identity() if src == dst else None
    for t in queue:
        if found is not None:
            break
        wt = words[t]
        for g in G.generators:
            u = tuple(g[x] for x in t)
            if u not in words:
                words[u] = wt * g
                if u == dst:
                    found = words[u]
                    break
                queue.append(u)
    if found is not None:
        assert tuple(found[x] for x in src) == dst
    return found


def tuple_stabilizer(G: PermGroup, points: Sequence[int]) -> Subgroup:
    """Pointwise stabilizer of a tuple, generated by its Schreier generators."""
    G = as_group(G)
    start = tuple(points)
    words = {start: G.identity()}
    queue = [start]
    for t in queue:
        for g in G.generators:
            u = tuple(g[x] for x in t)
            if u not in words:
                words[u] = words[t] * g
                queue.append(u)
    gens = {}
    for t, w in words.items():
        for g in G.generators:
            u = tuple(g[x] for x in t)
            h = w * g * ~words[u]
            if not h.is_identity():
                gens.setdefault(h, None)
    return Subgroup(G, tuple(gens))


def index2_subgroups(G: PermGroup) -> list[Subgroup]:
    """Every subgroup of index 2, each certified by its order."""
    G = as_group(G)
    gens = list(G.generators)
    order = G.order()
    if order % 2:
        return []
    out = []
    r = len(gens)
    for mask in range(1, 1 << r):
        star_i = (mask & -mask).bit_length() - 1
        star = gens[star_i]
        star_inv = ~star
        kgens = []
        for i, g in enumerate(gens):
            if mask >> i & 1:
                kgens.append(star * g)
                kgens.append(g * star_inv)
            else:
                kgens.append(g)
                kgens.append(star * g * star_inv)
        kgens.append(star * star)
        kgens = list(dict.fromkeys(x for x in kgens if not x.is_identity()))
        K = G.subgroup(kgens)
        if K.order * 2 == order:
            out.append(K)
    return out


def conjugate_intersection(L: Subgroup, b: Permutation, budget: int = ELEMENT_BUDGET) -> Subgroup:
    """``L^b ∩ L``, found by filtering the elements of ``L``."""
    elems = L.elements(budget)
    b_inv = ~b
    keep = [x for x in elems if (b * x * b_inv) in L]
    parent = L.parent if isinstance(L, Subgroup) else L
    return Subgroup(parent, tuple(keep))


def core(G: PermGroup, H: Subgroup, budget: int = ELEMENT_BUDGET) -> list[Permutation]:
    """Elements of the core of ``H`` in ``G`` (the largest normal subgroup of ``G`` inside ``H``)."""
    G = as_group(G)
    current = set(H.elements(budget))
    while True:
        nxt = {x for x in current if all(x.conj(g) in current for g in G.generators)}
        if nxt == current:
            return sorted(current)
        current = nxt


def core_is_trivial(G: PermGroup, H: Subgroup, budget: int = ELEMENT_BUDGET) -> bool:
    return len(core(G, H, budget)) == 1


def _small_generating_set(elems: list[Permutation], order: int) -> list[Permutation]:
    degree = len(elems[0])
    chosen: list[Permutation] = []
    current = 1
    by_order = sorted(elems, key=lambda x: (-x.order(), x))
    while current < order:
        best = None
        for x in by_order:
            if chosen and x in PermGroup(degree, chosen):
                continue
            size = PermGroup(degree, chosen + [x]).order()
            if best is None or size > best[0]:
                best = (size, x)
            if size == order:
                break
        chosen.append(best[1])
        current = best[0]
    return chosen


def group_isomorphic_small(A: PermGroup, B: PermGroup, limit: int = 100) -> bool:
    """Exact abstract isomorphism test by searching generator images."""
    A, B = as_group(A), as_group(B)
    if A.order() > limit or B.order() > limit:
        raise BudgetExceeded(f"isomorphism test limited to groups of order {limit}")
    if A.order() != B.order():
        return False
    ea, eb = A.elements(limit), B.elements(limit)

    def order_profile(elems):
        counts: dict[int, int] = {}
        for x in elems:
            counts[x.order()] = counts.get(x.order(), 0) + 1
        return counts

    if order_profile(ea) != order_profile(eb):
        return False
    if A.order() == 1:
        return True
    gens = _small_generating_set(ea, A.order())
    # words: each element of A as (previous element, generator index)
    ida = A.identity()
    tree = {ida: None}
    walk = [ida]
    for x in walk:
        for gi, g in enumerate(gens):
            y = x * g
            if y not in tree:
                tree[y] = (x, gi)
                walk.append(y)
    candidates = [[y for y in eb if y.order() == g.order()] for g in gens]
    idb = B.identity()

    def extend(images):
        phi = {ida: idb}
        for x in walk[1:]:
            prev, gi = tree[x]
            phi[x] = phi[prev] * images[gi]
        if len(set(phi.values())) != len(phi):
            return False
        # relation check: phi(x * g) == phi(x) * phi(g) for all x, g
        return all(phi[x * g] == phi[x] * images[gi] for x in walk for gi, g in enumerate(gens))

    def search(i, images):
        if i == len(gens):
            return extend(images)
        for y in candidates[i]:
            if search(i + 1, images + [y]):
                return True
        return False

    return search(0, [])


def alternating_group(n: int) -> PermGroup:
    """The alternating group on ``n`` points (standard two generators)."""
    if n < 1:
        raise MalformedInput("n must be positive")
    if n < 3:
        return PermGroup(n, [])
    three = Permutation.from_cycles([(0, 1, 2)], n)
    if n == 3:
        return PermGroup(n, [three])
    if n % 2:
        long = Permutation.from_cycles([tuple(range(n))], n)
    else:
        long = Permutation.from_cycles([tuple(range(1, n))], n)
    return PermGroup(n, [three, long])


def symmetric_group(n: int) -> PermGroup:
    if n < 1:
        raise MalformedInput("n must be positive")
    if n == 1:
        return PermGroup(1, [])
    gens = [Permutation.from_cycles([(0, 1)], n)]
    if n > 2:
        gens.append(Permutation.from_cycles([tuple(range(n))], n))
    return PermGroup(n, gens)
