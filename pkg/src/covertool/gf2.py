"""Linear algebra over GF(2) with rows packed into Python ints.

Bit ``j`` of a row is the coefficient of unknown ``j``.  Elimination pivots
on the lowest set bit, so results are deterministic.
"""

from __future__ import annotations


def _low(x: int) -> int:
    return (x & -x).bit_length() - 1


def echelon(rows, rhs=None):
    """Reduced echelon form.

    Returns ``(pivots, rows, rhs)`` where ``pivots[i]`` is the pivot column of
    ``rows[i]``.  When ``rhs`` is given it is reduced alongside; a zero row
    with a nonzero right-hand side signals inconsistency and is kept with
    pivot ``-1``.
    """
    rows = list(rows)
    rhs = list(rhs) if rhs is not None else [0] * len(rows)
    basis: list[int] = []
    brhs: list[int] = []
    pivots: list[int] = []
    for r, b in zip(rows, rhs):
        for p, row, rb in zip(pivots, basis, brhs):
            if p >= 0 and r >> p & 1:
                r ^= row
                b ^= rb
        if r == 0:
            if b:
                pivots.append(-1)
                basis.append(0)
                brhs.append(1)
            continue
        p = _low(r)
        # keep the basis fully reduced in column p
        for i, row in enumerate(basis):
            if row >> p & 1:
                basis[i] ^= r
                brhs[i] ^= b
        pivots.append(p)
        basis.append(r)
        brhs.append(b)
    return pivots, basis, brhs


def rank(rows) -> int:
    pivots, _, _ = echelon(rows)
    return sum(1 for p in pivots if p >= 0)


def nullspace(rows, ncols: int) -> list[int]:
    """Basis of ``{x : row . x = 0 for every row}``."""
    pivots, basis, _ = echelon(rows)
    pivot_rows = {p: r for p, r in zip(pivots, basis) if p >= 0}
    out = []
    for free in range(ncols):
        if free in pivot_rows:
            continue
        x = 1 << free
        for p, r in pivot_rows.items():
            if r >> free & 1:
                x |= 1 << p
        out.append(x)
    return out


def solve(rows, rhs, ncols: int) -> int | None:
    """One solution of ``rows . x = rhs`` (free variables zero), or None."""
    pivots, basis, brhs = echelon(rows, rhs)
    x = 0
    for p, r, b in zip(pivots, basis, brhs):
        if p < 0:
            return None
        if b:
            x |= 1 << p
    return x


def dot(a: int, b: int) -> int:
    return (a & b).bit_count() & 1


def combine(basis: list[int], mask: int) -> int:
    """XOR of the basis vectors selected by the bits of ``mask``."""
    x = 0
    while mask:
        x ^= basis[_low(mask)]
        mask &= mask - 1
    return x


def span(basis: list[int]):
    """Every vector in the span, indexed by the selecting mask ``0 .. 2^k - 1``."""
    for mask in range(1 << len(basis)):
        yield combine(basis, mask)
