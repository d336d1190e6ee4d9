"""Double description method over the integers.

Everything polyhedral in the package reduces to one primitive: the extreme
rays of a pointed cone ``{x : a . x <= 0 for every row a}`` with integer rows.
Facets of a point set and vertices of an inequality system are both read
off from it.
"""
from __future__ import annotations

import math
from typing import Sequence

from .exact import bareiss_det, primitive


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def _independent_rows(rows: Sequence[Sequence[int]], m: int) -> list[int]:
    """Greedy indices of m linearly independent rows (fraction-free)."""
    chosen: list[int] = []
    basis: list[tuple[list[int], int]] = []  # (reduced row, pivot column)
    for idx, row in enumerate(rows):
        v = list(row)
        for b, p in basis:
            if v[p]:
                bp, vp = b[p], v[p]
                v = [x * bp - y * vp for x, y in zip(v, b)]
        piv = next((c for c, x in enumerate(v) if x), None)
        if piv is None:
            continue
        g = 0
        for x in v:
            g = math.gcd(g, x)
        basis.append(([x // g for x in v], piv))
        chosen.append(idx)
        if len(chosen) == m:
            break
    return chosen


def _inverse_columns(a: list[list[int]]) -> list[list[int]]:
    """Integer multiples of the columns of ``a^{-1}``, each scaled positively.

    These are the adjugate columns times sign(det a), by cofactors.
    """
    n = len(a)
    if n == 1:
        return [[1 if a[0][0] > 0 else -1]]
    sign = 1 if bareiss_det(a) > 0 else -1
    cols = []
    for j in range(n):
        col = []
        for i in range(n):
            minor = [r[:i] + r[i + 1:] for k, r in enumerate(a) if k != j]
            col.append(sign * (-1) ** (i + j) * bareiss_det(minor))
        cols.append(col)
    return cols


def extreme_rays(rows: Sequence[Sequence[int]]) -> list[tuple[tuple[int, ...], int]]:
    """Extreme rays of ``{x : row . x <= 0}``.

    Returns ``(ray, mask)`` pairs; ``mask`` has bit ``i`` set when row ``i`` is
    tight on the ray.  Rays are primitive integer vectors.  Raises ValueError
    if the cone is not pointed (rows do not span).
    """
    rows = [tuple(int(x) for x in r) for r in rows]
    if not rows:
        raise ValueError("no constraints")
    m = len(rows[0])
    init = _independent_rows(rows, m)
    if len(init) < m:
        raise ValueError("cone is not pointed")
    a0 = [list(rows[i]) for i in init]
    inv_cols = _inverse_columns(a0)
    # a0 @ col_j = c e_j with c > 0, so -col_j is tight on every other initial row
    rays: list[tuple[tuple[int, ...], int]] = []
    for j in range(m):
        r = primitive([-x for x in inv_cols[j]])
        mask = 0
        for k, i in enumerate(init):
            if k != j:
                mask |= 1 << i
        rays.append((r, mask))

    rest = [i for i in range(len(rows)) if i not in set(init)]
    for i in rest:
        a = rows[i]
        bit = 1 << i
        pos, neg, zero = [], [], []
        for r, mask in rays:
            s = _dot(a, r)
            if s > 0:
                pos.append((r, mask, s))
            elif s < 0:
                neg.append((r, mask, s))
            else:
                zero.append((r, mask | bit))
        if not pos:
            rays = [(r, mk) for r, mk, _ in neg] + zero
            continue
        masks = [mk for _, mk in rays]
        new = []
        for rp, mp, sp in pos:
            for rq, mq, sq in neg:
                common = mp & mq
                if common.bit_count() < m - 2:
                    continue
                # adjacent iff no third ray is tight on all of ``common``
                hits = 0
                for mk in masks:
                    if mk & common == common:
                        hits += 1
                        if hits > 2:
                            break
                if hits > 2:
                    continue
                v = primitive([sp * y - sq * x for x, y in zip(rp, rq)])
                new.append((v, common | bit))
        rays = [(r, mk) for r, mk, _ in neg] + zero + new
    return rays
