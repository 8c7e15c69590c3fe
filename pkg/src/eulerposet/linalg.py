"""Exact linear algebra over the rationals for small dense systems."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence


def _integral_row(row: Sequence[int | Fraction]) -> dict[int, int]:
    vals = {j: Fraction(v) for j, v in enumerate(row) if v}
    scale = math.lcm(*(v.denominator for v in vals.values())) if vals else 1
    return {j: int(v * scale) for j, v in vals.items()}


def rank(rows: Sequence[Sequence[int | Fraction]]) -> int:
    """Rank over Q by sparse fraction-free elimination; rows are kept primitive."""
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        vec = _integral_row(row)
        while vec:
            lead = min(vec)
            piv = pivots.get(lead)
            if piv is None:
                g = math.gcd(*vec.values())
                pivots[lead] = {j: v // g for j, v in vec.items()}
                break
            a, b = piv[lead], vec[lead]
            out = {j: a * v for j, v in vec.items()}
            for j, v in piv.items():
                nv = out.get(j, 0) - b * v
                if nv:
                    out[j] = nv
                else:
                    out.pop(j, None)
            g = math.gcd(*out.values()) if out else 1
            vec = {j: v // g for j, v in out.items()}
    return len(pivots)


def solve(a: Sequence[Sequence[int | Fraction]], b: Sequence[int | Fraction]) -> list[Fraction] | None:
    """A solution of ``a x = b``, or ``None`` when the system is inconsistent.

    Free variables are set to zero; callers that need uniqueness should check
    that ``rank(a)`` equals the number of unknowns.
    """
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    m = [[Fraction(v) for v in a[i]] + [Fraction(b[i])] for i in range(nrows)]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][col]
        m[r] = [v / pv for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [vi - f * vr for vi, vr in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    if any(m[i][ncols] != 0 for i in range(r, nrows)):
        return None
    x = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        x[col] = m[i][ncols]
    return x
