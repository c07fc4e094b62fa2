"""Exact Farkas-style witnesses for linear consequences of a region.

A region is a list of constraints ``c . x >= 0`` or ``c . x > 0``.  A witness for
a target form ``t`` is a map ``{constraint index: weight}`` with nonnegative
weights such that ``sum(w_r c_r) == t`` coefficient by coefficient.  If some
strict constraint carries positive weight the witness proves ``t . x > 0``;
otherwise only ``t . x >= 0``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

Form = tuple[Fraction, ...]


def combine(forms: Sequence[Sequence[Fraction]], weights: dict[int, Fraction]) -> Form:
    width = len(forms[0])
    out = [Fraction(0)] * width
    for r, w in weights.items():
        for col in range(width):
            out[col] += w * forms[r][col]
    return tuple(out)


def _solve(columns: list[Sequence[Fraction]], target: Sequence[Fraction]) -> Optional[list[Fraction]]:
    """Solve sum(y_k columns[k]) == target exactly; None if inconsistent.

    Columns are assumed linearly independent.
    """
    rows = len(target)
    k = len(columns)
    aug = [[Fraction(columns[c][r]) for c in range(k)] + [Fraction(target[r])] for r in range(rows)]
    pivot_row = 0
    for c in range(k):
        p = next((r for r in range(pivot_row, rows) if aug[r][c] != 0), None)
        if p is None:
            return None
        aug[pivot_row], aug[p] = aug[p], aug[pivot_row]
        pv = aug[pivot_row][c]
        aug[pivot_row] = [x / pv for x in aug[pivot_row]]
        for r in range(rows):
            if r != pivot_row and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[pivot_row])]
        pivot_row += 1
    if any(aug[r][k] != 0 for r in range(pivot_row, rows)):
        return None
    return [aug[i][k] for i in range(k)]


def _rank(vectors: list[Sequence[Fraction]]) -> int:
    m = [list(map(Fraction, v)) for v in vectors]
    rank = 0
    width = len(m[0]) if m else 0
    for c in range(width):
        p = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if p is None:
            continue
        m[rank], m[p] = m[p], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def find_witness(forms: Sequence[Sequence[Fraction]], strict: Sequence[bool],
                 target: Sequence[Fraction], need_strict: bool) -> Optional[dict[int, Fraction]]:
    """Search basic nonnegative solutions; prefer ones with small support.

    Returns None when no basic solution meets the requirement.
    """
    target = tuple(Fraction(t) for t in target)
    if not any(target):
        return None if need_strict else {}
    idx = range(len(forms))
    for size in range(1, len(forms) + 1):
        for support in combinations(idx, size):
            cols = [forms[r] for r in support]
            if _rank(cols) < size:
                continue
            y = _solve(cols, target)
            if y is None or any(w < 0 for w in y):
                continue
            weights = {r: w for r, w in zip(support, y) if w != 0}
            if need_strict and not any(strict[r] for r in weights):
                continue
            return weights
    return None


def check_witness(forms: Sequence[Sequence[Fraction]], strict: Sequence[bool],
                  target: Sequence[Fraction], weights: dict[int, Fraction],
                  need_strict: bool) -> tuple[bool, str]:
    if any(w < 0 for w in weights.values()):
        return False, "negative weight"
    if any(not 0 <= r < len(forms) for r in weights):
        return False, "unknown constraint index"
    if combine(forms, weights) != tuple(Fraction(t) for t in target):
        return False, "combination does not reproduce target"
    if need_strict and not any(strict[r] and w > 0 for r, w in weights.items()):
        return False, "no weight on a strict constraint"
    return True, ""
