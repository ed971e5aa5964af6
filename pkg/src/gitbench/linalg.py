"""Exact Gaussian elimination over any field whose elements support + - * /.

Rows are sparse ``dict`` maps column -> value.  Used for graded-piece
dimensions (rank) and the small solves in the divisor code.
"""
from __future__ import annotations

from typing import Hashable, Iterable, Sequence

from .unipoly import is_zero


def echelon(rows: Iterable[dict]) -> dict[Hashable, dict]:
    """Reduce rows to echelon form; returns ``{pivot_column: row}``.

    Pivot columns are chosen by the natural sort order of the keys so the
    result is deterministic.
    """
    pivots: dict[Hashable, dict] = {}
    for row in rows:
        r = {k: v for k, v in row.items() if not is_zero(v)}
        while r:
            col = min(r)
            if col not in pivots:
                inv = 1 / r[col]
                pivots[col] = {k: v * inv for k, v in r.items()}
                break
            prow = pivots[col]
            factor = r[col]
            for k, v in prow.items():
                nv = r.get(k, 0) - factor * v
                if is_zero(nv):
                    r.pop(k, None)
                else:
                    r[k] = nv
    return pivots


def rank(rows: Iterable[dict]) -> int:
    return len(echelon(rows))


def in_span(vec: dict, rows: Sequence[dict]) -> bool:
    return rank(list(rows) + [vec]) == rank(rows)


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> list:
    """Solve a square nonsingular system exactly; raises ``ValueError`` if singular."""
    n = len(matrix)
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not is_zero(aug[r][col])), None)
        if piv is None:
            raise ValueError("singular system")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and not is_zero(aug[r][col]):
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list]:
    """Basis of the right kernel of a dense matrix, one vector per free column."""
    piv = echelon([dict(enumerate(r)) for r in rows])
    # back-substitute so every pivot row is zero in the other pivot columns
    order = sorted(piv, reverse=True)
    for col in order:
        for other in order:
            if other < col and col in piv[other]:
                f = piv[other][col]
                merged = dict(piv[other])
                for k, v in piv[col].items():
                    nv = merged.get(k, 0) - f * v
                    if is_zero(nv):
                        merged.pop(k, None)
                    else:
                        merged[k] = nv
                piv[other] = merged
    basis = []
    for free in (c for c in range(ncols) if c not in piv):
        vec = [0] * ncols
        vec[free] = 1
        for col, row in piv.items():
            vec[col] = -row.get(free, 0)
        basis.append(vec)
    return basis
