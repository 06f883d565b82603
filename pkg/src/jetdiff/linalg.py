"""Exact rank and nullspace of sparse rational matrices.

Rows are sparse maps column -> coefficient.  Each row is scaled to a
primitive integer row on ingestion, then reduced by two-step division-exact
(Bareiss) elimination: at every pivot step all still-active rows are updated
as new = (pivot * row - row[pivot_col] * pivot_row) / previous_pivot, an
exact integer division.  Pivoting picks the smallest absolute entry in the
pivot column (ties broken by row index), which keeps the integer growth of
sparse systems low and makes the whole reduction deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

SparseRow = dict[int, Fraction]


def _to_primitive_int_row(row: SparseRow) -> dict[int, int]:
    if not row:
        return {}
    scale = lcm(*[c.denominator for c in row.values()])
    ints = {j: int(c * scale) for j, c in row.items() if c != 0}
    if not ints:
        return {}
    content = 0
    for v in ints.values():
        content = gcd(content, v)
    return {j: v // content for j, v in ints.items()}


@dataclass(frozen=True)
class Echelon:
    """Result of the forward elimination."""

    ncols: int
    pivot_cols: tuple[int, ...]
    pivot_rows: tuple[dict[int, int], ...]  # integer rows, in pivot order

    @property
    def rank(self) -> int:
        return len(self.pivot_cols)


def row_echelon(rows: list[SparseRow], ncols: int) -> Echelon:
    """Fraction-free forward elimination; returns the pivot skeleton."""
    work = [_to_primitive_int_row(r) for r in rows]
    active = [i for i, r in enumerate(work) if r]
    pivot_cols: list[int] = []
    pivot_rows: list[dict[int, int]] = []
    prev = 1
    for col in range(ncols):
        candidates = [i for i in active if work[i].get(col, 0)]
        if not candidates:
            continue
        piv_idx = min(candidates, key=lambda i: (abs(work[i][col]), i))
        piv_row = work[piv_idx]
        piv_val = piv_row[col]
        active.remove(piv_idx)
        next_active = []
        for i in active:
            row = work[i]
            v = row.get(col, 0)
            if v:
                keys = set(row) | set(piv_row)
                keys.discard(col)
                new = {}
                for j in keys:
                    val = (piv_val * row.get(j, 0) - v * piv_row.get(j, 0)) // prev
                    if val:
                        new[j] = val
            else:
                new = {j: (piv_val * w) // prev for j, w in row.items()}
                new = {j: w for j, w in new.items() if w}
            work[i] = new
            if new:
                next_active.append(i)
        active = next_active
        pivot_cols.append(col)
        pivot_rows.append(piv_row)
        prev = piv_val
    return Echelon(ncols=ncols, pivot_cols=tuple(pivot_cols), pivot_rows=tuple(pivot_rows))


def rank(rows: list[SparseRow], ncols: int) -> int:
    return row_echelon(rows, ncols).rank


def nullspace(rows: list[SparseRow], ncols: int) -> list[list[Fraction]]:
    """Basis of the exact right nullspace.

    One vector per free column f, normalised so that entry f is 1 and the
    entries at the other free columns are 0; pivot entries are obtained by
    exact back-substitution, so every returned v satisfies rows . v = 0
    bit-exactly.
    """
    ech = row_echelon(rows, ncols)
    pivot_set = set(ech.pivot_cols)
    free_cols = [j for j in range(ncols) if j not in pivot_set]
    basis: list[list[Fraction]] = []
    for f in free_cols:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for col, row in zip(reversed(ech.pivot_cols), reversed(ech.pivot_rows)):
            acc = Fraction(0)
            for j, w in row.items():
                if j != col:
                    acc += w * vec[j]
            vec[col] = -acc / row[col]
        basis.append(vec)
    return basis


def matvec(rows: list[SparseRow], vec: list[Fraction]) -> list[Fraction]:
    return [sum((c * vec[j] for j, c in row.items()), Fraction(0)) for row in rows]
