"""Exact linear algebra over the integers for sparse column systems.

`solve_integer_system` decides solvability of sum_j y_j col_j = rhs
with integer y.  Solvable instances return the coefficient vector;
unsolvable ones return a row functional u and a modulus m such that
u . col_j == 0 (mod m) for every column while u . rhs != 0 (mod m),
which any reader can replay with integer dot products.  Modulus 0
stands for exact equality, covering rational inconsistency; a positive
modulus witnesses a divisibility failure.

The elimination is a diagonalization by unimodular row and column
operations, picking the entry of least absolute value as pivot and
reducing with floored division until the pivot's row and column are
clean.  Row operations accumulate into the functional candidates,
column operations into the back-substitution map.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Mapping, Sequence


@dataclass(frozen=True)
class UnsatCertificate:
    """u . col == 0 (mod modulus) for all columns, u . rhs != 0."""

    functional: dict[Hashable, int]
    modulus: int


def _dot(functional: Mapping[Hashable, int], column: Mapping[Hashable, int]) -> int:
    if len(functional) > len(column):
        functional, column = column, functional
    return sum(v * column.get(k, 0) for k, v in functional.items())


def _congruent_zero(value: int, modulus: int) -> bool:
    return value == 0 if modulus == 0 else value % modulus == 0


def check_solution(
    columns: Sequence[Mapping[Hashable, int]],
    rhs: Mapping[Hashable, int],
    coefficients: Sequence[int],
) -> bool:
    if len(coefficients) != len(columns):
        return False
    acc: dict[Hashable, int] = {}
    for y, col in zip(coefficients, columns):
        if not y:
            continue
        for k, v in col.items():
            acc[k] = acc.get(k, 0) + y * v
    for k, v in rhs.items():
        if acc.get(k, 0) != v:
            return False
    return all(v == 0 for k, v in acc.items() if k not in rhs)


def check_unsat_certificate(
    columns: Sequence[Mapping[Hashable, int]],
    rhs: Mapping[Hashable, int],
    certificate: UnsatCertificate,
) -> bool:
    u, m = certificate.functional, certificate.modulus
    if m < 0:
        return False
    for col in columns:
        if not _congruent_zero(_dot(u, col), m):
            return False
    return not _congruent_zero(_dot(u, rhs), m)


def solve_integer_system(
    columns: Sequence[Mapping[Hashable, int]],
    rhs: Mapping[Hashable, int],
) -> list[int] | UnsatCertificate:
    """Solve sum_j y_j col_j = rhs over the integers.

    Row keys may be any hashable values; the row order is fixed by
    first appearance in rhs, then in the columns, so identical input
    produces an identical certificate.
    """
    order: dict[Hashable, int] = {}
    for k in rhs:
        order.setdefault(k, len(order))
    for col in columns:
        for k in col:
            order.setdefault(k, len(order))
    keys = list(order)
    nrows, ncols = len(keys), len(columns)

    rows: dict[int, dict[int, int]] = {i: {} for i in range(nrows)}
    colrows: dict[int, set[int]] = {j: set() for j in range(ncols)}
    for j, col in enumerate(columns):
        for k, v in col.items():
            if v:
                i = order[k]
                rows[i][j] = v
                colrows[j].add(i)
    b = [0] * nrows
    for k, v in rhs.items():
        b[order[k]] = v
    # row i of the cumulated unimodular row transform, sparse over
    # original row indices
    U: dict[int, dict[int, int]] = {i: {i: 1} for i in range(nrows)}
    # column j of the cumulated column transform: original index -> coeff
    V: list[dict[int, int]] = [{j: 1} for j in range(ncols)]

    active_rows = set(range(nrows))
    active_cols = set(range(ncols))
    pivots: list[tuple[int, int]] = []

    def write(i: int, j: int, v: int) -> None:
        if v:
            rows[i][j] = v
            colrows[j].add(i)
        else:
            rows[i].pop(j, None)
            colrows[j].discard(i)

    def row_op(target: int, source: int, q: int) -> None:
        # row target -= q * row source
        for j, v in list(rows[source].items()):
            write(target, j, rows[target].get(j, 0) - q * v)
        b[target] -= q * b[source]
        ut, us = U[target], U[source]
        for k, v in us.items():
            nv = ut.get(k, 0) - q * v
            if nv:
                ut[k] = nv
            else:
                ut.pop(k, None)

    def col_op(target: int, source: int, q: int) -> None:
        # column target -= q * column source
        for i in sorted(colrows[source]):
            write(i, target, rows[i].get(target, 0) - q * rows[i][source])
        vt, vs = V[target], V[source]
        for k, v in vs.items():
            nv = vt.get(k, 0) - q * v
            if nv:
                vt[k] = nv
            else:
                vt.pop(k, None)

    def find_pivot() -> tuple[int, int] | None:
        best = None
        best_abs = 0
        for i in sorted(active_rows):
            for j in sorted(rows[i]):
                if j not in active_cols:
                    continue
                a = abs(rows[i][j])
                if best is None or a < best_abs:
                    best, best_abs = (i, j), a
                    if a == 1:
                        return best
        return best

    while True:
        found = find_pivot()
        if found is None:
            break
        i, j = found
        d = rows[i][j]
        off_col = [r for r in sorted(colrows[j]) if r != i and r in active_rows]
        if off_col:
            for r in off_col:
                q = rows[r][j] // d
                if q:
                    row_op(r, i, q)
            continue
        off_row = [c for c in sorted(rows[i]) if c != j and c in active_cols]
        if off_row:
            for c in off_row:
                q = rows[i][c] // d
                if q:
                    col_op(c, j, q)
            continue
        pivots.append((i, j))
        active_rows.discard(i)
        active_cols.discard(j)

    for i in sorted(active_rows):
        if b[i]:
            return UnsatCertificate({keys[k]: v for k, v in sorted(U[i].items())}, 0)
    for i, j in pivots:
        d = rows[i][j]
        if b[i] % d:
            return UnsatCertificate(
                {keys[k]: v for k, v in sorted(U[i].items())}, abs(d)
            )

    y = [0] * ncols
    for i, j in pivots:
        x = b[i] // rows[i][j]
        if x:
            for orig, coeff in V[j].items():
                y[orig] += coeff * x
    assert check_solution(columns, rhs, y)
    return y
