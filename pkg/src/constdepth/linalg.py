"""Exact matrix rank over QQ (fraction-free) or GF(p).

Boundary matrices of simplicial complexes are sparse with entries in
{-1, 0, 1}, so rows are ``dict[col, int]``.  Over the rationals we first
eliminate on unit pivots, which keeps every entry an integer without
division, then finish whatever dense block remains with Bareiss.
"""
from __future__ import annotations

from typing import Iterable, Mapping

SparseRow = dict[int, int]


def bareiss_rank(matrix: list[list[int]]) -> int:
    """Rank of an integer matrix by Bareiss fraction-free elimination."""
    m = [list(r) for r in matrix]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    prev = 1
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        piv = next((r for r in range(rank, nrows) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][c]
        for r in range(rank + 1, nrows):
            rc = m[r][c]
            row_r = m[r]
            row_p = m[rank]
            for j in range(c + 1, ncols):
                # exact by Sylvester's identity
                row_r[j] = (pv * row_r[j] - rc * row_p[j]) // prev
            row_r[c] = 0
        prev = pv
        rank += 1
    return rank


def _rank_qq(rows: list[SparseRow]) -> int:
    rows = [dict(r) for r in rows if r]
    rank = 0
    while rows:
        pivot = None
        for ri, row in enumerate(rows):
            for c, v in row.items():
                if v == 1 or v == -1:
                    pivot = (ri, c, v)
                    break
            if pivot:
                break
        if pivot is None:
            break
        ri, c, v = pivot
        prow = rows.pop(ri)
        rank += 1
        survivors = []
        for row in rows:
            a = row.get(c)
            if a:
                f = a * v  # v = +-1, so a/v == a*v
                for j, pj in prow.items():
                    nv = row.get(j, 0) - f * pj
                    if nv:
                        row[j] = nv
                    else:
                        row.pop(j, None)
            if row:
                survivors.append(row)
        rows = survivors
    if not rows:
        return rank
    cols = sorted(set().union(*rows))
    index = {c: i for i, c in enumerate(cols)}
    dense = [[0] * len(cols) for _ in rows]
    for drow, row in zip(dense, rows):
        for c, v in row.items():
            drow[index[c]] = v
    return rank + bareiss_rank(dense)


def _rank_fp(rows: list[SparseRow], p: int) -> int:
    rows = [{c: v % p for c, v in r.items() if v % p} for r in rows]
    rows = [r for r in rows if r]
    rank = 0
    while rows:
        prow = rows.pop()
        if not prow:
            continue
        c, v = min(prow.items())
        inv = pow(v, p - 2, p)
        rank += 1
        survivors = []
        for row in rows:
            a = row.get(c)
            if a:
                f = a * inv % p
                for j, pj in prow.items():
                    nv = (row.get(j, 0) - f * pj) % p
                    if nv:
                        row[j] = nv
                    else:
                        row.pop(j, None)
            if row:
                survivors.append(row)
        rows = survivors
    return rank


def rank(rows: Iterable[Mapping[int, int]], characteristic: int = 0) -> int:
    """Exact rank of a sparse integer matrix over QQ (0) or GF(p)."""
    rows = [dict(r) for r in rows]
    if characteristic == 0:
        return _rank_qq(rows)
    return _rank_fp(rows, characteristic)


def dense_rank(matrix: list[list[int]], characteristic: int = 0) -> int:
    return rank(({j: v for j, v in enumerate(r) if v} for r in matrix), characteristic)
