"""Deliberately naive reference implementations used only by the tests.

Nothing here imports the engine's algorithms: powers are expanded by brute
force, rank uses Fraction elimination, and depth zero is decided by
enumerating socle candidates inside the exponent box.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement, product


def divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def naive_minimal(vectors):
    vs = sorted(set(map(tuple, vectors)))
    return sorted(v for v in vs if not any(w != v and divides(w, v) for w in vs))


def naive_power(gens, k):
    out = []
    for combo in combinations_with_replacement(range(len(gens)), k):
        out.append(tuple(sum(gens[i][v] for i in combo) for v in range(len(gens[0]))))
    return naive_minimal(out)


def in_ideal(gens, u):
    return any(divides(g, u) for g in gens)


def has_socle(gens):
    """True iff depth S/I = 0, i.e. some u not in I has x_i u in I for all i."""
    n = len(gens[0])
    box = [max(g[v] for g in gens) for v in range(n)]
    for u in product(*(range(b + 1) for b in box)):
        if in_ideal(gens, u):
            continue
        ok = True
        for v in range(n):
            w = list(u)
            w[v] += 1
            if not in_ideal(gens, w):
                ok = False
                break
        if ok:
            return True
    return False


def fraction_rank(rows):
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        pivot = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def mod_rank(rows, p):
    m = [[x % p for x in r] for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        pivot = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = pow(m[rank][c], p - 2, p)
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c] * inv % p
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank
