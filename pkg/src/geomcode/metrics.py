"""Tanner-graph code metrics: eigenvalue distance bounds, girth, and the
6-cycle census (closed form cross-checked by enumeration)."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .constructions import IncidenceStructure
from .gf2 import BinaryMatrix
from .srpg import SrpgParams, adjacency_matrix


@dataclass(frozen=True)
class DistanceBounds:
    bit_oriented: Fraction
    parity_oriented: Fraction
    effective: int
    vacuous: bool


@dataclass(frozen=True)
class CycleReport:
    girth: float            # even integer, or math.inf for a forest
    six_cycle_formula: int
    six_cycle_enumerated: int


def tanner_bounds(n: int, w_col: int, w_row: int, a1: int, a2: int) -> DistanceBounds:
    """Bit- and parity-oriented minimum-distance bounds, as exact rationals.

    a1 is the largest eigenvalue of H H^T (assumed simple), a2 the second
    largest distinct one.  Negative raw values are reported, not hidden:
    the effective bound is max(ceil(bit), ceil(parity), 1) and the vacuous
    flag is set when both raw bounds are <= 1.
    """
    if a1 <= a2:
        raise ValueError(f"need a1 > a2, got a1 = {a1}, a2 = {a2}")
    bit = Fraction(n * (2 * w_col - a2), a1 - a2)
    parity = Fraction(2 * n * (2 * w_col + w_row - 2 - a2), w_row * (a1 - a2))
    effective = max(math.ceil(bit), math.ceil(parity), 1)
    return DistanceBounds(bit, parity, effective, vacuous=bit <= 1 and parity <= 1)


def _has_four_cycle(h: BinaryMatrix) -> bool:
    rows = h.rows
    for i in range(len(rows)):
        ri = rows[i]
        for j in range(i):
            if (ri & rows[j]).bit_count() >= 2:
                return True
    return False


def tanner_girth(h: BinaryMatrix) -> float:
    """Length of the shortest Tanner-graph cycle (math.inf for a forest).

    Runs a breadth-first search from every variable node; since every
    cycle alternates between the two sides, this sweep is exact.  A
    pairwise-row scan decides up front whether 4-cycles exist, which fixes
    the earliest possible exit (4 or 6) for the sweep.
    """
    n, m = h.cols, h.nrows
    ht = h.transpose()
    # node ids: variables 0..n-1, checks n..n+m-1
    adj: list[list[int]] = [[] for _ in range(n + m)]
    for j in range(n):
        col = ht.rows[j]
        while col:
            low = col & -col
            i = low.bit_length() - 1
            adj[j].append(n + i)
            adj[n + i].append(j)
            col ^= low

    floor = 4 if _has_four_cycle(h) else 6
    best = math.inf
    dist = [-1] * (n + m)
    parent = [-1] * (n + m)
    for src in range(n):
        if not adj[src]:
            continue
        for node in range(n + m):
            dist[node] = -1
        dist[src] = 0
        parent[src] = -1
        queue = deque([src])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                continue
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    cand = dist[u] + dist[w] + 1
                    if cand < best:
                        best = cand
        if best <= floor:
            return best
    return best


def six_cycles(ic: IncidenceStructure, params: SrpgParams,
               girth: float | None = None) -> CycleReport:
    """6-cycle count: n*s*(s+1)*(lambda-s+1)/6 against direct enumeration.

    The enumeration walks every block B and every point pair {P1,P2} in
    it, counts the common neighbours of the pair outside B (each closes a
    unique hexagon through two further blocks), and divides the grand
    total by 3 because a hexagon contains three point pairs.  Pass a
    precomputed girth to skip the BFS sweep.
    """
    if params.lambda_ is None:
        raise ValueError("six-cycle census needs a verified lambda")
    s, lam, n = params.s, params.lambda_, params.n
    formula_num = n * s * (s + 1) * (lam - s + 1)
    if formula_num % 6 != 0:
        raise ValueError(f"formula value {formula_num}/6 is not an integer")
    formula = formula_num // 6

    a = adjacency_matrix(ic)
    v = ic.v
    adj_bits = [0] * v
    for i in range(v):
        acc = 0
        for j in np.flatnonzero(a[i]):
            acc |= 1 << int(j)
        adj_bits[i] = acc

    ht = ic.matrix.transpose()  # one bitset of points per block
    total = 0
    for col in ht.rows:
        pts = []
        c = col
        while c:
            low = c & -c
            pts.append(low.bit_length() - 1)
            c ^= low
        for x in range(len(pts)):
            bx = adj_bits[pts[x]]
            for y in range(x):
                total += (bx & adj_bits[pts[y]] & ~col).bit_count()
    if total % 3 != 0:
        raise ValueError(f"pair-completion total {total} is not divisible by 3")
    return CycleReport(
        girth=tanner_girth(ic.matrix) if girth is None else girth,
        six_cycle_formula=formula,
        six_cycle_enumerated=total // 3,
    )
