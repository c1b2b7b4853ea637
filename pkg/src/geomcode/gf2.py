"""Bit-packed GF(2) matrices, elimination rank, and closed-form rank
prediction for Gram matrices of strongly regular point graphs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:  # pragma: no cover
    from .srpg import SrgSpectrum


class BinaryMatrix:
    """Dense GF(2) matrix; each row is a Python int bitset (bit j = column j)."""

    __slots__ = ("rows", "cols")

    def __init__(self, rows: list[int], cols: int):
        if cols < 1 or not rows:
            raise ValueError("matrix must have at least one row and one column")
        limit = 1 << cols
        for r in rows:
            if not 0 <= r < limit:
                raise ValueError("row has bits set beyond the declared column count")
        self.rows = list(rows)
        self.cols = cols

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BinaryMatrix":
        return cls([0] * nrows, ncols)

    @classmethod
    def from_bits(cls, bit_rows: Iterable[Iterable[int]]) -> "BinaryMatrix":
        rows = []
        cols = None
        for bits in bit_rows:
            bits = list(bits)
            if cols is None:
                cols = len(bits)
            elif len(bits) != cols:
                raise ValueError("ragged rows")
            acc = 0
            for j, b in enumerate(bits):
                if b:
                    acc |= 1 << j
            rows.append(acc)
        if cols is None:
            raise ValueError("empty matrix")
        return cls(rows, cols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def get(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def set(self, i: int, j: int) -> None:
        self.rows[i] |= 1 << j

    def row_weight(self, i: int) -> int:
        return self.rows[i].bit_count()

    def row_weights(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def column_weights(self) -> list[int]:
        w = [0] * self.cols
        for r in self.rows:
            while r:
                low = r & -r
                w[low.bit_length() - 1] += 1
                r ^= low
        return w

    def transpose(self) -> "BinaryMatrix":
        cols = [0] * self.cols
        for i, r in enumerate(self.rows):
            bit = 1 << i
            while r:
                low = r & -r
                cols[low.bit_length() - 1] |= bit
                r ^= low
        return BinaryMatrix(cols, self.nrows)

    def to_numpy(self) -> np.ndarray:
        out = np.zeros((self.nrows, self.cols), dtype=np.uint8)
        for i, r in enumerate(self.rows):
            while r:
                low = r & -r
                out[i, low.bit_length() - 1] = 1
                r ^= low
        return out

    def copy(self) -> "BinaryMatrix":
        return BinaryMatrix(list(self.rows), self.cols)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BinaryMatrix)
            and other.cols == self.cols
            and other.rows == self.rows
        )

    def __repr__(self) -> str:
        return f"BinaryMatrix({self.nrows}x{self.cols})"


def rank2(m: BinaryMatrix) -> int:
    """GF(2) rank by forward elimination; pivots on the highest set bit."""
    pivots: dict[int, int] = {}
    rank = 0
    for row in m.rows:
        cur = row
        while cur:
            h = cur.bit_length() - 1
            piv = pivots.get(h)
            if piv is None:
                pivots[h] = cur
                rank += 1
                break
            cur ^= piv
    return rank


def gram2(m: BinaryMatrix) -> BinaryMatrix:
    """M M^T reduced mod 2 (v x v for a v-row matrix)."""
    v = m.nrows
    out = [0] * v
    for i in range(v):
        ri = m.rows[i]
        acc = (ri.bit_count() & 1) << i
        for j in range(i):
            if (ri & m.rows[j]).bit_count() & 1:
                acc |= 1 << j
                out[j] |= 1 << i
        out[i] |= acc
    return BinaryMatrix(out, v)


def gram_counts(m: BinaryMatrix) -> np.ndarray:
    """M M^T over the integers, as a v x v numpy array."""
    v = m.nrows
    out = np.zeros((v, v), dtype=np.int64)
    for i in range(v):
        ri = m.rows[i]
        out[i, i] = ri.bit_count()
        for j in range(i):
            c = (ri & m.rows[j]).bit_count()
            out[i, j] = c
            out[j, i] = c
    return out


@dataclass(frozen=True)
class RankPrediction:
    kind: str        # "exact" | "upper-bound"
    value: int
    case_tag: str


def brouwer_predict(spectrum: "SrgSpectrum") -> RankPrediction:
    """Predict rank_2(M M^T) from the theta eigenvalue parities.

    Uses Brouwer's p-rank classification for N = A + cI at p = 2 with
    c = t + 1, where e = mu because the J coefficient is zero.
    """
    t0, t1, t2 = spectrum.theta0 & 1, spectrum.theta1 & 1, spectrum.theta2 & 1
    v, f1, f2, mu = spectrum.v, spectrum.f1, spectrum.f2, spectrum.mu
    if t1 == 1 and t2 == 1:
        if t0 == 1:
            return RankPrediction("exact", v, "all-theta-odd")
        return RankPrediction("exact", v - 1, "theta0-even-theta12-odd")
    if t1 == 0 and t2 == 0:
        return RankPrediction("upper-bound", min(f1, f2) + 1, "theta1-theta2-even")
    # exactly one of theta1, theta2 is even
    f_even, f_odd, tag = (f1, f2, "theta1") if t1 == 0 else (f2, f1, "theta2")
    if t0 == 1:
        return RankPrediction("exact", v - f_even, f"{tag}-even-theta0-odd")
    if mu % 2 == 0:
        return RankPrediction("exact", f_odd, f"{tag}-even-theta0-even-mu-even")
    return RankPrediction("exact", f_odd + 1, f"{tag}-even-theta0-even-mu-odd")


def dimension_and_rate(h: BinaryMatrix) -> tuple[int, float]:
    """Code dimension n - rank_2(H) and rate for parity-check matrix H."""
    dim = h.cols - rank2(h)
    return dim, dim / h.cols
