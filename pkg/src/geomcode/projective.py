"""Points, lines and quadrics of PG(2,q) and PG(3,q) over odd fields.

Coordinates are field element codes (see :mod:`geomcode.fields`).  Points
are normalized so the first nonzero coordinate is 1; lines of PG(3,q) are
stored as 2x4 matrices in reduced row echelon form, the unique
representative of their row space; quadrics are symmetric matrices scaled
so the first nonzero entry in row-major order is 1.
"""

from __future__ import annotations

import itertools

from .fields import Field

Row = tuple[int, ...]
Matrix = tuple[Row, ...]


def rref(field: Field, rows: list[list[int]]) -> tuple[list[list[int]], int]:
    """Reduced row echelon form over `field`; returns (rref_rows, rank)."""
    rows = [list(r) for r in rows]
    nrows, ncols = len(rows), len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = field.inv(rows[rank][col])
        rows[rank] = [field.mul(inv, x) for x in rows[rank]]
        for r in range(nrows):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [field.sub(x, field.mul(f, y)) for x, y in zip(rows[r], rows[rank])]
        rank += 1
        if rank == nrows:
            break
    return rows, rank


def mat_rank(field: Field, rows: list[list[int]]) -> int:
    return rref(field, rows)[1]


def mat_mul(field: Field, a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    out = []
    for row in a:
        new = []
        for j in range(len(b[0])):
            acc = 0
            for x, brow in zip(row, b):
                if x:
                    acc = field.add(acc, field.mul(x, brow[j]))
            new.append(acc)
        out.append(new)
    return out


def det3(field: Field, m: list[list[int]]) -> int:
    """Determinant of a 3x3 matrix by cofactor expansion."""
    f = field
    a, b, c = m[0]
    d, e, g = m[1]
    h, i, j = m[2]
    t1 = f.mul(a, f.sub(f.mul(e, j), f.mul(g, i)))
    t2 = f.mul(b, f.sub(f.mul(d, j), f.mul(g, h)))
    t3 = f.mul(c, f.sub(f.mul(d, i), f.mul(e, h)))
    return f.add(f.sub(t1, t2), t3)


class ProjectivePoint:
    """Normalized homogeneous point of PG(m,q), m = len(coords) - 1."""

    __slots__ = ("field", "coords")

    def __init__(self, field: Field, coords: tuple[int, ...]):
        self.field = field
        self.coords = coords

    @property
    def m(self) -> int:
        return len(self.coords) - 1

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ProjectivePoint)
            and other.field == self.field
            and other.coords == self.coords
        )

    def __hash__(self) -> int:
        return hash(self.coords)

    def __lt__(self, other: "ProjectivePoint") -> bool:
        return self.coords < other.coords

    def __repr__(self) -> str:
        return f"P{self.coords}"


def normalize_point(field: Field, raw: tuple[int, ...] | list[int]) -> ProjectivePoint:
    """Scale a nonzero coordinate vector so its first nonzero entry is 1."""
    coords = tuple(raw)
    lead = next((c for c in coords if c != 0), None)
    if lead is None:
        raise ValueError("zero vector does not define a projective point")
    if lead != field.one:
        s = field.inv(lead)
        coords = tuple(field.mul(s, c) for c in coords)
    return ProjectivePoint(field, coords)


def enumerate_points(field: Field, m: int) -> list[ProjectivePoint]:
    """All (q^{m+1}-1)/(q-1) points of PG(m,q) in lexicographic order."""
    if m not in (2, 3):
        raise ValueError(f"unsupported projective dimension m = {m}")
    one = field.one
    pts = []
    for coords in itertools.product(range(field.q), repeat=m + 1):
        lead = next((c for c in coords if c != 0), None)
        if lead == one:
            pts.append(ProjectivePoint(field, coords))
    return pts


class Quadric:
    """Quadric of PG(m,q) as a symmetric matrix, scaled so the first
    nonzero entry (row-major) is 1; proportional matrices identify."""

    __slots__ = ("field", "entries")

    def __init__(self, field: Field, entries: list[list[int]] | Matrix):
        rows = [tuple(r) for r in entries]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("quadric matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("quadric matrix must be symmetric")
        flat = [x for r in rows for x in r]
        lead = next((x for x in flat if x != 0), None)
        if lead is None:
            raise ValueError("zero matrix does not define a quadric")
        if lead != field.one:
            s = field.inv(lead)
            rows = [tuple(field.mul(s, x) for x in r) for r in rows]
        self.field = field
        self.entries = tuple(rows)

    @property
    def m(self) -> int:
        return len(self.entries) - 1

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Quadric)
            and other.field == self.field
            and other.entries == self.entries
        )

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"Quadric{self.entries}"


def quadric_contains(quadric: Quadric, point: ProjectivePoint) -> bool:
    """True iff X A X^T = 0 for the point's coordinate vector X."""
    if point.m != quadric.m:
        raise ValueError(f"dimension mismatch: point in PG({point.m}), quadric in PG({quadric.m})")
    f = quadric.field
    x = point.coords
    acc = 0
    for i, xi in enumerate(x):
        if xi == 0:
            continue
        row = quadric.entries[i]
        s = 0
        for xj, aij in zip(x, row):
            if xj and aij:
                s = f.add(s, f.mul(aij, xj))
        acc = f.add(acc, f.mul(xi, s))
    return acc == 0


def collinear(p1: ProjectivePoint, p2: ProjectivePoint, p3: ProjectivePoint) -> bool:
    """True iff three points of PG(2,q) lie on a common line."""
    if p1.m != 2 or p2.m != 2 or p3.m != 2:
        raise ValueError("collinearity is defined for points of PG(2,q)")
    field = p1.field
    return det3(field, [list(p1.coords), list(p2.coords), list(p3.coords)]) == 0


class LineMatrix:
    """Line of PG(3,q), stored as the unique RREF basis of its row space."""

    __slots__ = ("field", "rows")

    def __init__(self, field: Field, rows: list[list[int]] | Matrix):
        rows = [list(r) for r in rows]
        if len(rows) != 2 or any(len(r) != 4 for r in rows):
            raise ValueError("a line of PG(3,q) needs a 2x4 matrix")
        reduced, rank = rref(field, rows)
        if rank != 2:
            raise ValueError("line matrix must have rank 2")
        self.field = field
        self.rows = tuple(tuple(r) for r in reduced)

    def points(self) -> list[ProjectivePoint]:
        """The q+1 points on the line."""
        f = self.field
        r1, r2 = self.rows
        pts = [normalize_point(f, r1)]
        for u in range(f.q):
            pts.append(normalize_point(f, tuple(f.add(f.mul(u, a), b) for a, b in zip(r1, r2))))
        return pts

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LineMatrix)
            and other.field == self.field
            and other.rows == self.rows
        )

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"Line{self.rows}"


def lines_skew(l1: LineMatrix, l2: LineMatrix) -> bool:
    """True iff the two lines span PG(3,q), i.e. the 4x4 stack has rank 4."""
    field = l1.field
    stacked = [list(r) for r in l1.rows] + [list(r) for r in l2.rows]
    return mat_rank(field, stacked) == 4


def line_in_quadric(line: LineMatrix, quadric: Quadric) -> bool:
    """True iff every point of the line lies on the quadric.

    In odd characteristic this is equivalent to L H L^T being the 2x2 zero
    matrix, which is what gets evaluated here.
    """
    if quadric.m != 3:
        raise ValueError("line containment is defined against quadrics of PG(3,q)")
    f = line.field
    h = [list(r) for r in quadric.entries]
    l = [list(r) for r in line.rows]
    lh = mat_mul(f, l, h)
    lhlt = mat_mul(f, lh, [[r[i] for r in l] for i in range(4)])
    return all(x == 0 for row in lhlt for x in row)
