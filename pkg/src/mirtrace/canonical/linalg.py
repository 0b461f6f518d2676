"""Dense exact matrices over Q."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from ..exactnum import format_rational, parse_rational
from .poly import RationalPoly


class RationalMatrix:
    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable]):
        data = tuple(tuple(parse_rational(x) for x in row) for row in rows)
        if not data or not data[0]:
            raise ValueError("matrix dimensions must be >= 1")
        if len({len(r) for r in data}) != 1:
            raise ValueError("ragged matrix")
        self.rows = data

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "RationalMatrix":
        return cls([[0] * (n if m is None else m) for _ in range(n)])

    @classmethod
    def diag(cls, entries: Sequence) -> "RationalMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def block_diag(cls, blocks: Sequence["RationalMatrix"]) -> "RationalMatrix":
        n = sum(b.nrows for b in blocks)
        out = [[Fraction(0)] * n for _ in range(n)]
        offset = 0
        for b in blocks:
            for i, row in enumerate(b.rows):
                for j, x in enumerate(row):
                    out[offset + i][offset + j] = x
            offset += b.nrows
        return cls(out)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "RationalMatrix":
        return cls([[col[i] for col in columns] for i in range(len(columns[0]))])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def column(self, j: int) -> list[Fraction]:
        return [row[j] for row in self.rows]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(zip(*self.rows))

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return RationalMatrix([[-a for a in r] for r in self.rows])

    def scale(self, c) -> "RationalMatrix":
        c = parse_rational(c)
        return RationalMatrix([[c * a for a in r] for r in self.rows])

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows))
        return RationalMatrix([[sum((a * b for a, b in zip(r, c) if a), Fraction(0)) for c in cols]
                               for r in self.rows])

    def apply(self, v: Sequence[Fraction]) -> list[Fraction]:
        """Matrix times column vector."""
        return [sum((a * b for a, b in zip(r, v) if a), Fraction(0)) for r in self.rows]

    def rapply(self, v: Sequence[Fraction]) -> list[Fraction]:
        """Row vector times matrix."""
        return [sum((v[i] * self.rows[i][j] for i in range(self.nrows) if v[i]), Fraction(0))
                for j in range(self.ncols)]

    def __pow__(self, k: int) -> "RationalMatrix":
        result = RationalMatrix.identity(self.nrows)
        for _ in range(k):
            result = result @ self
        return result

    # -- elimination --------------------------------------------------
    def _echelon(self) -> tuple[list[list[Fraction]], int, Fraction]:
        a = [list(r) for r in self.rows]
        n, m = self.nrows, self.ncols
        rank = 0
        det = Fraction(1)
        for col in range(m):
            pivot = next((r for r in range(rank, n) if a[r][col]), None)
            if pivot is None:
                det = Fraction(0)
                continue
            if pivot != rank:
                a[rank], a[pivot] = a[pivot], a[rank]
                det = -det
            piv = a[rank][col]
            det *= piv
            for r in range(rank + 1, n):
                if a[r][col]:
                    f = a[r][col] / piv
                    a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
            rank += 1
            if rank == n:
                break
        return a, rank, det

    def rank(self) -> int:
        return self._echelon()[1]

    def det(self) -> Fraction:
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        _, rank, det = self._echelon()
        return det if rank == self.nrows else Fraction(0)

    def inverse(self) -> "RationalMatrix":
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if a[r][col]), None)
            if pivot is None:
                raise ZeroDivisionError("matrix is singular")
            a[col], a[pivot] = a[pivot], a[col]
            inv = 1 / a[col][col]
            a[col] = [x * inv for x in a[col]]
            for r in range(n):
                if r != col and a[r][col]:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        return RationalMatrix([row[n:] for row in a])

    def conjugate_by(self, g: "RationalMatrix") -> "RationalMatrix":
        """g^{-1} X g (the right adjoint action)."""
        return g.inverse() @ self @ g

    # -- comparison / output -------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"RationalMatrix({self.to_json()})"

    def __str__(self):
        cells = [[format_rational(x) for x in r] for r in self.rows]
        width = max(len(c) for r in cells for c in r)
        return "\n".join("[" + " ".join(c.rjust(width) for c in r) + "]" for r in cells)

    def to_json(self) -> list[list[str]]:
        return [[format_rational(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, data) -> "RationalMatrix":
        return cls(data)


def companion(p: RationalPoly) -> RationalMatrix:
    """First row a_1 ... a_n, ones on the subdiagonal, for p = t^n - a_1 t^{n-1} - ... - a_n."""
    if p.degree < 1:
        raise ValueError("companion matrix needs degree >= 1")
    if not p.is_monic():
        raise ValueError("companion matrix needs a monic polynomial")
    n = p.degree
    a = [-p.coeffs[n - i] for i in range(1, n + 1)]
    rows = [a]
    for i in range(1, n):
        rows.append([1 if j == i - 1 else 0 for j in range(n)])
    return RationalMatrix(rows)


def char_poly(x: RationalMatrix) -> RationalPoly:
    """det(tI - X) via reduction to upper Hessenberg form."""
    if not x.is_square():
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = x.nrows
    h = [list(r) for r in x.rows]
    for col in range(n - 2):
        pivot = next((r for r in range(col + 1, n) if h[r][col]), None)
        if pivot is None:
            continue
        if pivot != col + 1:
            h[col + 1], h[pivot] = h[pivot], h[col + 1]
            for row in h:
                row[col + 1], row[pivot] = row[pivot], row[col + 1]
        piv = h[col + 1][col]
        for r in range(col + 2, n):
            if h[r][col]:
                f = h[r][col] / piv
                # row_r -= f row_{col+1}; then column_{col+1} += f column_r
                h[r] = [a - f * b for a, b in zip(h[r], h[col + 1])]
                for row in h:
                    row[col + 1] += f * row[r]
    # p_k = (t - h_kk) p_{k-1} - sum_i h_ik (prod_{j=i+1..k} h_{j,j-1}) p_{i-1}
    polys = [RationalPoly([1])]
    for k in range(n):
        pk = RationalPoly([-h[k][k], 1]) * polys[k]
        prod = Fraction(1)
        for i in range(k - 1, -1, -1):
            prod *= h[i + 1][i]
            if not prod:
                break
            if h[i][k]:
                pk = pk - polys[i] * (h[i][k] * prod)
        polys.append(pk)
    return polys[n]


def char_poly_faddeev(x: RationalMatrix) -> RationalPoly:
    """Faddeev-LeVerrier recursion; an independent route to det(tI - X)."""
    n = x.nrows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = RationalMatrix.zeros(n)
    ident = RationalMatrix.identity(n)
    for k in range(1, n + 1):
        m = x @ m + ident.scale(coeffs[n - k + 1])
        xm = x @ m
        coeffs[n - k] = -sum((xm.rows[i][i] for i in range(n)), Fraction(0)) / k
    return RationalPoly(coeffs)


def krylov_matrix(x: RationalMatrix, v: Sequence) -> RationalMatrix:
    """Rows v, vX, ..., vX^{n-1}."""
    n = x.nrows
    rows = [[parse_rational(c) for c in v]]
    for _ in range(n - 1):
        rows.append(x.rapply(rows[-1]))
    return RationalMatrix(rows)


def is_regular_pair(x: RationalMatrix, v: Sequence) -> bool:
    if not x.is_square():
        raise ValueError("X must be square")
    if len(v) != x.nrows:
        raise ValueError("row vector length must match X")
    return krylov_matrix(x, v).rank() == x.nrows


def poly_at_matrix(p: RationalPoly, x: RationalMatrix) -> RationalMatrix:
    n = x.nrows
    acc = RationalMatrix.zeros(n)
    ident = RationalMatrix.identity(n)
    for c in reversed(p.coeffs):
        acc = acc @ x + ident.scale(c)
    return acc
