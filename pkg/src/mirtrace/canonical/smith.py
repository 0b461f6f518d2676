"""Smith normal form of tI - X over Q[t], invariant factors and the Frobenius form."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import InternalConsistencyError
from .linalg import RationalMatrix, char_poly, companion
from .poly import RationalPoly


@dataclass(frozen=True)
class SmithData:
    diagonal: tuple[RationalPoly, ...]
    # P^{-1} where P (tI - X) Q = diag; its columns give cyclic generators
    p_inverse: tuple[tuple[RationalPoly, ...], ...]


def _char_matrix(x: RationalMatrix) -> list[list[RationalPoly]]:
    n = x.nrows
    return [[RationalPoly([-x[i, j], 1 if i == j else 0]) for j in range(n)] for i in range(n)]


def smith_form(x: RationalMatrix) -> SmithData:
    """Diagonalize tI - X by elementary operations, tracking P^{-1} for the row side.

    Row op R applied as A <- R A updates P^{-1} <- P^{-1} R^{-1}; column ops only
    touch A.
    """
    if not x.is_square():
        raise ValueError("Smith form needs a square matrix")
    n = x.nrows
    a = _char_matrix(x)
    pinv = [[RationalPoly([1 if i == j else 0]) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        for row in pinv:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        # row_dst += f row_src ; inverse on P^{-1}: col_src -= f col_dst
        a[dst] = [u + f * v for u, v in zip(a[dst], a[src])]
        for row in pinv:
            row[src] = row[src] - f * row[dst]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]

    def add_col(dst, src, f):
        for row in a:
            row[dst] = row[dst] + f * row[src]

    for k in range(n):
        while True:
            cands = [(a[i][j].degree, i, j) for i in range(k, n) for j in range(k, n) if a[i][j]]
            if not cands:
                break
            _, i, j = min(cands)
            if i != k:
                swap_rows(i, k)
            if j != k:
                swap_cols(j, k)
            piv = a[k][k]
            dirty = False
            for i in range(k + 1, n):
                if a[i][k]:
                    q, r = divmod(a[i][k], piv)
                    add_row(i, k, -q)
                    dirty = dirty or bool(r)
            for j in range(k + 1, n):
                if a[k][j]:
                    q, r = divmod(a[k][j], piv)
                    add_col(j, k, -q)
                    dirty = dirty or bool(r)
            if dirty:
                continue
            # pivot must divide the rest of the submatrix
            bad = next((i for i in range(k + 1, n) for j in range(k + 1, n)
                        if a[i][j] and not piv.divides(a[i][j])), None)
            if bad is None:
                break
            add_row(k, bad, RationalPoly([1]))
        if a[k][k]:
            lc = a[k][k].lc
            if lc != 1:
                # scale row k by 1/lc; P^{-1} column k scales by lc
                a[k] = [u * (1 / lc) for u in a[k]]
                for row in pinv:
                    row[k] = row[k] * lc
    diag = tuple(a[i][i] for i in range(n))
    return SmithData(diag, tuple(tuple(r) for r in pinv))


def invariant_factors(x: RationalMatrix) -> list[RationalPoly]:
    """Nontrivial invariant factors p_r | ... | p_1, smallest first."""
    data = smith_form(x)
    factors = [d for d in data.diagonal if d.degree >= 1]
    _check_chain(factors, x)
    return factors


def _check_chain(factors: list[RationalPoly], x: RationalMatrix) -> None:
    for small, big in zip(factors, factors[1:]):
        if not small.divides(big):
            raise InternalConsistencyError(f"invariant factors {small} and {big} do not divide")
    prod = RationalPoly([1])
    for f in factors:
        prod = prod * f
    if prod != char_poly(x):
        raise InternalConsistencyError("product of invariant factors differs from char_poly")


def _poly_apply(p: RationalPoly, x: RationalMatrix, v: list) -> list:
    """p(X) v by Horner."""
    acc = [0] * len(v)
    for c in reversed(p.coeffs):
        acc = x.apply(acc)
        acc = [u + c * w for u, w in zip(acc, v)]
    return acc


@dataclass(frozen=True)
class FrobeniusForm:
    form: RationalMatrix
    certificate: RationalMatrix
    invariant_factors: tuple[RationalPoly, ...]


def frobenius_normal_form(x: RationalMatrix) -> FrobeniusForm:
    """(F, S, factors) with S^{-1} X S = F; blocks companion(p_r), ..., companion(p_1)."""
    data = smith_form(x)
    n = x.nrows
    columns: list[list] = []
    blocks: list[RationalMatrix] = []
    factors: list[RationalPoly] = []
    for i, d in enumerate(data.diagonal):
        if d.degree < 1:
            continue
        h = [0] * n
        for j in range(n):
            term = _poly_apply(data.p_inverse[j][i], x, [int(r == j) for r in range(n)])
            h = [u + w for u, w in zip(h, term)]
        block = companion(d)
        a = block.rows[0]
        s = list(h)
        for j in range(d.degree):
            columns.append(s)
            s = [u - a[j] * w for u, w in zip(x.apply(s), h)]
        blocks.append(block)
        factors.append(d)
    _check_chain(factors, x)
    form = RationalMatrix.block_diag(blocks)
    cert = RationalMatrix.from_columns(columns)
    if cert.det() == 0 or x @ cert != cert @ form:
        raise InternalConsistencyError("Frobenius certificate failed: S^{-1} X S != F")
    return FrobeniusForm(form, cert, tuple(factors))
