"""Functional AG codes C_L(D, mO) on elliptic curves and their duals.

L(mO) is spanned by the monomials x^i y^j (j in {0, 1}) of pole order
2i + 3j <= m at the point at infinity.  The residue code C_Omega(D, mO) is
obtained as the null space of the evaluation matrix; the two are dual, so no
differentials are needed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .curve import CurveSpec, Point, on_curve
from .field import FieldSpec

ENUMERATION_CAP = 1 << 20


class CodeError(ValueError):
    pass


class UnsupportedParameters(CodeError):
    pass


class EnumerationCapExceeded(CodeError):
    pass


class InvariantViolation(RuntimeError):
    pass


# ---------------------------------------------------------------- linear algebra


def rref(F: FieldSpec, M) -> tuple[list[list[int]], list[int]]:
    """Reduced row-echelon form (first-nonzero pivoting) and pivot columns.

    Zero rows are dropped, so the row count of the result is the rank.
    """
    rows = [list(map(int, r)) for r in M]
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        sel = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = F.inv(rows[r][col])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            c = rows[i][col]
            if i != r and c:
                nc = F.neg(c)
                rows[i] = [F.add(a, F.mul(nc, b)) for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(F: FieldSpec, M) -> int:
    return len(rref(F, M)[0])


def null_space(F: FieldSpec, M, ncols: int | None = None) -> list[list[int]]:
    """Basis of {v : M v = 0}, one vector per free column, in RREF."""
    R, pivots = rref(F, M)
    n = ncols if ncols is not None else (len(M[0]) if len(M) else 0)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, p in zip(R, pivots):
            v[p] = F.neg(row[f])
        basis.append(v)
    return rref(F, basis)[0] if basis else []


def solve(F: FieldSpec, A, b) -> list[int] | None:
    """One solution of A x = b with every free variable set to zero, or None."""
    A = [list(map(int, r)) for r in A]
    nvars = len(A[0]) if A else 0
    aug = [row + [int(bi)] for row, bi in zip(A, b)]
    R, pivots = rref(F, aug)
    if nvars in pivots:
        return None
    x = [0] * nvars
    for row, p in zip(R, pivots):
        x[p] = row[nvars]
    return x


def matmul(F: FieldSpec, A, B) -> list[list[int]]:
    Bt = list(zip(*B))
    out = []
    for row in A:
        out_row = []
        for col in Bt:
            acc = 0
            for a, b in zip(row, col):
                if a and b:
                    acc = F.add(acc, F.mul(a, b))
            out_row.append(acc)
        out.append(out_row)
    return out


def vec_mat(F: FieldSpec, u: Sequence[int], G) -> list[int]:
    out = [0] * len(G[0])
    for ui, row in zip(u, G):
        if ui:
            out = [F.add(o, F.mul(ui, g)) for o, g in zip(out, row)]
    return out


# ---------------------------------------------------------------- codes


@dataclass(frozen=True)
class LinearCode:
    """Linear code over ``field`` with a full-rank generator matrix."""

    field: FieldSpec
    generator: np.ndarray = field(compare=False)

    def __post_init__(self):
        G = np.array(self.generator, dtype=np.uint8, copy=True)
        if G.ndim != 2 or G.shape[0] < 1:
            raise CodeError("generator must be a non-empty matrix")
        if G.shape[0] > G.shape[1]:
            raise CodeError("dimension exceeds length")
        if int(G.max(initial=0)) >= self.field.q:
            raise CodeError("generator entries outside the field")
        if rank(self.field, G.tolist()) != G.shape[0]:
            raise CodeError("generator rows are linearly dependent")
        G.setflags(write=False)
        object.__setattr__(self, "generator", G)

    @property
    def length(self) -> int:
        return self.generator.shape[1]

    @property
    def dimension(self) -> int:
        return self.generator.shape[0]

    k = dimension

    def rows(self) -> list[list[int]]:
        return self.generator.tolist()

    def canonical(self) -> "LinearCode":
        return LinearCode(self.field, np.array(rref(self.field, self.rows())[0], dtype=np.uint8))

    def encode(self, u: Sequence[int]) -> list[int]:
        return vec_mat(self.field, u, self.rows())

    def contains(self, word: Sequence[int]) -> bool:
        return rank(self.field, self.rows() + [list(word)]) == self.dimension

    def __eq__(self, other):
        if not isinstance(other, LinearCode):
            return NotImplemented
        return (
            self.field == other.field
            and self.generator.shape == other.generator.shape
            and np.array_equal(self.canonical().generator, other.canonical().generator)
        )

    def __hash__(self):
        return hash((self.field, self.canonical().generator.tobytes()))


@dataclass(frozen=True)
class FunctionBasis:
    """Monomials x^i y^j spanning L(mO), sorted by pole order 2i + 3j."""

    m: int
    monomials: tuple[tuple[int, int], ...]

    def pole_orders(self) -> list[int]:
        return [2 * i + 3 * j for i, j in self.monomials]


def rr_basis(m: int) -> FunctionBasis:
    if m < 1:
        raise UnsupportedParameters("divisor degree m must be >= 1")
    monos = [(i, j) for j in (0, 1) for i in range(m // 2 + 1) if 2 * i + 3 * j <= m]
    monos.sort(key=lambda ij: 2 * ij[0] + 3 * ij[1])
    return FunctionBasis(m, tuple(monos))


def evaluate_basis(c: CurveSpec, basis: FunctionBasis, D: Sequence[Point]) -> np.ndarray:
    if any(pt.is_infinity for pt in D):
        raise CodeError("D must not contain the point at infinity")
    if len(set(D)) != len(D):
        raise CodeError("D has repeated points")
    for pt in D:
        if not on_curve(c, pt):
            raise CodeError(f"{c.format_point(pt)} is not on the curve")
    F = c.field
    M = np.zeros((len(basis.monomials), len(D)), dtype=np.uint8)
    for col, pt in enumerate(D):
        for row, (i, j) in enumerate(basis.monomials):
            v = F.pow(pt.x, i)
            if j:
                v = F.mul(v, pt.y)
            M[row, col] = v
    return M


def functional_code(c: CurveSpec, m: int, D: Sequence[Point]) -> LinearCode:
    """C_L(D, mO); requires 1 <= m < |D| so that L(mO - D) = 0."""
    if not 1 <= m < len(D):
        raise UnsupportedParameters(f"need 1 <= m < |D| (m={m}, |D|={len(D)})")
    M = evaluate_basis(c, rr_basis(m), D)
    expected = m if m >= 2 else 1
    if rank(c.field, M.tolist()) != expected:
        raise InvariantViolation(f"evaluation matrix has rank < {expected}")
    return LinearCode(c.field, M)


def dual_code(code: LinearCode) -> LinearCode:
    if code.dimension >= code.length:
        raise UnsupportedParameters("the dual of a full-space code is trivial")
    basis = null_space(code.field, code.rows(), code.length)
    return LinearCode(code.field, np.array(basis, dtype=np.uint8))


def vandermonde_code(F: FieldSpec, xs: Sequence[int], k: int) -> LinearCode:
    """Genus-0 evaluation code: rows 1, x, ..., x^(k-1) at distinct points ``xs``."""
    if len(set(xs)) != len(xs):
        raise CodeError("evaluation points must be distinct")
    if not 1 <= k <= len(xs):
        raise UnsupportedParameters("need 1 <= k <= number of points")
    M = np.array([[F.pow(x, e) for x in xs] for e in range(k)], dtype=np.uint8)
    return LinearCode(F, M)


# ---------------------------------------------------------------- enumeration


def _check_cap(code: LinearCode, cap: int):
    total = code.field.q**code.dimension
    if total > cap:
        raise EnumerationCapExceeded(f"{code.field.q}^{code.dimension} = {total} codewords exceeds cap {cap}")


def codewords(code: LinearCode, cap: int = ENUMERATION_CAP) -> np.ndarray:
    """All q^k codewords, message index order (first message digit slowest)."""
    _check_cap(code, cap)
    F = code.field
    return kernels.codewords(code.generator, F.add_table, F.mul_table)


def min_distance(code: LinearCode, cap: int = ENUMERATION_CAP) -> int:
    _check_cap(code, cap)
    F = code.field
    return kernels.min_weight(code.generator, F.add_table, F.mul_table, 0, False)


def min_weight_where(code: LinearCode, coordinate0_nonzero: bool, cap: int = ENUMERATION_CAP) -> int:
    """Least weight on coordinates 1.. over nonzero codewords (or those with c_0 != 0)."""
    _check_cap(code, cap)
    F = code.field
    w = kernels.min_weight(code.generator, F.add_table, F.mul_table, 1, coordinate0_nonzero)
    if w < 0:
        raise CodeError("no codeword satisfies the filter")
    return w


def weight_distribution(code: LinearCode, cap: int = ENUMERATION_CAP) -> list[int]:
    words = codewords(code, cap)
    counts = np.bincount(np.count_nonzero(words, axis=1), minlength=code.length + 1)
    return counts.tolist()


def message_digits(index: int, q: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        index, d = divmod(index, q)
        out.append(d)
    return out[::-1]
