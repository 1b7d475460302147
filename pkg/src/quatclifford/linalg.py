"""Exact linear algebra over Q(i, sqrt2).

Dense matrices are lists of rows of FieldElement.  Sparse vectors are
dicts from a column key to FieldElement.
"""

from __future__ import annotations

from typing import Hashable, Sequence

from .scalar_field import ONE, ZERO, FieldElement, as_field

Matrix = list[list[FieldElement]]


class NotInSpan(ValueError):
    """Raised when a vector has a nonzero residual against a basis."""


def to_matrix(rows) -> Matrix:
    return [[as_field(x) for x in row] for row in rows]


def zeros(n: int, m: int) -> Matrix:
    return [[ZERO] * m for _ in range(n)]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    n, k = len(a), len(a[0])
    if len(b) != k:
        raise ValueError(f"shape mismatch {n}x{k} times {len(b)}x?")
    m = len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = [ZERO] * m
        for t in range(k):
            x = a[i][t]
            if not x:
                continue
            bt = b[t]
            for j in range(m):
                y = bt[j]
                if y:
                    row[j] = row[j] + x * y
        out.append(row)
    return out


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Matrix, c) -> Matrix:
    c = as_field(c)
    return [[x * c for x in row] for row in a]


def mat_map(a: Matrix, f) -> Matrix:
    return [[f(x) for x in row] for row in a]


def is_zero_matrix(a: Matrix) -> bool:
    return all(not x for row in a for x in row)


def is_scalar_matrix(a: Matrix):
    """Return c if a == c*E, else None."""
    n = len(a)
    if n == 0:
        return ZERO
    c = a[0][0]
    for i in range(n):
        for j in range(n):
            if a[i][j] != (c if i == j else ZERO):
                return None
    return c


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form by Gauss-Jordan elimination."""
    rows = [list(r) for r in a]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][col].inv()
        rows[r] = [x * inv if x else x for x in rows[r]]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], pr)]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def bareiss_echelon(a: Matrix) -> tuple[Matrix, int, int]:
    """Fraction-free forward elimination.

    Returns (echelon rows, rank, sign) where sign tracks row swaps.  Every
    division is exact: it divides by the previous pivot.
    """
    rows = [list(r) for r in a]
    n = len(rows)
    if n == 0:
        return rows, 0, 1
    m = len(rows[0])
    prev = ONE
    sign = 1
    r = 0
    for col in range(m):
        if r == n:
            break
        piv = next((i for i in range(r, n) if rows[i][col]), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            sign = -sign
        p = rows[r][col]
        pinv = prev.inv()
        for i in range(r + 1, n):
            f = rows[i][col]
            rows[i] = [
                (p * x - f * y) * pinv if (x or (f and y)) else ZERO
                for x, y in zip(rows[i], rows[r])
            ]
        prev = p
        r += 1
    return rows, r, sign


def rank(a: Matrix) -> int:
    if not a or not a[0]:
        return 0
    return bareiss_echelon(a)[1]


def det(a: Matrix) -> FieldElement:
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return ONE
    rows, rk, sign = bareiss_echelon(a)
    if rk < n:
        return ZERO
    d = rows[n - 1][n - 1]
    return d if sign > 0 else -d


def nullspace(a: Matrix, ncols: int | None = None) -> list[list[FieldElement]]:
    """Basis of {v : a v = 0}, one vector per free column."""
    if not a:
        n = ncols or 0
        return [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
    n = len(a[0])
    red, pivots = rref(a)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for row, pc in zip(red, pivots):
            if row[f]:
                v[pc] = -row[f]
        basis.append(v)
    return basis


def solve_left(a: Matrix, b: Matrix) -> Matrix | None:
    """Find X with X a = b (row convention), or None."""
    # X a = b  <=>  a^T X^T = b^T
    at, bt = transpose(a), transpose(b)
    n = len(at[0]) if at else 0
    aug = [row + brow for row, brow in zip(at, bt)]
    red, pivots = rref(aug)
    if any(p >= n for p in pivots):
        return None
    k = len(bt[0]) if bt else 0
    xt = [[ZERO] * k for _ in range(n)]
    for row, pc in zip(red, pivots):
        xt[pc] = row[n:]
    return transpose(xt)


class SparseSpanSolver:
    """Coordinates of vectors with respect to a fixed independent family.

    The family is reduced once to reduced-echelon form; afterwards each
    query costs one pass over the pivot rows plus a residual check.
    """

    def __init__(self, vectors: Sequence[dict]):
        self.size = len(vectors)
        rows: list[dict] = []
        combos: list[dict[int, FieldElement]] = []
        pivots: list[Hashable] = []
        for idx, vec in enumerate(vectors):
            row = {k: v for k, v in vec.items() if v}
            combo = {idx: ONE}
            for prow, pcombo, pc in zip(rows, combos, pivots):
                f = row.get(pc)
                if f:
                    _axpy(row, prow, -f)
                    _axpy(combo, pcombo, -f)
            if not row:
                raise ValueError(f"vector {idx} is linearly dependent on its predecessors")
            pc = min(row, key=_sort_key)
            inv = row[pc].inv()
            row = {k: v * inv for k, v in row.items()}
            combo = {k: v * inv for k, v in combo.items()}
            # keep earlier rows reduced at the new pivot
            for j, prow in enumerate(rows):
                f = prow.get(pc)
                if f:
                    _axpy(prow, row, -f)
                    _axpy(combos[j], combo, -f)
            rows.append(row)
            combos.append(combo)
            pivots.append(pc)
        self._rows = rows
        self._combos = combos
        self._pivots = pivots

    def coordinates(self, vec: dict) -> list[FieldElement]:
        residual = {k: v for k, v in vec.items() if v}
        coords = [ZERO] * self.size
        for row, combo, pc in zip(self._rows, self._combos, self._pivots):
            f = residual.get(pc)
            if not f:
                continue
            _axpy(residual, row, -f)
            for k, v in combo.items():
                coords[k] = coords[k] + f * v
        if residual:
            raise NotInSpan("vector has a nonzero residual against the basis")
        return coords

    def contains(self, vec: dict) -> bool:
        try:
            self.coordinates(vec)
        except NotInSpan:
            return False
        return True


def _sort_key(k):
    return k


def _axpy(target: dict, src: dict, f: FieldElement) -> None:
    """target += f * src, dropping zeros."""
    for k, v in src.items():
        cur = target.get(k)
        nv = f * v if cur is None else cur + f * v
        if nv:
            target[k] = nv
        elif cur is not None:
            del target[k]


def span_rank(vectors: Sequence[dict]) -> int:
    """Rank of a family of sparse vectors by incremental elimination."""
    rows: list[dict] = []
    pivots: list = []
    for vec in vectors:
        row = {k: v for k, v in vec.items() if v}
        for prow, pc in zip(rows, pivots):
            f = row.get(pc)
            if f:
                _axpy(row, prow, -f)
        if row:
            pc = min(row)
            inv = row[pc].inv()
            rows.append({k: v * inv for k, v in row.items()})
            pivots.append(pc)
    return len(rows)
