"""The operators P, Q, beta, the symplectic cells, Casimir projectors and Witt components."""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Sequence

from .clifford import Multivector
from .linalg import (
    Matrix,
    identity,
    mat_add,
    mat_scale,
    matmul,
    nullspace,
    span_rank,
)
from .scalar_field import ONE, ZERO, FieldElement, as_field
from .witt import (
    SpinorSubspace,
    describe_spinor,
    f,
    fdag,
    full_spinor_space,
    spinor_basis,
)

__all__ = [
    "InvalidCell",
    "NonScalarAction",
    "LinearOperator",
    "left_mult",
    "identity_op",
    "op_P",
    "op_Q",
    "op_beta",
    "op_H",
    "casimir",
    "casimir_eig",
    "alpha",
    "gamma_left",
    "gamma_mirror",
    "gamma_left_closed",
    "gamma_mirror_closed",
    "witt_component_closed_form",
    "commutator",
    "operator_matrix",
    "valid_cell",
    "cell_indices",
    "cell_basis",
    "cell_basis_mirror",
    "cell_decompose",
    "kernel_space",
    "pq_scalar_check",
    "expected_cell_scalar",
    "projector",
    "projector_matrix",
    "witt_component",
    "witt_component_matrix",
    "global_component_matrix",
    "cell_projection_full",
    "full_left_mult_matrix",
    "witt_commutation_check",
    "adjacent_cell_check",
    "witt_component_identities",
    "projector_closed_form_check",
    "component_closed_form_check",
]


class InvalidCell(ValueError):
    pass


class NonScalarAction(ArithmeticError):
    pass


class LinearOperator:
    """A linear map on multivectors given by its action; matrices are built on demand."""

    def __init__(self, p: int, kind, action: Callable[[Multivector], Multivector]):
        self.p = p
        self.kind = kind
        self._action = action
        self._cache: dict = {}
        self._lock = threading.Lock()

    def __call__(self, x: Multivector) -> Multivector:
        return self._action(x)

    def __repr__(self):
        return f"LinearOperator(p={self.p}, kind={self.kind!r})"

    def _compat(self, other: "LinearOperator"):
        if self.p != other.p:
            raise ValueError("operators for different p")

    def __matmul__(self, other: "LinearOperator") -> "LinearOperator":
        self._compat(other)
        a, b = self._action, other._action
        return LinearOperator(self.p, ("compose", self.kind, other.kind), lambda x: a(b(x)))

    def __add__(self, other: "LinearOperator") -> "LinearOperator":
        self._compat(other)
        a, b = self._action, other._action
        return LinearOperator(self.p, ("sum", self.kind, other.kind), lambda x: a(x) + b(x))

    def __sub__(self, other: "LinearOperator") -> "LinearOperator":
        self._compat(other)
        a, b = self._action, other._action
        return LinearOperator(self.p, ("diff", self.kind, other.kind), lambda x: a(x) - b(x))

    def __rmul__(self, c) -> "LinearOperator":
        c = as_field(c)
        if c is NotImplemented:
            return NotImplemented
        a = self._action
        return LinearOperator(self.p, ("scale", str(c), self.kind), lambda x: a(x).scale(c))

    def power(self, k: int) -> "LinearOperator":
        out = identity_op(self.p)
        for _ in range(k):
            out = self @ out
        return out

    def matrix_on(self, domain: SpinorSubspace, codomain: SpinorSubspace | None = None) -> Matrix:
        """Column j holds the codomain coordinates of the image of domain.basis[j]."""
        codomain = codomain or domain
        key = (id(domain), id(codomain))
        with self._lock:
            hit = self._cache.get(key)
        if hit is not None:
            return hit
        cols = [codomain.coordinates(self(b)) for b in domain.basis]
        mat = [[cols[j][i] for j in range(len(cols))] for i in range(codomain.dim)]
        with self._lock:
            self._cache[key] = mat
        return mat


def left_mult(a: Multivector, p: int, kind=None) -> LinearOperator:
    if a.dim != 4 * p:
        raise ValueError("left multiplier lives in the wrong algebra")
    return LinearOperator(p, kind or ("left-mult", str(a)), lambda x: a * x)


@lru_cache(maxsize=None)
def identity_op(p: int) -> LinearOperator:
    return LinearOperator(p, "id", lambda x: x)


@lru_cache(maxsize=None)
def _symbol_P(p: int) -> Multivector:
    out = Multivector(4 * p)
    for j in range(1, p + 1):
        out = out + f(2 * j, p) * f(2 * j - 1, p)
    return out


@lru_cache(maxsize=None)
def _symbol_Q(p: int) -> Multivector:
    out = Multivector(4 * p)
    for j in range(1, p + 1):
        out = out + fdag(2 * j - 1, p) * fdag(2 * j, p)
    return out


@lru_cache(maxsize=None)
def _symbol_beta(p: int) -> Multivector:
    out = Multivector(4 * p)
    for j in range(1, 2 * p + 1):
        out = out + fdag(j, p) * f(j, p)
    return out


@lru_cache(maxsize=None)
def op_P(p: int) -> LinearOperator:
    return left_mult(_symbol_P(p), p, "P")


@lru_cache(maxsize=None)
def op_Q(p: int) -> LinearOperator:
    return left_mult(_symbol_Q(p), p, "Q")


@lru_cache(maxsize=None)
def op_beta(p: int) -> LinearOperator:
    return left_mult(_symbol_beta(p), p, "beta")


def symbol(name: str, p: int) -> Multivector:
    """The Clifford element behind P, Q or beta."""
    return {"P": _symbol_P, "Q": _symbol_Q, "beta": _symbol_beta}[name](p)


@lru_cache(maxsize=None)
def op_H(p: int) -> LinearOperator:
    """H = p - beta."""
    beta = op_beta(p)
    return LinearOperator(p, "H", lambda x: x.scale(p) - beta(x))


@lru_cache(maxsize=None)
def casimir(p: int) -> LinearOperator:
    """QP + H(H+2)/4."""
    P, Q, H = op_P(p), op_Q(p), op_H(p)
    quarter = FieldElement(Fraction(1, 4))

    def act(x: Multivector) -> Multivector:
        hx = H(x)
        return Q(P(x)) + (H(hx) + hx.scale(2)).scale(quarter)

    return LinearOperator(p, "casimir", act)


def casimir_eig(p: int, s: int) -> Fraction:
    return Fraction((p - s) * (p + 2 - s), 4)


def alpha(p: int, r: int, k: int) -> int:
    """(k+1)(p-r-k)."""
    return (k + 1) * (p - r - k)


def gamma_left(p: int, r: int, k: int) -> int:
    """Product of alpha^i_{r-2k-1} over i = 0..k."""
    out = 1
    for i in range(k + 1):
        out *= alpha(p, r - 2 * k - 1, i)
    return out


def gamma_mirror(p: int, r: int, k: int) -> int:
    """Product of alpha^i_{r-2k-1} over i = 0..k-1."""
    out = 1
    for i in range(k):
        out *= alpha(p, r - 2 * k - 1, i)
    return out


def gamma_left_closed(p: int, r: int, k: int) -> int:
    """(k+1)! (p-r+k+1)(p-r+k+2)...(p-r+2k+1)."""
    out = factorial(k + 1)
    for t in range(p - r + k + 1, p - r + 2 * k + 2):
        out *= t
    return out


def gamma_mirror_closed(p: int, r: int, k: int) -> int:
    """k! (p-r+k+2)(p-r+k+3)...(p-r+2k+1)."""
    out = factorial(k)
    for t in range(p - r + k + 2, p - r + 2 * k + 2):
        out *= t
    return out


def operator_matrix(op: LinearOperator, domain: SpinorSubspace, codomain: SpinorSubspace) -> Matrix:
    return op.matrix_on(domain, codomain)


def commutator(A: LinearOperator, B: LinearOperator, probe: SpinorSubspace) -> Matrix:
    """Matrix of AB - BA on an invariant probe space."""
    return (A @ B - B @ A).matrix_on(probe)


# ---------------------------------------------------------------- cells


def valid_cell(p: int, r: int, s: int) -> bool:
    return 0 <= r <= 2 * p and 0 <= s <= min(r, 2 * p - r) and (r - s) % 2 == 0


def cell_indices(p: int, r: int) -> list[int]:
    """The cell indices occurring in degree r, largest first."""
    top = min(r, 2 * p - r)
    return list(range(top, -1, -2))


def _check_cell(p: int, r: int, s: int):
    if p < 1 or not valid_cell(p, r, s):
        raise InvalidCell(f"no symplectic cell (r={r}, s={s}) for p={p}")


def _name_space(p: int, r: int, vectors: Sequence[Multivector]) -> list[str]:
    space = spinor_basis(p, r)
    return [describe_spinor(v, p, space) for v in vectors]


@lru_cache(maxsize=None)
def kernel_space(p: int, which: str, r: int) -> SpinorSubspace:
    """Ker P or Ker Q restricted to S^r."""
    domain = spinor_basis(p, r)
    if which == "P":
        op, target = op_P(p), r - 2
    elif which == "Q":
        op, target = op_Q(p), r + 2
    else:
        raise ValueError("kernel of P or Q only")
    if 0 <= target <= 2 * p:
        mat = op.matrix_on(domain, spinor_basis(p, target))
        vecs = nullspace(mat, domain.dim)
    else:
        vecs = [[ONE if i == j else ZERO for i in range(domain.dim)] for j in range(domain.dim)]
    basis = [domain.combine(v) for v in vecs]
    return SpinorSubspace(p, ("Ker", which, r), basis, _name_space(p, r, basis))


@lru_cache(maxsize=None)
def cell_basis(p: int, r: int, s: int) -> SpinorSubspace:
    """Basis of S_s^r: Q-powers of Ker P on the left half, P-powers of Ker Q on the right."""
    _check_cell(p, r, s)
    if r <= p:
        base, op, steps = kernel_space(p, "P", s), op_Q(p), (r - s) // 2
    else:
        base, op, steps = kernel_space(p, "Q", 2 * p - s), op_P(p), (2 * p - s - r) // 2
    vecs = list(base.basis)
    for _ in range(steps):
        vecs = [op(v) for v in vecs]
    return SpinorSubspace(p, ("cell", r, s), vecs, _name_space(p, r, vecs))


@lru_cache(maxsize=None)
def cell_basis_mirror(p: int, r: int, s: int) -> SpinorSubspace:
    """The same cell reached from the opposite end of its row."""
    _check_cell(p, r, s)
    if r <= p:
        base, op, steps = kernel_space(p, "Q", 2 * p - s), op_P(p), (2 * p - s - r) // 2
    else:
        base, op, steps = kernel_space(p, "P", s), op_Q(p), (r - s) // 2
    vecs = list(base.basis)
    for _ in range(steps):
        vecs = [op(v) for v in vecs]
    return SpinorSubspace(p, ("cell-mirror", r, s), vecs)


def cell_dimension_formula(p: int, s: int) -> int:
    return comb(2 * p, s) - (comb(2 * p, s - 2) if s >= 2 else 0)


def cell_decompose(p: int, r: int) -> list[tuple[tuple[int, int], SpinorSubspace]]:
    if not 0 <= r <= 2 * p:
        raise InvalidCell(f"degree {r} outside 0..{2 * p}")
    cells = [((r, s), cell_basis(p, r, s)) for s in cell_indices(p, r)]
    vecs = [dict(v.items()) for _, sp in cells for v in sp.basis]
    if span_rank(vecs) != comb(2 * p, r):
        raise ArithmeticError(f"cells of S^{r} do not span it")
    return cells


def expected_cell_scalar(p: int, r: int, s: int, order: str = "PQ") -> int:
    """PQ acts on S_s^{s+2k} by alpha_s^k and QP by alpha_s^{k-1} (zero when k = 0)."""
    _check_cell(p, r, s)
    k = (r - s) // 2
    if order == "PQ":
        return alpha(p, s, k)
    if order == "QP":
        return alpha(p, s, k - 1) if k > 0 else 0
    raise ValueError("order must be PQ or QP")


def pq_scalar_check(p: int, r: int, s: int, order: str = "PQ") -> Fraction:
    """Verify that PQ (or QP) is a scalar on the cell and return that scalar."""
    space = cell_basis(p, r, s)
    P, Q = op_P(p), op_Q(p)
    op = P @ Q if order == "PQ" else Q @ P
    value = None
    for b in space.basis:
        img = op(b)
        if value is None:
            # read off the ratio at any blade of b
            m, c = next(iter(b.items()))
            value = img.coeff(m) / c
        if img != b.scale(value):
            raise NonScalarAction(f"{order} is not scalar on cell ({r},{s}) for p={p}")
    if value is None:
        raise InvalidCell("empty cell")
    return value.to_fraction()


# ---------------------------------------------------------------- projectors


def projector(p: int, r: int, s: int) -> LinearOperator:
    """Casimir polynomial prod_{t != s} (C - c_t)/(c_s - c_t) over the cells of degree r."""
    _check_cell(p, r, s)
    C = casimir(p)
    factors = []
    for t in cell_indices(p, r):
        if t == s:
            continue
        factors.append((FieldElement(casimir_eig(p, t)), FieldElement(1 / (casimir_eig(p, s) - casimir_eig(p, t)))))

    def act(x: Multivector) -> Multivector:
        for ct, w in factors:
            x = (C(x) - x.scale(ct)).scale(w)
        return x

    return LinearOperator(p, ("projector", r, s), act)


@lru_cache(maxsize=None)
def projector_matrix(p: int, r: int, s: int) -> Matrix:
    """Projector onto S_s^r in the monomial coordinates of S^r."""
    space = spinor_basis(p, r)
    return projector(p, r, s).matrix_on(space)


def apply_projector(p: int, r: int, s: int, x: Multivector) -> Multivector:
    space = spinor_basis(p, r)
    coords = space.coordinates(x)
    mat = projector_matrix(p, r, s)
    out = [sum((row[j] * coords[j] for j in range(len(coords)) if row[j] and coords[j]), ZERO) for row in mat]
    return space.combine(out)


# ---------------------------------------------------------------- Witt components


def _component_target(p: int, r: int, s: int, dagger: bool, sign: str):
    rr = r + 1 if dagger else r - 1
    ss = s - 1 if sign == "-" else s + 1
    if sign not in "+-" or len(sign) != 1:
        raise ValueError("sign must be '+' or '-'")
    return rr, ss


@lru_cache(maxsize=None)
def witt_component_matrix(p: int, j: int, dagger: bool, r: int, s: int, sign: str) -> Matrix:
    """(f_j)_{s-} or (f_j)_{s+} on S^r coordinates: project to S_s^r, multiply, project to the target cell."""
    _check_cell(p, r, s)
    rr, ss = _component_target(p, r, s, dagger, sign)
    src = spinor_basis(p, r)
    if not valid_cell(p, rr, ss):
        ncols = comb(2 * p, rr) if 0 <= rr <= 2 * p else 0
        return [[ZERO] * src.dim for _ in range(ncols)]
    vec = fdag(j, p) if dagger else f(j, p)
    mult = left_mult(vec, p).matrix_on(src, spinor_basis(p, rr))
    return matmul(projector_matrix(p, rr, ss), matmul(mult, projector_matrix(p, r, s)))


def witt_component(p: int, j: int, dagger: bool, r: int, s: int, sign: str) -> LinearOperator:
    """Operator on S^r that is zero off the cell S_s^r and maps it into S_{s-+1}^{r+-1}."""
    mat = witt_component_matrix(p, j, dagger, r, s, sign)
    src = spinor_basis(p, r)
    rr = r + 1 if dagger else r - 1

    def act(x: Multivector) -> Multivector:
        if not 0 <= rr <= 2 * p:
            return Multivector(4 * p)
        coords = src.coordinates(x)
        out = [sum((row[t] * coords[t] for t in range(len(coords)) if row[t] and coords[t]), ZERO) for row in mat]
        return spinor_basis(p, rr).combine(out)

    name = ("f†" if dagger else "f") + str(j)
    return LinearOperator(p, ("component", name, r, s, sign), act)


def _offsets(p: int) -> list[int]:
    out, pos = [], 0
    for r in range(2 * p + 1):
        out.append(pos)
        pos += comb(2 * p, r)
    return out


@lru_cache(maxsize=None)
def cell_projection_full(p: int, r: int, s: int) -> Matrix:
    """Projector onto S_s^r as a 2^{2p} square matrix in full monomial coordinates."""
    n = 2 ** (2 * p)
    off = _offsets(p)[r]
    out = [[ZERO] * n for _ in range(n)]
    block = projector_matrix(p, r, s)
    for i, row in enumerate(block):
        for t, v in enumerate(row):
            if v:
                out[off + i][off + t] = v
    return out


@lru_cache(maxsize=None)
def global_component_matrix(p: int, j: int, dagger: bool, sign: str) -> Matrix:
    """Sum over all cells of the component maps, as a matrix on the whole of S."""
    n = 2 ** (2 * p)
    off = _offsets(p)
    out = [[ZERO] * n for _ in range(n)]
    for r in range(2 * p + 1):
        rr = r + 1 if dagger else r - 1
        if not 0 <= rr <= 2 * p:
            continue
        for s in cell_indices(p, r):
            block = witt_component_matrix(p, j, dagger, r, s, sign)
            for i, row in enumerate(block):
                for t, v in enumerate(row):
                    if v:
                        out[off[rr] + i][off[r] + t] = out[off[rr] + i][off[r] + t] + v
    return out


@lru_cache(maxsize=None)
def full_left_mult_matrix(p: int, j: int, dagger: bool) -> Matrix:
    space = full_spinor_space(p)
    vec = fdag(j, p) if dagger else f(j, p)
    return left_mult(vec, p).matrix_on(space)


def witt_component_closed_form(p: int, j: int, dagger: bool, r: int, k: int, upper: bool) -> Matrix | None:
    """Minus component on the cell with index r - 2k, built from powers of P and Q.

    upper=False acts on S^r and upper=True on S^{2p-r} (0 <= r <= p):

        f†_j on S^r        Q^{k+1} P^{k+1} f†_j / gamma_left
        f†_j on S^{2p-r}   P^k Q^k f†_j / gamma_mirror
        f_j  on S^r        Q^k P^k f_j / gamma_mirror
        f_j  on S^{2p-r}   P^{k+1} Q^{k+1} f_j / gamma_left

    Returns None when the minus component has no target (r - 2k = 0 or the
    degree leaves 0..2p).
    """
    if not 0 <= r <= p or not 0 <= 2 * k <= r:
        raise InvalidCell(f"need 0 <= r <= p and 0 <= 2k <= r, got r={r}, k={k}")
    s = r - 2 * k
    degree = 2 * p - r if upper else r
    target = degree + 1 if dagger else degree - 1
    if s == 0 or not 0 <= target <= 2 * p:
        return None
    P, Q = op_P(p), op_Q(p)
    long_chain = dagger != upper
    m = k + 1 if long_chain else k
    if upper:
        chain = P.power(m) @ Q.power(m)
    else:
        chain = Q.power(m) @ P.power(m)
    g = gamma_left(p, r, k) if long_chain else gamma_mirror(p, r, k)
    src, dst = spinor_basis(p, degree), spinor_basis(p, target)
    vec = fdag(j, p) if dagger else f(j, p)
    mult = left_mult(vec, p).matrix_on(src, dst)
    out = matmul(chain.matrix_on(dst), matmul(mult, projector_matrix(p, degree, s)))
    return mat_scale(out, FieldElement(Fraction(1, g)))


# ---------------------------------------------------------------- identity checks


def _anticomm(A: Matrix, B: Matrix) -> Matrix:
    return mat_add(matmul(A, B), matmul(B, A))


def _is_zero(M: Matrix) -> bool:
    return all(not v for row in M for v in row)


def witt_commutation_check(p: int) -> dict[str, bool]:
    """Commutators of P, Q and their squares with the Witt multipliers, on all of S.

    Keys ``P_f`` and ``Q_fdag`` hold [P, f_j] = 0 and [Q, f†_j] = 0 for every j.
    Keys ``Q2_f`` and ``P2_fdag`` record whether [Q^2, f_j] and [P^2, f†_j]
    vanish; they do at p = 1 and fail from p = 2 on.
    """
    space = full_spinor_space(p)
    P, Q = op_P(p), op_Q(p)
    P2, Q2 = P @ P, Q @ Q
    res = {"P_f": True, "Q_fdag": True, "Q2_f": True, "P2_fdag": True}
    for j in range(1, 2 * p + 1):
        F, Fd = left_mult(f(j, p), p), left_mult(fdag(j, p), p)
        tests = {
            "P_f": (P, F),
            "Q_fdag": (Q, Fd),
            "Q2_f": (Q2, F),
            "P2_fdag": (P2, Fd),
        }
        for key, (A, B) in tests.items():
            if res[key] and not _is_zero(commutator(A, B, space)):
                res[key] = False
    return res


def adjacent_cell_check(p: int) -> bool:
    """Each Witt multiplier sends a cell into the two neighbouring cells of the next degree.

    Equivalently the plus and minus components add up to the full left multiplication.
    """
    for j in range(1, 2 * p + 1):
        for dagger in (False, True):
            total = mat_add(global_component_matrix(p, j, dagger, "-"), global_component_matrix(p, j, dagger, "+"))
            if total != full_left_mult_matrix(p, j, dagger):
                return False
    return True


def witt_component_identities(p: int) -> dict[str, bool]:
    """Anticommutation rules of the Witt components, as matrices on all of S.

    ``ff`` and ``fdfd``: the minus parts anticommute, the plus parts anticommute and
    the four mixed products add up to zero.  ``ffd``: the same for f_j with f†_k,
    except that the mixed sum is the identity when j = k.
    """
    n = 2 ** (2 * p)
    G = lambda j, d, s: global_component_matrix(p, j, d, s)  # noqa: E731
    idx = range(1, 2 * p + 1)
    out = {"ff": True, "fdfd": True, "ffd": True}

    def mixed(a_m, a_p, b_m, b_p):
        return mat_add(
            mat_add(matmul(a_m, b_p), matmul(a_p, b_m)),
            mat_add(matmul(b_m, a_p), matmul(b_p, a_m)),
        )

    for d, key in ((False, "ff"), (True, "fdfd")):
        for j in idx:
            for k in idx:
                if k < j:
                    continue
                jm, jp, km, kp = G(j, d, "-"), G(j, d, "+"), G(k, d, "-"), G(k, d, "+")
                if not (_is_zero(_anticomm(jm, km)) and _is_zero(_anticomm(jp, kp)) and _is_zero(mixed(jm, jp, km, kp))):
                    out[key] = False
    ident, zero = identity(n), [[ZERO] * n for _ in range(n)]
    for j in idx:
        for k in idx:
            jm, jp = G(j, False, "-"), G(j, False, "+")
            km, kp = G(k, True, "-"), G(k, True, "+")
            target = ident if j == k else zero
            if not (_is_zero(_anticomm(jm, km)) and _is_zero(_anticomm(jp, kp)) and mixed(jm, jp, km, kp) == target):
                out["ffd"] = False
    return out


def projector_closed_form_check(p: int) -> bool:
    """Projectors onto the bottom cells as normalised products Q^j P^j.

    On S^{2j} the projector onto the cell of index 0 is Q^j P^j / (j! p(p-1)...(p-j+1));
    on S^{2j+1} the projector onto the cell of index 1 is Q^j P^j / (j! (p-1)...(p-j)).
    """
    P, Q = op_P(p), op_Q(p)
    for r in range(2 * p + 1):
        j, s = divmod(r, 2)
        if not valid_cell(p, r, s):
            continue
        den = factorial(j)
        for t in range(j):
            den *= (p - t) if s == 0 else (p - 1 - t)
        if den == 0:
            continue
        chain = (Q.power(j) @ P.power(j)).matrix_on(spinor_basis(p, r))
        if projector_matrix(p, r, s) != mat_scale(chain, FieldElement(Fraction(1, den))):
            return False
    return True


def component_closed_form_check(p: int) -> list[tuple]:
    """Compare the P/Q-chain formulas for the minus components with the projected products.

    Also checks that the gamma products agree with their factorial closed forms.
    Returns the list of mismatches (empty on success).
    """
    bad = []
    for r in range(p + 1):
        for k in range(r // 2 + 1):
            if gamma_left(p, r, k) != gamma_left_closed(p, r, k):
                bad.append(("gamma_left", r, k))
            if gamma_mirror(p, r, k) != gamma_mirror_closed(p, r, k):
                bad.append(("gamma_mirror", r, k))
            s = r - 2 * k
            for upper in (False, True):
                degree = 2 * p - r if upper else r
                for dagger in (False, True):
                    for j in range(1, 2 * p + 1):
                        got = witt_component_closed_form(p, j, dagger, r, k, upper)
                        if got is None:
                            continue
                        if got != witt_component_matrix(p, j, dagger, degree, s, "-"):
                            bad.append(("component", j, dagger, degree, s))
    return bad
