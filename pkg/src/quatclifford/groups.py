"""Complex and quaternionic structures, the phi/psi embeddings and Spin elements.

Vectors are rows: a matrix A acts by X -> X A.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .clifford import Multivector, blade_indices
from .linalg import Matrix, det, identity, mat_add, mat_scale, matmul, transpose
from .scalar_field import ONE, SQRT2, ZERO, FieldElement, I, as_field

__all__ = [
    "Quaternion",
    "QI",
    "QJ",
    "QK",
    "structure_matrix",
    "quaternion_matmul",
    "vec_mat",
    "cos_pi4",
    "sin_pi4",
    "is_special_orthogonal",
    "StructureTriple",
    "structure_triple",
    "complex_structure",
    "phi_embed",
    "phi_inverse",
    "psi_embed",
    "psi_inverse",
    "alpha_vec",
    "beta_vec",
    "gamma_vec",
    "quaternion_conj_transpose",
    "spin_s_I",
    "spin_s_J",
    "sigma_I_terms",
    "sigma_J_terms",
    "bivector_from_terms",
    "exp_pi4_bivector",
    "terms_from_bivector",
    "exp_quarter_matrix",
    "exp_quarter_quaternion",
    "double_cover_matrix",
    "subgroup_membership",
    "sp_group_roundtrip",
    "skew_to_bivector",
    "bivector_to_skew",
    "spin_I_generators",
    "NotSpinElement",
]


class NotSpinElement(ValueError):
    pass


# ---------------------------------------------------------------- quaternions


class Quaternion:
    """q0 + q1 i + q2 j + q3 k with components in the real subfield."""

    __slots__ = ("q",)

    def __init__(self, q0=0, q1=0, q2=0, q3=0):
        comps = tuple(as_field(v) for v in (q0, q1, q2, q3))
        for c in comps:
            if not c.is_real():
                raise ValueError("quaternion components must be real")
        self.q = comps

    def __add__(self, o):
        return Quaternion(*(a + b for a, b in zip(self.q, _quat(o).q)))

    __radd__ = __add__

    def __neg__(self):
        return Quaternion(*(-a for a in self.q))

    def __sub__(self, o):
        return self + (-_quat(o))

    def __mul__(self, o):
        o = _quat(o)
        a0, a1, a2, a3 = self.q
        b0, b1, b2, b3 = o.q
        return Quaternion(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )

    def __rmul__(self, o):
        return _quat(o) * self

    def conj(self):
        q0, q1, q2, q3 = self.q
        return Quaternion(q0, -q1, -q2, -q3)

    def norm2(self) -> FieldElement:
        return sum((c * c for c in self.q), ZERO)

    def inv(self):
        n = self.norm2()
        return Quaternion(*(c / n for c in self.conj().q))

    def complex_pair(self) -> tuple[FieldElement, FieldElement]:
        """(z, w) with q = z + w j."""
        q0, q1, q2, q3 = self.q
        return q0 + q1 * I, q2 + q3 * I

    def __eq__(self, o):
        try:
            return self.q == _quat(o).q
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.q)

    def __bool__(self):
        return any(self.q)

    def __repr__(self):
        return "Quaternion(" + ", ".join(str(c) for c in self.q) + ")"


def _quat(x) -> Quaternion:
    if isinstance(x, Quaternion):
        return x
    c = as_field(x)
    if c is NotImplemented:
        raise TypeError(f"cannot treat {x!r} as a quaternion")
    return Quaternion(c)


QI, QJ, QK = Quaternion(0, 1), Quaternion(0, 0, 1), Quaternion(0, 0, 0, 1)


# ---------------------------------------------------------------- structures


def complex_structure(n: int) -> Matrix:
    """Block diagonal matrix with n blocks [[0, 1], [-1, 0]]."""
    m = [[ZERO] * (2 * n) for _ in range(2 * n)]
    for k in range(n):
        m[2 * k][2 * k + 1] = ONE
        m[2 * k + 1][2 * k] = -ONE
    return m


def _block_diag(block: Sequence[Sequence[int]], copies: int) -> Matrix:
    b = len(block)
    m = [[ZERO] * (b * copies) for _ in range(b * copies)]
    for c in range(copies):
        for i in range(b):
            for j in range(b):
                if block[i][j]:
                    m[c * b + i][c * b + j] = as_field(block[i][j])
    return m


_J_BLOCK = [[0, 0, 1, 0], [0, 0, 0, -1], [-1, 0, 0, 0], [0, 1, 0, 0]]


@dataclass(frozen=True)
class StructureTriple:
    I: tuple
    J: tuple
    K: tuple

    def as_lists(self):
        return [list(r) for r in self.I], [list(r) for r in self.J], [list(r) for r in self.K]


@lru_cache(maxsize=None)
def structure_triple(p: int) -> StructureTriple:
    if p < 1:
        raise ValueError("p must be at least 1")
    mi = complex_structure(2 * p)
    mj = _block_diag(_J_BLOCK, p)
    mk = matmul(mi, mj)
    freeze = lambda m: tuple(tuple(r) for r in m)
    return StructureTriple(freeze(mi), freeze(mj), freeze(mk))


def structure_matrix(kind: str, p: int) -> Matrix:
    t = structure_triple(p)
    return [list(r) for r in {"I": t.I, "J": t.J, "K": t.K}[kind]]


# ---------------------------------------------------------------- embeddings


def phi_embed(a: Matrix) -> Matrix:
    """Replace each complex entry x + y i by [[x, y], [-y, x]]."""
    n = len(a)
    out = [[ZERO] * (2 * len(a[0])) for _ in range(2 * n)]
    for r, row in enumerate(a):
        for c, z in enumerate(row):
            z = as_field(z)
            x, y = FieldElement(z.a, 0, z.c), FieldElement(z.b, 0, z.d)
            out[2 * r][2 * c], out[2 * r][2 * c + 1] = x, y
            out[2 * r + 1][2 * c], out[2 * r + 1][2 * c + 1] = -y, x
    return out


def phi_inverse(b: Matrix) -> Matrix | None:
    """Inverse of phi_embed, or None when b is not block-complex."""
    n = len(b) // 2
    out = []
    for r in range(n):
        row = []
        for c in range(len(b[0]) // 2):
            x, y = b[2 * r][2 * c], b[2 * r][2 * c + 1]
            if b[2 * r + 1][2 * c] != -y or b[2 * r + 1][2 * c + 1] != x:
                return None
            if not (x.is_real() and y.is_real()):
                return None
            row.append(x + y * I)
        out.append(row)
    return out


def psi_embed(a: Sequence[Sequence[Quaternion]]) -> Matrix:
    """Replace each quaternion entry z + w j by [[z, w], [-conj w, conj z]]."""
    out = [[ZERO] * (2 * len(a[0])) for _ in range(2 * len(a))]
    for r, row in enumerate(a):
        for c, q in enumerate(row):
            z, w = _quat(q).complex_pair()
            out[2 * r][2 * c], out[2 * r][2 * c + 1] = z, w
            out[2 * r + 1][2 * c], out[2 * r + 1][2 * c + 1] = -w.conj(), z.conj()
    return out


def psi_inverse(b: Matrix):
    out = []
    for r in range(len(b) // 2):
        row = []
        for c in range(len(b[0]) // 2):
            z, w = b[2 * r][2 * c], b[2 * r][2 * c + 1]
            if b[2 * r + 1][2 * c] != -w.conj() or b[2 * r + 1][2 * c + 1] != z.conj():
                return None
            row.append(Quaternion(FieldElement(z.a, 0, z.c), FieldElement(z.b, 0, z.d), FieldElement(w.a, 0, w.c), FieldElement(w.b, 0, w.d)))
        out.append(row)
    return out


def quaternion_matmul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [[sum((a[i][t] * b[t][j] for t in range(k)), Quaternion()) for j in range(m)] for i in range(n)]


def quaternion_conj_transpose(a):
    return [[a[j][i].conj() for j in range(len(a))] for i in range(len(a[0]))]


def alpha_vec(v: Sequence[FieldElement]) -> list[FieldElement]:
    """C^n -> R^{2n}: each z = x + y i becomes (x, y)."""
    out = []
    for z in v:
        z = as_field(z)
        out += [FieldElement(z.a, 0, z.c), FieldElement(z.b, 0, z.d)]
    return out


def beta_vec(q: Sequence[Quaternion]) -> list[FieldElement]:
    """H^p -> C^{2p}: z + w j becomes (z, w)."""
    out = []
    for x in q:
        out += list(_quat(x).complex_pair())
    return out


def gamma_vec(q: Sequence[Quaternion]) -> list[FieldElement]:
    return alpha_vec(beta_vec(q))


def vec_mat(v: Sequence[FieldElement], a: Matrix) -> list[FieldElement]:
    return matmul([list(v)], a)[0]


# ---------------------------------------------------------------- exponentials

_COS = [(1, 0), (0, 1), (0, 0), (0, -1), (-1, 0), (0, -1), (0, 0), (0, 1)]
_SIN = [(0, 0), (0, 1), (1, 0), (0, 1), (0, 0), (0, -1), (-1, 0), (0, -1)]
_HALF = FieldElement(1) / 2


def _trig(table, c: int) -> FieldElement:
    rat, root = table[c % 8]
    return FieldElement(rat) + SQRT2 * _HALF * root


def cos_pi4(c: int) -> FieldElement:
    return _trig(_COS, c)


def sin_pi4(c: int) -> FieldElement:
    return _trig(_SIN, c)


Term = tuple[int, int, int]


def _validate_terms(terms: Iterable[Term], dim: int) -> list[Term]:
    seen: set[int] = set()
    out = []
    for c, i, j in terms:
        if not isinstance(c, int):
            raise ValueError("coefficients must be integer multiples of pi/4")
        if i == j:
            raise ValueError("e_i e_i is not a simple bivector")
        if not (1 <= i <= dim and 1 <= j <= dim):
            raise ValueError("bivector index out of range")
        if {i, j} & seen:
            raise ValueError("bivector terms must act on disjoint planes so that they commute")
        seen |= {i, j}
        out.append((c, i, j))
    return out


def bivector_from_terms(terms: Iterable[Term], dim: int) -> Multivector:
    """sum c_t e_i e_j, the bivector without its pi/4 factor."""
    out = Multivector(dim)
    for c, i, j in terms:
        out = out + Multivector.blade(dim, [i, j], c)
    return out


def terms_from_bivector(b: Multivector) -> list[Term]:
    """Read a bivector with integer coefficients back as (c, i, j) terms."""
    out = []
    for m, c in b.items():
        idx = blade_indices(m)
        if len(idx) != 2 or not c.is_rational() or c.to_fraction().denominator != 1:
            raise ValueError("need a bivector with integer coefficients")
        out.append((int(c.to_fraction()), idx[0], idx[1]))
    return out


def exp_pi4_bivector(terms: Iterable[Term], dim: int) -> Multivector:
    """exp of sum c_t (pi/4) e_i e_j over commuting, plane-disjoint terms."""
    out = Multivector.scalar(dim)
    for c, i, j in _validate_terms(terms, dim):
        out = out * (Multivector.scalar(dim, cos_pi4(c)) + Multivector.blade(dim, [i, j], sin_pi4(c)))
    return out


def exp_quarter_matrix(m: Matrix, c: int) -> Matrix:
    """exp(c (pi/4) M) for a matrix with M^2 = -E."""
    n = len(m)
    if matmul(m, m) != mat_scale(identity(n), -1):
        raise ValueError("closed-form exponential needs M^2 = -E")
    return mat_add(mat_scale(identity(n), cos_pi4(c)), mat_scale(m, sin_pi4(c)))


def exp_quarter_quaternion(u: Quaternion, c: int) -> Quaternion:
    """exp(c (pi/4) u) for a pure unit quaternion u."""
    if u.q[0] or u.norm2() != ONE:
        raise ValueError("need a pure unit quaternion")
    return Quaternion(cos_pi4(c)) + u * Quaternion(sin_pi4(c))


def sigma_I_terms(p: int) -> list[Term]:
    return [(1, 2 * j - 1, 2 * j) for j in range(1, 2 * p + 1)]


def sigma_J_terms(p: int) -> list[Term]:
    out = []
    for j in range(1, p + 1):
        out += [(1, 4 * j - 3, 4 * j - 1), (-1, 4 * j - 2, 4 * j)]
    return out


@lru_cache(maxsize=None)
def spin_s_I(p: int) -> Multivector:
    dim = 4 * p
    out = Multivector.scalar(dim)
    for j in range(1, 2 * p + 1):
        out = out * (Multivector.scalar(dim) + Multivector.blade(dim, [2 * j - 1, 2 * j])).scale(SQRT2 * _HALF)
    return out


@lru_cache(maxsize=None)
def spin_s_J(p: int) -> Multivector:
    dim = 4 * p
    one = Multivector.scalar(dim)
    out = one
    for j in range(1, p + 1):
        a = one + Multivector.blade(dim, [4 * j - 3, 4 * j - 1])
        b = one - Multivector.blade(dim, [4 * j - 2, 4 * j])
        out = out * (a * b).scale(_HALF)
    return out


def spin_I_generators(p: int) -> list[tuple[str, list[Term]]]:
    """The 4p^2 pi/4-graded bivectors sigma_j, sigma_jk, tilde sigma_jk (j < k)."""
    out = [(f"sigma_{j}", [(1, 2 * j - 1, 2 * j)]) for j in range(1, 2 * p + 1)]
    for j in range(1, 2 * p + 1):
        for k in range(j + 1, 2 * p + 1):
            out.append((f"sigma_{j}{k}", [(1, 2 * j - 1, 2 * k - 1), (1, 2 * j, 2 * k)]))
            out.append((f"tilde_sigma_{j}{k}", [(1, 2 * j - 1, 2 * k), (1, 2 * k - 1, 2 * j)]))
    return out


# ---------------------------------------------------------------- double cover


def _spin_inverse(s: Multivector) -> Multivector:
    if not s.is_even():
        raise NotSpinElement("Spin elements are even")
    sb = s.clifford_conj()
    n = s * sb
    if len(n.grades() - {0}) or n.is_zero():
        raise NotSpinElement("s times its conjugate is not a nonzero scalar")
    return sb.scale(n.scalar_part().inv())


def double_cover_matrix(s: Multivector) -> Matrix:
    """Row a holds the coordinates of s e_a s^{-1}."""
    dim = s.dim
    sinv = _spin_inverse(s)
    rows = []
    for a in range(1, dim + 1):
        img = s * Multivector.basis_vector(dim, a) * sinv
        if img.grades() - {1}:
            raise NotSpinElement("conjugation does not preserve vectors")
        rows.append([img.coeff(1 << b) for b in range(dim)])
    return rows


def _commutes(a: Matrix, b: Matrix) -> bool:
    return matmul(a, b) == matmul(b, a)


def is_special_orthogonal(a: Matrix) -> bool:
    n = len(a)
    return matmul(a, transpose(a)) == identity(n) and det(a) == ONE


def subgroup_membership(x, which: str) -> bool:
    """Membership in SO_I, SO_Q (matrices) or Spin_I, Spin_Q (even multivectors)."""
    if which in ("SO_I", "SO_Q"):
        n = len(x)
        if n % 4:
            raise ValueError("matrix size must be a multiple of 4")
        p = n // 4
        if any(len(row) != n for row in x):
            raise ValueError("matrix must be square")
        t = structure_triple(p)
        ok = is_special_orthogonal(x) and _commutes(x, [list(r) for r in t.I])
        if which == "SO_Q":
            ok = ok and _commutes(x, [list(r) for r in t.J])
        return ok
    if which in ("Spin_I", "Spin_Q"):
        if x.dim % 4:
            raise ValueError("algebra dimension must be a multiple of 4")
        p = x.dim // 4
        try:
            double_cover_matrix(x)
        except NotSpinElement:
            return False
        if x * x.clifford_conj() != Multivector.scalar(x.dim):
            return False
        si = spin_s_I(p)
        ok = si * x == x * si
        if which == "Spin_Q":
            sj = spin_s_J(p)
            ok = ok and sj * x == x * sj
        return ok
    raise ValueError(f"unknown subgroup {which!r}")


def sp_group_roundtrip(a) -> Matrix:
    """phi(psi(A)) for A in Sp(p), after checking A A* = E and psi(A) in SU(2p)."""
    n = len(a)
    prod = quaternion_matmul(a, quaternion_conj_transpose(a))
    if any(prod[i][j] != (Quaternion(1) if i == j else Quaternion()) for i in range(n) for j in range(n)):
        raise ValueError("matrix is not symplectic: A A* != E")
    b = psi_embed(a)
    bstar = [[b[j][i].conj() for j in range(len(b))] for i in range(len(b))]
    if matmul(b, bstar) != identity(len(b)) or det(b) != ONE:
        raise ArithmeticError("psi image is not in SU(2p)")
    out = phi_embed(b)
    if not subgroup_membership(out, "SO_Q"):
        raise ArithmeticError("phi(psi(A)) is not in SO_Q")
    return out


# ---------------------------------------------------------------- Lie algebra dictionary


def bivector_to_skew(b: Multivector) -> Matrix:
    """(1/2) e_i e_j corresponds to the skew matrix with +1 at (i, j) and -1 at (j, i)."""
    n = b.dim
    m = [[ZERO] * n for _ in range(n)]
    for mask, c in b.items():
        idx = blade_indices(mask)
        if len(idx) != 2:
            raise ValueError("not a bivector")
        i, j = idx[0] - 1, idx[1] - 1
        m[i][j] = m[i][j] + 2 * c
        m[j][i] = m[j][i] - 2 * c
    return m


def skew_to_bivector(m: Matrix) -> Multivector:
    n = len(m)
    out = Multivector(n)
    for i in range(n):
        for j in range(i + 1, n):
            if m[i][j]:
                out = out + Multivector.blade(n, [i + 1, j + 1], m[i][j] * _HALF)
    return out
