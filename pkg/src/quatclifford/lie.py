"""Bivector realizations of spin_I, spin_Q, sl_2p, sp_2p and the sl_p copy inside sp_2p."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

from .clifford import DimensionMismatch, Multivector
from .groups import bivector_to_skew, complex_structure, phi_inverse
from .linalg import Matrix, SparseSpanSolver, mat_add, mat_scale, matmul, span_rank, transpose
from .scalar_field import ONE, FieldElement, I
from .witt import dagger_product, f, fdag, idempotent_factor, primitive_idempotent

__all__ = [
    "TAGS",
    "BivectorBasis",
    "NotAnEigenvector",
    "algebra_basis",
    "bracket",
    "closure_defects",
    "span_contains",
    "conversion_table",
    "conversion_check",
    "cartan",
    "weight_of",
    "weyl_dim_sp",
    "weyl_dim_sp_roots",
    "highest_weight_vector",
    "highest_weight_cell_check",
    "sl_weight_pattern",
    "sp_shape_matrix",
    "is_sp_matrix",
    "dimension_ledger",
    "sp_invariance_check",
]

TAGS = ("spinI", "spinQ", "sl2p", "sp2p", "slp_inside")


class NotAnEigenvector(ValueError):
    pass


@dataclass(frozen=True)
class BivectorBasis:
    algebra: str
    p: int
    form: str
    elements: tuple
    names: tuple
    expected_real_dim: int
    real_form: bool = field(default=False)

    def __len__(self):
        return len(self.elements)

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra,
            "p": self.p,
            "form": self.form,
            "expected_real_dim": self.expected_real_dim,
            "elements": [{"name": n, "value": e.to_json()} for n, e in zip(self.names, self.elements)],
        }


def _e(p: int, *pairs: tuple[int, int, int]) -> Multivector:
    """sum c e_i e_j over (c, i, j)."""
    out = Multivector(4 * p)
    for c, i, j in pairs:
        out = out + Multivector.blade(4 * p, [i, j], c)
    return out


def _w(p: int, a: tuple[bool, int], b: tuple[bool, int]) -> Multivector:
    """Product of two Witt vectors; (True, j) is f†_j."""
    x = fdag(a[1], p) if a[0] else f(a[1], p)
    y = fdag(b[1], p) if b[0] else f(b[1], p)
    return x * y


def _name(a: tuple[bool, int], b: tuple[bool, int]) -> str:
    return ("f†" if a[0] else "f") + str(a[1]) + " " + ("f†" if b[0] else "f") + str(b[1])


D, N = True, False  # dagger flags


def _h_sympl(p: int, j: int) -> Multivector:
    return idempotent_factor(2 * j, p) - idempotent_factor(2 * j - 1, p)


def _spin_i(p: int):
    els, names = [], []
    for j in range(1, 2 * p + 1):
        els.append(_e(p, (1, 2 * j - 1, 2 * j)))
        names.append(f"e{2*j-1}e{2*j}")
    for j in range(1, 2 * p + 1):
        for k in range(j + 1, 2 * p + 1):
            els.append(_e(p, (1, 2 * j - 1, 2 * k - 1), (1, 2 * j, 2 * k)))
            names.append(f"e{2*j-1}e{2*k-1} + e{2*j}e{2*k}")
            els.append(_e(p, (1, 2 * j - 1, 2 * k), (1, 2 * k - 1, 2 * j)))
            names.append(f"e{2*j-1}e{2*k} + e{2*k-1}e{2*j}")
    return els, names


def _spin_q(p: int):
    els, names = [], []
    for j in range(1, p + 1):
        a, b, c, d = 4 * j - 3, 4 * j - 2, 4 * j - 1, 4 * j
        els += [_e(p, (1, a, b), (-1, c, d)), _e(p, (1, a, c), (1, b, d)), _e(p, (1, a, d), (-1, b, c))]
        names += [f"e{a}e{b} - e{c}e{d}", f"e{a}e{c} + e{b}e{d}", f"e{a}e{d} - e{b}e{c}"]
    for j in range(1, p + 1):
        for k in range(j + 1, p + 1):
            a, b, c, d = 4 * j - 3, 4 * j - 2, 4 * j - 1, 4 * j
            A, B, C, E = 4 * k - 3, 4 * k - 2, 4 * k - 1, 4 * k
            fam = [
                ((1, a, A), (1, b, B), (1, c, C), (1, d, E)),
                ((1, a, B), (-1, b, A), (-1, c, E), (1, d, C)),
                ((1, a, C), (1, b, E), (-1, c, A), (-1, d, B)),
                ((1, a, E), (-1, b, C), (1, c, B), (-1, d, A)),
            ]
            for terms in fam:
                els.append(_e(p, *terms))
                names.append(" ".join(f"{'+' if t[0] > 0 else '-'} e{t[1]}e{t[2]}" for t in terms).lstrip("+ "))
    return els, names


def _sl2p(p: int, form: str):
    els, names = [], []
    n = 2 * p
    if form == "e":
        for j in range(1, n):
            els.append(_e(p, (1, 2 * j - 1, 2 * j), (-1, 2 * j + 1, 2 * j + 2)))
            names.append(f"e{2*j-1}e{2*j} - e{2*j+1}e{2*j+2}")
        for j in range(1, n + 1):
            for k in range(j + 1, n + 1):
                els.append(_e(p, (1, 2 * j - 1, 2 * k - 1), (1, 2 * j, 2 * k)))
                names.append(f"e{2*j-1}e{2*k-1} + e{2*j}e{2*k}")
        for j in range(1, n + 1):
            for k in range(j + 1, n + 1):
                els.append(_e(p, (1, 2 * j - 1, 2 * k), (-1, 2 * j, 2 * k - 1)))
                names.append(f"e{2*j-1}e{2*k} - e{2*j}e{2*k-1}")
        return els, names
    for j in range(1, n):
        els.append(idempotent_factor(j + 1, p) - idempotent_factor(j, p))
        names.append(f"f{j+1} f†{j+1} - f{j} f†{j}")
    for sgn, label in ((1, "+"), (-1, "-")):
        for j in range(1, n + 1):
            for k in range(j + 1, n + 1):
                els.append(_w(p, (D, j), (N, k)) + _w(p, (N, j), (D, k)).scale(sgn))
                names.append(f"{_name((D, j), (N, k))} {label} {_name((N, j), (D, k))}")
    return els, names


def _sp2p_witt(p: int):
    els, names = [], []
    for j in range(1, p + 1):
        els.append(_h_sympl(p, j))
        names.append(f"H{j}^sympl")
    for j in range(1, p + 1):
        els += [_w(p, (D, 2 * j - 1), (N, 2 * j)), _w(p, (D, 2 * j), (N, 2 * j - 1))]
        names += [_name((D, 2 * j - 1), (N, 2 * j)), _name((D, 2 * j), (N, 2 * j - 1))]
    e3, n3 = _slp_offdiag(p)
    els += e3
    names += n3
    for j in range(1, p + 1):
        for k in range(j + 1, p + 1):
            pairs = [
                (((N, 2 * j), (D, 2 * k - 1)), ((D, 2 * j - 1), (N, 2 * k))),
                (((N, 2 * k - 1), (D, 2 * j)), ((D, 2 * k), (N, 2 * j - 1))),
            ]
            for (x1, x2), (y1, y2) in pairs:
                els.append(_w(p, x1, x2) - _w(p, y1, y2))
                names.append(f"{_name(x1, x2)} - {_name(y1, y2)}")
    return els, names


def _slp_offdiag(p: int):
    els, names = [], []
    for j in range(1, p + 1):
        for k in range(j + 1, p + 1):
            pairs = [
                (((D, 2 * j), (N, 2 * k)), ((N, 2 * j - 1), (D, 2 * k - 1))),
                (((D, 2 * k), (N, 2 * j)), ((N, 2 * k - 1), (D, 2 * j - 1))),
            ]
            for (x1, x2), (y1, y2) in pairs:
                els.append(_w(p, x1, x2) + _w(p, y1, y2))
                names.append(f"{_name(x1, x2)} + {_name(y1, y2)}")
    return els, names


def _slp(p: int):
    els, names = [], []
    for j in range(1, p):
        els.append(_h_sympl(p, j) - _h_sympl(p, p))
        names.append(f"H{j}^sl")
    e3, n3 = _slp_offdiag(p)
    return els + e3, names + n3


@lru_cache(maxsize=None)
def algebra_basis(p: int, algebra: str, form: str = "witt") -> BivectorBasis:
    """The listed basis of a Lie algebra of bivectors in C_{4p}.

    form is "witt" or "e"; spinI and spinQ only come in e-form and sp2p's
    e-form coincides with the spinQ list.
    """
    if p < 1:
        raise ValueError("p must be at least 1")
    if form not in ("witt", "e"):
        raise ValueError("form must be 'witt' or 'e'")
    real_form = False
    if algebra == "spinI":
        els, names = _spin_i(p)
        real_dim, real_form, form = 4 * p * p, True, "e"
    elif algebra == "spinQ":
        els, names = _spin_q(p)
        real_dim, real_form, form = p * (2 * p + 1), True, "e"
    elif algebra == "sl2p":
        els, names = _sl2p(p, form)
        real_dim = 2 * (4 * p * p - 1)
    elif algebra == "sp2p":
        els, names = _spin_q(p) if form == "e" else _sp2p_witt(p)
        real_dim = 2 * p * (2 * p + 1)
    elif algebra == "slp_inside":
        if form == "e":
            raise ValueError("the sl_p copy is listed in Witt form only")
        els, names = _slp(p)
        real_dim = 2 * (p * p - 1)
    else:
        raise ValueError(f"unknown algebra {algebra!r}; expected one of {TAGS}")
    for e in els:
        if e.grades() != {2}:
            raise ArithmeticError(f"basis element {e} is not a pure bivector")
    if span_rank([dict(e.items()) for e in els]) != len(els):
        raise ArithmeticError(f"{algebra} basis is linearly dependent")
    return BivectorBasis(algebra, p, form, tuple(els), tuple(names), real_dim, real_form)


def bracket(x: Multivector, y: Multivector) -> Multivector:
    if x.dim != y.dim:
        raise DimensionMismatch(f"C_{x.dim} vs C_{y.dim}")
    return x * y - y * x


@lru_cache(maxsize=None)
def _solver(basis: BivectorBasis) -> SparseSpanSolver:
    return SparseSpanSolver([dict(e.items()) for e in basis.elements])


def span_contains(basis: BivectorBasis, x: Multivector) -> bool:
    return _solver(basis).contains(dict(x.items()))


def closure_defects(basis: BivectorBasis) -> list[tuple[str, str]]:
    """Pairs whose bracket leaves the span (empty for a Lie algebra)."""
    bad = []
    els = basis.elements
    for a in range(len(els)):
        for b in range(a + 1, len(els)):
            if not span_contains(basis, bracket(els[a], els[b])):
                bad.append((basis.names[a], basis.names[b]))
    return bad


# ---------------------------------------------------------------- conversion table


def conversion_table() -> list[tuple[str, Multivector, Multivector]]:
    """The ten Witt-form / e-form identities for sp_4(C), as (label, witt side, e side)."""
    p = 2
    q = Fraction(-1, 4)

    def e(*terms):
        # terms are (real, imag, i, j)
        out = Multivector(8)
        for re, im, i, j in terms:
            out = out + Multivector.blade(8, [i, j], FieldElement(re) + I * im)
        return out

    w = lambda a, b: _w(p, a, b)
    rows = [
        ("H1^sympl", _h_sympl(p, 1), e((0, 1, 1, 2), (0, -1, 3, 4)).scale(FieldElement(Fraction(1, 2)))),
        ("H2^sympl", _h_sympl(p, 2), e((0, 1, 5, 6), (0, -1, 7, 8)).scale(FieldElement(Fraction(1, 2)))),
        ("f†1 f2", w((D, 1), (N, 2)), e((1, 0, 1, 3), (1, 0, 2, 4), (0, -1, 1, 4), (0, 1, 2, 3)).scale(q)),
        ("f†2 f1", w((D, 2), (N, 1)), e((-1, 0, 1, 3), (-1, 0, 2, 4), (0, -1, 1, 4), (0, 1, 2, 3)).scale(q)),
        ("f†3 f4", w((D, 3), (N, 4)), e((1, 0, 5, 7), (1, 0, 6, 8), (0, -1, 5, 8), (0, 1, 6, 7)).scale(q)),
        ("f†4 f3", w((D, 4), (N, 3)), e((-1, 0, 5, 7), (-1, 0, 6, 8), (0, -1, 5, 8), (0, 1, 6, 7)).scale(q)),
        (
            "f†2 f4 + f1 f†3",
            w((D, 2), (N, 4)) + w((N, 1), (D, 3)),
            e((1, 0, 3, 7), (1, 0, 4, 8), (1, 0, 1, 5), (1, 0, 2, 6), (0, -1, 3, 8), (0, 1, 4, 7), (0, 1, 1, 6), (0, -1, 2, 5)).scale(q),
        ),
        (
            "f†4 f2 + f3 f†1",
            w((D, 4), (N, 2)) + w((N, 3), (D, 1)),
            e((-1, 0, 3, 7), (-1, 0, 4, 8), (-1, 0, 1, 5), (-1, 0, 2, 6), (0, -1, 3, 8), (0, 1, 4, 7), (0, 1, 1, 6), (0, -1, 2, 5)).scale(q),
        ),
        (
            "f2 f†3 - f†1 f4",
            w((N, 2), (D, 3)) - w((D, 1), (N, 4)),
            e((1, 0, 3, 5), (1, 0, 4, 6), (-1, 0, 1, 7), (-1, 0, 2, 8), (0, -1, 4, 5), (0, 1, 3, 6), (0, 1, 1, 8), (0, -1, 2, 7)).scale(q),
        ),
        (
            "f3 f†2 - f†4 f1",
            w((N, 3), (D, 2)) - w((D, 4), (N, 1)),
            e((-1, 0, 3, 5), (-1, 0, 4, 6), (1, 0, 1, 7), (1, 0, 2, 8), (0, -1, 4, 5), (0, 1, 3, 6), (0, 1, 1, 8), (0, -1, 2, 7)).scale(q),
        ),
    ]
    return rows


def conversion_check() -> list[tuple[str, bool]]:
    return [(label, lhs == rhs) for label, lhs, rhs in conversion_table()]


# ---------------------------------------------------------------- weights


def cartan(p: int, algebra: str) -> list[Multivector]:
    """Ordered Cartan elements: H_j = I_j - I_{2p} (sl2p), H_j^sympl (sp2p) or H_j^sl (slp_inside)."""
    if algebra == "sl2p":
        return [idempotent_factor(j, p) - idempotent_factor(2 * p, p) for j in range(1, 2 * p)]
    if algebra == "sp2p":
        return [_h_sympl(p, j) for j in range(1, p + 1)]
    if algebra == "slp_inside":
        return [_h_sympl(p, j) - _h_sympl(p, p) for j in range(1, p)]
    raise ValueError(f"no Cartan list for {algebra!r}")


def weight_of(p: int, algebra, v: Multivector) -> tuple[FieldElement, ...]:
    """Eigenvalues of v under the Cartan elements, acting by left multiplication.

    algebra is a tag or an explicit list of Cartan elements.
    """
    hs = cartan(p, algebra) if isinstance(algebra, str) else list(algebra)
    if v.is_zero():
        raise NotAnEigenvector("the zero vector has no weight")
    mask, coeff = next(iter(v.items()))
    out = []
    for h in hs:
        img = h * v
        lam = img.coeff(mask) / coeff
        if img != v.scale(lam):
            raise NotAnEigenvector(f"{v} is not an eigenvector of {h}")
        out.append(lam)
    return tuple(out)


# ---------------------------------------------------------------- Weyl dimension


def weyl_dim_sp(p: int, r: int) -> int:
    """(2/r!) (2p+1)(2p)...(2p+3-r) (p-r+1), the falling product having r-1 factors."""
    if not 0 <= r <= p:
        raise ValueError(f"need 0 <= r <= p, got r={r}, p={p}")
    num = 2 * factorial(2 * p + 1) * (p - r + 1)
    den = factorial(r) * factorial(2 * p + 2 - r)
    if num % den:
        raise ArithmeticError("Weyl closed form is not an integer")
    return num // den


def weyl_dim_sp_roots(p: int, weight: Sequence[int]) -> int:
    """Product over positive roots 2L_i, L_i +- L_j of <a, mu+delta>/<a, delta>."""
    if len(weight) != p:
        raise ValueError("weight length must be p")
    delta = [p - i for i in range(p)]
    md = [w + d for w, d in zip(weight, delta)]
    out = Fraction(1)
    for i in range(p):
        out *= Fraction(2 * md[i], 2 * delta[i])
        for j in range(i + 1, p):
            out *= Fraction(md[i] + md[j], delta[i] + delta[j])
            out *= Fraction(md[i] - md[j], delta[i] - delta[j])
    if out.denominator != 1:
        raise ArithmeticError("Weyl product is not an integer")
    return int(out)


def highest_weight_vector(p: int, a: int, b: int) -> Multivector:
    """f†_{2p} f†_{2p-2} ... f†_{2a+2} f†_1 f†_3 ... f†_{2(p-b)-1} I.

    The even run has p - a factors and the odd run p - b.
    """
    if not (0 <= a <= p and 0 <= b <= p):
        raise ValueError("need 0 <= a, b <= p")
    evens = list(range(2 * p, 2 * a, -2))
    odds = list(range(1, 2 * (p - b), 2))
    return dagger_product(evens + odds, p) * primitive_idempotent(p)


def sl_weight_pattern(p: int, a: int, b: int) -> list[int]:
    """The three-case pattern of 2's, 1's and 0's for H^sl_j, j = 1..p-1."""
    out = []
    for j in range(1, p):
        if a + b < p:
            out.append(2 if j <= a else 1 if j <= p - b else 0)
        elif a + b == p:
            out.append(2 if j <= a else 0)
        else:
            out.append(2 if j <= p - b else 1 if j <= a else 0)
    return out


def highest_weight_cell_check(p: int, r: int) -> list[dict]:
    """For a + b = r: the highest weight vector lies in S^{2p-r}, is killed by Q and has the expected weights.

    The listed ledger counts weights up to the central shift of gl_p: when
    b = 0 the trivial factor contributes (1, ..., 1) there, so the
    measured H^sl eigenvalues are compared modulo a constant vector.
    """
    from .cells import op_Q
    from .witt import spinor_basis

    if not 0 <= r <= p:
        raise ValueError("need 0 <= r <= p")
    Q = op_Q(p)
    out = []
    for a in range(r + 1):
        b = r - a
        v = highest_weight_vector(p, a, b)
        in_deg = spinor_basis(p, 2 * p - r).contains(v)
        killed = Q(v).is_zero()
        sl_w = [int(x.to_fraction()) for x in weight_of(p, "slp_inside", v)]
        sp_w = [int(x.to_fraction()) for x in weight_of(p, "sp2p", v)]
        ledger = sl_weight_pattern(p, a, b)
        shifts = {m - l for m, l in zip(sl_w, ledger)}
        exact = sl_w == ledger
        up_to_shift = len(shifts) <= 1
        entry = {
            "a": a,
            "b": b,
            "in_degree": in_deg,
            "killed_by_Q": killed,
            "sl_weight": sl_w,
            "ledger": ledger,
            "ledger_exact": exact,
            "ledger_up_to_shift": up_to_shift,
            "sp_weight": sp_w,
        }
        if b == 0:
            entry["sp_weight_expected"] = [1] * a + [0] * (p - a)
        entry["ok"] = in_deg and killed and (exact if b > 0 and a < p else up_to_shift) and (
            b != 0 or sp_w == entry["sp_weight_expected"]
        )
        out.append(entry)
    return out


# ---------------------------------------------------------------- matrix side


def _split(x: FieldElement) -> tuple[FieldElement, FieldElement]:
    """Real and imaginary parts."""
    return FieldElement(x.a, 0, x.c), FieldElement(x.b, 0, x.d)


def sp_shape_matrix(b: Multivector) -> Matrix | None:
    """The complex 2p x 2p matrix of a bivector commuting with the complex structure.

    Real and imaginary coefficient parts are mapped separately through the
    skew-matrix dictionary and phi^{-1}; returns None when either part
    fails to commute with the complex structure.
    """
    re = Multivector(b.dim, {m: _split(c)[0] for m, c in b.items()})
    im = Multivector(b.dim, {m: _split(c)[1] for m, c in b.items()})
    a_re = phi_inverse(bivector_to_skew(re))
    a_im = phi_inverse(bivector_to_skew(im))
    if a_re is None or a_im is None:
        return None
    return mat_add(a_re, mat_scale(a_im, I))


def is_sp_matrix(a: Matrix) -> bool:
    """A^T Omega + Omega A = 0 with Omega the 2p x 2p complex structure."""
    n = len(a)
    if n % 2:
        return False
    om = complex_structure(n // 2)
    lhs = mat_add(matmul(transpose(a), om), matmul(om, a))
    return all(not x for row in lhs for x in row)


# ---------------------------------------------------------------- dimension ledger


def dimension_ledger(p: int) -> list[dict]:
    """Real dimensions from the overview diagram next to values counted from bases."""

    def counted(tag):
        return 2 * len(algebra_basis(p, tag))

    m = 4 * p
    rows = [
        ("C_p^(2)", p * (p - 1), p * (p - 1)),
        ("C_2p^(2)", 2 * p * (2 * p - 1), 2 * p * (2 * p - 1)),
        ("C_4p^(2)", 4 * p * (4 * p - 1), 2 * span_rank([{mm: ONE} for mm in range(1 << m) if bin(mm).count("1") == 2])),
        ("sl_p", 2 * (p * p - 1), counted("slp_inside")),
        ("sl_2p", 2 * (4 * p * p - 1), counted("sl2p")),
        ("sp_p", p * (p + 1), p * (p + 1)),
        ("sp_2p", 2 * p * (2 * p + 1), counted("sp2p")),
    ]
    return [{"space": n, "diagram": d, "counted": c, "ok": d == c} for n, d, c in rows]


# ---------------------------------------------------------------- invariance of cells


def sp_invariance_check(p: int) -> dict:
    """P, Q and every cell projector commute with each sp_2p basis bivector; each cell is invariant.

    Returns a dict of failure lists keyed by what failed (all empty on success).
    """
    from .cells import cell_basis, cell_indices, left_mult, projector_matrix, symbol
    from .witt import spinor_basis

    basis = algebra_basis(p, "sp2p", "witt")
    fails: dict[str, list] = {"commute_P": [], "commute_Q": [], "commute_projector": [], "cell_invariance": []}
    for name, b in zip(basis.names, basis.elements):
        L = left_mult(b, p, ("sp", name))
        for which in ("P", "Q"):
            # [L_b, L_x] = L_[b, x], so it suffices that [b, x] kills every spinor
            c = bracket(b, symbol(which, p))
            if c and not _kills_spinors(c, p):
                fails["commute_" + which].append(name)
        for r in range(2 * p + 1):
            space = spinor_basis(p, r)
            m = L.matrix_on(space)
            for s in cell_indices(p, r):
                pi = projector_matrix(p, r, s)
                if matmul(m, pi) != matmul(pi, m):
                    fails["commute_projector"].append((name, r, s))
                cell = cell_basis(p, r, s)
                if any(not cell.contains(b * v) for v in cell.basis):
                    fails["cell_invariance"].append((name, r, s))
    return fails


def _kills_spinors(x: Multivector, p: int) -> bool:
    from .witt import full_spinor_space

    return all((x * v).is_zero() for v in full_spinor_space(p).basis)
