"""Clifford-valued polynomials and the Euclidean, hermitian and quaternionic Dirac operators.

Polynomials live in the real coordinates X_1..X_{4p}; x_k = X_{2k-1} and
y_k = X_{2k}.  Every operator here is first order, sum_a c_a d/dX_a, and
is stored through its symbol (c_1, ..., c_{4p}), a list of 1-vectors
acting by left multiplication.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

from .clifford import Multivector
from .groups import double_cover_matrix, structure_matrix
from .linalg import nullspace, transpose
from .scalar_field import ONE, ZERO, FieldElement, I, as_field
from .witt import apply_structure, f, fdag, full_spinor_space, homogeneous_parts

__all__ = [
    "KINDS",
    "Monomial",
    "CliffordPolynomial",
    "operator_symbol",
    "apply_dirac",
    "laplacian",
    "spanning_set",
    "operator_identity_suite",
    "MonogenicResult",
    "is_monogenic",
    "hermitian_componentwise_check",
    "twist_vector",
    "twist_witt",
    "quaternionic_monogenic_basis",
    "l_action",
]

KINDS = ("D", "D_I", "D_J", "D_K", "dz", "dz_dag", "dzJ", "dzJ_dag")
HALF = FieldElement(1) / 2

Monomial = tuple  # exponent tuple of length 4p


def _unit(p: int, alpha: int) -> Monomial:
    e = [0] * (4 * p)
    e[alpha - 1] = 1
    return tuple(e)


class CliffordPolynomial:
    """Finite sum of monomials in X_1..X_{4p} with C_{4p} coefficients."""

    __slots__ = ("p", "_terms")

    def __init__(self, p: int, terms: Mapping[Monomial, Multivector] | None = None):
        if p < 1:
            raise ValueError("p must be at least 1")
        self.p = p
        clean = {}
        for mono, mv in (terms or {}).items():
            mono = tuple(int(x) for x in mono)
            if len(mono) != 4 * p or any(x < 0 for x in mono):
                raise ValueError(f"bad exponent tuple {mono}")
            if not isinstance(mv, Multivector):
                mv = Multivector.scalar(4 * p, mv)
            if mv.dim != 4 * p:
                raise ValueError("coefficient lives in the wrong algebra")
            if mv:
                clean[mono] = clean[mono] + mv if mono in clean else mv
        self._terms = {m: v for m, v in sorted(clean.items()) if v}

    @classmethod
    def _wrap(cls, p: int, terms: dict) -> "CliffordPolynomial":
        obj = object.__new__(cls)
        obj.p = p
        obj._terms = {m: terms[m] for m in sorted(terms) if terms[m]}
        return obj

    # constructors
    @classmethod
    def constant(cls, p: int, value) -> "CliffordPolynomial":
        mv = value if isinstance(value, Multivector) else Multivector.scalar(4 * p, value)
        return cls(p, {(0,) * (4 * p): mv})

    @classmethod
    def variable(cls, p: int, alpha: int) -> "CliffordPolynomial":
        if not 1 <= alpha <= 4 * p:
            raise ValueError(f"X_{alpha} is not a coordinate for p={p}")
        return cls(p, {_unit(p, alpha): Multivector.scalar(4 * p)})

    @classmethod
    def z(cls, p: int, k: int) -> "CliffordPolynomial":
        """z_k = x_k + i y_k."""
        return cls.variable(p, 2 * k - 1) + cls.variable(p, 2 * k) * I

    @classmethod
    def zbar(cls, p: int, k: int) -> "CliffordPolynomial":
        return cls.variable(p, 2 * k - 1) - cls.variable(p, 2 * k) * I

    @classmethod
    def vector_variable(cls, p: int) -> "CliffordPolynomial":
        """X = sum_a X_a e_a."""
        return cls(p, {_unit(p, a): Multivector.basis_vector(4 * p, a) for a in range(1, 4 * p + 1)})

    # access
    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def coefficient(self, mono: Monomial) -> Multivector:
        return self._terms.get(tuple(mono), Multivector(4 * self.p))

    # arithmetic
    def _coerce(self, other) -> "CliffordPolynomial":
        if isinstance(other, CliffordPolynomial):
            if other.p != self.p:
                raise ValueError("polynomials over different p")
            return other
        return CliffordPolynomial.constant(self.p, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for m, v in other._terms.items():
            out[m] = out[m] + v if m in out else v
        return CliffordPolynomial._wrap(self.p, out)

    __radd__ = __add__

    def __neg__(self):
        return CliffordPolynomial._wrap(self.p, {m: -v for m, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        """Right multiplication by a polynomial, multivector or scalar (Clifford order kept)."""
        if isinstance(other, CliffordPolynomial):
            if other.p != self.p:
                raise ValueError("polynomials over different p")
            out: dict = {}
            for m1, v1 in self._terms.items():
                for m2, v2 in other._terms.items():
                    m = tuple(a + b for a, b in zip(m1, m2))
                    v = v1 * v2
                    out[m] = out[m] + v if m in out else v
            return CliffordPolynomial._wrap(self.p, out)
        if isinstance(other, Multivector):
            return CliffordPolynomial._wrap(self.p, {m: v * other for m, v in self._terms.items()})
        c = as_field(other)
        if c is NotImplemented:
            return NotImplemented
        return CliffordPolynomial._wrap(self.p, {m: v.scale(c) for m, v in self._terms.items()})

    def __rmul__(self, other):
        """Left multiplication by a multivector or scalar."""
        if isinstance(other, Multivector):
            return CliffordPolynomial._wrap(self.p, {m: other * v for m, v in self._terms.items()})
        c = as_field(other)
        if c is NotImplemented:
            return NotImplemented
        return CliffordPolynomial._wrap(self.p, {m: v.scale(c) for m, v in self._terms.items()})

    def __pow__(self, n: int):
        out = CliffordPolynomial.constant(self.p, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, CliffordPolynomial):
            return self.p == other.p and self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash((self.p, tuple(self._terms.items())))

    def partial(self, alpha: int) -> "CliffordPolynomial":
        """d/dX_alpha."""
        k = alpha - 1
        out = {}
        for m, v in self._terms.items():
            e = m[k]
            if e:
                mm = m[:k] + (e - 1,) + m[k + 1 :]
                out[mm] = v.scale(e) if e != 1 else v
        return CliffordPolynomial._wrap(self.p, out)

    def map_values(self, fn) -> "CliffordPolynomial":
        return CliffordPolynomial._wrap(self.p, {m: fn(v) for m, v in self._terms.items()})

    # display and serialization
    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, v in self._terms.items():
            mono = "*".join(f"X{i+1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e)
            parts.append(f"[{v}]" + ("*" + mono if mono else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"CliffordPolynomial(p={self.p}, {self})"

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "terms": [
                {"exps": {str(i + 1): e for i, e in enumerate(m) if e}, "mv": v.to_json()}
                for m, v in self._terms.items()
            ],
        }

    @classmethod
    def from_json(cls, data) -> "CliffordPolynomial":
        p = int(data["p"])
        terms: dict = {}
        for t in data["terms"]:
            e = [0] * (4 * p)
            for k, v in t.get("exps", {}).items():
                idx = int(k)
                if not 1 <= idx <= 4 * p:
                    raise ValueError(f"variable index {idx} outside 1..{4 * p}")
                e[idx - 1] = int(v)
            mv = Multivector.from_json(t["mv"])
            m = tuple(e)
            terms[m] = terms[m] + mv if m in terms else mv
        return cls(p, terms)


# ---------------------------------------------------------------- operators


def _row_vector(matrix, a: int, p: int) -> Multivector:
    """sum_b M[a][b] e_b: the image of e_a under the row action."""
    return Multivector(4 * p, {1 << b: matrix[a - 1][b] for b in range(4 * p) if matrix[a - 1][b]})


@lru_cache(maxsize=None)
def operator_symbol(kind: str, p: int) -> tuple[Multivector, ...]:
    """(c_1, ..., c_{4p}) with operator = sum_a c_a d/dX_a."""
    n = 4 * p
    if kind == "D":
        return tuple(Multivector.basis_vector(n, a) for a in range(1, n + 1))
    if kind in ("D_I", "D_J", "D_K"):
        m = structure_matrix(kind[-1], p)
        return tuple(_row_vector(m, a, p) for a in range(1, n + 1))
    c = [Multivector(n)] * n
    half_i = HALF * I
    if kind in ("dz", "dz_dag"):
        # d/dz_k = (d/dx_k - i d/dy_k)/2 and d/dzbar_k = (d/dx_k + i d/dy_k)/2
        for k in range(1, 2 * p + 1):
            if kind == "dz":
                w, sy = fdag(k, p), -half_i
            else:
                w, sy = f(k, p), half_i
            c[2 * k - 2] = c[2 * k - 2] + w.scale(HALF)
            c[2 * k - 1] = c[2 * k - 1] + w.scale(sy)
        return tuple(c)
    if kind in ("dzJ", "dzJ_dag"):
        # sum_j d/dz_{2j} f_{2j-1} - d/dz_{2j-1} f_{2j}, and the daggered twin
        dag = kind == "dzJ_dag"
        sy = half_i if dag else -half_i
        w = fdag if dag else f
        for j in range(1, p + 1):
            for k, vec in ((2 * j, w(2 * j - 1, p)), (2 * j - 1, -w(2 * j, p))):
                c[2 * k - 2] = c[2 * k - 2] + vec.scale(HALF)
                c[2 * k - 1] = c[2 * k - 1] + vec.scale(sy)
        return tuple(c)
    raise ValueError(f"unknown Dirac operator {kind!r}; expected one of {KINDS}")


@lru_cache(maxsize=1 << 16)
def _symbol_times(kind: str, p: int, alpha: int, value: Multivector) -> Multivector:
    return operator_symbol(kind, p)[alpha - 1] * value


def apply_dirac(kind: str, F: CliffordPolynomial) -> CliffordPolynomial:
    """sum_a c_a dF/dX_a for the operator named by kind."""
    p = F.p
    operator_symbol(kind, p)
    out: dict = {}
    for m, v in F.items():
        for k, e in enumerate(m):
            if not e:
                continue
            mm = m[:k] + (e - 1,) + m[k + 1 :]
            term = _symbol_times(kind, p, k + 1, v)
            if not term:
                continue
            if e != 1:
                term = term.scale(e)
            out[mm] = out[mm] + term if mm in out else term
    return CliffordPolynomial._wrap(p, out)


def laplacian(F: CliffordPolynomial) -> CliffordPolynomial:
    out = CliffordPolynomial(F.p)
    for a in range(1, 4 * F.p + 1):
        out = out + F.partial(a).partial(a)
    return out


def _monomials(p: int, max_degree: int) -> list[Monomial]:
    n = 4 * p
    out = []
    for d in range(max_degree + 1):
        for combo in combinations_with_replacement(range(n), d):
            e = [0] * n
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


def spanning_set(p: int, max_degree: int = 3) -> Iterable[CliffordPolynomial]:
    """Every monomial of degree <= max_degree times every spinor basis element."""
    spinors = full_spinor_space(p).basis
    for m in _monomials(p, max_degree):
        for s in spinors:
            yield CliffordPolynomial._wrap(p, {m: s})


def twist_witt(kind: str, x: Multivector) -> Multivector:
    """Structure matrix acting on a 1-vector (row action)."""
    p = x.dim // 4
    return apply_structure(structure_matrix(kind, p), x)


def _quaternion_projection(p: int) -> dict:
    """Formal check of (1 +- j J)[D]/2 against the hermitian operators, j a formal unit.

    Operators are compared through their symbols as pairs (j^0 part, j^1 part).
    """
    n = 4 * p
    D, DJ = operator_symbol("D", p), operator_symbol("D_J", p)
    dz, dzd = operator_symbol("dz", p), operator_symbol("dz_dag", p)
    dJ, dJd = operator_symbol("dzJ", p), operator_symbol("dzJ_dag", p)
    out = {}
    for sign in (1, -1):
        lhs = [(D[a].scale(HALF), DJ[a].scale(HALF * sign)) for a in range(n)]
        j_linear = [(dz[a] - dzd[a], (dJ[a] - dJd[a]).scale(sign)) for a in range(n)]
        literal = [(dz[a] - dzd[a] - dJd[a].scale(sign), dJ[a].scale(sign)) for a in range(n)]
        key = "+" if sign > 0 else "-"
        out[f"j_linear{key}"] = lhs == j_linear
        out[f"literal{key}"] = lhs == literal
    return out


def operator_identity_suite(p: int, max_degree: int = 3) -> dict:
    """Check the linear-combination dictionary between the eight operators.

    Returns {identity name: (ok, counterexample or None)} over the spanning
    set, plus symbol-level and twist-table checks.
    """
    two = FieldElement(2)
    names = {
        "D = 2(dz - dz_dag)": lambda r: (r["D"], (r["dz"] - r["dz_dag"]) * two),
        "i I[D] = 2(dz + dz_dag)": lambda r: (r["D_I"] * I, (r["dz"] + r["dz_dag"]) * two),
        "J[D] = 2(dzJ - dzJ_dag)": lambda r: (r["D_J"], (r["dzJ"] - r["dzJ_dag"]) * two),
        "i K[D] = 2(dzJ + dzJ_dag)": lambda r: (r["D_K"] * I, (r["dzJ"] + r["dzJ_dag"]) * two),
        "-D^2 = Laplacian": None,
        "dz^2 = 0": None,
        "dz_dag^2 = 0": None,
    }
    report: dict = {k: (True, None) for k in names}
    for F in spanning_set(p, max_degree):
        res = {k: apply_dirac(k, F) for k in KINDS}
        for name, fn in names.items():
            if not report[name][0]:
                continue
            if fn is not None:
                lhs, rhs = fn(res)
            elif name.startswith("-D^2"):
                lhs, rhs = -apply_dirac("D", res["D"]), laplacian(F)
            elif name == "dz^2 = 0":
                lhs, rhs = apply_dirac("dz", res["dz"]), CliffordPolynomial(p)
            else:
                lhs, rhs = apply_dirac("dz_dag", res["dz_dag"]), CliffordPolynomial(p)
            if lhs != rhs:
                report[name] = (False, F.to_json())
    # twist table for the Witt vectors under J
    table = []
    for j in range(1, p + 1):
        table += [
            (twist_witt("J", f(2 * j - 1, p)) == -fdag(2 * j, p)),
            (twist_witt("J", f(2 * j, p)) == fdag(2 * j - 1, p)),
            (twist_witt("J", fdag(2 * j - 1, p)) == -f(2 * j, p)),
            (twist_witt("J", fdag(2 * j, p)) == f(2 * j - 1, p)),
        ]
    report["J twist table on Witt vectors"] = (all(table), None)
    sym_dz = operator_symbol("dz", p)
    sym_dzd = operator_symbol("dz_dag", p)
    report["dzJ = J[dz] (symbols)"] = (
        [twist_witt("J", c) for c in sym_dz] == list(operator_symbol("dzJ", p)),
        None,
    )
    report["dzJ_dag = J[dz_dag] (symbols)"] = (
        [twist_witt("J", c) for c in sym_dzd] == list(operator_symbol("dzJ_dag", p)),
        None,
    )
    qp = _quaternion_projection(p)
    report["(1 +- jJ)[D]/2 expansion, j-linear reading"] = (qp["j_linear+"] and qp["j_linear-"], None)
    return report


# ---------------------------------------------------------------- monogenicity

SYSTEMS = {
    "euclidean": ("D",),
    "hermitian": ("dz", "dz_dag"),
    "hermitian_real": ("D", "D_I"),
    "quaternionic": ("dz", "dz_dag", "dzJ", "dzJ_dag"),
    "quaternionic_real": ("D", "D_I", "D_J", "D_K"),
}


class MonogenicResult:
    """Truthy verdict plus the first operator image that is nonzero."""

    __slots__ = ("ok", "operator", "witness")

    def __init__(self, ok: bool, operator: str | None = None, witness: CliffordPolynomial | None = None):
        self.ok, self.operator, self.witness = ok, operator, witness

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {
            "monogenic": self.ok,
            "operator": self.operator,
            "witness": None if self.witness is None else self.witness.to_json(),
        }

    def __repr__(self):
        return f"MonogenicResult({self.ok}, {self.operator}, {self.witness})"


def is_monogenic(F: CliffordPolynomial, system: str = "euclidean") -> MonogenicResult:
    if system not in SYSTEMS:
        raise ValueError(f"unknown system {system!r}; expected one of {sorted(SYSTEMS)}")
    for kind in SYSTEMS[system]:
        img = apply_dirac(kind, F)
        if img:
            return MonogenicResult(False, kind, img)
    return MonogenicResult(True)


def spinor_components(F: CliffordPolynomial) -> dict[int, CliffordPolynomial]:
    """F^r with values in S^r (raises when some value is not a spinor)."""
    parts: dict[int, dict] = {}
    for m, v in F.items():
        for r, piece in homogeneous_parts(v, F.p).items():
            parts.setdefault(r, {})[m] = piece
    return {r: CliffordPolynomial._wrap(F.p, t) for r, t in sorted(parts.items())}


def hermitian_componentwise_check(F: CliffordPolynomial) -> dict:
    """Compare hermitian monogenicity of F with Euclidean monogenicity of every F^r."""
    p = F.p
    comps = spinor_components(F)
    herm = is_monogenic(F, "hermitian")
    comp_results = {r: is_monogenic(Fr, "euclidean") for r, Fr in comps.items()}
    failing = [r for r, res in comp_results.items() if not res]
    mapping_ok = True
    for r, Fr in comps.items():
        up, down = apply_dirac("dz", Fr), apply_dirac("dz_dag", Fr)
        for img, target in ((up, r + 1), (down, r - 1)):
            for _, v in img.items():
                parts = homogeneous_parts(v, p)
                if set(parts) - {target}:
                    mapping_ok = False
    return {
        "hermitian_monogenic": herm.ok,
        "componentwise_monogenic": not failing,
        "equivalent": herm.ok == (not failing),
        "failing_components": failing,
        "witness": None if not failing else {
            "component": failing[0],
            "operator": comp_results[failing[0]].operator,
            "image": comp_results[failing[0]].witness.to_json(),
        },
        "degree_mapping_ok": mapping_ok,
    }


def twist_vector(kind: str, X: CliffordPolynomial) -> CliffordPolynomial:
    """Apply the structure matrix I, J or K to a 1-vector valued polynomial (row action)."""
    if kind not in ("I", "J", "K"):
        raise ValueError("twist kind must be I, J or K")
    for _, v in X.items():
        if v.grades() - {1}:
            raise ValueError("twist_vector needs a 1-vector valued polynomial")
    m = structure_matrix(kind, X.p)
    return X.map_values(lambda v: apply_structure(m, v))


# ---------------------------------------------------------------- solutions and symmetry


def quaternionic_monogenic_basis(p: int, max_degree: int = 2) -> list[CliffordPolynomial]:
    """Basis of spinor-valued polynomials of degree <= max_degree killed by all four operators."""
    cols = list(spanning_set(p, max_degree))
    rows: dict = {}
    for j, F in enumerate(cols):
        for kind in SYSTEMS["quaternionic"]:
            for m, v in apply_dirac(kind, F).items():
                for mask, c in v.items():
                    rows.setdefault((kind, m, mask), {})[j] = c
    mat = [[row.get(j, ZERO) for j in range(len(cols))] for row in rows.values()]
    kernel = nullspace(mat, len(cols)) if mat else [[ONE if i == j else ZERO for i in range(len(cols))] for j in range(len(cols))]
    out = []
    for vec in kernel:
        acc = CliffordPolynomial(p)
        for c, F in zip(vec, cols):
            if c:
                acc = acc + F * c
        out.append(acc)
    return out


def random_combination(basis: Sequence[CliffordPolynomial], rng: random.Random) -> CliffordPolynomial:
    acc = CliffordPolynomial(basis[0].p)
    for b in basis:
        c = rng.randint(-3, 3)
        if c:
            acc = acc + b * c
    return acc


def substitute(F: CliffordPolynomial, forms: Sequence[Mapping[int, FieldElement]]) -> CliffordPolynomial:
    """F(Y) with Y_b = sum_a forms[b][a] X_a (forms indexed from 0, variables from 1)."""
    p = F.p
    lin = []
    for form in forms:
        acc = CliffordPolynomial(p)
        for a, c in form.items():
            if c:
                acc = acc + CliffordPolynomial.variable(p, a) * c
        lin.append(acc)
    out = CliffordPolynomial(p)
    for m, v in F.items():
        term = CliffordPolynomial.constant(p, v)
        for b, e in enumerate(m):
            if e:
                term = lin[b] ** e * term
        out = out + term
    return out


def l_action(s: Multivector, F: CliffordPolynomial) -> CliffordPolynomial:
    """L(s)F(X) = s F(s^{-1} X s), with the substitution read off the double cover.

    s X s^{-1} = X A in row form, so s^{-1} X s = X A^T and the new
    coordinate Y_b is sum_a X_a A[b][a].
    """
    a = double_cover_matrix(s)
    at = transpose(a)
    forms = [{i + 1: at[i][b] for i in range(len(at))} for b in range(len(at))]
    return s * substitute(F, forms)
