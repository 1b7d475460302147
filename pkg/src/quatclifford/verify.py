"""Registry of exact checks, the suite runner and the table emitters."""

from __future__ import annotations

import fnmatch
import json
import random
import time
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Any, Callable

from . import cells as C
from . import dirac as D
from . import groups as G
from . import lie as L
from .clifford import Multivector, mv_clifford_conj, mv_hermitian_conj, mv_inner
from .linalg import identity, mat_add, mat_scale, matmul, span_rank
from .scalar_field import ONE, SQRT2, ZERO, FieldElement, I, field_add, field_conj, field_inv, field_mul
from .witt import (
    f,
    fdag,
    full_spinor_space,
    primitive_idempotent,
    spinor_basis,
    spinor_monomial,
)

SCHEMA = "quatclifford.report/1"
P_MAX = 4

__all__ = [
    "SCHEMA",
    "Check",
    "CheckResult",
    "VerificationReport",
    "registry",
    "select_checks",
    "run_check",
    "run_suite",
    "emit_table",
    "TABLES",
    "FORMATS",
]


@dataclass(frozen=True)
class Check:
    id: str
    anchor: str
    p: int
    fn: Callable[[int, random.Random], tuple[bool, Any]]
    deep: bool = False


@dataclass
class CheckResult:
    id: str
    anchor: str
    status: str
    detail: Any = None
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self, timing: bool = False) -> dict:
        out = {"id": self.id, "anchor": self.anchor, "status": self.status, "detail": self.detail}
        if timing:
            out["elapsed"] = round(self.elapsed, 4)
        return out


@dataclass
class VerificationReport:
    checks: list[CheckResult]
    p_range: list[int]
    seed: int
    deep: bool
    elapsed: float = 0.0
    filter: str | None = None
    schema: str = field(default=SCHEMA)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "schema": self.schema,
            "p_range": self.p_range,
            "seed": self.seed,
            "deep": self.deep,
            "filter": self.filter,
            "passed": sum(c.passed for c in self.checks),
            "failed": len(self.failures),
            "checks": [c.to_json(timing) for c in self.checks],
        }
        if timing:
            out["elapsed"] = round(self.elapsed, 4)
        return out

    def render(self, fmt: str = "text", timing: bool = False) -> str:
        if fmt == "json":
            return json.dumps(self.to_json(timing), indent=2, ensure_ascii=False) + "\n"
        if fmt != "text":
            raise ValueError(f"unknown report format {fmt!r}")
        lines = []
        for c in self.checks:
            t = f"  [{c.elapsed:.3f}s]" if timing else ""
            lines.append(f"{c.status.upper():4}  {c.id:40} {c.anchor}{t}")
            if not c.passed:
                lines.append("      detail: " + json.dumps(c.detail, ensure_ascii=False, sort_keys=True))
        summary = f"{sum(c.passed for c in self.checks)} passed, {len(self.failures)} failed; p in {self.p_range}"
        if timing:
            summary += f"; {self.elapsed:.2f}s"
        lines.append(summary)
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- helpers


def _mv(p: int) -> int:
    return 4 * p


def _fails(pairs) -> tuple[bool, Any]:
    bad = [name for name, ok in pairs if not ok]
    return (not bad, {"failed": bad} if bad else None)


def _rand_field(rng: random.Random) -> FieldElement:
    return FieldElement(*(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(4)))


def _rand_complex(rng: random.Random) -> FieldElement:
    return FieldElement(rng.randint(-3, 3), rng.randint(-3, 3))


# ---------------------------------------------------------------- scalar and Clifford rules


def _field_rules(p, rng):
    half_root = SQRT2 / 2
    checks = [
        ("(1+i)+(1-i) = 2", field_add(ONE + I, ONE - I) == 2),
        ("sqrt2/2 + sqrt2/2 = sqrt2", field_add(half_root, half_root) == SQRT2),
        ("(1+i)(1-i) = 2", field_mul(ONE + I, ONE - I) == 2),
        ("(sqrt2/2)^2 = 1/2", field_mul(half_root, half_root) == FieldElement(Fraction(1, 2))),
        ("(i sqrt2)^2 = -2", field_mul(I * SQRT2, I * SQRT2) == -2),
        ("inv(2) = 1/2", field_inv(FieldElement(2)) == FieldElement(Fraction(1, 2))),
        ("inv(sqrt2) = sqrt2/2", field_inv(SQRT2) == half_root),
        ("inv(1+i) = (1-i)/2", field_inv(ONE + I) == (ONE - I) / 2),
        ("conj(i) = -i", field_conj(I) == -I),
        ("conj(i sqrt2) = -i sqrt2", field_conj(I * SQRT2) == -(I * SQRT2)),
    ]
    for _ in range(50):
        x, y = _rand_field(rng), _rand_field(rng)
        if x:
            checks.append((f"x * inv(x) = 1 for x={x}", x * x.inv() == ONE))
        checks.append((f"conj multiplicative for {x}, {y}", (x * y).conj() == x.conj() * y.conj()))
    return _fails(checks)


def _clifford_rules(p, rng):
    n = 4
    e = lambda *ix: Multivector.blade(n, list(ix))  # noqa: E731
    one = Multivector.scalar(n)
    checks = [
        ("e1 e1 = -1", e(1) * e(1) == -one),
        ("e1 e2 = -e2 e1", e(1) * e(2) == -(e(2) * e(1))),
        ("(e1 e2)^2 = -1", e(1, 2) * e(1, 2) == -one),
        ("conj(e1) = -e1", mv_clifford_conj(e(1)) == -e(1)),
        ("conj(e1 e2) = -e1 e2", mv_clifford_conj(e(1, 2)) == -e(1, 2)),
        ("conj(1) = 1", mv_clifford_conj(one) == one),
        ("(i e1)^dagger = i e1", mv_hermitian_conj(e(1).scale(I)) == e(1).scale(I)),
        ("f1^dagger = f1-dagger", mv_hermitian_conj(f(1, 1)) == fdag(1, 1)),
        ("(e1, e1) = 1", mv_inner(e(1), e(1)) == ONE),
        ("(1, e1) = 0", mv_inner(one, e(1)) == ZERO),
        ("(e1e2, e1e2) = 1", mv_inner(e(1, 2), e(1, 2)) == ONE),
    ]
    for _ in range(20):
        xs = [
            Multivector(n, {rng.randrange(16): _rand_complex(rng) for _ in range(3)})
            for _ in range(3)
        ]
        a, b, c = xs
        checks.append(("associativity", (a * b) * c == a * (b * c)))
        checks.append(("conjugation reverses products", (a * b).clifford_conj() == b.clifford_conj() * a.clifford_conj()))
        checks.append(("dagger is an involution", a.dagger().dagger() == a))
    return _fails(checks)


# ---------------------------------------------------------------- Witt basis and spinors


def _witt_axioms(p, rng):
    n = _mv(p)
    one, zero = Multivector.scalar(n), Multivector(n)
    bad = []
    for j in range(1, 2 * p + 1):
        for k in range(1, 2 * p + 1):
            if f(j, p) * f(k, p) + f(k, p) * f(j, p) != zero:
                bad.append(f"{{f{j}, f{k}}} != 0")
            if fdag(j, p) * fdag(k, p) + fdag(k, p) * fdag(j, p) != zero:
                bad.append(f"{{f†{j}, f†{k}}} != 0")
            if f(j, p) * fdag(k, p) + fdag(k, p) * f(j, p) != (one if j == k else zero):
                bad.append(f"{{f{j}, f†{k}}} != delta")
        if f(j, p).dagger() != fdag(j, p):
            bad.append(f"(f{j})^dagger != f†{j}")
        if not (f(j, p) * primitive_idempotent(p)).is_zero():
            bad.append(f"f{j} I != 0")
    idem = primitive_idempotent(p)
    if idem * idem != idem:
        bad.append("I^2 != I")
    if idem.dagger() != idem:
        bad.append("I is not self-adjoint")
    return not bad, ({"failed": bad} if bad else None)


def _witt_examples(p, rng):
    half = FieldElement(Fraction(1, 2))
    quarter = FieldElement(Fraction(1, 4))
    e = lambda *ix: Multivector.blade(4, list(ix))  # noqa: E731
    expected_i = (Multivector.scalar(4) - e(1, 2).scale(I) - e(3, 4).scale(I) - e(1, 2, 3, 4)).scale(quarter)
    s1 = spinor_basis(1, 1)
    idem = primitive_idempotent(1)
    return _fails(
        [
            ("f†1 = e1/2 + i e2/2", fdag(1, 1) == e(1).scale(half) + e(2).scale(half * I)),
            ("f1 = -e1/2 + i e2/2", f(1, 1) == -e(1).scale(half) + e(2).scale(half * I)),
            ("I expanded for p = 1", idem == expected_i),
            ("coordinates of f†1 I + i f†2 I", s1.coordinates(fdag(1, 1) * idem + (fdag(2, 1) * idem).scale(I)) == [ONE, I]),
            ("e1 I = f†1 I", s1.coordinates(e(1) * idem) == [ONE, ZERO]),
            ("S^0 = span{I}", spinor_basis(1, 0).dim == 1 and spinor_basis(1, 0).coordinates(idem.scale(5)) == [FieldElement(5)]),
            ("p = 3, degree 1 monomials", list(spinor_basis(3, 1).names) == [f"f†{j} I" for j in range(1, 7)]),
        ]
    )


def _witt_dims(p, rng):
    dims = {}
    for r in range(2 * p + 1):
        dims[r] = span_rank([dict(b.items()) for b in spinor_basis(p, r).basis])
    total = span_rank([dict(b.items()) for b in full_spinor_space(p).basis])
    ok = all(dims[r] == comb(2 * p, r) for r in dims) and total == 2 ** (2 * p) == sum(dims.values())
    return ok, {"ranks": dims, "total": total}


# ---------------------------------------------------------------- operators and cells

_CELL_LEDGER = {
    1: [[1], [2], [1]],
    2: [[1], [4], [5, 1], [4], [1]],
    3: [[1], [6], [14, 1], [14, 6], [14, 1], [6], [1]],
}


def _operator_algebra(p, rng):
    P, Q, B = C.op_P(p), C.op_Q(p), C.op_beta(p)
    full = full_spinor_space(p)
    bad = []
    for r in range(2 * p + 1):
        space = spinor_basis(p, r)
        if C.commutator(P, Q, space) != mat_scale(identity(space.dim), p - r):
            bad.append(f"[P,Q] != p - r on S^{r}")
    if C.commutator(P, B, full) != mat_scale(P.matrix_on(full), 2):
        bad.append("[P,beta] != 2P")
    if C.commutator(Q, B, full) != mat_scale(Q.matrix_on(full), -2):
        bad.append("[Q,beta] != -2Q")
    idem = primitive_idempotent(p)
    if P(Q(idem)) != idem.scale(p):
        bad.append("P Q I != p I")
    if p >= 2:
        v = spinor_monomial((1, 3), p)
        if B(v) != v.scale(2):
            bad.append("beta(f†1 f†3 I) != 2 f†1 f†3 I")
    if p == 1 and Q(idem) != spinor_monomial((1, 2), 1):
        bad.append("Q I != f†1 f†2 I")
    for _ in range(5):
        x = full.combine([_rand_complex(rng) for _ in range(full.dim)])
        y = full.combine([_rand_complex(rng) for _ in range(full.dim)])
        a, b = _rand_complex(rng), _rand_complex(rng)
        if P(x.scale(a) + y.scale(b)) != P(x).scale(a) + P(y).scale(b):
            bad.append("P is not linear on a random probe")
    return not bad, ({"failed": bad} if bad else None)


def _alpha(p, rng):
    bad = []
    for r in range(p):
        for k in range(p - r):
            if C.alpha(p, r, k) != C.alpha(p, r, p - r - k - 1):
                bad.append(f"alpha symmetry fails at r={r}, k={k}")
            if k <= p - r - 1:
                a = C.alpha(p, r, k)
                P, Q = C.op_P(p), C.op_Q(p)
                inv = FieldElement(Fraction(1, a))
                for v in C.cell_basis(p, r + 2 * k, r).basis:
                    if P(Q(v)).scale(inv) != v:
                        bad.append(f"(1/alpha) P does not invert Q on S_{r}^{r + 2 * k}")
                        break
    for r in range(2 * p + 1):
        for s in C.cell_indices(p, r):
            for order in ("PQ", "QP"):
                try:
                    got = C.pq_scalar_check(p, r, s, order)
                except C.NonScalarAction:
                    bad.append(f"{order} not scalar on S_{s}^{r}")
                    continue
                if got != C.expected_cell_scalar(p, r, s, order):
                    bad.append(f"{order} on S_{s}^{r} is {got}")
    if p == 2 and C.pq_scalar_check(2, 0, 0, "PQ") != 2:
        bad.append("PQ on S_0^0 (p=2) != 2")
    if p == 3 and C.pq_scalar_check(3, 3, 1, "QP") != 2:
        bad.append("QP on S_1^3 (p=3) != 2")
    return not bad, ({"failed": bad} if bad else None)


def _cell_dims(p, rng):
    measured = []
    bad = []
    for r in range(2 * p + 1):
        row = []
        for (rr, s), sp in C.cell_decompose(p, r):
            row.append(sp.dim)
            if sp.dim != C.cell_dimension_formula(p, s):
                bad.append(f"dim S_{s}^{r} = {sp.dim} != formula")
        measured.append(row)
    if p in _CELL_LEDGER and measured != _CELL_LEDGER[p]:
        bad.append("ledger mismatch")
    return not bad, {"dims": measured} if not bad else {"dims": measured, "failed": bad}


def _same_span(a, b) -> bool:
    va = [dict(v.items()) for v in a.basis]
    vb = [dict(v.items()) for v in b.basis]
    return len(va) == len(vb) == span_rank(va) == span_rank(va + vb)


def _cell_mirror(p, rng):
    bad = []
    for r in range(2 * p + 1):
        for s in C.cell_indices(p, r):
            if not _same_span(C.cell_basis(p, r, s), C.cell_basis_mirror(p, r, s)):
                bad.append(f"S_{s}^{r}")
    return not bad, ({"cells built from both ends differ": bad} if bad else None)


def _scheme_p1(p, rng):
    idem = primitive_idempotent(1)
    cells2 = C.cell_decompose(1, 2)
    ok = len(cells2) == 1 and cells2[0][0] == (2, 0) and cells2[0][1].contains(C.op_Q(1)(idem))
    only_one = [len(C.cell_decompose(1, r)) for r in range(3)] == [1, 1, 1]
    return ok and only_one, {"S^2 cells": [lab for lab, _ in cells2]}


def _example_p3(p, rng):
    idem = primitive_idempotent(3)
    target = (spinor_monomial((1, 2), 3) + spinor_monomial((3, 4), 3) + spinor_monomial((5, 6), 3))
    s02 = C.cell_basis(3, 2, 0)
    s24 = C.cell_basis(3, 4, 2)
    s24m = C.cell_basis_mirror(3, 4, 2)
    checks = [
        ("S_0^2 spanned by (f†1f†2 + f†3f†4 + f†5f†6) I", s02.dim == 1 and s02.contains(target) and C.op_Q(3)(idem) == target),
        ("dim S_2^2 = 14", C.cell_basis(3, 2, 2).dim == 14),
        ("dim S_2^4 = 14", s24.dim == 14),
        ("S_2^4 from both ends agree", _same_span(s24, s24m)),
        ("S^3 = S_1^3 + S_3^3 with 6 + 14 = 20", sorted(sp.dim for _, sp in C.cell_decompose(3, 3)) == [6, 14]),
        ("dim S_3^3 = 14", C.cell_basis(3, 3, 3).dim == 14),
    ]
    return _fails(checks)


def _example_p2(p, rng):
    cells2 = C.cell_decompose(2, 2)
    checks = [
        ("dim S^2 = 6", spinor_basis(2, 2).dim == 6),
        ("S^2 = S_2^2 + S_0^2 with 5 + 1", [(lab, sp.dim) for lab, sp in cells2] == [((2, 2), 5), ((2, 0), 1)]),
        ("f†1 f†3 I lies in Ker Q", C.op_Q(2)(spinor_monomial((1, 3), 2)).is_zero()),
    ]
    return _fails(checks)


def _casimir(p, rng):
    K = C.casimir(p)
    bad = []
    for r in range(2 * p + 1):
        for s in C.cell_indices(p, r):
            c = FieldElement(C.casimir_eig(p, s))
            if any(K(v) != v.scale(c) for v in C.cell_basis(p, r, s).basis):
                bad.append(f"S_{s}^{r}")
    return not bad, ({"casimir not c_s on": bad} if bad else None)


def _projectors(p, rng):
    bad = []
    for r in range(2 * p + 1):
        n = comb(2 * p, r)
        idx = C.cell_indices(p, r)
        mats = {s: C.projector_matrix(p, r, s) for s in idx}
        total = [[ZERO] * n for _ in range(n)]
        for s in idx:
            Pi = mats[s]
            if matmul(Pi, Pi) != Pi:
                bad.append(f"Pi_{s}^{r} not idempotent")
            for t in idx:
                if t != s and any(x for row in matmul(Pi, mats[t]) for x in row):
                    bad.append(f"Pi_{s}^{r} Pi_{t}^{r} != 0")
            total = mat_add(total, Pi)
            for t in idx:
                for v in C.cell_basis(p, r, t).basis:
                    img = C.apply_projector(p, r, s, v)
                    if img != (v if t == s else Multivector(_mv(p))):
                        bad.append(f"Pi_{s}^{r} wrong on S_{t}^{r}")
                        break
        if total != identity(n):
            bad.append(f"projectors on S^{r} do not sum to 1")
    if not C.projector_closed_form_check(p):
        bad.append("closed forms Q^j P^j")
    return not bad, ({"failed": bad} if bad else None)


def _components(p, rng):
    bad = []
    if not C.adjacent_cell_check(p):
        bad.append("Witt multipliers leave the neighbouring cells")
    ids = C.witt_component_identities(p)
    bad += [f"anticommutation rules ({k})" for k, ok in ids.items() if not ok]
    # image membership, cell by cell
    for r in range(2 * p + 1):
        for s in C.cell_indices(p, r):
            cell = C.cell_basis(p, r, s)
            for dagger in (False, True):
                rr = r + 1 if dagger else r - 1
                if not 0 <= rr <= 2 * p:
                    continue
                for sign in "-+":
                    ss = s - 1 if sign == "-" else s + 1
                    if not C.valid_cell(p, rr, ss):
                        continue
                    target = C.cell_basis(p, rr, ss)
                    for j in range(1, 2 * p + 1):
                        op = C.witt_component(p, j, dagger, r, s, sign)
                        if any(not target.contains(op(v)) for v in cell.basis):
                            bad.append(f"component ({'f†' if dagger else 'f'}{j}){sign} on S_{s}^{r}")
    return not bad, ({"failed": bad} if bad else None)


def _component_closed_forms(p, rng):
    bad = C.component_closed_form_check(p)
    return not bad, ({"mismatches": [list(map(str, b)) for b in bad]} if bad else None)


def _commutation(p, rng):
    res = C.witt_commutation_check(p)
    ok = res["P_f"] and res["Q_fdag"]
    return ok, {k: res[k] for k in sorted(res)}


def _commutation_squares(p, rng):
    """[Q^2, f_j] and [P^2, f†_j] vanish only for p = 1 (recorded as observed)."""
    res = C.witt_commutation_check(p)
    observed = res["Q2_f"] and res["P2_fdag"]
    expected = p == 1
    return observed == expected, {"squares_commute": observed, "expected": expected}


def _kernel_weyl(p, rng):
    rows = []
    for r in range(p + 1):
        ker = C.kernel_space(p, "P", r).dim
        rows.append([r, ker, L.weyl_dim_sp(p, r), L.weyl_dim_sp_roots(p, [1] * r + [0] * (p - r))])
    ok = all(a == b == c for _, a, b, c in rows)
    return ok, {"r, dim Ker P on S^r, weyl, weyl by roots": rows}


# ---------------------------------------------------------------- groups


def _structures(p, rng):
    mi, mj, mk = (G.structure_matrix(k, p) for k in "IJK")
    neg = mat_scale(identity(4 * p), -1)
    return _fails(
        [
            ("I^2 = -E", matmul(mi, mi) == neg),
            ("J^2 = -E", matmul(mj, mj) == neg),
            ("K^2 = -E", matmul(mk, mk) == neg),
            ("IJ = K", matmul(mi, mj) == mk),
            ("JI = -K", matmul(mj, mi) == mat_scale(mk, -1)),
            ("K anticommutes with I", matmul(mk, mi) == mat_scale(matmul(mi, mk), -1)),
            ("K anticommutes with J", matmul(mk, mj) == mat_scale(matmul(mj, mk), -1)),
            ("I, J, K in SO(4p)", all(G.is_special_orthogonal(m) for m in (mi, mj, mk))),
            ("J not in SO_I", not G.subgroup_membership(mj, "SO_I")),
            ("E in SO_Q", G.subgroup_membership(identity(4 * p), "SO_Q")),
        ]
    )


def _spin_exp(p, rng):
    n = _mv(p)
    sI, sJ = G.spin_s_I(p), G.spin_s_J(p)
    one = Multivector.scalar(n)
    return _fails(
        [
            ("exp(sigma_I) = s_I", G.exp_pi4_bivector(G.sigma_I_terms(p), n) == sI),
            ("exp(sigma_J) = s_J", G.exp_pi4_bivector(G.sigma_J_terms(p), n) == sJ),
            ("exp(0) = 1", G.exp_pi4_bivector([], n) == one),
            ("s_I conj(s_I) = 1", sI * sI.clifford_conj() == one),
            ("double cover of s_I is I", G.double_cover_matrix(sI) == G.structure_matrix("I", p)),
            ("double cover of s_J is J", G.double_cover_matrix(sJ) == G.structure_matrix("J", p)),
            ("double cover of -s_J equals that of s_J", G.double_cover_matrix(-sJ) == G.double_cover_matrix(sJ)),
            ("s_I in Spin_I", G.subgroup_membership(sI, "Spin_I")),
            ("conjugating s_J by s_I covers -J", G.double_cover_matrix(sI * sJ * sI.clifford_conj()) == mat_scale(G.structure_matrix("J", p), -1)),
            ("rows: matrix(s_I s_J) = J I", G.double_cover_matrix(sI * sJ) == matmul(G.structure_matrix("J", p), G.structure_matrix("I", p))),
        ]
    )


def _example_chain_p1(p, rng):
    e = lambda *ix: Multivector.blade(4, list(ix))  # noqa: E731
    one = Multivector.scalar(4)
    half = FieldElement(Fraction(1, 2))
    mi = G.structure_matrix("I", 1)
    x = [FieldElement(v) for v in (1, 2, 3, 4)]
    k = [[G.QK]]
    b = G.psi_embed(k)
    a = G.phi_embed(b)
    a_expected = [[0, 0, 0, 1], [0, 0, -1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]]
    sigma_a = [(1, 1, 4), (-1, 2, 3)]
    s_a = G.exp_pi4_bivector(sigma_a, 4)
    s_a_expected = ((one + e(1, 4)) * (one - e(2, 3))).scale(half)
    # vector image of X = sum X_a e_a under s_A, read off as coefficients
    img = G.vec_mat(x, G.double_cover_matrix(s_a))
    return _fails(
        [
            ("s_I = (1 + e12)(1 + e34)/2", G.spin_s_I(1) == ((one + e(1, 2)) * (one + e(3, 4))).scale(half)),
            ("s_J = (1 + e13)(1 - e24)/2", G.spin_s_J(1) == ((one + e(1, 3)) * (one - e(2, 4))).scale(half)),
            ("s_I action: double cover is I_4", G.double_cover_matrix(G.spin_s_I(1)) == mi),
            ("s_I action on rows: X I = (-X2, X1, -X4, X3)", G.vec_mat(x, mi) == [-x[1], x[0], -x[3], x[2]]),
            ("phi(i E_2) = I_4", G.phi_embed([[I, ZERO], [ZERO, I]]) == mi),
            ("psi((k)) = [[0, i], [i, 0]]", b == [[ZERO, I], [I, ZERO]]),
            ("phi(psi((k))) = A", a == [[FieldElement(v) for v in row] for row in a_expected]),
            ("exp(pi/2 k) = k", G.exp_quarter_quaternion(G.QK, 2) == G.QK),
            ("exp(pi/2 B) = B", G.exp_quarter_matrix(b, 2) == b),
            ("exp(pi/2 A) = A", G.exp_quarter_matrix(a, 2) == a),
            ("sigma_A corresponds to (pi/4) A", G.bivector_to_skew(G.bivector_from_terms(sigma_a, 4)) == mat_scale(a, 2)),
            ("exp(sigma_A) = (1 + e14)(1 - e23)/2", s_a == s_a_expected),
            ("double cover of s_A is A", G.double_cover_matrix(s_a) == a),
            ("s_A X s_A^-1 = -X4 e1 + X3 e2 - X2 e3 + X1 e4", img == [-x[3], x[2], -x[1], x[0]]),
            ("s_A in Spin_Q(4)", G.subgroup_membership(s_a, "Spin_Q")),
            ("A in SO_Q(4)", G.subgroup_membership(a, "SO_Q")),
            ("Sp(1) round trip of (k)", G.sp_group_roundtrip(k) == a),
            ("Sp(1) round trip of (1)", G.sp_group_roundtrip([[G.Quaternion(1)]]) == identity(4)),
        ]
    )


def _embeddings(p, rng):
    checks = []
    for _ in range(10):
        a = [[_rand_complex(rng) for _ in range(2)] for _ in range(2)]
        b = [[_rand_complex(rng) for _ in range(2)] for _ in range(2)]
        checks.append(("phi(AB) = phi(A) phi(B)", G.phi_embed(matmul(a, b)) == matmul(G.phi_embed(a), G.phi_embed(b))))
        qa = [[G.Quaternion(*(rng.randint(-3, 3) for _ in range(4))) for _ in range(2)] for _ in range(2)]
        qb = [[G.Quaternion(*(rng.randint(-3, 3) for _ in range(4))) for _ in range(2)] for _ in range(2)]
        checks.append(
            ("psi(AB) = psi(A) psi(B)", G.psi_embed(G.quaternion_matmul(qa, qb)) == matmul(G.psi_embed(qa), G.psi_embed(qb)))
        )
        checks.append(("phi inverse", G.phi_inverse(G.phi_embed(a)) == a))
        checks.append(("psi inverse", G.psi_inverse(G.psi_embed(qa)) == qa))
    q = G.Quaternion(Fraction(3, 5), Fraction(4, 5))
    img = G.sp_group_roundtrip([[q]])
    checks.append(("(3+4i)/5 lands in SO_Q(4)", all(matmul(img, G.structure_matrix(k, 1)) == matmul(G.structure_matrix(k, 1), img) for k in "IJK")))
    checks.append(("psi((1)) = E_2", G.psi_embed([[G.Quaternion(1)]]) == identity(2)))
    return _fails(checks)


# ---------------------------------------------------------------- Lie algebras


def _lie_bases(p, rng):
    bad = []
    sizes = {}
    for tag in L.TAGS:
        if tag == "slp_inside" and p < 2:
            continue
        basis = L.algebra_basis(p, tag)
        sizes[tag] = len(basis.elements)
        if len(basis.elements) != basis.expected_real_dim // 2 and tag not in ("spinI", "spinQ"):
            bad.append(f"{tag} size")
        if L.closure_defects(basis):
            bad.append(f"{tag} not closed")
    expected = {"spinI": 4 * p * p, "spinQ": p * (2 * p + 1), "sl2p": 4 * p * p - 1, "sp2p": p * (2 * p + 1)}
    if p >= 2:
        expected["slp_inside"] = p * p - 1
    if sizes != expected:
        bad.append(f"sizes {sizes}")
    sp_w, sp_e, sl_w, sl_e = (
        L.algebra_basis(p, "sp2p", "witt"),
        L.algebra_basis(p, "sp2p", "e"),
        L.algebra_basis(p, "sl2p", "witt"),
        L.algebra_basis(p, "sl2p", "e"),
    )
    if not all(L.span_contains(sp_w, x) for x in sp_e.elements):
        bad.append("sp2p e-form outside Witt-form span")
    if not all(L.span_contains(sl_w, x) for x in sl_e.elements):
        bad.append("sl2p e-form outside Witt-form span")
    if not all(L.span_contains(sl_w, x) for x in sp_w.elements):
        bad.append("sp2p not inside sl2p")
    if p >= 2 and not all(L.span_contains(sp_w, x) for x in L.algebra_basis(p, "slp_inside").elements):
        bad.append("slp not inside sp2p")
    sI, sJ = G.spin_s_I(p), G.spin_s_J(p)
    for x in L.algebra_basis(p, "spinQ").elements:
        if x * sI != sI * x or x * sJ != sJ * x:
            bad.append("spinQ element does not commute with s_I and s_J")
            break
    for x in L.algebra_basis(p, "spinQ").elements:
        m = L.sp_shape_matrix(x)
        if m is None or not L.is_sp_matrix(m):
            bad.append("spinQ element without symplectic matrix shape")
            break
    if p == 1:
        e = lambda *ix: Multivector.blade(4, list(ix))  # noqa: E731
        listed = [e(1, 2) - e(3, 4), e(1, 3) + e(2, 4), e(1, 4) - e(2, 3)]
        if not all(L.span_contains(sl_w, x) and L.span_contains(sp_w, x) for x in listed):
            bad.append("sl_2 = sp_2 listing")
    return not bad, {"sizes": sizes} if not bad else {"sizes": sizes, "failed": bad}


def _conversion(p, rng):
    rows = L.conversion_check()
    h = L.cartan(2, "sp2p")
    rows.append(("[H1, H2] = 0", L.bracket(h[0], h[1]).is_zero()))
    return _fails(rows)


def _weights(p, rng):
    idem = primitive_idempotent(p)
    checks = [
        ("sl_2p weight of f†_2p I", [x.to_fraction() for x in L.weight_of(p, "sl2p", spinor_monomial((2 * p,), p))] == [1] * (2 * p - 1)),
        ("sl_2p weight of I", all(not x for x in L.weight_of(p, "sl2p", idem))),
    ]
    entries = []
    for r in range(p + 1):
        for entry in L.highest_weight_cell_check(p, r):
            entries.append(entry)
            checks.append((f"highest weight r={r}, a={entry['a']}, b={entry['b']}", entry["ok"]))
    shifted = [(e["a"], e["b"]) for e in entries if not e["ledger_exact"]]
    ok, detail = _fails(checks)
    detail = detail or {}
    detail["ledger matched only up to a central shift"] = shifted
    return ok, detail


def _lie_ledger(p, rng):
    rows = L.dimension_ledger(p)
    return all(r["ok"] for r in rows), {r["space"]: [r["diagram"], r["counted"]] for r in rows}


def _sp_invariance(p, rng):
    fails = L.sp_invariance_check(p)
    bad = {k: [str(x) for x in v] for k, v in fails.items() if v}
    return not bad, (bad or None)


def _weyl_roots(p, rng):
    rows = [(r, L.weyl_dim_sp(p, r), L.weyl_dim_sp_roots(p, [1] * r + [0] * (p - r))) for r in range(p + 1)]
    return all(a == b for _, a, b in rows), {"r, closed form, roots": rows}


# ---------------------------------------------------------------- Dirac operators


def _dirac_identities(p, rng):
    res = D.operator_identity_suite(p)
    bad = {k: v[1] for k, v in res.items() if not v[0]}
    return not bad, ({"counterexamples": bad} if bad else None)


def _dirac_examples(p, rng):
    P1 = D.CliffordPolynomial
    idem = primitive_idempotent(1)
    const = lambda v: P1.constant(1, v)  # noqa: E731
    X = P1.vector_variable(1)
    x1 = P1.variable(1, 1)
    F = P1.zbar(1, 1) * idem
    herm = D.is_monogenic(F, "hermitian")
    quat = D.is_monogenic(F, "quaternionic")
    witness = D.apply_dirac("dzJ_dag", F)
    g = x1 * idem
    return _fails(
        [
            ("D X = -4", D.apply_dirac("D", X) == const(-4)),
            ("-D^2 X1^2 = 2 = Laplacian", -D.apply_dirac("D", D.apply_dirac("D", x1 ** 2)) == const(2) == D.laplacian(x1 ** 2)),
            ("dz_dag (zbar1 I) = f1 I = 0", D.apply_dirac("dz_dag", F).is_zero()),
            ("zbar1 I hermitian monogenic", herm.ok),
            ("zbar1 I not quaternionic monogenic", not quat.ok),
            ("dzJ_dag (zbar1 I) = -f†2 I", witness == const(-(fdag(2, 1) * idem))),
            ("c I quaternionic monogenic", D.is_monogenic(const(idem.scale(3)), "quaternionic").ok),
            ("X1 I not monogenic, D = e1 I", D.apply_dirac("D", g) == const(Multivector.basis_vector(4, 1) * idem)),
            ("dz (z1 I) = f†1 I", D.apply_dirac("dz", P1.z(1, 1) * idem) == const(fdag(1, 1) * idem)),
        ]
    )


def _componentwise(p, rng):
    P1 = D.CliffordPolynomial
    idem = primitive_idempotent(p)
    top = spinor_monomial((1, 2), p)
    positive = P1.zbar(p, 1) * idem + P1.z(p, 2) * top
    negative = P1.variable(p, 1) * idem + P1.z(p, 2) * top
    listed = P1.zbar(p, 1) * idem + P1.zbar(p, 2) * top
    out = {}
    checks = []
    for name, F, expect in (("positive", positive, True), ("negative", negative, False), ("zbar1 I + zbar2 f†1f†2 I", listed, False)):
        rep = D.hermitian_componentwise_check(F)
        out[name] = {k: rep[k] for k in ("hermitian_monogenic", "componentwise_monogenic", "failing_components")}
        checks.append((f"{name}: equivalence", rep["equivalent"]))
        checks.append((f"{name}: verdict", rep["hermitian_monogenic"] == expect))
        checks.append((f"{name}: degrees shift by one", rep["degree_mapping_ok"]))
        if name == "negative":
            checks.append(("negative: witness names degree 0", rep["witness"] and rep["witness"]["component"] == 0))
    ok, detail = _fails(checks)
    return ok, dict(detail or {}, examples=out)


def _componentwise_random(p, rng):
    basis = _q_basis(p)
    checks = []
    for _ in range(8):
        F = D.random_combination(basis, rng)
        if F.is_zero():
            continue
        rep = D.hermitian_componentwise_check(F)
        checks.append(("random solution", rep["equivalent"] and rep["hermitian_monogenic"]))
        # spoil one component with a non-monogenic term
        G_ = F + D.CliffordPolynomial.variable(p, 1) * spinor_monomial((), p)
        rep = D.hermitian_componentwise_check(G_)
        checks.append(("spoiled solution", rep["equivalent"] and not rep["hermitian_monogenic"]))
    return _fails(checks)


@lru_cache(maxsize=None)
def _q_basis(p):
    return tuple(D.quaternionic_monogenic_basis(p, 2))


def _twists(p, rng):
    X = D.CliffordPolynomial.vector_variable(p)
    tI = D.twist_vector("I", X)
    tJ = D.twist_vector("J", X)
    tK = D.twist_vector("K", X)
    checks = [
        ("I[I[X]] = -X", D.twist_vector("I", tI) == -X),
        ("J[J[X]] = -X", D.twist_vector("J", tJ) == -X),
        ("K[X] = J[I[X]] for matrices acting on rows", tK == D.twist_vector("J", tI)),
        ("I[J[X]] = -K[X]", D.twist_vector("I", tJ) == -tK),
    ]
    if p == 1:
        v = D.CliffordPolynomial.variable
        e = lambda a: Multivector.basis_vector(4, a)  # noqa: E731
        expected = v(1, 2) * e(1) * -1 + v(1, 1) * e(2) - v(1, 4) * e(3) + v(1, 3) * e(4)
        checks.append(("I[X] = -X2 e1 + X1 e2 - X4 e3 + X3 e4", tI == expected))
    return _fails(checks)


def _l_action(p, rng):
    basis = _q_basis(p)
    checks = [("solution space is nontrivial", len(basis) > 0)]
    for F in basis:
        if not (D.is_monogenic(F, "hermitian") and D.is_monogenic(F, "euclidean")):
            checks.append(("basis element monogenic", False))
    gens = [G.exp_pi4_bivector(G.terms_from_bivector(x), _mv(p)) for x in L.algebra_basis(p, "spinQ").elements]
    for s in gens:
        F = D.random_combination(basis, rng)
        checks.append(("L(s) keeps quaternionic monogenicity", D.is_monogenic(D.l_action(s, F), "quaternionic").ok))
    return _fails(checks)


# ---------------------------------------------------------------- registry


def _entry(cid, anchor, p, fn, deep=False):
    return Check(cid, anchor, p, fn, deep)


@lru_cache(maxsize=None)
def registry() -> tuple[Check, ...]:
    """All checks for p = 1..4, sorted by id."""
    out = [
        _entry("field.arithmetic", "exact arithmetic in Q(i, sqrt2)", 1, _field_rules),
        _entry("clifford.rules", "multiplication rules and conjugations", 1, _clifford_rules),
        _entry("witt.examples", "Witt vectors, the p = 1 idempotent and spinor coordinates", 1, _witt_examples),
        _entry("cells.scheme.p1", "p = 1 scheme: S^2 = S_0^2 spanned by Q I", 1, _scheme_p1),
        _entry("cells.example.p2", "p = 2 example: S^2 = S_2^2 + S_0^2", 2, _example_p2),
        _entry("cells.example.p3", "p = 3 example: S_0^2 basis and dim S_2^4 = 14", 3, _example_p3),
        _entry("groups.embeddings", "phi and psi embeddings are ring homomorphisms", 1, _embeddings),
        _entry("groups.chain.p1", "p = 1 chain from (k) to A to s_A in Spin_Q(4); s_I action", 1, _example_chain_p1),
        _entry("lie.conversion.p2", "sp_4(C): Witt form against e form", 2, _conversion),
        _entry("dirac.examples.p1", "monogenic examples, hermitian but not quaternionic", 1, _dirac_examples),
    ]
    for p in range(1, P_MAX + 1):
        big = p == 4
        out += [
            _entry(f"cells.kernel_weyl.p{p}", "dim Ker P on S^r equals the Weyl dimension", p, _kernel_weyl, big),
            _entry(f"lie.weyl.p{p}", "Weyl dimension: closed form against the root product", p, _weyl_roots, big),
            _entry(f"witt.dims.p{p}", "dim S^r = C(2p, r) by exact rank", p, _witt_dims, big),
        ]
        if p == 4:
            out.append(_entry("cells.dims.p4", "cell dimensions C(2p,s) - C(2p,s-2)", 4, _cell_dims, True))
            continue
        out += [
            _entry(f"witt.axioms.p{p}", "Grassmann, isotropy and duality of the Witt basis", p, _witt_axioms),
            _entry(f"cells.operators.p{p}", "[P,Q] = p - beta, [P,beta] = 2P, [Q,beta] = -2Q", p, _operator_algebra),
            _entry(f"cells.alpha.p{p}", "alpha coefficients; PQ and QP scalar on cells", p, _alpha),
            _entry(f"cells.dims.p{p}", "cell dimensions C(2p,s) - C(2p,s-2)", p, _cell_dims),
            _entry(f"cells.mirror.p{p}", "cells built from Ker P and from Ker Q coincide", p, _cell_mirror),
            _entry(f"cells.casimir.p{p}", "Casimir eigenvalue c_s on every cell of row s", p, _casimir),
            _entry(f"cells.projectors.p{p}", "Casimir projectors and their Q^j P^j closed forms", p, _projectors),
            _entry(f"cells.components.p{p}", "Witt components: neighbouring cells and anticommutation", p, _components),
            _entry(f"cells.component_forms.p{p}", "Witt components as normalised P/Q chains", p, _component_closed_forms),
            _entry(f"cells.commutation.p{p}", "P commutes with f_j, Q with f†_j", p, _commutation),
            _entry(f"cells.commutation_squares.p{p}", "[Q^2, f_j] and [P^2, f†_j] vanish only at p = 1", p, _commutation_squares),
            _entry(f"groups.structures.p{p}", "complex and quaternionic structures I, J, K", p, _structures),
            _entry(f"groups.spin.p{p}", "exp(sigma_I) = s_I, exp(sigma_J) = s_J, double cover", p, _spin_exp),
            _entry(f"lie.bases.p{p}", "bivector bases: sizes, closure, inclusions", p, _lie_bases),
            _entry(f"lie.weights.p{p}", "weights and highest weight vectors of the cells", p, _weights),
            _entry(f"lie.ledger.p{p}", "real dimension ledger of the algebra diagram", p, _lie_ledger),
            _entry(f"lie.sp_invariance.p{p}", "sp_2p commutes with P, Q and the projectors", p, _sp_invariance, p == 3),
        ]
        if p <= 2:
            out += [
                _entry(f"dirac.identities.p{p}", "Dirac operator dictionary on the spanning set", p, _dirac_identities),
                _entry(f"dirac.componentwise.p{p}", "hermitian monogenic iff every spinor component is", p, _componentwise),
                _entry(f"dirac.twists.p{p}", "twisted vector variables", p, _twists),
            ]
    out += [
        _entry("dirac.componentwise_random.p1", "componentwise criterion on random solutions", 1, _componentwise_random),
        _entry("dirac.symmetry.p1", "L(s) preserves quaternionic monogenicity", 1, _l_action),
    ]
    ids = [c.id for c in out]
    if len(ids) != len(set(ids)):
        raise RuntimeError("duplicate check id")
    return tuple(sorted(out, key=lambda c: c.id))


def _check_by_id(cid: str) -> Check:
    for c in registry():
        if c.id == cid:
            return c
    raise KeyError(cid)


def select_checks(p_max: int, pattern: str | None = None, deep: bool = False) -> list[Check]:
    if not 1 <= p_max <= P_MAX:
        raise ValueError(f"p_max must be between 1 and {P_MAX}")
    deep = deep or p_max == P_MAX
    return [
        c
        for c in registry()
        if c.p <= p_max and (deep or not c.deep) and (pattern is None or fnmatch.fnmatchcase(c.id, pattern))
    ]


def _seed_for(seed: int, cid: str) -> random.Random:
    return random.Random(f"{seed}:{cid}")


def run_check(cid: str, seed: int = 0) -> CheckResult:
    """Run one registered check; exceptions become failures carrying the traceback."""
    c = _check_by_id(cid)
    t0 = time.perf_counter()
    try:
        ok, detail = c.fn(c.p, _seed_for(seed, cid))
        status = "pass" if ok else "fail"
    except Exception as exc:  # a crash is a failed check, not a crashed suite
        status = "fail"
        detail = {"error": repr(exc), "traceback": traceback.format_exc().splitlines()[-6:]}
    return CheckResult(c.id, c.anchor, status, _jsonable(detail), time.perf_counter() - t0)


def _jsonable(x):
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, float):
        return x
    if isinstance(x, (Fraction, FieldElement)):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)


def _run_many(ids: list[str], seed: int) -> list[CheckResult]:
    return [run_check(i, seed) for i in ids]


def run_suite(
    p_max: int = 2,
    filter: str | None = None,
    seed: int = 0,
    deep: bool = False,
    workers: int = 1,
) -> VerificationReport:
    """Run every selected check; the report lists results sorted by check id."""
    t0 = time.perf_counter()
    checks = select_checks(p_max, filter, deep)
    ids = [c.id for c in checks]
    if workers > 1 and len(ids) > 1:
        # heavy checks first so the pool stays busy
        order = sorted(ids, key=lambda i: -_check_by_id(i).p)
        chunks = [order[k::workers] for k in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = [r for part in pool.map(_run_many, chunks, [seed] * len(chunks)) for r in part]
    else:
        results = _run_many(ids, seed)
    results.sort(key=lambda r: r.id)
    return VerificationReport(
        checks=results,
        p_range=list(range(1, p_max + 1)),
        seed=seed,
        deep=deep or p_max == P_MAX,
        elapsed=time.perf_counter() - t0,
        filter=filter,
    )


# ---------------------------------------------------------------- tables

TABLES = ("cells", "dims", "liealg-ledger")
FORMATS = ("text", "json", "latex")


def _sup(n: int) -> str:
    return str(n).translate(str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹"))


def _sub(n: int) -> str:
    return str(n).translate(str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉"))


def _cells_data(p: int) -> list[dict]:
    out = []
    for r in range(2 * p + 1):
        for (rr, s), sp in C.cell_decompose(p, r):
            out.append({"r": r, "s": s, "dim": sp.dim, "basis": list(sp.names or ())})
    return out


def _dims_data(p: int) -> list[dict]:
    out = []
    for r in range(2 * p + 1):
        parts = [(s, sp.dim) for (_, s), sp in C.cell_decompose(p, r)]
        parts.sort()
        out.append({"r": r, "dim": comb(2 * p, r), "cells": [{"s": s, "dim": d} for s, d in parts]})
    return out


def emit_table(p: int, what: str, fmt: str = "text") -> str:
    """Deterministic text, JSON or LaTeX rendering of a cell, dimension or Lie ledger table."""
    if what not in TABLES:
        raise ValueError(f"unknown table {what!r}; expected one of {TABLES}")
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    if not 1 <= p <= P_MAX:
        raise ValueError(f"p must be between 1 and {P_MAX}")
    if what == "cells":
        data = _cells_data(p)
    elif what == "dims":
        data = _dims_data(p)
    else:
        data = L.dimension_ledger(p)
    if fmt == "json":
        return json.dumps({"p": p, "table": what, "rows": data}, indent=2, ensure_ascii=False) + "\n"
    lines = []
    if what == "cells":
        if fmt == "text":
            for row in data:
                lines.append(f"𝕊{_sub(row['s'])}{_sup(row['r'])} (dim {row['dim']}):")
                lines += [f"    {b}" for b in row["basis"]]
        else:
            lines += ["\\begin{tabular}{lll}", "$r$ & $s$ & basis \\\\ \\hline"]
            for row in data:
                basis = ", ".join(_latex_word(b) for b in row["basis"])
                lines.append(f"{row['r']} & {row['s']} & ${basis}$ \\\\")
            lines.append("\\end{tabular}")
    elif what == "dims":
        if fmt == "text":
            for row in data:
                rhs = " + ".join(str(c["dim"]) for c in row["cells"])
                lines.append(f"𝕊{_sup(row['r'])}: {row['dim']} = {rhs}")
        else:
            lines += ["\\begin{tabular}{lll}", "$r$ & $\\dim\\mathbb{S}^r$ & cells \\\\ \\hline"]
            for row in data:
                rhs = " + ".join(f"{c['dim']}_{{{c['s']}}}" for c in row["cells"])
                lines.append(f"{row['r']} & {row['dim']} & ${rhs}$ \\\\")
            lines.append("\\end{tabular}")
    else:
        if fmt == "text":
            for row in data:
                mark = "ok" if row["ok"] else "MISMATCH"
                lines.append(f"{row['space']:10} diagram {row['diagram']:4}  counted {row['counted']:4}  {mark}")
        else:
            lines += ["\\begin{tabular}{lrr}", "space & diagram & counted \\\\ \\hline"]
            for row in data:
                name = row["space"].replace("_", "\\_")
                lines.append(f"{name} & {row['diagram']} & {row['counted']} \\\\")
            lines.append("\\end{tabular}")
    return "\n".join(lines) + "\n"


def _latex_word(word: str) -> str:
    return word.replace("f†", "f^\\dagger_").replace("(", "").replace(")", "")
