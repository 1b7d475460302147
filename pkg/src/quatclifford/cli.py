"""Command-line entry point: basis and table emitters, single operator runs and the verification suite."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import cells as C
from . import dirac as D
from . import groups as G
from . import lie as L
from .clifford import Multivector
from .scalar_field import FieldElement
from .verify import FORMATS, P_MAX, TABLES, emit_table, run_suite
from .witt import describe_spinor, primitive_idempotent, spinor_basis, spinor_monomial


def parse_coeff(text: str) -> FieldElement:
    """Read "2", "-1/2", "i", "-3i", "1+2i" or "1/2-i" as an element of Q(i)."""
    s = text.replace(" ", "")
    try:
        if not s.endswith("i"):
            return FieldElement(Fraction(s))
        body = s[:-1]
        cut = max(body.rfind("+", 1), body.rfind("-", 1))
        real, imag = (body[:cut], body[cut:]) if cut > 0 else ("", body)
        if imag in ("", "+", "-"):
            imag += "1"
        return FieldElement(Fraction(real) if real else Fraction(0), Fraction(imag))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"cannot read coefficient {text!r}") from None


def _parse_term(text: str, p: int) -> Multivector:
    """COEFF:INDICES, e.g. "2:1,3" for 2 f†1 f†3 I; "1:" is I itself."""
    coeff, _, idx = text.partition(":")
    c = parse_coeff(coeff)
    indices = tuple(sorted(int(x) for x in idx.split(",") if x.strip()))
    if len(set(indices)) != len(indices) or any(not 1 <= a <= 2 * p for a in indices):
        raise ValueError(f"bad Witt indices in {text!r}")
    return spinor_monomial(indices, p).scale(c)


def _dump(obj, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
    if isinstance(obj, dict):
        return "\n".join(f"{k}: {v}" for k, v in obj.items()) + "\n"
    return "\n".join(map(str, obj)) + "\n"


def _matrix_rows(m) -> list[str]:
    return ["[" + ", ".join(str(x) for x in row) + "]" for row in m]


# ---------------------------------------------------------------- subcommands


def cmd_spinor_basis(a) -> int:
    sp = spinor_basis(a.p, a.r)
    if a.format == "json":
        out = {"p": a.p, "r": a.r, "dim": sp.dim, "basis": list(sp.names)}
        sys.stdout.write(_dump(out, "json"))
    else:
        sys.stdout.write(f"S^{a.r} for p={a.p}: dim {sp.dim}\n")
        sys.stdout.write("".join(f"  {n}\n" for n in sp.names))
    return 0


def cmd_cells(a) -> int:
    if a.r is None:
        sys.stdout.write(emit_table(a.p, "cells", a.format))
        return 0
    rows = [
        {"r": a.r, "s": s, "dim": sp.dim, "basis": list(sp.names)}
        for (_, s), sp in C.cell_decompose(a.p, a.r)
    ]
    if a.format == "json":
        sys.stdout.write(_dump({"p": a.p, "r": a.r, "cells": rows}, "json"))
    else:
        for row in rows:
            sys.stdout.write(f"S_{row['s']}^{row['r']} (dim {row['dim']}):\n")
            sys.stdout.write("".join(f"    {b}\n" for b in row["basis"]))
    return 0


def cmd_project(a) -> int:
    if not a.term:
        raise ValueError("give at least one --term")
    x = Multivector(4 * a.p)
    for t in a.term:
        x = x + _parse_term(t, a.p)
    if not spinor_basis(a.p, a.r).contains(x):
        raise ValueError(f"input is not in S^{a.r}")
    parts = {}
    for s in C.cell_indices(a.p, a.r):
        if a.s is not None and s != a.s:
            continue
        parts[f"S_{s}^{a.r}"] = describe_spinor(C.apply_projector(a.p, a.r, s, x), a.p)
    out = {"input": describe_spinor(x, a.p), **parts}
    sys.stdout.write(_dump(out, a.format))
    return 0


def cmd_spin(a) -> int:
    p = a.p
    s = G.spin_s_I(p) if a.which == "I" else G.spin_s_J(p)
    terms = G.sigma_I_terms(p) if a.which == "I" else G.sigma_J_terms(p)
    exp_ok = G.exp_pi4_bivector(terms, 4 * p) == s
    m = G.double_cover_matrix(s)
    target = G.structure_matrix(a.which, p)
    out = {
        "element": str(s),
        "bivector": " + ".join(f"({c} pi/4) e{i}e{j}" for c, i, j in terms),
        "exp(bivector) == element": exp_ok,
        "double cover == structure matrix": m == target,
    }
    if a.format == "json":
        out["double_cover"] = [[str(x) for x in row] for row in m]
        sys.stdout.write(_dump(out, "json"))
    else:
        sys.stdout.write(_dump(out, "text"))
        sys.stdout.write("double cover (rows):\n" + "".join(f"  {r}\n" for r in _matrix_rows(m)))
    return 0


def cmd_liealg(a) -> int:
    form = "e" if a.algebra in ("spinI", "spinQ") else a.form
    basis = L.algebra_basis(a.p, a.algebra, form)
    defects = L.closure_defects(basis) if a.closure else None
    if a.format == "json":
        out = basis.to_json()
        if defects is not None:
            out["closure_defects"] = [list(d) for d in defects]
        sys.stdout.write(_dump(out, "json"))
    else:
        sys.stdout.write(
            f"{basis.algebra} (p={a.p}, {basis.form} form): {len(basis.elements)} elements, real dimension {basis.expected_real_dim}\n"
        )
        for name, el in zip(basis.names, basis.elements):
            sys.stdout.write(f"  {name}  =  {el}\n")
        if defects is not None:
            sys.stdout.write(f"closure defects: {len(defects)}\n")
    return 0


def cmd_verify_weights(a) -> int:
    rows = []
    ok = True
    for r in range(a.p + 1):
        ker = C.kernel_space(a.p, "P", r).dim
        w = L.weyl_dim_sp(a.p, r)
        hw = L.highest_weight_cell_check(a.p, r)
        good = ker == w and all(e["ok"] for e in hw)
        ok = ok and good
        rows.append({"r": r, "dim_ker_P": ker, "weyl": w, "highest_weights_ok": all(e["ok"] for e in hw)})
    if a.format == "json":
        sys.stdout.write(_dump({"p": a.p, "rows": rows, "ok": ok}, "json"))
    else:
        for row in rows:
            sys.stdout.write(
                f"r={row['r']}: dim Ker P = {row['dim_ker_P']}, Weyl = {row['weyl']}, highest weights {'ok' if row['highest_weights_ok'] else 'FAIL'}\n"
            )
    return 0 if ok else 1


_EXAMPLES = ("const", "zbar1", "z1", "x1", "positive", "negative")


def _example_poly(name: str, p: int) -> D.CliffordPolynomial:
    P_ = D.CliffordPolynomial
    idem = primitive_idempotent(p)
    if name == "const":
        return P_.constant(p, idem)
    if name == "zbar1":
        return P_.zbar(p, 1) * idem
    if name == "z1":
        return P_.z(p, 1) * idem
    if name == "x1":
        return P_.variable(p, 1) * idem
    top = spinor_monomial((1, 2), p)
    if name == "positive":
        return P_.zbar(p, 1) * idem + P_.z(p, 2) * top
    if name == "negative":
        return P_.variable(p, 1) * idem + P_.z(p, 2) * top
    raise ValueError(f"unknown example {name!r}")


def _render_poly(F: D.CliffordPolynomial) -> str:
    """Spinor values as Witt words where possible, raw multivectors otherwise."""
    if F.is_zero():
        return "0"
    parts = []
    for m, v in F.items():
        mono = "*".join(f"X{i+1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e)
        try:
            value = describe_spinor(v, F.p)
        except ValueError:
            value = str(v)
        parts.append(f"({value})" + ("*" + mono if mono else ""))
    return " + ".join(parts)


def cmd_monogenic(a) -> int:
    if a.json:
        text = sys.stdin.read() if a.json == "-" else open(a.json, encoding="utf-8").read()
        F = D.CliffordPolynomial.from_json(json.loads(text))
    else:
        F = _example_poly(a.example, a.p)
    systems = list(D.SYSTEMS) if a.system == "all" else [a.system]
    out = {"polynomial": str(F)}
    for sysname in systems:
        out[sysname] = D.is_monogenic(F, sysname).to_json()
    if a.componentwise:
        rep = D.hermitian_componentwise_check(F)
        out["componentwise"] = rep
    if a.format == "json":
        sys.stdout.write(_dump(out, "json"))
    else:
        sys.stdout.write(f"F = {_render_poly(F)}\n")
        for sysname in systems:
            r = out[sysname]
            line = f"{sysname}: {'yes' if r['monogenic'] else 'no'}"
            if not r["monogenic"]:
                w = D.CliffordPolynomial.from_json(r["witness"])
                line += f"  ({r['operator']} F = {_render_poly(w)})"
            sys.stdout.write(line + "\n")
        if a.componentwise:
            rep = out["componentwise"]
            sys.stdout.write(
                f"componentwise: {'yes' if rep['componentwise_monogenic'] else 'no'}"
                f" (failing degrees {rep['failing_components']}); equivalent: {rep['equivalent']}\n"
            )
    return 0


def cmd_verify(a) -> int:
    p_max = a.p
    if p_max is None:
        p_max = P_MAX if a.deep else 2
    report = run_suite(p_max, a.filter, seed=a.seed, deep=a.deep, workers=a.workers)
    text = report.render(a.format, timing=a.timing)
    if a.out:
        with open(a.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        sys.stdout.write(f"{len(report.checks) - len(report.failures)} passed, {len(report.failures)} failed; report written to {a.out}\n")
    else:
        sys.stdout.write(text)
    return 0 if report.ok else 1


def cmd_table(a) -> int:
    sys.stdout.write(emit_table(a.p, a.what, a.format))
    return 0


# ---------------------------------------------------------------- parser


def _p_arg(text: str) -> int:
    p = int(text)
    if not 1 <= p <= P_MAX:
        raise argparse.ArgumentTypeError(f"p must be between 1 and {P_MAX}")
    return p


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quatcliff", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, fmts=("text", "json")):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        sp.add_argument("--format", choices=fmts, default="text")
        return sp

    sp = add("spinor-basis", cmd_spinor_basis, "list the monomial basis of S^r")
    sp.add_argument("--p", type=_p_arg, required=True)
    sp.add_argument("--r", type=int, required=True)

    sp = add("cells", cmd_cells, "symplectic cells with bases", FORMATS)
    sp.add_argument("--p", type=_p_arg, required=True)
    sp.add_argument("--r", type=int, help="only the cells of degree r")

    sp = add("project", cmd_project, "split a spinor of S^r into its cell components")
    sp.add_argument("--p", type=_p_arg, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--s", type=int, help="only this cell")
    sp.add_argument("--term", action="append", metavar="COEFF:INDICES", help='e.g. "2:1,3" for 2 f†1 f†3 I; repeatable')

    sp = add("spin", cmd_spin, "the Spin elements s_I and s_J with their double cover")
    sp.add_argument("--p", type=_p_arg, required=True)
    sp.add_argument("--which", choices=("I", "J"), default="I")

    sp = add("liealg", cmd_liealg, "bivector realisation of a Lie algebra")
    sp.add_argument("--p", type=_p_arg, required=True)
    sp.add_argument("--algebra", choices=L.TAGS, required=True)
    sp.add_argument("--form", choices=("witt", "e"), default="witt")
    sp.add_argument("--closure", action="store_true", help="also check closure under the bracket")

    sp = add("verify-weights", cmd_verify_weights, "Weyl dimensions against kernels and highest weights")
    sp.add_argument("--p", type=_p_arg, required=True)

    sp = add("monogenic", cmd_monogenic, "test a spinor-valued polynomial against the Dirac systems")
    sp.add_argument("--p", type=_p_arg, default=1)
    sp.add_argument("--example", choices=_EXAMPLES, default="zbar1")
    sp.add_argument("--json", metavar="FILE", help="polynomial in JSON form ('-' for stdin)")
    sp.add_argument("--system", choices=(*D.SYSTEMS, "all"), default="all")
    sp.add_argument("--componentwise", action="store_true")

    sp = add("verify", cmd_verify, "run the verification suite")
    sp.add_argument("--p", type=_p_arg, default=None, help="largest p to test (default 2, or 4 with --deep)")
    sp.add_argument("--deep", action="store_true", help="include the p = 4 and expensive p = 3 checks")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--filter", metavar="GLOB", help='check-id glob such as "cells.*"')
    sp.add_argument("--out", metavar="FILE")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--timing", action="store_true", help="add per-check timings (output is then not byte-stable)")

    sp = add("table", cmd_table, "cells, dimension or Lie ledger table", FORMATS)
    sp.add_argument("--p", type=_p_arg, required=True)
    sp.add_argument("--what", choices=TABLES, required=True)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
