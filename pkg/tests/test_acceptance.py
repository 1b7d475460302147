"""Acceptance criteria and runtime budgets.

The deep suite (p <= 4) runs once in a fresh interpreter; its wall time is
the p = 4 budget and its per-check verdicts feed the criteria below, each of
which adds a few direct assertions. Timed criteria run in their own cold
process so that caches from other tests cannot flatter them.
"""

import json
import subprocess
import sys
import time
from contextlib import contextmanager

import pytest

from acceptance_log import record

pytestmark = pytest.mark.slow

BUDGETS = {"default": 10.0, "p3": 120.0, "p4": 600.0}


def _cli(*args):
    t0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "quatclifford", *args], capture_output=True, text=True)
    return proc, time.perf_counter() - t0


def _timed_snippet(code: str) -> dict:
    """Run code in a new interpreter; it must print a JSON object."""
    proc = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    return json.loads(proc.stdout.strip().splitlines()[-1])


@pytest.fixture(scope="module")
def deep_run():
    proc, elapsed = _cli("verify", "--p", "4", "--deep", "--format", "json")
    report = json.loads(proc.stdout)
    status = {c["id"]: c["status"] for c in report["checks"]}
    return {"returncode": proc.returncode, "elapsed": elapsed, "status": status, "report": report}


@contextmanager
def criterion(label):
    notes = {}
    try:
        yield notes
    except BaseException as exc:
        record(label, False, notes.get("detail", "") or type(exc).__name__)
        raise
    record(label, True, notes.get("detail", ""))


def _passed(deep_run, *ids):
    missing = [i for i in ids if i not in deep_run["status"]]
    failed = [i for i in ids if deep_run["status"].get(i) != "pass"]
    assert not missing, f"checks not run: {missing}"
    assert not failed, f"failing checks: {failed}"


def test_c01_witt_axioms(deep_run):
    with criterion("C1  Witt axioms exact for p <= 3, under 1 s") as n:
        res = _timed_snippet(
            "import json, random, time\n"
            "from quatclifford.verify import _witt_axioms\n"
            "t = time.perf_counter()\n"
            "ok = all(_witt_axioms(p, random.Random(0))[0] for p in (1, 2, 3))\n"
            "print(json.dumps({'ok': ok, 'elapsed': time.perf_counter() - t}))\n"
        )
        n["detail"] = f"{res['elapsed']:.2f} s"
        assert res["ok"]
        assert res["elapsed"] < 1.0
        _passed(deep_run, "witt.axioms.p1", "witt.axioms.p2", "witt.axioms.p3")


def test_c02_spinor_dimensions(deep_run):
    with criterion("C2  dim S^r = C(2p, r) and total 2^(2p) by exact rank, p <= 3"):
        _passed(deep_run, "witt.dims.p1", "witt.dims.p2", "witt.dims.p3", "witt.examples")
        from math import comb

        from quatclifford.linalg import span_rank
        from quatclifford.witt import spinor_basis

        for p in (1, 2, 3):
            for r in range(2 * p + 1):
                assert span_rank([dict(b.items()) for b in spinor_basis(p, r).basis]) == comb(2 * p, r)


def test_c03_cell_ledger(deep_run):
    with criterion("C3  cell dimension ledgers for p = 1, 2, 3; p = 3 under 30 s") as n:
        res = _timed_snippet(
            "import json, time\n"
            "from quatclifford.cells import cell_decompose\n"
            "t = time.perf_counter()\n"
            "dims = [[sp.dim for _, sp in cell_decompose(3, r)] for r in range(7)]\n"
            "print(json.dumps({'dims': dims, 'elapsed': time.perf_counter() - t}))\n"
        )
        n["detail"] = f"p = 3 in {res['elapsed']:.1f} s"
        assert res["dims"] == [[1], [6], [14, 1], [14, 6], [14, 1], [6], [1]]
        assert res["elapsed"] < 30.0
        _passed(deep_run, "cells.dims.p1", "cells.dims.p2", "cells.dims.p3", "cells.example.p2", "cells.example.p3", "cells.scheme.p1", "cells.mirror.p3")
        from quatclifford.cells import cell_decompose

        assert [[sp.dim for _, sp in cell_decompose(1, r)] for r in range(3)] == [[1], [2], [1]]
        assert [[sp.dim for _, sp in cell_decompose(2, r)] for r in range(5)] == [[1], [4], [5, 1], [4], [1]]


def test_c04_operator_algebra(deep_run):
    with criterion("C4  [P,Q] = p - beta, [P,beta] = 2P, [Q,beta] = -2Q on every S^r, p <= 3"):
        _passed(deep_run, "cells.operators.p1", "cells.operators.p2", "cells.operators.p3")


def test_c05_alpha_coefficients(deep_run):
    with criterion("C5  P/alpha inverts Q on cells; PQ and QP scalar on every cell, p <= 3"):
        _passed(deep_run, "cells.alpha.p1", "cells.alpha.p2", "cells.alpha.p3")
        from quatclifford.cells import alpha

        assert alpha(3, 0, 1) == 2 * (3 - 0 - 1)


def test_c06_projectors(deep_run):
    with criterion("C6  Casimir projectors: idempotent, orthogonal, complete, closed forms, p <= 3"):
        _passed(
            deep_run,
            *(f"cells.{k}.p{p}" for k in ("projectors", "casimir") for p in (1, 2, 3)),
        )


def test_c07_symplectic_invariance(deep_run):
    with criterion("C7  P, Q and projectors commute with sp_2p; cells invariant, p <= 2 and p = 3 deep"):
        _passed(deep_run, "lie.sp_invariance.p1", "lie.sp_invariance.p2", "lie.sp_invariance.p3")


def test_c08_weyl_cross_check(deep_run):
    with criterion("C8  Weyl dimension equals kernel dimension for r <= p <= 4"):
        _passed(deep_run, *(f"cells.kernel_weyl.p{p}" for p in (1, 2, 3, 4)), *(f"lie.weyl.p{p}" for p in (1, 2, 3, 4)))
        from quatclifford.lie import weyl_dim_sp

        assert weyl_dim_sp(3, 3) == 14 and weyl_dim_sp(2, 2) == 5


def test_c09_group_structures(deep_run):
    with criterion("C9  exp(sigma_I) = s_I, exp(sigma_J) = s_J, cover of s_I is I, rank-one chain"):
        _passed(deep_run, "groups.spin.p1", "groups.spin.p2", "groups.spin.p3", "groups.chain.p1", "groups.structures.p3")


def test_c10_conversion_table(deep_run):
    with criterion("C10 ten Witt/e-form identities for sp_4(C) hold exactly"):
        _passed(deep_run, "lie.conversion.p2")
        from quatclifford.lie import conversion_check

        rows = conversion_check()
        assert len(rows) == 10 and all(ok for _, ok in rows)


def test_c11_dirac_dictionary(deep_run):
    with criterion("C11 Dirac operator dictionary and -D^2 = Laplacian on degree <= 3, p <= 2; zbar_1 I witness"):
        _passed(deep_run, "dirac.identities.p1", "dirac.identities.p2", "dirac.examples.p1", "dirac.twists.p1", "dirac.twists.p2")
        from quatclifford.dirac import CliffordPolynomial, is_monogenic
        from quatclifford.witt import primitive_idempotent, spinor_monomial

        F = CliffordPolynomial.zbar(1, 1) * primitive_idempotent(1)
        res = is_monogenic(F, "quaternionic")
        assert is_monogenic(F, "hermitian") and not res
        assert res.witness == CliffordPolynomial.constant(1, -spinor_monomial((2,), 1))


def test_c12_componentwise(deep_run):
    with criterion("C12 hermitian monogenic iff componentwise monogenic on positive and negative examples, p <= 2"):
        _passed(deep_run, "dirac.componentwise.p1", "dirac.componentwise.p2", "dirac.componentwise_random.p1")


def test_budget_default_suite():
    with criterion("B1  default suite (p <= 2) under 10 s") as n:
        proc, elapsed = _cli("verify")
        n["detail"] = f"{elapsed:.1f} s"
        assert proc.returncode == 0, proc.stdout[-2000:]
        assert elapsed < BUDGETS["default"]


def test_budget_p3_suite():
    with criterion("B2  p = 3 suite under 2 min") as n:
        proc, elapsed = _cli("verify", "--p", "3")
        n["detail"] = f"{elapsed:.1f} s"
        assert proc.returncode == 0, proc.stdout[-2000:]
        assert elapsed < BUDGETS["p3"]


def test_budget_p4_deep_suite(deep_run):
    with criterion("B3  p = 4 deep suite under 10 min") as n:
        n["detail"] = f"{deep_run['elapsed']:.1f} s, {len(deep_run['status'])} checks"
        failed = [k for k, v in deep_run["status"].items() if v != "pass"]
        assert deep_run["returncode"] == 0 and not failed, failed
        assert deep_run["elapsed"] < BUDGETS["p4"]
