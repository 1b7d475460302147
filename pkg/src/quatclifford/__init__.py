"""Exact Clifford algebra, spinor cells and quaternionic Dirac operators over Q(i, sqrt2)."""

from .cells import (
    LinearOperator,
    casimir,
    cell_basis,
    cell_decompose,
    op_beta,
    op_P,
    op_Q,
    projector,
    witt_component,
)
from .clifford import Multivector, mv_clifford_conj, mv_grade, mv_hermitian_conj, mv_inner, mv_product
from .dirac import CliffordPolynomial, apply_dirac, hermitian_componentwise_check, is_monogenic
from .groups import double_cover_matrix, exp_pi4_bivector, spin_s_I, spin_s_J, structure_triple
from .lie import algebra_basis, bracket, weight_of, weyl_dim_sp
from .scalar_field import FieldElement, field_add, field_conj, field_inv, field_mul
from .verify import VerificationReport, emit_table, run_suite
from .witt import SpinorSubspace, primitive_idempotent, spinor_basis, witt_vector

__version__ = "0.1.0"

__all__ = [
    "FieldElement",
    "field_add",
    "field_mul",
    "field_inv",
    "field_conj",
    "Multivector",
    "mv_product",
    "mv_grade",
    "mv_clifford_conj",
    "mv_hermitian_conj",
    "mv_inner",
    "SpinorSubspace",
    "witt_vector",
    "primitive_idempotent",
    "spinor_basis",
    "LinearOperator",
    "op_P",
    "op_Q",
    "op_beta",
    "casimir",
    "cell_basis",
    "cell_decompose",
    "projector",
    "witt_component",
    "structure_triple",
    "spin_s_I",
    "spin_s_J",
    "exp_pi4_bivector",
    "double_cover_matrix",
    "algebra_basis",
    "bracket",
    "weight_of",
    "weyl_dim_sp",
    "CliffordPolynomial",
    "apply_dirac",
    "is_monogenic",
    "hermitian_componentwise_check",
    "run_suite",
    "emit_table",
    "VerificationReport",
]
