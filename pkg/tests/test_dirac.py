import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import quatclifford.dirac as D
import quatclifford.groups as G
from oracles import evaluate, partial_by_differences
from quatclifford.clifford import Multivector
from quatclifford.scalar_field import I, FieldElement
from quatclifford.witt import f, fdag, full_spinor_space, primitive_idempotent, spinor_monomial

CP = D.CliffordPolynomial


@st.composite
def polynomials(draw, p=1, max_degree=3, spinor_valued=False):
    n = 4 * p
    terms = {}
    for _ in range(draw(st.integers(1, 4))):
        mono = [0] * n
        for _ in range(draw(st.integers(0, max_degree))):
            mono[draw(st.integers(0, n - 1))] += 1
        if spinor_valued:
            basis = full_spinor_space(p).basis
            v = basis[draw(st.integers(0, len(basis) - 1))]
        else:
            v = Multivector(n, {draw(st.integers(0, 2**n - 1)): FieldElement(draw(st.integers(-3, 3)), draw(st.integers(-3, 3)))})
        terms[tuple(mono)] = v.scale(FieldElement(draw(st.integers(1, 3)), draw(st.integers(-2, 2))))
    return CP(p, terms)


points = st.lists(st.fractions(min_value=-2, max_value=2, max_denominator=5), min_size=4, max_size=4)


@given(polynomials(), st.integers(1, 4), points)
def test_partial_derivative_matches_difference_stencil(F, alpha, pt):
    assert evaluate(F.partial(alpha), pt) == partial_by_differences(F, alpha, pt)


@given(polynomials(), points)
def test_dirac_operator_matches_pointwise_oracle(F, pt):
    expected = Multivector(4)
    for a in range(1, 5):
        expected = expected + Multivector.basis_vector(4, a) * partial_by_differences(F, a, pt)
    assert evaluate(D.apply_dirac("D", F), pt) == expected


@given(polynomials(), points)
def test_hermitian_operators_match_wirtinger_oracle(F, pt):
    """dz = sum f†_k d/dz_k and dz_dag = sum f_k d/dzbar_k."""
    half = FieldElement(Fraction(1, 2))
    dz = Multivector(4)
    dzd = Multivector(4)
    for k in (1, 2):
        dx = partial_by_differences(F, 2 * k - 1, pt)
        dy = partial_by_differences(F, 2 * k, pt)
        dz = dz + fdag(k, 1) * (dx - dy.scale(I)).scale(half)
        dzd = dzd + f(k, 1) * (dx + dy.scale(I)).scale(half)
    assert evaluate(D.apply_dirac("dz", F), pt) == dz
    assert evaluate(D.apply_dirac("dz_dag", F), pt) == dzd


@given(polynomials(max_degree=2))
def test_dirac_squares_to_minus_laplacian(F):
    assert -D.apply_dirac("D", D.apply_dirac("D", F)) == D.laplacian(F)
    assert D.apply_dirac("dz", D.apply_dirac("dz", F)).is_zero()
    assert D.apply_dirac("dz_dag", D.apply_dirac("dz_dag", F)).is_zero()


def test_dirac_of_vector_variable():
    for p in (1, 2):
        X = CP.vector_variable(p)
        assert D.apply_dirac("D", X) == CP.constant(p, -4 * p)


def test_monogenic_examples():
    idem = primitive_idempotent(1)
    const = CP.constant(1, idem.scale(FieldElement(2, 1)))
    assert D.is_monogenic(const, "quaternionic")
    F = CP.zbar(1, 1) * idem
    assert D.is_monogenic(F, "hermitian")
    res = D.is_monogenic(F, "quaternionic")
    assert not res and res.operator == "dzJ_dag"
    assert res.witness == CP.constant(1, -spinor_monomial((2,), 1))
    G_ = CP.variable(1, 1) * idem
    res = D.is_monogenic(G_, "euclidean")
    assert not res and res.witness == CP.constant(1, Multivector.basis_vector(4, 1) * idem)
    assert D.apply_dirac("dzJ_dag", F) == CP.constant(1, -spinor_monomial((2,), 1))


def test_hermitian_and_real_systems_agree_on_examples():
    idem = primitive_idempotent(1)
    for F in (CP.zbar(1, 1) * idem, CP.z(1, 1) * idem, CP.variable(1, 3) * idem):
        assert bool(D.is_monogenic(F, "hermitian")) == bool(D.is_monogenic(F, "hermitian_real"))
        assert bool(D.is_monogenic(F, "quaternionic")) == bool(D.is_monogenic(F, "quaternionic_real"))


@pytest.mark.parametrize("p", [1, 2])
def test_operator_dictionary(p):
    report = D.operator_identity_suite(p, max_degree=3 if p == 1 else 2)
    assert all(ok for ok, _ in report.values()), {k: v for k, v in report.items() if not v[0]}


def test_literal_quaternionic_projection_reading_fails():
    qp = D._quaternion_projection(1)
    assert qp["j_linear+"] and qp["j_linear-"]
    assert not qp["literal+"]


def test_twists_of_vector_variable():
    X = CP.vector_variable(1)
    expected = (
        CP.variable(1, 2) * Multivector.basis_vector(4, 1) * -1
        + CP.variable(1, 1) * Multivector.basis_vector(4, 2)
        - CP.variable(1, 4) * Multivector.basis_vector(4, 3)
        + CP.variable(1, 3) * Multivector.basis_vector(4, 4)
    )
    assert D.twist_vector("I", X) == expected
    for p in (1, 2):
        X = CP.vector_variable(p)
        kx = D.twist_vector("K", X)
        assert D.twist_vector("J", D.twist_vector("I", X)) == kx
        assert D.twist_vector("I", D.twist_vector("J", X)) == -kx
        assert D.twist_vector("I", D.twist_vector("I", X)) == -X


def test_twist_rejects_non_vectors():
    with pytest.raises(ValueError):
        D.twist_vector("I", CP.constant(1, primitive_idempotent(1)))
    with pytest.raises(ValueError):
        D.twist_vector("L", CP.vector_variable(1))


def test_componentwise_examples():
    idem = primitive_idempotent(2)
    top = spinor_monomial((1, 2), 2)
    pos = CP.zbar(2, 1) * idem + CP.z(2, 2) * top
    res = D.hermitian_componentwise_check(pos)
    assert res["hermitian_monogenic"] and res["componentwise_monogenic"] and res["equivalent"]
    neg = CP.variable(2, 1) * idem + CP.z(2, 2) * top
    res = D.hermitian_componentwise_check(neg)
    assert not res["hermitian_monogenic"] and not res["componentwise_monogenic"] and res["equivalent"]
    assert res["witness"]["component"] == 0
    # the combination with zbar_2 in degree two is not monogenic at all
    odd = CP.zbar(2, 1) * idem + CP.zbar(2, 2) * top
    res = D.hermitian_componentwise_check(odd)
    assert res["equivalent"] and not res["hermitian_monogenic"] and res["failing_components"] == [2]


@given(polynomials(p=1, max_degree=2, spinor_valued=True))
def test_componentwise_equivalence_on_random_spinor_polynomials(F):
    res = D.hermitian_componentwise_check(F)
    assert res["equivalent"] and res["degree_mapping_ok"]


def test_componentwise_equivalence_on_constructed_solutions():
    rng = random.Random(3)
    basis = D.quaternionic_monogenic_basis(1, 2)
    assert basis
    for _ in range(5):
        F = D.random_combination(basis, rng)
        res = D.hermitian_componentwise_check(F)
        assert res["hermitian_monogenic"] and res["componentwise_monogenic"]


def test_spin_action_preserves_solutions():
    rng = random.Random(5)
    basis = D.quaternionic_monogenic_basis(1, 2)
    s_a = G.exp_pi4_bivector([(1, 1, 4), (-1, 2, 3)], 4)
    for s in (G.spin_s_I(1), G.spin_s_J(1), s_a):
        for _ in range(3):
            F = D.random_combination(basis, rng)
            assert D.is_monogenic(D.l_action(s, F), "quaternionic")


def test_unknown_operator_and_system():
    with pytest.raises(ValueError):
        D.apply_dirac("dw", CP.variable(1, 1))
    with pytest.raises(ValueError):
        D.is_monogenic(CP.variable(1, 1), "octonionic")


def test_json_roundtrip():
    F = CP.zbar(1, 1) * primitive_idempotent(1) + CP.variable(1, 3) ** 2
    assert CP.from_json(F.to_json()) == F
