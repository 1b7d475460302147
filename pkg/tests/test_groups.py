from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import quatclifford.groups as G
from oracles import cmatmul, dict_close, field_value, mv_to_dict, oracle_conj, oracle_exp, oracle_product, quat_matrix
from quatclifford.clifford import Multivector
from quatclifford.linalg import identity, mat_scale, matmul, transpose
from quatclifford.scalar_field import I, ONE, ZERO, FieldElement

HALF = FieldElement(Fraction(1, 2))
ints = st.integers(-3, 3)
quats = st.builds(G.Quaternion, ints, ints, ints, ints)


def e(*ix, dim=4):
    return Multivector.blade(dim, list(ix))


def as_complex(m):
    return [[field_value(x) for x in row] for row in m]


def oracle_cover(s: Multivector):
    """Rows of s e_a s^{-1}, in floating point."""
    sd = mv_to_dict(s)
    sc = oracle_conj(sd)
    norm = oracle_product(sd, sc).get((), 0)
    rows = []
    for a in range(1, s.dim + 1):
        img = oracle_product(oracle_product(sd, {(a,): 1.0}), sc)
        rows.append([img.get((b,), 0) / norm for b in range(1, s.dim + 1)])
    return rows


@given(quats, quats)
def test_quaternion_product_matches_complex_matrices(a, b):
    lhs = quat_matrix(*(a * b).q)
    rhs = cmatmul(quat_matrix(*a.q), quat_matrix(*b.q))
    assert all(abs(x - y) < 1e-9 for r1, r2 in zip(lhs, rhs) for x, y in zip(r1, r2))


@given(quats)
def test_quaternion_norm_and_inverse(q):
    q0, q1, q2, q3 = q.q
    assert q.norm2() == q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3
    if q:
        assert q * q.inv() == G.Quaternion(1)


@given(st.lists(quats, min_size=4, max_size=4), st.lists(quats, min_size=4, max_size=4))
def test_psi_is_multiplicative(xs, ys):
    a, b = [xs[:2], xs[2:]], [ys[:2], ys[2:]]
    assert G.psi_embed(G.quaternion_matmul(a, b)) == matmul(G.psi_embed(a), G.psi_embed(b))
    assert G.psi_inverse(G.psi_embed(a)) == a


@given(st.lists(st.builds(FieldElement, ints, ints), min_size=8, max_size=8))
def test_phi_is_multiplicative(xs):
    a, b = [xs[:2], xs[2:4]], [xs[4:6], xs[6:]]
    assert G.phi_embed(matmul(a, b)) == matmul(G.phi_embed(a), G.phi_embed(b))
    assert G.phi_inverse(G.phi_embed(a)) == a


@pytest.mark.parametrize("p", [1, 2, 3])
def test_structure_triple_relations(p):
    mi, mj, mk = (G.structure_matrix(k, p) for k in "IJK")
    minus = mat_scale(identity(4 * p), -1)
    for m in (mi, mj, mk):
        assert matmul(m, m) == minus
        assert matmul(m, transpose(m)) == identity(4 * p)
    assert matmul(mi, mj) == mk == mat_scale(matmul(mj, mi), -1)


def test_embedding_examples():
    mi = G.structure_matrix("I", 1)
    assert G.phi_embed([[I, ZERO], [ZERO, I]]) == mi
    assert G.psi_embed([[G.QK]]) == [[ZERO, I], [I, ZERO]]
    x = [FieldElement(v) for v in (1, 2, 3, 4)]
    assert G.vec_mat(x, mi) == [-x[1], x[0], -x[3], x[2]]


def test_spin_element_examples():
    one = Multivector.scalar(4)
    assert G.spin_s_I(1) == ((one + e(1, 2)) * (one + e(3, 4))).scale(HALF)
    assert G.spin_s_J(1) == ((one + e(1, 3)) * (one - e(2, 4))).scale(HALF)
    s_a = G.exp_pi4_bivector([(1, 1, 4), (-1, 2, 3)], 4)
    assert s_a == ((one + e(1, 4)) * (one - e(2, 3))).scale(HALF)
    assert G.exp_pi4_bivector([], 4) == one


@pytest.mark.parametrize("p", [1, 2, 3])
def test_exponentials_of_structure_bivectors(p):
    n = 4 * p
    assert G.exp_pi4_bivector(G.sigma_I_terms(p), n) == G.spin_s_I(p)
    assert G.exp_pi4_bivector(G.sigma_J_terms(p), n) == G.spin_s_J(p)


@pytest.mark.parametrize("p", [1, 2])
def test_exponentials_match_taylor_oracle(p):
    import math

    for terms, s in ((G.sigma_I_terms(p), G.spin_s_I(p)), (G.sigma_J_terms(p), G.spin_s_J(p))):
        biv = {(i, j): c * math.pi / 4 for c, i, j in terms}
        assert dict_close(mv_to_dict(s), oracle_exp(biv), tol=1e-9)


@given(st.permutations(range(1, 7)), st.lists(st.integers(-4, 4), min_size=3, max_size=3))
def test_random_rotor_matches_taylor_oracle_and_cover(perm, cs):
    import math

    terms = [(c, perm[2 * t], perm[2 * t + 1]) for t, c in enumerate(cs) if c]
    terms = [(c, min(i, j), max(i, j)) for c, i, j in terms]
    s = G.exp_pi4_bivector(terms, 8)
    biv = {(i, j): c * math.pi / 4 for c, i, j in terms}
    assert dict_close(mv_to_dict(s), oracle_exp(biv, terms=60), tol=1e-8)
    # the float series loses accuracy for large angles, so periodicity is checked exactly instead
    assert G.exp_pi4_bivector([(c + 8, i, j) for c, i, j in terms], 8) == s
    cover = G.double_cover_matrix(s)
    assert G.is_special_orthogonal(cover)
    ref = oracle_cover(s)
    assert all(abs(field_value(x) - y) < 1e-9 for r1, r2 in zip(cover, ref) for x, y in zip(r1, r2))


@pytest.mark.parametrize("p", [1, 2])
def test_double_cover_of_structure_elements(p):
    sI, sJ = G.spin_s_I(p), G.spin_s_J(p)
    assert G.double_cover_matrix(sI) == G.structure_matrix("I", p)
    assert G.double_cover_matrix(sJ) == G.structure_matrix("J", p)
    assert G.double_cover_matrix(-sJ) == G.double_cover_matrix(sJ)
    assert G.double_cover_matrix(sI * sJ) == matmul(G.structure_matrix("J", p), G.structure_matrix("I", p))


def test_worked_example_chain():
    k = [[G.QK]]
    b = G.psi_embed(k)
    a = G.phi_embed(b)
    expected = [[FieldElement(v) for v in row] for row in [[0, 0, 0, 1], [0, 0, -1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]]]
    assert a == expected
    assert G.exp_quarter_quaternion(G.QK, 2) == G.QK
    assert G.exp_quarter_matrix(b, 2) == b and G.exp_quarter_matrix(a, 2) == a
    sigma_a = [(1, 1, 4), (-1, 2, 3)]
    assert G.bivector_to_skew(G.bivector_from_terms(sigma_a, 4)) == mat_scale(a, 2)
    s_a = G.exp_pi4_bivector(sigma_a, 4)
    assert G.double_cover_matrix(s_a) == a
    x = [FieldElement(v) for v in (1, 2, 3, 4)]
    assert G.vec_mat(x, G.double_cover_matrix(s_a)) == [-x[3], x[2], -x[1], x[0]]
    assert G.subgroup_membership(s_a, "Spin_Q")
    assert G.subgroup_membership(a, "SO_Q")
    assert G.sp_group_roundtrip(k) == a
    assert G.sp_group_roundtrip([[G.Quaternion(1)]]) == identity(4)


def test_membership_examples():
    assert not G.subgroup_membership(G.structure_matrix("J", 1), "SO_I")
    assert G.subgroup_membership(G.structure_matrix("I", 1), "SO_I")
    for p in (1, 2):
        assert G.subgroup_membership(identity(4 * p), "SO_Q")
    assert G.subgroup_membership(G.spin_s_I(1), "Spin_I")
    assert not G.subgroup_membership(G.spin_s_J(1), "Spin_I")


def test_u2p_generators_commute_with_s_I():
    p = 1
    sI = G.spin_s_I(p)
    gens = G.spin_I_generators(p)
    assert len(gens) == 4 * p * p
    for _, terms in gens:
        s = G.exp_pi4_bivector(terms, 4 * p)
        assert G.subgroup_membership(s, "Spin_I")
        assert s * sI == sI * s


def test_invalid_inputs():
    with pytest.raises(ValueError):
        G.exp_pi4_bivector([(1, 1, 2), (1, 2, 3)], 4)
    with pytest.raises(ValueError):
        G.exp_pi4_bivector([(1, 1, 1)], 4)
    with pytest.raises(ValueError):
        G.exp_quarter_matrix(identity(2), 1)
    with pytest.raises(ValueError):
        G.exp_quarter_quaternion(G.Quaternion(1, 1), 1)
    with pytest.raises(ValueError):
        G.sp_group_roundtrip([[G.Quaternion(2)]])
    with pytest.raises(G.NotSpinElement):
        G.double_cover_matrix(e(1))


def test_trig_table():
    import math

    for c in range(-8, 9):
        assert abs(field_value(G.cos_pi4(c)) - math.cos(c * math.pi / 4)) < 1e-12
        assert abs(field_value(G.sin_pi4(c)) - math.sin(c * math.pi / 4)) < 1e-12
    assert G.cos_pi4(0) == ONE
