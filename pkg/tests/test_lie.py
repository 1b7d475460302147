import re

import pytest
from hypothesis import given, strategies as st

import quatclifford.groups as G
import quatclifford.lie as L
from oracles import dict_close, mv_to_dict, oracle_product, oracle_witt, weyl_dimension_sp
from quatclifford.cells import op_Q
from quatclifford.clifford import DimensionMismatch, Multivector

from quatclifford.witt import primitive_idempotent, spinor_basis, spinor_monomial

SIZES = {
    "spinI": lambda p: 4 * p * p,
    "spinQ": lambda p: p * (2 * p + 1),
    "sl2p": lambda p: 4 * p * p - 1,
    "sp2p": lambda p: p * (2 * p + 1),
    "slp_inside": lambda p: p * p - 1,
}


def _oracle_witt_word(label: str) -> dict:
    """Evaluate labels such as 'f2 f†3 - f†1 f4' or 'H1^sympl' in floating point."""
    def vec(tok):
        m = re.fullmatch(r"f(†?)(\d+)", tok)
        return oracle_witt(int(m.group(2)), bool(m.group(1)))

    def idem(k):
        return oracle_product(oracle_witt(k, False), oracle_witt(k, True))

    h = re.fullmatch(r"H(\d+)\^sympl", label)
    if h:
        j = int(h.group(1))
        out = dict(idem(2 * j))
        for k, v in idem(2 * j - 1).items():
            out[k] = out.get(k, 0) - v
        return out
    out: dict = {}
    for sign, a, b in re.findall(r"([+-]?)\s*(f†?\d+) (f†?\d+)", label):
        s = -1 if sign == "-" else 1
        for k, v in oracle_product(vec(a), vec(b)).items():
            out[k] = out.get(k, 0) + s * v
    return out


def test_conversion_table_against_oracle():
    rows = L.conversion_table()
    assert len(rows) == 10
    for label, witt_side, e_side in rows:
        assert witt_side == e_side, label
        assert dict_close(_oracle_witt_word(label), mv_to_dict(e_side)), label
    h = L.cartan(2, "sp2p")
    assert L.bracket(h[0], h[1]).is_zero()


@pytest.mark.parametrize("p", [1, 2, 3])
def test_basis_sizes(p):
    for tag in L.TAGS:
        if tag == "slp_inside" and p < 2:
            continue
        assert len(L.algebra_basis(p, tag)) == SIZES[tag](p)
    assert len(L.algebra_basis(p, "sl2p", "e")) == 4 * p * p - 1


@pytest.mark.parametrize("p", [1, 2])
def test_bases_close_under_bracket(p):
    for tag in L.TAGS:
        if tag == "slp_inside" and p < 2:
            continue
        assert L.closure_defects(L.algebra_basis(p, tag)) == []


@pytest.mark.parametrize("p", [1, 2])
def test_inclusions(p):
    sl_w, sp_w = L.algebra_basis(p, "sl2p"), L.algebra_basis(p, "sp2p")
    assert all(L.span_contains(sl_w, x) for x in L.algebra_basis(p, "sl2p", "e").elements)
    assert all(L.span_contains(sp_w, x) for x in L.algebra_basis(p, "sp2p", "e").elements)
    assert all(L.span_contains(sl_w, x) for x in sp_w.elements)
    # sp_2p is all of sl_2p only when p = 1
    assert all(L.span_contains(sp_w, x) for x in sl_w.elements) == (p == 1)


def test_rank_one_listing():
    e = lambda *ix: Multivector.blade(4, list(ix))  # noqa: E731
    sl_w, sp_w = L.algebra_basis(1, "sl2p"), L.algebra_basis(1, "sp2p")
    for x in (e(1, 2) - e(3, 4), e(1, 3) + e(2, 4), e(1, 4) - e(2, 3)):
        assert L.span_contains(sl_w, x) and L.span_contains(sp_w, x)


@pytest.mark.parametrize("p", [1, 2])
def test_quaternionic_spin_algebra_commutes_with_structures(p):
    sI, sJ = G.spin_s_I(p), G.spin_s_J(p)
    for x in L.algebra_basis(p, "spinQ").elements:
        assert x * sI == sI * x and x * sJ == sJ * x
        m = L.sp_shape_matrix(x)
        assert m is not None and L.is_sp_matrix(m)


coeffs = st.lists(st.integers(-2, 2), min_size=4, max_size=4)


@given(st.sampled_from(["sl2p", "sp2p", "spinQ"]), coeffs, coeffs, coeffs)
def test_bracket_properties(tag, ca, cb, cc):
    basis = L.algebra_basis(2, tag).elements

    def combo(cs):
        out = Multivector(8)
        for c, x in zip(cs, basis[1:] + basis[:1]):
            out = out + x.scale(c)
        return out

    x, y, z = combo(ca), combo(cb), combo(cc)
    assert L.bracket(x, x).is_zero()
    assert L.bracket(x, y) == -L.bracket(y, x)
    jac = L.bracket(x, L.bracket(y, z)) + L.bracket(y, L.bracket(z, x)) + L.bracket(z, L.bracket(x, y))
    assert jac.is_zero()
    assert L.span_contains(L.algebra_basis(2, tag), L.bracket(x, y))


def test_bracket_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        L.bracket(Multivector.scalar(4), Multivector.scalar(8))


@pytest.mark.parametrize("p", [1, 2, 3])
def test_weight_examples(p):
    top = L.weight_of(p, "sl2p", spinor_monomial((2 * p,), p))
    assert [x.to_fraction() for x in top] == [1] * (2 * p - 1)
    assert all(not x for x in L.weight_of(p, "sl2p", primitive_idempotent(p)))


def test_non_eigenvector_is_rejected():
    v = spinor_monomial((1,), 2) + spinor_monomial((2,), 2)
    with pytest.raises(L.NotAnEigenvector):
        L.weight_of(2, "sp2p", v)
    with pytest.raises(L.NotAnEigenvector):
        L.weight_of(2, "sp2p", Multivector(8))


def test_highest_weight_example_p2():
    v = spinor_monomial((1, 3), 2)
    assert op_Q(2)(v).is_zero()
    assert L.highest_weight_vector(1, 1, 1) == primitive_idempotent(1)


@pytest.mark.parametrize("p", [1, 2, 3])
def test_highest_weight_vectors(p):
    for r in range(p + 1):
        for entry in L.highest_weight_cell_check(p, r):
            assert entry["ok"], entry
            v = L.highest_weight_vector(p, entry["a"], entry["b"])
            assert spinor_basis(p, 2 * p - r).contains(v)
            assert op_Q(p)(v).is_zero()


def test_weyl_examples():
    assert L.weyl_dim_sp(3, 3) == 14
    assert L.weyl_dim_sp(2, 2) == 5
    for p in range(1, 6):
        assert L.weyl_dim_sp(p, 0) == 1
    with pytest.raises(ValueError):
        L.weyl_dim_sp(2, 3)


@given(st.integers(1, 9), st.data())
def test_weyl_closed_form_against_root_oracle(p, data):
    r = data.draw(st.integers(0, p))
    w = [1] * r + [0] * (p - r)
    assert L.weyl_dim_sp(p, r) == L.weyl_dim_sp_roots(p, w) == weyl_dimension_sp(p, w)


@given(st.integers(1, 5), st.data())
def test_root_product_on_general_dominant_weights(p, data):
    w = sorted(data.draw(st.lists(st.integers(0, 4), min_size=p, max_size=p)), reverse=True)
    assert L.weyl_dim_sp_roots(p, w) == weyl_dimension_sp(p, w)


@pytest.mark.parametrize("p", [1, 2, 3])
def test_dimension_ledger(p):
    rows = L.dimension_ledger(p)
    assert all(r["ok"] for r in rows)
    if p == 2:
        assert [r["diagram"] for r in rows] == [2, 12, 56, 6, 30, 6, 20]


@pytest.mark.parametrize("p", [1, 2])
def test_cells_are_symplectic_invariant(p):
    assert all(not v for v in L.sp_invariance_check(p).values())


def test_unknown_algebra():
    with pytest.raises(ValueError):
        L.algebra_basis(2, "so4p")
    with pytest.raises(ValueError):
        L.algebra_basis(2, "slp_inside", "e")


def test_json_export():
    data = L.algebra_basis(1, "sp2p").to_json()
    assert data["algebra"] == "sp2p" and len(data["elements"]) == 3
    assert Multivector.from_json(data["elements"][0]["value"]) == L.algebra_basis(1, "sp2p").elements[0]
