import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invharmonic.catalog import get
from invharmonic.coframe import CoframeAlgebra
from invharmonic.exterior import Form, basis, conjugate, generator, mask_indices, wedge
from invharmonic.linalg import Matrix
from invharmonic.scalars import I, ONE
from invharmonic.triple import (TripleError, bigrade, hodge_star, j_act, j_inv, lefschetz, lefschetz_decompose,
                                make_triple, predicates, primitive_basis, standard_j, symplectic_star,
                                weil_star_check)

from conftest import homogeneous


def _contract(i, a):
    """Interior product with the dual vector of e^i (1-based), by position counting."""
    out = {}
    for mask, c in a.items():
        idx = mask_indices(mask)
        if i in idx:
            pos = idx.index(i)
            out[mask ^ (1 << (i - 1))] = c * (-1) ** pos
    return Form(a.dim, out)


def lambda_oracle(t, a):
    # adjoint of e^a ^ e^b ^ is i_b i_a, so Lambda = sum omega_ab i_b i_a
    out = Form(a.dim)
    for mask, w in t.omega.items():
        p, q = mask_indices(mask)
        out = out + _contract(q, _contract(p, a)) * w
    return out


def test_standard_j_and_omega():
    t = make_triple(CoframeAlgebra.abelian(4), standard_j(4))
    assert str(t.omega) == "1 e12 + 1 e34"
    assert t.orientation == 1
    # J e^1 = -e^2 on covectors
    assert j_act(t, generator(4, 1)) == -generator(4, 2)


def test_phi_are_plus_i_eigenvectors(model):
    _, t = model
    for p in t.phi:
        assert j_act(t, p) == p * I
        assert j_act(t, conjugate(p)) == conjugate(p) * -I


def test_j_squared_on_k_forms(model):
    _, t = model
    for k in range(t.dim + 1):
        for mask in basis(t.dim, k):
            a = Form(t.dim, {mask: 1})
            assert j_act(t, j_act(t, a)) == a * (-1) ** k
            assert j_inv(t, j_act(t, a)) == a


def test_star_pairing_oracle(model):
    # a ^ *conj(b) = <a, b> Vol with orthonormal monomials
    _, t = model
    n = t.dim
    for k in range(n + 1):
        for ma, mb in itertools.product(basis(n, k), repeat=2):
            a, b = Form(n, {ma: 1}), Form(n, {mb: 1})
            assert wedge(a, hodge_star(t, b)) == t.vol * (1 if ma == mb else 0)


def test_star_squared(model):
    _, t = model
    for k in range(t.dim + 1):
        for mask in basis(t.dim, k):
            a = Form(t.dim, {mask: 1})
            assert hodge_star(t, hodge_star(t, a)) == a * (-1) ** k
            assert symplectic_star(t, symplectic_star(t, a)) == a


def test_volume_is_omega_power(model):
    _, t = model
    assert wedge(t.omega, t.omega) * ONE == t.vol * 2


def test_lambda_matches_contraction(model):
    _, t = model
    for k in range(t.dim + 1):
        for mask in basis(t.dim, k):
            a = Form(t.dim, {mask: 1})
            assert lefschetz(t, a, "down") == lambda_oracle(t, a)


def test_bigrading_sums_back(model):
    _, t = model
    for k in range(t.dim + 1):
        for mask in basis(t.dim, k):
            a = Form(t.dim, {mask: 1})
            parts = bigrade(t, a)
            assert sum(parts.values(), Form(t.dim)) == a
            for (p, q), f in parts.items():
                assert j_act(t, f) == f * I ** ((p - q) % 4)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 4), st.data())
def test_lefschetz_decomposition_reassembles(k, data):
    t = get("kodaira").triple()
    a = data.draw(homogeneous(4, k))
    total = Form(4)
    for j, p in lefschetz_decompose(t, a):
        assert not lefschetz(t, p, "down")
        term = p
        for _ in range(j):
            term = wedge(t.omega, term)
        total = total + term
    assert total == a


def test_primitive_dimensions(iwasawa):
    # C(2m, k) - C(2m, k - 2)
    assert [len(primitive_basis(iwasawa, k)) for k in range(4)] == [1, 6, 14, 14]


def test_weil_formula(model):
    _, t = model
    assert weil_star_check(t).ok


def test_weil_formula_six(iwasawa):
    assert weil_star_check(iwasawa).ok


def test_weil_wrong_convention_fails(model):
    _, t = model
    res = weil_star_check(t, lambda f: j_act(t, f, -1))
    assert not res.ok
    assert res.lhs != res.rhs


FLAGS = {
    "torus": dict(integrable=True, almost_kahler=True, kahler=True),
    "kodaira": dict(integrable=True, almost_kahler=False, kahler=False),
    "hopf": dict(integrable=True, almost_kahler=False, kahler=False),
    "kodaira-thurston": dict(integrable=False, almost_kahler=True, kahler=False),
}


def test_predicate_flags(model):
    name, t = model
    got = predicates(t).as_dict()
    for k, v in FLAGS[name].items():
        assert got[k] == v, (name, k)


def test_iwasawa_predicates(iwasawa):
    p = predicates(iwasawa)
    assert p.integrable and p.balanced and not p.almost_kahler


@pytest.mark.parametrize("rows, msg", [
    ([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]], "J^2"),
    ([[0, -2, 0, 0], [Fraction(1, 2), 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]], "orthogonal"),
    ([[0, -1, 0], [1, 0, 0], [0, 0, 1]], "4x4"),
])
def test_make_triple_rejects(rows, msg):
    with pytest.raises(TripleError, match=msg.replace("^", r"\^")):
        make_triple(CoframeAlgebra.abelian(4), Matrix(rows))


def test_kt_omega_closed():
    t = get("kodaira-thurston").triple()
    assert str(t.omega) == "1 e23 + 1 e14"
    assert predicates(t).almost_kahler
