import itertools

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from invharmonic.catalog import get
from invharmonic.coframe import AlgebraError, CoframeAlgebra, check_integrability_d, differential, invariant_betti
from invharmonic.exterior import Form, basis, mask_from_indices, mask_indices, parse_form, wedge

from conftest import FULL_MODELS, IWASAWA, homogeneous


def _alg(dim, eqs):
    dgen = [Form(dim) for _ in range(dim)]
    for i, text in eqs.items():
        dgen[i - 1] = parse_form(text, dim)
    return CoframeAlgebra(dim, dgen)


def _brackets(alg):
    # [X_i, X_j] = sum_k c[i][j][k] X_k with d e^k(X_i, X_j) = -e^k([X_i, X_j])
    n = alg.dim
    c = [[[0] * n for _ in range(n)] for _ in range(n)]
    for k, dg in enumerate(alg.dgen):
        for mask, coef in dg.items():
            i, j = (x - 1 for x in mask_indices(mask))
            c[i][j][k] = -coef
            c[j][i][k] = coef
    return c


def _evaluate(a, idx):
    # a(X_idx[0], ..., X_idx[-1]) for a homogeneous form and 0-based indices
    if len(set(idx)) < len(idx):
        return 0
    inv = sum(1 for p, q in itertools.combinations(idx, 2) if p > q)
    val = a.coefficient(mask_from_indices(i + 1 for i in idx))
    return -val if inv % 2 else val


def ce_differential(alg, a, k):
    """Chevalley-Eilenberg formula from the brackets."""
    n = alg.dim
    c = _brackets(alg)
    out = {}
    for mask in basis(n, k + 1):
        xs = [i - 1 for i in mask_indices(mask)]
        total = 0
        for p, q in itertools.combinations(range(k + 1), 2):
            rest = [x for r, x in enumerate(xs) if r not in (p, q)]
            for m, coef in enumerate(c[xs[p]][xs[q]]):
                if coef:
                    total = total + coef * _evaluate(a, [m] + rest) * (-1) ** (p + q)
        out[mask] = total
    return Form(n, out)


def _iwasawa_alg():
    from invharmonic.modelfile import parse_model
    return parse_model(IWASAWA).algebra


ALGEBRAS = [get(name).algebra for name in FULL_MODELS] + [_iwasawa_alg()]


@pytest.mark.parametrize("alg", ALGEBRAS, ids=list(FULL_MODELS) + ["iwasawa"])
def test_d_matches_bracket_formula(alg):
    n = alg.dim
    for k in range(n):
        for mask in basis(n, k):
            a = Form(n, {mask: 1})
            assert differential(alg, a) == ce_differential(alg, a, k), (k, mask)


@pytest.mark.parametrize("alg", ALGEBRAS, ids=list(FULL_MODELS) + ["iwasawa"])
def test_d_squared_zero(alg):
    assert check_integrability_d(alg).ok
    for k in range(alg.dim - 1):
        assert (alg.d_matrix(k + 1) @ alg.d_matrix(k)).is_zero()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 4), st.integers(0, 4), st.data())
def test_leibniz(p, q, data):
    alg = get("hopf").algebra
    a = data.draw(homogeneous(4, p))
    b = data.draw(homogeneous(4, q))
    lhs = differential(alg, wedge(a, b))
    rhs = wedge(differential(alg, a), b) + wedge(a, differential(alg, b)) * (-1) ** p
    assert lhs == rhs


def _betti_oracle(alg):
    n = alg.dim
    ranks = []
    for k in range(n + 1):
        m = alg.d_matrix(k)
        ranks.append(sympy.Matrix(m.nrows, m.ncols, [int(x.re) for r in m.rows for x in r]).rank()
                     if m.nrows and m.ncols else 0)
    return [len(basis(n, k)) - ranks[k] - (ranks[k - 1] if k else 0) for k in range(n + 1)]


@pytest.mark.parametrize("alg", ALGEBRAS, ids=list(FULL_MODELS) + ["iwasawa"])
def test_invariant_betti_matches_sympy(alg):
    assert invariant_betti(alg) == _betti_oracle(alg)


def test_known_betti():
    assert invariant_betti(get("torus").algebra) == [1, 4, 6, 4, 1]
    assert invariant_betti(get("kodaira").algebra) == [1, 3, 4, 3, 1]
    assert invariant_betti(get("hopf").algebra) == [1, 1, 0, 1, 1]
    assert invariant_betti(_iwasawa_alg()) == [1, 4, 8, 10, 8, 4, 1]


def test_kodaira_from_complex_structure_equations():
    # d f1 = 0, d f2 = f1 ^ conj(f1) with f^j = e^(2j-1) + i e^(2j); f1 ^ conj(f1) = -2i e12
    from invharmonic.modelfile import parse_model
    spec = parse_model("[algebra]\ndim = 4\nd f2 = 1 f1~1\n[complex-coframe]\n")
    assert spec.algebra == get("kodaira").algebra


def test_corrupted_structure_constants_give_witness():
    bad = _alg(4, {1: "1 e34", 4: "1 e12"})
    res = check_integrability_d(bad)
    assert not res.ok
    assert res.generator == 1
    assert res.witness == differential(bad, bad.dgen[0])
    assert res.witness
    with pytest.raises(AlgebraError):
        bad.validated()


def test_constructor_rejects_bad_shapes():
    with pytest.raises(AlgebraError):
        CoframeAlgebra(3)
    with pytest.raises(AlgebraError):
        CoframeAlgebra(4, [parse_form("1 e1", 4)] + [Form(4)] * 3)
