import pytest
import sympy

from invharmonic.exterior import conjugate, parse_form
from invharmonic.harmonic import (FAMILIES, conditions, dimension_table, duality_report, gamma0, harmonic_space,
                                  hodge_decompose, laplacian_kernel_agrees, normalize_label, special_space,
                                  verify_ddc_decomposition, verify_ddlambda_decomposition,
                                  verify_inclusion_theorems)
from invharmonic.operators import adjoint, build


def _to_sympy(m):
    return sympy.Matrix(m.nrows, m.ncols, [sympy.Rational(x.re.numerator, x.re.denominator)
                                           + sympy.I * sympy.Rational(x.im.numerator, x.im.denominator)
                                           for r in m.rows for x in r])


def test_dimensions_match_sympy_nullspace(model):
    # joint kernel dimension = ncols - rank of the stacked condition blocks
    _, t = model
    for lab in FAMILIES:
        for k in range(t.dim + 1):
            blocks = [_to_sympy(op.block(k)) for op in conditions(t, lab)]
            blocks = [b for b in blocks if b.rows]
            ncols = len(harmonic_space(t, lab, k).basis) if not blocks else blocks[0].cols
            rank = sympy.Matrix.vstack(*blocks).rank() if blocks else 0
            assert harmonic_space(t, lab, k).dim == ncols - rank, (lab, k)


def test_basis_satisfies_conditions(model):
    _, t = model
    for lab in FAMILIES:
        conds = conditions(t, lab)
        for k in range(t.dim + 1):
            for f in harmonic_space(t, lab, k).basis:
                assert all(not op(f) for op in conds)


def test_conjugation_stable(model):
    _, t = model
    for lab in FAMILIES:
        for k in range(t.dim + 1):
            hs = harmonic_space(t, lab, k)
            assert all(hs.contains(conjugate(f)) for f in hs.basis)


@pytest.mark.parametrize("lab", FAMILIES)
def test_laplacian_kernel_agrees(model, lab):
    _, t = model
    assert laplacian_kernel_agrees(t, lab)


def test_duality_chains_and_maps(model):
    name, t = model
    rep = duality_report(t)
    assert rep.ok, (name, rep.chains, rep.maps)


def test_duality_six(iwasawa):
    rep = duality_report(iwasawa)
    assert rep.ok
    # closed 1-forms e1..e4 are d- and dc-closed and coclosed
    assert rep.table["d+dc"][1] == 4


def test_kt_spaces_differ_but_dimensions_agree(triples):
    t = triples["kodaira-thurston"]
    a, b = harmonic_space(t, "d+dc", 3), harmonic_space(t, "dc+d", 3)
    assert a.dim == b.dim == 3
    assert not all(b.contains(f) for f in a.basis)
    J = build(t, "J")
    assert all(b.contains(J(f)) for f in a.basis)


def test_hodge_decomposition(model):
    _, t = model
    d = build(t, "d")
    for k in (1, 2, 3):
        for text in ("1 e12 + 2 e34", "1 e1 + -1 e4", "1 e123 + 1 e234"):
            a = parse_form(text, t.dim)
            if a.degree() != k:
                continue
            dec = hodge_decompose(t, a)
            assert dec.harmonic + dec.exact + dec.coexact == a
            assert d(dec.eta) == dec.exact
            assert adjoint(d)(dec.mu) == dec.coexact
            # least norm: eta is orthogonal to ker d, mu to ker d^*
            if dec.eta:
                de = hodge_decompose(t, dec.eta)
                assert not de.harmonic and not de.exact
            if dec.mu:
                dm = hodge_decompose(t, dec.mu)
                assert not dm.harmonic and not dm.coexact


GAMMA0 = {"torus": "0", "kodaira": "1 e12 + -1 e34", "hopf": "-1 e12 + 1 e34", "kodaira-thurston": "0"}


def test_gamma0(model):
    name, t = model
    g = gamma0(t)
    assert g.gamma0 == parse_form(GAMMA0[name], 4)
    star, J = build(t, "star"), build(t, "J")
    assert star(g.gamma0) == -g.gamma0
    assert J(g.gamma0) == g.gamma0
    assert harmonic_space(t, "d+dc", 2).contains(t.omega + g.gamma0)


SUMMANDS = {"torus": "6 = 1 + 3 + 2", "kodaira": "5 = 1 + 2 + 2", "hopf": "1 = 1 + 0 + 0",
            "kodaira-thurston": "4 = 1 + 2 + 1"}


def test_ddc_decomposition(model):
    name, t = model
    v = verify_ddc_decomposition(t)
    assert v.applicable and v.passed
    assert v.detail.startswith(SUMMANDS[name])


def test_ddlambda_decomposition_branches(model):
    name, t = model
    v = verify_ddlambda_decomposition(t)
    assert v.passed
    closed = name in ("torus", "kodaira-thurston")
    assert v.detail.startswith("d omega = 0" if closed else "d omega != 0")


def test_inclusion_theorems(model):
    name, t = model
    vs = verify_inclusion_theorems(t)
    assert vs
    assert all(v.status() != "FAIL" for v in vs), [v for v in vs if v.status() == "FAIL"]


def test_inclusion_theorems_six(iwasawa):
    vs = verify_inclusion_theorems(iwasawa)
    assert all(v.status() != "FAIL" for v in vs), [v for v in vs if v.status() == "FAIL"]


def test_special_spaces_need_four(iwasawa):
    with pytest.raises(ValueError):
        special_space(iwasawa, "anti_self_dual_harmonic")
    v = verify_ddc_decomposition(iwasawa)
    assert not v.applicable


def test_anti_self_dual_dimension(triples):
    assert special_space(triples["kodaira"], "anti_self_dual_harmonic").dim == 2
    assert special_space(triples["hopf"], "anti_self_dual_harmonic").dim == 0


def test_label_aliases():
    assert normalize_label("d+dLambda") == "d+dL"
    with pytest.raises(ValueError):
        normalize_label("d+dx")


def test_vol_spans_top_d_plus_dlambda(model):
    _, t = model
    hs = harmonic_space(t, "d+dL", t.dim)
    assert hs.dim == 1 and hs.contains(t.vol)


def test_dimension_table_keys(model):
    _, t = model
    assert list(dimension_table(t)) == list(FAMILIES)
