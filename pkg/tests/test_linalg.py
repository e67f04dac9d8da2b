import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from invharmonic.linalg import Matrix, span_rank
from invharmonic.scalars import Scalar

entry = st.builds(Scalar, st.integers(-2, 2), st.integers(-1, 1))


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(entry, min_size=c, max_size=c), min_size=r, max_size=r)))


def _sym(rows):
    return sympy.Matrix([[sympy.Rational(x.re.numerator, x.re.denominator)
                          + sympy.I * sympy.Rational(x.im.numerator, x.im.denominator) for x in r] for r in rows])


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_matches_sympy(rows):
    assert Matrix(rows).rank() == _sym(rows).rank()


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_nullspace_is_kernel(rows):
    m = Matrix(rows)
    ns = m.nullspace()
    assert len(ns) == m.ncols - m.rank()
    for v in ns:
        assert all(not x for x in m.apply(v))
    assert span_rank(ns, m.ncols) == len(ns)


@settings(max_examples=40, deadline=None)
@given(matrices(4, 4))
def test_inverse_when_square_full_rank(rows):
    m = Matrix(rows)
    if m.nrows != m.ncols or m.rank() < m.nrows:
        return
    assert m @ m.inverse() == Matrix.identity(m.nrows)


def test_conjugate_transpose():
    m = Matrix([[Scalar(1, 1), 2], [0, Scalar(0, -3)]])
    assert m.H == Matrix([[Scalar(1, -1), 0], [2, Scalar(0, 3)]])


def test_solve():
    m = Matrix([[1, 1], [1, -1]])
    assert m.solve([2, 0]) == [1, 1]
    assert Matrix([[1, 1], [1, 1]]).solve([1, 0]) is None
