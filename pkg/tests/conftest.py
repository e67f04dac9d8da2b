import sys

import pytest
from hypothesis import strategies as st

from invharmonic.catalog import get
from invharmonic.exterior import Form
from invharmonic.modelfile import parse_model
from invharmonic.triple import make_triple

FULL_MODELS = ("torus", "kodaira", "hopf", "kodaira-thurston")

# complex 3-dimensional nilpotent model, d f3 = f1 ^ f2
IWASAWA = """\
[model]
name = iwasawa

[algebra]
dim = 6
d f3 = 1 f12

[complex-coframe]
"""


@pytest.fixture(scope="session")
def triples():
    return {name: get(name).triple() for name in FULL_MODELS}


@pytest.fixture(scope="session")
def iwasawa():
    spec = parse_model(IWASAWA)
    return make_triple(spec.algebra, spec.jmat)


@pytest.fixture(params=FULL_MODELS)
def model(request, triples):
    return request.param, triples[request.param]


def forms(dim, max_coef=3, complex_coefs=False):
    """Hypothesis strategy for arbitrary inhomogeneous forms."""
    coef = st.integers(-max_coef, max_coef)
    if complex_coefs:
        from invharmonic.scalars import Scalar
        coef = st.builds(Scalar, st.integers(-max_coef, max_coef), st.integers(-max_coef, max_coef))
    return st.dictionaries(st.integers(0, (1 << dim) - 1), coef, max_size=6).map(lambda d: Form(dim, d))


def homogeneous(dim, k, max_coef=3):
    from invharmonic.exterior import basis
    masks = basis(dim, k)
    return st.lists(st.integers(-max_coef, max_coef), min_size=len(masks), max_size=len(masks)).map(
        lambda cs: Form(dim, dict(zip(masks, cs))))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
