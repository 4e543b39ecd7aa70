from pathlib import Path

import pytest
from hypothesis import strategies as st

from tpnlie.brackets import JacobianBracket, PolynomialModel, WBracket
from tpnlie.exact_poly import Polynomial, PolynomialRing

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def polynomials(ring: PolynomialRing, max_degree: int = 3, max_terms: int = 5, bound: int = 6):
    exps = st.tuples(*[st.integers(0, max_degree)] * ring.nvars).filter(lambda e: sum(e) <= max_degree)
    coeffs = st.integers(-bound, bound)
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(lambda d: Polynomial(ring, d))


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def xy():
    return PolynomialRing(["x", "y"])


@pytest.fixture(scope="session")
def qx():
    return PolynomialRing(["x"])


@pytest.fixture(scope="session")
def w3(xy):
    return WBracket(PolynomialModel.coordinate(xy))


@pytest.fixture(scope="session")
def w2(qx):
    return WBracket(PolynomialModel.coordinate(qx))


@pytest.fixture(scope="session")
def jac2(xy):
    return JacobianBracket(PolynomialModel.coordinate(xy))


@pytest.fixture(scope="session")
def jac3():
    return JacobianBracket(PolynomialModel.coordinate(PolynomialRing(["x", "y", "z"])))
