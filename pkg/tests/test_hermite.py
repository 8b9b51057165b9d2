import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hermprod.errors import DomainError
from hermprod.hermite import (
    Convention,
    hermite_fn,
    hermite_fn_table,
    hermite_fn_via_poly,
    hermite_poly,
    parse_convention,
)
from hermprod.quadrature import gauss_hermite_rule

SAMPLE_X = [-5.0, -1.3, 0.0, 0.7, 4.1]


def test_polynomial_values():
    assert hermite_poly(0, 3.7) == 1.0
    assert hermite_poly(2, 1.0) == 2.0
    assert hermite_poly(3, 0.0) == 0.0
    # H_3 = 8x^3 - 12x, H_4 = 16x^4 - 48x^2 + 12
    assert hermite_poly(3, 0.5) == pytest.approx(8 * 0.125 - 6)
    assert hermite_poly(4, 2.0) == pytest.approx(16 * 16 - 48 * 4 + 12)


def test_function_values():
    assert hermite_fn(0, 0.0) == 1.0
    assert hermite_fn(0, 0.0, Convention.ORTHONORMAL) == pytest.approx(0.7511255444649425, rel=1e-15)
    assert hermite_fn(1, 1.0) == pytest.approx(0.857763884960707, rel=1e-14)
    assert hermite_fn(1, 1.0, "unit") == pytest.approx(0.857763884960707 * math.pi ** -0.25, rel=1e-14)


@pytest.mark.parametrize("x", SAMPLE_X)
def test_recurrence_matches_polynomial_path(x):
    for n in range(201):
        for conv in Convention:
            try:
                ref = hermite_fn_via_poly(n, x, conv)
            except OverflowError:
                continue
            got = hermite_fn(n, x, conv)
            assert got == pytest.approx(ref, rel=1e-10, abs=1e-300), (n, x)


def test_table_matches_pointwise():
    xs = np.array(SAMPLE_X)
    t = hermite_fn_table(60, xs)
    for n in (0, 1, 7, 60):
        for i, x in enumerate(SAMPLE_X):
            assert t[n, i] == pytest.approx(hermite_fn(n, x), rel=1e-13, abs=1e-300)


@given(st.integers(0, 300), st.floats(-30, 30))
def test_parity(n, x):
    a = hermite_fn(n, x)
    b = hermite_fn(n, -x)
    assert b == pytest.approx((-1) ** n * a, rel=1e-14, abs=1e-300)
    if a != 0.0:
        assert math.copysign(1.0, b) == (-1) ** n * math.copysign(1.0, a)


def test_orthonormality_by_quadrature():
    rule = gauss_hermite_rule(80)
    # int h_m h_n dx with the Gaussian already inside h: use scaled weights
    t = hermite_fn_table(40, rule.nodes, Convention.ORTHONORMAL)
    gram = (t * rule.scaled_weights) @ t.T
    assert np.max(np.abs(gram - np.eye(41))) < 1e-12


def test_paper_normalization_by_quadrature():
    rule = gauss_hermite_rule(60)
    t = hermite_fn_table(20, rule.nodes)
    gram = (t * rule.scaled_weights) @ t.T
    assert np.max(np.abs(gram - math.sqrt(math.pi) * np.eye(21))) < 1e-12


def test_sampled_sup_norm():
    # empirical: max |h_p| (orthonormal) decreases in p and stays below p**(-1/12)
    xs = np.linspace(-48.0, 48.0, 96001)
    t = np.abs(hermite_fn_table(1000, xs, Convention.ORTHONORMAL)).max(axis=1)
    assert np.all(np.diff(t[1:]) <= 1e-12)
    p = np.arange(1, 1001)
    assert np.all(t[1:] <= p ** (-1 / 12) * (1 + 1e-9))
    assert t[1] < 1.0


def test_large_degree_is_finite():
    v = hermite_fn(5000, 10.0)
    assert math.isfinite(v)
    assert abs(v) < 2.0


def test_errors():
    with pytest.raises(DomainError):
        hermite_fn(-1, 0.0)
    with pytest.raises(DomainError):
        hermite_fn(2.5, 0.0)
    with pytest.raises(DomainError):
        hermite_fn(3, float("nan"))
    with pytest.raises(DomainError):
        hermite_fn(20000, 0.0)
    with pytest.raises(DomainError):
        parse_convention("bogus")
    with pytest.raises(OverflowError):
        hermite_poly(400, 30.0)
