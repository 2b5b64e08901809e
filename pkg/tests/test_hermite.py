import math

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from grushin.errors import DomainError
from grushin.grids import gauss_hermite_rule
from grushin.hermite import (HermiteBasis, LaguerreBasis, hermite_eval, hermite_ladder,
                             laguerre_eval, multi_indices, projection_apply,
                             projection_coefficients, scaled_hermite_eval)

# closed-form physicists' Hermite polynomials for k <= 6
HERMITE_POLYS = {
    0: lambda x: 1.0,
    1: lambda x: 2 * x,
    2: lambda x: 4 * x**2 - 2,
    3: lambda x: 8 * x**3 - 12 * x,
    4: lambda x: 16 * x**4 - 48 * x**2 + 12,
    5: lambda x: 32 * x**5 - 160 * x**3 + 120 * x,
    6: lambda x: 64 * x**6 - 480 * x**4 + 720 * x**2 - 120,
}


def h_closed_form(k, x):
    norm = (2**k * math.sqrt(math.pi) * math.factorial(k)) ** -0.5
    return norm * HERMITE_POLYS[k](x) * math.exp(-0.5 * x * x)


def test_h0_at_zero():
    assert hermite_eval(0, 0.0) == pytest.approx(math.pi ** -0.25, rel=1e-14)


def test_h1_odd_parity_at_zero():
    assert hermite_eval(1, 0.0) == 0.0


def test_h4_against_closed_form():
    assert hermite_eval(4, 1.3) == pytest.approx(h_closed_form(4, 1.3), rel=1e-12)


def test_recurrence_matches_closed_form_to_1e10():
    xs = np.linspace(-5, 5, 201)
    for k in range(7):
        got = hermite_ladder(k, xs)[k]
        want = np.array([h_closed_form(k, x) for x in xs])
        scale = np.max(np.abs(want))
        assert np.max(np.abs(got - want)) <= 1e-10 * scale


def test_no_overflow_large_argument():
    vals = hermite_ladder(128, np.linspace(-40, 40, 81))
    assert np.all(np.isfinite(vals))


def test_index_bound_error():
    with pytest.raises(IndexError):
        hermite_eval(5, 0.3, max_index=4)


@given(st.integers(min_value=0, max_value=40), st.floats(-8, 8))
@settings(max_examples=60, deadline=None)
def test_parity(k, x):
    lad = hermite_ladder(k, np.array([x, -x]))
    assert lad[k][0] == pytest.approx((-1) ** k * lad[k][1], abs=1e-13)


def test_normalization_by_quadrature():
    rule = gauss_hermite_rule(96)
    lad = hermite_ladder(48, rule.nodes)
    norms = np.sum(rule.du_weights * lad * lad, axis=1)
    assert np.max(np.abs(norms - 1.0)) < 1e-12


# -- scaled Hermite functions -------------------------------------------------

def test_scaled_ground_state():
    # |lam|^{1/4} pi^{-1/4} at the origin for lam = 4
    val = scaled_hermite_eval((0,), 4.0, 0.0)
    assert val == pytest.approx(4 ** 0.25 * math.pi ** -0.25, rel=1e-12)
    assert val == pytest.approx(1.0622, rel=1e-4)


def test_scaled_lambda_zero_rejected():
    with pytest.raises(DomainError):
        scaled_hermite_eval((0,), 0.0, 0.3)


def test_scaled_normalization_under_quadrature():
    lam = 2.7
    rule = gauss_hermite_rule(64)
    x = rule.nodes / math.sqrt(lam)
    for alpha in ((0,), (3,), (11,)):
        vals = scaled_hermite_eval(alpha, lam, x[:, None])
        total = np.sum(rule.du_weights / math.sqrt(lam) * vals**2)
        assert total == pytest.approx(1.0, abs=1e-8)


def test_scaled_sup_bound():
    # |Phi_alpha^lam(x)| <= |lam|^{n/4}, sampled
    lam = 3.1
    xs = np.linspace(-6, 6, 301)
    for k in (0, 1, 5, 20):
        vals = scaled_hermite_eval((k,), lam, xs[:, None])
        assert np.max(np.abs(vals)) <= lam ** 0.25 * (1 + 1e-12)


# -- Laguerre -----------------------------------------------------------------

def test_laguerre_constant():
    assert laguerre_eval(0, 0.5, 7.3) == 1.0


def test_laguerre_linear():
    for delta, r in ((0.5, 0.7), (2.0, 3.1)):
        assert laguerre_eval(1, delta, r) == pytest.approx(1 + delta - r, rel=1e-14)


def test_laguerre_rodrigues_oracle():
    # L_k^delta(r) = (1/k!) e^r r^{-delta} d^k/dr^k (e^{-r} r^{k+delta}), k <= 4
    r_sym = sympy.symbols("r", positive=True)
    for k in (2, 3, 4):
        for delta in (1.0, 0.5):
            expr = sympy.diff(sympy.exp(-r_sym) * r_sym ** (k + delta), r_sym, k)
            expr = sympy.exp(r_sym) * r_sym ** (-delta) * expr / math.factorial(k)
            want = float(expr.subs(r_sym, 2.0))
            assert laguerre_eval(k, delta, 2.0) == pytest.approx(want, rel=1e-12)


def test_laguerre_domain_error():
    with pytest.raises(DomainError):
        laguerre_eval(2, -1.0, 0.5)


@given(st.integers(min_value=0, max_value=20),
       st.floats(min_value=-0.9, max_value=4.0))
@settings(max_examples=50, deadline=None)
def test_laguerre_value_at_zero(k, delta):
    basis = LaguerreBasis(type_parameter=delta, max_index=k)
    want = basis.value_at_zero(k)
    assert laguerre_eval(k, delta, 0.0) == pytest.approx(want, rel=1e-12)


# -- multi-indices and projections ---------------------------------------------

def test_multi_index_enumeration_graded():
    idx, deg = multi_indices(2, 3)
    assert len(idx) == 10
    assert list(deg) == sorted(deg)  # graded: degrees non-decreasing
    assert idx[0] == (0, 0)
    blocks = [tuple(a for a, d in zip(idx, deg) if d == total) for total in range(4)]
    assert blocks[1] == ((1, 0), (0, 1))


def test_projection_fixed_point_and_orthogonality():
    lam = 1.4
    phi = lambda x: scaled_hermite_eval((3,), lam, np.asarray(x)[..., None])
    proj_same = projection_apply(3, lam, phi, dimension=1, max_degree=8)
    proj_other = projection_apply(5, lam, phi, dimension=1, max_degree=8)
    xs = np.linspace(-3, 3, 31)
    assert np.max(np.abs(proj_same(xs) - phi(xs))) < 1e-8
    assert np.max(np.abs(proj_other(xs))) < 1e-8


def test_projection_idempotence(rng):
    lam = 0.9
    phi = lambda x: np.exp(-0.7 * (np.asarray(x) - 0.4) ** 2)
    once = projection_apply(4, lam, phi, dimension=1, max_degree=8)
    twice = projection_apply(4, lam, once, dimension=1, max_degree=8)
    xs = np.linspace(-4, 4, 41)
    assert np.max(np.abs(np.asarray(once(xs)) - np.asarray(twice(xs)))) < 1e-8


def test_projection_scaling_relation():
    # P_k(lam) phi (x) = P_k(1)(phi o d_{lam^{-1/2}}) o d_{lam^{1/2}} (x)
    lam = 3.3
    root = math.sqrt(lam)
    phi = lambda x: np.exp(-0.5 * (np.asarray(x) - 0.2) ** 2) * np.asarray(x)
    left = projection_apply(2, lam, phi, dimension=1, max_degree=4)
    phi_dil = lambda x: phi(np.asarray(x) / root)
    right_unit = projection_apply(2, 1.0, phi_dil, dimension=1, max_degree=4)
    xs = np.linspace(-2, 2, 21)
    lhs = np.asarray(left(xs))
    rhs = np.asarray(right_unit(root * xs))
    assert np.max(np.abs(lhs - rhs)) < 1e-8


def test_projection_lambda_zero_rejected():
    with pytest.raises(DomainError):
        projection_apply(1, 0.0, lambda x: x, dimension=1)


def test_gram_matrix_identity():
    lam = 0.77
    basis = HermiteBasis(max_index=4, dimension=2)
    rule = gauss_hermite_rule(24)
    root = math.sqrt(lam)
    u = rule.nodes
    lad = hermite_ladder(4, u)
    gram = np.zeros((len(basis.indices), len(basis.indices)))
    w2 = np.outer(rule.du_weights, rule.du_weights)
    for i, a in enumerate(basis.indices):
        for j, b in enumerate(basis.indices):
            gram[i, j] = np.sum(w2 * np.outer(lad[a[0]], lad[a[1]]) * np.outer(lad[b[0]], lad[b[1]]))
    assert np.max(np.abs(gram - np.eye(len(basis.indices)))) < 1e-8


def test_eigenvalues_block_structure():
    basis = HermiteBasis(max_index=3, dimension=2)
    ev = basis.eigenvalues(2.0)
    assert ev[0] == pytest.approx(2 * 2.0)
    assert np.all(np.diff(ev) >= 0)
