import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from orthantpath import (
    ConvergenceFailure,
    EnetConfig,
    InvalidAlpha,
    Solver,
    beta_hat_enet,
    breakpoint_function,
    c2u_enet,
    criterion_E,
    criterion_Ehat,
    enet_path,
    lambda_max_enet,
    lasso_path,
    solve_breakpoint,
)
from orthantpath.enet import _bisect, _secant

from conftest import random_problem

ENET_REF_05 = np.array(
    [
        [0.0000000, 0.1142857, 0.8714286, -1.1857143, 0.8428571],
        [0.1459742, 0.0000000, 0.7315377, -1.0262653, 1.0539203],
        [0.2471659, 0.0000000, 0.7039861, -1.0132639, 1.1811668],
        [2.6872073, -0.3743399, 0.0000000, -0.3589718, 2.8979158],
        [16.9614814, -0.1937892, 0.0000000, 0.0000000, 6.4652136],
        [28.0000000, 0.0000000, 0.0000000, 0.0000000, 7.0000000],
    ]
)


def enet_certificate(data, lam, alpha, beta):
    g = data.X.T @ (data.Y - data.X @ beta)
    nz = beta != 0
    active = np.abs(g[nz] - lam * (1 - alpha) * beta[nz] - lam * alpha * np.sign(beta[nz])) - 1e-7 * (1 + lam)
    inactive = np.abs(g[~nz]) - lam * alpha - 1e-7
    return max(np.max(active, initial=-np.inf), np.max(inactive, initial=-np.inf))


@pytest.mark.parametrize("solver", list(Solver))
def test_table_path(ex7, solver):
    path = enet_path(ex7, EnetConfig(alpha=0.5, tol=1e-8, solver=solver))
    got = np.column_stack([path.lambdas, path.betas, path.criteria])
    assert np.max(np.abs(got - ENET_REF_05)) < 1e-4


def test_breakpoints_are_roots(ex7):
    cfg = EnetConfig(alpha=0.5)
    log = []
    path = enet_path(ex7, cfg, log=log)
    chosen = [rec.moves[rec.selected][1].candidate for rec in log]
    assert [c.lambda_hat for c in chosen] == list(path.lambdas[1:])
    for cand in chosen:
        f = breakpoint_function(cand.orthant_from, cand.coordinate, cand.lambda_hat, ex7.gram_mask, cfg)
        assert abs(f) < 1e-6


def test_ehat_agrees_with_substitution(ex7):
    gm = ex7.gram_mask
    for alpha in (0.3, 0.5, 1.0):
        cfg = EnetConfig(alpha=alpha)
        for c in [(1, 1, -1), (0, 1, -1), (-1, 0, 0)]:
            for lam in (0.0, 1.5, 7.0):
                beta = beta_hat_enet(c, lam, gm, cfg)
                r = ex7.Y - ex7.X @ beta
                direct = 0.5 * r @ r + lam * alpha * np.dot(c, beta) + 0.5 * lam * (1 - alpha) * beta @ beta
                assert criterion_Ehat(c, lam, gm, ex7.yty, alpha) == pytest.approx(direct, abs=1e-10)


def test_alpha_one_matches_lasso_line(ex7):
    gm = ex7.gram_mask
    from orthantpath import c2u_lasso

    for lam in (0.0, 0.4, 3.0):
        np.testing.assert_allclose(c2u_enet((0, 1, -1), lam, gm, EnetConfig(alpha=1.0)), c2u_lasso((0, 1, -1), lam, gm))


def test_lambda_max(ex7):
    assert lambda_max_enet(ex7.gram_mask, 0.5) == pytest.approx(28.0)
    assert lambda_max_enet(ex7.gram_mask, 0.9) == pytest.approx(14 / 0.9)


def test_config_validation():
    with pytest.raises(InvalidAlpha):
        EnetConfig(alpha=0.0)
    with pytest.raises(ValueError):
        EnetConfig(tol=0.0)
    with pytest.raises(ValueError):
        EnetConfig(max_iters=0)
    assert EnetConfig(solver="secant").solver is Solver.SECANT


def test_solve_breakpoint_first_step(ex7):
    cand = solve_breakpoint((1, 1, -1), 0, 0.0, ex7.gram_mask, EnetConfig(alpha=0.5), yty=ex7.yty)
    assert cand.lambda_hat == pytest.approx(0.1459742, abs=1e-6)
    assert cand.criterion == pytest.approx(criterion_E(ex7, cand.lambda_hat, 0.5, cand.beta_hat), abs=1e-10)
    assert solve_breakpoint((1, 1, -1), 1, 0.0, ex7.gram_mask, EnetConfig(alpha=0.5)) is None


def test_root_solvers_on_known_function():
    f = lambda x: (x - 1.0) * (x + 3.0)
    for solve in (_bisect, _secant):
        r = solve(f, 0.0, 2.0, f(0.0), f(2.0), 1e-12, 200)
        assert r == pytest.approx(1.0, abs=1e-10)
    with pytest.raises(ConvergenceFailure):
        _bisect(f, 0.0, 3.0, f(0.0), f(3.0), 1e-12, 3)


def test_secant_falls_back_to_bisection():
    # a step that leaves the bracket forces the fallback
    f = lambda x: np.arctan(10 * (x - 0.1))
    r = _secant(f, -5.0, 5.0, f(-5.0), f(5.0), 1e-12, 200)
    assert r == pytest.approx(0.1, abs=1e-10)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 100_000), alpha=st.floats(0.05, 1.0))
def test_random_paths_certificates(seed, alpha):
    data = random_problem(seed)
    cfg = EnetConfig(alpha=alpha)
    path = enet_path(data, cfg)
    assert np.all(np.diff(path.lambdas) > 0)
    assert path.lambdas[-1] == pytest.approx(lambda_max_enet(data.gram_mask, alpha), rel=1e-9)
    for lam, beta, _ in path.sample(6):
        assert enet_certificate(data, lam, alpha, beta) < 0


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 100_000))
def test_alpha_one_reduces_to_lasso(seed):
    data = random_problem(seed)
    a = lasso_path(data)
    b = enet_path(data, EnetConfig(alpha=1.0))
    assert a.lambdas.shape == b.lambdas.shape
    assert np.allclose(a.lambdas, b.lambdas, atol=1e-8)
    assert np.allclose(a.betas, b.betas, atol=1e-8)


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 100_000))
def test_solvers_agree(seed):
    data = random_problem(seed)
    a = enet_path(data, EnetConfig(alpha=0.5, solver=Solver.BISECTION))
    b = enet_path(data, EnetConfig(alpha=0.5, solver=Solver.SECANT))
    assert np.allclose(a.lambdas, b.lambdas, atol=1e-7)
    assert np.allclose(a.betas, b.betas, atol=1e-7)
