import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from orthantpath import (
    DimensionCap,
    EnetConfig,
    LambdaGrid,
    adaptive_weights,
    all_orthant_fit,
    all_orthant_path,
    enet_path,
    enumerate_valid_moves,
    lasso_path,
    ols_fit,
)
from orthantpath.lasso import criterion_L
from orthantpath.oracle import all_orthants

from conftest import random_problem


def test_enumeration_order():
    orthants = list(all_orthants(2))
    assert len(orthants) == 9
    assert orthants[0] == (-1, -1) and orthants[4] == (0, 0) and orthants[-1] == (1, 1)


def test_grid_parsing():
    assert LambdaGrid.parse("0:14:0.5").values[-1] == 14.0
    assert len(LambdaGrid.parse("0:14:0.5").values) == 29
    assert LambdaGrid.parse("0,1.5,3").values == (0.0, 1.5, 3.0)
    with pytest.raises(ValueError):
        LambdaGrid.parse("3,1")
    with pytest.raises(ValueError):
        LambdaGrid((-1.0,))
    with pytest.raises(ValueError):
        LambdaGrid.parse("0:1")


def test_fit_at_zero_is_ols(ex7):
    fit = all_orthant_fit(ex7, 0.0)
    assert fit.beta == pytest.approx(ols_fit(ex7), abs=1e-12)
    assert fit.orthant == (1, 1, -1)
    r = ex7.Y - ex7.X @ fit.beta
    assert fit.criterion == pytest.approx(0.5 * r @ r)


def test_fit_at_lambda_max_is_zero(ex7):
    for lam in (14.0, 20.0):
        fit = all_orthant_fit(ex7, lam)
        assert fit.orthant == (0, 0, 0)
        assert not np.any(fit.beta)
        assert fit.criterion == pytest.approx(7.0)


def test_fit_inside_segment(ex7):
    assert all_orthant_fit(ex7, 0.2).orthant == (0, 1, -1)


def test_grid_past_lambda_max_rejected(ex7):
    with pytest.raises(ValueError):
        all_orthant_path(ex7, LambdaGrid((0.0, 15.0)))


def test_breakpoint_orthants_match_path(ex7):
    path = lasso_path(ex7)
    fits = all_orthant_path(ex7, LambdaGrid(tuple(path.lambdas)))
    assert [f.orthant for f in fits] == [bp.orthant for bp in path.breakpoints]


def test_half_step_grid_matches_path(ex7):
    path = lasso_path(ex7)
    fits = all_orthant_path(ex7, LambdaGrid.parse("0:14:0.5"))
    assert len(fits) == 29
    for f in fits:
        assert np.max(np.abs(f.beta - path.coef(f.lam))) < 1e-10
        assert f.valid


def test_nine_valid_moves(ex7):
    moves = enumerate_valid_moves(ex7)
    assert len(moves) == 9
    keyed = {(m.orthant_from, m.orthant_to) for m in moves}
    path_moves = {
        ((1, 1, -1), (0, 1, -1)),
        ((-1, 1, -1), (0, 1, -1)),
        ((-1, 1, -1), (-1, 0, -1)),
        ((-1, 0, -1), (-1, 0, 0)),
        ((-1, 0, 0), (0, 0, 0)),
    }
    assert path_moves <= keyed
    assert ((-1, 1, 0), (0, 1, 0)) not in keyed
    assert len(enumerate_valid_moves(ex7, EnetConfig(alpha=0.5))) == 9


def test_single_column_move(ex7):
    moves = enumerate_valid_moves(ex7.column(0))
    assert len(moves) == 1
    m = moves[0]
    assert (m.orthant_from, m.orthant_to) == ((-1,), (0,))
    assert m.lam == pytest.approx(14.0)


def test_dimension_cap():
    data = random_problem(3, n=20, p=4)
    with pytest.raises(DimensionCap):
        all_orthant_fit(data, 0.1, max_p=3)
    with pytest.raises(DimensionCap):
        enumerate_valid_moves(data, max_p=3)


def test_deterministic(ex7):
    a = all_orthant_path(ex7, LambdaGrid.parse("0:14:1"))
    b = all_orthant_path(ex7, LambdaGrid.parse("0:14:1"))
    assert [f.orthant for f in a] == [f.orthant for f in b]
    assert all(np.array_equal(x.beta, y.beta) for x, y in zip(a, b))


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 100_000))
def test_oracle_never_worse_than_path(seed):
    data = random_problem(seed)
    path = lasso_path(data)
    grid = np.linspace(0, path.lambdas[-1], 11)
    for f in all_orthant_path(data, LambdaGrid(tuple(grid))):
        assert f.criterion <= criterion_L(data, f.lam, path.coef(f.lam)) + 1e-9
        assert np.max(np.abs(f.beta - path.coef(f.lam))) < 1e-8


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 100_000))
def test_adaptive_matches_oracle(seed):
    data = random_problem(seed)
    w = adaptive_weights(data, 1.0)
    path = lasso_path(data, w)
    grid = np.linspace(0, path.lambdas[-1], 13)
    for f in all_orthant_path(data, LambdaGrid(tuple(grid)), w):
        assert np.max(np.abs(f.beta - path.coef(f.lam))) < 1e-8


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 100_000), alpha=st.floats(0.1, 0.95))
def test_enet_matches_oracle(seed, alpha):
    data = random_problem(seed)
    cfg = EnetConfig(alpha=alpha)
    path = enet_path(data, cfg)
    grid = np.linspace(0, path.lambdas[-1], 13)
    for f in all_orthant_path(data, LambdaGrid(tuple(grid)), cfg):
        assert np.max(np.abs(f.beta - path.coef(f.lam))) < 1e-6
