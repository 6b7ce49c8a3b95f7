import numpy as np
import pytest

from orthantpath import Dataset

EX7_X = np.array(
    [[0, 0, -1], [-1, 1, 0], [0, -1, -1], [-1, 0, 0], [-1, 1, 0], [-1, -1, -1], [4, 0, 3]],
    dtype=float,
)
EX7_Y = np.array([1, 1, 0, -1, 1, 1, -3], dtype=float)

EX6_X = np.array(
    [[-1, 1, 0], [-1, 1, -1], [0, 0, -1], [0, 1, -1], [1, -1, 1], [1, -2, 2]],
    dtype=float,
)
EX6_Y = np.array([1, 1, 0, -1, 0, -1], dtype=float)


def random_problem(seed: int, n=None, p=None) -> Dataset:
    """Centered, well-conditioned random regression problem."""
    rng = np.random.default_rng(seed)
    while True:
        nn = n if n is not None else int(rng.integers(5, 21))
        pp = p if p is not None else int(rng.integers(2, 6))
        X = rng.standard_normal((nn, pp))
        X -= X.mean(axis=0)
        if np.linalg.cond(X) > 30:
            continue
        beta = rng.standard_normal(pp) * rng.integers(0, 2, pp)
        Y = X @ beta + 0.5 * rng.standard_normal(nn)
        Y -= Y.mean()
        return Dataset(X, Y, centered=True)


@pytest.fixture
def ex7() -> Dataset:
    return Dataset(EX7_X, EX7_Y, centered=True)


@pytest.fixture
def ex6() -> Dataset:
    return Dataset(EX6_X, EX6_Y, centered=True)


@pytest.fixture
def ex7_csv(tmp_path):
    path = tmp_path / "ex7.csv"
    rows = ["x1,x2,x3,y"] + [",".join(f"{v:g}" for v in (*x, y)) for x, y in zip(EX7_X, EX7_Y)]
    path.write_text("\n".join(rows) + "\n", encoding="utf-8")
    return path


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
