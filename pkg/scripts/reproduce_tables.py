"""Print the breakpoint tables of the 7 x 3 worked example.

Lasso, adaptive lasso (gamma = 0.25 and 1) and elastic net (alpha = 0.5 and
0.9), in the "lambda, betas, criterion" layout.
"""

import argparse

import numpy as np

from orthantpath import Dataset, EnetConfig, Solver, adaptive_weights, enet_path, lasso_path

X = np.array(
    [[0, 0, -1], [-1, 1, 0], [0, -1, -1], [-1, 0, 0], [-1, 1, 0], [-1, -1, -1], [4, 0, 3]],
    dtype=float,
)
Y = np.array([1, 1, 0, -1, 1, 1, -3], dtype=float)


def show(title, path):
    print(f"## {title}")
    table = np.column_stack([path.lambdas, path.betas, path.criteria])
    for row in table:
        print(" ".join(f"{v:12.7f}" for v in row))
    print()


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--solver", choices=[s.value for s in Solver], default="bisection")
    args = ap.parse_args()
    data = Dataset(X, Y, centered=True)
    show("lasso", lasso_path(data))
    for gamma in (0.25, 1.0):
        show(f"adaptive lasso, gamma={gamma}", lasso_path(data, adaptive_weights(data, gamma)))
    for alpha in (0.5, 0.9):
        show(f"elastic net, alpha={alpha}", enet_path(data, EnetConfig(alpha=alpha, solver=args.solver)))


if __name__ == "__main__":
    main()
