"""Print every shrink/reactivation evaluation of the lasso tracer.

One line per evaluation: current orthant and lambda, the move, its
candidate lambda, the coordinate, and the verdict.
"""

import argparse

from orthantpath import Dataset, EnetConfig, enet_path, lasso_path, load_csv, prepare

from reproduce_tables import X, Y


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--input", help="CSV file (default: the built-in 7 x 3 example)")
    ap.add_argument("--alpha", type=float, help="trace the elastic net with this alpha instead")
    args = ap.parse_args()
    data = prepare(*load_csv(args.input)) if args.input else Dataset(X, Y, centered=True)
    log = []
    if args.alpha is None:
        lasso_path(data, log=log)
    else:
        enet_path(data, EnetConfig(alpha=args.alpha), log=log)
    for rec in log:
        print("\n".join(rec.lines()))
        print()


if __name__ == "__main__":
    main()
