"""Bit cost of numeric probabilities vs incidence sets, tabulated.

Keeping each sentence's probability to m digits needs one number per
conjunction of atoms, which blows up with the atom count n; keeping one
point set per atom over a space sized for m-digit resolution grows only
linearly in n.  This prints both costs side by side.

Usage: python3 scripts/storage_table.py [--max-atoms N] [--digits M ...]
"""

import argparse

from incalc import storage_costs


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-atoms", type=int, default=20)
    parser.add_argument("--digits", type=int, nargs="+", default=[1, 2, 3])
    args = parser.parse_args(argv)

    header = f"{'atoms':>5}"
    for m in args.digits:
        header += f" | {f'numeric m={m}':>14} {f'sets m={m}':>12}"
    print(header)
    print("-" * len(header))
    for n in range(1, args.max_atoms + 1):
        row = f"{n:>5}"
        for m in args.digits:
            cost = storage_costs(n, m)
            row += f" | {cost.numeric_bits:>14} {cost.incidence_bits:>12}"
        print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
