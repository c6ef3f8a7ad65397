"""Tabulate the edge laws F_beta(s, m) and pull out a few quantiles.

Solves the Painleve II system once, then assembles the CDF and density
of the m-th largest eigenvalue for all three symmetry classes on a
shared grid.
"""

import numpy as np

from edgedist import dist, painleve, rmt


def main():
    print("solving the Painleve II jet system ...")
    sol = painleve.solve()
    grid = np.linspace(-10.0, 6.0, 1601)

    tables = {}
    for beta in (1, 2, 4):
        for m in (1, 2):
            req = dist.DistRequest(beta=beta, m=m, s_grid=grid)
            tables[beta, m] = dist.cdf(req, sol)

    print("\n  s      F1(s,1)    F2(s,1)    F4(s,1)    F2(s,2)")
    for s in (-5.0, -4.0, -3.0, -2.0, -1.0, 0.0, 1.0, 2.0):
        i = int(round((s - grid[0]) / (grid[1] - grid[0])))
        print("%5.1f   %.6f   %.6f   %.6f   %.6f"
              % (s, tables[1, 1].F[i], tables[2, 1].F[i],
                 tables[4, 1].F[i], tables[2, 2].F[i]))

    print("\nmedians and upper quantiles of the largest eigenvalue:")
    for beta in (1, 2, 4):
        qs = [rmt._invert_cdf(tables[beta, 1], p)
              for p in (0.5, 0.9, 0.95, 0.99)]
        print("  beta=%d   50%%: %+.4f   90%%: %+.4f   95%%: %+.4f   "
              "99%%: %+.4f" % (beta, *qs))

    print("\nsecond-largest lies left of the largest everywhere:")
    gap = tables[2, 2].F - tables[2, 1].F
    print("  min_s [F2(s,2) - F2(s,1)] = %.3e (must be >= 0)" % gap.min())


if __name__ == "__main__":
    main()
