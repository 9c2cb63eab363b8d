#!/usr/bin/env python3
"""Grid-refinement study of the half-line demo.

Prints the interior residual of [q, qp] - i hbar q on the periodic log grid
for a sequence of refinements, together with the measured convergence order,
and the reported-only hermiticity defect of the plain momentum operator.
"""

import math

from halfcyl.projection import halfline_commutator_residual, halfline_demo


def main():
    box = 4.0
    grids = [64, 128, 256, 512, 1024]
    residuals = [halfline_commutator_residual(n, box) for n in grids]
    print(f"periodic log grid, box width {box}")
    print(f"{'n':>6} {'residual':>12} {'order':>7}")
    for i, (n, r) in enumerate(zip(grids, residuals)):
        order = "" if i == 0 else f"{math.log2(residuals[i - 1] / r):7.3f}"
        print(f"{n:6d} {r:12.4e} {order:>7}")

    rep = halfline_demo(grids[0], box)
    print()
    for line in rep.summary_lines():
        print(line)
    print("verdict:", "pass" if rep.verdict else "fail")


if __name__ == "__main__":
    main()
