#!/usr/bin/env python3
"""Transport witnesses on the half-cylinder.

For a few point pairs and covering indices, construct the group element
mapping one point to the other (rotation aligning the angles, then a boost
along the fiber), and audit it: round-trip residual, symplectic residual,
and the light-cone equivariance of the same element.
"""

import math

import numpy as np

from halfcyl.classical import (PhasePoint, act_lifted, check_symplectic,
                               lightcone_equivariance_residual, transport)


def main():
    rng = np.random.default_rng(1)
    pairs = [
        (PhasePoint(0.0, 1.0), PhasePoint(math.pi, 1.0)),
        (PhasePoint(0.0, 1.0), PhasePoint(0.0, 2.0)),
        (PhasePoint(0.3, 0.2), PhasePoint(5.9, 11.0)),
    ]
    for _ in range(3):
        pairs.append((PhasePoint(rng.uniform(0, 2 * math.pi), math.exp(rng.normal())),
                      PhasePoint(rng.uniform(0, 2 * math.pi), math.exp(rng.normal()))))

    print(f"{'l':>2} {'from':>16} {'to':>16} {'gamma':>22} {'omega':>8} "
          f"{'roundtrip':>10} {'symplectic':>10} {'cone':>10}")
    for l in (1, 2, 3):
        for a, b in pairs:
            g = transport(a, b, l)
            y = act_lifted(g, a)
            rt = max(abs((y.phi - b.phi + math.pi) % (2 * math.pi) - math.pi),
                     abs(y.p - b.p) / b.p)
            symp = check_symplectic(g, a)
            cone = lightcone_equivariance_residual(g, a)
            print(f"{l:2d} ({a.phi:6.3f},{a.p:7.3f}) ({b.phi:6.3f},{b.p:7.3f}) "
                  f"{g.gamma.real:10.6f}{g.gamma.imag:+10.6f}i {g.omega:8.4f} "
                  f"{rt:10.2e} {symp:10.2e} {cone:10.2e}")


if __name__ == "__main__":
    main()
