#!/usr/bin/env python3
"""Tabulate the brute-force quadrature errors against both ground truths:
the closed-form moment polynomials, and the Chebyshev identity that never
touches them.  Also shows how the answer moves when the epsilon sequence
is refined (it barely does).
"""

import math

from hsie import QuadConfig, chebyshev_T, chebyshev_U, pv_integral, pv_moment

X_GRID = (0.0, 0.25, -0.25, 0.5, -0.5, 0.75, -0.75)


def main():
    cfg = QuadConfig()

    print("monomial densities vs closed-form moments")
    print(f"{'j':>2} {'max scaled error':>18}")
    for j in range(9):
        exact_poly = pv_moment(j)
        worst = 0.0
        for x in X_GRID:
            approx = pv_integral(lambda t, j=j: t**j, x, cfg)
            exact = exact_poly.eval_float(x)
            worst = max(worst, abs(approx - exact) / max(1.0, abs(exact)))
        print(f"{j:>2} {worst:>18.3e}")

    print()
    print("second-kind Chebyshev densities vs -pi * first-kind (recurrence only)")
    print(f"{'k':>2} {'max abs error':>18}")
    for k in range(7):
        u_k, t_next = chebyshev_U(k), chebyshev_T(k + 1)
        worst = max(
            abs(pv_integral(u_k, x, cfg) + math.pi * t_next(x)) for x in X_GRID
        )
        print(f"{k:>2} {worst:>18.3e}")

    print()
    print("epsilon-refinement sensitivity (density t^3)")
    finer = QuadConfig(epsilon_sequence=cfg.epsilon_sequence + (cfg.epsilon_sequence[-1] / 2,))
    for x in (0.0, 0.5, -0.75):
        a = pv_integral(lambda t: t**3, x, cfg)
        b = pv_integral(lambda t: t**3, x, finer)
        print(f"x={x:+.2f}: default {a:+.12e}  refined {b:+.12e}  shift {abs(a - b):.3e}")


if __name__ == "__main__":
    main()
