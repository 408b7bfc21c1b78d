import math
import random
from fractions import Fraction

import numpy as np
import pytest

from hsie import (
    PI,
    Poly,
    QuadConfig,
    WeightedSolution,
    chebyshev_T,
    chebyshev_U,
    fp_integral_order2,
    fp_integral_ordern,
    pv_integral,
    pv_moment,
)
from hsie.oracle import _extrapolate, _fd_weights

CFG = QuadConfig()
X_GRID = (0.0, 0.25, -0.25, 0.5, -0.5, 0.75, -0.75)


def weighted(psi: Poly):
    def u(t):
        t = np.asarray(t, dtype=float)
        return np.sqrt(np.clip(1.0 - t * t, 0.0, None)) * psi.eval_float(t)

    return u


class TestPrincipalValue:
    def test_constant_density(self):
        # integrand sqrt(1-t^2)/(t-x) integrates to -pi x
        assert pv_integral(lambda t: np.ones_like(t), 0.5, CFG) == pytest.approx(
            -math.pi / 2, rel=1e-6
        )

    def test_linear_density_at_origin(self):
        assert pv_integral(lambda t: t, 0.0, CFG) == pytest.approx(math.pi / 2, rel=1e-6)

    def test_odd_integrand_vanishes(self):
        assert abs(pv_integral(lambda t: np.ones_like(t), 0.0, CFG)) <= 1e-8

    @pytest.mark.parametrize("j", range(6))
    def test_agrees_with_closed_form_moments(self, j):
        exact_poly = pv_moment(j)
        for x in (0.0, 0.5, -0.5, 0.75):
            approx = pv_integral(lambda t, j=j: t**j, x, CFG)
            exact = exact_poly.eval_float(x)
            if abs(exact) < 1e-3:
                assert approx == pytest.approx(exact, abs=1e-8)
            else:
                assert approx == pytest.approx(exact, rel=1e-6)

    def test_scalar_only_callables_are_supported(self):
        assert pv_integral(lambda t: math.cos(t), 0.3, CFG) == pytest.approx(
            pv_integral(lambda t: np.cos(t), 0.3, CFG), rel=1e-12
        )

    def test_guard_band(self):
        with pytest.raises(ValueError):
            pv_integral(lambda t: t, 0.95, CFG)

    def test_epsilon_must_clear_endpoint(self):
        wide = QuadConfig(epsilon_sequence=(0.2, 0.1))
        with pytest.raises(ValueError):
            pv_integral(lambda t: t, 0.85, wide)

    def test_non_finite_sample_rejected(self):
        with pytest.raises(ValueError):
            pv_integral(lambda t: np.full_like(t, np.nan), 0.0, CFG)

    def test_epsilon_robustness(self):
        # appending a halved smallest epsilon moves the answer < 10x tolerance
        eps = CFG.epsilon_sequence
        finer = QuadConfig(epsilon_sequence=eps + (eps[-1] / 2,))
        for x in (0.0, 0.5):
            a = pv_integral(lambda t: t**3, x, CFG)
            b = pv_integral(lambda t: t**3, x, finer)
            assert abs(a - b) < 1e-5


class TestChebyshevCrossOracle:
    @pytest.mark.parametrize("k", range(5))
    def test_second_kind_maps_to_first_kind(self, k):
        U, T = chebyshev_U(k), chebyshev_T(k + 1)
        for x in (0.0, 0.5, -0.75):
            assert pv_integral(U, x, CFG) == pytest.approx(-math.pi * T(x), abs=1e-6)

    def test_recurrences(self):
        xs = np.linspace(-1, 1, 9)
        assert np.allclose(chebyshev_T(2)(xs), 2 * xs**2 - 1)
        assert np.allclose(chebyshev_U(2)(xs), 4 * xs**2 - 1)
        assert chebyshev_T(3)(0.5) == pytest.approx(4 * 0.125 - 3 * 0.5)


class TestFinitePartOrder2:
    def test_pure_weight_gives_constant(self):
        u = weighted(Poly([1]))
        for x in (0.0, 0.3, -0.5, 0.9):
            assert fp_integral_order2(u, x, CFG) == pytest.approx(-math.pi, rel=1e-4)

    def test_odd_weighted_density_at_origin(self):
        u = weighted(Poly([0, 1]))
        assert abs(fp_integral_order2(u, 0.0, CFG)) <= 1e-4

    def test_oval_wing_solution_satisfies_original_equation(self):
        c = (4 * PI / (PI + 2)).to_float()
        u = WeightedSolution(Poly([4 * PI / (PI + 2)]))
        value = 0.5 * fp_integral_order2(u, 0.3, CFG) + 2 * math.pi
        assert value == pytest.approx(c, rel=1e-4)

    def test_guard_band(self):
        with pytest.raises(ValueError):
            fp_integral_order2(weighted(Poly([1])), 0.95, CFG)


class TestFinitePartHigherOrder:
    def test_order2_matches_derivative_of_constant_moment(self):
        v = fp_integral_ordern(lambda t: np.ones_like(t), 0.1, 2, CFG)
        assert v == pytest.approx(-math.pi, rel=1e-3)

    def test_order3_quadratic(self):
        v = fp_integral_ordern(lambda t: t * t, 0.2, 3, CFG)
        assert v == pytest.approx(-6 * math.pi * 0.2, rel=1e-3)

    def test_order4_constant_vanishes(self):
        assert abs(fp_integral_ordern(lambda t: np.ones_like(t), 0.1, 4, CFG)) <= 1e-3

    def test_order5_quartic(self):
        v = fp_integral_ordern(lambda t: t**4, 0.3, 5, CFG)
        assert v == pytest.approx(-120 * math.pi * 0.3, rel=1e-3)

    def test_error_estimate_is_small_for_smooth_input(self):
        v, est = fp_integral_ordern(lambda t: t * t, 0.2, 3, CFG, return_estimate=True)
        assert est <= 1e-3 * max(1.0, abs(v))

    def test_bracket_and_derivative_forms_agree(self):
        rng = random.Random(3)
        for _ in range(3):
            psi = Poly([Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(5)])
            for x in (0.0, 0.4, -0.6):
                bracket = fp_integral_order2(weighted(psi), x, CFG)
                derivative = fp_integral_ordern(psi.eval_float, x, 2, CFG)
                assert abs(bracket - derivative) <= 1e-3 * max(1.0, abs(bracket))

    def test_domain_checks(self):
        with pytest.raises(ValueError):
            fp_integral_ordern(lambda t: t, 0.85, 2, CFG)
        with pytest.raises(ValueError):
            fp_integral_ordern(lambda t: t, 0.0, 6, CFG)
        with pytest.raises(ValueError):
            fp_integral_ordern(lambda t: t, 0.0, 1, CFG)


class TestNumericalPlumbing:
    def test_config_validation(self):
        with pytest.raises(ValueError):
            QuadConfig(epsilon_sequence=())
        with pytest.raises(ValueError):
            QuadConfig(epsilon_sequence=(1e-2, 1e-2))
        with pytest.raises(ValueError):
            QuadConfig(epsilon_sequence=(-1e-2,))
        with pytest.raises(ValueError):
            QuadConfig(panel_points=1)
        with pytest.raises(ValueError):
            QuadConfig(extrapolation_order=0)

    def test_fd_weights_classic_stencils(self):
        w = _fd_weights(0.0, [-2, -1, 0, 1, 2], 2)
        assert np.allclose(w, [-1 / 12, 4 / 3, -5 / 2, 4 / 3, -1 / 12])
        w = _fd_weights(0.0, [-2, -1, 0, 1, 2], 1)
        assert np.allclose(w, [1 / 12, -2 / 3, 0, 2 / 3, -1 / 12])

    def test_extrapolation_removes_linear_defect(self):
        eps = tuple(1e-2 * 0.5**k for k in range(5))
        values = [2.5 + 3.0 * e + 7.0 * e**3 for e in eps]
        assert _extrapolate(values, eps, 3) == pytest.approx(2.5, abs=1e-12)
