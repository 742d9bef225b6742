"""Operator-level bound validators, spectral mapping, and the convergence demo."""

import math

import numpy as np
import pytest

from besovcalc.applications import (
    cayley_power_check,
    check_band_operator,
    check_deriv_operator,
    check_exp_stable_decay,
    check_fractional_smoothing,
    check_hilbert_calc_bound,
    check_sectorial_gamma,
    check_smoothed_window,
    convergence_demo,
    inverse_generator_check,
    inverse_generator_consistency,
    inverse_generator_constant,
    is_normal,
    spectral_mapping_check,
    stability_constants,
)
from besovcalc.errors import InvalidParameter
from besovcalc.functions import (
    DecayProfile,
    band_function,
    cayley_pow,
    exp_decay,
    mul,
    resolvent,
    scale,
)
from besovcalc.operators import (
    MatrixOperator,
    jordan_operator,
    parse_operator_spec,
    random_sectorial_operator,
    semigroup,
)
from besovcalc.quadrature import QuadratureConfig, ResolventEnvelope

CFG = QuadratureConfig()
DIAG12 = parse_operator_spec("diag(1,2)")


def inv_square_profile():
    return DecayProfile(
        h=lambda t: 1.0 / (1.0 + np.asarray(t, dtype=float) ** 2),
        envelope=ResolventEnvelope(m=1.0, shift=1.0),
    )


class TestHilbertAndSectorial:
    def test_is_normal(self):
        assert is_normal(DIAG12)
        assert not is_normal(jordan_operator(1.0, 2))

    def test_hilbert_bound(self):
        assert check_hilbert_calc_bound(DIAG12, exp_decay(1.0), CFG).passed

    def test_hilbert_requires_normal(self):
        with pytest.raises(InvalidParameter):
            check_hilbert_calc_bound(jordan_operator(1.0, 2), exp_decay(1.0), CFG)

    def test_sectorial_gamma(self):
        A = random_sectorial_operator(4, 3, math.pi / 6)
        assert check_sectorial_gamma(A, CFG).passed

    def test_stability_constants_conservative(self):
        M, omega = stability_constants(DIAG12)
        ts = np.geomspace(0.01, 20.0, 30)
        for t in ts:
            assert np.linalg.norm(semigroup(DIAG12, t), 2) <= M * math.exp(-omega * t) * (
                1.0 + 1e-9
            )


class TestCorollaryGrids:
    def test_band_normal(self):
        f = band_function(1.0, 4.0)
        assert check_band_operator(DIAG12, f, 1.0, 4.0, CFG).passed

    def test_band_sectorial(self):
        A = random_sectorial_operator(4, 3, math.pi / 6)
        f = band_function(1.0, 4.0)
        r = check_band_operator(A, f, 1.0, 4.0, CFG)
        assert r.passed and r.params["variant"] == "sectorial"

    def test_band_const_sanity(self):
        # constant functions: lhs = |c|, covered with f_inf = |c|
        from besovcalc.functions import const

        r = check_band_operator(DIAG12, const(2.0), 1.0, 4.0, CFG)
        assert r.passed and r.lhs == pytest.approx(2.0, abs=1e-4)

    @pytest.mark.parametrize("omega,tau", [(0.1, 0.1), (0.1, 1.0), (1.0, 0.1), (1.0, 1.0)])
    def test_smoothed_window_grid(self, omega, tau):
        assert check_smoothed_window(DIAG12, resolvent(2.0), omega, tau, CFG).passed

    @pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
    def test_fractional_grid(self, alpha):
        assert check_fractional_smoothing(
            DIAG12, resolvent(2.0), 1.0, alpha, 1.0, CFG
        ).passed

    def test_deriv_operator(self):
        fp = scale(mul(resolvent(2.0), resolvent(2.0)), -1.0)
        assert check_deriv_operator(DIAG12, resolvent(2.0), fp, 1.0, CFG).passed

    def test_exp_stable_decay(self):
        f = mul(resolvent(1.0), resolvent(1.0))
        assert check_exp_stable_decay(DIAG12, f, inv_square_profile(), CFG).passed


class TestInverseGenerator:
    def test_scalar_closed_form(self):
        # lhs = exp(-t/omega) for A = [[omega]]
        A = MatrixOperator(np.array([[2.0]]))
        r = inverse_generator_check(A, 1.0, CFG)
        assert r.lhs == pytest.approx(math.exp(-0.5), abs=1e-10)
        assert r.passed

    def test_diag_large_t(self):
        assert inverse_generator_check(parse_operator_spec("diag(1,4)"), 10.0, CFG).passed

    def test_small_t_limit(self):
        r = inverse_generator_check(DIAG12, 1e-3, CFG)
        assert r.lhs == pytest.approx(1.0, abs=1e-2)
        assert r.passed

    def test_consistency_with_calculus(self):
        gap = inverse_generator_consistency(parse_operator_spec("diag(1,4)"), 2.0, CFG)
        assert gap < 1e-4

    def test_constant_reported(self):
        out = inverse_generator_constant(DIAG12, (1.0, 4.0, 16.0), CFG)
        assert out["measured"] > 0 and out["predicted"] > 0


class TestCayleyPowers:
    @pytest.mark.parametrize("spec,n", [("diag(1,2)", 1), ("diag(1,2)", 16)])
    def test_normal_contraction(self, spec, n):
        r = cayley_power_check(parse_operator_spec(spec), n, CFG)
        assert r.passed
        assert r.lhs <= 1.0 + 1e-9
        assert r.info["calculus_gap"] < 1e-4

    def test_unitary_spectrum(self):
        A = parse_operator_spec("diag(i,-i,1)")
        r = cayley_power_check(A, 8, CFG)
        assert r.passed and r.lhs == pytest.approx(1.0, abs=1e-9)


class TestSpectralMapping:
    def test_diag_cayley(self):
        res = spectral_mapping_check(DIAG12, cayley_pow(1), CFG)
        assert res["sectorial"] and res["hausdorff"] < 1e-4

    def test_jordan_exp(self):
        res = spectral_mapping_check(jordan_operator(1.0, 2), exp_decay(1.0), CFG)
        assert res["hausdorff"] < 1e-4

    def test_sectorial_eta(self):
        from besovcalc.functions import eta

        A = random_sectorial_operator(4, 3, math.pi / 6)
        res = spectral_mapping_check(A, eta(), CFG)
        assert res["sectorial"] and res["hausdorff"] < 1e-4

    def test_inclusion_nonsectorial(self):
        A = parse_operator_spec("diag(i,-i)")
        res = spectral_mapping_check(A, exp_decay(1.0), CFG)
        assert not res["sectorial"]
        assert res["inclusion_defect"] < 1e-4


class TestConvergence:
    def test_exp_family_decreases(self):
        x = np.ones(2) / math.sqrt(2.0)
        tab = convergence_demo(DIAG12, exp_decay(1.0), [1, 4, 16, 64], x, CFG)
        assert all(b < a for a, b in zip(tab.shrink, tab.shrink[1:]))
        assert tab.decrease_factor >= 10.0

    def test_const_all_zero(self):
        from besovcalc.functions import const

        x = np.array([1.0, 0.0])
        tab = convergence_demo(DIAG12, const(2.0), [1, 4], x, CFG)
        assert max(tab.shrink) < 1e-8

    def test_stretched_family_no_convergence(self):
        # spectrum on the imaginary axis: |exp(-n i y)| = 1, no strong limit
        A = parse_operator_spec("diag(i,-i)")
        x = np.array([1.0, 1.0]) / math.sqrt(2.0)
        tab = convergence_demo(A, exp_decay(1.0), [1, 4], x, CFG)
        assert min(tab.stretch) > 0.5  # stays far from f(infinity) = 0
