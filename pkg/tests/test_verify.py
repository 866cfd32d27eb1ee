import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from hbl import DomainError
from hbl.disc_core import BlaschkeProduct, random_blaschke
from hbl.norms import a1_seminorm, constants
from hbl.rational_fn import ModelSpaceTag, RationalFunction, random_model_space_element
from hbl.verify import (
    CHECKS,
    CheckReport,
    check_afp_scaling,
    check_critical_alpha,
    check_degree_invariant,
    check_dolzhenko,
    check_dolzhenko_extension,
    check_dolzhenko_growth,
    check_dolzhenko_sharpness,
    check_dynkin,
    check_hardy,
    check_kernel4,
    check_operator_norm_bounds,
    check_peller_general,
    check_peller_sharpness,
    check_peller_small_p,
    check_polar_chain,
    check_second_derivative,
    check_simple_route,
    check_dynkin_sandwich,
    check_uss_identity,
    default_manifest,
    fit_exponent,
    hardy_sides,
    random_step_function,
    run_check,
    run_manifest,
    sharpness_closed_form,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def hardy_lhs_by_quad(breaks, values, p, alpha):
    """Left side of the Hardy inequality by scipy quadrature, straight from the definition."""
    edges = np.concatenate([[0.0], breaks, [1.0]])

    def tail(r):
        k = min(np.searchsorted(edges, r, side="right") - 1, len(values) - 1)
        rest = sum(values[j] * (edges[j + 1] - edges[j]) for j in range(k + 1, len(values)))
        return values[k] * (edges[k + 1] - r) + rest

    def averaged(r):
        return (tail(r) / (1 - r)) ** p

    total = 0.0
    for a, b in zip(edges[:-2], edges[1:-1]):
        val, _ = integrate.quad(lambda r: (1 - r) ** alpha * averaged(r), a, b, epsabs=0, epsrel=1e-12)
        total += val
    # last piece in s = 1 - r, with s^alpha as an algebraic weight
    val, _ = integrate.quad(lambda s: averaged(1 - s) if s > 0 else values[-1] ** p, 0.0, 1.0 - edges[-2], weight="alg",
                            wvar=(alpha, 0.0), epsabs=0, epsrel=1e-12)
    return total + val


class TestReports:
    def test_report_fields(self):
        rep = check_dynkin(BlaschkeProduct.monomial(1))
        d = rep.to_dict()
        assert set(d) == {"name", "instance", "lhs", "rhs", "margin", "pass", "metadata"}
        assert json.loads(rep.to_json())["pass"] is True
        assert rep.margin == pytest.approx(rep.rhs - rep.lhs)

    def test_fit_exponent_exact_power(self):
        xs = [2, 4, 8, 16]
        slope, ci, intercept = fit_exponent(xs, [3 * x**1.5 for x in xs])
        assert slope == pytest.approx(1.5, abs=1e-12)
        assert ci == pytest.approx(0.0, abs=1e-10)
        assert intercept == pytest.approx(math.log(3))

    def test_fit_exponent_needs_three_points(self):
        with pytest.raises(DomainError):
            fit_exponent([1, 2], [1, 2])

    def test_unknown_check(self):
        with pytest.raises(DomainError):
            run_check("nope")


class TestInequalities:
    def test_dynkin_for_z(self):
        rep = check_dynkin(BlaschkeProduct.monomial(1))
        assert rep.lhs == pytest.approx(1.0) and rep.rhs == 16.0

    @given(seeds)
    def test_dynkin_random(self, seed):
        B = random_blaschke(int(np.random.default_rng(seed).integers(1, 17)), 0.95, seed)
        assert check_dynkin(B).passed

    @pytest.mark.parametrize("p,alpha", [(2, 0), (3, 0.5), (1.5, -0.25)])
    def test_dynkin_sandwich_monomials(self, p, alpha):
        for n in (1, 4, 12):
            rep = check_dynkin_sandwich(BlaschkeProduct.monomial(n), p, alpha)
            assert rep.passed, rep

    def test_dynkin_sandwich_outside_region(self):
        with pytest.raises(DomainError):
            check_dynkin_sandwich(BlaschkeProduct.monomial(2), 2, 1)

    def test_peller_sharpness_and_equality(self):
        sigma = random_blaschke(5, 0.9, 3)
        rep = check_peller_sharpness(sigma, 2, 0)
        assert rep.passed
        assert rep.metadata["inequality_ratio"] == pytest.approx(constants(2, 0).K_palpha, rel=1e-9)

    def test_peller_general_labels(self):
        sigma = random_blaschke(4, 0.9, 5)
        f = random_model_space_element(ModelSpaceTag(sigma, 1), 1)
        rep = check_peller_general(sigma, f, 2, 0)
        assert rep.passed and rep.metadata["bmoa_label"] == "necessary-condition"

    def test_peller_general_rejects_outsider(self):
        sigma = BlaschkeProduct([0.5])
        with pytest.raises(DomainError):
            check_peller_general(sigma, RationalFunction.polynomial([0, 0, 0, 1.0]), 2, 0)

    def test_operator_bounds(self):
        reps = check_operator_norm_bounds(random_blaschke(6, 0.9, 7), 2, 0)
        assert [r.name for r in reps] == ["operator_upper"] * 3 + ["operator_lower"]
        assert all(r.passed for r in reps)

    def test_simple_route_and_polar_chain(self):
        B = random_blaschke(5, 0.9, 8)
        assert check_simple_route(B, 3).passed
        assert check_polar_chain(B, 2, 0).passed

    def test_second_derivative(self, rng):
        B = random_blaschke(8, 0.95, 9)
        pts = 0.99 * np.sqrt(rng.random(200)) * np.exp(2j * np.pi * rng.random(200))
        rep = check_second_derivative(B, pts)
        assert rep.passed and rep.lhs <= 8


class TestIdentities:
    def test_kernel4(self):
        assert check_kernel4(ModelSpaceTag(random_blaschke(4, 0.9, 1), 1), 0.3 + 0.2j).passed

    def test_uss(self):
        assert check_uss_identity(random_blaschke(30, 0.95, 2), 0.998j).passed

    @pytest.mark.parametrize("n", [1, 7, 20])
    def test_degree_invariant(self, n):
        assert check_degree_invariant(random_blaschke(n, 0.95, n)).passed


class TestSweeps:
    def test_afp_monomials_p2(self):
        res = check_afp_scaling(2, [2, 4, 8, 16, 32])
        assert res.passed
        assert res.ys == pytest.approx(tuple(math.sqrt(n) for n in res.xs), rel=1e-10)

    def test_afp_monomials_p1(self):
        res = check_afp_scaling(1, [2, 4, 8, 16, 32])
        assert res.ys == pytest.approx(tuple(2.0 * (n - 1) for n in res.xs), rel=1e-10)

    def test_afp_sweep_is_reproducible(self):
        a = check_afp_scaling(2, [4, 8, 16], family="random", seed=3)
        b = check_afp_scaling(2, [4, 8, 16], family="random", seed=3)
        assert a.ys == b.ys

    def test_small_p_spread(self):
        res = check_peller_small_p(0.75, [4, 8, 16, 32])
        assert res.passed and res.reports[0].name == "peller_small_p_spread"

    def test_critical_subcritical(self):
        res = check_critical_alpha(2, 0.5, [8, 16, 32, 64])
        assert res.fitted_exponent == pytest.approx(0.5, abs=0.05)
        assert all(r.passed for r in res.reports)

    def test_critical_closed_form_example(self):
        # ||(z^2)'||^2_{A_2(0)} = 4 Beta(2, 1) = 2
        res = check_critical_alpha(2, 1.0, [2, 3, 4])
        assert res.ys[0] == pytest.approx(2.0, rel=1e-12)

    def test_dolzhenko_growth(self):
        assert check_dolzhenko_growth(1.5, [2, 4, 8, 16]).passed

    def test_dolzhenko_growth_range(self):
        with pytest.raises(DomainError):
            check_dolzhenko_growth(2.5, [2, 4, 8])

    def test_dolzhenko_extension(self):
        sigma = random_blaschke(5, 0.9, 4)
        f = random_model_space_element(ModelSpaceTag(sigma, 1), 2)
        assert check_dolzhenko_extension(sigma, f, 4).passed

    def test_dolzhenko_dispatch(self):
        with pytest.raises(DomainError):
            check_dolzhenko("other")
        res = check_dolzhenko("sharpness", p=4.0, r=0.5, ns=[2, 4, 8])
        assert res.passed


class TestSharpnessClosedForm:
    @pytest.mark.parametrize("n", [1, 5, 30])
    def test_p2_is_degree(self, n):
        assert sharpness_closed_form(n, 0.7, 2) == pytest.approx(n, rel=1e-14)

    @pytest.mark.parametrize("p", [3.0, 3.5, 4.0])
    def test_matches_quadrature(self, p):
        n, r = 6, 0.8
        quad = a1_seminorm(BlaschkeProduct.mobius_power(n, r), p, 0, tol=1e-11).quadrature.value
        assert sharpness_closed_form(n, r, p) == pytest.approx(quad, rel=1e-8)

    def test_sweep_reports_spread(self):
        res = check_dolzhenko_sharpness(4, 0.9, [8, 16, 32])
        assert res.reports[-1].name == "dolzhenko_sharpness_spread"
        assert res.passed


class TestHardy:
    @pytest.mark.parametrize("p,alpha", [(2, 0), (3, 1), (1.5, -0.25)])
    def test_constant_step(self, p, alpha):
        lhs, rhs = hardy_sides([], [1.0], p, alpha)
        assert lhs == pytest.approx(1 / (alpha + 1), rel=1e-14)
        assert rhs == pytest.approx((p / (p - 1 - alpha)) ** p / (alpha + 1), rel=1e-14)

    @pytest.mark.parametrize("p,alpha", [(2, 0), (3, 1), (1.5, -0.25), (2.5, 0.3)])
    def test_matches_direct_quadrature(self, p, alpha, rng):
        breaks, values = random_step_function(rng, 5)
        lhs, _ = hardy_sides(breaks, values, p, alpha)
        assert lhs == pytest.approx(hardy_lhs_by_quad(breaks, values, p, alpha), rel=1e-9)

    @given(seeds)
    def test_inequality_holds(self, seed):
        breaks, values = random_step_function(np.random.default_rng(seed), 6)
        assert check_hardy(breaks, values, 2, 0).passed

    def test_invalid_steps(self):
        with pytest.raises(DomainError):
            hardy_sides([0.5, 0.3], [1, 1, 1], 2, 0)
        with pytest.raises(DomainError):
            hardy_sides([0.5], [1, -1], 2, 0)


class TestRunner:
    def test_all_checks_registered(self):
        assert {"dynkin", "dynkin_sandwich", "theorem3", "peller", "afp", "critical", "dolzhenko", "hardy",
                "kernel4", "uss", "degree"} <= set(CHECKS)

    def test_same_seed_same_reports(self):
        a = run_check("dynkin_sandwich", {"p": 3.0, "alpha": 0.5, "trials": 3}, seed=5)
        b = run_check("dynkin_sandwich", {"p": 3.0, "alpha": 0.5, "trials": 3}, seed=5)
        assert [r.to_dict() for r in a] == [r.to_dict() for r in b]

    def test_default_manifest_passes(self):
        reports = run_manifest(default_manifest())
        assert all(isinstance(r, CheckReport) for r in reports)
        failed = [r.to_dict() for r in reports if not r.passed]
        assert not failed
