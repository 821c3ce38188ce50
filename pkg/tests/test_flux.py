"""Nonzero-current structure: flow system, closed forms, field identities."""

import math

import numpy as np
import pytest

from bmlandau import flux as fx
from bmlandau import sectors as sec
from bmlandau import ermakov as ek
from bmlandau import specfun as sf
from bmlandau.core import PhysParams, QuantumNumbers, SampledProfile
from bmlandau.oracle import IVPProblem, integrate_ivp

NATURAL = PhysParams()


def reference_context():
    """Lambda = 1 via (l = 0, phi = 1), E_pi = 10, theta0 = 0."""
    return fx.flux_context_from_lambda(1.0, 0, 10.0, 0.0, NATURAL)


class TestCurrentBranch:
    def test_zero_sum_enforced(self):
        fx.CurrentBranch(1.0, -3.0, 2.0)
        with pytest.raises(ValueError, match="C_r \\+ C_theta \\+ C_z"):
            fx.CurrentBranch(1.0, 1.0, 1.0)


class TestFluxContext:
    def test_derived_quantities(self):
        ctx = fx.FluxContext(r=2.0, l=3, beta=0.5, E_pi=40.0)
        assert ctx.phi == pytest.approx(2.0)
        assert ctx.Lambda == pytest.approx(13.0)
        assert ctx.Lambda >= ctx.l**2
        assert ctx.discriminant == pytest.approx(1600.0 - 64.0 * 13.0)

    def test_from_lambda(self):
        ctx = fx.flux_context_from_lambda(5.0, 2, 30.0, 0.1, NATURAL)
        assert ctx.Lambda == pytest.approx(5.0)
        assert ctx.phi == pytest.approx(1.0)
        assert ctx.r == pytest.approx(math.sqrt(1.0 / NATURAL.beta))
        with pytest.raises(ValueError, match="Lambda must be >= l\\^2"):
            fx.flux_context_from_lambda(3.9, 2, 30.0, 0.0, NATURAL)


class TestUwFlow:
    def test_fixed_point(self):
        ctx = reference_context()
        dpi, dw = fx.uw_flow(fx.AzimuthalState(math.sqrt(ctx.Lambda), 0.0), ctx, 0.0)
        assert dpi == 0.0
        assert dw == 0.0

    def test_matches_closed_form_over_a_period(self):
        ctx = reference_context()
        pi0 = 8.0 * ctx.Lambda / ctx.E_pi
        dpi0 = -16.0 * ctx.Lambda**1.5 * math.sqrt(ctx.discriminant) / ctx.E_pi**2
        w0 = -dpi0 / (2.0 * pi0)

        rhs = lambda y, t: np.array(fx.uw_flow(fx.AzimuthalState(y[0], y[1]), ctx, 0.0))
        period = math.pi / math.sqrt(ctx.Lambda)
        sol = integrate_ivp(IVPProblem(2, rhs, [pi0, w0], (0.0, period), 1e-11, 1e-13, max_step=0.02))
        th = np.linspace(0.0, period, 500)
        assert np.max(np.abs(sol(th)[:, 0] - fx.pi_theta_closed(th, ctx))) < 1e-6


class TestNonlinpie:
    def test_zero_point(self):
        ctx = reference_context()
        assert fx.nonlinpie_residual(0.0, 0.0, 0.0, ctx, 0.0) == 0.0

    def test_constant_momentum_fixed_point(self):
        ctx = reference_context()
        pi = math.sqrt(ctx.Lambda)
        assert fx.nonlinpie_residual(pi, 0.0, 0.0, ctx, 0.0) == pytest.approx(0.0, abs=1e-12)

    def test_closed_form_satisfies_master_equation(self):
        ctx = reference_context()
        h = 1e-4
        pts = np.linspace(0.05, 3.0, 201)
        p0 = fx.pi_theta_closed(pts, ctx)
        pp = (fx.pi_theta_closed(pts + h, ctx) - fx.pi_theta_closed(pts - h, ctx)) / (2 * h)
        ppp = (fx.pi_theta_closed(pts + h, ctx) - 2 * p0 + fx.pi_theta_closed(pts - h, ctx)) / h**2
        assert np.max(np.abs(fx.nonlinpie_residual(p0, pp, ppp, ctx, 0.0))) < 1e-5


class TestPiThetaClosed:
    def test_value_at_theta0(self):
        ctx = reference_context()
        assert fx.pi_theta_closed(ctx.theta0, ctx) == pytest.approx(0.8, rel=1e-14)

    def test_extremal_range(self):
        ctx = reference_context()
        th = np.linspace(0.0, 2.0 * math.pi, 4001)
        values = fx.pi_theta_closed(th, ctx)
        assert values.min() == pytest.approx(0.5, abs=1e-6)
        assert values.max() == pytest.approx(2.0, abs=1e-6)

    def test_discriminant_branch_guard(self):
        ctx = fx.flux_context_from_lambda(1.0, 0, 1.0, 0.0, NATURAL)  # E^2 < 64 Lambda
        with pytest.raises(ValueError, match="discriminant branch not covered"):
            fx.pi_theta_closed(0.3, ctx)

    def test_denominator_bounded_away_from_zero(self):
        # on the Delta > 0 branch the sine never reaches -E/sqrt(Delta)
        ctx = reference_context()
        th = np.linspace(0.0, 2.0 * math.pi, 10001)
        u = 2.0 * math.sqrt(ctx.Lambda) * th
        denom = ctx.E_pi + math.sqrt(ctx.discriminant) * np.sin(u)
        assert denom.min() > 0


class TestSThetaClosed:
    def test_value_at_theta0_with_zero_flux(self):
        ctx = fx.FluxContext(r=0.0, l=1, beta=1.0, E_pi=10.0)
        want = math.atan(math.sqrt(ctx.discriminant) / (8.0 * math.sqrt(ctx.Lambda)))
        assert fx.s_theta_closed(0.0, ctx) == pytest.approx(want, rel=1e-13)

    def test_derivative_at_theta0(self):
        # dS/dtheta at theta0 is hbar*phi + 8 Lambda / E_pi
        ctx = reference_context()
        h = 1e-5
        fd = (fx.s_theta_closed(ctx.theta0 + h, ctx) - fx.s_theta_closed(ctx.theta0 - h, ctx)) / (2 * h)
        assert fd == pytest.approx(ctx.hbar * ctx.phi + 8.0 * ctx.Lambda / ctx.E_pi, abs=1e-7)

    def test_derivative_recovers_momentum(self):
        ctx = reference_context()
        pts = np.linspace(0.1, 2.9, 29)
        errs = []
        for h in (1e-3, 5e-4, 2.5e-4):
            fd = (fx.s_theta_closed(pts + h, ctx) - fx.s_theta_closed(pts - h, ctx)) / (2 * h)
            errs.append(np.max(np.abs(fd - ctx.hbar * ctx.phi - fx.pi_theta_closed(pts, ctx))))
        assert errs[0] / errs[1] == pytest.approx(4.0, abs=0.8)
        assert errs[1] / errs[2] == pytest.approx(4.0, abs=0.8)

    def test_continuous_across_tangent_pole(self):
        ctx = reference_context()  # sqrt(Lambda) = 1: tan pole at theta = pi/2
        th = np.linspace(math.pi / 2 - 0.05, math.pi / 2 + 0.05, 501)
        s = fx.s_theta_closed(th, ctx)
        jumps = np.abs(np.diff(s))
        slope_bound = ctx.hbar * ctx.phi + np.max(fx.pi_theta_closed(th, ctx))
        assert jumps.max() < 1.5 * (th[1] - th[0]) * slope_bound

    def test_quasi_periodic_increment(self):
        ctx = reference_context()
        th = np.linspace(0.0, 2.0, 101)
        inc = fx.s_theta_closed(th + 2.0 * math.pi, ctx) - fx.s_theta_closed(th, ctx)
        assert inc.max() - inc.min() < 1e-12
        assert inc[0] != 0.0

    def test_offset_constant(self):
        ctx = reference_context()
        assert fx.s_theta_closed(0.7, ctx, s0=2.5) - fx.s_theta_closed(0.7, ctx) == pytest.approx(2.5)


class TestFBranchFlow:
    def test_zero_current_reduces_to_linear_flow(self):
        ctx = fx.FluxContext(r=1.4, l=1, beta=0.6, E_pi=20.0)
        for F, p in ((1.0, 0.9), (2.3, 1.7)):
            got = fx.f_branch_flow(F, p, ctx, 0.0, +1)
            want = 2.0 * F / p - 4.0 * p * p / ctx.hbar**2 + 4.0 * ctx.Lambda
            assert got == pytest.approx(want, rel=1e-14)
            assert fx.f_branch_flow(F, p, ctx, 0.0, -1) == pytest.approx(got, rel=1e-14)

    def test_linear_flow_first_integral(self):
        # integrate the linear flow numerically and compare to
        # (pi'/pi)^2 = E pi - 4 pi^2 - 4 Lambda
        ctx = fx.flux_context_from_lambda(1.0, 0, 10.0, 0.0, NATURAL)
        E_pi, lam = ctx.E_pi, ctx.Lambda
        target = lambda p: E_pi * p - 4.0 * p * p - 4.0 * lam
        pi0 = 0.8
        F0 = pi0 * target(pi0)
        rhs = lambda y, t: np.array([fx.f_branch_flow(y[0], t, ctx, 0.0, +1)])
        sol = integrate_ivp(IVPProblem(1, rhs, [F0], (pi0, 1.9), 1e-12, 1e-14))
        for p in (1.0, 1.4, 1.9):
            assert sol(p)[0] / p == pytest.approx(target(p), abs=1e-8)

    def test_branch_split(self):
        ctx = fx.FluxContext(r=1.3, l=0, beta=0.7, E_pi=30.0)
        F, p, C = 1.5, 1.1, 0.8
        split = fx.f_branch_flow(F, p, ctx, C, +1) - fx.f_branch_flow(F, p, ctx, C, -1)
        assert split == pytest.approx(-8.0 * ctx.r**2 * C * math.sqrt(F / p) / p, rel=1e-13)

    def test_guards(self):
        ctx = fx.FluxContext(r=1.0, l=0, beta=1.0, E_pi=30.0)
        with pytest.raises(ZeroDivisionError, match="momentum-axis singularity"):
            fx.f_branch_flow(1.0, 0.0, ctx, 0.5, +1)
        with pytest.raises(ValueError, match="branch violation"):
            fx.f_branch_flow(-1.0, 1.0, ctx, 0.5, +1)
        with pytest.raises(ValueError, match="sign"):
            fx.f_branch_flow(1.0, 1.0, ctx, 0.5, 2)


class TestFirstIntegralQuadrature:
    def test_arcsin_reduction(self):
        E_th, l = 2.0, 2
        for T in (0.25, 0.55, 0.85, 0.99):
            got = fx.theta_first_integral_quadrature(T, E_th, l, 0.0, 0.7)
            want = (math.asin(l * T / math.sqrt(2.0 * E_th)) - math.pi / 2.0) / l
            assert got == pytest.approx(want, abs=1e-8)

    def test_turning_point_gives_zero(self):
        E_th, l = 2.0, 2
        tp = math.sqrt(2.0 * E_th) / l
        assert fx.theta_first_integral_quadrature(tp, E_th, l, 0.0, 0.7) == 0.0

    def test_round_trip_with_log_term(self):
        E_th, l, kap, phi = 2.0, 1, 0.5, 0.7
        h = 2e-3
        Ts = np.arange(0.7, 0.9 + h / 2, h)
        th = np.array(
            [fx.theta_first_integral_quadrature(float(T), E_th, l, kap, phi, tol=1e-12) for T in Ts]
        )
        dth = (th[:-4] - 8 * th[1:-3] + 8 * th[3:-1] - th[4:]) / (12 * h)
        rad = fx.first_integral_radicand(Ts[2:-2], E_th, l, kap, phi)
        assert np.max(np.abs(1.0 / dth**2 - rad)) < 1e-6

    def test_forbidden_amplitude(self):
        with pytest.raises(ValueError, match="classically forbidden"):
            fx.theta_first_integral_quadrature(0.05, 2.0, 1, 0.5, 0.7)
        with pytest.raises(ValueError, match="positive"):
            fx.theta_first_integral_quadrature(-0.3, 2.0, 1, 0.0, 0.0)

    def test_sign_follows_side_of_turning_point(self):
        E_th, l, kap, phi = 2.0, 1, 0.5, 0.7
        # lower turning point ~0.287, upper ~2.08; targets on either side
        below = fx.theta_first_integral_quadrature(0.5, E_th, l, kap, phi)
        above = fx.theta_first_integral_quadrature(1.9, E_th, l, kap, phi)
        assert below > 0  # measured upward from the lower turning point
        assert above < 0  # measured downward from the upper turning point


class TestThetaFromW:
    def test_zero_slope(self):
        grid = np.linspace(0.0, 1.0, 101)
        prof = fx.theta_from_w(SampledProfile("theta", grid, np.zeros_like(grid)), 2.5)
        assert np.allclose(prof.values, 2.5, atol=1e-15)

    def test_constant_slope(self):
        grid = np.linspace(0.0, 1.0, 101)
        prof = fx.theta_from_w(SampledProfile("theta", grid, 0.7 * np.ones_like(grid)), 1.0)
        assert np.max(np.abs(prof.values - np.exp(0.7 * grid))) < 1e-8

    def test_reconstruction_satisfies_first_integral(self):
        ctx = fx.FluxContext(r=0.0, l=1, beta=NATURAL.beta, E_pi=10.0)
        pi0 = 8.0 * ctx.Lambda / ctx.E_pi
        dpi0 = -16.0 * ctx.Lambda**1.5 * math.sqrt(ctx.discriminant) / ctx.E_pi**2
        w0 = -dpi0 / (2.0 * pi0)
        rhs = lambda y, t: np.array(fx.uw_flow(fx.AzimuthalState(y[0], y[1]), ctx, 0.0))
        sol = integrate_ivp(IVPProblem(2, rhs, [pi0, w0], (0.0, math.pi), 1e-11, 1e-13, max_step=0.01))
        h = 5e-4
        grid = np.arange(0.0, math.pi, h)
        kappa_theta = 1.0
        prof = fx.theta_from_w(SampledProfile("theta", grid, sol(grid)[:, 1]), math.sqrt(kappa_theta / pi0))
        T = prof.values
        dT = (T[2:] - T[:-2]) / (2 * h)
        rad = fx.first_integral_radicand(T[1:-1], kappa_theta * ctx.E_pi / 8.0, ctx.l, kappa_theta, 0.0)
        assert np.max(np.abs(dT**2 - rad)) < 1e-5


def zero_current_fields(n=30):
    r_ax = np.linspace(0.5, 2.0, n)
    th_ax = np.linspace(0.1, 1.2, n)
    z_ax = np.linspace(-0.8, 0.8, n)
    R3 = np.meshgrid(r_ax, th_ax, z_ax, indexing="ij")[0]
    R = np.exp(-(R3**2) / 2.0)
    rho = R**2
    p_r = 0.4 / (R3 * R**2)
    p_th = NATURAL.eB * R3 / 2.0 + 0.3
    p_z = 0.2 * np.ones_like(rho)
    return r_ax, th_ax, z_ax, rho, p_r, p_th, p_z


class TestDivergenceResidual:
    def test_uniform_density_zero_momenta(self):
        ax = np.linspace(0.5, 1.5, 12)
        zax = np.linspace(-0.5, 0.5, 12)
        shape = (12, 12, 12)
        res = fx.divergence_residual(
            ax, ax, zax, np.ones(shape), np.zeros(shape), np.zeros(shape), np.zeros(shape), NATURAL
        )
        assert res < 1e-14

    def test_zero_current_first_integrals(self):
        res = fx.divergence_residual(*zero_current_fields(40), NATURAL)
        assert res < 1e-5

    def test_nonzero_current_first_integrals(self):
        C_r, C_th, C_z = 0.3, -0.5, 0.2
        r_ax = np.linspace(0.5, 2.0, 301)
        th_ax = np.linspace(0.1, 1.2, 7)
        z_ax = np.linspace(-0.8, 0.8, 7)
        R3, TH3, Z3 = np.meshgrid(r_ax, th_ax, z_ax, indexing="ij")
        Rsq = np.exp(-(R3**2))
        p_r = (0.4 + C_r * (-np.exp(-(R3**2)) / 2.0)) / (R3 * Rsq)
        p_th = NATURAL.eB * R3 / 2.0 + 0.3 + R3 * C_th * TH3
        p_z = 0.2 + C_z * Z3
        res = fx.divergence_residual(r_ax, th_ax, z_ax, Rsq, p_r, p_th, p_z, NATURAL)
        assert res < 1e-5

    def test_axis_excluded(self):
        ax = np.linspace(0.0, 1.0, 8)
        with pytest.raises(ValueError, match="axis excluded"):
            fx.divergence_residual(
                ax, ax, ax, np.ones((8, 8, 8)), np.zeros((8, 8, 8)), np.zeros((8, 8, 8)),
                np.zeros((8, 8, 8)), NATURAL,
            )


class TestBohmEnergyResidual:
    def test_pure_gauge_term(self):
        pt = (1.3, 0.4, 0.1)
        E = (NATURAL.eB * pt[0]) ** 2 / (8.0 * NATURAL.mass)
        res = fx.bohm_energy_residual(
            lambda r: 1.0, lambda t: 1.0, lambda z: 1.0, 0.0, 0.0, 0.0, E, NATURAL, pt
        )
        assert res == pytest.approx(0.0, abs=1e-12)

    def test_zero_current_state_at_el_energy(self):
        n_r, k_z = 1, 1.3
        E = sec.energy_el(QuantumNumbers(n_r, 0, k_z), NATURAL)
        beta = NATURAL.beta
        R = lambda r: math.exp(-beta * r * r / 2.0) * sf.hyp1f1(-n_r, 1.0, beta * r * r)
        coef_z = ek.ep_coefficients(1.1, 0.9, -0.2, k_z)
        Z = sec.axial_amplitude_trig(coef_z, k_z)
        for pt in ((1.0, 0.3, 0.2), (0.7, 1.0, -0.4), (1.6, 2.0, 0.9)):
            p_z = NATURAL.hbar * coef_z.c / float(Z(pt[2])) ** 2
            res = fx.bohm_energy_residual(R, lambda t: 1.0, Z, 0.0, 0.0, p_z, E, NATURAL, pt)
            assert abs(res) < 1e-5

    def test_node_rejected(self):
        with pytest.raises(ValueError, match="quantum potential singular"):
            fx.bohm_energy_residual(
                lambda r: 0.0, lambda t: 1.0, lambda z: 1.0, 0.0, 0.0, 0.0, 1.0, NATURAL, (1.0, 0.0, 0.0)
            )
        with pytest.raises(ValueError, match="needs r > 0"):
            fx.bohm_energy_residual(
                lambda r: 1.0, lambda t: 1.0, lambda z: 1.0, 0.0, 0.0, 0.0, 1.0, NATURAL, (0.0, 0.0, 0.0)
            )
