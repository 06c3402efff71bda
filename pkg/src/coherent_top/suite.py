"""The named verification checks behind the `verify` command.

Every check compares an implementation route against an independent oracle
(closed form vs spectral currents, split-step evolution vs the analytic
state, quadrature vs exact moments, RK4 tracers vs the co-moving rotation)
and records a residual with a fixed tolerance. Checks are deterministic:
random sampling uses hard-coded seeds, and no check depends on wall-clock
state, so two runs of the same configuration produce identical reports.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import quad, solve_ivp

from . import __version__
from .analytic import (
    classical_trajectory,
    coherent_state,
    energy_field,
    phase_integral,
    polar_form,
    sample_coherent_state,
)
from .config import RunConfig
from .core import (
    Check,
    CoherentStateSpec,
    ComplexField,
    Grid2D,
    PhysParams,
    ScalarField,
    VerificationReport,
    default_half_extent,
    make_grid,
    sigma,
)
from .currents import (
    DENSITY_GUARD,
    convection_current,
    picture_velocity,
    rigid_body_fit,
    sample_velocity_field,
    spin_current,
    total_current,
    velocity_field,
)
from .evolve import (
    EvolveConfig,
    continuity_residual,
    run_state_comparison,
    split_step_evolve,
    state_distance,
)
from .flow import comoving_diagnostics, comoving_reference, integrate_tracer, transport_points
from .hydrogen import (
    hydrogen_energy_picture,
    hydrogen_uncertainties,
    integrate_orbit,
    polar_sin2_moment,
    radial_moment,
)
from .evolve import potential_values
from .spectral import divergence, laplacian
from .stats import (
    energy_expectation_picture,
    moment_report,
    momentum_spread_operator,
    momentum_spread_picture,
    position_spread,
)

__all__ = ["run_verification", "SECTION_NAMES"]

SECTION_NAMES = ("analytic", "currents", "evolve", "flow", "stats", "hydrogen")

# Number of steps in the long norm-conservation run.
NORM_RUN_STEPS = 10_000


def _random_specs(params: PhysParams, count: int, seed: int, scale: float = 0.75):
    """Deterministic random displacement/velocity pairs.

    Components stay within +-0.75 so the default-extent grids keep full
    spectral resolution at 256 nodes per axis.
    """
    rng = np.random.default_rng(seed)
    for _ in range(count):
        yield CoherentStateSpec(
            params=params, xi0=rng.uniform(-scale, scale, 2), v0=rng.uniform(-scale, scale, 2)
        )


def _masked_sup(a: np.ndarray, b: np.ndarray, mask: np.ndarray) -> float:
    return float(np.abs(a[mask] - b[mask]).max())


# ---------------------------------------------------------------------------
# analytic


def analytic_checks(cfg: RunConfig) -> list[Check]:
    checks: list[Check] = []
    spec = cfg.state_spec()
    p = spec.params
    w = p.omega
    period = p.period
    grid = cfg.grid()

    # classical energy conservation over random specs and times
    rng = np.random.default_rng(2024_01)
    worst = 0.0
    for s in _random_specs(p, 100, seed=2024_02, scale=2.0):
        e0 = 0.5 * p.mass * float(s.v0 @ s.v0) + 0.5 * p.mass * w**2 * float(s.xi0 @ s.xi0)
        for t in rng.uniform(0.0, 4.0 * period, 100):
            st = classical_trajectory(s, t)
            e = 0.5 * p.mass * float(st.vel @ st.vel) + 0.5 * p.mass * w**2 * float(st.xi @ st.xi)
            if e0 > 0:
                worst = max(worst, abs(e - e0) / e0)
    checks.append(Check("analytic.classical_energy_conservation", worst, 1e-12))

    # periodicity of the trajectory
    worst = 0.0
    rng = np.random.default_rng(2024_03)
    for s in _random_specs(p, 10, seed=2024_04, scale=2.0):
        for t in rng.uniform(0.0, 2.0 * period, 10):
            a = classical_trajectory(s, t)
            b = classical_trajectory(s, t + period)
            worst = max(worst, float(np.abs(a.xi - b.xi).max()), float(np.abs(a.vel - b.vel).max()))
    checks.append(Check("analytic.classical_trajectory_periodicity", worst, 1e-10))

    # trajectory against a high-order ODE integrator
    target = 0.7 / w
    y0 = np.concatenate([spec.xi0, spec.v0])
    sol = solve_ivp(
        lambda t, y: np.concatenate([y[2:], -(w**2) * y[:2]]),
        (0.0, target),
        y0,
        method="DOP853",
        rtol=1e-12,
        atol=1e-14,
        dense_output=False,
        t_eval=[target],
    )
    st = classical_trajectory(spec, target)
    ode_dev = float(np.abs(np.concatenate([st.xi, st.vel]) - sol.y[:, -1]).max())
    checks.append(Check("analytic.trajectory_vs_ode_oracle", ode_dev, 1e-10))

    # phase integral against adaptive quadrature
    def integrand(s: float) -> float:
        st = classical_trajectory(spec, s)
        return (
            p.hbar * w
            + 0.5 * p.mass * float(st.vel @ st.vel)
            - 0.5 * p.mass * w**2 * float(st.xi @ st.xi)
        )

    t_ref = 1.0 / w
    quad_val, _ = quad(integrand, 0.0, t_ref, epsabs=1e-14, epsrel=1e-13, limit=200)
    checks.append(
        Check("analytic.phase_integral_vs_quadrature", abs(phase_integral(spec, t_ref) - quad_val), 1e-12)
    )

    # normalization of the sampled state
    worst = 0.0
    for t in (0.0, 0.3 / w, 0.5 * period):
        psi = sample_coherent_state(spec, grid, t)
        worst = max(worst, abs(psi.norm_squared() - 1.0))
    checks.append(Check("analytic.coherent_state_normalization", worst, 1e-12))

    # the sampled state satisfies the Schrödinger equation
    t = 0.4 / w
    dt_fd = 1e-6 / w
    psi = coherent_state(spec, grid.points, t)
    dpsi_dt = (coherent_state(spec, grid.points, t + dt_fd) - coherent_state(spec, grid.points, t - dt_fd)) / (
        2.0 * dt_fd
    )
    residual = (
        1j * p.hbar * dpsi_dt
        - (-(p.hbar**2) / (2.0 * p.mass) * laplacian(psi, grid) + potential_values(grid, p) * psi)
    )
    rho = np.abs(psi) ** 2
    mask = rho > DENSITY_GUARD * rho.max()
    checks.append(
        Check(
            "analytic.schrodinger_equation_residual",
            float(np.abs(residual[mask]).max() / np.abs(psi).max()),
            1e-5,
        )
    )

    # polar form: grad(S)/m from a closed-form finite difference equals v(t)
    t = 0.7 / w
    delta = 1e-5
    pts = grid.points
    psi = coherent_state(spec, pts, t)
    rho = np.abs(psi) ** 2
    mask = rho > DENSITY_GUARD * rho.max()
    form = polar_form(spec, pts, t)
    worst = 0.0
    for axis in range(2):
        shift = np.zeros(2)
        shift[axis] = delta
        dpsi = (coherent_state(spec, pts + shift, t) - coherent_state(spec, pts - shift, t)) / (2.0 * delta)
        v_fd = p.hbar * np.imag(np.conj(psi[mask]) * dpsi[mask]) / (p.mass * rho[mask])
        worst = max(worst, float(np.abs(v_fd - form.grad_s_over_m[axis]).max()))
    checks.append(Check("analytic.polar_gradient_consistency", worst, 1e-8))

    # energy on the trajectory: constant real part, vanishing imaginary part
    e_ref = p.hbar * w + 0.5 * p.mass * float(spec.v0 @ spec.v0) + 0.5 * p.mass * w**2 * float(
        spec.xi0 @ spec.xi0
    )
    worst_re = 0.0
    worst_im = 0.0
    for k in range(9):
        t = k * period / 8.0
        e = energy_field(spec, classical_trajectory(spec, t).xi, t)
        worst_re = max(worst_re, abs(float(np.real(e)) - e_ref))
        worst_im = max(worst_im, abs(float(np.imag(e))))
    checks.append(Check("analytic.energy_on_trajectory_constancy", worst_re, 1e-12))
    checks.append(Check("analytic.energy_on_trajectory_imaginary", worst_im, 1e-14 * p.hbar * w))

    # full energy field against the i hbar dPsi/dt / Psi definition
    t = 0.6 / w
    s = sigma(p)
    xi = classical_trajectory(spec, t).xi
    offsets = np.array([[s, 0.0], [-1.3 * s, 0.7 * s], [0.4 * s, -2.0 * s], [2.2 * s, 1.1 * s]])
    points = xi + offsets
    e_closed = energy_field(spec, points, t)
    psi_mid = coherent_state(spec, points, t)
    dpsi = (coherent_state(spec, points, t + dt_fd) - coherent_state(spec, points, t - dt_fd)) / (2.0 * dt_fd)
    e_fd = 1j * p.hbar * dpsi / psi_mid
    checks.append(
        Check(
            "analytic.energy_field_time_derivative",
            float(np.abs(e_fd - e_closed).max() / np.abs(e_closed).max()),
            1e-6,
        )
    )
    return checks


# ---------------------------------------------------------------------------
# currents


def currents_checks(cfg: RunConfig) -> list[Check]:
    checks: list[Check] = []
    spec = cfg.state_spec()
    p = spec.params
    w = p.omega
    s = sigma(p)

    # centered Gaussian on its own default grid (ground-state configuration)
    ground = CoherentStateSpec(params=p, xi0=np.zeros(2), v0=np.zeros(2))
    ground_grid = make_grid(default_half_extent(ground), cfg.grid_n)
    X, Y = ground_grid.mesh
    rho_values = (2.0 * np.pi * s**2) ** -1.0 * np.exp(-(X**2 + Y**2) / (2.0 * s**2))
    rho = ScalarField(grid=ground_grid, values=rho_values)
    j = spin_current(rho, p)

    # spectral gradient against the closed-form Gaussian gradient
    coef = p.spin_sign * p.hbar / (2.0 * p.mass)
    exact_vx = coef * (-(Y / s**2) * rho_values)
    exact_vy = -coef * (-(X / s**2) * rho_values)
    dev = max(float(np.abs(j.vx - exact_vx).max()), float(np.abs(j.vy - exact_vy).max()))
    checks.append(Check("currents.spin_current_gaussian_oracle", dev, 1e-10))

    # divergence-free spin current
    div = divergence(j.vx, j.vy, ground_grid)
    j_max = max(float(np.abs(j.vx).max()), float(np.abs(j.vy).max()))
    checks.append(Check("currents.spin_current_divergence_free", float(np.abs(div).max()) / j_max, 1e-10))

    # flipping the spin negates the current exactly
    flipped = PhysParams(hbar=p.hbar, mass=p.mass, omega=p.omega, spin_sign=-p.spin_sign)
    j_flip = spin_current(rho, flipped)
    neg_dev = max(float(np.abs(j.vx + j_flip.vx).max()), float(np.abs(j.vy + j_flip.vy).max()))
    checks.append(Check("currents.spin_sign_negation_exact", neg_dev, 1e-15))

    # linearity in the density; a constant offset keeps the combination
    # non-negative for signed coefficients and carries no gradient
    rng = np.random.default_rng(2024_05)
    a, b = rng.uniform(-2.0, 2.0, 2)
    rho2_values = (2.0 * np.pi * (1.3 * s) ** 2) ** -1.0 * np.exp(
        -((X - 0.5 * s) ** 2 + Y**2) / (2.0 * (1.3 * s) ** 2)
    )
    combo_values = a * rho_values + b * rho2_values
    offset = max(0.0, -float(combo_values.min()))
    combo = ScalarField(grid=ground_grid, values=combo_values + offset)
    j2 = spin_current(ScalarField(grid=ground_grid, values=rho2_values), p)
    j_combo = spin_current(combo, p)
    lin_dev = max(
        float(np.abs(j_combo.vx - (a * j.vx + b * j2.vx)).max()),
        float(np.abs(j_combo.vy - (a * j.vy + b * j2.vy)).max()),
    )
    checks.append(Check("currents.spin_current_linearity", lin_dev, 1e-12))

    # real-valued psi carries no convection current
    psi_real = ComplexField(grid=ground_grid, values=np.sqrt(rho_values).astype(complex))
    j_conv = convection_current(psi_real, p)
    checks.append(
        Check(
            "currents.convection_real_psi_zero",
            max(float(np.abs(j_conv.vx).max()), float(np.abs(j_conv.vy).max())),
            1e-14,
        )
    )

    # total current over density equals the closed-form rigid velocity field
    worst = 0.0
    rng = np.random.default_rng(2024_06)
    for rspec in _random_specs(p, 20, seed=2024_07):
        t = float(rng.uniform(0.0, p.period))
        rgrid = make_grid(default_half_extent(rspec), cfg.grid_n)
        psi = sample_coherent_state(rspec, rgrid, t)
        vx, vy, mask = picture_velocity(psi, p)
        v_exact = velocity_field(rspec, rgrid.points, t)
        worst = max(
            worst,
            _masked_sup(vx, v_exact[..., 0], mask),
            _masked_sup(vy, v_exact[..., 1], mask),
        )
    checks.append(Check("currents.velocity_matches_closed_form", worst, 1e-8))

    # rigid-body structure of the analytic velocity field
    grid = cfg.grid()
    worst_strain = 0.0
    worst_curl = 0.0
    worst_rate = 0.0
    for k in range(5):
        t = k * p.period / 5.0
        fit = rigid_body_fit(sample_velocity_field(spec, grid, t))
        worst_strain = max(worst_strain, fit.strain_residual)
        worst_curl = max(worst_curl, fit.curl_residual)
        worst_rate = max(worst_rate, abs(fit.omega_fitted - p.spin_sign * w))
    checks.append(Check("currents.rigid_strain_residual", worst_strain, 1e-8))
    checks.append(Check("currents.rigid_curl_uniformity", worst_curl, 1e-8))
    checks.append(Check("currents.rigid_rotation_rate", worst_rate, 1e-8))
    return checks


# ---------------------------------------------------------------------------
# evolve


def evolve_checks(cfg: RunConfig) -> list[Check]:
    checks: list[Check] = []
    spec = cfg.state_spec()
    p = spec.params
    w = p.omega
    period = p.period

    # one full comparison run: final error, energy constancy, energy value
    ecfg = cfg.evolve_config()
    sample_steps = sorted(set(np.linspace(0, ecfg.steps, 9).round().astype(int).tolist()))
    comparison = run_state_comparison(spec, ecfg, sample_steps)
    checks.append(Check("evolve.period_state_error", float(comparison.errors[-1]), 1e-6))

    e_ref = p.hbar * w + 0.5 * p.mass * float(spec.v0 @ spec.v0) + 0.5 * p.mass * w**2 * float(
        spec.xi0 @ spec.xi0
    )
    energies = comparison.energies
    checks.append(
        Check("evolve.energy_constancy", float(np.abs(energies - energies[0]).max() / abs(energies[0])), 1e-9)
    )
    checks.append(Check("evolve.energy_matches_trajectory_value", float(np.abs(energies - e_ref).max() / e_ref), 1e-7))

    # second-order convergence: doubling dt must grow the error ~4x
    steps_coarse = max(1, round(ecfg.steps / 2))
    dt_coarse = ecfg.steps * ecfg.dt / steps_coarse
    coarse_cfg = EvolveConfig(grid=ecfg.grid, dt=dt_coarse, steps=steps_coarse, params=p)
    coarse = run_state_comparison(spec, coarse_cfg, [steps_coarse])
    expected_ratio = (dt_coarse / ecfg.dt) ** 2
    ratio = float(coarse.errors[-1] / comparison.errors[-1])
    checks.append(Check("evolve.convergence_ratio", abs(ratio - expected_ratio), 0.5))

    # long run on the ground state: norm conservation and stationary density.
    # Compact 16-sigma extent at 128 nodes gives h = sigma/4, which resolves
    # the spectrum of rho = |psi|^2 (twice as wide as psi's) to below 1e-30.
    ground = CoherentStateSpec(params=p, xi0=np.zeros(2), v0=np.zeros(2))
    ground_grid = make_grid(16.0 * sigma(p), 128)
    gcfg = EvolveConfig(grid=ground_grid, dt=ecfg.dt, steps=NORM_RUN_STEPS, params=p)
    psi0 = sample_coherent_state(ground, ground_grid, 0.0)
    period_step = round(period / ecfg.dt)
    density_dev = [math.inf]

    def observer(step: int, values: np.ndarray) -> None:
        if step == min(period_step, NORM_RUN_STEPS):
            density_dev[0] = float(np.abs(np.abs(values) - np.abs(psi0.values)).max())

    final = split_step_evolve(psi0, gcfg, observer=observer)
    checks.append(Check("evolve.norm_conservation_long_run", abs(final.norm_squared() - 1.0), 1e-11))
    checks.append(Check("evolve.ground_density_stationary", density_dev[0], 1e-8))

    # continuity from analytic snapshots
    grid = cfg.grid()
    t_mid = 0.4 / w
    delta = 1e-4 / w
    snaps = [sample_coherent_state(spec, grid, t) for t in (t_mid - delta, t_mid, t_mid + delta)]
    rho_max = float(snaps[1].density().max())
    res_total = continuity_residual(*snaps, delta, p, use_spin_current=True)
    res_conv = continuity_residual(*snaps, delta, p, use_spin_current=False)
    current = total_current(snaps[1], p).total
    j_max = max(float(np.abs(current.vx).max()), float(np.abs(current.vy).max()))
    checks.append(Check("evolve.continuity_residual", res_total / rho_max, 1e-6))
    checks.append(Check("evolve.continuity_spin_term_silent", abs(res_total - res_conv) / j_max, 1e-10))

    # stationary ground state: residual is pure roundoff. The density is
    # exactly time-independent, so a wider FD step only divides the rounding
    # noise of the snapshots without introducing truncation error.
    delta_stationary = 1e-2 / w
    gsnaps = [
        sample_coherent_state(ground, ground_grid, t)
        for t in (t_mid - delta_stationary, t_mid, t_mid + delta_stationary)
    ]
    g_rho_max = float(gsnaps[1].density().max())
    g_res = continuity_residual(*gsnaps, delta_stationary, p, use_spin_current=True)
    checks.append(Check("evolve.continuity_stationary_ground", g_res / g_rho_max, 1e-12))
    return checks


# ---------------------------------------------------------------------------
# flow


def flow_checks(cfg: RunConfig) -> list[Check]:
    checks: list[Check] = []
    spec = cfg.state_spec()
    p = spec.params
    period = p.period
    dt = cfg.resolved_tracer_dt()
    span = cfg.periods * period
    if span < period:
        span = period  # diagnostics need at least one period

    seeds = cfg.resolved_tracer_seeds()
    worst_sup = 0.0
    worst_return = 0.0
    worst_drift = 0.0
    worst_rate = 0.0
    direction_ok = True
    for seed in seeds:
        if span == period:
            path = integrate_tracer(spec, seed, 0.0, span, dt)
            return_path = path
        else:
            path = integrate_tracer(spec, seed, 0.0, span, dt)
            return_path = integrate_tracer(spec, seed, 0.0, period, dt)
        reference = comoving_reference(spec, seed, 0.0, path.times)
        worst_sup = max(worst_sup, float(np.abs(path.positions - reference).max()))
        worst_return = max(
            worst_return, float(np.abs(return_path.positions[-1] - return_path.positions[0]).max())
        )
        diag = comoving_diagnostics(path)
        if diag.degenerate:
            continue
        worst_drift = max(worst_drift, diag.radius_drift)
        worst_rate = max(worst_rate, abs(diag.angular_rate - p.spin_sign * p.omega))
        direction_ok = direction_ok and diag.direction == p.spin_sign
    checks.append(Check("flow.tracer_matches_comoving_rotation", worst_sup, 1e-6))
    checks.append(Check("flow.tracer_period_return", worst_return, 1e-6))
    checks.append(Check("flow.tracer_radius_drift", worst_drift, 1e-7))
    checks.append(Check("flow.tracer_angular_rate", worst_rate, 1e-6))

    # flipping the spin negates the rotational part of the field; the rotation
    # term itself flips bitwise, the only play is the rounding of its sum with
    # v(t), so the tolerance sits at roundoff scale for |v| + omega L
    flipped_params = PhysParams(hbar=p.hbar, mass=p.mass, omega=p.omega, spin_sign=-p.spin_sign)
    flipped = CoherentStateSpec(params=flipped_params, xi0=spec.xi0, v0=spec.v0)
    t_probe = 0.3 * period
    probe_grid = cfg.grid()
    v_plus = velocity_field(spec, probe_grid.points, t_probe)
    v_minus = velocity_field(flipped, probe_grid.points, t_probe)
    vc = classical_trajectory(spec, t_probe).vel
    neg_dev = float(np.abs((v_plus - vc) + (v_minus - vc)).max())
    checks.append(Check("flow.velocity_spin_negation", neg_dev, 1e-13))

    path_flip = integrate_tracer(flipped, seeds[0], 0.0, span, dt)
    diag_flip = comoving_diagnostics(path_flip)
    direction_ok = direction_ok and diag_flip.direction == -p.spin_sign
    checks.append(Check("flow.tracer_direction_follows_spin", 0.0 if direction_ok else 1.0, 0.5))

    # co-moving density profile is preserved over one period
    rng = np.random.default_rng(2024_08)
    s = sigma(p)
    cloud = classical_trajectory(spec, 0.0).xi + rng.normal(0.0, s, size=(1000, 2))
    moved = transport_points(spec, cloud, 0.0, period, period / 2000.0)
    r_before = np.linalg.norm(cloud - classical_trajectory(spec, 0.0).xi, axis=1)
    r_after = np.linalg.norm(moved - classical_trajectory(spec, period).xi, axis=1)
    edges = np.linspace(0.0, 4.0 * s, 21)
    h_before, _ = np.histogram(r_before, bins=edges)
    h_after, _ = np.histogram(r_after, bins=edges)
    pq = h_before + h_after
    nonzero = pq > 0
    chi2 = 0.5 * float(
        np.sum((h_before[nonzero] - h_after[nonzero]) ** 2 / pq[nonzero]) / h_before.sum()
    )
    checks.append(Check("flow.comoving_profile_chi_square", chi2, 1e-3))
    return checks


# ---------------------------------------------------------------------------
# stats


def stats_checks(cfg: RunConfig) -> list[Check]:
    checks: list[Check] = []
    spec = cfg.state_spec()
    p = spec.params
    grid = cfg.grid()
    s = sigma(p)
    period = p.period
    times = [k * period / 8.0 for k in range(9)]

    worst_x = 0.0
    worst_y = 0.0
    worst_invariance = 0.0
    base = None
    for t in times:
        dx, dy = position_spread(spec, t, grid)
        dpx, dpy = momentum_spread_picture(spec, t, grid)
        worst_x = max(worst_x, abs(dx * dpx / p.hbar - 0.5))
        worst_y = max(worst_y, abs(dy * dpy / p.hbar - 0.5))
        spreads = np.array([dx, dy, dpx, dpy])
        if base is None:
            base = spreads
        else:
            worst_invariance = max(worst_invariance, float(np.abs(spreads - base).max()))
    checks.append(Check("stats.heisenberg_product_x", worst_x, 1e-9))
    checks.append(Check("stats.heisenberg_product_y", worst_y, 1e-9))
    checks.append(Check("stats.spreads_time_invariant", worst_invariance, 1e-10))

    # picture momentum spread equals the operator momentum spread
    worst = 0.0
    for rspec in _random_specs(p, 10, seed=2024_09):
        rgrid = make_grid(default_half_extent(rspec), cfg.grid_n)
        pic = momentum_spread_picture(rspec, 0.0, rgrid)
        op = momentum_spread_operator(rspec, 0.0, rgrid)
        worst = max(worst, abs(pic[0] - op[0]), abs(pic[1] - op[1]))
    checks.append(Check("stats.picture_vs_operator_momentum", worst, 1e-8))

    # energy value and decomposition
    e_ref = p.hbar * p.omega + 0.5 * p.mass * float(spec.v0 @ spec.v0) + 0.5 * p.mass * p.omega**2 * float(
        spec.xi0 @ spec.xi0
    )
    worst_energy = 0.0
    for t in (0.0, 0.37 * period, 0.81 * period):
        energy, _ = energy_expectation_picture(spec, t, grid)
        worst_energy = max(worst_energy, abs(energy - e_ref))
    checks.append(Check("stats.energy_expectation_value", worst_energy, 1e-9))

    _, parts = energy_expectation_picture(spec, 0.0, grid)
    expected = {
        "translational": 0.5 * p.mass * float(spec.v0 @ spec.v0),
        "rotational": 0.5 * p.hbar * p.omega,
        "potential_of_center": 0.5 * p.mass * p.omega**2 * float(spec.xi0 @ spec.xi0),
        "potential_spread": 0.5 * p.hbar * p.omega,
    }
    part_dev = max(abs(parts[k] - expected[k]) for k in expected)
    checks.append(Check("stats.energy_decomposition_parts", part_dev, 1e-9))

    # doubling the grid must not move any reported moment
    fine = make_grid(grid.half_extent, 2 * grid.n)
    t_probe = 0.7 / p.omega
    r_coarse = moment_report(spec, t_probe, grid)
    r_fine = moment_report(spec, t_probe, fine)
    refinement_dev = max(
        abs(r_coarse.delta_x - r_fine.delta_x),
        abs(r_coarse.delta_y - r_fine.delta_y),
        abs(r_coarse.delta_px - r_fine.delta_px),
        abs(r_coarse.delta_py - r_fine.delta_py),
        abs(r_coarse.energy - r_fine.energy),
    )
    checks.append(Check("stats.moment_grid_refinement", refinement_dev, 1e-11))
    return checks


# ---------------------------------------------------------------------------
# hydrogen


def hydrogen_checks(cfg: RunConfig) -> list[Check]:
    checks: list[Check] = []
    p = cfg.hydrogen_params()
    a0 = p.a0

    checks.append(Check("hydrogen.density_normalization", abs(radial_moment(p, 0) - 1.0), 1e-10))
    checks.append(
        Check("hydrogen.mean_r_squared", abs(radial_moment(p, 2) - 3.0 * a0**2) / (3.0 * a0**2), 1e-10)
    )
    checks.append(Check("hydrogen.mean_r", abs(radial_moment(p, 1) - 1.5 * a0) / (1.5 * a0), 1e-10))
    checks.append(
        Check("hydrogen.mean_sin_squared_theta", abs(polar_sin2_moment() - 2.0 / 3.0) / (2.0 / 3.0), 1e-10)
    )

    _, _, product = hydrogen_uncertainties(p)
    checks.append(Check("hydrogen.heisenberg_product", abs(product - math.sqrt(2.0)), 1e-9))

    picture, quantum, mismatch = hydrogen_energy_picture(p)
    e_scale = 0.5 * p.mass * (p.alpha * p.c) ** 2
    checks.append(
        Check(
            "hydrogen.picture_energy_value",
            abs(picture - (1.0 / 3.0) * p.mass * (p.alpha * p.c) ** 2) / e_scale,
            1e-10,
        )
    )
    energy_ok = mismatch and quantum == -e_scale and picture > 0.0
    checks.append(Check("hydrogen.energy_mismatch_flag", 0.0 if energy_ok else 1.0, 0.5))

    # each point circles the spin axis: r and theta stay constant
    x0 = np.array([2.0 * a0 * math.sin(math.pi / 3.0), 0.0, 2.0 * a0 * math.cos(math.pi / 3.0)])
    _, positions = integrate_orbit(p, x0, revolutions=10.0, steps_per_revolution=1000)
    radii = np.linalg.norm(positions, axis=1)
    thetas = np.arccos(positions[:, 2] / radii)
    drift = max(
        float(np.abs(radii - radii[0]).max() / a0), float(np.abs(thetas - thetas[0]).max())
    )
    checks.append(Check("hydrogen.tracer_circles_spin_axis", drift, 1e-8))

    # rescaling a0 rescales delta_r and leaves the product untouched
    scaled = type(p)(hbar=3.0 * p.hbar, mass=p.mass, alpha=p.alpha, c=p.c)
    dr, _, prod = hydrogen_uncertainties(p)
    dr_scaled, _, prod_scaled = hydrogen_uncertainties(scaled)
    cov_dev = max(abs(dr_scaled / dr - 3.0) / 3.0, abs(prod_scaled - prod))
    checks.append(Check("hydrogen.scale_covariance", cov_dev, 1e-12))
    return checks


# ---------------------------------------------------------------------------


_SECTIONS = {
    "analytic": analytic_checks,
    "currents": currents_checks,
    "evolve": evolve_checks,
    "flow": flow_checks,
    "stats": stats_checks,
    "hydrogen": hydrogen_checks,
}


def run_verification(cfg: RunConfig, sections: tuple[str, ...] = SECTION_NAMES) -> VerificationReport:
    """Run the named check suites and collect a report.

    The metadata block contains the fully resolved configuration; re-running
    from it reproduces the report byte for byte.
    """
    unknown = set(sections) - set(_SECTIONS)
    if unknown:
        raise ValueError(f"unknown suite section(s): {sorted(unknown)}")
    report = VerificationReport(
        metadata={"package": "coherent-top", "version": __version__, "config": cfg.resolved()}
    )
    for name in sections:
        report.extend(_SECTIONS[name](cfg))
    return report
