"""Quadrature moments of the spread-particle picture.

Spreads are component-wise, matching the 2D oscillator treatment: the
position spread integrates (x - xi_x(t))^2 rho, and the picture momentum
spread integrates m^2 (v_x(x,t) - v_x(t))^2 rho with the rigid-body velocity
field. Both equal sigma and m w sigma analytically, so the Heisenberg
products saturate at hbar/2. Trapezoid quadrature on the periodic grid is
spectrally accurate for these Gaussian-decaying integrands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import spectral
from .analytic import classical_trajectory, sample_coherent_state
from .core import CoherentStateSpec, Grid2D, sigma
from .currents import velocity_field

__all__ = [
    "MomentReport",
    "position_spread",
    "momentum_spread_picture",
    "momentum_spread_operator",
    "energy_expectation_picture",
    "moment_report",
]

# Quadrature coverage guard: the Gaussian mass beyond the nearest boundary
# must stay below this fraction.
TAIL_MASS_LIMIT = 1e-10

DECOMPOSITION_KEYS = ("translational", "rotational", "potential_of_center", "potential_spread")


@dataclass(frozen=True)
class MomentReport:
    """Spreads, Heisenberg products (in units of hbar), and the energy split."""

    delta_x: float
    delta_y: float
    delta_px: float
    delta_py: float
    products: tuple[float, float]
    energy: float
    energy_decomposition: dict[str, float]

    def __post_init__(self) -> None:
        if min(self.delta_x, self.delta_y, self.delta_px, self.delta_py) < 0:
            raise ValueError("spreads must be non-negative")
        if set(self.energy_decomposition) != set(DECOMPOSITION_KEYS):
            raise ValueError(f"decomposition must have keys {DECOMPOSITION_KEYS}")
        total = sum(self.energy_decomposition.values())
        if abs(total - self.energy) > 1e-10 * abs(self.energy):
            raise ValueError(
                f"energy {self.energy!r} does not match decomposition sum {total!r} to 1e-10 relative"
            )


def _coverage_check(spec: CoherentStateSpec, t: float, grid: Grid2D) -> None:
    xi = classical_trajectory(spec, t).xi
    margin = grid.half_extent - float(np.abs(xi).max())
    s = sigma(spec.params)
    tail_mass = math.exp(-(margin**2) / (2.0 * s**2)) if margin > 0 else 1.0
    if tail_mass > TAIL_MASS_LIMIT:
        raise ValueError(
            f"insufficient grid coverage: tail mass {tail_mass:.3e} beyond the boundary "
            f"(margin {margin:.3g}, sigma {s:.3g})"
        )


def _density(spec: CoherentStateSpec, t: float, grid: Grid2D) -> np.ndarray:
    s2 = sigma(spec.params) ** 2
    xi = classical_trajectory(spec, t).xi
    X, Y = grid.mesh
    r2 = (X - xi[0]) ** 2 + (Y - xi[1]) ** 2
    return (2.0 * np.pi * s2) ** -1.0 * np.exp(-r2 / (2.0 * s2))


def position_spread(spec: CoherentStateSpec, t: float, grid: Grid2D) -> tuple[float, float]:
    """(delta_x, delta_y) about the moving center xi(t)."""
    _coverage_check(spec, t, grid)
    xi = classical_trajectory(spec, t).xi
    rho = _density(spec, t, grid)
    X, Y = grid.mesh
    var_x = float(grid.integrate((X - xi[0]) ** 2 * rho))
    var_y = float(grid.integrate((Y - xi[1]) ** 2 * rho))
    return math.sqrt(var_x), math.sqrt(var_y)


def momentum_spread_picture(spec: CoherentStateSpec, t: float, grid: Grid2D) -> tuple[float, float]:
    """Momentum spreads of the picture: quadrature of m^2 (v(x,t) - v(t))^2 rho."""
    _coverage_check(spec, t, grid)
    state = classical_trajectory(spec, t)
    rho = _density(spec, t, grid)
    v = velocity_field(spec, grid.points, t)
    mass = spec.params.mass
    var_px = float(grid.integrate(mass**2 * (v[..., 0] - state.vel[0]) ** 2 * rho))
    var_py = float(grid.integrate(mass**2 * (v[..., 1] - state.vel[1]) ** 2 * rho))
    return math.sqrt(var_px), math.sqrt(var_py)


def momentum_spread_operator(spec: CoherentStateSpec, t: float, grid: Grid2D) -> tuple[float, float]:
    """Quantum-mechanical <(p - <p>)^2>^(1/2) per axis via Fourier quadrature.

    Independent of the picture route: momenta are read off the spectral
    distribution |psi_hat(k)|^2 with p = hbar k.
    """
    _coverage_check(spec, t, grid)
    psi = sample_coherent_state(spec, grid, t)
    psi_hat = spectral.fft2(psi.values)
    weight = np.abs(psi_hat) ** 2
    total = float(weight.sum())
    KX, KY = spectral.wavenumbers(grid)
    hbar = spec.params.hbar
    spreads = []
    for K in (KX, KY):
        mean_p = hbar * float((K * weight).sum()) / total
        mean_p2 = hbar**2 * float((K**2 * weight).sum()) / total
        spreads.append(math.sqrt(max(mean_p2 - mean_p**2, 0.0)))
    return spreads[0], spreads[1]


def energy_expectation_picture(
    spec: CoherentStateSpec, t: float, grid: Grid2D
) -> tuple[float, dict[str, float]]:
    """Picture energy <m v(x,t)^2/2 + m w^2 x^2/2> and its four-part split.

    Parts: translational m v(t)^2/2, rotational <m (v - v(t))^2/2> = hbar w/2,
    potential of the center m w^2 xi(t)^2/2, and potential of the spread
    <m w^2 (x - xi)^2/2> = hbar w/2.
    """
    _coverage_check(spec, t, grid)
    p = spec.params
    state = classical_trajectory(spec, t)
    rho = _density(spec, t, grid)
    X, Y = grid.mesh
    v = velocity_field(spec, grid.points, t)

    kinetic = 0.5 * p.mass * (v[..., 0] ** 2 + v[..., 1] ** 2)
    potential = 0.5 * p.mass * p.omega**2 * (X**2 + Y**2)
    energy = float(grid.integrate((kinetic + potential) * rho))

    rot = 0.5 * p.mass * ((v[..., 0] - state.vel[0]) ** 2 + (v[..., 1] - state.vel[1]) ** 2)
    spread_pot = 0.5 * p.mass * p.omega**2 * ((X - state.xi[0]) ** 2 + (Y - state.xi[1]) ** 2)
    decomposition = {
        "translational": 0.5 * p.mass * float(state.vel @ state.vel),
        "rotational": float(grid.integrate(rot * rho)),
        "potential_of_center": 0.5 * p.mass * p.omega**2 * float(state.xi @ state.xi),
        "potential_spread": float(grid.integrate(spread_pot * rho)),
    }
    return energy, decomposition


def moment_report(spec: CoherentStateSpec, t: float, grid: Grid2D) -> MomentReport:
    dx, dy = position_spread(spec, t, grid)
    dpx, dpy = momentum_spread_picture(spec, t, grid)
    energy, decomposition = energy_expectation_picture(spec, t, grid)
    hbar = spec.params.hbar
    return MomentReport(
        delta_x=dx,
        delta_y=dy,
        delta_px=dpx,
        delta_py=dpy,
        products=(dx * dpx / hbar, dy * dpy / hbar),
        energy=energy,
        energy_decomposition=decomposition,
    )
