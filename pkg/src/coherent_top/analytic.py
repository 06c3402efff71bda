"""Closed-form coherent state of the 2D harmonic oscillator.

The packet center follows the classical trajectory

    xi(t) = xi0 cos(wt) + (v0/w) sin(wt)
    v(t)  = v0 cos(wt) - xi0 w sin(wt)

and the state is

    Psi(x, t) = (2 pi s^2)^(-1/2) exp(-(x - xi(t))^2 / (4 s^2))
                * exp(i (m v(t).x - g(t)) / hbar)

with s = sigma(params) and g(t) the accumulated phase integral of
hbar*w + m v^2(t')/2 - m w^2 xi^2(t')/2. All spatial arguments accept
arrays of shape (..., 2) and broadcast over the leading axes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import ComplexField, CoherentStateSpec, Grid2D, sigma

__all__ = [
    "ClassicalState",
    "PolarForm",
    "classical_trajectory",
    "phase_integral",
    "phase_rate",
    "coherent_state",
    "sample_coherent_state",
    "polar_form",
    "energy_field",
]


@dataclass(frozen=True)
class ClassicalState:
    """Center position and velocity at time t."""

    t: float
    xi: np.ndarray
    vel: np.ndarray

    def __post_init__(self) -> None:
        for arr in (self.xi, self.vel):
            arr.flags.writeable = False


@dataclass(frozen=True)
class PolarForm:
    """Madelung data of psi = sqrt(rho) exp(i S / hbar) at the query points.

    grad_s_over_m is spatially uniform for the coherent state and equals v(t);
    s_phase is reported modulo 2 pi hbar.
    """

    rho: np.ndarray
    grad_s_over_m: np.ndarray
    s_phase: np.ndarray


def classical_trajectory(spec: CoherentStateSpec, t: float) -> ClassicalState:
    w = spec.params.omega
    c, s = math.cos(w * t), math.sin(w * t)
    xi = spec.xi0 * c + spec.v0 / w * s
    vel = spec.v0 * c - spec.xi0 * w * s
    return ClassicalState(t=float(t), xi=xi, vel=vel)


def phase_integral(spec: CoherentStateSpec, t: float) -> float:
    """Exact trigonometric antiderivative of the phase-rate integrand.

    The integrand hbar*w + m v^2/2 - m w^2 xi^2/2 reduces to
    hbar*w + A cos(2wt) + B sin(2wt), so no quadrature is involved.
    """
    p = spec.params
    w = p.omega
    a = 0.5 * p.mass * (float(spec.v0 @ spec.v0) - w**2 * float(spec.xi0 @ spec.xi0))
    b = -p.mass * w * float(spec.v0 @ spec.xi0)
    return p.hbar * w * t + a * math.sin(2 * w * t) / (2 * w) + b * (1.0 - math.cos(2 * w * t)) / (2 * w)


def phase_rate(spec: CoherentStateSpec, t: float) -> float:
    """g'(t) = hbar*w + m v(t)^2 / 2 - m w^2 xi(t)^2 / 2."""
    p = spec.params
    state = classical_trajectory(spec, t)
    return (
        p.hbar * p.omega
        + 0.5 * p.mass * float(state.vel @ state.vel)
        - 0.5 * p.mass * p.omega**2 * float(state.xi @ state.xi)
    )


def _split_xy(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    arr = np.asarray(x, dtype=float)
    if arr.shape[-1] != 2:
        raise ValueError(f"spatial points must have a trailing axis of size 2, got shape {arr.shape}")
    return arr[..., 0], arr[..., 1]


def coherent_state(spec: CoherentStateSpec, x, t: float) -> np.ndarray:
    """Complex amplitude Psi(x, t); at t = 0 this is exactly the initial packet."""
    p = spec.params
    state = classical_trajectory(spec, t)
    g = phase_integral(spec, t)
    s2 = sigma(p) ** 2
    px, py = _split_xy(x)
    r2 = (px - state.xi[0]) ** 2 + (py - state.xi[1]) ** 2
    phase = (p.mass * (state.vel[0] * px + state.vel[1] * py) - g) / p.hbar
    return (2.0 * np.pi * s2) ** -0.5 * np.exp(-r2 / (4.0 * s2) + 1j * phase)


def sample_coherent_state(spec: CoherentStateSpec, grid: Grid2D, t: float) -> ComplexField:
    return ComplexField(grid=grid, values=coherent_state(spec, grid.points, t))


def polar_form(spec: CoherentStateSpec, x, t: float) -> PolarForm:
    p = spec.params
    state = classical_trajectory(spec, t)
    g = phase_integral(spec, t)
    s2 = sigma(p) ** 2
    px, py = _split_xy(x)
    r2 = (px - state.xi[0]) ** 2 + (py - state.xi[1]) ** 2
    rho = (2.0 * np.pi * s2) ** -1.0 * np.exp(-r2 / (2.0 * s2))
    s_phase = (p.mass * (state.vel[0] * px + state.vel[1] * py) - g) % (2.0 * np.pi * p.hbar)
    return PolarForm(rho=rho, grad_s_over_m=state.vel, s_phase=s_phase)


def energy_field(spec: CoherentStateSpec, x, t: float) -> np.ndarray:
    """Complex local energy E(x, t) with i hbar dPsi/dt = E Psi.

    E = g'(t) - m (dv/dt).x + i hbar ((x - xi(t)) / 2 sigma^2).v(t), and dv/dt
    is -w^2 xi(t). On x = xi(t) the imaginary part cancels exactly and the
    real part is the constant hbar*w + m v0^2/2 + m w^2 xi0^2/2.
    """
    p = spec.params
    state = classical_trajectory(spec, t)
    s2 = sigma(p) ** 2
    px, py = _split_xy(x)
    real = phase_rate(spec, t) + p.mass * p.omega**2 * (state.xi[0] * px + state.xi[1] * py)
    imag = p.hbar / (2.0 * s2) * ((px - state.xi[0]) * state.vel[0] + (py - state.xi[1]) * state.vel[1])
    return real + 1j * imag
