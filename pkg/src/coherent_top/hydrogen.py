"""Spread-particle picture of the hydrogen 1s ground state.

The density is rho(r) = exp(-2 r / a0) / (pi a0^3) and every point rotates
around the spin axis with azimuthal speed alpha c sin(theta), i.e. velocity
Omega x r / r with Omega = alpha c k. Uncertainties use the vector-norm (3D)
convention Delta_r^2 = <|r|^2> - |<r>|^2, which is the reading under which
the product saturates at sqrt(2) hbar; the picture kinetic energy does not
reproduce the quantum ground-state energy, and that mismatch is part of the
reported result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

__all__ = [
    "HydrogenParams",
    "hydrogen_density",
    "hydrogen_velocity",
    "velocity_vector",
    "radial_moment",
    "polar_sin2_moment",
    "hydrogen_uncertainties",
    "hydrogen_energy_picture",
    "integrate_orbit",
    "hydrogen_report",
]

# Radial quadrature window: exp(-2r/a0) at 40 a0 is ~1e-35, far below any
# tolerance used here.
RADIAL_CUTOFF_A0 = 40.0
POLAR_NODES = 64


@dataclass(frozen=True)
class HydrogenParams:
    hbar: float = 1.0
    mass: float = 1.0
    alpha: float = 1.0 / 137.035999084
    c: float = 137.035999084

    def __post_init__(self) -> None:
        for name in ("hbar", "mass", "alpha", "c"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be a positive finite number, got {v!r}")

    @property
    def a0(self) -> float:
        """Bohr radius hbar / (m alpha c)."""
        return self.hbar / (self.mass * self.alpha * self.c)


def hydrogen_density(p: HydrogenParams, r) -> np.ndarray:
    """1s density exp(-2 r / a0) / (pi a0^3)."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("r must be non-negative")
    a0 = p.a0
    return np.exp(-2.0 * r / a0) / (math.pi * a0**3)


def hydrogen_velocity(p: HydrogenParams, r: float, theta: float) -> float:
    """Azimuthal speed alpha c sin(theta), independent of r and phi.

    The direction u_phi is undefined on the axis origin, so r = 0 is rejected
    with its own message rather than folded into the range check.
    """
    if r < 0:
        raise ValueError(f"r must be positive, got {r!r}")
    if r == 0:
        raise ValueError("velocity direction is undefined at r = 0")
    if not 0.0 <= theta <= math.pi:
        raise ValueError(f"theta must lie in [0, pi], got {theta!r}")
    return p.alpha * p.c * math.sin(theta)


def velocity_vector(p: HydrogenParams, x) -> np.ndarray:
    """Cartesian velocity Omega x r / |r| = (alpha c / |r|) (-y, x, 0); shape (..., 3)."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != 3:
        raise ValueError(f"points must have a trailing axis of size 3, got shape {x.shape}")
    r = np.sqrt(np.sum(x**2, axis=-1))
    if np.any(r == 0):
        raise ValueError("velocity direction is undefined at r = 0")
    coef = p.alpha * p.c / r
    out = np.empty_like(x)
    out[..., 0] = -coef * x[..., 1]
    out[..., 1] = coef * x[..., 0]
    out[..., 2] = 0.0
    return out


def radial_moment(p: HydrogenParams, power: int) -> float:
    """<r^power> over the 1s density by adaptive quadrature on [0, 40 a0]."""
    a0 = p.a0
    integrand = lambda r: r ** (power + 2) * math.exp(-2.0 * r / a0)
    value, _ = quad(integrand, 0.0, RADIAL_CUTOFF_A0 * a0, epsabs=1e-14, epsrel=1e-13, limit=200)
    return 4.0 / a0**3 * value


def polar_sin2_moment(nodes: int = POLAR_NODES) -> float:
    """<sin^2 theta> over the isotropic density via Gauss-Legendre in cos(theta)."""
    u, w = np.polynomial.legendre.leggauss(nodes)
    return float(np.sum(w * (1.0 - u**2)) / 2.0)


def hydrogen_uncertainties(p: HydrogenParams) -> tuple[float, float, float]:
    """(delta_r, delta_p, product / hbar) under the vector-norm convention.

    <r> and <m v> vanish by symmetry, so delta_r^2 = <r^2> (radial quadrature)
    and delta_p^2 = (m alpha c)^2 <sin^2 theta> (polar quadrature).
    """
    delta_r = math.sqrt(radial_moment(p, 2))
    delta_p = p.mass * p.alpha * p.c * math.sqrt(polar_sin2_moment())
    return delta_r, delta_p, delta_r * delta_p / p.hbar


def hydrogen_energy_picture(p: HydrogenParams) -> tuple[float, float, bool]:
    """(picture kinetic energy, quantum ground-state energy, mismatch flag).

    The picture gives <m v^2 / 2> = m (alpha c)^2 <sin^2 theta> / 2, which is
    positive and cannot reproduce the bound-state energy -m (alpha c)^2 / 2;
    the mismatch flag records that the two differ.
    """
    picture = 0.5 * p.mass * (p.alpha * p.c) ** 2 * polar_sin2_moment()
    quantum = -0.5 * p.mass * (p.alpha * p.c) ** 2
    return picture, quantum, not math.isclose(picture, quantum, rel_tol=1e-12, abs_tol=0.0)


def integrate_orbit(
    p: HydrogenParams, x0, revolutions: float, steps_per_revolution: int = 1000
) -> tuple[np.ndarray, np.ndarray]:
    """RK4 transport of a point through the rotation field.

    Each point circles the spin axis at angular rate alpha c / r, so the
    revolution period is 2 pi r / (alpha c). Returns (times, positions).
    """
    x = np.asarray(x0, dtype=float).copy()
    if x.shape != (3,):
        raise ValueError(f"x0 must be a 3-vector, got shape {x.shape}")
    r0 = float(np.linalg.norm(x))
    if r0 == 0:
        raise ValueError("velocity direction is undefined at r = 0")
    period = 2.0 * math.pi * r0 / (p.alpha * p.c)
    n_steps = max(1, round(steps_per_revolution * revolutions))
    h = period * revolutions / n_steps
    times = h * np.arange(n_steps + 1)
    positions = np.empty((n_steps + 1, 3))
    positions[0] = x
    for i in range(n_steps):
        k1 = velocity_vector(p, x)
        k2 = velocity_vector(p, x + 0.5 * h * k1)
        k3 = velocity_vector(p, x + 0.5 * h * k2)
        k4 = velocity_vector(p, x + h * k3)
        x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        positions[i + 1] = x
    return times, positions


def hydrogen_report(p: HydrogenParams) -> dict:
    """Computed picture quantities next to the closed-form target values."""
    delta_r, delta_p, product = hydrogen_uncertainties(p)
    picture_energy, quantum_energy, mismatch = hydrogen_energy_picture(p)
    return {
        "params": {"hbar": p.hbar, "mass": p.mass, "alpha": p.alpha, "c": p.c, "a0": p.a0},
        "uncertainty_convention": "vector-norm (3D): delta_r^2 = <|r|^2> - |<r>|^2",
        "delta_r": delta_r,
        "delta_p": delta_p,
        "product_over_hbar": product,
        "product_over_hbar_target": math.sqrt(2.0),
        "picture_energy": picture_energy,
        "quantum_energy": quantum_energy,
        "energy_mismatch": mismatch,
        "mean_r": radial_moment(p, 1),
        "mean_r_squared": radial_moment(p, 2),
        "mean_sin_squared_theta": polar_sin2_moment(),
    }
