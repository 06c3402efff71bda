"""Tracer transport in the picture velocity field.

A tracer is a material point of the spread particle: it circles the packet
center xi(t) at the oscillator frequency, in the direction of the spin. The
governing ODE dx/dt = v(x, t) is linear with smooth coefficients, so fixed
step RK4 at dt = T/10^4 resolves it to well below the stated tolerances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .analytic import classical_trajectory
from .core import CoherentStateSpec, Grid2D
from .currents import velocity_field

__all__ = [
    "TracerPath",
    "ComovingDiagnostics",
    "integrate_tracer",
    "transport_points",
    "comoving_reference",
    "comoving_diagnostics",
    "SampledVelocityField",
    "DEGENERATE_RADIUS",
]

# Below this co-moving radius the tracer sits on the center line and its
# angular rate is undefined (a distinct outcome, not an error).
DEGENERATE_RADIUS = 1e-12


@dataclass(frozen=True)
class TracerPath:
    """Time-stamped tracer positions together with the state that drove them."""

    times: np.ndarray
    positions: np.ndarray
    spec: CoherentStateSpec

    def __post_init__(self) -> None:
        times = np.asarray(self.times, dtype=float)
        positions = np.asarray(self.positions, dtype=float)
        if times.ndim != 1 or positions.shape != (times.size, 2):
            raise ValueError("times must be 1D and positions shaped (len(times), 2)")
        if not np.all(np.diff(times) > 0):
            raise ValueError("times must be strictly increasing")
        if not (np.all(np.isfinite(times)) and np.all(np.isfinite(positions))):
            raise ValueError("times and positions must be finite")
        times.flags.writeable = False
        positions.flags.writeable = False
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "positions", positions)

    def comoving_offsets(self) -> np.ndarray:
        """Positions relative to the packet center xi(t), one row per sample."""
        centers = np.array([classical_trajectory(self.spec, t).xi for t in self.times])
        return self.positions - centers


@dataclass(frozen=True)
class ComovingDiagnostics:
    """Constancy of the co-moving radius and the fitted rotation rate.

    For a degenerate (center-line) tracer the angular rate is undefined:
    degenerate is set, angular_rate is NaN and direction is 0.
    """

    radius_drift: float
    angular_rate: float
    direction: int
    degenerate: bool


def _rk4_steps(span: float, dt: float) -> tuple[int, float]:
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt!r}")
    if not span > 0:
        raise ValueError(f"integration span must be positive, got {span!r}")
    n_steps = max(1, round(span / dt))
    return n_steps, span / n_steps


def integrate_tracer(
    spec: CoherentStateSpec,
    x0,
    t0: float,
    t1: float,
    dt: float,
    field: Callable[[np.ndarray, float], np.ndarray] | None = None,
) -> TracerPath:
    """Fixed-step RK4 integration of dx/dt = v(x, t), sampled every step.

    If dt does not divide t1 - t0 exactly, the step is shrunk to the nearest
    divisor so the path lands on t1. A custom velocity field callable
    (x, t) -> velocity may replace the closed form.
    """
    if field is None:
        field = lambda x, t: velocity_field(spec, x, t)
    n_steps, h = _rk4_steps(t1 - t0, dt)
    times = t0 + h * np.arange(n_steps + 1)
    positions = np.empty((n_steps + 1, 2))
    x = np.asarray(x0, dtype=float).copy()
    if x.shape != (2,):
        raise ValueError(f"x0 must be a 2-vector, got shape {x.shape}")
    positions[0] = x
    for i in range(n_steps):
        t = times[i]
        k1 = field(x, t)
        k2 = field(x + 0.5 * h * k1, t + 0.5 * h)
        k3 = field(x + 0.5 * h * k2, t + 0.5 * h)
        k4 = field(x + h * k3, t + h)
        x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        positions[i + 1] = x
    return TracerPath(times=times, positions=positions, spec=spec)


def transport_points(spec: CoherentStateSpec, points, t0: float, t1: float, dt: float) -> np.ndarray:
    """Advect an (N, 2) cloud of points through the velocity field in one RK4 sweep."""
    x = np.asarray(points, dtype=float).copy()
    if x.ndim != 2 or x.shape[1] != 2:
        raise ValueError(f"points must be shaped (N, 2), got {x.shape}")
    n_steps, h = _rk4_steps(t1 - t0, dt)
    for i in range(n_steps):
        t = t0 + i * h
        k1 = velocity_field(spec, x, t)
        k2 = velocity_field(spec, x + 0.5 * h * k1, t + 0.5 * h)
        k3 = velocity_field(spec, x + 0.5 * h * k2, t + 0.5 * h)
        k4 = velocity_field(spec, x + h * k3, t + h)
        x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return x


def comoving_reference(spec: CoherentStateSpec, x0, t0: float, times) -> np.ndarray:
    """Exact tracer path xi(t) + R(spin_sign * w (t - t0)) (x0 - xi(t0)).

    In the frame of the packet center the ODE reduces to a pure rotation at
    the oscillator frequency, which is the closed-form oracle for RK4 paths.
    """
    times = np.asarray(times, dtype=float)
    offset0 = np.asarray(x0, dtype=float) - classical_trajectory(spec, t0).xi
    angle = spec.params.spin_sign * spec.params.omega * (times - t0)
    c, s = np.cos(angle), np.sin(angle)
    centers = np.array([classical_trajectory(spec, t).xi for t in times])
    rotated = np.stack([c * offset0[0] - s * offset0[1], s * offset0[0] + c * offset0[1]], axis=1)
    return centers + rotated


def comoving_diagnostics(path: TracerPath) -> ComovingDiagnostics:
    """Radius drift, least-squares angular rate, and rotation direction.

    Requires at least 16 samples spanning at least one period. The co-moving
    angle is unwrapped by accumulating per-step deltas (each |delta| < pi for
    any reasonable step size).
    """
    if path.times.size < 16:
        raise ValueError("path must have at least 16 samples")
    period = path.spec.params.period
    span = float(path.times[-1] - path.times[0])
    if span < period * (1.0 - 1e-12):
        raise ValueError(f"path must span at least one period ({period}), got {span}")

    offsets = path.comoving_offsets()
    radii = np.hypot(offsets[:, 0], offsets[:, 1])
    radius_drift = float(radii.max() - radii.min())
    if radii.max() < DEGENERATE_RADIUS:
        return ComovingDiagnostics(
            radius_drift=radius_drift, angular_rate=math.nan, direction=0, degenerate=True
        )

    angles = np.unwrap(np.arctan2(offsets[:, 1], offsets[:, 0]))
    t_centered = path.times - path.times.mean()
    slope = float((t_centered @ (angles - angles.mean())) / (t_centered @ t_centered))
    return ComovingDiagnostics(
        radius_drift=radius_drift,
        angular_rate=slope,
        direction=int(np.sign(slope)),
        degenerate=False,
    )


class SampledVelocityField:
    """Velocity snapshots on a grid, interpolated bilinearly in space and
    linearly in time; callable as field(x, t) for tracer integration.

    Query times outside the snapshot range clamp to the nearest snapshot.
    """

    def __init__(self, grid: Grid2D, times, vx_stack, vy_stack) -> None:
        self.grid = grid
        self.times = np.asarray(times, dtype=float)
        self.vx = np.asarray(vx_stack, dtype=float)
        self.vy = np.asarray(vy_stack, dtype=float)
        if self.times.ndim != 1 or np.any(np.diff(self.times) <= 0):
            raise ValueError("snapshot times must be strictly increasing")
        expected = (self.times.size, grid.n, grid.n)
        if self.vx.shape != expected or self.vy.shape != expected:
            raise ValueError(f"velocity stacks must be shaped {expected}")

    def _interp_space(self, frame_x: np.ndarray, frame_y: np.ndarray, x: np.ndarray) -> np.ndarray:
        g = self.grid
        fx = (x[..., 0] + g.half_extent) / g.spacing
        fy = (x[..., 1] + g.half_extent) / g.spacing
        ix = np.clip(np.floor(fx).astype(int), 0, g.n - 2)
        iy = np.clip(np.floor(fy).astype(int), 0, g.n - 2)
        wx = fx - ix
        wy = fy - iy
        out = np.empty_like(x)
        for component, frame in ((0, frame_x), (1, frame_y)):
            v00 = frame[iy, ix]
            v01 = frame[iy, ix + 1]
            v10 = frame[iy + 1, ix]
            v11 = frame[iy + 1, ix + 1]
            out[..., component] = (
                (1 - wy) * ((1 - wx) * v00 + wx * v01) + wy * ((1 - wx) * v10 + wx * v11)
            )
        return out

    def __call__(self, x, t: float) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 1
        pts = x[None, :] if scalar else x
        idx = int(np.searchsorted(self.times, t, side="right")) - 1
        if idx < 0:
            result = self._interp_space(self.vx[0], self.vy[0], pts)
        elif idx >= self.times.size - 1:
            result = self._interp_space(self.vx[-1], self.vy[-1], pts)
        else:
            frac = (t - self.times[idx]) / (self.times[idx + 1] - self.times[idx])
            lo = self._interp_space(self.vx[idx], self.vy[idx], pts)
            hi = self._interp_space(self.vx[idx + 1], self.vy[idx + 1], pts)
            result = (1.0 - frac) * lo + frac * hi
        return result[0] if scalar else result
