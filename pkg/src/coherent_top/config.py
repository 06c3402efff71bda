"""Run configuration: JSON schema, defaults, and flag merging.

A run is fully determined by one flat key/value mapping. Every CLI flag maps
1:1 to a key; keys absent from both the file and the flags take the defaults
below, and the fully resolved mapping is echoed into every report so a run
can be reproduced from its own metadata.

Schema (defaults in parentheses):

    hbar (1.0), mass (1.0), omega (1.0)   oscillator constants, > 0
    spin_sign (1)                         +1 or -1
    xi0 ([1.0, 0.0]), v0 ([0.0, 1.0])     initial center displacement/velocity
    grid_n (256)                          nodes per axis, power of two >= 8
    half_extent (null)                    domain half width; null = default rule
    dt (null)                             split-step size; null = T / 4000
    periods (1.0)                         evolution / tracer span in periods
    snapshots (2)                         full-field dumps per evolve run
    error_samples (17)                    rows in the error-vs-time series
    tracer_dt (null)                      tracer RK4 step; null = T / 10000
    tracer_seed_points (4)                auto-seeded tracers on a ring
    tracer_seeds (null)                   explicit [[x, y], ...] seed override
    tracer_radius (null)                  ring radius; null = sigma
    out_dir ("out")                       output directory (flag --out; the
                                          COHERENT_TOP_OUT env var wins)
    hydrogen_hbar (1.0), hydrogen_mass (1.0)
    hydrogen_alpha (1/137.035999084), hydrogen_c (137.035999084)

Unknown keys are rejected.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

import numpy as np

from .core import CoherentStateSpec, Grid2D, PhysParams, default_half_extent, make_grid, sigma
from .evolve import EvolveConfig
from .hydrogen import HydrogenParams

__all__ = ["ConfigError", "RunConfig", "DEFAULTS", "load_config_file", "build_config"]


class ConfigError(ValueError):
    """Invalid configuration file or flag values (CLI exit code 2)."""


DEFAULTS: dict[str, Any] = {
    "hbar": 1.0,
    "mass": 1.0,
    "omega": 1.0,
    "spin_sign": 1,
    "xi0": [1.0, 0.0],
    "v0": [0.0, 1.0],
    "grid_n": 256,
    "half_extent": None,
    "dt": None,
    "periods": 1.0,
    "snapshots": 2,
    "error_samples": 17,
    "tracer_dt": None,
    "tracer_seed_points": 4,
    "tracer_seeds": None,
    "tracer_radius": None,
    "out_dir": "out",
    "hydrogen_hbar": 1.0,
    "hydrogen_mass": 1.0,
    "hydrogen_alpha": 1.0 / 137.035999084,
    "hydrogen_c": 137.035999084,
}

# Steps per period at the default dt.
DEFAULT_STEPS_PER_PERIOD = 4000
DEFAULT_TRACER_STEPS_PER_PERIOD = 10_000


def _require_positive(data: Mapping[str, Any], key: str) -> float:
    v = data[key]
    if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v) or v <= 0:
        raise ConfigError(f"{key} must be a positive finite number, got {v!r}")
    return float(v)


def _require_vector(data: Mapping[str, Any], key: str) -> tuple[float, float]:
    v = data[key]
    if (
        not isinstance(v, (list, tuple))
        or len(v) != 2
        or not all(isinstance(c, (int, float)) and not isinstance(c, bool) and math.isfinite(c) for c in v)
    ):
        raise ConfigError(f"{key} must be a pair of finite numbers, got {v!r}")
    return float(v[0]), float(v[1])


def _require_int(data: Mapping[str, Any], key: str, minimum: int) -> int:
    v = data[key]
    if not isinstance(v, int) or isinstance(v, bool) or v < minimum:
        raise ConfigError(f"{key} must be an integer >= {minimum}, got {v!r}")
    return v


@dataclass(frozen=True)
class RunConfig:
    hbar: float
    mass: float
    omega: float
    spin_sign: int
    xi0: tuple[float, float]
    v0: tuple[float, float]
    grid_n: int
    half_extent: float | None
    dt: float | None
    periods: float
    snapshots: int
    error_samples: int
    tracer_dt: float | None
    tracer_seed_points: int
    tracer_seeds: tuple[tuple[float, float], ...] | None
    tracer_radius: float | None
    out_dir: str
    hydrogen_hbar: float
    hydrogen_mass: float
    hydrogen_alpha: float
    hydrogen_c: float

    def phys_params(self) -> PhysParams:
        return PhysParams(hbar=self.hbar, mass=self.mass, omega=self.omega, spin_sign=self.spin_sign)

    def state_spec(self) -> CoherentStateSpec:
        return CoherentStateSpec(params=self.phys_params(), xi0=np.array(self.xi0), v0=np.array(self.v0))

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega

    def resolved_half_extent(self) -> float:
        if self.half_extent is not None:
            return self.half_extent
        return default_half_extent(self.state_spec())

    def grid(self) -> Grid2D:
        return make_grid(self.resolved_half_extent(), self.grid_n)

    def resolved_dt(self) -> float:
        if self.dt is not None:
            return self.dt
        return self.period / DEFAULT_STEPS_PER_PERIOD

    def evolve_steps(self) -> int:
        return max(1, round(self.periods * self.period / self.resolved_dt()))

    def evolve_config(self) -> EvolveConfig:
        return EvolveConfig(
            grid=self.grid(), dt=self.resolved_dt(), steps=self.evolve_steps(), params=self.phys_params()
        )

    def resolved_tracer_dt(self) -> float:
        if self.tracer_dt is not None:
            return self.tracer_dt
        return self.period / DEFAULT_TRACER_STEPS_PER_PERIOD

    def resolved_tracer_radius(self) -> float:
        if self.tracer_radius is not None:
            return self.tracer_radius
        return sigma(self.phys_params())

    def resolved_tracer_seeds(self) -> np.ndarray:
        """Explicit seeds, or tracer_seed_points on a ring around xi0."""
        if self.tracer_seeds is not None:
            return np.array(self.tracer_seeds, dtype=float)
        k = self.tracer_seed_points
        angles = 2.0 * np.pi * np.arange(k) / k
        radius = self.resolved_tracer_radius()
        ring = np.stack(
            [self.xi0[0] + radius * np.cos(angles), self.xi0[1] + radius * np.sin(angles)], axis=1
        )
        return ring

    def hydrogen_params(self) -> HydrogenParams:
        return HydrogenParams(
            hbar=self.hydrogen_hbar, mass=self.hydrogen_mass, alpha=self.hydrogen_alpha, c=self.hydrogen_c
        )

    def resolved(self) -> dict[str, Any]:
        """Every key with defaults applied plus the derived quantities.

        This mapping fully determines a run; it is embedded in report
        metadata so reports are reproducible from themselves.
        """
        return {
            "hbar": self.hbar,
            "mass": self.mass,
            "omega": self.omega,
            "spin_sign": self.spin_sign,
            "xi0": list(self.xi0),
            "v0": list(self.v0),
            "grid_n": self.grid_n,
            "half_extent": self.resolved_half_extent(),
            "dt": self.resolved_dt(),
            "periods": self.periods,
            "snapshots": self.snapshots,
            "error_samples": self.error_samples,
            "tracer_dt": self.resolved_tracer_dt(),
            "tracer_seed_points": self.tracer_seed_points,
            "tracer_seeds": [list(s) for s in self.resolved_tracer_seeds().tolist()],
            "tracer_radius": self.resolved_tracer_radius(),
            "out_dir": self.out_dir,
            "hydrogen_hbar": self.hydrogen_hbar,
            "hydrogen_mass": self.hydrogen_mass,
            "hydrogen_alpha": self.hydrogen_alpha,
            "hydrogen_c": self.hydrogen_c,
            "derived": {
                "sigma": sigma(self.phys_params()),
                "period": self.period,
                "evolve_steps": self.evolve_steps(),
            },
        }


def load_config_file(path: str | Path) -> dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must contain a JSON object")
    return data


def build_config(
    file_data: Mapping[str, Any] | None = None, overrides: Mapping[str, Any] | None = None
) -> RunConfig:
    """Merge defaults < config file < explicit overrides, then validate."""
    data = dict(DEFAULTS)
    for source, label in ((file_data, "config file"), (overrides, "override")):
        if not source:
            continue
        unknown = sorted(set(source) - set(DEFAULTS))
        if unknown:
            raise ConfigError(f"unknown {label} key(s): {', '.join(unknown)}")
        data.update(source)

    for key in ("hbar", "mass", "omega", "periods"):
        data[key] = _require_positive(data, key)
    if data["spin_sign"] not in (1, -1):
        raise ConfigError(f"spin_sign must be +1 or -1, got {data['spin_sign']!r}")
    xi0 = _require_vector(data, "xi0")
    v0 = _require_vector(data, "v0")
    n = _require_int(data, "grid_n", 8)
    if n & (n - 1):
        raise ConfigError(f"grid_n must be a power of two, got {n}")
    for key in ("half_extent", "dt", "tracer_dt", "tracer_radius"):
        if data[key] is not None:
            data[key] = _require_positive(data, key)
    snapshots = _require_int(data, "snapshots", 1)
    error_samples = _require_int(data, "error_samples", 2)
    seed_points = _require_int(data, "tracer_seed_points", 1)
    seeds = data["tracer_seeds"]
    if seeds is not None:
        if not isinstance(seeds, (list, tuple)) or not seeds:
            raise ConfigError(f"tracer_seeds must be a non-empty list of pairs, got {seeds!r}")
        seeds = tuple(_require_vector({"tracer_seeds": s}, "tracer_seeds") for s in seeds)
    if not isinstance(data["out_dir"], str) or not data["out_dir"]:
        raise ConfigError(f"out_dir must be a non-empty string, got {data['out_dir']!r}")
    for key in ("hydrogen_hbar", "hydrogen_mass", "hydrogen_alpha", "hydrogen_c"):
        data[key] = _require_positive(data, key)

    return RunConfig(
        hbar=data["hbar"],
        mass=data["mass"],
        omega=data["omega"],
        spin_sign=data["spin_sign"],
        xi0=xi0,
        v0=v0,
        grid_n=n,
        half_extent=data["half_extent"],
        dt=data["dt"],
        periods=data["periods"],
        snapshots=snapshots,
        error_samples=error_samples,
        tracer_dt=data["tracer_dt"],
        tracer_seed_points=seed_points,
        tracer_seeds=seeds,
        tracer_radius=data["tracer_radius"],
        out_dir=data["out_dir"],
        hydrogen_hbar=data["hydrogen_hbar"],
        hydrogen_mass=data["hydrogen_mass"],
        hydrogen_alpha=data["hydrogen_alpha"],
        hydrogen_c=data["hydrogen_c"],
    )
