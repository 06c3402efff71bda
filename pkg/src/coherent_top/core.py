"""Physical parameters, grid geometry, and field containers shared by all modules.

Conventions fixed project-wide:

* default unit system is hbar = m = omega = 1 (every function accepts
  arbitrary positive values),
* the domain is the periodic square [-L, L)^2 centered at the origin,
* field samples are row-major with row index = y and column index = x,
* all container types are immutable after construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Mapping

import numpy as np

__all__ = [
    "PhysParams",
    "CoherentStateSpec",
    "Grid2D",
    "ScalarField",
    "VectorField",
    "ComplexField",
    "Check",
    "VerificationReport",
    "make_grid",
    "sigma",
    "default_half_extent",
]


def _frozen_vector(value: Any, name: str) -> np.ndarray:
    """Coerce to a read-only, finite float 2-vector."""
    arr = np.asarray(value, dtype=float)
    if arr.shape != (2,):
        raise ValueError(f"{name} must be a 2-vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite, got {arr}")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


def _frozen_samples(values: Any, n: int, dtype: Any, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=dtype)
    if arr.shape != (n, n):
        raise ValueError(f"{name} must have shape ({n}, {n}), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite samples")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class PhysParams:
    """Oscillator constants and the orientation of the spin vector u = spin_sign * k."""

    hbar: float = 1.0
    mass: float = 1.0
    omega: float = 1.0
    spin_sign: int = 1

    def __post_init__(self) -> None:
        for name in ("hbar", "mass", "omega"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be a positive finite number, got {v!r}")
        if self.spin_sign not in (1, -1):
            raise ValueError(f"spin_sign must be +1 or -1, got {self.spin_sign!r}")

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega


def sigma(params: PhysParams) -> float:
    """Ground-state width sqrt(hbar / (2 m omega))."""
    return math.sqrt(params.hbar / (2.0 * params.mass * params.omega))


@dataclass(frozen=True)
class CoherentStateSpec:
    """Initial displacement and velocity of the packet center, plus the constants.

    xi0 and v0 are classical data, independent of hbar.
    """

    params: PhysParams
    xi0: np.ndarray
    v0: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "xi0", _frozen_vector(self.xi0, "xi0"))
        object.__setattr__(self, "v0", _frozen_vector(self.v0, "v0"))

    @property
    def sigma(self) -> float:
        return sigma(self.params)


def default_half_extent(spec: CoherentStateSpec) -> float:
    """Default domain half-extent 8 * max(sigma, |xi0| + |v0|/omega + 4 sigma).

    Keeps the Gaussian tail at the boundary below 1e-13 of peak over a full
    period of the center orbit.
    """
    s = sigma(spec.params)
    orbit = float(np.linalg.norm(spec.xi0)) + float(np.linalg.norm(spec.v0)) / spec.params.omega
    return 8.0 * max(s, orbit + 4.0 * s)


@dataclass(frozen=True)
class Grid2D:
    """Uniform periodic sampling of [-L, L)^2 with n nodes per axis (n a power of two)."""

    half_extent: float
    n: int

    def __post_init__(self) -> None:
        if not (isinstance(self.half_extent, (int, float)) and self.half_extent > 0 and math.isfinite(self.half_extent)):
            raise ValueError(f"half_extent must be positive and finite, got {self.half_extent!r}")
        n = self.n
        if not (isinstance(n, int) and n >= 8 and (n & (n - 1)) == 0):
            raise ValueError(f"n must be a power of two >= 8, got {n!r}")

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_extent / self.n

    @cached_property
    def axis(self) -> np.ndarray:
        """Node coordinates x_j = -L + j * spacing, identical on both axes."""
        nodes = -self.half_extent + self.spacing * np.arange(self.n)
        nodes.flags.writeable = False
        return nodes

    @cached_property
    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """(X, Y) meshes with X[j, i] = axis[i], Y[j, i] = axis[j]."""
        X, Y = np.meshgrid(self.axis, self.axis, indexing="xy")
        X.flags.writeable = False
        Y.flags.writeable = False
        return X, Y

    @cached_property
    def points(self) -> np.ndarray:
        """Nodes stacked as an (n, n, 2) array of (x, y) pairs."""
        X, Y = self.mesh
        pts = np.stack([X, Y], axis=-1)
        pts.flags.writeable = False
        return pts

    def cell_area(self) -> float:
        return self.spacing * self.spacing

    def integrate(self, samples: np.ndarray) -> float | complex:
        """Trapezoid quadrature on the periodic grid (equal weights)."""
        return samples.sum() * self.cell_area()


def make_grid(half_extent: float, n: int) -> Grid2D:
    """Build the uniform periodic grid; rejects non-power-of-two n and L <= 0."""
    return Grid2D(half_extent=float(half_extent), n=n)


@dataclass(frozen=True)
class ScalarField:
    grid: Grid2D
    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _frozen_samples(self.values, self.grid.n, float, "values"))


@dataclass(frozen=True)
class VectorField:
    """In-plane vector samples, stored as separate x and y component arrays."""

    grid: Grid2D
    vx: np.ndarray
    vy: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "vx", _frozen_samples(self.vx, self.grid.n, float, "vx"))
        object.__setattr__(self, "vy", _frozen_samples(self.vy, self.grid.n, float, "vy"))


@dataclass(frozen=True)
class ComplexField:
    grid: Grid2D
    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _frozen_samples(self.values, self.grid.n, complex, "values"))

    def density(self) -> np.ndarray:
        return np.abs(self.values) ** 2

    def norm_squared(self) -> float:
        return float(self.grid.integrate(self.density()))


@dataclass(frozen=True)
class Check:
    """One named verification check; passed is true exactly when residual <= tolerance."""

    name: str
    residual: float
    tolerance: float
    passed: bool = field(init=False)

    def __post_init__(self) -> None:
        if not (self.residual >= 0 and math.isfinite(self.residual)):
            raise ValueError(f"residual must be finite and >= 0, got {self.residual!r}")
        if not (self.tolerance > 0 and math.isfinite(self.tolerance)):
            raise ValueError(f"tolerance must be finite and > 0, got {self.tolerance!r}")
        object.__setattr__(self, "passed", self.residual <= self.tolerance)


class VerificationReport:
    """Ordered collection of named checks plus the run parameters that produced them."""

    def __init__(self, metadata: Mapping[str, Any] | None = None) -> None:
        self.checks: list[Check] = []
        self.metadata: dict[str, Any] = dict(metadata or {})

    def add(self, name: str, residual: float, tolerance: float) -> Check:
        check = Check(name=name, residual=float(residual), tolerance=float(tolerance))
        self.checks.append(check)
        return check

    def extend(self, checks: Iterable[Check]) -> None:
        self.checks.extend(checks)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict[str, Any]:
        return {
            "checks": [
                {"name": c.name, "residual": c.residual, "tolerance": c.tolerance, "passed": c.passed}
                for c in self.checks
            ],
            "metadata": self.metadata,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "VerificationReport":
        report = cls(metadata=data.get("metadata", {}))
        for entry in data["checks"]:
            check = report.add(entry["name"], entry["residual"], entry["tolerance"])
            if bool(entry["passed"]) != check.passed:
                raise ValueError(f"stored passed flag for {check.name!r} contradicts residual/tolerance")
        return report
