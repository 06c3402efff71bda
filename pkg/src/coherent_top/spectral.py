"""FFT machinery for the periodic grid: wavenumbers and spectral derivatives.

Wavenumber layout is the standard FFT ordering k_j = pi * j / L for
j in [-n/2, n/2). The Nyquist mode is zeroed in first-derivative
multipliers so that derivatives of real fields stay real.
"""

from __future__ import annotations

import os
from functools import lru_cache

import numpy as np
import scipy.fft as _fft

from .core import Grid2D

# Worker count is fixed at import time; scipy's pocketfft output is
# bit-identical for any worker count, so this only affects speed.
_WORKERS = min(4, os.cpu_count() or 1)


def fft2(values: np.ndarray) -> np.ndarray:
    return _fft.fft2(values, workers=_WORKERS)


def ifft2(values: np.ndarray) -> np.ndarray:
    return _fft.ifft2(values, workers=_WORKERS)


@lru_cache(maxsize=32)
def wavenumbers(grid: Grid2D) -> tuple[np.ndarray, np.ndarray]:
    """(KX, KY) meshes in FFT ordering."""
    k = 2.0 * np.pi * _fft.fftfreq(grid.n, d=grid.spacing)
    KX, KY = np.meshgrid(k, k, indexing="xy")
    KX.flags.writeable = False
    KY.flags.writeable = False
    return KX, KY


@lru_cache(maxsize=32)
def _first_derivative_multipliers(grid: Grid2D) -> tuple[np.ndarray, np.ndarray]:
    k = 2.0 * np.pi * _fft.fftfreq(grid.n, d=grid.spacing)
    k_odd = k.copy()
    k_odd[grid.n // 2] = 0.0  # Nyquist has no signed direction
    DX, DY = np.meshgrid(1j * k_odd, 1j * k_odd, indexing="xy")
    DX.flags.writeable = False
    DY.flags.writeable = False
    return DX, DY


@lru_cache(maxsize=32)
def laplacian_multiplier(grid: Grid2D) -> np.ndarray:
    KX, KY = wavenumbers(grid)
    mult = -(KX**2 + KY**2)
    mult.flags.writeable = False
    return mult


def gradient(values: np.ndarray, grid: Grid2D) -> tuple[np.ndarray, np.ndarray]:
    """Spectral (d/dx, d/dy); complex output (take .real for real input)."""
    DX, DY = _first_derivative_multipliers(grid)
    vhat = fft2(values)
    return ifft2(DX * vhat), ifft2(DY * vhat)


def divergence(vx: np.ndarray, vy: np.ndarray, grid: Grid2D) -> np.ndarray:
    """Spectral divergence of an in-plane vector field; real output for real input."""
    DX, DY = _first_derivative_multipliers(grid)
    out = ifft2(DX * fft2(vx) + DY * fft2(vy))
    if np.isrealobj(vx) and np.isrealobj(vy):
        return out.real
    return out


def laplacian(values: np.ndarray, grid: Grid2D) -> np.ndarray:
    out = ifft2(laplacian_multiplier(grid) * fft2(values))
    if np.isrealobj(values):
        return out.real
    return out
