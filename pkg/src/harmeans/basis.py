"""Trigonometric basis functions and residual projection coefficients.

Two families live here.  The test basis ``phi`` is the orthonormal,
mean-zero family used to build the long-run variance estimator: slot
``l = 2m-1`` is sqrt(2)*cos(2*pi*m*x) and slot ``l = 2m`` is
sqrt(2)*sin(2*pi*m*x), so consecutive slots share a frequency and the
family is orthonormal on the evaluation grid t/T.  The bootstrap basis
``psi`` is the plain cosine/sine pair (norm 1/2 instead of 1) used to
construct serially dependent bootstrap multipliers.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .errors import DomainError

_SQRT2 = math.sqrt(2.0)


def _check_unit_interval(x: float) -> None:
    if not 0.0 < x <= 1.0:
        raise DomainError(f"basis functions are evaluated on (0, 1], got x={x}")


def phi(ell: int, x: float) -> float:
    """Value of the ell-th test basis function at x in (0, 1].

    Odd slots are sqrt(2)*cos(2*pi*m*x), even slots sqrt(2)*sin(2*pi*m*x),
    with frequency m = ceil(ell / 2).
    """
    if ell < 1:
        raise DomainError(f"basis index must be >= 1, got {ell}")
    _check_unit_interval(x)
    m = (ell + 1) // 2
    angle = 2.0 * math.pi * m * x
    return _SQRT2 * math.cos(angle) if ell % 2 == 1 else _SQRT2 * math.sin(angle)


def psi(r: int, ell: int, x: float) -> float:
    """Bootstrap basis: cos(2*pi*ell*x) for r=1, sin(2*pi*ell*x) for r=2."""
    if r not in (1, 2):
        raise DomainError(f"psi family index must be 1 or 2, got {r}")
    if ell < 1:
        raise DomainError(f"basis index must be >= 1, got {ell}")
    _check_unit_interval(x)
    angle = 2.0 * math.pi * ell * x
    return math.cos(angle) if r == 1 else math.sin(angle)


@lru_cache(maxsize=128)
def phi_matrix(n: int, k: int) -> np.ndarray:
    """Precomputed (n, k) table of phi_l(t/n) for t = 1..n, l = 1..k.

    The table is immutable and cached, so concurrent readers can share it.
    """
    if n < 2:
        raise DomainError(f"grid length must be >= 2, got {n}")
    if k < 1:
        raise DomainError(f"need at least one basis function, got k={k}")
    grid = np.arange(1, n + 1, dtype=np.float64) / n
    out = np.empty((n, k), dtype=np.float64)
    for ell in range(1, k + 1):
        m = (ell + 1) // 2
        angle = 2.0 * np.pi * m * grid
        out[:, ell - 1] = np.cos(angle) if ell % 2 == 1 else np.sin(angle)
    out *= _SQRT2
    out.flags.writeable = False
    return out


@lru_cache(maxsize=128)
def psi_matrices(n: int, k_star: int) -> tuple[np.ndarray, np.ndarray]:
    """Precomputed (n, k_star) tables of the cosine and sine bootstrap bases."""
    if n < 2:
        raise DomainError(f"grid length must be >= 2, got {n}")
    if k_star < 1:
        raise DomainError(f"need at least one basis function, got k={k_star}")
    grid = np.arange(1, n + 1, dtype=np.float64) / n
    angles = 2.0 * np.pi * np.outer(grid, np.arange(1, k_star + 1))
    cos_tab = np.cos(angles)
    sin_tab = np.sin(angles)
    cos_tab.flags.writeable = False
    sin_tab.flags.writeable = False
    return cos_tab, sin_tab


def project(residuals: np.ndarray, ell: int) -> float:
    """Projection coefficient n^{-1/2} * sum_t phi_ell(t/n) * u_t.

    Linear in the residual vector; computed on demand without the cached
    table so it stays cheap for one-off queries.
    """
    u = np.asarray(residuals, dtype=np.float64)
    if u.ndim != 1 or u.size < 2:
        raise DomainError("residuals must be a vector of length >= 2")
    if not np.all(np.isfinite(u)):
        raise DomainError("residuals must be finite")
    if ell < 1:
        raise DomainError(f"basis index must be >= 1, got {ell}")
    n = u.size
    m = (ell + 1) // 2
    grid = np.arange(1, n + 1, dtype=np.float64) / n
    angle = 2.0 * np.pi * m * grid
    vals = np.cos(angle) if ell % 2 == 1 else np.sin(angle)
    return float(_SQRT2 * vals.dot(u) / math.sqrt(n))


def project_all(residuals: np.ndarray, k: int) -> np.ndarray:
    """All projection coefficients l = 1..k at once, via the cached table."""
    u = np.asarray(residuals, dtype=np.float64)
    if u.ndim != 1 or u.size < 2:
        raise DomainError("residuals must be a vector of length >= 2")
    tab = phi_matrix(u.size, k)
    return tab.T.dot(u) / math.sqrt(u.size)
