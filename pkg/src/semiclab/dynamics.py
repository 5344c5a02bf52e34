"""Classical ergodic-theory toolkit: Birkhoff averages on the torus,
cat-map Lyapunov exponents, Brin-Katok entropy estimation, and pressure
on periodic-orbit sets.
"""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from semiclab import _kernels
from semiclab._errors import NumericalSignal


@dataclass(frozen=True)
class EmpiricalMeasure:
    """Weighted sample cloud in the fundamental domain."""

    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        w = np.asarray(self.weights, dtype=float)
        if pts.ndim != 2 or len(pts) != len(w):
            raise ValueError("points and weights must align")
        if w.min() < 0:
            raise ValueError("weights must be non-negative")
        if abs(float(w.sum()) - 1.0) > 1e-12:
            raise ValueError("weights must sum to 1")
        if pts.min() < 0 or pts.max() >= 1.0:
            raise ValueError("points must lie in the fundamental domain")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)


@dataclass(frozen=True)
class PeriodicOrbit:
    """One full period of a cat-map orbit, points as exact rationals."""

    cat: object
    points: tuple
    period: int


def uniform_measure(n_points, seed):
    rng = np.random.default_rng(seed)
    return EmpiricalMeasure(rng.uniform(0.0, 1.0, (n_points, 2)), np.full(n_points, 1.0 / n_points))


def birkhoff_average_torus(a, x, xi, T):
    """Finite-time geodesic-flow average (1/T) int_0^T a(x + t xi) dt,
    by exact integration of each Fourier mode."""
    if T <= 0:
        raise ValueError("need T > 0")
    if not a.is_x_only():
        raise ValueError("need an x-only symbol")
    x = np.asarray(x, dtype=float)
    xi = np.asarray(xi, dtype=float)
    xi = xi / np.linalg.norm(xi)
    total = 0.0 + 0.0j
    for p, coef in a.terms.items():
        z = float(np.dot(p, xi)) * T
        kern = 1.0 if z == 0.0 else (cmath.exp(1j * z) - 1.0) / (1j * z)
        total += complex(coef) * cmath.exp(1j * float(np.dot(p, x))) * kern
    return total


def direction_rank(xi):
    """Rank of the annihilator lattice {k integer : k . xi = 0}.

    Integer vectors have rank n-1; the flag "irrational" stands for a
    direction with trivial annihilator (rank 0). Non-integer vectors are
    accepted at face value as irrational in n = 2 and rejected in higher
    dimension, where intermediate ranks cannot be decided numerically.
    """
    if isinstance(xi, str):
        if xi == "irrational":
            return 0
        raise ValueError(f"unknown direction flag {xi!r}")
    v = np.asarray(xi, dtype=float)
    n = len(v)
    if not np.any(v):
        raise ValueError("direction must be nonzero")
    vr = np.round(v)
    if np.all(np.abs(v - vr) <= 1e-9 * max(1.0, float(np.abs(v).max()))):
        return n - 1
    if n == 2:
        return 0
    raise NumericalSignal("unsupported", "cannot rank an unflagged irrational direction for n >= 3")


def lyapunov_exponent(A):
    """Log of the spectral radius of the cat map."""
    return A.lyapunov_exponent()


def _orbit_array(points, A, T):
    # (T+1, P, 2) forward orbit under A mod 1
    a, b, c, d = A.a, A.b, A.c, A.d
    P = len(points)
    orbits = np.empty((T + 1, P, 2))
    orbits[0] = points
    for t in range(1, T + 1):
        x, y = orbits[t - 1, :, 0], orbits[t - 1, :, 1]
        orbits[t, :, 0] = (a * x + b * y) % 1.0
        orbits[t, :, 1] = (c * x + d * y) % 1.0
    return orbits


def ks_entropy_estimate(mu, A, epsilon, T, n_bases=256):
    """Brin-Katok entropy estimate at one (epsilon, T) pair.

    Averages the local rate -(1/T) ln mu(Bowen ball) over systematically
    resampled base points; the Bowen ball uses the sup-over-time torus
    metric. The mean of local rates is the ergodic-decomposition average.
    """
    if len(mu.points) < 1000:
        raise ValueError("need at least 10^3 sample points")
    if not 0 < epsilon < 0.25:
        raise ValueError("need epsilon in (0, 1/4)")
    if T < 2:
        raise ValueError("need T >= 2")
    cum = np.cumsum(mu.weights)
    marks = (np.arange(n_bases) + 0.5) / n_bases
    base_idx = np.searchsorted(cum, marks).astype(np.int64)
    orbits = _orbit_array(mu.points, A, T)
    masses = _kernels.bowen_masses(orbits, mu.weights, base_idx, epsilon)
    empty = masses <= 0.0
    if empty.mean() > 0.05:
        raise NumericalSignal(
            "insufficient-samples", f"{int(empty.sum())}/{n_bases} Bowen balls empty"
        )
    rates = -np.log(masses[~empty]) / T
    return float(rates.mean())


def _cat_apply_exact(A, pt):
    x, y = pt
    return ((A.a * x + A.b * y) % 1, (A.c * x + A.d * y) % 1)


def pressure_periodic_orbit(gamma, s):
    """Topological pressure of one orbit: s times the negative orbit-averaged
    unstable expansion rate (constant chi for linear cat maps)."""
    if not 0 <= s <= 1:
        raise ValueError("need s in [0, 1]")
    pts = [tuple(Fraction(c) for c in p) for p in gamma.points]
    if len(pts) != gamma.period or gamma.period < 1:
        raise NumericalSignal("non-periodic", "point list does not match the period")
    for i, p in enumerate(pts):
        nxt = _cat_apply_exact(gamma.cat, p)
        if nxt != pts[(i + 1) % gamma.period]:
            raise NumericalSignal("non-periodic", f"orbit breaks at step {i}")
    return -s * gamma.cat.lyapunov_exponent()


def bowen_root(pressure_fn, tol=1e-9):
    """Unique root in [0,1] of a continuous decreasing pressure function."""
    p0 = pressure_fn(0.0)
    p1 = pressure_fn(1.0)
    if p0 < 0 or p1 > 0:
        raise NumericalSignal("no-sign-change", f"P(0)={p0}, P(1)={p1}")
    if p0 == 0.0:
        return 0.0
    if p1 == 0.0:
        return 1.0
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        v = pressure_fn(mid)
        if v == 0.0:
            return mid
        if v > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
