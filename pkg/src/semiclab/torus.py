"""Flat-torus eigenfunctions and exact Weyl quantization.

Conventions (frozen): psi(x) = sum_k c_k e^{ik.x} on [0, 2pi]^n with
<f, g> = integral conj(f) g dx, so norm 1 means (2pi)^n sum |c_k|^2 = 1.
density_moment(p) is the p-th Fourier coefficient of |psi|^2, i.e.
|psi(x)|^2 = sum_p density_moment(p) e^{ip.x}. The Weyl matrix element
between modes k and k+p evaluates the momentum profile at the midpoint
hbar (k + p/2), which makes conjugation by the quantum flow exact.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from semiclab import _kernels
from semiclab._errors import NumericalSignal
from semiclab.lattice import LatticeShell, count_in_ball

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class TorusEigenfunction:
    """Single-shell eigenfunction: amplitudes aligned with shell.vectors."""

    shell: LatticeShell
    amplitudes: np.ndarray

    @property
    def dimension(self):
        return self.shell.dimension

    @property
    def hbar(self):
        return self.shell.radius_squared ** -0.5

    def norm_squared(self):
        return TWO_PI ** self.dimension * float((np.abs(self.amplitudes) ** 2).sum())


@dataclass(frozen=True)
class TorusSymbol:
    """a(x, xi) = sum_p e^{ip.x} f_p(xi); profiles are complex constants
    (x-only terms) or callables xi -> complex."""

    terms: dict

    def is_x_only(self):
        return all(not callable(f) for f in self.terms.values())


class FlowProfile:
    """Profile composed with the geodesic flow: xi -> f(xi) exp(i p.xi t)."""

    __slots__ = ("base", "p", "t")

    def __init__(self, base, p, t):
        self.base = base
        self.p = np.asarray(p, dtype=float)
        self.t = float(t)

    def __call__(self, xi):
        base = self.base(xi) if callable(self.base) else self.base
        return base * cmath.exp(1j * self.t * float(np.dot(self.p, xi)))


def constant_symbol(value, n=2):
    return TorusSymbol({(0,) * n: complex(value)})


def exponential_symbol(p):
    return TorusSymbol({tuple(p): 1.0 + 0.0j})


def cosine_symbol(p, scale=1.0):
    """scale * cos(p.x) as a symbol."""
    p = tuple(p)
    neg = tuple(-c for c in p)
    if p == neg:
        return TorusSymbol({p: complex(scale)})
    return TorusSymbol({p: scale / 2 + 0j, neg: scale / 2 + 0j})


def momentum_symbol(f, n=2):
    return TorusSymbol({(0,) * n: f})


def random_eigenfunction(shell, seed):
    """Normalized eigenfunction with iid complex-Gaussian shell amplitudes."""
    if len(shell) == 0:
        raise NumericalSignal("empty-shell", f"shell m={shell.radius_squared}")
    if shell.radius_squared < 1:
        raise ValueError("need radius_squared >= 1")
    rng = np.random.default_rng(seed)
    s = len(shell)
    c = rng.standard_normal(s) + 1j * rng.standard_normal(s)
    c /= TWO_PI ** (shell.dimension / 2) * np.linalg.norm(c)
    return TorusEigenfunction(shell, c)


def random_shell_basis(shell, seed):
    """Haar-random orthonormal basis of the shell eigenspace (phase-fixed QR)."""
    if len(shell) == 0:
        raise NumericalSignal("empty-shell", f"shell m={shell.radius_squared}")
    rng = np.random.default_rng(seed)
    s = len(shell)
    G = (rng.standard_normal((s, s)) + 1j * rng.standard_normal((s, s))) / math.sqrt(2)
    Q, R = np.linalg.qr(G)
    Q = Q * (np.diagonal(R) / np.abs(np.diagonal(R))).conj()[None, :]
    C = Q / TWO_PI ** (shell.dimension / 2)
    return [TorusEigenfunction(shell, C[:, j].copy()) for j in range(s)]


def density_moment(psi, p):
    """sum_k c_k conj(c_{k-p}) over pairs with both k and k-p on the shell."""
    idx = psi.shell.index()
    p = tuple(p)
    total = 0.0 + 0.0j
    for i, k in enumerate(psi.shell.vectors):
        j = idx.get(tuple(a - b for a, b in zip(k, p)))
        if j is not None:
            total += psi.amplitudes[i] * np.conj(psi.amplitudes[j])
    return complex(total)


def _pair_groups(shell):
    # all index pairs (i, j) grouped by the difference vector V[i] - V[j];
    # within a group, sum c_i conj(c_j) = density_moment(difference)
    V = np.asarray(shell.vectors, dtype=np.int64)
    s = len(V)
    diffs = (V[:, None, :] - V[None, :, :]).reshape(s * s, V.shape[1])
    order = np.lexsort(tuple(diffs[:, col] for col in range(V.shape[1] - 1, -1, -1)))
    sortd = diffs[order]
    starts = np.flatnonzero(np.any(np.diff(sortd, axis=0), axis=1)) + 1
    starts = np.concatenate([[0], starts]).astype(np.int64)
    i_idx, j_idx = np.divmod(order, s)
    return i_idx.astype(np.int64), j_idx.astype(np.int64), starts


def exact_l4(psi):
    """Exact integral of |psi|^4 over T^2 via Plancherel on density moments."""
    if psi.dimension != 2:
        raise NumericalSignal("unsupported-dimension", "exact_l4 needs n = 2")
    i_idx, j_idx, starts = _pair_groups(psi.shell)
    c = psi.amplitudes[None, :]
    val = _kernels.l4_moment_sums_np(c, i_idx, j_idx, starts)[0]
    return TWO_PI**2 * float(val)


def l4_batch(shell, n_states, seed):
    """exact_l4 for n_states seeded random eigenfunctions on one shell."""
    if len(shell) == 0:
        raise NumericalSignal("empty-shell", f"shell m={shell.radius_squared}")
    i_idx, j_idx, starts = _pair_groups(shell)
    rng = np.random.default_rng(seed)
    s = len(shell)
    C = rng.standard_normal((n_states, s)) + 1j * rng.standard_normal((n_states, s))
    C /= TWO_PI * np.linalg.norm(C, axis=1, keepdims=True)
    return TWO_PI**2 * _kernels.l4_moment_sums(C, i_idx, j_idx, starts)


def _eval_profile(prof, mid, hbar):
    # evaluate a momentum profile at xi = hbar * mid; flow-composed profiles
    # get their phase through hbar * (p.mid) so that shell pairs (p.mid = 0
    # in exact integer/half-integer arithmetic) give phase exactly 1
    if isinstance(prof, FlowProfile):
        base = _eval_profile(prof.base, mid, hbar)
        return base * cmath.exp(1j * prof.t * hbar * float(np.dot(prof.p, mid)))
    if callable(prof):
        return prof(hbar * mid)
    return prof


def wigner(psi, a):
    """Weyl matrix element <psi, Op(a) psi> with midpoint momentum evaluation."""
    idx = psi.shell.index()
    c = psi.amplitudes
    hbar = psi.hbar
    n = psi.dimension
    total = 0.0 + 0.0j
    for p, prof in a.terms.items():
        half = np.asarray(p, dtype=float) / 2.0
        for i, k in enumerate(psi.shell.vectors):
            j = idx.get(tuple(ka + pa for ka, pa in zip(k, p)))
            if j is None:
                continue
            mid = np.asarray(k, dtype=float) + half
            total += np.conj(c[j]) * c[i] * _eval_profile(prof, mid, hbar)
    return complex(total * TWO_PI**n)


def egorov_conjugate(a, t):
    """The symbol a composed with the geodesic flow at time t."""
    if t == 0:
        return a
    return TorusSymbol({p: FlowProfile(prof, p, t) for p, prof in a.terms.items()})


def quantum_variance(basis, a):
    """Variance of the a-observable over an orthonormal eigenbasis up to the
    largest shell present; a must depend on x only (constant profiles)."""
    if not a.is_x_only():
        raise ValueError("quantum_variance needs an x-only symbol")
    if not basis:
        raise ValueError("empty basis")
    n = basis[0].dimension
    by_shell = {}
    for psi in basis:
        by_shell.setdefault(psi.shell.radius_squared, []).append(psi)
    M = max(by_shell)
    expected = count_in_ball(math.sqrt(M), n) - 1
    total_states = sum(len(v) for v in by_shell.values())
    if total_states != expected:
        raise ValueError(f"basis has {total_states} states, shells up to {M} need {expected}")
    ahat = {tuple(p): complex(v) for p, v in a.terms.items() if any(p)}
    total = 0.0
    for group in by_shell.values():
        shell = group[0].shell
        if len(group) != len(shell):
            raise ValueError("basis does not span a shell")
        C = np.vstack([psi.amplitudes for psi in group])
        gram = TWO_PI**n * (C @ C.conj().T)
        if np.abs(gram - np.eye(len(group))).max() > 1e-8:
            raise NumericalSignal(
                "non-orthonormal-basis", f"shell m={shell.radius_squared}"
            )
        idx = shell.index()
        vals = np.zeros(len(group), dtype=complex)
        for p, ap in ahat.items():
            # moment_j(-p) = sum_k c_k conj(c_{k+p})
            pairs = [
                (i, idx[tuple(ka + pa for ka, pa in zip(k, p))])
                for i, k in enumerate(shell.vectors)
                if tuple(ka + pa for ka, pa in zip(k, p)) in idx
            ]
            if not pairs:
                continue
            ii = np.fromiter((q[0] for q in pairs), dtype=np.int64)
            jj = np.fromiter((q[1] for q in pairs), dtype=np.int64)
            vals += ap * TWO_PI**n * (C[:, ii] * C[:, jj].conj()).sum(axis=1)
        total += float((np.abs(vals) ** 2).sum())
    return total / expected


def _box_factor(p, lo, hi):
    if p == 0:
        return complex(hi - lo)
    return (cmath.exp(1j * p * hi) - cmath.exp(1j * p * lo)) / (1j * p)


def observability_mass(psi, omega):
    """Integral of |psi|^2 over an axis-aligned box, in closed form."""
    omega = [tuple(side) for side in omega]
    if len(omega) != psi.dimension:
        raise ValueError("box dimension mismatch")
    if any(hi <= lo for lo, hi in omega):
        raise NumericalSignal("empty-region", "box must have positive volume")
    V = psi.shell.vectors
    c = psi.amplitudes
    total = 0.0 + 0.0j
    for i, k in enumerate(V):
        for j, kp in enumerate(V):
            f = c[i] * np.conj(c[j])
            for axis in range(psi.dimension):
                f *= _box_factor(k[axis] - kp[axis], *omega[axis])
            total += f
    return float(total.real)


_CUTOFFS = {
    "sharp": lambda u: 1.0 if abs(u) <= 1.0 else 0.0,
    "smooth": lambda u: math.cos(math.pi * u / 2.0) ** 2 if abs(u) <= 1.0 else 0.0,
}


def directional_filter(psi, xi0, R, cutoff="sharp"):
    """Keep modes with k.xi0_perp/R inside the cutoff window.

    xi0 must be (proportional to) an integer direction; returns the filtered
    unnormalized state and the number of surviving modes.
    """
    if psi.dimension != 2:
        raise NumericalSignal("unsupported-dimension", "directional_filter needs n = 2")
    if R <= 0:
        raise ValueError("need R > 0")
    v = np.asarray(xi0, dtype=float)
    vr = np.round(v)
    if not np.all(np.abs(v - vr) <= 1e-9 * max(1.0, float(np.abs(v).max()))):
        raise NumericalSignal("irrational-direction", f"xi0={xi0}")
    a, b = int(vr[0]), int(vr[1])
    if a == 0 and b == 0:
        raise ValueError("xi0 must be nonzero")
    g = math.gcd(abs(a), abs(b))
    a, b = a // g, b // g
    norm = math.hypot(a, b)
    chi = _CUTOFFS[cutoff]
    weights = np.array(
        [chi((-b * k1 + a * k2) / norm / R) for k1, k2 in psi.shell.vectors]
    )
    surviving = int(np.count_nonzero(weights))
    return TorusEigenfunction(psi.shell, psi.amplitudes * weights), surviving


def microlocal_weyl_average(M, a):
    """Average of wigner(e_k, a) over the exponential basis 1 <= |k|^2 <= M,
    each mode at its own hbar = |k|^{-1}."""
    if M < 1:
        raise ValueError("need M >= 1")
    prof = a.terms.get((0, 0), 0.0)
    r = math.isqrt(M)
    ks = []
    for k1 in range(-r, r + 1):
        for k2 in range(-r, r + 1):
            s = k1 * k1 + k2 * k2
            if 1 <= s <= M:
                ks.append((k1, k2))
    total = 0.0 + 0.0j
    for k in ks:
        nk = math.sqrt(k[0] ** 2 + k[1] ** 2)
        xi = np.array([k[0] / nk, k[1] / nk])
        total += prof(xi) if callable(prof) else prof
    return complex(total / len(ks))


def evaluate_on_grid(psi, G):
    """psi sampled on the uniform G x G grid x = 2pi j / G (needs G > 2 sqrt(m))."""
    if G <= 2 * math.isqrt(psi.shell.radius_squared):
        raise ValueError("grid too coarse for the shell")
    spec = np.zeros((G, G), dtype=complex)
    for (k1, k2), c in zip(psi.shell.vectors, psi.amplitudes):
        spec[k1 % G, k2 % G] += c
    return np.fft.ifft2(spec) * G * G
