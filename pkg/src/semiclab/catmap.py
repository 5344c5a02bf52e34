"""Quantized hyperbolic toral automorphisms on the N-dimensional state space.

Conventions (frozen): position states j/N, j = 0..N-1. Translation operators
act as T(m) psi(j) = e^{-i pi m1 m2 / N} e^{2 pi i m1 j / N} psi(j - m2), so
that T(a) T(b) = e^{i pi w(a,b)/N} T(a+b) and the commutation phase is
e^{2 pi i w(a,b)/N}, with w the integer symplectic form. Propagators are
built as products of the quantized generators J (a DFT) and lower shears
(quadratic phase diagonals e^{i pi c j (j+N) / N}); the j(j+N) exponent keeps
the shear well defined for both parities, so exact Egorov holds with no
parity correction.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy import fft as _sfft

from semiclab import _kernels
from semiclab._errors import NumericalSignal


@dataclass(frozen=True)
class CatMap:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("determinant must be exactly 1")

    @property
    def trace(self):
        return self.a + self.d

    def is_hyperbolic(self):
        return abs(self.trace) > 2

    def matrix(self):
        return ((self.a, self.b), (self.c, self.d))

    def lyapunov_exponent(self):
        if not self.is_hyperbolic():
            raise NumericalSignal("non-hyperbolic", f"trace {self.trace}")
        t = abs(self.trace)
        return math.log((t + math.sqrt(t * t - 4.0)) / 2.0)


@dataclass(frozen=True)
class QuantizedCatMap:
    cat: CatMap
    N: int
    U: np.ndarray
    word: tuple


@dataclass(frozen=True)
class TorusPhaseState:
    N: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if len(self.amplitudes) != self.N:
            raise ValueError("amplitude vector has wrong length")
        if abs(float((np.abs(self.amplitudes) ** 2).sum()) - 1.0) > 1e-12:
            raise ValueError("amplitudes must have unit norm")


def translation_operator(N, m):
    """Weyl-Heisenberg translation T(m) in the position basis."""
    if N < 1:
        raise ValueError("need N >= 1")
    m1, m2 = m
    j = np.arange(N)
    T = np.zeros((N, N), dtype=complex)
    pref = cmath.exp(-1j * math.pi * m1 * m2 / N)
    T[j, (j - m2) % N] = pref * np.exp(2j * np.pi * m1 * j / N)
    return T


def _fourier(N):
    j = np.arange(N)
    return np.exp(-2j * np.pi * np.outer(j, j) / N) / math.sqrt(N)


def _shear_diag(N, c):
    j = np.arange(N)
    return np.exp(1j * np.pi * c * j * (j + N) / N)


_J = ((0, 1), (-1, 0))
_JINV = ((0, -1), (1, 0))


def _mm(X, Y):
    return tuple(
        tuple(sum(X[i][k] * Y[k][j] for k in range(2)) for j in range(2))
        for i in range(2)
    )


def _decompose(A):
    # Euclidean peeling of A in SL2(Z) into J and lower-shear generators;
    # the word multiplies left to right to A
    word = []
    cur = A
    guard = 0
    while True:
        guard += 1
        if guard > 200:
            raise NumericalSignal("no-period", "generator decomposition did not terminate")
        (a, b), (c, d) = cur
        if c == 0:
            if a == 1:
                if b != 0:
                    word.append(("S", -b))
            else:
                word.extend([("J", None), ("J", None)])
                if b != 0:
                    word.append(("S", b))
            break
        q = round(a / c)
        word.append(("S", -q))
        word.append(("J", None))
        cur = _mm(_JINV, ((a - q * c, b - q * d), (c, d)))
    return tuple(word)


def _word_matrix(word):
    M = ((1, 0), (0, 1))
    for g, c in word:
        M = _mm(M, _J if g == "J" else ((1, -c), (0, 1)))
    return M


def propagator(A, N):
    """Unitary quantization of A with exact Egorov: U* T(m) U = theta T(Am)."""
    if not A.is_hyperbolic():
        raise NumericalSignal("non-hyperbolic", f"trace {A.trace}")
    if N < 1:
        raise ValueError("need N >= 1")
    word = _decompose(A.matrix())
    if _word_matrix(word) != A.matrix():
        raise NumericalSignal("no-period", "generator word does not reproduce the map")
    U = np.eye(N, dtype=complex)
    F = _fourier(N)
    for g, c in reversed(word):
        if g == "J":
            U = U @ F
        else:
            U = U * _shear_diag(N, c)[None, :]
    return QuantizedCatMap(A, N, U, word)


def apply_propagator(Q, v):
    """U v without touching the dense matrix (generator word, innermost first)."""
    out = np.asarray(v, dtype=complex)
    for g, c in Q.word:
        if g == "J":
            out = _sfft.fft(out, norm="ortho")
        else:
            out = _shear_diag(Q.N, c) * out
    return out


def classical_period_mod(A, N):
    """Smallest t >= 1 with A^t = I mod N, by exact integer powers."""
    if N < 1:
        raise ValueError("need N >= 1")
    if N == 1:
        return 1
    ident = ((1, 0), (0, 1))
    M = ident
    Amod = tuple(tuple(x % N for x in row) for row in A.matrix())
    t = 0
    guard = 16 * N * N + 64
    while True:
        M = tuple(
            tuple(sum(M[i][k] * Amod[k][j] for k in range(2)) % N for j in range(2))
            for i in range(2)
        )
        t += 1
        if M == ident:
            return t
        if t > guard:
            raise NumericalSignal("no-period", f"no period below {guard} for N={N}")


def quantum_period(Q):
    """Smallest t <= 4 * classical_period_mod(A, 2N) with U^t scalar to 1e-8.

    Scalar times can only occur at multiples of the classical period mod N,
    so only those are tested.
    """
    N = Q.N
    t_cl = classical_period_mod(Q.cat, N)
    bound = 4 * classical_period_mod(Q.cat, 2 * N)
    eye = np.eye(N)
    P = np.linalg.matrix_power(Q.U, t_cl)
    W = P
    t = t_cl
    while t <= bound:
        s = np.trace(W) / N
        if abs(abs(s) - 1.0) <= 1e-8 and float(np.abs(W - s * eye).max()) <= 1e-8:
            return {"period": t, "phase": complex(s / abs(s))}
        W = W @ P
        t += t_cl
    raise NumericalSignal("period-not-found", f"N={N}: no scalar power below {bound}")


def coherent_state(N, x0, xi0, squeeze=1.0):
    """Periodized Gaussian wave packet at (x0, xi0), normalized.

    The theta sum is truncated once the neglected terms are below 1e-16.
    """
    if not (0 <= x0 < 1 and 0 <= xi0 < 1):
        raise ValueError("center must lie in [0,1)^2")
    if squeeze <= 0:
        raise ValueError("need squeeze > 0")
    return TorusPhaseState(N, _coherent_array(N, x0, xi0, squeeze))


def _coherent_array(N, x0, xi0, squeeze=1.0):
    j = np.arange(N)
    u = j / N - x0
    W = int(math.ceil(math.sqrt(40.0 / (math.pi * N * squeeze)))) + 2
    psi = np.zeros(N, dtype=complex)
    for w in range(-W, W + 1):
        v = u - w
        psi += np.exp(-math.pi * N * squeeze * v * v + 2j * math.pi * N * xi0 * v)
    return psi / np.linalg.norm(psi)


# Frozen admissibility fixtures for CatMap(2,1,1,1): N whose quantum period
# satisfies T_N <= 4 ln N / chi, from a scan of N <= 3000. The large list is
# the N >= 500 regression set used by the scarring experiment.
FNDB_ADMISSIBLE_SMALL = (
    18, 19, 24, 36, 38, 62, 72, 211, 322, 323, 336, 341, 368, 414, 422, 483,
)
FNDB_ADMISSIBLE_LARGE = (
    504, 552, 644, 646, 682, 828, 966, 1008, 1104, 1288, 1292, 1449, 1656,
    1705, 1891, 1932, 2576, 2684, 2898,
)


def _matrix_free_period(A, N, word):
    # shortest U-power that acts as a scalar, probed on two vectors;
    # candidates are multiples of the classical period within the
    # short-period (Ehrenfest-scale) admissibility bound
    chi = A.lyapunov_exponent()
    bound = 4.0 * math.log(N) / chi
    t_cl = classical_period_mod(A, N)
    Q = QuantizedCatMap(A, N, None, word)
    rng = np.random.default_rng(8191)
    probes = [rng.standard_normal(N) + 1j * rng.standard_normal(N), np.zeros(N, complex)]
    probes[0] /= np.linalg.norm(probes[0])
    probes[1][0] = 1.0
    cur = [p.copy() for p in probes]
    t = 0
    found = None
    while t + t_cl <= bound:
        for _ in range(t_cl):
            cur = [apply_propagator(Q, v) for v in cur]
        t += t_cl
        scal = None
        ok = True
        for v0, vt in zip(probes, cur):
            i = int(np.argmax(np.abs(v0)))
            s = vt[i] / v0[i]
            if abs(abs(s) - 1.0) > 1e-8 or float(np.abs(vt - s * v0).max()) > 1e-8:
                ok = False
                break
            if scal is None:
                scal = s
            elif abs(s - scal) > 1e-8:
                ok = False
                break
        if ok:
            found = (t, scal / abs(scal))
            break
    if found is None:
        raise NumericalSignal(
            "not-admissible",
            f"N={N}: no quantum period within 4 ln N / chi = {bound:.2f}",
        )
    return found


def scar_record(A, N):
    """Scarred-state pipeline: short quantum period, symmetric coherent-state
    sum over one period, projection onto the nearest eigenspace.

    Returns a record with the projected state, the period, the eigenphase of
    the propagator on it, and the eigenvector residual.
    """
    word = _decompose(A.matrix())
    Tq, phase = _matrix_free_period(A, N, word)
    Q = QuantizedCatMap(A, N, None, word)
    adj = cmath.exp(-1j * cmath.phase(phase) / Tq)
    orbit = np.empty((Tq, N), dtype=complex)
    orbit[0] = _coherent_array(N, 0.0, 0.0)
    for k in range(1, Tq):
        orbit[k] = adj * apply_propagator(Q, orbit[k - 1])
    half = Tq // 2
    ks = np.arange(-half, half + 1)
    psi = orbit[ks % Tq].sum(axis=0)
    psi /= np.linalg.norm(psi)
    # U_adj^k psi is a sum of shifted orbit rows, so the projector onto each
    # eigenphase 2 pi r / Tq of U_adj is a DFT across shifts
    shifts = np.stack([orbit[(ks + k) % Tq].sum(axis=0) for k in range(Tq)])
    w = np.exp(-2j * np.pi * np.outer(np.arange(Tq), np.arange(Tq)) / Tq)
    proj_all = (w @ shifts) / Tq
    norms = np.linalg.norm(proj_all, axis=1)
    r = int(np.argmax(norms))
    proj = proj_all[r] / norms[r]
    eig_adj = cmath.exp(2j * math.pi * r / Tq)
    residual = float(np.linalg.norm(adj * apply_propagator(Q, proj) - eig_adj * proj))
    return {
        "state": TorusPhaseState(N, proj),
        "period": Tq,
        "period_phase": complex(phase),
        "eigenphase": complex(np.conj(adj) * eig_adj),
        "residual": residual,
    }


def scarred_state(A, N):
    """Eigenvector of the propagator scarred on the fixed point at 0."""
    return scar_record(A, N)["state"]


def husimi(s, grid, squeeze=1.0):
    """Coherent-state overlap density |<coherent(x, xi)|s>|^2 on a grid
    of cell centers, normalized so that sum / G^2 = 1."""
    if grid < 8:
        raise ValueError("need grid >= 8")
    return _kernels.husimi_grid(np.asarray(s.amplitudes, complex), grid, squeeze)


def mass_in_ball(H, center, radius):
    """Husimi mass inside a torus-metric ball, grid cells at (i+1/2)/G."""
    G = H.shape[0]
    x = ((np.arange(G) + 0.5) / G)[:, None] - center[0]
    y = ((np.arange(G) + 0.5) / G)[None, :] - center[1]
    x = np.minimum(np.abs(x) % 1.0, 1.0 - np.abs(x) % 1.0)
    y = np.minimum(np.abs(y) % 1.0, 1.0 - np.abs(y) % 1.0)
    mask = x * x + y * y <= radius * radius
    return float((H * mask).sum() / (G * G))


def eigensystem(Q):
    """Full spectral decomposition of the propagator, sorted by eigenphase.

    Within each degenerate cluster (phase gap < 1e-8) the basis is fixed by
    re-diagonalizing the compressed left-half position cutoff and ordering by
    its expectation; each vector's phase is set by its largest component.
    """
    from scipy.linalg import schur

    N = Q.N
    try:
        T, Z = schur(Q.U, output="complex")
    except Exception as exc:
        raise NumericalSignal("diagonalization-failure", str(exc))
    ph = np.diag(T).copy()
    ph /= np.abs(ph)
    order = np.argsort(np.angle(ph))
    ph = ph[order]
    V = Z[:, order].copy()
    if float(np.abs(V.conj().T @ V - np.eye(N)).max()) > 1e-8:
        raise NumericalSignal("diagonalization-failure", "eigenbasis not orthonormal")
    half = (np.arange(N) / N < 0.5).astype(float)
    # cluster boundaries on the sorted circle, wrap-aware
    angs = np.angle(ph)
    breaks = [0]
    for i in range(1, N):
        if angs[i] - angs[i - 1] >= 1e-8:
            breaks.append(i)
    clusters = [(breaks[i], breaks[i + 1]) for i in range(len(breaks) - 1)]
    clusters.append((breaks[-1], N))
    wrap = (
        len(clusters) > 1
        and (angs[0] + 2.0 * math.pi) - angs[clusters[-1][0]] < 1e-8
    )
    if wrap:
        first, last = clusters[0], clusters.pop()
        idx = list(range(last[0], last[1])) + list(range(first[0], first[1]))
        clusters[0] = idx
    for cl in clusters:
        idx = list(range(*cl)) if isinstance(cl, tuple) else cl
        if len(idx) > 1:
            B = V[:, idx]
            Qb, _ = np.linalg.qr(B)
            C = Qb.conj().T @ (half[:, None] * Qb)
            _, S = np.linalg.eigh(C)
            V[:, idx] = Qb @ S
    for i in range(N):
        j = int(np.argmax(np.abs(V[:, i])))
        V[:, i] *= np.conj(V[j, i]) / abs(V[j, i])
        V[:, i] /= np.linalg.norm(V[:, i])
    return [(complex(ph[i]), TorusPhaseState(N, V[:, i].copy())) for i in range(N)]


def smooth_half_cutoff(N, width=0.1):
    """Partition of unity (p, 1-p): cosine-ramped plateau of half the torus
    centered at x = 0, ramp width as given."""
    x = np.arange(N) / N

    def step(u):
        return np.where(u <= 0, 0.0, np.where(u >= 1, 1.0, 0.5 * (1 - np.cos(np.pi * np.clip(u, 0, 1)))))

    d = np.minimum(np.abs(x), 1.0 - np.abs(x))
    p0 = 1.0 - step((d - (0.25 - width)) / width)
    return p0, 1.0 - p0


def partition_product_norm(Q, partition, word):
    """Operator norm of pi_{a_{M-1}}(M-1) ... pi_{a_0}(0) with
    pi_a(t) = U^{-t} diag(partition[a]) U^t."""
    if len(word) < 1:
        raise ValueError("need a nonempty word")
    parts = [np.asarray(p, dtype=float) for p in partition]
    total = np.zeros(Q.N)
    for p in parts:
        if len(p) != Q.N:
            raise NumericalSignal("bad-partition", "cutoff has wrong length")
        if p.min() < -1e-10 or p.max() > 1.0 + 1e-10:
            raise NumericalSignal("bad-partition", "cutoff values outside [0, 1]")
        total += p
    if float(np.abs(total - 1.0).max()) > 1e-10:
        raise NumericalSignal("bad-partition", "cutoffs do not sum to identity")
    B = np.diag(parts[word[0]]).astype(complex)
    for t in range(1, len(word)):
        B = parts[word[t]][:, None] * (Q.U @ B)
    return float(np.linalg.svd(B, compute_uv=False)[0])
