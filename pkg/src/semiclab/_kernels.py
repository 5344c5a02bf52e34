"""Hot numerical kernels with a numba fast path and a pure-numpy fallback.

Set SEMICLAB_NO_NUMBA=1 to force the numpy implementations (results are
identical up to floating-point roundoff; see benchmarks/bench_kernels.py
for the speed comparison). Each kernel exposes _np / _nb variants for
direct testing; the public names dispatch on the flag at call time.
"""

import math
import os

import numpy as np

USE_NUMBA = os.environ.get("SEMICLAB_NO_NUMBA", "") != "1"
if USE_NUMBA:
    try:
        from numba import njit, prange
    except ImportError:
        USE_NUMBA = False


# ---------------------------------------------------------------- Bowen balls

def bowen_masses_np(orbits, weights, base_idx, eps):
    """Mass of each Bowen sup-ball: orbits (T+1, P, 2), bases index into P."""
    out = np.empty(len(base_idx))
    for i, bi in enumerate(base_idx):
        ref = orbits[:, bi, :]
        d = np.abs(orbits - ref[:, None, :])
        d = np.minimum(d, 1.0 - d)
        chb = np.maximum(d[..., 0], d[..., 1])
        inball = (chb <= eps).all(axis=0)
        out[i] = weights[inball].sum()
    return out


if USE_NUMBA:

    @njit(cache=True, parallel=True)
    def _bowen_masses_jit(orbits, weights, base_idx, eps):
        T1, P, _ = orbits.shape
        B = base_idx.shape[0]
        out = np.zeros(B)
        for i in prange(B):
            bi = base_idx[i]
            acc = 0.0
            for p in range(P):
                ok = True
                for t in range(T1):
                    dx = abs(orbits[t, p, 0] - orbits[t, bi, 0])
                    if dx > 0.5:
                        dx = 1.0 - dx
                    if dx > eps:
                        ok = False
                        break
                    dy = abs(orbits[t, p, 1] - orbits[t, bi, 1])
                    if dy > 0.5:
                        dy = 1.0 - dy
                    if dy > eps:
                        ok = False
                        break
                if ok:
                    acc += weights[p]
            out[i] = acc
        return out

    def bowen_masses_nb(orbits, weights, base_idx, eps):
        return _bowen_masses_jit(
            np.ascontiguousarray(orbits),
            np.ascontiguousarray(weights),
            np.ascontiguousarray(base_idx, dtype=np.int64),
            float(eps),
        )


def bowen_masses(orbits, weights, base_idx, eps):
    if USE_NUMBA:
        return bowen_masses_nb(orbits, weights, base_idx, eps)
    return bowen_masses_np(orbits, weights, base_idx, eps)


# ------------------------------------------------- batched L4 moment sums

def l4_moment_sums_np(C, i_idx, j_idx, starts):
    """For each state row of C: sum over difference-groups of |sum c_i conj(c_j)|^2.

    (i_idx, j_idx) enumerate all shell index pairs sorted so that pairs with
    equal difference vector are contiguous; starts marks group boundaries.
    """
    P = C[:, i_idx] * C[:, j_idx].conj()
    moments = np.add.reduceat(P, starts, axis=1)
    return (np.abs(moments) ** 2).sum(axis=1)


if USE_NUMBA:

    @njit(cache=True, parallel=True)
    def _l4_moment_sums_jit(C, i_idx, j_idx, starts):
        B = C.shape[0]
        npairs = i_idx.shape[0]
        G = starts.shape[0]
        out = np.zeros(B)
        for b in prange(B):
            acc = 0.0
            for g in range(G):
                lo = starts[g]
                hi = npairs if g == G - 1 else starts[g + 1]
                mom = 0.0 + 0.0j
                for q in range(lo, hi):
                    mom += C[b, i_idx[q]] * np.conj(C[b, j_idx[q]])
                acc += mom.real * mom.real + mom.imag * mom.imag
            out[b] = acc
        return out

    def l4_moment_sums_nb(C, i_idx, j_idx, starts):
        return _l4_moment_sums_jit(
            np.ascontiguousarray(C),
            np.ascontiguousarray(i_idx, dtype=np.int64),
            np.ascontiguousarray(j_idx, dtype=np.int64),
            np.ascontiguousarray(starts, dtype=np.int64),
        )


def l4_moment_sums(C, i_idx, j_idx, starts):
    if USE_NUMBA:
        return l4_moment_sums_nb(C, i_idx, j_idx, starts)
    return l4_moment_sums_np(C, i_idx, j_idx, starts)


# ------------------------------------------------------------- Husimi grids

def _theta_width(N, squeeze):
    # periodization window: dropped terms are below exp(-40) ~ 1e-18
    return int(math.ceil(math.sqrt(40.0 / (math.pi * N * squeeze)))) + 2


def husimi_grid_np(state, G, squeeze=1.0):
    """|<coherent(x_a, xi_b) | state>|^2 on cell centers; rows index x."""
    N = len(state)
    W = _theta_width(N, squeeze)
    ws = np.arange(-W, W + 1)
    xs = (np.arange(G) + 0.5) / G
    j = np.arange(N)
    H = np.empty((G, G))
    for a in range(G):
        t = j / N - xs[a]
        R = np.exp(-math.pi * N * squeeze * (t[:, None] - ws[None, :]) ** 2)
        P1 = np.exp(2j * math.pi * N * np.outer(xs, t))          # (G, N)
        P2 = np.exp(-2j * math.pi * N * np.outer(xs, ws))        # (G, 2W+1)
        Q = R @ P2.T                                             # (N, G)
        coh_conj = P1.conj() * Q.T.conj()                        # (G, N)
        ovl = coh_conj @ state
        norms2 = (np.abs(Q) ** 2).sum(axis=0)
        H[a] = (np.abs(ovl) ** 2) / norms2
    return H / (H.sum() / G**2)


if USE_NUMBA:

    @njit(cache=True, parallel=True)
    def _husimi_grid_jit(state, G, squeeze, W):
        # coh(a,b,j) factors as (global phase) * E1[b,j] * sum_k amp[j,k] E2[b,k];
        # the global phase has modulus one, so it drops out of |ovl|^2 / nrm2
        N = state.shape[0]
        K = 2 * W + 1
        E1c = np.empty((G, N), dtype=np.complex128)
        for b in range(G):
            xib = (b + 0.5) / G
            for j in range(N):
                ph = 2.0 * math.pi * xib * j
                E1c[b, j] = complex(math.cos(ph), -math.sin(ph))
        E2 = np.empty((G, K), dtype=np.complex128)
        for b in range(G):
            xib = (b + 0.5) / G
            for k in range(K):
                ph = 2.0 * math.pi * N * xib * (k - W)
                E2[b, k] = complex(math.cos(ph), -math.sin(ph))
        H = np.empty((G, G))
        for a in prange(G):
            xa = (a + 0.5) / G
            amp = np.empty((N, K))
            for j in range(N):
                t = j / N - xa
                for k in range(K):
                    v = t - (k - W)
                    amp[j, k] = math.exp(-math.pi * N * squeeze * v * v)
            for b in range(G):
                ovl = 0.0 + 0.0j
                nrm2 = 0.0
                for j in range(N):
                    inner = 0.0 + 0.0j
                    for k in range(K):
                        inner += amp[j, k] * E2[b, k]
                    nrm2 += inner.real * inner.real + inner.imag * inner.imag
                    ovl += E1c[b, j] * np.conj(inner) * state[j]
                H[a, b] = (ovl.real * ovl.real + ovl.imag * ovl.imag) / nrm2
        return H

    def husimi_grid_nb(state, G, squeeze=1.0):
        N = len(state)
        W = _theta_width(N, squeeze)
        H = _husimi_grid_jit(
            np.ascontiguousarray(state, dtype=np.complex128), G, float(squeeze), W
        )
        return H / (H.sum() / G**2)


def husimi_grid(state, G, squeeze=1.0):
    if USE_NUMBA:
        return husimi_grid_nb(state, G, squeeze)
    return husimi_grid_np(state, G, squeeze)
