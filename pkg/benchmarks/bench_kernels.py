"""Timing comparison of the compiled kernels against their numpy fallbacks.

Run as a script:

    python3 benchmarks/bench_kernels.py

The compiled path must be available; set SEMICLAB_NO_NUMBA=1 to check the
fallback selection instead (this script then reports fallback timings twice).
"""

import math
import time

import numpy as np

from semiclab import _kernels, catmap, dynamics, lattice, torus


def _best_of(fn, repeats=3):
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_l4(m=325, n_states=2000, seed=9):
    shell = lattice.enumerate_shell(m, 2)
    rng = np.random.default_rng(seed)
    s = len(shell)
    C = rng.standard_normal((n_states, s)) + 1j * rng.standard_normal((n_states, s))
    C /= (2 * math.pi) * np.linalg.norm(C, axis=1, keepdims=True)
    i_idx, j_idx, starts = torus._pair_groups(shell)
    fast = lambda: _kernels.l4_moment_sums(C, i_idx, j_idx, starts)
    slow = lambda: _kernels.l4_moment_sums_np(C, i_idx, j_idx, starts)
    fast()  # compile before timing
    tf, vf = _best_of(fast)
    ts, vs = _best_of(slow)
    assert np.allclose(vf, vs, atol=1e-13)
    return "l4_moment_sums", f"shell m={m} ({s} vecs) x {n_states} states", tf, ts


def bench_bowen(samples=20000, n_bases=256, T=12, seed=5):
    A = catmap.CatMap(2, 1, 1, 1)
    mu = dynamics.uniform_measure(samples, seed)
    orbits = dynamics._orbit_array(mu.points, A, T)
    base_idx = np.arange(n_bases, dtype=np.int64)
    fast = lambda: _kernels.bowen_masses(orbits, mu.weights, base_idx, 0.05)
    slow = lambda: _kernels.bowen_masses_np(orbits, mu.weights, base_idx, 0.05)
    fast()
    tf, vf = _best_of(fast)
    ts, vs = _best_of(slow)
    assert np.allclose(vf, vs, atol=1e-14)
    return "bowen_masses", f"{samples} points, {n_bases} bases, T={T}", tf, ts


def bench_husimi(N=1008, G=64):
    A = catmap.CatMap(2, 1, 1, 1)
    state = catmap.scarred_state(A, N)
    amps = np.asarray(state.amplitudes, complex)
    fast = lambda: _kernels.husimi_grid(amps, G)
    slow = lambda: _kernels.husimi_grid_np(amps, G)
    fast()
    tf, vf = _best_of(fast)
    ts, vs = _best_of(slow)
    assert np.allclose(vf, vs, atol=1e-12)
    return "husimi_grid", f"N={N}, grid {G}x{G}", tf, ts


def main():
    print(f"compiled path active: {_kernels.USE_NUMBA}")
    print(f"{'kernel':18s} {'case':42s} {'fast':>9s} {'numpy':>9s} {'speedup':>8s}")
    for bench in (bench_l4, bench_bowen, bench_husimi):
        name, case, tf, ts = bench()
        print(f"{name:18s} {case:42s} {tf*1e3:8.2f}ms {ts*1e3:8.2f}ms {ts/tf:7.1f}x")


if __name__ == "__main__":
    main()
