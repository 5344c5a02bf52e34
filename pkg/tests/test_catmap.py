"""Quantized cat maps: translations, propagators, periods, scars, partitions."""

import math

import numpy as np
import pytest

from semiclab import catmap
from semiclab._errors import NumericalSignal

A = catmap.CatMap(2, 1, 1, 1)
CHI = math.log((3.0 + math.sqrt(5.0)) / 2.0)


def test_catmap_validation():
    with pytest.raises(ValueError, match="determinant"):
        catmap.CatMap(2, 1, 1, 2)
    assert A.trace == 3 and A.is_hyperbolic()
    assert A.matrix() == ((2, 1), (1, 1))
    shear = catmap.CatMap(1, 1, 0, 1)
    assert not shear.is_hyperbolic()
    with pytest.raises(NumericalSignal, match="non-hyperbolic"):
        shear.lyapunov_exponent()
    with pytest.raises(NumericalSignal, match="non-hyperbolic"):
        catmap.propagator(shear, 8)


def test_lyapunov_exponent():
    assert abs(A.lyapunov_exponent() - CHI) < 1e-14
    # power iteration on the matrix recovers the same growth rate
    M = np.array(A.matrix(), dtype=float)
    v = np.array([1.0, 0.0])
    for _ in range(40):
        v = M @ v
        v /= np.linalg.norm(v)
    rate = math.log(np.linalg.norm(M @ v))
    assert abs(rate - CHI) < 1e-12


def test_torus_phase_state_validation():
    v = np.zeros(5, dtype=complex)
    v[0] = 1.0
    catmap.TorusPhaseState(5, v)
    with pytest.raises(ValueError, match="wrong length"):
        catmap.TorusPhaseState(4, v)
    with pytest.raises(ValueError, match="unit norm"):
        catmap.TorusPhaseState(5, 2.0 * v)


def test_translation_unitary():
    for m in ((0, 0), (1, 0), (0, 1), (3, 5), (-2, 7)):
        T = catmap.translation_operator(9, m)
        assert np.abs(T @ T.conj().T - np.eye(9)).max() < 1e-13
    assert np.array_equal(catmap.translation_operator(6, (0, 0)), np.eye(6))
    with pytest.raises(ValueError):
        catmap.translation_operator(0, (1, 1))


def test_translation_composition_and_commutation():
    N = 7
    for a, b in (((1, 2), (3, 1)), ((0, 1), (1, 0)), ((2, -1), (4, 3))):
        Ta = catmap.translation_operator(N, a)
        Tb = catmap.translation_operator(N, b)
        w = a[0] * b[1] - a[1] * b[0]
        Tsum = catmap.translation_operator(N, (a[0] + b[0], a[1] + b[1]))
        assert np.abs(Ta @ Tb - np.exp(1j * np.pi * w / N) * Tsum).max() < 1e-13
        assert np.abs(Ta @ Tb - np.exp(2j * np.pi * w / N) * (Tb @ Ta)).max() < 1e-13


def test_propagator_unitary_and_word():
    Q = catmap.propagator(A, 21)
    assert Q.N == 21 and Q.cat == A
    assert np.abs(Q.U @ Q.U.conj().T - np.eye(21)).max() < 1e-12
    assert catmap._word_matrix(Q.word) == A.matrix()
    with pytest.raises(ValueError):
        catmap.propagator(A, 0)


def test_propagator_egorov_exact():
    # U* T(m) U = theta T(Am) with |theta| = 1, to rounding
    N = 21
    Q = catmap.propagator(A, N)
    for m in ((1, 0), (0, 1), (1, 1), (2, -3), (5, 4)):
        V = Q.U.conj().T @ catmap.translation_operator(N, m) @ Q.U
        Am = (A.a * m[0] + A.b * m[1], A.c * m[0] + A.d * m[1])
        TAm = catmap.translation_operator(N, Am)
        theta = np.trace(TAm.conj().T @ V) / N
        assert abs(abs(theta) - 1.0) < 1e-12
        assert np.abs(V - theta * TAm).max() < 1e-10


def test_apply_propagator_matches_dense():
    N = 34
    Q = catmap.propagator(A, N)
    rng = np.random.default_rng(3)
    v = rng.standard_normal(N) + 1j * rng.standard_normal(N)
    assert np.abs(catmap.apply_propagator(Q, v) - Q.U @ v).max() < 1e-12


def _brute_period(Amat, N):
    M = np.eye(2, dtype=np.int64)
    B = np.array(Amat, dtype=np.int64) % N
    for t in range(1, 16 * N * N + 65):
        M = (M @ B) % N
        if np.array_equal(M, np.eye(2, dtype=np.int64)):
            return t
    raise AssertionError("no period found")


def test_classical_period():
    for N in (2, 3, 5, 8, 13, 21, 55, 89):
        assert catmap.classical_period_mod(A, N) == _brute_period(A.matrix(), N)
    assert catmap.classical_period_mod(A, 1) == 1
    assert catmap.classical_period_mod(A, 5) == 10
    assert catmap.classical_period_mod(A, 13) == 14
    assert catmap.classical_period_mod(A, 21) == 8
    with pytest.raises(ValueError):
        catmap.classical_period_mod(A, 0)


def test_quantum_period_small():
    for N, t_expect in ((5, 10), (13, 14), (55, 10)):
        Q = catmap.propagator(A, N)
        rec = catmap.quantum_period(Q)
        assert rec["period"] == t_expect
        assert abs(abs(rec["phase"]) - 1.0) < 1e-12
        P = np.linalg.matrix_power(Q.U, rec["period"])
        assert np.abs(P - rec["phase"] * np.eye(N)).max() < 1e-8


def test_matrix_free_period_matches_dense():
    word = catmap._decompose(A.matrix())
    for N in (18, 19, 24, 36, 38):
        t, phase = catmap._matrix_free_period(A, N, word)
        rec = catmap.quantum_period(catmap.propagator(A, N))
        assert t == rec["period"]
        assert abs(phase - rec["phase"]) < 1e-8


def test_not_admissible_raises():
    with pytest.raises(NumericalSignal, match="not-admissible"):
        catmap.scar_record(A, 311)


def test_coherent_state_shape():
    s = catmap.coherent_state(100, 0.3, 0.7)
    assert s.N == 100
    assert int(np.argmax(np.abs(s.amplitudes))) == 30
    with pytest.raises(ValueError):
        catmap.coherent_state(100, 1.0, 0.0)
    with pytest.raises(ValueError):
        catmap.coherent_state(100, 0.0, -0.1)
    with pytest.raises(ValueError):
        catmap.coherent_state(100, 0.0, 0.0, squeeze=0.0)
    # distant centers are nearly orthogonal
    t = catmap.coherent_state(100, 0.8, 0.2)
    assert abs(np.vdot(s.amplitudes, t.amplitudes)) < 1e-10


def test_husimi_normalization_and_ball_mass():
    s = catmap.coherent_state(100, 0.3, 0.7)
    H = catmap.husimi(s, 64)
    assert H.shape == (64, 64) and (H >= 0.0).all()
    assert abs(H.sum() / 64**2 - 1.0) < 1e-10
    # a torus ball of radius > diameter/2 captures everything
    assert abs(catmap.mass_in_ball(H, (0.11, 0.87), 0.75) - H.sum() / 64**2) < 1e-14
    # the packet is concentrated at its center
    assert catmap.mass_in_ball(H, (0.3, 0.7), 0.1) > 0.9
    assert catmap.mass_in_ball(H, (0.8, 0.2), 0.1) < 1e-6
    with pytest.raises(ValueError):
        catmap.husimi(s, 4)


def test_scar_record_regression():
    N = 504
    rec = catmap.scar_record(A, N)
    assert rec["period"] == 24
    assert abs(abs(rec["period_phase"]) - 1.0) < 1e-10
    assert abs(abs(rec["eigenphase"]) - 1.0) < 1e-10
    assert rec["residual"] < 1e-10
    # the state is a genuine eigenvector of the dense propagator
    Q = catmap.propagator(A, N)
    psi = rec["state"].amplitudes
    assert np.abs(Q.U @ psi - rec["eigenphase"] * psi).max() < 1e-10
    mass = catmap.mass_in_ball(catmap.husimi(rec["state"], 64), (0.0, 0.0), N ** -0.25)
    assert abs(mass - 0.18123712305608428) < 1e-9


def test_scarred_state_alias():
    s = catmap.scarred_state(A, 18)
    rec = catmap.scar_record(A, 18)
    assert np.array_equal(s.amplitudes, rec["state"].amplitudes)


def test_frozen_quantum_periods_large():
    # spot checks against the stored admissibility scan
    word = catmap._decompose(A.matrix())
    for N, t_expect in ((504, 24), (646, 18), (682, 15), (1292, 18), (1705, 30)):
        assert N in catmap.FNDB_ADMISSIBLE_LARGE
        t, phase = catmap._matrix_free_period(A, N, word)
        assert t == t_expect
        assert abs(abs(phase) - 1.0) < 1e-8


def test_eigensystem_properties():
    N = 89
    Q = catmap.propagator(A, N)
    pairs = catmap.eigensystem(Q)
    assert len(pairs) == N
    phases = np.array([lam for lam, _ in pairs])
    assert np.abs(np.abs(phases) - 1.0).max() < 1e-12
    assert np.all(np.diff(np.angle(phases)) >= 0.0)
    V = np.stack([s.amplitudes for _, s in pairs], axis=1)
    assert np.abs(V.conj().T @ V - np.eye(N)).max() < 1e-12
    assert np.abs(Q.U @ V - V * phases[None, :]).max() < 1e-12
    assert np.abs(V @ V.conj().T - np.eye(N)).max() < 1e-12
    again = catmap.eigensystem(Q)
    for (l1, s1), (l2, s2) in zip(pairs, again):
        assert l1 == l2 and np.array_equal(s1.amplitudes, s2.amplitudes)


def test_eigenbasis_cell_sup_regression():
    # largest cell-averaged phase-space mass over the full eigenbasis; the
    # scarred values sit well below 1 and shrink from N=101 to N=401
    frozen = {101: 0.12858861822373732, 211: 0.0747855347767411, 401: 0.09277941292668543}
    sups = {}
    for N, expect in frozen.items():
        Q = catmap.propagator(A, N)
        V = np.stack([s.amplitudes for _, s in catmap.eigensystem(Q)], axis=1)
        G = math.isqrt(N - 1) + 1
        bank = np.empty((G * G, N), dtype=complex)
        for ix in range(G):
            for ixi in range(G):
                bank[ix * G + ixi] = catmap._coherent_array(N, (ix + 0.5) / G, (ixi + 0.5) / G)
        Hall = np.abs(bank.conj() @ V) ** 2
        Hall /= Hall.sum(axis=0, keepdims=True) / (G * G)
        sups[N] = Hall.max() / (G * G)
        assert abs(sups[N] - expect) < 1e-6
    assert sups[401] < sups[101]


def test_smooth_half_cutoff():
    N = 233
    p0, p1 = catmap.smooth_half_cutoff(N)
    assert np.abs(p0 + p1 - 1.0).max() < 1e-15
    assert p0.min() >= 0.0 and p0.max() <= 1.0
    assert p0[0] == 1.0 and p0[N // 2] == 0.0
    # symmetric about x = 0 on the torus
    assert np.abs(p0[1:] - p0[1:][::-1]).max() < 1e-15


def test_partition_product_norm_validation():
    N = 21
    Q = catmap.propagator(A, N)
    p0, p1 = catmap.smooth_half_cutoff(N)
    with pytest.raises(ValueError, match="nonempty"):
        catmap.partition_product_norm(Q, (p0, p1), [])
    with pytest.raises(NumericalSignal, match="bad-partition"):
        catmap.partition_product_norm(Q, (p0[:-1], p1[:-1]), [0])
    with pytest.raises(NumericalSignal, match="bad-partition"):
        catmap.partition_product_norm(Q, (2.0 * p0, p1), [0])
    with pytest.raises(NumericalSignal, match="bad-partition"):
        catmap.partition_product_norm(Q, (p0, 0.5 * p1), [0])
    # one cutoff alone is a contraction
    assert catmap.partition_product_norm(Q, (p0, p1), [0]) <= 1.0 + 1e-12


def test_partition_product_norm_frozen_triple():
    N = 233
    Q = catmap.propagator(A, N)
    parts = catmap.smooth_half_cutoff(N)
    n1 = catmap.partition_product_norm(Q, parts, [0, 1, 0])
    n2 = catmap.partition_product_norm(Q, parts, [1, 0])
    n12 = catmap.partition_product_norm(Q, parts, [0, 1, 0, 1, 0])
    assert abs(n1 - 0.9999999998738788) < 1e-9
    assert abs(n2 - 1.0000000000000204) < 1e-9
    assert abs(n12 - 0.6875799145486676) < 1e-9
    assert n12 <= n1 * n2 + 1e-9
