"""Acceptance runs: every registered experiment at its full default config.

Each test prints one `[check N] PASS/FAIL` line (visible under `pytest -s`)
and asserts the report's pass flag at the experiment's stated tolerances.
"""

from semiclab import experiments


def _run_check(n, tmp_path):
    name = experiments.CRITERIA[n]
    report = experiments.run_experiment(name, {}, str(tmp_path))
    verdict = "PASS" if report["pass"] else "FAIL"
    print(f"[check {n:2d}] {verdict} {name} ({report['wall_time_s']:.2f}s)")
    return report


def test_registry_covers_all_checks():
    assert sorted(experiments.CRITERIA) == list(range(1, 13))
    assert sorted(set(experiments.CRITERIA.values())) == experiments.experiment_names()
    for n, name in experiments.CRITERIA.items():
        assert n in experiments.REGISTRY[name].criteria
    for name, exp in experiments.REGISTRY.items():
        assert exp.criteria == tuple(k for k, v in experiments.CRITERIA.items() if v == name)


def test_check_01_torus_l4_bound(tmp_path):
    report = _run_check(1, tmp_path)
    assert report["pass"], report["outputs"]


def test_check_02_lattice_pairs_and_arcs(tmp_path):
    report = _run_check(2, tmp_path)
    assert report["pass"], report["outputs"]


def test_check_03_variance_decay_rate(tmp_path):
    report = _run_check(3, tmp_path)
    assert report["pass"], report["outputs"]


def test_check_04_torus_egorov_exact(tmp_path):
    report = _run_check(4, tmp_path)
    assert report["pass"], report["outputs"]


def test_check_05_weyl_counting(tmp_path):
    report = _run_check(5, tmp_path)
    assert report["pass"], report["outputs"]


def test_check_06_sphere_concentration(tmp_path):
    report = _run_check(6, tmp_path)
    assert report["pass"], report["outputs"]


def test_check_07_band_spectra_vs_radon(tmp_path):
    report = _run_check(7, tmp_path)
    assert report["pass"], report["outputs"]


def test_check_08_catmap_egorov_periods(tmp_path):
    report = _run_check(8, tmp_path)
    assert report["pass"], report["outputs"]


def test_check_09_scar_mass_band(tmp_path):
    # scarred-state origin masses at the listed N all measure below the
    # required band, so this check currently fails; the band is asserted
    # as stated rather than widened to fit the measurements
    report = _run_check(9, tmp_path)
    assert report["pass"], report["outputs"]


def test_check_10_entropy_estimates(tmp_path):
    report = _run_check(10, tmp_path)
    assert report["pass"], report["outputs"]


def test_check_11_pressure_roots(tmp_path):
    report = _run_check(11, tmp_path)
    assert report["pass"], report["outputs"]


def test_check_12_partition_decay(tmp_path):
    report = _run_check(12, tmp_path)
    assert report["pass"], report["outputs"]
