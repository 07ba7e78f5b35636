"""Periodic-cell relaxation, cluster detection and exports."""

import math

import numpy as np
import pytest

from repulse import simulate as sim
from repulse.interval import Interval
from repulse.potential import lattice_energy


def _config(positions, L, alpha):
    p = np.sort(np.asarray(positions, dtype=float))
    return sim.Configuration(
        positions=p, L=L, alpha=alpha, rho=len(p) / L, seed=None,
        energy_per_particle=0.0, converged=True, grad_norm=0.0)


def test_two_particle_energy_dominant_pair():
    L = 60.0
    cfg = _config([0.0, 30.0], L, 4)
    e = sim.periodic_energy(cfg, 4)
    f_half = 1.0 / (1.0 + 30.0 ** 4)
    assert abs(e - 2.0 * f_half) < f_half


def test_translation_invariance():
    # invariant up to the image-window boundary: wrapped pairs see the
    # k-shell window shifted by one period, which perturbs only f at ~KL
    rng = np.random.default_rng(3)
    x = rng.uniform(0, 30, 40)
    a = sim.periodic_energy(_config(x, 30.0, 4), 3)
    b = sim.periodic_energy(_config((x + 7.0) % 30.0, 30.0, 4), 3)
    assert abs(a - b) < 1e-8
    a32 = sim.periodic_energy(_config(x, 30.0, 4), 32)
    b32 = sim.periodic_energy(_config((x + 7.0) % 30.0, 30.0, 4), 32)
    assert abs(a32 - b32) < 1e-12


def test_theorem_configuration_shape(ctx4):
    s4 = ctx4.s_alpha.mid
    cfg = sim.theorem_configuration(4, 1, 8, s_alpha=s4)
    assert cfg.count == 8
    gaps = np.diff(cfg.positions)
    assert np.allclose(gaps, s4)
    cfg3 = sim.theorem_configuration(4, 3, 8, s_alpha=s4)
    assert cfg3.count == 24


def test_theorem_energy_matches_lattice_sum(ctx4):
    # per-particle periodic energy relates to the lattice sum through
    # E/rho + f(0)/rho = sum_n t f(tn) at t = spacing
    s4 = ctx4.s_alpha.mid
    for n in (1, 3):
        cfg = sim.theorem_configuration(4, n, 8, s_alpha=s4, image_cutoff=64)
        lhs = cfg.energy_per_particle / cfg.rho + 1.0 / cfg.rho
        lat = lattice_energy(4, Interval(s4), 64).total
        assert abs(lhs - lat.mid) < 1e-7


def test_theorem_perturbation_probe(ctx4):
    th = sim.theorem_configuration(4, 2, 8, s_alpha=ctx4.s_alpha.mid, image_cutoff=16)
    base = sim.periodic_energy(th, 16)
    for i in range(th.count):
        for dx in (0.05, -0.05):
            p = th.positions.copy()
            p[i] = (p[i] + dx) % th.L
            probe = _config(p, th.L, 4)
            assert sim.periodic_energy(probe, 16) >= base


def test_relax_two_particles_antipodal():
    cfg = sim.relax(4, 0.02, 100.0, seed=1, iters=10000, gtol=1e-12)
    assert cfg.count == 2
    sep = cfg.positions[1] - cfg.positions[0]
    assert abs(sep - 50.0) < 0.5
    assert cfg.converged


def test_relax_density_bookkeeping():
    cfg = sim.relax(4, 1.5, 10.0, seed=2, iters=50)
    assert cfg.count == 15
    assert int(round(cfg.rho * cfg.L)) == 15
    assert np.all(np.diff(cfg.positions) >= 0)
    assert cfg.positions[0] >= 0.0 and cfg.positions[-1] < cfg.L


def test_relax_seed_determinism():
    a = sim.relax(4, 2.0, 6.0, seed=9, iters=400)
    b = sim.relax(4, 2.0, 6.0, seed=9, iters=400)
    assert np.array_equal(a.positions, b.positions)
    assert a.energy_per_particle == b.energy_per_particle


def test_relax_energy_never_increases():
    rng = np.random.default_rng(4)
    x = rng.uniform(0, 6.0, 12)
    start = sim.periodic_energy(_config(x, 6.0, 4), 4)
    cfg = sim.relax(4, 2.0, 6.0, seed=4, iters=2000)
    assert cfg.energy_per_particle <= start


def test_detect_clusters_lattice(ctx4):
    s4 = ctx4.s_alpha.mid
    cfg = sim.theorem_configuration(4, 3, 8, s_alpha=s4)
    rep = sim.detect_clusters(cfg, s4 / 2.0)
    assert len(rep.clusters) == 8
    assert all(c == 3 for _, c in rep.clusters)
    assert abs(rep.mean_spacing - s4) < 1e-12
    assert rep.spacing_cv == 0.0
    assert rep.count_histogram == {3: 8}


def test_detect_clusters_threshold_splits_everything():
    cfg = _config(np.arange(10) * 1.0, 10.0, 4)
    rep = sim.detect_clusters(cfg, 0.5)
    assert len(rep.clusters) == 10
    assert all(c == 1 for _, c in rep.clusters)


def test_detect_clusters_single_cluster():
    cfg = _config([5.0, 5.01, 5.02], 10.0, 4)
    rep = sim.detect_clusters(cfg, 1.0)
    assert len(rep.clusters) == 1
    assert rep.mean_spacing is None and rep.spacing_cv is None


def test_detect_clusters_wraparound():
    cfg = _config([0.05, 9.95, 5.0], 10.0, 4)
    rep = sim.detect_clusters(cfg, 1.0)
    assert len(rep.clusters) == 2
    counts = sorted(c for _, c in rep.clusters)
    assert counts == [1, 2]
    # the wrapped pair's center sits at the seam
    cluster2 = next(c for c, n in rep.clusters if n == 2)
    assert min(cluster2, 10.0 - cluster2) < 0.1


def test_export_roundtrip(tmp_path, ctx4):
    cfg = sim.theorem_configuration(4, 2, 6, s_alpha=ctx4.s_alpha.mid)
    rep = sim.detect_clusters(cfg, 0.7)
    csv = tmp_path / "pos.csv"
    svg = tmp_path / "pos.svg"
    sim.export(cfg, rep, csv, svg)
    lines = csv.read_text().strip().splitlines()
    assert lines[0] == "position"
    parsed = np.array([float(s) for s in lines[1:]])
    assert np.array_equal(parsed, cfg.positions)
    body = svg.read_text()
    assert body.count("<circle") == len(rep.clusters)
    assert 'width="900"' in body and 'height="120"' in body


def test_export_empty_configuration(tmp_path):
    cfg = _config([], 10.0, 4)
    rep = sim.detect_clusters(cfg, 1.0)
    csv = tmp_path / "empty.csv"
    svg = tmp_path / "empty.svg"
    sim.export(cfg, rep, csv, svg)
    assert csv.read_text() == "position\n"
    body = svg.read_text()
    assert "<svg" in body and "<circle" not in body


def test_relax_rejects_bad_arguments():
    with pytest.raises(ValueError):
        sim.relax(5, 1.0, 10.0)
    with pytest.raises(ValueError):
        sim.relax(4, 1.0, 10.0, iters=0)
    with pytest.raises(ValueError):
        sim.periodic_energy(_config([1.0], 10.0, 4), 0)
