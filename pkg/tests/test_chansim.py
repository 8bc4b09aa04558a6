import numpy as np
import pytest
from scipy import stats

from sdofkit import chansim
from sdofkit.chansim import Geometry, Scenario, Sweep
from sdofkit.errors import TargetInfeasible
from sdofkit.region import AntennaConfig

CFG_SMALL = AntennaConfig(4, 2, 4, 2, 4)


def small_geometry(d12=50.0):
    return Geometry(s1=(d12, 0.0), s2=(0.0, 0.0), ring_radius=10.0)


class TestLosChannel:
    def test_unit_distance_unit_magnitude(self, rng):
        m = chansim.los_channel(3, 4, 1.0, 3.5, rng)
        assert np.allclose(np.abs(m), 1.0)

    def test_pathloss_magnitude(self, rng):
        m = chansim.los_channel(2, 5, 10.0, 3.5, rng)
        assert np.allclose(np.abs(m), 10.0 ** -1.75)
        assert np.abs(m[0, 0]) == pytest.approx(0.017782794, rel=1e-6)

    def test_phase_uniform(self, rng):
        m = chansim.los_channel(100, 100, 1.0, 3.5, rng)
        phases = np.angle(m).ravel() % (2 * np.pi)
        p = stats.kstest(phases / (2 * np.pi), "uniform").pvalue
        assert p > 0.01

    def test_rejects_close_range(self, rng):
        with pytest.raises(ValueError):
            chansim.los_channel(2, 2, 0.5, 3.5, rng)


class TestUncertainEve:
    def test_zero_uncertainty_exact(self, rng):
        gbar = np.exp(1j * rng.uniform(0, 2 * np.pi, (3, 4)))
        g = chansim.uncertain_eve_channel(gbar, 0.0, 2.0, 3.5, rng)
        assert np.allclose(g, 2.0 ** -1.75 * gbar)

    def test_mixture_weights(self, rng):
        # weights (0.9535, 0.3015) at alpha = 0.1, before path loss
        gbar = np.ones((200, 200), dtype=complex)
        g = chansim.uncertain_eve_channel(gbar, 0.1, 1.0, 3.5, rng)
        mean = np.mean(g)
        assert abs(mean - 1 / np.sqrt(1.1)) < 5e-3
        var = np.var(g)
        assert abs(var - 0.1 / 1.1) < 5e-3

    def test_large_alpha_limit(self, rng):
        gbar = np.ones((300, 300), dtype=complex)
        g = chansim.uncertain_eve_channel(gbar, 1e9, 1.0, 3.5, rng)
        assert abs(np.var(g) - 1.0) < 2e-2  # per-entry variance -> d**-c


class TestDrawTrial:
    def test_deterministic(self):
        sc = Scenario(config=CFG_SMALL, geometry=small_geometry(), trials=5, seed=9)
        a = chansim.draw_trial(sc, 3)
        b = chansim.draw_trial(sc, 3)
        assert np.array_equal(a.actual.h11, b.actual.h11)
        assert np.array_equal(a.design.g2, b.design.g2)
        c = chansim.draw_trial(sc, 4)
        assert not np.array_equal(a.actual.h11, c.actual.h11)

    def test_gaussian_mode_moments(self):
        sc = Scenario(config=AntennaConfig(8, 8, 8, 8, 8), geometry=None, trials=1, seed=1)
        h = np.concatenate([chansim.draw_trial(sc, i).actual.h11.ravel() for i in range(40)])
        assert abs(np.mean(h)) < 0.03
        assert abs(np.var(h) - 1.0) < 0.05

    def test_full_rank_always(self):
        sc = Scenario(config=CFG_SMALL, geometry=small_geometry(), trials=1, seed=2)
        for trial in range(25):
            chans = chansim.draw_trial(sc, trial)
            assert chans.actual.full_rank() and chans.design.full_rank()

    def test_pathloss_scale_tracks_distance(self):
        sc = Scenario(config=CFG_SMALL, geometry=small_geometry(d12=100.0), trials=1, seed=3)
        chans = chansim.draw_trial(sc, 0)
        # cross link S2 -> D1 spans ~100 m, own link D1 <- S1 at most ~10 m
        assert np.abs(chans.actual.h12).mean() < np.abs(chans.actual.h11).mean() / 10
        # entries of one matrix share a single path loss
        mags = np.abs(chans.actual.h12)
        assert np.allclose(mags, mags[0, 0])

    def test_design_equals_actual_without_uncertainty(self):
        sc = Scenario(config=CFG_SMALL, geometry=small_geometry(), trials=1, seed=4)
        chans = chansim.draw_trial(sc, 0)
        assert np.array_equal(chans.design.g1, chans.actual.g1)

    def test_uncertainty_splits_design_and_actual(self):
        sc = Scenario(config=CFG_SMALL, geometry=small_geometry(), trials=1, seed=4,
                      uncertainty_alpha=0.3)
        chans = chansim.draw_trial(sc, 0)
        assert not np.allclose(chans.design.g1, chans.actual.g1)
        assert np.array_equal(chans.design.h11, chans.actual.h11)


class TestRunPoint:
    def test_infeasible_target(self):
        sc = Scenario(config=CFG_SMALL, geometry=small_geometry(), trials=2, seed=0)
        with pytest.raises(TargetInfeasible):
            chansim.run_point(sc, (4, 4))

    def test_standard_error_scaling(self):
        base = dict(config=CFG_SMALL, geometry=small_geometry(), seed=0)
        small = chansim.run_point(Scenario(trials=60, **base), (1, 1))
        large = chansim.run_point(Scenario(trials=240, **base), (1, 1))
        ratio = small.se_rs1 / large.se_rs1
        assert 1.2 < ratio < 3.5  # expect about sqrt(4) = 2

    def test_failures_counted(self):
        sc = Scenario(config=CFG_SMALL, geometry=small_geometry(), trials=30, seed=0)
        out = chansim.run_point(sc, (1, 1))
        assert out.failures == 0
        assert out.trials == 30


class TestMonteCarlo:
    def test_sweep_records(self):
        sc = Scenario(config=CFG_SMALL, geometry=small_geometry(), trials=25, seed=5,
                      sweep=Sweep("s1_s2_distance", (150.0, 50.0)))
        recs = chansim.monte_carlo(sc, (1, 1))
        assert [r.x for r in recs] == [150.0, 50.0]
        assert all(r.variable == "s1_s2_distance" for r in recs)

    def test_alpha_sweep_degrades_less_with_larger_public_array(self):
        # uncertainty hurts, but the fraction of the secrecy rate lost
        # shrinks as the public arrays grow
        alphas = (0.0, 0.1)
        ge = Geometry(s1=(10.0, 0.0), s2=(0.0, 0.0), ring_radius=10.0)
        rel_drop = {}
        for n2, target in ((2, (1, 1)), (6, (3, 3))):
            cfg = AntennaConfig(4, n2, 4, n2, 4)
            sc = Scenario(config=cfg, geometry=ge, trials=150, seed=11,
                          sweep=Sweep("uncertainty_alpha", alphas))
            recs = chansim.monte_carlo(sc, target)
            clean = recs[0].stats.mean_rs1
            rel_drop[n2] = (clean - recs[1].stats.mean_rs1) / clean
            assert rel_drop[n2] > 0
        assert rel_drop[6] < rel_drop[2]

    def test_csv_output(self, tmp_path):
        sc = Scenario(config=CFG_SMALL, geometry=small_geometry(), trials=10, seed=5,
                      sweep=Sweep("s1_s2_distance", (150.0, 50.0)))
        recs = chansim.monte_carlo(sc, (1, 1))
        path = tmp_path / "curve.csv"
        chansim.write_curve_csv(path, recs)
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "x,mean_rs1,se_rs1,mean_rs2,se_rs2,failures"
        assert len(lines) == 3
