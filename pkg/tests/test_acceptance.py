"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

import itertools
import time

import numpy as np
from scipy.stats import spearmanr

from sdofkit import alignment, chansim, matcore, precoder, region, verifier
from sdofkit.chansim import Geometry, Scenario, Sweep
from sdofkit.errors import ConstructionDeficit, DegenerateDraw, DegenerateInput
from sdofkit.region import AntennaConfig

from conftest import cstd
from test_matcore import check_gsvd_invariants, relative_residual

EX1 = AntennaConfig(6, 6, 3, 6, 6)
EX2 = AntennaConfig(6, 6, 5, 4, 5)
P_GRID = (1e6, 1e8, 1e10, 1e12)


def report(num, description, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"{status}  criterion {num}: {description}{suffix}")
    assert ok, f"criterion {num}: {description}{suffix}"


def test_criterion_1_example_regression():
    t0 = time.perf_counter()
    ok = (
        region.subset_dims(EX1).as_tuple() == (0, 0, 0, 3, 0, 3)
        and region.su1(EX1) == 3
        and region.subset_dims(EX2).as_tuple() == (0, 1, 0, 1, 2, 2)
        and region.su1(EX2) == 3
        and [tuple(p) for p in region.boundary(EX2).strict] == [(3, 3), (2, 4)]
    )
    elapsed = time.perf_counter() - t0
    report(1, "worked-example regression, integer exact",
           ok and elapsed < 1.0, f"{elapsed:.3f}s")


def test_criterion_2_closed_form_sweep():
    t0 = time.perf_counter()
    mismatches = 0
    covered = 0
    for tup in itertools.product(range(1, 9), repeat=5):
        cfg = AntennaConfig(*tup)
        cf = region.su1_closed_form(cfg)
        if cf is not None:
            covered += 1
            if cf != region.su1(cfg):
                mismatches += 1
    elapsed = time.perf_counter() - t0
    report(2, "closed-form single-user maximum over the 8^5 sweep",
           mismatches == 0 and elapsed < 10.0,
           f"{covered}/32768 covered, {mismatches} mismatches, {elapsed:.1f}s")


def test_criterion_3_gsvd_suite():
    rng = np.random.default_rng(300)
    worst = 0.0
    for _ in range(200):
        n, m, k = rng.integers(1, 13, size=3)
        a, b = cstd(rng, n, m), cstd(rng, n, k)
        g = matcore.gsvd(a, b)
        check_gsvd_invariants(a, b, g, rtol=1e-10)
        worst = max(worst, relative_residual(a, b, g))
    report(3, "200 random GSVDs: block identities and dimension quadruple",
           worst <= 1e-10, f"worst relative residual {worst:.2e}")


def test_criterion_4_construct_then_verify():
    t0 = time.perf_counter()
    rng = np.random.default_rng(400)
    draws = 0
    flagged = 0
    wrong = 0
    for tup in itertools.product(range(1, 5), repeat=5):
        cfg = AntennaConfig(*tup)
        for target in region.boundary(cfg).strict:
            for _ in range(50):
                draws += 1
                ch = chansim.gaussian_channels(cfg, rng)
                try:
                    pair = precoder.construct(ch, target, power=10.0)
                except (ConstructionDeficit, DegenerateDraw, DegenerateInput):
                    flagged += 1
                    continue
                if tuple(verifier.sdof_of(ch, pair)) != tuple(target):
                    wrong += 1
    elapsed = time.perf_counter() - t0
    success = draws - flagged - wrong
    ok = wrong == 0 and success >= 0.999 * draws and elapsed < 300.0
    report(4, "construct-then-verify over every small config and boundary point",
           ok, f"{success}/{draws} exact, {flagged} flagged, {wrong} wrong, {elapsed:.0f}s")


def test_criterion_5_slope_oracle():
    rng = np.random.default_rng(500)
    checked = 0
    worst = 0.0
    while checked < 20:
        tup = tuple(int(x) for x in rng.integers(1, 5, size=5))
        cfg = AntennaConfig(*tup)
        strict = region.boundary(cfg).strict
        if not strict:
            continue
        target = strict[checked % len(strict)]
        ch = chansim.gaussian_channels(cfg, rng)
        pair = precoder.construct(ch, target, power=1.0)
        s1, s2 = verifier.slope_estimate(ch, pair, P_GRID)
        worst = max(worst, abs(s1 - target.d1), abs(s2 - target.d2))
        checked += 1
    report(5, "rate-slope estimates match 20 boundary targets within 0.1",
           worst <= 0.1, f"worst deviation {worst:.4f}")


def test_criterion_6_distance_trend():
    t0 = time.perf_counter()
    cfg = AntennaConfig(4, 2, 4, 2, 4)
    distances = (350.0, 300.0, 250.0, 200.0, 150.0, 100.0, 50.0, 20.0, 10.0)
    scenario = Scenario(
        config=cfg,
        geometry=Geometry(s1=(distances[0], 0.0), s2=(0.0, 0.0), ring_radius=10.0),
        noise_power_dbm=-60.0,
        power_dbm=0.0,
        trials=1000,
        seed=600,
        sweep=Sweep("s1_s2_distance", distances),
    )
    records = chansim.monte_carlo(scenario, (1, 1))
    xs = [r.x for r in records]
    rho1 = spearmanr(xs, [r.stats.mean_rs1 for r in records]).statistic
    rho2 = spearmanr(xs, [r.stats.mean_rs2 for r in records]).statistic
    elapsed = time.perf_counter() - t0
    ok = rho1 < -0.95 and rho2 > 0.95 and elapsed < 120.0
    report(6, "confidential rate rises and public rate falls as sources approach",
           ok, f"spearman {rho1:+.3f}/{rho2:+.3f}, {elapsed:.0f}s")


def test_criterion_7_region_growth_endpoints():
    expected = {
        1: (1, 1, (1, 0), (0, 1)),
        2: (2, 2, (2, 0), (0, 2)),
        3: (2, 3, (2, 1), (0, 3)),
        4: (2, 4, (2, 2), (0, 4)),
        5: (2, 5, (2, 3), (0, 5)),
        6: (3, 6, (3, 3), (0, 6)),
        7: (3, 7, (3, 4), (0, 7)),
        8: (4, 8, (4, 4), (0, 8)),
    }
    ok = True
    for n2, (su1, su2, e1, e2) in expected.items():
        cfg = AntennaConfig(4, n2, 4, n2, 4)
        reg = region.boundary(cfg)
        ok &= (reg.su1, reg.su2) == (su1, su2)
        ok &= tuple(reg.e1_point) == e1 and tuple(reg.e2_point) == e2
        if reg.strict:  # closed forms agree with the boundary iteration
            ok &= tuple(reg.strict[0]) == e1 and tuple(reg.strict[-1]) == e2
    # full confidential multiplexing despite matching eavesdropper array
    ok &= region.su1(AntennaConfig(4, 8, 4, 8, 4)) == 4
    report(7, "region endpoints for growing public arrays, integer exact", ok)


def test_criterion_8_right_factor_invariance():
    rng = np.random.default_rng(800)
    ch = chansim.gaussian_channels(EX2, rng)
    pair = precoder.construct(ch, (2, 4), power=1.0)
    baseline = tuple(verifier.sdof_of(ch, pair))
    bad = 0
    for _ in range(100):
        out = precoder.randomize(pair, rng)
        if tuple(verifier.sdof_of(ch, out)) != baseline:
            bad += 1
        if not verifier.membership(ch, out).in_ibar:
            bad += 1
    report(8, "achieved pair invariant under 100 random right factors",
           bad == 0, f"{bad} violations")


def test_criterion_9_aligned_space_property():
    rng = np.random.default_rng(900)
    worst = 0.0
    count_bad = 0
    for _ in range(100):
        n, m, k = rng.integers(1, 10, size=3)
        a, b = cstd(rng, n, m), cstd(rng, n, k)
        sp = alignment.aligned_space(a, b)
        g = matcore.gsvd(a, b)
        null_dim = m - min(m, n)
        if sp.independent_count != g.s + null_dim:
            count_bad += 1
        scale = np.linalg.norm(a) + np.linalg.norm(b)
        for _ in range(10):
            ys = cstd(rng, sp.shared_width, 1)
            y1 = cstd(rng, sp.phi1.shape[1] - sp.shared_width, 1)
            y2 = cstd(rng, sp.phi2.shape[1] - sp.shared_width, 1)
            v, w = sp.pair(ys, y1, y2)
            worst = max(worst, np.linalg.norm(a @ v - b @ w) / scale)
    report(9, "aligned-pair space: counts and 10-draw residuals per pair",
           count_bad == 0 and worst <= 1e-10,
           f"{count_bad} count mismatches, worst residual {worst:.2e}")
