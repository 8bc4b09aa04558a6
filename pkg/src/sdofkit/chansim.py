"""Channel generation and Monte-Carlo secrecy-rate experiments.

Supports plain unit-variance Gaussian channels and a line-of-sight model
with distance path loss and i.i.d. random phases, with the two sources at
fixed planar positions and each receiver dropped on a ring around its own
source.  Eavesdropper channels can carry a mixing-model estimation error,
in which case precoders are designed on the estimate and rates are scored
on the true channel.

Per-trial random streams are derived by hashing (seed, trial index), so
results are reproducible and independent of execution order.
"""

from __future__ import annotations

import csv
import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from . import precoder as pc
from . import region, verifier
from .errors import ConstructionDeficit, DegenerateDraw, TargetInfeasible
from .region import AntennaConfig, SdofPoint

__all__ = [
    "Geometry",
    "Scenario",
    "Sweep",
    "CurveRecord",
    "PointStats",
    "TrialChannels",
    "gaussian_channels",
    "los_channel",
    "uncertain_eve_channel",
    "draw_channels",
    "draw_trial",
    "run_point",
    "monte_carlo",
    "write_curve_csv",
    "CSV_COLUMNS",
]

SWEEP_VARIABLES = ("s1_s2_distance", "uncertainty_alpha", "power_dbm", "noise_power_dbm")


@dataclass(frozen=True)
class Geometry:
    """Planar layout: source positions plus the receiver ring radius bound.

    Each destination and the eavesdropper are dropped uniformly on a ring
    (radius uniform in [1, ring_radius], angle uniform) around their own
    source; the eavesdropper rings the confidential source.  Draws are
    rejected while any link distance drops below one meter or a receiver
    lands farther from its source than the source-source spacing.
    ``resample_rings`` redraws positions every trial; otherwise the trial
    index 0 positions are reused throughout.
    """

    s1: tuple[float, float]
    s2: tuple[float, float]
    ring_radius: float = 10.0
    resample_rings: bool = True

    def __post_init__(self):
        if not 1.0 <= self.ring_radius <= 10.0:
            raise ValueError("ring radius must lie in [1, 10] meters")


@dataclass(frozen=True)
class Scenario:
    """One Monte-Carlo experiment definition.

    ``geometry=None`` selects plain unit-variance Gaussian channels.
    ``uncertainty_alpha`` mixes a Gaussian error into the eavesdropper
    channels actually used for rate scoring, while construction sees only
    the estimate.  Powers are in dBm; the rate formulas run at the
    effective SNR ``power / noise``.
    """

    config: AntennaConfig
    geometry: Geometry | None = None
    pathloss_exponent: float = 3.5
    noise_power_dbm: float = -60.0
    power_dbm: float = 0.0
    uncertainty_alpha: float = 0.0
    trials: int = 1000
    seed: int = 0
    sweep: "Sweep | None" = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if self.uncertainty_alpha < 0:
            raise ValueError("uncertainty_alpha must be non-negative")

    @property
    def effective_power(self) -> float:
        """Transmit power over noise power, in linear units."""
        return 10.0 ** ((self.power_dbm - self.noise_power_dbm) / 10.0)


@dataclass(frozen=True)
class Sweep:
    variable: str
    values: tuple[float, ...]

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise ValueError(f"unknown sweep variable {self.variable!r}")
        if not self.values:
            raise ValueError("sweep needs at least one value")


@dataclass(frozen=True)
class TrialChannels:
    """Channels of one trial: the estimate used for design and the truth."""

    design: pc.ChannelSet
    actual: pc.ChannelSet


@dataclass(frozen=True)
class PointStats:
    mean_rs1: float
    se_rs1: float
    mean_rs2: float
    se_rs2: float
    failures: int
    trials: int


@dataclass(frozen=True)
class CurveRecord:
    variable: str
    x: float
    stats: PointStats


CSV_COLUMNS = ("x", "mean_rs1", "se_rs1", "mean_rs2", "se_rs2", "failures")


def _trial_rng(seed: int, trial_index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(trial_index,)))


def _cgauss(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def gaussian_channels(cfg: AntennaConfig, rng: np.random.Generator) -> pc.ChannelSet:
    """One unit-variance complex Gaussian channel set."""
    return pc.ChannelSet(
        h11=_cgauss(rng, cfg.nd1, cfg.ns1),
        h12=_cgauss(rng, cfg.nd1, cfg.ns2),
        h21=_cgauss(rng, cfg.nd2, cfg.ns1),
        h22=_cgauss(rng, cfg.nd2, cfg.ns2),
        g1=_cgauss(rng, cfg.ne, cfg.ns1),
        g2=_cgauss(rng, cfg.ne, cfg.ns2),
    )


def los_channel(rows: int, cols: int, distance: float, c: float,
                rng: np.random.Generator) -> np.ndarray:
    """Line-of-sight channel: every entry has magnitude ``distance**(-c/2)``
    and an independent phase uniform on [0, 2*pi)."""
    if distance < 1.0:
        raise ValueError("distance must be at least one meter")
    phase = rng.uniform(0.0, 2.0 * np.pi, size=(rows, cols))
    return distance ** (-c / 2.0) * np.exp(1j * phase)


def uncertain_eve_channel(gbar: np.ndarray, alpha: float, distance: float,
                          c: float, rng: np.random.Generator) -> np.ndarray:
    """True eavesdropper channel given its estimate ``gbar`` (no path loss).

    Mixes the estimate with an independent standard complex Gaussian error
    at weights ``(1+alpha)**-0.5`` and ``sqrt(alpha/(1+alpha))``, then
    applies the path loss; ``alpha = 0`` returns the scaled estimate
    exactly.
    """
    if alpha < 0:
        raise ValueError("alpha must be non-negative")
    gbar = np.asarray(gbar, dtype=np.complex128)
    if alpha == 0:
        mix = gbar
    else:
        err = _cgauss(rng, gbar.shape[0], gbar.shape[1])
        mix = gbar / np.sqrt(1.0 + alpha) + np.sqrt(alpha / (1.0 + alpha)) * err
    return distance ** (-c / 2.0) * mix


def _ring_position(center: tuple[float, float], radius_bound: float,
                   rng: np.random.Generator) -> np.ndarray:
    radius = rng.uniform(1.0, radius_bound)
    angle = rng.uniform(0.0, 2.0 * np.pi)
    return np.array([center[0] + radius * np.cos(angle), center[1] + radius * np.sin(angle)])


_MAX_RESAMPLES = 10


def _positions(geo: Geometry, rng: np.random.Generator) -> dict[str, np.ndarray]:
    s1 = np.asarray(geo.s1, dtype=float)
    s2 = np.asarray(geo.s2, dtype=float)
    d12 = float(np.linalg.norm(s1 - s2))
    for _ in range(1000):
        d1 = _ring_position(geo.s1, geo.ring_radius, rng)
        d2 = _ring_position(geo.s2, geo.ring_radius, rng)
        ev = _ring_position(geo.s1, geo.ring_radius, rng)
        pts = {"s1": s1, "s2": s2, "d1": d1, "d2": d2, "e": ev}
        links = _link_distances(pts)
        own_ok = (
            links["h11"] <= d12 and links["h22"] <= d12 and links["g1"] <= d12
        )
        if own_ok and min(links.values()) >= 1.0:
            return pts
    raise DegenerateDraw("could not place receivers within geometric constraints")


def _link_distances(pts: dict[str, np.ndarray]) -> dict[str, float]:
    def d(a, b):
        return float(np.linalg.norm(pts[a] - pts[b]))

    return {
        "h11": d("d1", "s1"), "h12": d("d1", "s2"),
        "h21": d("d2", "s1"), "h22": d("d2", "s2"),
        "g1": d("e", "s1"), "g2": d("e", "s2"),
    }


def draw_trial(scenario: Scenario, trial_index: int) -> TrialChannels:
    """Deterministic channel draw for one trial.

    The same (scenario, trial index) always produces identical matrices.
    Full-rank failures trigger a complete redraw from the same stream, up
    to a small budget, after which :class:`DegenerateDraw` is raised.
    """
    cfg = scenario.config
    rng = _trial_rng(scenario.seed, trial_index)
    geo = scenario.geometry
    alpha = scenario.uncertainty_alpha
    cexp = scenario.pathloss_exponent

    for _ in range(_MAX_RESAMPLES):
        if geo is None:
            h11 = _cgauss(rng, cfg.nd1, cfg.ns1)
            h12 = _cgauss(rng, cfg.nd1, cfg.ns2)
            h21 = _cgauss(rng, cfg.nd2, cfg.ns1)
            h22 = _cgauss(rng, cfg.nd2, cfg.ns2)
            g1_est = _cgauss(rng, cfg.ne, cfg.ns1)
            g2_est = _cgauss(rng, cfg.ne, cfg.ns2)
            dist_g1 = dist_g2 = 1.0
        else:
            pos_rng = rng if geo.resample_rings else _trial_rng(scenario.seed, 0)
            pts = _positions(geo, pos_rng)
            links = _link_distances(pts)
            h11 = los_channel(cfg.nd1, cfg.ns1, links["h11"], cexp, rng)
            h12 = los_channel(cfg.nd1, cfg.ns2, links["h12"], cexp, rng)
            h21 = los_channel(cfg.nd2, cfg.ns1, links["h21"], cexp, rng)
            h22 = los_channel(cfg.nd2, cfg.ns2, links["h22"], cexp, rng)
            dist_g1, dist_g2 = links["g1"], links["g2"]
            # unit-magnitude random-phase estimates; path loss applied below
            g1_est = np.exp(1j * rng.uniform(0, 2 * np.pi, (cfg.ne, cfg.ns1)))
            g2_est = np.exp(1j * rng.uniform(0, 2 * np.pi, (cfg.ne, cfg.ns2)))

        g1_design = dist_g1 ** (-cexp / 2.0) * g1_est
        g2_design = dist_g2 ** (-cexp / 2.0) * g2_est
        g1_true = uncertain_eve_channel(g1_est, alpha, dist_g1, cexp, rng)
        g2_true = uncertain_eve_channel(g2_est, alpha, dist_g2, cexp, rng)

        design = pc.ChannelSet(h11=h11, h12=h12, h21=h21, h22=h22,
                               g1=g1_design, g2=g2_design)
        actual = pc.ChannelSet(h11=h11, h12=h12, h21=h21, h22=h22,
                               g1=g1_true, g2=g2_true)
        if design.full_rank() and actual.full_rank():
            return TrialChannels(design=design, actual=actual)
    raise DegenerateDraw(f"trial {trial_index}: full-rank check failed repeatedly")


def draw_channels(scenario: Scenario, trial_index: int) -> pc.ChannelSet:
    """The true channel set of one trial (see :func:`draw_trial`)."""
    return draw_trial(scenario, trial_index).actual


def run_point(scenario: Scenario, target: SdofPoint | tuple[int, int]) -> PointStats:
    """Average secrecy rates over the scenario's trials at one target.

    Per trial: draw channels, build the precoder pair for the target on
    the design channels at the effective SNR, and score the rate pair on
    the true channels.  Trials whose draw or construction degenerates are
    counted as failures and excluded from the averages.
    """
    target = SdofPoint(*target)
    cfg = scenario.config
    if target.d1 > region.su1(cfg) or target.d2 > region.d2_max(cfg, target.d1):
        raise TargetInfeasible(f"target {tuple(target)} infeasible for {cfg.as_tuple()}")

    power = scenario.effective_power
    rs1 = np.zeros(scenario.trials)
    rs2 = np.zeros(scenario.trials)
    used = 0
    failures = 0
    for trial in range(scenario.trials):
        try:
            chans = draw_trial(scenario, trial)
            pair = pc.construct(chans.design, target, power=power)
        except (DegenerateDraw, ConstructionDeficit):
            failures += 1
            continue
        triple = verifier.rates(chans.actual, pair)
        rs1[used] = triple.rs1
        rs2[used] = triple.rs2
        used += 1
    if used == 0:
        raise DegenerateDraw("every trial failed")
    r1, r2 = rs1[:used], rs2[:used]
    # numpy's pairwise summation keeps the aggregation order-insensitive
    se1 = float(np.std(r1, ddof=1) / math.sqrt(used)) if used > 1 else 0.0
    se2 = float(np.std(r2, ddof=1) / math.sqrt(used)) if used > 1 else 0.0
    return PointStats(
        mean_rs1=float(np.mean(r1)), se_rs1=se1,
        mean_rs2=float(np.mean(r2)), se_rs2=se2,
        failures=failures, trials=scenario.trials,
    )


def _apply_sweep_value(scenario: Scenario, variable: str, value: float) -> Scenario:
    if variable == "s1_s2_distance":
        if scenario.geometry is None:
            raise ValueError("distance sweep requires geometry")
        s2 = scenario.geometry.s2
        geo = dataclasses.replace(scenario.geometry, s1=(s2[0] + float(value), s2[1]))
        return dataclasses.replace(scenario, geometry=geo)
    if variable == "uncertainty_alpha":
        return dataclasses.replace(scenario, uncertainty_alpha=float(value))
    if variable == "power_dbm":
        return dataclasses.replace(scenario, power_dbm=float(value))
    if variable == "noise_power_dbm":
        return dataclasses.replace(scenario, noise_power_dbm=float(value))
    raise ValueError(f"unknown sweep variable {variable!r}")


def monte_carlo(scenario: Scenario, target: SdofPoint | tuple[int, int]) -> list[CurveRecord]:
    """Curve records over the scenario's sweep (a single record without one)."""
    if scenario.sweep is None:
        return [CurveRecord(variable="", x=0.0, stats=run_point(scenario, target))]
    out = []
    for value in scenario.sweep.values:
        derived = _apply_sweep_value(scenario, scenario.sweep.variable, value)
        out.append(CurveRecord(
            variable=scenario.sweep.variable,
            x=float(value),
            stats=run_point(derived, target),
        ))
    return out


def write_curve_csv(path, records: list[CurveRecord]) -> None:
    """Write curve records as CSV with the fixed documented column order."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for rec in records:
            st = rec.stats
            writer.writerow([rec.x, st.mean_rs1, st.se_rs1, st.mean_rs2, st.se_rs2, st.failures])
