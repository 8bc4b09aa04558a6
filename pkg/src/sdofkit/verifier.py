"""Verification of achieved secrecy degrees of freedom.

Two independent routes: exact integer subspace-rank arithmetic on the
channel images of a precoder pair, and empirical high-SNR slope
estimation from the finite-power rate formulas.  Also checks membership
of a pair in the power set, the span-aligned set, and the
columnwise-aligned set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import matcore
from .errors import NumericalBreakdown
from .precoder import ChannelSet, PrecoderPair, with_power
from .region import SdofPoint

__all__ = ["RateTriple", "Membership", "sdof_of", "membership", "rates", "slope_estimate"]


@dataclass(frozen=True)
class RateTriple:
    """Achievable rates in bits per channel use, with unit noise power.

    ``rd1``/``rd2`` are the destination rates under co-channel
    interference treated as noise; ``re`` is the eavesdropper rate.  The
    secrecy rate of the confidential link is the clipped difference
    ``rs1``; the public link sends no secrets, so its secrecy rate equals
    its rate.
    """

    rd1: float
    rd2: float
    re: float

    @property
    def rs1(self) -> float:
        return max(self.rd1 - self.re, 0.0)

    @property
    def rs2(self) -> float:
        return self.rd2


@dataclass(frozen=True)
class Membership:
    in_i: bool
    in_ibar: bool
    in_ihat: bool


def sdof_of(ch: ChannelSet, pair: PrecoderPair) -> SdofPoint:
    """Achieved S.D.o.F. pair by exact subspace-rank arithmetic.

    The confidential link scores the rank its signal occupies at its
    receiver, minus the eavesdropper leakage outside the jamming span and
    minus the overlap with the public interference (clipped at zero).
    The public link scores the part of its signal span outside the
    confidential interference at its receiver.
    """
    h11v = ch.h11 @ pair.v
    h12w = ch.h12 @ pair.w
    tol_e = matcore.product_cutoff((ch.g1, pair.v), (ch.g2, pair.w))
    tol_d1 = matcore.product_cutoff((ch.h11, pair.v), (ch.h12, pair.w))
    tol_d2 = matcore.product_cutoff((ch.h22, pair.w), (ch.h21, pair.v))
    leak = matcore.dim_quotient(ch.g1 @ pair.v, ch.g2 @ pair.w, tol=tol_e)
    overlap = matcore.dim_intersection(h12w, h11v, tol=tol_d1)
    d1 = max(matcore.rank_tol(h11v, tol=tol_d1) - leak - overlap, 0)
    d2 = matcore.dim_quotient(ch.h22 @ pair.w, ch.h21 @ pair.v, tol=tol_d2)
    return SdofPoint(d1, d2)


def membership(
    ch: ChannelSet,
    pair: PrecoderPair,
    rtol: float = 1e-8,
    power_rtol: float = 1e-6,
) -> Membership:
    """Set membership flags for a precoder pair.

    ``in_i``: both traces match the recorded power budget (vacuous for a
    zero-width matrix, which carries no power).  ``in_ibar``: the
    eavesdropper image of V lies inside the jamming span and the two
    signals are disjoint at the confidential receiver.  ``in_ihat``:
    additionally, each confidential column's eavesdropper image is
    reproduced by its paired public column up to the positive per-stream
    gain that power normalization applies (exactly aligned pairs have
    gain one).
    """
    in_i = False
    if pair.power is not None:
        pv = float(np.sum(np.abs(pair.v) ** 2))
        pw = float(np.sum(np.abs(pair.w) ** 2))
        ok_v = pair.kv == 0 or abs(pv - pair.power) <= power_rtol * pair.power
        ok_w = pair.kw == 0 or abs(pw - pair.power) <= power_rtol * pair.power
        in_i = ok_v and ok_w

    g1v = ch.g1 @ pair.v
    g2w = ch.g2 @ pair.w
    tol_e = matcore.product_cutoff((ch.g1, pair.v), (ch.g2, pair.w))
    tol_d1 = matcore.product_cutoff((ch.h11, pair.v), (ch.h12, pair.w))
    in_ibar = (
        matcore.dim_quotient(g1v, g2w, tol=tol_e) == 0
        and matcore.dim_intersection(ch.h11 @ pair.v, ch.h12 @ pair.w, tol=tol_d1) == 0
    )

    # image columns below this are zero up to round-off of the matrix products
    ztol = max(
        rtol * max(np.linalg.norm(g1v), np.linalg.norm(g2w), 1e-300), 10 * tol_e
    )
    in_ihat = in_ibar and _columnwise_aligned(g1v, g2w, rtol, ztol)
    return Membership(in_i=in_i, in_ibar=in_ibar, in_ihat=in_ihat)


def _columnwise_aligned(g1v: np.ndarray, g2w: np.ndarray, rtol: float, ztol: float) -> bool:
    """Column i of g1v equals a positive multiple of column i of g2w."""
    for i in range(g1v.shape[1]):
        a = g1v[:, i]
        b = g2w[:, i] if i < g2w.shape[1] else np.zeros_like(a)
        na, nb = np.linalg.norm(a), np.linalg.norm(b)
        if na <= ztol and nb <= ztol:
            continue
        if na <= ztol or nb <= ztol:
            return False
        alpha = (b.conj() @ a) / (nb * nb)
        if np.linalg.norm(a - alpha * b) > rtol * na:
            return False
        if alpha.real <= 0 or abs(alpha.imag) > rtol * abs(alpha):
            return False
    return True


def _logdet_hpd(m: np.ndarray) -> float:
    """log2-determinant of a Hermitian positive-definite matrix.

    Cholesky based: succeeds exactly when the (hermitized) argument is
    numerically positive definite, and stays accurate for the extreme
    condition numbers that high-power rate evaluations produce.
    """
    m = 0.5 * (m + m.conj().T)
    try:
        chol = np.linalg.cholesky(m)
    except np.linalg.LinAlgError as exc:
        raise NumericalBreakdown("log-det argument is not positive definite") from exc
    diag = np.real(np.diag(chol))
    if not np.all(np.isfinite(diag)) or np.any(diag <= 0):
        raise NumericalBreakdown("log-det argument is not positive definite")
    return float(2.0 * np.sum(np.log2(diag)))


def rates(ch: ChannelSet, pair: PrecoderPair) -> RateTriple:
    """Finite-power rate triple for a pair, with identity noise covariance.

    Each rate is a difference of two log-dets of Hermitian positive
    definite matrices (signal-plus-interference over interference), so no
    explicit inverse is formed.
    """
    qv = pair.v @ pair.v.conj().T
    qw = pair.w @ pair.w.conj().T

    def pairwise(hs: np.ndarray, qs: np.ndarray, hi: np.ndarray, qi: np.ndarray) -> float:
        n = hs.shape[0]
        interf = np.eye(n) + hi @ qi @ hi.conj().T
        return _logdet_hpd(interf + hs @ qs @ hs.conj().T) - _logdet_hpd(interf)

    rd1 = pairwise(ch.h11, qv, ch.h12, qw)
    rd2 = pairwise(ch.h22, qw, ch.h21, qv)
    re = pairwise(ch.g1, qv, ch.g2, qw)
    return RateTriple(rd1=rd1, rd2=rd2, re=re)


def slope_estimate(ch: ChannelSet, pair: PrecoderPair, p_grid) -> tuple[float, float]:
    """Empirical S.D.o.F. from the secrecy-rate growth against log power.

    The pair supplies directions only; at each grid power it is
    renormalized and the rate triple evaluated.  The slope is the finite
    difference over the two largest grid points (the limit regime), in
    bits per doubling over log2(P): rounding the result should match the
    rank-based S.D.o.F.
    """
    grid = sorted(float(p) for p in p_grid)
    if len(grid) < 2 or grid[0] <= 0:
        raise ValueError("p_grid must contain at least two positive powers")
    if grid[-1] / grid[0] < 100:
        raise ValueError("p_grid must span at least two decades")
    p_lo, p_hi = grid[-2], grid[-1]
    r_lo = rates(ch, with_power(pair, p_lo))
    r_hi = rates(ch, with_power(pair, p_hi))
    dlog = math.log2(p_hi) - math.log2(p_lo)
    return (
        (r_hi.rs1 - r_lo.rs1) / dlog,
        (r_hi.rs2 - r_lo.rs2) / dlog,
    )
