"""Aligned precoding-pair solution spaces and canonical forms.

A pair of vectors (v, w) is *aligned* for matrices (A, B) when
``A @ v == B @ w != 0``: the two transmissions land on the same
direction.  This module parametrizes the full solution space of aligned
pairs and rewrites feasible precoder pairs into the reduced canonical
form where the eavesdropper images agree column by column.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import matcore
from .errors import NotAligned
from .precoder import PrecoderPair

__all__ = ["AlignedSpace", "aligned_space", "canonicalize"]


@dataclass(frozen=True, eq=False)
class AlignedSpace:
    """Solution space of ``A @ v == B @ w`` for a full-rank pair (A, B).

    ``phi1`` and ``phi2`` are bases for v and w.  Their leading
    ``shared_width`` columns are driven by a common coordinate block: any
    coordinate vector with shared part y_s and private parts y1, y2 gives
    an aligned pair ``v = phi1 @ [y_s; y1]``, ``w = phi2 @ [y_s; y2]``,
    nonzero whenever y_s is.  The trailing columns of phi1 span null(A)
    (and of phi2, null(B)), where the alignment holds with both images
    zero.
    """

    phi1: np.ndarray
    phi2: np.ndarray
    shared_width: int
    independent_count: int

    def pair(self, y_shared, y1=None, y2=None) -> tuple[np.ndarray, np.ndarray]:
        """Assemble an aligned (v, w) from coordinate blocks."""
        ys = np.asarray(y_shared, dtype=np.complex128).reshape(-1, 1)
        if ys.shape[0] != self.shared_width:
            raise ValueError(f"shared coordinate must have length {self.shared_width}")
        n1 = self.phi1.shape[1] - self.shared_width
        n2 = self.phi2.shape[1] - self.shared_width
        p1 = np.zeros((n1, 1)) if y1 is None else np.asarray(y1, dtype=np.complex128).reshape(-1, 1)
        p2 = np.zeros((n2, 1)) if y2 is None else np.asarray(y2, dtype=np.complex128).reshape(-1, 1)
        v = self.phi1 @ np.vstack([ys, p1])
        w = self.phi2 @ np.vstack([ys, p2])
        return v, w


def aligned_space(a, b) -> AlignedSpace:
    """Parametrize all (v, w) with ``a @ v == b @ w``.

    The shared block comes from the GSVD of (a, b): the middle factor
    columns scaled by the inverse diagonal map both sides onto the basis
    of span(a) ∩ span(b).  The private blocks are the null-space bases.
    The number of linearly independent v participating in a nonzero
    alignment is ``shared_width + dim null(a)``.
    """
    g = matcore.gsvd(a, b)
    null_a = matcore.null_basis(a)
    null_b = matcore.null_basis(b)
    phi1 = np.hstack([g.psi12 / g.lam1, null_a]) if g.s else null_a
    phi2 = np.hstack([g.psi22 / g.lam2, null_b]) if g.s else null_b
    return AlignedSpace(
        phi1=phi1,
        phi2=phi2,
        shared_width=g.s,
        independent_count=g.s + null_a.shape[1],
    )


def canonicalize(v, w, g1, g2, tol: float = 1e-8) -> PrecoderPair:
    """Rewrite a span-aligned pair into columnwise-aligned form.

    Requires span(g1 @ v) ⊆ span(g2 @ w); raises :class:`NotAligned`
    otherwise.  Returns (v, w @ [B, B^perp]) where B solves
    ``g2 @ w @ B == g1 @ v``: by least squares through the thin SVD when w
    is at least as wide as the eavesdropper array, or through the normal
    equations of the projector onto span(g2 @ w) when it is narrower.  The
    first ``v.shape[1]`` columns of the new w then reproduce the
    eavesdropper image of v exactly, and the appended orthonormal
    complement keeps span(w) intact whenever B has full column rank.
    """
    v = np.asarray(v, dtype=np.complex128)
    w = np.asarray(w, dtype=np.complex128)
    g1v = g1 @ v
    g2w = g2 @ w
    tol_e = matcore.product_cutoff((g1, v), (g2, w))
    if matcore.dim_quotient(g1v, g2w, tol=tol_e) != 0:
        raise NotAligned("span(g1 @ v) is not contained in span(g2 @ w)")

    ne = g2w.shape[0]
    kw = w.shape[1]
    if kw >= ne:
        # wide w: restrict to the leading right-singular directions, where
        # the eavesdropper image is invertible
        _, _, th = np.linalg.svd(g2w, full_matrices=False)
        t1 = th[:ne, :].conj().T
        bmat = t1 @ np.linalg.solve(g2w @ t1, g1v)
    else:
        # narrow w: full column rank, solve the normal equations
        gram = g2w.conj().T @ g2w
        bmat = np.linalg.solve(gram, g2w.conj().T @ g1v)

    wstar = np.hstack([w @ bmat, w @ matcore.orth_complement(bmat)])

    resid = np.linalg.norm(g1v - (g2 @ wstar)[:, : v.shape[1]])
    scale = np.linalg.norm(g1v) + np.linalg.norm(g2w)
    if scale > 0 and resid > tol * scale:
        raise NotAligned(f"canonical form residual {resid:.2e} exceeds tolerance")
    return PrecoderPair(v=v.copy(), w=wstar, power=None)
