"""Complex dense matrix primitives.

Tolerance-aware rank, null-space and orthogonal-complement bases, subspace
dimension arithmetic, and a generalized singular value decomposition (GSVD)
of two matrices sharing a row space.

All operations are pure functions of their inputs; returned arrays are
freshly allocated and never alias the arguments.  Matrices are dense
complex ndarrays with vectors as columns; zero-column matrices are valid
inputs everywhere and represent zero-dimensional subspaces.

The numerical-rank tolerance defaults to ``max(m, n) * eps * sigma_max``
and can be overridden globally, either through :func:`set_rank_tolerance`
or the ``SDOF_RANK_TOL`` environment variable.  The override is a relative
factor: the effective cutoff is ``factor * sigma_max``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np
from scipy.linalg import cossin

from .errors import DegenerateInput

__all__ = [
    "GsvdResult",
    "rank_tol",
    "null_basis",
    "orth_complement",
    "gsvd",
    "dim_quotient",
    "dim_intersection",
    "product_cutoff",
    "set_rank_tolerance",
    "get_rank_tolerance",
]

_EPS = float(np.finfo(np.float64).eps)

# Relative rank-tolerance factor; None selects max(m,n)*eps. Set once at
# startup (env var or set_rank_tolerance); read-only during computation.
_rank_tol_factor: float | None = None
if os.environ.get("SDOF_RANK_TOL"):
    _rank_tol_factor = float(os.environ["SDOF_RANK_TOL"])


def set_rank_tolerance(factor: float | None) -> None:
    """Globally override the relative rank tolerance.

    ``factor`` multiplies the largest singular value of each matrix to give
    the rank cutoff; ``None`` restores the default ``max(m, n) * eps``.
    """
    global _rank_tol_factor
    if factor is not None and factor < 0:
        raise ValueError("rank tolerance factor must be non-negative")
    _rank_tol_factor = factor


def get_rank_tolerance() -> float | None:
    """Return the current global relative rank-tolerance factor."""
    return _rank_tol_factor


def _as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Coerce to a 2-D complex ndarray, treating 1-D input as a column."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    if m.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {m.shape}")
    if m.size and not np.all(np.isfinite(m)):
        raise ValueError(f"{name} contains non-finite entries")
    return m


def _singular_values(a: np.ndarray) -> np.ndarray:
    if a.size == 0:
        return np.zeros(0)
    return np.linalg.svd(a, compute_uv=False)


def _cutoff(a: np.ndarray, sv: np.ndarray, tol: float | None) -> float:
    if tol is not None:
        if tol < 0:
            raise ValueError("tolerance must be non-negative")
        return tol
    smax = float(sv[0]) if sv.size else 0.0
    if _rank_tol_factor is not None:
        return _rank_tol_factor * smax
    return max(a.shape) * _EPS * smax if a.size else 0.0


def rank_tol(a, tol: float | None = None) -> int:
    """Numerical rank: number of singular values exceeding the tolerance."""
    m = _as_matrix(a)
    if m.size == 0:
        return 0
    sv = _singular_values(m)
    return int(np.count_nonzero(sv > _cutoff(m, sv, tol)))


def null_basis(a, tol: float | None = None) -> np.ndarray:
    """Orthonormal basis N of the null space of ``a``: a @ N == 0.

    The basis has ``cols - rank`` columns; a trivial null space yields a
    zero-column matrix.
    """
    m = _as_matrix(a)
    n = m.shape[1]
    if n == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    if m.shape[0] == 0:
        return np.eye(n, dtype=np.complex128)
    _, sv, vh = np.linalg.svd(m, full_matrices=True)
    r = int(np.count_nonzero(sv > _cutoff(m, sv, tol)))
    return vh[r:, :].conj().T.copy()


def orth_complement(a, tol: float | None = None) -> np.ndarray:
    """Orthonormal basis of the orthogonal complement of span(``a``).

    Equivalent to the null-space basis of ``a``'s conjugate transpose;
    width is ``rows - rank``.
    """
    m = _as_matrix(a)
    rows = m.shape[0]
    if rows == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    if m.shape[1] == 0:
        return np.eye(rows, dtype=np.complex128)
    u, sv, _ = np.linalg.svd(m, full_matrices=True)
    r = int(np.count_nonzero(sv > _cutoff(m, sv, tol)))
    return u[:, r:].copy()


def _hstack(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"row counts differ: {a.shape[0]} vs {b.shape[0]}")
    return np.hstack([a, b])


def dim_quotient(a, b, tol: float | None = None) -> int:
    """Dimension of span(``a``) outside span(``b``): rank([a b]) - rank(b)."""
    ma, mb = _as_matrix(a), _as_matrix(b)
    return rank_tol(_hstack(ma, mb), tol) - rank_tol(mb, tol)


def product_cutoff(*pairs, margin: float = 1e4) -> float:
    """Absolute rank cutoff for subspaces spanned by matrix products.

    A product ``A @ B`` that is zero in exact arithmetic comes out as noise
    of size ``eps * |A| * |B|``, which the self-relative default tolerance
    would mistake for full rank.  Rank decisions on channel images must
    therefore use a cutoff tied to the factor scales: this returns
    ``margin * dim * eps * max(|A| * |B|)`` over the given (A, B) pairs
    (Frobenius norms), honoring a global tolerance override when set.

    The default margin puts the cutoff a few orders of magnitude above the
    round-off that multi-stage assembly chains accumulate, and many orders
    below generic signal directions.
    """
    scale = 0.0
    dim = 1
    for a, b in pairs:
        ma, mb = _as_matrix(a), _as_matrix(b)
        if ma.size == 0 or mb.size == 0:
            continue
        scale = max(scale, float(np.linalg.norm(ma)) * float(np.linalg.norm(mb)))
        dim = max(dim, ma.shape[0], ma.shape[1], mb.shape[1])
    if _rank_tol_factor is not None:
        return _rank_tol_factor * scale
    return margin * dim * _EPS * scale


def dim_intersection(a, b, tol: float | None = None) -> int:
    """Dimension of span(``a``) ∩ span(``b``)."""
    ma, mb = _as_matrix(a), _as_matrix(b)
    return rank_tol(ma, tol) + rank_tol(mb, tol) - rank_tol(_hstack(ma, mb), tol)


@dataclass(frozen=True, eq=False)
class GsvdResult:
    """GSVD of a pair (A: N x M, B: N x K) sharing the row dimension N.

    The factorization satisfies ``A @ psi1 == x @ D1^H`` and
    ``B @ psi2 == x @ D2^H`` where D1 (M x k) carries an identity block on
    its first ``r`` columns, the positive diagonal ``lam1`` on the next
    ``s``, and zeros after; D2 (K x k) is zero on its first ``K - s - p``
    rows, carries ``lam2`` against columns r+1..r+s, and an identity block
    in its lower-right p x p corner.  ``lam1**2 + lam2**2 == 1``
    elementwise, with generalized singular values ``lam1/lam2`` in
    descending order.

    Column-slice views expose the standard block partition: ``psi11``,
    ``psi12``, ``psi13`` split ``psi1`` at r and r+s; ``psi21``, ``psi22``,
    ``psi23`` split ``psi2`` at K-s-p and K-p; ``x1``, ``x2``, ``x3`` split
    ``x`` at r and r+s.  span(x1) = span(A) ∩ span(B)^perp,
    span(x2) = span(A) ∩ span(B), span(x3) = span(A)^perp ∩ span(B).
    """

    psi1: np.ndarray
    psi2: np.ndarray
    lam1: np.ndarray
    lam2: np.ndarray
    x: np.ndarray
    k: int
    r: int
    s: int
    p: int

    @property
    def psi11(self) -> np.ndarray:
        return self.psi1[:, : self.r]

    @property
    def psi12(self) -> np.ndarray:
        return self.psi1[:, self.r : self.r + self.s]

    @property
    def psi13(self) -> np.ndarray:
        return self.psi1[:, self.r + self.s :]

    @property
    def psi21(self) -> np.ndarray:
        kk = self.psi2.shape[1]
        return self.psi2[:, : kk - self.s - self.p]

    @property
    def psi22(self) -> np.ndarray:
        kk = self.psi2.shape[1]
        return self.psi2[:, kk - self.s - self.p : kk - self.p]

    @property
    def psi23(self) -> np.ndarray:
        kk = self.psi2.shape[1]
        return self.psi2[:, kk - self.p :]

    @property
    def x1(self) -> np.ndarray:
        return self.x[:, : self.r]

    @property
    def x2(self) -> np.ndarray:
        return self.x[:, self.r : self.r + self.s]

    @property
    def x3(self) -> np.ndarray:
        return self.x[:, self.r + self.s :]

    def d1(self) -> np.ndarray:
        """Assemble the dense M x k diagonal-block factor for A."""
        m = self.psi1.shape[0]
        d = np.zeros((m, self.k))
        d[: self.r, : self.r] = np.eye(self.r)
        d[self.r : self.r + self.s, self.r : self.r + self.s] = np.diag(self.lam1)
        return d

    def d2(self) -> np.ndarray:
        """Assemble the dense K x k diagonal-block factor for B."""
        kk = self.psi2.shape[0]
        d = np.zeros((kk, self.k))
        d[kk - self.s - self.p : kk - self.p, self.r : self.r + self.s] = np.diag(self.lam2)
        d[kk - self.p :, self.r + self.s :] = np.eye(self.p)
        return d


def _quadruple(n: int, m: int, kc: int) -> tuple[int, int, int, int]:
    """(k, r, s, p) for generic full-rank inputs of the given shape."""
    k = min(m + kc, n)
    p = k - min(m, n)
    r = k - min(kc, n)
    s = k - p - r
    return k, r, s, p


# Deviation allowed on structurally exact identity/zero blocks before the
# input is declared degenerate.
_STRUCT_TOL = 1e-8


def gsvd(a, b, tol: float | None = None) -> GsvdResult:
    """Generalized singular value decomposition of a full-rank pair.

    ``a`` (N x M) and ``b`` (N x K) must share the row count and be full
    rank under the tolerance; rank deficiency that makes the (k, r, s, p)
    dimension quadruple inconsistent with the full-rank formulas raises
    :class:`DegenerateInput`.

    Computed by orthonormal factorization of the stacked pair followed by
    a cosine-sine decomposition; the common factor ``x`` (N x k, full
    column rank) is returned directly and no inner triangular factor is
    ever inverted.
    """
    ma, mb = _as_matrix(a, "a"), _as_matrix(b, "b")
    if ma.shape[0] != mb.shape[0]:
        raise ValueError(f"row counts differ: {ma.shape[0]} vs {mb.shape[0]}")
    n = ma.shape[0]
    m, kc = ma.shape[1], mb.shape[1]

    k, r, s, p = _quadruple(n, m, kc)
    if rank_tol(ma, tol) != min(m, n) or rank_tol(mb, tol) != min(kc, n):
        raise DegenerateInput(
            "rank-deficient input: (k, r, s, p) inconsistent with full-rank formulas"
        )
    z = np.vstack([ma.conj().T, mb.conj().T])
    if rank_tol(z, tol) != k:
        raise DegenerateInput("stacked pair is rank deficient")

    if s == 0:
        return _gsvd_disjoint(ma, mb, n, m, kc, k, r, p)
    return _gsvd_cs(ma, mb, z, n, m, kc, k, r, s, p)


def _gsvd_disjoint(ma, mb, n, m, kc, k, r, p) -> GsvdResult:
    """Construction for s == 0: the two column spans intersect trivially,
    so independent SVDs of A and B supply all blocks."""
    lam = np.zeros(0)
    if m > 0:
        ua, sa, vah = np.linalg.svd(ma, full_matrices=True)
        psi1 = vah.conj().T
        x1 = ua[:, :r] * sa[:r]
    else:
        psi1 = np.zeros((0, 0), dtype=np.complex128)
        x1 = np.zeros((n, 0), dtype=np.complex128)
    if kc > 0:
        ub, sb, vbh = np.linalg.svd(mb, full_matrices=True)
        vb = vbh.conj().T
        # null-space part first (maps to zero), image part last (maps to x3)
        psi2 = np.hstack([vb[:, p:], vb[:, :p]])
        x3 = ub[:, :p] * sb[:p]
    else:
        psi2 = np.zeros((0, 0), dtype=np.complex128)
        x3 = np.zeros((n, 0), dtype=np.complex128)
    x = np.hstack([x1, x3])
    return GsvdResult(psi1=psi1, psi2=psi2, lam1=lam, lam2=lam.copy(), x=x,
                      k=k, r=r, s=0, p=p)


def _gsvd_cs(ma, mb, z, n, m, kc, k, r, s, p) -> GsvdResult:
    uz, sz, vzh = np.linalg.svd(z, full_matrices=True)
    rfac = sz[:k, None] * vzh[:k, :]
    # uz's trailing columns complete the orthonormal factor to a square
    # unitary, as the CS decomposition requires; s > 0 guarantees k < M+K.
    u, cs, vdh = cossin(uz, p=m, q=k)
    psi1 = u[:m, :m]
    psi2 = u[m:, m:]
    d1 = cs[:m, :k]
    d2 = cs[m:, :k]

    lam1 = np.real(np.diag(d1[r : r + s, r : r + s])).copy()
    lam2 = np.real(np.diag(d2[kc - p - s : kc - p, r : r + s])).copy()
    x = rfac.conj().T @ vdh[:k, :k].conj().T

    # The identity/zero blocks are structurally exact for full-rank input;
    # a large deviation means the rank tolerance mis-sliced the blocks.
    exp1 = np.zeros((m, k))
    exp1[:r, :r] = np.eye(r)
    exp1[r : r + s, r : r + s] = np.diag(lam1)
    exp2 = np.zeros((kc, k))
    exp2[kc - s - p : kc - p, r : r + s] = np.diag(lam2)
    exp2[kc - p :, r + s :] = np.eye(p)
    err = max(float(np.linalg.norm(d1 - exp1)), float(np.linalg.norm(d2 - exp2)))
    if err > _STRUCT_TOL or np.any(lam1 <= 0) or np.any(lam2 <= 0):
        raise DegenerateInput("cosine-sine block structure inconsistent with rank counts")

    order = np.argsort(-lam1, kind="stable")
    if not np.array_equal(order, np.arange(s)):
        lam1 = lam1[order]
        lam2 = lam2[order]
        psi1 = psi1.copy()
        psi2 = psi2.copy()
        x = x.copy()
        psi1[:, r : r + s] = psi1[:, r : r + s][:, order]
        psi2[:, kc - s - p : kc - p] = psi2[:, kc - s - p : kc - p][:, order]
        x[:, r : r + s] = x[:, r : r + s][:, order]

    return GsvdResult(psi1=psi1, psi2=psi2, lam1=lam1, lam2=lam2, x=x,
                      k=k, r=r, s=s, p=p)
