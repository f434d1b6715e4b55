"""Real and Hermitian graph operators plus a dense Hermitian eigensolver.

The constructors cover the normalized Laplacian, the signed Laplacian
(combinatorial and normalized), the magnetic Laplacian for unsigned
directed graphs, a signed magnetic Laplacian that reduces to the former
two on their home domains, and the Hermitian imbalance operator
i * (A - A^T). Zero-degree rows use the pseudo-inverse convention
D^{-1/2} = 0, keeping every operator well-defined.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import SignedDirectedGraph

SPECTRAL_KINDS = (
    "normalized_laplacian",
    "signed_laplacian",
    "signed_laplacian_sym",
    "magnetic_laplacian",
    "signed_magnetic_laplacian",
    "hermitian_imbalance",
)

HERMITICITY_RTOL = 1e-12


class NumericError(RuntimeError):
    """Numerical failure (non-convergence, invalid operator)."""


@dataclass(frozen=True)
class SpectralMatrix:
    """Dense Hermitian operator; real kinds have zero imaginary part."""

    entries: np.ndarray
    kind: str
    q: float | None = None

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("operator must be a square matrix")
        if self.kind not in SPECTRAL_KINDS:
            raise ValueError(f"unknown spectral kind {self.kind!r}")
        scale = max(1.0, float(np.linalg.norm(m)))
        if np.linalg.norm(m - m.conj().T) > HERMITICITY_RTOL * scale:
            raise NumericError("operator is not Hermitian to tolerance")
        object.__setattr__(self, "entries", m)

    @property
    def num_nodes(self) -> int:
        return int(self.entries.shape[0])


@dataclass(frozen=True)
class EigenPairs:
    """Eigenvalues in ascending order with matching orthonormal vectors."""

    values: np.ndarray
    vectors: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64).ravel()
        vecs = np.asarray(self.vectors, dtype=np.complex128)
        if vecs.ndim != 2 or vecs.shape[1] != vals.size:
            raise ValueError("vectors must be n x k with k = len(values)")
        if vals.size > 1 and np.any(np.diff(vals) < 0):
            raise ValueError("eigenvalues must be ascending")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "vectors", vecs)


def _inv_sqrt_degrees(d: np.ndarray) -> np.ndarray:
    out = np.zeros_like(d)
    nz = d > 0
    out[nz] = 1.0 / np.sqrt(d[nz])
    return out


def _hermitize(m: np.ndarray) -> np.ndarray:
    return (m + m.conj().T) / 2.0


def normalized_laplacian(g: SignedDirectedGraph) -> SpectralMatrix:
    """I - D^{-1/2} A_s D^{-1/2} on the symmetrized absolute adjacency."""
    a = np.abs(g.adjacency())
    a_s = (a + a.T) / 2.0
    d = a_s.sum(axis=1)
    dis = _inv_sqrt_degrees(d)
    lap = np.eye(g.num_nodes) - dis[:, None] * a_s * dis[None, :]
    return SpectralMatrix(_hermitize(lap.astype(np.complex128)), "normalized_laplacian")


def signed_laplacian(g: SignedDirectedGraph, normalized: bool = False) -> SpectralMatrix:
    """Dbar - A_s with absolute-degree diagonal, or its normalized form."""
    a = g.adjacency()
    a_s = (a + a.T) / 2.0
    dbar = np.abs(a_s).sum(axis=1)
    if normalized:
        dis = _inv_sqrt_degrees(dbar)
        lap = np.eye(g.num_nodes) - dis[:, None] * a_s * dis[None, :]
        kind = "signed_laplacian_sym"
    else:
        lap = np.diag(dbar) - a_s
        kind = "signed_laplacian"
    return SpectralMatrix(_hermitize(lap.astype(np.complex128)), kind)


def _check_q(q: float) -> float:
    q = float(q)
    if not 0.0 <= q <= 0.5:
        raise ValueError(f"phase parameter q must lie in [0, 0.5], got {q}")
    return q


def magnetic_laplacian(g: SignedDirectedGraph, q: float = 0.25,
                       normalized: bool = True) -> SpectralMatrix:
    """Magnetic Laplacian of an unsigned directed graph.

    Connectivity lives in the magnitude A_s = (A + A^T)/2 and direction
    in the phase Theta = 2 pi q (A - A^T); the Hermitian adjacency is
    H = A_s * exp(i Theta).
    """
    q = _check_q(q)
    if bool(np.any(g.weight < 0)):
        raise ValueError("magnetic_laplacian needs nonnegative weights; "
                         "use signed_magnetic_laplacian for signed graphs")
    a = g.adjacency()
    a_s = (a + a.T) / 2.0
    theta = 2.0 * np.pi * q * (a - a.T)
    h = a_s * np.exp(1j * theta)
    d = a_s.sum(axis=1)
    if normalized:
        dis = _inv_sqrt_degrees(d)
        lap = np.eye(g.num_nodes, dtype=np.complex128) - dis[:, None] * h * dis[None, :]
    else:
        lap = np.diag(d).astype(np.complex128) - h
    return SpectralMatrix(_hermitize(lap), "magnetic_laplacian", q=q)


def signed_magnetic_laplacian(g: SignedDirectedGraph, q: float = 0.25,
                              normalized: bool = True) -> SpectralMatrix:
    """Magnetic Laplacian generalized to signed directed graphs.

    Magnitude m = (|A| + |A|^T)/2, sign s = sign(A + A^T) with the 0 tie
    mapping to +1, phase theta = 2 pi q (|A| - |A|^T); H = s * m *
    exp(i theta). Equals the signed Laplacian on undirected graphs and
    the magnetic Laplacian on all-positive ones.
    """
    q = _check_q(q)
    a = g.adjacency()
    aa = np.abs(a)
    m = (aa + aa.T) / 2.0
    s = np.where(a + a.T < 0, -1.0, 1.0)
    theta = 2.0 * np.pi * q * (aa - aa.T)
    h = s * m * np.exp(1j * theta)
    d = m.sum(axis=1)
    if normalized:
        dis = _inv_sqrt_degrees(d)
        lap = np.eye(g.num_nodes, dtype=np.complex128) - dis[:, None] * h * dis[None, :]
    else:
        lap = np.diag(d).astype(np.complex128) - h
    return SpectralMatrix(_hermitize(lap), "signed_magnetic_laplacian", q=q)


def hermitian_imbalance(g: SignedDirectedGraph) -> SpectralMatrix:
    """i (A - A^T): purely imaginary off-diagonals, spectrum symmetric about 0."""
    a = g.adjacency()
    h = 1j * (a - a.T)
    return SpectralMatrix(_hermitize(h), "hermitian_imbalance")


def eigh(matrix, k: int | None = None, which: str = "smallest") -> EigenPairs:
    """Deterministic dense Hermitian eigendecomposition.

    ``which`` selects the k smallest, largest, or largest-|value|
    eigenpairs; results are always returned in ascending eigenvalue
    order. Accepts a SpectralMatrix or a raw Hermitian ndarray.
    """
    if isinstance(matrix, SpectralMatrix):
        m = matrix.entries
    else:
        m = np.asarray(matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("matrix must be square")
        scale = max(1.0, float(np.linalg.norm(m)))
        if np.linalg.norm(m - m.conj().T) > HERMITICITY_RTOL * scale:
            raise NumericError("matrix is not Hermitian to tolerance")
    n = m.shape[0]
    if k is None:
        k = n
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    try:
        vals, vecs = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigendecomposition failed to converge: {exc}") from exc
    if which == "smallest":
        idx = np.arange(k)
    elif which == "largest":
        idx = np.arange(n - k, n)
    elif which == "largest_abs":
        idx = np.sort(np.argsort(-np.abs(vals), kind="stable")[:k])
    else:
        raise ValueError(f"unknown selection {which!r}")
    return EigenPairs(vals[idx], vecs[:, idx])
