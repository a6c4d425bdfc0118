"""Numerical subspace algebra.

A subspace of C^n is carried as an orthonormal basis, produced by a
rank-revealing SVD with a spectral-relative threshold: singular values above
rank_rel_tol * max(rows, cols) * sigma_1 count toward the rank. Distances,
containment and equality are all phrased through orthogonal projectors
P = Q Q*, which makes every downstream check independent of the particular
basis chosen.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NotHermitianError
from .matrixops import as_matrix, as_vector

HERMITIAN_REL_TOL = 1e-10
BASIS_ORTHO_TOL = 1e-10


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical policy: rank threshold, identity tolerance, RNG seed."""

    rank_rel_tol: float = 1e-10
    identity_abs_tol: float = 1e-10
    seed: int = 0

    def __post_init__(self):
        if not self.rank_rel_tol > 0:
            raise ValueError(f"rank_rel_tol must be positive, got {self.rank_rel_tol}")
        if not self.identity_abs_tol > 0:
            raise ValueError(f"identity_abs_tol must be positive, got {self.identity_abs_tol}")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError(f"seed must fit in 64 unsigned bits, got {self.seed}")


class Subspace:
    """A subspace of C^n: ambient dimension, rank, orthonormal basis.

    tol_used records the absolute singular-value cutoff that produced the
    rank decision (0.0 when no thresholding happened).
    """

    __slots__ = ("ambient_dim", "rank", "basis", "tol_used")

    def __init__(self, basis: np.ndarray, tol_used: float = 0.0):
        q = as_matrix(basis, "basis").copy()
        n, r = q.shape
        if n < 1:
            raise DimensionError("ambient dimension must be positive")
        if r > n:
            raise DimensionError(f"rank {r} exceeds ambient dimension {n}")
        gram = q.conj().T @ q
        defect = np.linalg.norm(gram - np.eye(r))
        if defect > BASIS_ORTHO_TOL * max(1, r):
            raise ValueError(f"basis columns not orthonormal, defect {defect:.3e}")
        q.setflags(write=False)
        object.__setattr__(self, "ambient_dim", n)
        object.__setattr__(self, "rank", r)
        object.__setattr__(self, "basis", q)
        object.__setattr__(self, "tol_used", float(tol_used))

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    def __repr__(self):
        return f"Subspace(ambient_dim={self.ambient_dim}, rank={self.rank})"


def hermitian_eig(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    The input may deviate from exact Hermitian symmetry by at most
    1e-10 * ||A||_F; it is symmetrized before solving.
    """
    a = as_matrix(a, "A")
    n, m = a.shape
    if n != m:
        raise DimensionError(f"eigendecomposition needs a square matrix, got {a.shape}")
    norm = np.linalg.norm(a)
    defect = np.linalg.norm(a - a.conj().T)
    if defect > HERMITIAN_REL_TOL * max(norm, 1e-300):
        raise NotHermitianError(f"matrix is not Hermitian: ||A - A*|| = {defect:.3e}, ||A|| = {norm:.3e}")
    w, v = np.linalg.eigh((a + a.conj().T) / 2.0)
    return w[::-1].copy(), v[:, ::-1].copy()


def range_basis(a: np.ndarray, cfg: ToleranceConfig) -> Subspace:
    """Orthonormal basis of the column space of A under cfg's rank policy."""
    a = as_matrix(a, "A")
    n = a.shape[0]
    if a.shape[1] == 0:
        return Subspace(np.zeros((n, 0), dtype=np.complex128), 0.0)
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    if s[0] == 0.0:
        return Subspace(np.zeros((n, 0), dtype=np.complex128), 0.0)
    cutoff = cfg.rank_rel_tol * max(a.shape) * s[0]
    r = int(np.count_nonzero(s > cutoff))
    return Subspace(u[:, :r], cutoff)


def projector(s: Subspace) -> np.ndarray:
    """Orthogonal projector onto the subspace, P = Q Q*."""
    return s.basis @ s.basis.conj().T


def complement_projector(s: Subspace) -> np.ndarray:
    """Projector onto the orthogonal complement, E = I - Q Q*."""
    return np.eye(s.ambient_dim, dtype=np.complex128) - projector(s)


def subspace_distance(s1: Subspace, s2: Subspace) -> float:
    """Frobenius distance of the projectors; 0 iff the subspaces coincide."""
    if s1.ambient_dim != s2.ambient_dim:
        raise DimensionError(f"ambient dimensions differ: {s1.ambient_dim} vs {s2.ambient_dim}")
    return float(np.linalg.norm(projector(s1) - projector(s2)))


def contains(s: Subspace, v: np.ndarray, tol: float) -> bool:
    """Whether v lies in s: ||v - Pv|| <= tol * max(1, ||v||)."""
    v = as_vector(v, "v")
    if v.shape[0] != s.ambient_dim:
        raise DimensionError(f"vector dimension {v.shape[0]} does not match ambient {s.ambient_dim}")
    residual = v - s.basis @ (s.basis.conj().T @ v)
    return float(np.linalg.norm(residual)) <= tol * max(1.0, float(np.linalg.norm(v)))


def equal(s1: Subspace, s2: Subspace, tol: float) -> bool:
    return subspace_distance(s1, s2) <= tol
