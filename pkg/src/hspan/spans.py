"""Spans of Hadamard-product vector families.

For square complex matrices B_1 .. B_k, the family of vectors

    (B_1 x_1) o (B_2 x_2) o ... o (B_k x_k),   x_j in C^n,

(o is the entrywise product) spans exactly the column space of the Gram
matrix product G = (B_1 B_1*) o ... o (B_k B_k*). This module computes that
span both ways: through G (hadamard_span) and through independent oracles
that never look at G. The deterministic oracle uses multilinearity, each
slot's vector x_j can be restricted to basis vectors, so the n^k products of
column combinations already span the family. The randomized oracle samples
Gaussian x_j directly.

For positive semidefinite A_1 .. A_k there are two tighter statements: the
span of (A_1 x_1) o ... o (A_k x_k) is range(A_1 o ... o A_k)
(psd_hadamard_span, reachable from the general result with B_i a PSD square
root of A_i), and even a single shared vector x in every slot suffices
(single_vector_sample_span samples that thinner family).
"""

from __future__ import annotations

from functools import reduce

import numpy as np

from .errors import BudgetExceededError, DimensionError, NotPsdError
from .matrixops import as_matrix, hadamard
from .rng import STREAM_SAMPLE, STREAM_SINGLE, complex_gaussian, seed_children
from .subspace import Subspace, ToleranceConfig, range_basis

PSD_REL_TOL = 1e-10
ORACLE_COLUMN_BUDGET = 65536


class MatrixFamily:
    """An ordered family B_1 .. B_k of n x n complex matrices."""

    def __init__(self, matrices):
        mats = [as_matrix(m, f"matrix {i + 1}") for i, m in enumerate(matrices)]
        if not mats:
            raise DimensionError("family needs at least one matrix")
        n = mats[0].shape[0]
        for i, m in enumerate(mats):
            if m.shape != (n, n):
                raise DimensionError(f"matrix {i + 1} has shape {m.shape}, expected ({n}, {n})")
        stack = np.stack(mats)
        stack.setflags(write=False)
        self._stack = stack

    @property
    def n(self) -> int:
        return self._stack.shape[1]

    @property
    def k(self) -> int:
        return self._stack.shape[0]

    @property
    def matrices(self) -> tuple[np.ndarray, ...]:
        return tuple(self._stack[i] for i in range(self.k))

    def __len__(self):
        return self.k

    def __getitem__(self, i) -> np.ndarray:
        return self._stack[i]

    def __iter__(self):
        return iter(self.matrices)

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, k={self.k})"


class PsdFamily(MatrixFamily):
    """A family whose members must be Hermitian positive semidefinite.

    Hermitian defect up to 1e-10 * ||A||_F and eigenvalues down to
    -1e-10 * ||A||_F are accepted as roundoff.
    """

    def __init__(self, matrices):
        super().__init__(matrices)
        for i, a in enumerate(self):
            norm = float(np.linalg.norm(a))
            defect = float(np.linalg.norm(a - a.conj().T))
            if defect > PSD_REL_TOL * max(norm, 1e-300):
                raise NotPsdError(f"matrix {i + 1} is not Hermitian: defect {defect:.3e}")
            w = np.linalg.eigvalsh((a + a.conj().T) / 2.0)
            if w.size and float(w[0]) < -PSD_REL_TOL * norm:
                raise NotPsdError(f"matrix {i + 1} has negative eigenvalue {float(w[0]):.3e}")


def gram_hadamard(family: MatrixFamily) -> np.ndarray:
    """G = (B_1 B_1*) o ... o (B_k B_k*), Hermitian PSD by the Schur product theorem."""
    return reduce(hadamard, (b @ b.conj().T for b in family))


def hadamard_span(family: MatrixFamily, cfg: ToleranceConfig) -> Subspace:
    """Span of the Hadamard-product family, computed as range(G)."""
    return range_basis(gram_hadamard(family), cfg)


def basis_product_oracle(family: MatrixFamily, cfg: ToleranceConfig,
                         column_budget: int = ORACLE_COLUMN_BUDGET) -> Subspace:
    """Brute-force span: orthogonalize all n^k basis-combination products.

    Column i1..ik of the assembled matrix is (B_1 e_{i1}) o ... o (B_k e_{ik});
    multilinearity in each slot makes these products span the whole family.
    Never touches G, so it is an independent check of hadamard_span.
    """
    n, k = family.n, family.k
    if n**k > column_budget:
        raise BudgetExceededError(f"oracle needs n^k = {n**k} columns, budget is {column_budget}")
    h = family[0]
    for b in family.matrices[1:]:
        h = (h[:, :, None] * b[:, None, :]).reshape(n, -1)
    return range_basis(h, cfg)


def random_sample_span(family: MatrixFamily, samples: int, cfg: ToleranceConfig) -> Subspace:
    """Span of `samples` random family members, one Gaussian x_j per slot.

    Deterministic given cfg.seed. Sample s uses the s-th child seed, so the
    drawn vectors for the first s samples do not depend on the total count.
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    n, k = family.n, family.k
    cols = np.empty((n, samples), dtype=np.complex128)
    for s, child in enumerate(seed_children(cfg.seed, STREAM_SAMPLE, samples)):
        rng = np.random.default_rng(child)
        col = np.ones(n, dtype=np.complex128)
        for b in family:
            col = col * (b @ complex_gaussian(rng, n))
        cols[:, s] = col
    return range_basis(cols, cfg)


def psd_sqrt(a: np.ndarray) -> np.ndarray:
    """Hermitian PSD square root via eigendecomposition.

    Eigenvalues inside the PSD acceptance band, |w| <= 1e-10 * ||A||_F, are
    indistinguishable from zero at this type's tolerance and are zeroed
    before taking the root. Without that truncation the root would turn
    eigenvalue roundoff into sqrt(roundoff) singular values, inflating the
    numerical rank of the result above the rank of A.
    """
    a = as_matrix(a, "A")
    n, m = a.shape
    if n != m:
        raise DimensionError(f"square root needs a square matrix, got {a.shape}")
    norm = float(np.linalg.norm(a))
    defect = float(np.linalg.norm(a - a.conj().T))
    if defect > PSD_REL_TOL * max(norm, 1e-300):
        raise NotPsdError(f"matrix is not Hermitian: defect {defect:.3e}")
    w, v = np.linalg.eigh((a + a.conj().T) / 2.0)
    if w.size and float(w[0]) < -PSD_REL_TOL * norm:
        raise NotPsdError(f"matrix has negative eigenvalue {float(w[0]):.3e}")
    w = np.where(w <= PSD_REL_TOL * norm, 0.0, w)
    root = (v * np.sqrt(w)) @ v.conj().T
    return (root + root.conj().T) / 2.0


def psd_hadamard_span(family: PsdFamily, cfg: ToleranceConfig) -> Subspace:
    """Span of the PSD-family products, computed as range(A_1 o ... o A_k)."""
    if not isinstance(family, PsdFamily):
        raise NotPsdError("psd_hadamard_span needs a PsdFamily")
    return range_basis(reduce(hadamard, family.matrices), cfg)


def single_vector_sample_span(family: PsdFamily, cfg: ToleranceConfig,
                              stability_window: int = 5,
                              max_samples: int | None = None) -> Subspace:
    """Span of (A_1 x) o ... o (A_k x) over random single vectors x.

    Draws Gaussian x until the accumulated rank has not moved for
    `stability_window` consecutive samples, or `max_samples` (default 10n)
    is reached. For PSD members this span equals psd_hadamard_span with
    probability 1.
    """
    if not isinstance(family, PsdFamily):
        raise NotPsdError("single_vector_sample_span needs a PsdFamily")
    if stability_window < 1:
        raise ValueError(f"stability_window must be >= 1, got {stability_window}")
    n = family.n
    if max_samples is None:
        max_samples = 10 * n
    if max_samples < 1:
        raise ValueError(f"max_samples must be >= 1, got {max_samples}")

    children = seed_children(cfg.seed, STREAM_SINGLE, max_samples)
    cols = np.empty((n, max_samples), dtype=np.complex128)
    span = range_basis(np.zeros((n, 0), dtype=np.complex128), cfg)
    stable = 0
    drawn = 0
    for child in children:
        rng = np.random.default_rng(child)
        x = complex_gaussian(rng, n)
        col = np.ones(n, dtype=np.complex128)
        for a in family:
            col = col * (a @ x)
        cols[:, drawn] = col
        drawn += 1
        grown = range_basis(cols[:, :drawn], cfg)
        if grown.rank == span.rank:
            stable += 1
        else:
            stable = 0
        span = grown
        if stable >= stability_window:
            break
    return span
