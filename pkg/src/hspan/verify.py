"""Numerical certification of the identities behind the span equality.

The span equality rests on a short chain of exact identities. Writing
G = (B_1 B_1*) o ... o (B_k B_k*), Q for an orthonormal basis of range(G),
and E = I - Q Q* for the projector onto its orthogonal complement:

* column identity: the i-th column of G is (B_1 B_1* e_i) o ... o (B_k B_k* e_i),
  which places every column of G inside the span of the product family;
* tensor witness: T = sum_i (B_1* e_i) (x) ... (x) (B_k* e_i) (x) (conj(E) e_i)
  collects the other inclusion into a single vector;
* norm-trace identity: ||T||^2 = trace(E G), which vanishes because E
  annihilates range(G);
* pairing identity: <(B_1 x_1) o ... o (B_k x_k), E y> =
  <x_1 (x) ... (x) x_k (x) conj(y), T>, so T = 0 forces every family member
  to be orthogonal to the complement of range(G).

Each identity is evaluated with its two sides computed through disjoint
operation chains (direct summation against matrix products, per-column
matvecs against a full multiply), so a bug in one kernel cannot certify
itself. Residuals are normalized by scale = prod_i ||B_i||_F and the vector
norms involved, and judged against the module tolerances below: exact
algebraic identities at 1e-13 or 1e-12, identities that pass through a rank
decision at 1e-7 or 1e-8.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from .errors import BudgetExceededError, DimensionError
from .matrixops import frobenius_norm, hadamard, inner, matmul, tensor_vec, trace
from .rng import STREAM_ORTHO, STREAM_PAIRING, complex_gaussian, seed_children
from .spans import (MatrixFamily, PsdFamily, gram_hadamard, psd_hadamard_span,
                    psd_sqrt)
from .subspace import (ToleranceConfig, complement_projector, range_basis,
                       subspace_distance)

COLUMN_IDENTITY_TOL = 1e-13
PAIRING_TOL = 1e-12
NORM_TRACE_TOL = 1e-8
NORM_TRACE_IMAG_TOL = 1e-10
ORTHOGONALITY_TOL = 1e-7
SPAN_DISTANCE_TOL = 1e-8
TENSOR_ENTRY_BUDGET = 1_000_000


def family_scale(family: MatrixFamily) -> float:
    """prod_i ||B_i||_F, the natural magnitude of the family."""
    return float(np.prod([frobenius_norm(b) for b in family]))


@dataclass(frozen=True)
class VerificationReport:
    """Residuals and pass flags for every identity check on one family.

    Checks that would exceed the tensor entry budget are listed in `skipped`
    and excluded from `checks`; they never count as passed. `passed` is the
    conjunction of the checks that actually ran.
    """

    column_identity_residual: float
    tensor_norm_sq: float | None
    trace_eg: complex | None
    norm_trace_gap: float | None
    pairing_residuals: tuple[float, ...]
    orthogonality_residuals: tuple[float, ...]
    psd_span_distance: float | None
    checks: dict[str, bool]
    skipped: tuple[str, ...] = field(default=())
    passed: bool = False

    def to_dict(self) -> dict:
        """JSON-ready form; the complex trace becomes a [re, im] pair."""
        return {
            "column_identity_residual": self.column_identity_residual,
            "tensor_norm_sq": self.tensor_norm_sq,
            "trace_eg": None if self.trace_eg is None else [self.trace_eg.real, self.trace_eg.imag],
            "norm_trace_gap": self.norm_trace_gap,
            "pairing_residuals": list(self.pairing_residuals),
            "orthogonality_residuals": list(self.orthogonality_residuals),
            "psd_span_distance": self.psd_span_distance,
            "checks": dict(self.checks),
            "skipped": list(self.skipped),
            "passed": self.passed,
        }


def column_identity_residual(family: MatrixFamily) -> float:
    """max_i ||G e_i - (B_1 B_1* e_i) o ... o (B_k B_k* e_i)|| / max(1, ||G||_F).

    The left side reads columns out of the fully assembled G; the right side
    rebuilds each column from per-matrix matvecs and never forms a Gram
    matrix.
    """
    g = gram_hadamard(family)
    denom = max(1.0, frobenius_norm(g))
    n = family.n
    worst = 0.0
    for i in range(n):
        e_i = np.zeros(n, dtype=np.complex128)
        e_i[i] = 1.0
        col = reduce(hadamard, (b @ (b.conj().T @ e_i) for b in family))
        worst = max(worst, float(np.linalg.norm(g[:, i] - col)))
    return worst / denom


def _complement(family: MatrixFamily, cfg: ToleranceConfig):
    g = gram_hadamard(family)
    return g, complement_projector(range_basis(g, cfg))


def _tensor_from(family: MatrixFamily, e: np.ndarray) -> np.ndarray:
    """T = sum_i (B_1* e_i) (x) ... (x) (B_k* e_i) (x) (conj(E) e_i)."""
    n = family.n
    adjoints = [b.conj().T for b in family]
    e_bar = np.conj(e)
    t = np.zeros(n ** (family.k + 1), dtype=np.complex128)
    for i in range(n):
        factors = [adj[:, i] for adj in adjoints]
        factors.append(e_bar[:, i])
        t += reduce(tensor_vec, factors)
    return t


def _require_tensor_budget(family: MatrixFamily, entry_budget: int):
    entries = family.n ** (family.k + 1)
    if entries > entry_budget:
        raise BudgetExceededError(
            f"tensor witness needs n^(k+1) = {entries} entries, budget is {entry_budget}")


def tensor_witness(family: MatrixFamily, cfg: ToleranceConfig,
                   entry_budget: int = TENSOR_ENTRY_BUDGET) -> np.ndarray:
    """The witness vector T of dimension n^(k+1); the span equality says T = 0."""
    _require_tensor_budget(family, entry_budget)
    _, e = _complement(family, cfg)
    return _tensor_from(family, e)


def norm_trace_identity(family: MatrixFamily, cfg: ToleranceConfig,
                        entry_budget: int = TENSOR_ENTRY_BUDGET) -> tuple[float, complex]:
    """Both sides of ||T||^2 = trace(E G), computed independently.

    The norm side sums |T_p|^2 over the explicit tensor; the trace side is a
    plain matrix product, no tensor involved.
    """
    _require_tensor_budget(family, entry_budget)
    g, e = _complement(family, cfg)
    t = _tensor_from(family, e)
    tensor_norm_sq = float(np.sum(np.abs(t) ** 2))
    trace_eg = trace(matmul(e, g))
    return tensor_norm_sq, trace_eg


def _pairing_residual(family, xs, y, e, t, scale):
    h = reduce(hadamard, (b @ x for b, x in zip(family, xs)))
    lhs = inner(h, e @ y)
    tx = reduce(tensor_vec, list(xs) + [np.conj(y)])
    rhs = inner(tx, t)
    denom = max(1.0, scale * float(np.prod([np.linalg.norm(x) for x in xs])) * float(np.linalg.norm(y)))
    return abs(lhs - rhs) / denom


def pairing_identity_residual(family: MatrixFamily, xs, y, cfg: ToleranceConfig,
                              entry_budget: int = TENSOR_ENTRY_BUDGET) -> float:
    """|<(B_1 x_1) o ... o (B_k x_k), E y> - <x_1 (x)...(x) x_k (x) conj(y), T>|,
    normalized by max(1, scale * prod ||x_j|| * ||y||).

    The left side works in C^n (entrywise products, one projector matvec);
    the right side pairs explicit tensors in C^(n^(k+1)).
    """
    xs = [np.asarray(x, dtype=np.complex128) for x in xs]
    y = np.asarray(y, dtype=np.complex128)
    if len(xs) != family.k:
        raise DimensionError(f"need {family.k} slot vectors, got {len(xs)}")
    for x in xs:
        if x.shape != (family.n,):
            raise DimensionError(f"slot vector has shape {x.shape}, expected ({family.n},)")
    if y.shape != (family.n,):
        raise DimensionError(f"y has shape {y.shape}, expected ({family.n},)")
    _require_tensor_budget(family, entry_budget)
    _, e = _complement(family, cfg)
    t = _tensor_from(family, e)
    return _pairing_residual(family, xs, y, e, t, family_scale(family))


def _orthogonality_residuals(family, trials, cfg, e, scale):
    n, k = family.n, family.k
    out = []
    for child in seed_children(cfg.seed, STREAM_ORTHO, trials):
        rng = np.random.default_rng(child)
        xs = [complex_gaussian(rng, n) for _ in range(k)]
        y = complex_gaussian(rng, n)
        h = reduce(hadamard, (b @ x for b, x in zip(family, xs)))
        num = abs(inner(h, e @ y))
        denom = scale * float(np.prod([np.linalg.norm(x) for x in xs])) * float(np.linalg.norm(y))
        if denom == 0.0:
            out.append(0.0 if num == 0.0 else float("inf"))
        else:
            out.append(num / denom)
    return out


def orthogonality_check(family: MatrixFamily, trials: int, cfg: ToleranceConfig) -> list[float]:
    """Normalized |<(B_1 x_1) o ... o (B_k x_k), E y>| over random trials.

    These inner products vanish identically by the span equality; the
    residuals measure how well the computed range(G) captures the family.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    _, e = _complement(family, cfg)
    return _orthogonality_residuals(family, trials, cfg, e, family_scale(family))


def verify_all(family: MatrixFamily, cfg: ToleranceConfig, *,
               pairing_trials: int = 10, orthogonality_trials: int = 50,
               entry_budget: int = TENSOR_ENTRY_BUDGET) -> VerificationReport:
    """Run every identity check on one family and aggregate a report.

    A PsdFamily is first reduced to its square-root family, on which the
    identity checks run; the report then also records the distance between
    range(A_1 o ... o A_k) and the square-root family's span, which the PSD
    specialization asserts is zero.
    """
    if pairing_trials < 0 or orthogonality_trials < 1:
        raise ValueError("trial counts out of range")
    psd_input = isinstance(family, PsdFamily)
    if psd_input:
        product_span = psd_hadamard_span(family, cfg)
        bfam = MatrixFamily([psd_sqrt(a) for a in family])
    else:
        bfam = family

    scale = family_scale(bfam)
    g = gram_hadamard(bfam)
    span = range_basis(g, cfg)
    e = complement_projector(span)

    checks: dict[str, bool] = {}
    skipped: list[str] = []

    column_res = column_identity_residual(bfam)
    checks["column_identity"] = column_res <= COLUMN_IDENTITY_TOL

    tensor_norm_sq = None
    trace_eg = None
    norm_trace_gap = None
    pairing_residuals: list[float] = []
    if bfam.n ** (bfam.k + 1) <= entry_budget:
        t = _tensor_from(bfam, e)
        tensor_norm_sq = float(np.sum(np.abs(t) ** 2))
        trace_eg = trace(matmul(e, g))
        norm_trace_gap = abs(tensor_norm_sq - trace_eg.real)
        s2 = scale * scale
        checks["norm_trace"] = (norm_trace_gap <= NORM_TRACE_TOL * s2
                                and tensor_norm_sq <= NORM_TRACE_TOL * s2
                                and abs(trace_eg.real) <= NORM_TRACE_TOL * s2
                                and abs(trace_eg.imag) <= NORM_TRACE_IMAG_TOL * s2)
        for child in seed_children(cfg.seed, STREAM_PAIRING, pairing_trials):
            rng = np.random.default_rng(child)
            xs = [complex_gaussian(rng, bfam.n) for _ in range(bfam.k)]
            y = complex_gaussian(rng, bfam.n)
            pairing_residuals.append(_pairing_residual(bfam, xs, y, e, t, scale))
        checks["pairing"] = max(pairing_residuals, default=0.0) <= PAIRING_TOL
    else:
        skipped.extend(["norm_trace", "pairing"])

    orthogonality_residuals = _orthogonality_residuals(
        bfam, orthogonality_trials, cfg, e, scale)
    checks["orthogonality"] = max(orthogonality_residuals) <= ORTHOGONALITY_TOL

    psd_distance = None
    if psd_input:
        psd_distance = subspace_distance(product_span, span)
        checks["psd_span"] = psd_distance <= SPAN_DISTANCE_TOL

    return VerificationReport(
        column_identity_residual=column_res,
        tensor_norm_sq=tensor_norm_sq,
        trace_eg=trace_eg,
        norm_trace_gap=norm_trace_gap,
        pairing_residuals=tuple(pairing_residuals),
        orthogonality_residuals=tuple(orthogonality_residuals),
        psd_span_distance=psd_distance,
        checks=checks,
        skipped=tuple(skipped),
        passed=all(checks.values()),
    )
