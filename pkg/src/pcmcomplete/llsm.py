"""Logarithmic least squares weights, optimal completion, and the GCI.

The weight vector minimizes sum over known (i, j) of
[log a_ij - log(w_i / w_j)]^2.  In y = log w the first-order conditions are
the linear system L y = r with L the Laplacian of the comparison graph and
r_i the row sum of log a_ij over known entries; the gauge is fixed by
pinning y_1 = 0, which keeps the grounded system nonsingular whenever the
graph is connected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    CompletionProblem,
    IncompletePCM,
    Singular,
    require_connected,
)
from .eigen import dominant_eigenpair, saaty_ci

SOLVE_RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class WeightVector:
    """Positive priority vector, normalized to sum to one."""

    weights: np.ndarray

    @classmethod
    def from_raw(cls, raw) -> "WeightVector":
        w = np.asarray(raw, dtype=float)
        if np.any(w <= 0):
            raise ValueError("weights must be strictly positive")
        return cls(w / w.sum())

    def ratio(self, i: int, j: int) -> float:
        """w_i / w_j, 1-based."""
        return float(self.weights[i - 1] / self.weights[j - 1])


@dataclass(frozen=True)
class CompletionResult:
    matrix: np.ndarray          # complete positive reciprocal matrix
    filled: frozenset           # 1-based upper-triangle positions that were missing
    method: str                 # "LLSM" | "Eigenvalue"
    weights: WeightVector
    lambda_max: float
    ci: float
    gci: float

    def fill_value(self, i: int, j: int) -> float:
        return float(self.matrix[i - 1, j - 1])


def llsm_log_weights(pcm: IncompletePCM) -> np.ndarray:
    """Solve L y = r with gauge y_1 = 0; returns the log-weight vector y."""
    require_connected(pcm)
    a = pcm.values
    n = pcm.order
    known = pcm.known_mask & ~np.eye(n, dtype=bool)
    lap = np.diag(known.sum(axis=1).astype(float)) - known.astype(float)
    r = np.where(known, np.log(np.where(known, a, 1.0)), 0.0).sum(axis=1)
    y = np.zeros(n)
    try:
        y[1:] = np.linalg.solve(lap[1:, 1:], r[1:])
    except np.linalg.LinAlgError as exc:
        raise Singular(f"grounded Laplacian solve failed: {exc}") from None
    residual = float(np.max(np.abs(lap @ y - r)))
    if residual > SOLVE_RESIDUAL_TOL:
        raise Singular(f"linear system residual {residual} exceeds {SOLVE_RESIDUAL_TOL}")
    return y


def llsm_weights(pcm: IncompletePCM) -> WeightVector:
    """Logarithmic least squares priority vector of an incomplete matrix."""
    return WeightVector.from_raw(np.exp(llsm_log_weights(pcm)))


def gci(matrix, w: WeightVector) -> float:
    """Geometric consistency index of a complete matrix at weights w.

    GCI = 2 / ((n-1)(n-2)) * sum_{i<j} log(a_ij w_j / w_i)^2; zero for n = 2.
    """
    a = np.asarray(matrix, dtype=float)
    n = a.shape[0]
    if n == 2:
        return 0.0
    y = np.log(w.weights)
    iu, ju = np.triu_indices(n, k=1)
    resid = np.log(a[iu, ju]) - (y[iu] - y[ju])
    return float(2.0 / ((n - 1) * (n - 2)) * np.sum(resid ** 2))


def llsm_completion(pcm: IncompletePCM) -> CompletionResult:
    """Fill every missing entry with w_i / w_j at the least squares weights."""
    w = llsm_weights(pcm)
    problem = CompletionProblem.from_matrix(pcm)
    t = np.array([math.log(w.ratio(i, j)) for i, j in problem.missing_positions])
    b = problem.completed(t)
    pair = dominant_eigenpair(b)
    n = pcm.order
    return CompletionResult(
        matrix=b,
        filled=frozenset(problem.missing_positions),
        method="LLSM",
        weights=w,
        lambda_max=pair.lambda_max,
        ci=saaty_ci(pair.lambda_max, n),
        gci=gci(b, w),
    )
