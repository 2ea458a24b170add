"""Dominant eigenpair of positive matrices and the eigenvalue-optimal completion.

The completion substitutes x = e^t for every missing upper-triangle entry and
minimizes lambda_max over t by cyclic coordinate descent.  In log-coordinates
lambda_max is strictly convex, so each univariate subproblem has a unique
stationary point; it is located by bracketing the sign change of the
derivative d lambda_max / dt and bisecting, accelerated with a fixed-point
step derived from the Perron left/right eigenvectors:

    d lambda / dt = (u_i v_j e^t - u_j v_i e^{-t}) / (u . v)

so the frozen-eigenvector stationary point is t = log(u_j v_i / (u_i v_j)) / 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    CompletionProblem,
    IncompletePCM,
    NoConvergence,
    require_connected,
)

MAX_POWER_ITER = 100_000


@dataclass(frozen=True)
class EigenPair:
    lambda_max: float
    vector: np.ndarray  # right Perron vector, sum-to-one
    iterations: int
    residual: float


@dataclass(frozen=True)
class OptimizerTrace:
    sweeps: int
    final_gradient_norm: float
    objective_history: tuple


def dominant_eigenpair(matrix, tol: float = 1e-12, v0=None) -> EigenPair:
    """Power iteration with per-step normalization for a positive matrix.

    Stops when both the relative eigenvalue change and the normalized
    residual ||A v - lambda v||_inf / ||v||_inf fall below tol.
    """
    a = np.asarray(matrix, dtype=float)
    n = a.shape[0]
    v = np.full(n, 1.0 / n) if v0 is None else np.asarray(v0, float) / np.sum(v0)
    lam = 0.0
    for it in range(1, MAX_POWER_ITER + 1):
        w = a @ v
        lam_new = float(np.sum(w))  # v sums to one
        residual = float(np.max(np.abs(w - lam_new * v)) / np.max(np.abs(v)))
        converged = residual <= tol * max(1.0, lam_new) and abs(lam_new - lam) <= tol * lam_new
        v = w / lam_new
        lam = lam_new
        if converged:
            return EigenPair(lambda_max=lam, vector=v, iterations=it, residual=residual)
    raise NoConvergence(f"power iteration did not converge in {MAX_POWER_ITER} steps")


def saaty_ci(lambda_max: float, n: int) -> float:
    """Consistency index (lambda_max - n) / (n - 1)."""
    return (lambda_max - n) / (n - 1)


def _perron_pair(a, v0=None, u0=None, tol=1e-13):
    """Right and left Perron vectors plus lambda_max, by twin power iteration.

    The expensive residual test only runs once the eigenvalue estimate has
    settled; the hot loop is two matvecs and two normalizations.
    """
    n = a.shape[0]
    v = np.full(n, 1.0 / n) if v0 is None else v0 / v0.sum()
    u = np.full(n, 1.0 / n) if u0 is None else u0 / u0.sum()
    at = a.T
    lam = 0.0
    for _ in range(MAX_POWER_ITER):
        w = a @ v
        z = at @ u
        lam_new = w.sum()
        v = w / lam_new
        u = z / z.sum()
        if abs(lam_new - lam) <= 0.25 * tol * lam_new:
            w = a @ v
            z = at @ u
            lam_c = w.sum()
            res = np.abs(w - lam_c * v).max() / v.max()
            res_l = np.abs(z - z.sum() * u).max() / u.max()
            v = w / lam_c
            u = z / z.sum()
            if res <= tol * lam_c and res_l <= tol * lam_c:
                return float(lam_c), v, u
            lam = lam_c
        else:
            lam = lam_new
    raise NoConvergence(f"power iteration did not converge in {MAX_POWER_ITER} steps")


def _coordinate_minimize(a, i, j, t0, v0, u0, tol_t=1e-13, tol_eig=1e-13,
                         max_steps=200):
    """Minimize lambda_max(a) over the log-value t at position (i, j), 0-based.

    Returns (t, lambda, v, u).  The derivative of lambda_max with respect to t
    is monotone (strict convexity), so a sign-change bracket plus bisection is
    globally convergent; the eigenvector fixed-point proposal usually lands
    inside the bracket and converges superlinearly.
    """

    def eval_at(t, v, u):
        a[i, j] = math.exp(t)
        a[j, i] = math.exp(-t)
        lam, v, u = _perron_pair(a, v0=v, u0=u, tol=tol_eig)
        uv = float(u @ v)
        grad = (u[i] * v[j] * a[i, j] - u[j] * v[i] * a[j, i]) / uv
        return lam, v, u, grad

    t = t0
    lam, v, u, grad = eval_at(t, v0, u0)

    # Bracket a sign change of the derivative, expanding from the start point.
    lo = hi = t
    glo = ghi = grad
    step = 1.0
    while glo > 0:
        lo -= step
        _, _, _, glo = eval_at(lo, v, u)
        step *= 2.0
        if step > 2 ** 60:
            raise NoConvergence("derivative bracket expansion failed (low side)")
    step = 1.0
    while ghi < 0:
        hi += step
        _, _, _, ghi = eval_at(hi, v, u)
        step *= 2.0
        if step > 2 ** 60:
            raise NoConvergence("derivative bracket expansion failed (high side)")

    for _ in range(max_steps):
        if hi - lo <= tol_t:
            break
        # Fixed-point proposal from the current eigenvectors; fall back to
        # the bracket midpoint whenever it leaves the bracket.
        ratio = (u[j] * v[i]) / (u[i] * v[j])
        t_prop = 0.5 * math.log(ratio)
        if not (lo < t_prop < hi):
            t_prop = 0.5 * (lo + hi)
        if abs(t_prop - t) <= tol_t * max(1.0, abs(t)):
            t = t_prop
            lam, v, u, grad = eval_at(t, v, u)
            break
        t = t_prop
        lam, v, u, grad = eval_at(t, v, u)
        if grad < 0:
            lo = t
        else:
            hi = t
    else:
        raise NoConvergence("univariate line search did not converge")

    lam, v, u, grad = eval_at(t, v, u)
    return t, lam, v, u


def minimize_lambda_max(pcm: IncompletePCM, initial=None, max_sweeps=500,
                        move_tol=1e-10, objective_tol=1e-12):
    """Coordinate descent over the missing log-entries; returns (t, trace).

    ``initial`` is the starting log-fill vector; by default the geometric
    least squares fill, which is already optimal for order <= 4.
    """
    require_connected(pcm)
    problem = CompletionProblem.from_matrix(pcm)
    m = problem.m
    if m == 0:
        pair = dominant_eigenpair(pcm.values)
        trace = OptimizerTrace(sweeps=0, final_gradient_norm=0.0,
                               objective_history=(pair.lambda_max,))
        return np.zeros(0), trace

    if initial is None:
        from .llsm import llsm_weights  # late import: llsm depends on this module
        w = llsm_weights(pcm).weights
        t = np.array([math.log(w[i - 1] / w[j - 1]) for i, j in problem.missing_positions])
    else:
        t = np.asarray(initial, dtype=float).copy()
        if t.shape != (m,):
            raise ValueError(f"expected {m} initial log variables, got {t.shape}")

    a = problem.completed(t)
    n = pcm.order
    v = np.full(n, 1.0 / n)
    u = np.full(n, 1.0 / n)
    history = []
    last_move = math.inf
    for sweep in range(1, max_sweeps + 1):
        # loose inner tolerances while far from the optimum, tight at the end
        refine = last_move < 1e-6
        tol_t = 1e-13 if refine else 1e-8
        tol_eig = 1e-13 if refine else 1e-10
        max_move = 0.0
        for k, (i, j) in enumerate(problem.missing_positions):
            t_new, lam, v, u = _coordinate_minimize(a, i - 1, j - 1, t[k], v, u,
                                                    tol_t=tol_t, tol_eig=tol_eig)
            max_move = max(max_move, abs(t_new - t[k]))
            t[k] = t_new
        lam, v, u = _perron_pair(a, v0=v, u0=u)
        history.append(lam)
        last_move = max_move
        small_obj = len(history) >= 2 and abs(history[-2] - history[-1]) <= objective_tol * history[-1]
        if refine and max_move < move_tol and (small_obj or len(history) == 1):
            break
    else:
        raise NoConvergence(f"coordinate descent did not converge in {max_sweeps} sweeps")

    # Final gradient via the eigenvector formula, for the trace.
    lam, v, u = _perron_pair(a, v0=v, u0=u)
    uv = float(u @ v)
    grads = []
    for i, j in problem.missing_positions:
        grads.append((u[i - 1] * v[j - 1] * a[i - 1, j - 1]
                      - u[j - 1] * v[i - 1] * a[j - 1, i - 1]) / uv)
    trace = OptimizerTrace(sweeps=len(history),
                           final_gradient_norm=float(np.max(np.abs(grads))),
                           objective_history=tuple(history))
    return t, trace


def ev_completion(pcm: IncompletePCM, initial=None):
    """Eigenvalue-optimal completion: fills minimizing lambda_max.

    Returns (CompletionResult, OptimizerTrace).  Weights are the Perron right
    eigenvector of the completed matrix.
    """
    from .llsm import CompletionResult, WeightVector, gci

    t, trace = minimize_lambda_max(pcm, initial=initial)
    problem = CompletionProblem.from_matrix(pcm)
    b = problem.completed(t)
    pair = dominant_eigenpair(b)
    weights = WeightVector.from_raw(pair.vector)
    n = pcm.order
    result = CompletionResult(
        matrix=b,
        filled=frozenset(problem.missing_positions),
        method="Eigenvalue",
        weights=weights,
        lambda_max=pair.lambda_max,
        ci=saaty_ci(pair.lambda_max, n),
        gci=gci(b, weights),
    )
    return result, trace
