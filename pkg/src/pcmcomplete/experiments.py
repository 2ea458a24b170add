"""Counterexamples, method comparison, and random instance generation.

The order-5 matrix below is the smallest instance on which the two optimal
completions disagree: the least squares fill of the (1,5) entry is 0.1705
while the eigenvalue fill is 0.1798.  Cloning the second alternative extends
the disagreement to every higher order.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    IncompletePCM,
    OrderTooSmall,
    TooManyMissing,
    clone_alternative,
    comparison_graph,
    parse_matrix,
    require_connected,
)
from .eigen import ev_completion
from .llsm import llsm_completion

LEMMA2_CSV = """\
1,1/2,5,1/6,*
2,1,4,1/2,1/6
1/5,1/4,1,1/6,1/7
6,2,6,1,1/2
*,6,7,2,1
"""


@dataclass(frozen=True)
class CompletionComparison:
    order: int
    per_entry_log_divergence: dict   # 1-based (i, j) -> |log(b_ij / c_ij)|
    max_divergence: float
    max_position: tuple
    coincide: bool
    tolerance: float


def lemma2_matrix() -> IncompletePCM:
    """The order-5 instance whose two optimal completions differ."""
    return parse_matrix(LEMMA2_CSV, format="csv")


def compare_completions(pcm: IncompletePCM, tolerance: float = 1e-6) -> CompletionComparison:
    """Entrywise log-ratio divergence between the two optimal completions."""
    require_connected(pcm)
    llsm = llsm_completion(pcm)
    ev, _ = ev_completion(pcm)
    n = pcm.order
    divergence = {}
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            if (i, j) in llsm.filled:
                divergence[(i, j)] = abs(math.log(llsm.fill_value(i, j) / ev.fill_value(i, j)))
            else:
                divergence[(i, j)] = 0.0  # both methods copy the known entry
    max_position, max_div = max(divergence.items(), key=lambda kv: kv[1])
    return CompletionComparison(
        order=n,
        per_entry_log_divergence=divergence,
        max_divergence=max_div,
        max_position=max_position,
        coincide=max_div <= tolerance,
        tolerance=tolerance,
    )


def counterexample_of_order(n: int) -> IncompletePCM:
    """An order-n incomplete matrix whose two completions differ (n >= 5)."""
    if n <= 4:
        raise OrderTooSmall(
            f"no counterexample of order {n} exists: the completions coincide up to order 4")
    pcm = lemma2_matrix()
    while pcm.order < n:
        pcm = clone_alternative(pcm, 2)
    return pcm


def random_connected_incomplete(n: int, missing_count: int, seed: int) -> IncompletePCM:
    """Random reciprocal matrix with a connected pattern of known entries.

    Known entries are log-uniform on [1/9, 9].  Missing pairs are removed one
    at a time, uniformly among the edges whose removal keeps the comparison
    graph connected, so a spanning tree of known entries always survives.
    """
    max_missing = n * (n - 1) // 2 - (n - 1)
    if not 0 <= missing_count <= max_missing:
        raise TooManyMissing(
            f"missing_count {missing_count} outside 0..{max_missing} for order {n}")
    rng = np.random.default_rng(seed)
    a = np.ones((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            v = math.exp(rng.uniform(math.log(1 / 9), math.log(9)))
            a[i, j] = v
            a[j, i] = 1.0 / v
    pcm = IncompletePCM.from_values(a)
    for _ in range(missing_count):
        candidates = []
        for i, j in pcm.known_pairs:
            trial = pcm.values.copy()
            trial[i - 1, j - 1] = math.nan
            trial[j - 1, i - 1] = math.nan
            graph = comparison_graph(IncompletePCM(trial))
            if len(graph.components()) == 1:
                candidates.append((i, j))
        i, j = candidates[rng.integers(len(candidates))]
        values = pcm.values.copy()
        values[i - 1, j - 1] = math.nan
        values[j - 1, i - 1] = math.nan
        pcm = IncompletePCM.from_values(values)
    return pcm


BATCH_COLUMNS = ("order", "missing_count", "seed", "max_divergence",
                 "coincide", "lambda_max_ev", "gci_llsm")


def batch_report(n: int, missing_count: int, trials: int, seed: int,
                 tolerance: float = 1e-6) -> str:
    """CSV report comparing the two completions on random instances."""
    out = io.StringIO()
    out.write(",".join(BATCH_COLUMNS) + "\n")
    for k in range(trials):
        s = seed + k
        pcm = random_connected_incomplete(n, missing_count, s)
        comparison = compare_completions(pcm, tolerance=tolerance)
        ev, _ = ev_completion(pcm)
        llsm = llsm_completion(pcm)
        out.write(f"{n},{missing_count},{s},{comparison.max_divergence:.12g},"
                  f"{str(comparison.coincide).lower()},{ev.lambda_max:.12g},{llsm.gci:.12g}\n")
    return out.getvalue()
