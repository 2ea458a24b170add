"""Incomplete pairwise comparison matrices: domain types, parsing, graphs.

Conventions used throughout the package:

* Matrices are stored as square numpy arrays with ``nan`` marking a missing
  comparison.  The upper triangle is authoritative: the lower triangle is
  always the exact elementwise reciprocal of the upper one.
* All positions exposed through the public API are 1-based ``(i, j)`` pairs
  with ``i < j``, matching the usual matrix notation.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

RECIPROCITY_RTOL = 1e-9


class PcmError(Exception):
    """Base class for all package errors."""


class ParseError(PcmError):
    pass


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple = ()  # (position, kind, detail) triples

    KINDS = ("NonPositive", "NonReciprocal", "BadDiagonal", "AsymmetricMissing")


class ValidationError(PcmError):
    def __init__(self, report: ValidationReport):
        self.report = report
        msg = "; ".join(f"{kind} at {pos}: {detail}" for pos, kind, detail in report.violations)
        super().__init__(msg or "invalid pairwise comparison matrix")


class DisconnectedGraph(PcmError):
    def __init__(self, components=None):
        self.components = components
        msg = "comparison graph is disconnected"
        if components:
            msg += f" (components: {components})"
        super().__init__(msg)


class NoConvergence(PcmError):
    pass


class Singular(PcmError):
    pass


class PatternMismatch(PcmError):
    pass


class WrongOrder(PcmError):
    pass


class OrderTooSmall(PcmError):
    pass


class TooManyMissing(PcmError):
    pass


def validate(values) -> ValidationReport:
    """Check an order-n array (nan = missing) against the reciprocity rules."""
    a = np.asarray(values, dtype=float)
    n = a.shape[0]
    violations = []
    for i in range(n):
        d = a[i, i]
        if math.isnan(d) or d != 1.0:
            violations.append(((i + 1, i + 1), "BadDiagonal", f"a[{i+1},{i+1}] = {d}, expected 1"))
    for i in range(n):
        for j in range(i + 1, n):
            up, lo = a[i, j], a[j, i]
            up_missing, lo_missing = math.isnan(up), math.isnan(lo)
            if up_missing != lo_missing:
                violations.append(((j + 1, i + 1), "AsymmetricMissing",
                                   f"a[{i+1},{j+1}] and a[{j+1},{i+1}] disagree on missingness"))
                continue
            if up_missing:
                continue
            if not (up > 0 and math.isfinite(up)):
                violations.append(((i + 1, j + 1), "NonPositive", f"a[{i+1},{j+1}] = {up}"))
                continue
            if not (lo > 0 and math.isfinite(lo)):
                violations.append(((j + 1, i + 1), "NonPositive", f"a[{j+1},{i+1}] = {lo}"))
                continue
            if abs(up * lo - 1.0) > RECIPROCITY_RTOL:
                violations.append(((j + 1, i + 1), "NonReciprocal",
                                   f"a[{i+1},{j+1}]*a[{j+1},{i+1}] = {up * lo}, expected 1"))
    return ValidationReport(ok=not violations, violations=tuple(violations))


@dataclass(frozen=True)
class IncompletePCM:
    """Positive reciprocal matrix with possibly missing off-diagonal entries.

    ``values`` holds nan at missing positions; the lower triangle is derived
    from the upper one, so downstream code never sees reciprocity drift.
    """

    values: np.ndarray

    def __post_init__(self):
        self.values.setflags(write=False)

    @classmethod
    def from_values(cls, values) -> "IncompletePCM":
        a = np.asarray(values, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ParseError(f"expected a square matrix, got shape {a.shape}")
        if a.shape[0] < 2:
            raise ParseError("matrix order must be at least 2")
        report = validate(a)
        if not report.ok:
            raise ValidationError(report)
        canon = a.copy()
        n = a.shape[0]
        iu, ju = np.triu_indices(n, k=1)
        canon[ju, iu] = 1.0 / canon[iu, ju]
        np.fill_diagonal(canon, 1.0)
        return cls(canon)

    @property
    def order(self) -> int:
        return self.values.shape[0]

    @property
    def known_mask(self) -> np.ndarray:
        return ~np.isnan(self.values)

    @property
    def missing_pairs(self):
        """Missing upper-triangle positions, 1-based, row-major order."""
        n = self.order
        return [(i + 1, j + 1) for i in range(n) for j in range(i + 1, n)
                if math.isnan(self.values[i, j])]

    @property
    def known_pairs(self):
        n = self.order
        return [(i + 1, j + 1) for i in range(n) for j in range(i + 1, n)
                if not math.isnan(self.values[i, j])]

    @property
    def is_complete(self) -> bool:
        return not self.missing_pairs

    def entry(self, i: int, j: int) -> float:
        """1-based accessor; nan for missing."""
        return float(self.values[i - 1, j - 1])

    def to_json(self) -> str:
        entries = [[None if math.isnan(v) else v for v in row] for row in self.values]
        return json.dumps({"order": self.order, "entries": entries})

    def to_csv(self) -> str:
        rows = []
        for row in self.values:
            rows.append(",".join("*" if math.isnan(v) else repr(float(v)) for v in row))
        return "\n".join(rows) + "\n"


@dataclass(frozen=True)
class CompletionProblem:
    """An incomplete matrix together with its ordered list of fill variables."""

    matrix: IncompletePCM
    missing_positions: tuple
    log_variables: np.ndarray

    @classmethod
    def from_matrix(cls, pcm: IncompletePCM, log_variables=None) -> "CompletionProblem":
        positions = tuple(pcm.missing_pairs)
        t = np.zeros(len(positions)) if log_variables is None else np.asarray(log_variables, float)
        if t.shape != (len(positions),):
            raise ValueError(f"expected {len(positions)} log variables, got {t.shape}")
        return cls(pcm, positions, t)

    @property
    def m(self) -> int:
        return len(self.missing_positions)

    def completed(self, log_variables=None) -> np.ndarray:
        """Complete matrix with e^t substituted at the missing positions."""
        t = self.log_variables if log_variables is None else np.asarray(log_variables, float)
        a = self.matrix.values.copy()
        for k, (i, j) in enumerate(self.missing_positions):
            a[i - 1, j - 1] = math.exp(t[k])
            a[j - 1, i - 1] = math.exp(-t[k])
        return a


def _parse_cell(token: str, row: int, col: int) -> float:
    token = token.strip()
    if token == "*":
        return math.nan
    try:
        if "/" in token:
            num, den = token.split("/")
            return float(Fraction(int(num.strip()), int(den.strip())))
        return float(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad cell {token!r} at row {row}, column {col}: {exc}") from None


def parse_matrix(text: str, format: str = "csv") -> IncompletePCM:
    """Parse CSV (cells: decimal | p/q | '*') or JSON ({"order", "entries"})."""
    if format == "csv":
        rows = [r for r in csv.reader(io.StringIO(text)) if r]
        if not rows:
            raise ParseError("empty input")
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ParseError(f"expected a square {n}x{n} layout, got row lengths {[len(r) for r in rows]}")
        a = np.array([[_parse_cell(cell, i + 1, j + 1) for j, cell in enumerate(row)]
                      for i, row in enumerate(rows)])
    elif format == "json":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed JSON: {exc}") from None
        if not isinstance(doc, dict) or "entries" not in doc:
            raise ParseError('expected an object with "order" and "entries"')
        entries = doc["entries"]
        n = doc.get("order", len(entries))
        if len(entries) != n or any(len(row) != n for row in entries):
            raise ParseError(f"entries do not form an order-{n} square matrix")
        a = np.array([[math.nan if v is None else float(v) for v in row] for row in entries])
    else:
        raise ParseError(f"unknown format {format!r}")
    return IncompletePCM.from_values(a)


@dataclass(frozen=True)
class ComparisonGraph:
    """Undirected graph with one edge per known comparison."""

    vertices: frozenset
    edges: frozenset  # of (i, j) tuples with i < j, 1-based

    def neighbors(self, v: int):
        return {j if i == v else i for i, j in self.edges if v in (i, j)}

    def components(self):
        """Connected components as sorted lists, largest first."""
        seen = set()
        comps = []
        for start in sorted(self.vertices):
            if start in seen:
                continue
            comp, stack = {start}, [start]
            while stack:
                for w in self.neighbors(stack.pop()):
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            comps.append(sorted(comp))
        comps.sort(key=len, reverse=True)
        return comps


def comparison_graph(pcm: IncompletePCM) -> ComparisonGraph:
    return ComparisonGraph(
        vertices=frozenset(range(1, pcm.order + 1)),
        edges=frozenset(pcm.known_pairs),
    )


def is_connected(graph: ComparisonGraph) -> bool:
    if not graph.vertices:
        return True
    return len(graph.components()) == 1


def require_connected(pcm: IncompletePCM) -> None:
    graph = comparison_graph(pcm)
    comps = graph.components()
    if len(comps) > 1:
        raise DisconnectedGraph(components=comps)


def clone_alternative(pcm: IncompletePCM, i: int) -> IncompletePCM:
    """Duplicate alternative i (1-based); the clone is inserted at index i+1.

    The clone's row/column copies row/column i entrywise, missing entries
    included, and the mutual comparison between original and clone is 1.
    """
    n = pcm.order
    if not 1 <= i <= n:
        raise IndexError(f"alternative index {i} out of range 1..{n}")
    src = pcm.values
    order = list(range(n))
    order.insert(i, i - 1)  # duplicated source index at position i (0-based)
    a = src[np.ix_(order, order)].copy()
    a[i - 1, i] = 1.0
    a[i, i - 1] = 1.0
    np.fill_diagonal(a, 1.0)
    return IncompletePCM.from_values(a)
