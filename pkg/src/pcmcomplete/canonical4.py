"""Order-4 machinery: canonical form, characteristic polynomial, closed forms.

Any complete reciprocal 4x4 matrix is diagonally similar to the pattern with
ones everywhere except positions (1,3) = y, (1,4) = x, (2,4) = z (and their
reciprocals).  Both completion methods are invariant under that reduction,
which yields closed-form optimal fills for every connected missing pattern:

    one entry missing            x = sqrt(y z)
    x, y missing (same row)      x = z^{2/3},  y = z^{1/3}
    y, z missing (different)     y = sqrt(x),  z = sqrt(x)
    all three missing            x = y = z = 1

The y, z case leaves the known entries on a four-cycle; the least squares
solution spreads the cycle inconsistency evenly, so both fills equal sqrt(x)
(verified symbolically and against the eigenvalue optimizer).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import IncompletePCM, PatternMismatch, WrongOrder, require_connected


@dataclass(frozen=True)
class CanonicalForm4:
    x: float  # entry (1,4); nan if missing
    y: float  # entry (1,3)
    z: float  # entry (2,4)
    scaling: tuple    # diagonal similarity s: row i times s_i, column i over s_i
    permutation: tuple  # arrangement of (1,2,3,4) applied before scaling

    def matrix(self) -> np.ndarray:
        a = np.ones((4, 4))
        a[0, 2], a[2, 0] = self.y, 1.0 / self.y
        a[0, 3], a[3, 0] = self.x, 1.0 / self.x
        a[1, 3], a[3, 1] = self.z, 1.0 / self.z
        return a


@dataclass(frozen=True)
class CharPolyCoeffs:
    """Coefficients of lambda^4 - 4 lambda^3 + p lambda + q."""

    p: float
    q: float

    def eval(self, lam: float) -> float:
        return lam ** 4 - 4 * lam ** 3 + self.p * lam + self.q

    def largest_root(self) -> float:
        roots = np.roots([1.0, -4.0, 0.0, self.p, self.q])
        real = roots.real[np.abs(roots.imag) < 1e-9 * np.max(np.abs(roots))]
        return float(np.max(real))


def reduce_to_canonical(matrix) -> CanonicalForm4:
    """Canonical form of a complete reciprocal 4x4 matrix.

    With upper entries a = a12, b = a13, c = a14, d = a23, e = a24, f = a34,
    multiplying rows 1, 2, 4 by 1/(ad), 1/d, f (and dividing the columns)
    gives y = b/(ad), x = c/(adf), z = e/(df).
    """
    m = np.asarray(matrix, dtype=float)
    if m.shape != (4, 4):
        raise WrongOrder(f"expected a 4x4 matrix, got {m.shape}")
    a, b, c = m[0, 1], m[0, 2], m[0, 3]
    d, e, f = m[1, 2], m[1, 3], m[2, 3]
    return CanonicalForm4(
        x=c / (a * d * f),
        y=b / (a * d),
        z=e / (d * f),
        scaling=(1.0 / (a * d), 1.0 / d, 1.0, f),
        permutation=(1, 2, 3, 4),
    )


def char_poly_coeffs(x: float, y: float, z: float) -> CharPolyCoeffs:
    """p and q of the canonical matrix's characteristic polynomial."""
    p = -z - 1 / z - y - 1 / y - x / y - y / x - x / z - z / x + 8
    q = (-x - 1 / x + y + 1 / y + z + 1 / z + x / y + y / x + x / z + z / x
         - y / z - z / y - x / (y * z) - (y * z) / x - 2)
    return CharPolyCoeffs(p=p, q=q)


# Canonical missing patterns, as positions among the canonical variables.
_CASE_MISSING = {
    1: {"x"},
    2: {"x", "y"},
    3: {"y", "z"},
    4: {"x", "y", "z"},
}


def closed_form_completion(case: int, known: dict) -> dict:
    """Optimal fill for the canonical missing pattern of the given case.

    ``known`` maps the non-missing variable names among {"x", "y", "z"} to
    their values; the returned dict holds all three.
    """
    if case not in _CASE_MISSING:
        raise PatternMismatch(f"unknown case {case}")
    missing = _CASE_MISSING[case]
    if set(known) != {"x", "y", "z"} - missing:
        raise PatternMismatch(
            f"case {case} expects known variables {sorted({'x', 'y', 'z'} - missing)}, "
            f"got {sorted(known)}")
    out = dict(known)
    if case == 1:
        out["x"] = math.sqrt(known["y"] * known["z"])
    elif case == 2:
        out["x"] = known["z"] ** (2.0 / 3.0)
        out["y"] = known["z"] ** (1.0 / 3.0)
    elif case == 3:
        # known entries form the cycle 1-2-3-4-1 with total log-imbalance
        # log(x); the optimum distributes it evenly, giving sqrt(x) for both
        # fills (w1/w3 and w2/w4 at log-weights (3,2,1,0) * log(x)/4)
        out["y"] = math.sqrt(known["x"])
        out["z"] = math.sqrt(known["x"])
    else:
        out.update(x=1.0, y=1.0, z=1.0)
    return out


def verify_theorem1(pcm: IncompletePCM, tol: float = 1e-6):
    """Run both completions on a connected 4x4 instance and compare them.

    Coincidence at the given tolerance is the guaranteed outcome for every
    valid input; the returned comparison carries the entrywise evidence.
    """
    from .experiments import compare_completions

    if pcm.order != 4:
        raise WrongOrder(f"expected order 4, got {pcm.order}")
    require_connected(pcm)
    return compare_completions(pcm, tolerance=tol)
