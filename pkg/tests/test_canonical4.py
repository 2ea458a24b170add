import math

import numpy as np
import pytest

from pcmcomplete import (
    DisconnectedGraph,
    PatternMismatch,
    WrongOrder,
    char_poly_coeffs,
    closed_form_completion,
    dominant_eigenpair,
    ev_completion,
    llsm_completion,
    parse_matrix,
    random_connected_incomplete,
    reduce_to_canonical,
    verify_theorem1,
)


def random_reciprocal_4x4(rng):
    a = np.ones((4, 4))
    for i in range(4):
        for j in range(i + 1, 4):
            v = math.exp(rng.uniform(math.log(1 / 9), math.log(9)))
            a[i, j], a[j, i] = v, 1 / v
    return a


def test_reduce_known_instance():
    a = np.ones((4, 4))
    upper = {(0, 1): 2.0, (0, 2): 4.0, (0, 3): 8.0, (1, 2): 1.0, (1, 3): 2.0, (2, 3): 1.0}
    for (i, j), v in upper.items():
        a[i, j], a[j, i] = v, 1 / v
    form = reduce_to_canonical(a)
    assert form.y == pytest.approx(2.0)
    assert form.x == pytest.approx(4.0)
    assert form.z == pytest.approx(2.0)


def test_reduce_identity_on_canonical_input():
    form = reduce_to_canonical(np.ones((4, 4)))
    assert (form.x, form.y, form.z) == (1.0, 1.0, 1.0)
    assert form.permutation == (1, 2, 3, 4)


def test_reduce_preserves_spectrum():
    rng = np.random.default_rng(14)
    for _ in range(1000):
        a = random_reciprocal_4x4(rng)
        form = reduce_to_canonical(a)
        lam_a = dominant_eigenpair(a).lambda_max
        lam_c = dominant_eigenpair(form.matrix()).lambda_max
        assert lam_c == pytest.approx(lam_a, abs=1e-10)


def test_reduce_scaling_reproduces_canonical_matrix():
    rng = np.random.default_rng(15)
    a = random_reciprocal_4x4(rng)
    form = reduce_to_canonical(a)
    s = np.array(form.scaling)
    transformed = np.diag(s) @ a @ np.diag(1.0 / s)
    assert np.allclose(transformed, form.matrix(), rtol=1e-12)


def test_char_poly_consistent_case():
    coeffs = char_poly_coeffs(1.0, 1.0, 1.0)
    assert coeffs.p == pytest.approx(0.0, abs=1e-14)
    assert coeffs.q == pytest.approx(0.0, abs=1e-14)


def test_char_poly_matches_determinant_expansion():
    # independent oracle: coefficients from numpy's characteristic polynomial
    rng = np.random.default_rng(16)
    for _ in range(50):
        x, y, z = np.exp(rng.uniform(math.log(1 / 9), math.log(9), 3))
        a = np.ones((4, 4))
        a[0, 2], a[2, 0] = y, 1 / y
        a[0, 3], a[3, 0] = x, 1 / x
        a[1, 3], a[3, 1] = z, 1 / z
        poly = np.poly(a)  # [1, -trace, ..., det] coefficients
        coeffs = char_poly_coeffs(x, y, z)
        assert poly[1] == pytest.approx(-4.0, abs=1e-12)
        assert poly[2] == pytest.approx(0.0, abs=1e-10)
        assert poly[3] == pytest.approx(coeffs.p, rel=1e-10, abs=1e-10)
        assert poly[4] == pytest.approx(coeffs.q, rel=1e-10, abs=1e-10)


def test_char_poly_largest_root_is_lambda_max():
    rng = np.random.default_rng(17)
    for _ in range(500):
        x, y, z = np.exp(rng.uniform(math.log(1 / 9), math.log(9), 3))
        a = np.ones((4, 4))
        a[0, 2], a[2, 0] = y, 1 / y
        a[0, 3], a[3, 0] = x, 1 / x
        a[1, 3], a[3, 1] = z, 1 / z
        lam = dominant_eigenpair(a).lambda_max
        coeffs = char_poly_coeffs(x, y, z)
        assert abs(coeffs.eval(lam)) < 1e-8


def test_closed_forms():
    assert closed_form_completion(1, {"y": 2.0, "z": 8.0})["x"] == pytest.approx(4.0)
    out = closed_form_completion(2, {"z": 8.0})
    assert out["x"] == pytest.approx(4.0)
    assert out["y"] == pytest.approx(2.0)
    # y, z missing: the known entries form a four-cycle and the optimum
    # spreads its log-imbalance evenly, so both fills are sqrt(x)
    out = closed_form_completion(3, {"x": 16.0})
    assert out["y"] == pytest.approx(4.0)
    assert out["z"] == pytest.approx(4.0)
    assert closed_form_completion(4, {}) == {"x": 1.0, "y": 1.0, "z": 1.0}


def test_closed_form_pattern_mismatch():
    with pytest.raises(PatternMismatch):
        closed_form_completion(1, {"y": 2.0})
    with pytest.raises(PatternMismatch):
        closed_form_completion(5, {})


def canonical_incomplete(missing, known, rng=None):
    """Canonical 4x4 with the given variables missing; known maps name -> value."""
    pos = {"y": (0, 2), "x": (0, 3), "z": (1, 3)}
    a = np.ones((4, 4))
    for name, (i, j) in pos.items():
        if name in missing:
            a[i, j] = a[j, i] = math.nan
        else:
            v = known[name]
            a[i, j], a[j, i] = v, 1 / v
    from pcmcomplete import IncompletePCM

    return IncompletePCM.from_values(a)


@pytest.mark.parametrize("case,missing,known_names", [
    (1, {"x"}, ("y", "z")),
    (2, {"x", "y"}, ("z",)),
    (3, {"y", "z"}, ("x",)),
])
def test_numeric_matches_closed_form(case, missing, known_names):
    rng = np.random.default_rng(18 + case)
    pos = {"y": (1, 3), "x": (1, 4), "z": (2, 4)}
    for _ in range(100):
        known = {k: float(np.exp(rng.uniform(math.log(1 / 9), math.log(9))))
                 for k in known_names}
        pcm = canonical_incomplete(missing, known)
        expected = closed_form_completion(case, known)
        ev, _ = ev_completion(pcm)
        llsm = llsm_completion(pcm)
        for name in missing:
            i, j = pos[name]
            assert ev.fill_value(i, j) == pytest.approx(expected[name], rel=1e-8)
            assert llsm.fill_value(i, j) == pytest.approx(expected[name], rel=1e-8)


def test_case3_fill_is_true_minimum():
    # independent oracle for the y, z missing pattern: dense grid over the
    # log-fills using numpy's eigenvalue solver shows the minimum sits at
    # y = z = sqrt(x), and sqrt(x), x^(3/4) is not stationary in z
    x = 16.0

    def lam(y, z):
        a = np.ones((4, 4))
        a[0, 2], a[2, 0] = y, 1 / y
        a[0, 3], a[3, 0] = x, 1 / x
        a[1, 3], a[3, 1] = z, 1 / z
        return float(np.max(np.linalg.eigvals(a).real))

    best = lam(math.sqrt(x), math.sqrt(x))
    for u in np.linspace(-1.0, 1.0, 41):
        for v in np.linspace(-1.0, 1.0, 41):
            if u == 0 and v == 0:
                continue
            assert lam(math.sqrt(x) * math.exp(u), math.sqrt(x) * math.exp(v)) >= best - 1e-12
    assert lam(math.sqrt(x), x ** 0.75) > best + 0.05


def test_verify_theorem1_example1_pattern():
    pcm = parse_matrix("1,2,*,1/3\n1/2,1,4,*\n*,1/4,1,5\n3,*,1/5,1")
    comparison = verify_theorem1(pcm, tol=1e-6)
    assert comparison.coincide


def test_verify_theorem1_case2():
    pcm = parse_matrix("1,1,*,*\n1,1,1,8\n*,1,1,1\n*,1/8,1,1")
    comparison = verify_theorem1(pcm)
    assert comparison.coincide
    res = llsm_completion(pcm)
    assert res.fill_value(1, 4) == pytest.approx(4.0, rel=1e-8)
    assert res.fill_value(1, 3) == pytest.approx(2.0, rel=1e-8)


def test_verify_theorem1_errors():
    with pytest.raises(WrongOrder):
        verify_theorem1(parse_matrix("1,2\n1/2,1"))
    # vertex 1 isolated
    with pytest.raises(DisconnectedGraph):
        verify_theorem1(parse_matrix("1,*,*,*\n*,1,2,3\n*,1/2,1,4\n*,1/3,1/4,1"))


def test_theorem1_at_scale():
    rng = np.random.default_rng(19)
    for _ in range(200):
        m = int(rng.integers(1, 4))
        pcm = random_connected_incomplete(4, m, int(rng.integers(10**6)))
        assert verify_theorem1(pcm, tol=1e-6).coincide
