import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ufourier.phase import (CONJUGATE, REFLECT, PhaseError, apply_symmetries, canonical_case, corner_at,
                            eval_phase, load_phase, normalize_at_corner, sawtooth, two_slope_phase, validate)

PI = math.pi


def test_validate_sawtooth():
    phi = validate([-PI, 0, PI], [PI, 0, PI])
    assert phi.slopes == (-1.0, 1.0)
    assert phi.degree == 0
    assert not phi.is_linear


def test_validate_identity():
    phi = validate([-PI, PI], [-PI, PI])
    assert phi.slopes == (1.0,)
    assert phi.degree == 1
    assert phi.is_linear


@pytest.mark.parametrize("bp, vals, msg", [
    ([-PI, 0, PI], [0, 0, PI], "non-integer degree"),
    ([-PI, 1, 0, PI], [0, 0, 0, 0], "increasing"),
    ([-PI, 0, 3.0], [0, 0, 0], "period"),
    ([0.0], [0.0], "at least 2"),
])
def test_validate_errors(bp, vals, msg):
    with pytest.raises(PhaseError, match=msg):
        validate(bp, vals)


@pytest.mark.parametrize("t, expected", [(0.0, 0.0), (PI / 2, PI / 2), (-1.0, 1.0), (2 * PI + 0.5, 0.5)])
def test_eval_sawtooth(t, expected):
    assert eval_phase(sawtooth(), t) == pytest.approx(expected, abs=1e-14)


def test_eval_identity():
    phi = validate([-PI, PI], [-PI, PI])
    assert eval_phase(phi, 1.0) == pytest.approx(1.0, abs=1e-15)
    assert eval_phase(phi, 10.0) == pytest.approx(10.0, abs=1e-12)


def test_load_phase_json(tmp_path):
    p = tmp_path / "phase.json"
    p.write_text('{"breakpoints": [-3.141592653589793, 0, 3.141592653589793], "values": [3.141592653589793, 0, 3.141592653589793]}')
    assert load_phase(p).slopes == (-1.0, 1.0)
    with pytest.raises(PhaseError, match="missing"):
        load_phase({"breakpoints": [0, 1]})


def test_normalize_sawtooth_at_zero():
    psi, c = normalize_at_corner(sawtooth(), 1)
    assert (c.left_slope, c.right_slope) == (-1.0, 1.0)
    assert 3.0 < c.half_width < PI


def test_normalize_sawtooth_at_pi():
    psi, c = normalize_at_corner(sawtooth(), 0)
    assert (c.left_slope, c.right_slope) == (1.0, -1.0)
    # shift formula: psi(t) = |t + pi| - pi on the stored period, i.e. pi - |t| - pi
    t = np.linspace(-3, 3, 13)
    expected = np.abs(((t + PI + PI) % (2 * PI)) - PI) - PI
    np.testing.assert_allclose(psi(t), expected, atol=1e-13)


def test_normalize_linear_raises():
    with pytest.raises(PhaseError, match="no corner"):
        normalize_at_corner(validate([-PI, PI], [-PI, PI]), 0)


def test_normalize_non_corner_raises():
    phi = validate([-PI, -1.0, 0.0, PI], [PI, 1.0, 0.0, PI])  # -1 sits inside a linear run
    with pytest.raises(PhaseError, match="not a corner"):
        normalize_at_corner(phi, 1)


def test_epsilon_limits():
    phi = two_slope_phase(1.0, 2.0, half_width=0.5)
    assert corner_at(phi, 1).half_width == pytest.approx(0.5)
    with pytest.raises(PhaseError, match="exceeds"):
        normalize_at_corner(phi, 1, epsilon=0.6)


def _orbit(a, b):
    return {(): (a, b), (REFLECT,): (-b, -a), (CONJUGATE,): (-a, -b), (REFLECT, CONJUGATE): (b, a)}


def _predicates(a, b):
    return [a > 0 and abs(b) > a, a > 0 and b == -a, a > 0 and b == 0]


@pytest.mark.parametrize("pair, case, ops", [
    ((1, -1), 2, ()),
    ((2, 1), 1, (REFLECT, CONJUGATE)),
    ((-3, 0), 3, (CONJUGATE,)),
])
def test_canonical_case_examples(pair, case, ops):
    res = canonical_case(*pair)
    assert (res.case, res.ops) == (case, ops)
    # independent check: the chosen orbit element satisfies exactly the announced predicate
    a, b = _orbit(*pair)[ops]
    preds = _predicates(a, b)
    assert sum(preds) == 1 and preds[case - 1]


def test_canonical_case_rejects_equal():
    with pytest.raises(PhaseError):
        canonical_case(1.5, 1.5)


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@settings(max_examples=300, deadline=None)
@given(rationals, rationals)
def test_canonical_case_total(a, b):
    if a == b:
        return
    res = canonical_case(float(a), float(b))
    assert res.alpha > 0
    preds = _predicates(Fraction(res.alpha), Fraction(res.beta)) if False else _predicates(res.alpha, res.beta)
    assert sum(preds) == 1 and preds[res.case - 1]
    # the recorded ops map the input onto the canonical pair
    assert apply_symmetries(float(a), float(b), res.ops) == pytest.approx((res.alpha, res.beta))
    # trichotomy: zero slope -> case 3, equal magnitudes -> case 2, otherwise case 1
    expected = 3 if 0 in (a, b) else 2 if abs(a) == abs(b) else 1
    assert res.case == expected


@st.composite
def phases(draw):
    m = draw(st.integers(1, 5))
    t0 = draw(st.floats(-PI, PI))
    cuts = sorted(draw(st.lists(st.floats(0.05, 2 * PI - 0.05), min_size=m - 1, max_size=m - 1, unique=True)))
    bp = [t0] + [t0 + c for c in cuts] + [t0 + 2 * PI]
    if any(b - a < 1e-3 for a, b in zip(bp, bp[1:])):
        bp = list(np.linspace(t0, t0 + 2 * PI, m + 1))
    vals = [draw(st.floats(-10, 10)) for _ in range(m)]
    d = draw(st.integers(-3, 3))
    vals.append(vals[0] + 2 * PI * d)
    return validate(bp, vals)


@settings(max_examples=200, deadline=None)
@given(phases(), st.floats(-50, 50))
def test_winding_relation(phi, t):
    assert eval_phase(phi, t + 2 * PI) - eval_phase(phi, t) == pytest.approx(2 * PI * phi.degree, abs=1e-11)


@settings(max_examples=100, deadline=None)
@given(phases())
def test_normalized_corner_is_linear_on_window(phi):
    for j in phi.corners():
        psi, c = normalize_at_corner(phi, j)
        assert psi(0.0) == 0.0
        s = np.linspace(0, c.half_width, 9)[1:-1]
        np.testing.assert_allclose(psi(-s), -c.left_slope * s, atol=1e-9)
        np.testing.assert_allclose(psi(s), c.right_slope * s, atol=1e-9)
