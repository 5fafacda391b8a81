import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cntminority.analog_gate import (
    GateConfig,
    Logic,
    VtcParams,
    check_threshold,
    evaluate,
    functional_check,
    midpoint_voltage,
    static_margin,
    threshold_window,
    vtc,
)
from cntminority.minority_logic import all_vectors, derive_nand, derive_nor, minority

ODD_N = [1, 3, 5, 7, 9]


def vec(weight, n=7):
    return [1] * weight + [0] * (n - weight)


def brute_margin(cfg, p):
    return min(abs(midpoint_voltage(v, cfg) - p.v_sw) for v in all_vectors(cfg.driven_count)) - p.width_w / 2


def loop_check(cfg, p):
    """Per-vector reference for functional_check."""
    for v in all_vectors(cfg.driven_count):
        bit = evaluate(v, cfg, p).logic.as_bit()
        if bit != minority(cfg.expand(v)):
            return False
    return True


def test_midpoint_examples():
    cfg = GateConfig(7, 0.9)
    assert midpoint_voltage([0] * 7, cfg) == 0
    assert midpoint_voltage(vec(3), cfg) == pytest.approx(0.38571, abs=5e-6)
    nand = GateConfig.from_binding(derive_nand(4), 0.9)
    assert nand.weights == (1, 1, 1, 1, 3)
    assert midpoint_voltage([1, 1, 0, 0], nand) == pytest.approx(0.25714, abs=5e-6)


def test_midpoint_width_mismatch():
    with pytest.raises(ValueError):
        midpoint_voltage([1, 0], GateConfig(3, 1.0))


@given(st.lists(st.integers(0, 1), min_size=7, max_size=7), st.floats(0.1, 5.0))
def test_midpoint_linear_in_vdd(v, vdd):
    base = midpoint_voltage(v, GateConfig(7, 1.0))
    assert midpoint_voltage(v, GateConfig(7, vdd)) == pytest.approx(vdd * base, rel=1e-12)
    assert midpoint_voltage(sorted(v), GateConfig(7, vdd)) == midpoint_voltage(v, GateConfig(7, vdd))


def test_threshold_window_examples():
    lo, hi = threshold_window(GateConfig(7, 0.9))
    assert (lo, hi) == pytest.approx((0.38571, 0.51429), abs=5e-6)
    assert (lo + hi) / 2 == pytest.approx(0.45)
    assert threshold_window(GateConfig(3, 1.0)) == pytest.approx((1 / 3, 2 / 3))


@pytest.mark.parametrize("n", ODD_N)
def test_window_bounds_are_adjacent_divider_levels(n):
    cfg = GateConfig(n, 0.9)
    ones = [midpoint_voltage(v, cfg) for v in all_vectors(n) if minority(v)]
    zeros = [midpoint_voltage(v, cfg) for v in all_vectors(n) if not minority(v)]
    assert threshold_window(cfg) == pytest.approx((max(ones), min(zeros)), rel=1e-12)


def test_even_fan_in_rejected():
    with pytest.raises(ValueError):
        GateConfig(4, 0.9)


def test_vtc_examples():
    p = VtcParams(0.45, 0.045)
    assert vtc(0.0, p, 0.9) == 0.9
    assert vtc(0.9, p, 0.9) == 0.0
    assert vtc(0.45, p, 0.9) == pytest.approx(0.45)
    step = VtcParams(0.45, 0.0)
    assert [vtc(x, step, 0.9) for x in (0.44, 0.45, 0.46)] == [0.9, 0.45, 0.0]
    with pytest.raises(ValueError):
        vtc(1.0, p, 0.9)


@given(
    st.floats(0.05, 0.85),
    st.floats(0.0, 0.1),
    st.lists(st.floats(0.0, 0.9), min_size=2, max_size=20),
)
def test_vtc_non_increasing(v_sw, w, xs):
    p = VtcParams(v_sw, w)
    ys = [vtc(x, p, 0.9) for x in sorted(xs)]
    assert all(b <= a for a, b in zip(ys, ys[1:]))


def test_evaluate_examples():
    cfg = GateConfig(7, 0.9)
    p = VtcParams(0.45, 0.05)
    r = evaluate(vec(3), cfg, p)
    assert r.logic is Logic.ONE
    assert r.margin == pytest.approx(0.039286, abs=5e-7)
    assert evaluate(vec(4), cfg, p).logic is Logic.ZERO


def test_evaluate_step_matches_minority_exhaustively():
    cfg = GateConfig(7, 0.9)
    p = VtcParams(0.45, 0.0)
    for v in all_vectors(7):
        assert evaluate(v, cfg, p).logic.as_bit() == minority(v)


def test_evaluate_rejects_threshold_outside_rails():
    with pytest.raises(ValueError):
        evaluate(vec(3), GateConfig(7, 0.9), VtcParams(0.95, 0.0))


def test_functional_check_examples():
    cfg = GateConfig(7, 0.9)
    assert functional_check(cfg, VtcParams(0.45, 0.05))
    assert not functional_check(cfg, VtcParams(0.30, 0.0))
    assert functional_check(GateConfig(1, 1.0), VtcParams(0.5, 0.0))


@pytest.mark.parametrize(
    "cfg",
    [GateConfig(n, 0.9) for n in ODD_N]
    + [GateConfig.from_binding(derive_nand(k), 0.9) for k in (2, 3, 4)]
    + [GateConfig.from_binding(derive_nor(k), 0.9) for k in (2, 3, 4)],
)
@pytest.mark.parametrize("v_sw, w", [(0.45, 0.045), (0.45, 0.0), (0.40, 0.01), (0.30, 0.0), (0.45, 0.2)])
def test_functional_check_matches_per_vector_loop(cfg, v_sw, w):
    p = VtcParams(v_sw, w)
    assert functional_check(cfg, p) == loop_check(cfg, p)


@pytest.mark.parametrize("k", range(1, 9))
def test_bound_gates_compute_nand_nor(k):
    for derive, ref in ((derive_nand, lambda v: int(not all(v))), (derive_nor, lambda v: int(not any(v)))):
        cfg = GateConfig.from_binding(derive(k), 0.9)
        p = VtcParams.default(0.9)
        assert functional_check(cfg, p)
        for v in itertools.islice(all_vectors(k), 64):
            assert evaluate(v, cfg, p).logic.as_bit() == ref(v)


@settings(max_examples=60)
@given(st.sampled_from(ODD_N), st.floats(0.01, 0.99), st.floats(0.0, 1.0))
def test_inside_window_with_positive_margin_passes(n, pos, wfrac):
    cfg = GateConfig(n, 0.9)
    lo, hi = threshold_window(cfg)
    v_sw = lo + pos * (hi - lo)
    headroom = min(v_sw - lo, hi - v_sw)
    p = VtcParams(v_sw, wfrac * 2 * headroom * 0.999)
    assert functional_check(cfg, p)


@pytest.mark.parametrize("n", ODD_N)
def test_window_edge_fails(n):
    cfg = GateConfig(n, 0.9)
    lo, hi = threshold_window(cfg)
    # n=1 puts the edges on the rails, so bypass the rail precondition.
    assert not check_threshold(cfg, lo, 0.0)
    assert not check_threshold(cfg, hi, 0.0)
    if 0 < lo:
        assert evaluate([1] * (n // 2) + [0] * (n - n // 2), cfg, VtcParams(lo, 0.0)).logic is Logic.INDETERMINATE


def test_static_margin_examples():
    assert static_margin(GateConfig(7, 0.9), VtcParams(0.45, 0.0)) == pytest.approx(0.9 / 14, rel=1e-12)
    assert static_margin(GateConfig(7, 0.9), VtcParams(0.45, 0.9 / 7)) == pytest.approx(0.0, abs=1e-12)
    assert static_margin(GateConfig(1, 1.0), VtcParams(0.5, 0.0)) == pytest.approx(0.5)


@pytest.mark.parametrize("n", ODD_N)
@pytest.mark.parametrize("w", [0.0, 0.02, 0.045])
def test_static_margin_matches_brute_force(n, w):
    cfg = GateConfig(n, 0.9)
    p = VtcParams(0.45, w)
    assert static_margin(cfg, p) == pytest.approx(brute_margin(cfg, p), abs=1e-12)
    assert static_margin(cfg, p) == pytest.approx(0.9 / (2 * n) - w / 2, abs=1e-12)


def test_enumeration_guard():
    cfg = GateConfig(25, 1.0)
    with pytest.raises(ValueError, match="refusing"):
        functional_check(cfg, VtcParams(0.5, 0.0))


def test_partitioned_check_is_order_independent():
    # Splitting the vector space and recombining gives the same verdict and margin.
    cfg = GateConfig(9, 0.9)
    p = VtcParams(0.45, 0.045)
    vectors = list(all_vectors(9))
    rng = np.random.default_rng(3)
    order = rng.permutation(len(vectors))
    parts = np.array_split(order, 4)
    margins = [min(evaluate(vectors[i], cfg, p).margin for i in part) for part in parts]
    assert min(margins) == pytest.approx(static_margin(cfg, p), abs=1e-15)
