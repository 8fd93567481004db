"""Outward-rounded interval arithmetic: enclosure, monotonicity, boxes."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tightgap.interval import (
    AllDimensionsDegenerate,
    Box,
    DivisionByIntervalContainingZero,
    DomainError,
    Interval,
    IntervalError,
    ZeroWidthDimension,
    arith,
    as_interval,
    div_wide,
    elem,
    exact,
    pick_split_dim,
    split,
    sum_enclosure,
)

RNG = np.random.default_rng(190405)


def _ulps_apart(a, b):
    """Number of representable doubles strictly between a and b."""
    n = 0
    x = a
    while x < b and n < 64:
        x = np.nextafter(x, np.inf)
        n += 1
    return n


# ----------------------------------------------------------------------
# pinned examples
# ----------------------------------------------------------------------

def test_add_exact_endpoints():
    r = arith(Interval(1.0, 2.0), Interval(3.0, 4.0), "add")
    assert r.lo == 4.0 and r.hi == 6.0


def test_mul_symmetric_product():
    r = arith(Interval(-1.0, 1.0), Interval(-1.0, 1.0), "mul")
    assert r.lo == -1.0 and r.hi == 1.0


def test_div_one_third_tight():
    r = arith(Interval(1.0), Interval(3.0), "div")
    assert r.lo <= 1.0 / 3.0 <= r.hi
    assert _ulps_apart(r.lo, r.hi) <= 2


def test_div_by_zero_interval_raises():
    with pytest.raises(DivisionByIntervalContainingZero):
        arith(Interval(1.0), Interval(-1.0, 1.0), "div")


def test_exp_zero_tight():
    r = elem(Interval(0.0), "exp")
    assert r.lo <= 1.0 <= r.hi
    assert _ulps_apart(r.lo, r.hi) <= 2


def test_sqrt_perfect_squares():
    r = elem(Interval(4.0, 9.0), "sqrt")
    assert r.lo <= 2.0 and r.hi >= 3.0
    assert _ulps_apart(r.lo, 2.0) <= 2 and _ulps_apart(3.0, r.hi) <= 2


def test_abs_straddling():
    r = elem(Interval(-3.0, 1.0), "abs")
    assert r.lo == 0.0 and r.hi == 3.0


def test_sqrt_negative_domain_error():
    with pytest.raises(DomainError):
        elem(Interval(-2.0, -1.0), "sqrt")


def test_unknown_kinds_rejected():
    with pytest.raises(IntervalError):
        arith(Interval(1.0), Interval(1.0), "pow")
    with pytest.raises(IntervalError):
        elem(Interval(1.0), "sin")
    with pytest.raises(IntervalError):
        elem(Interval(1.0), "min")  # needs a second operand


def test_degenerate_intervals_propagate_exactly():
    a = exact(0.5)
    r = a + a
    assert r.lo == 1.0 and r.hi == 1.0
    assert float((a * a).lo) == 0.25 == float((a * a).hi)


def test_no_nan_endpoints_on_inf_arithmetic():
    # inf - inf inside a subtraction must widen, not go NaN
    a = Interval(-np.inf, np.inf)
    r = a - a
    assert not np.isnan(r.lo) and not np.isnan(r.hi)
    assert r.lo == -np.inf and r.hi == np.inf


# ----------------------------------------------------------------------
# enclosure property, 1e5 random points
# ----------------------------------------------------------------------

def _random_pairs(n):
    lo = RNG.uniform(-10, 10, n)
    hi = lo + RNG.uniform(0, 3, n)
    x = RNG.uniform(lo, hi)
    return Interval(lo, hi), x


@pytest.mark.parametrize("kind", ["add", "sub", "mul"])
def test_enclosure_binary_random(kind):
    n = 100_000
    a, x = _random_pairs(n)
    b, y = _random_pairs(n)
    r = arith(a, b, kind)
    z = {"add": x + y, "sub": x - y, "mul": x * y}[kind]
    assert np.all(r.lo <= z) and np.all(z <= r.hi)


def test_enclosure_div_random():
    n = 100_000
    a, x = _random_pairs(n)
    lo = RNG.uniform(0.1, 5, n)
    b = Interval(lo, lo + RNG.uniform(0, 2, n))
    y = RNG.uniform(b.lo, b.hi)
    r = arith(a, b, "div")
    z = x / y
    assert np.all(r.lo <= z) and np.all(z <= r.hi)


@pytest.mark.parametrize("kind", ["exp", "abs", "neg"])
def test_enclosure_unary_random(kind):
    n = 100_000
    a, x = _random_pairs(n)
    r = elem(a, kind)
    z = {"exp": np.exp, "abs": np.abs, "neg": np.negative}[kind](x)
    assert np.all(r.lo <= z) and np.all(z <= r.hi)


def test_enclosure_sqrt_random():
    n = 100_000
    lo = RNG.uniform(0, 10, n)
    a = Interval(lo, lo + RNG.uniform(0, 3, n))
    x = RNG.uniform(a.lo, a.hi)
    assert np.all(elem(a, "sqrt").contains(np.sqrt(x)))


def test_enclosure_sqr_random():
    n = 100_000
    a, x = _random_pairs(n)
    r = a.sqr()
    assert np.all(r.lo <= x * x) and np.all(x * x <= r.hi)
    assert np.all(r.lo >= 0.0)


# ----------------------------------------------------------------------
# inclusion monotonicity on nested intervals
# ----------------------------------------------------------------------

def _nested(n):
    """(inner, outer) with inner ⊆ outer."""
    lo = RNG.uniform(-5, 5, n)
    hi = lo + RNG.uniform(0.01, 2, n)
    pad_l = RNG.uniform(0, 1, n)
    pad_r = RNG.uniform(0, 1, n)
    return Interval(lo, hi), Interval(lo - pad_l, hi + pad_r)


@pytest.mark.parametrize("kind", ["add", "sub", "mul"])
def test_inclusion_monotonicity(kind):
    n = 20_000
    a, a2 = _nested(n)
    b, b2 = _nested(n)
    inner = arith(a, b, kind)
    outer = arith(a2, b2, kind)
    assert np.all(outer.lo <= inner.lo) and np.all(inner.hi <= outer.hi)


def test_inclusion_monotonicity_exp():
    a, a2 = _nested(20_000)
    inner, outer = a.exp(), a2.exp()
    assert np.all(outer.lo <= inner.lo) and np.all(inner.hi <= outer.hi)


@given(
    st.floats(-100, 100),
    st.floats(0, 10),
    st.floats(0, 5),
    st.floats(0, 5),
)
@settings(max_examples=300, deadline=None)
def test_inclusion_monotonicity_hypothesis(lo, w, padl, padr):
    inner = Interval(lo, lo + w)
    outer = Interval(lo - padl, lo + w + padr)
    for kind in ("exp", "abs", "neg"):
        ri, ro = elem(inner, kind), elem(outer, kind)
        assert ro.lo <= ri.lo and ri.hi <= ro.hi


@given(st.floats(-50, 50), st.floats(0, 4), st.floats(-50, 50),
       st.floats(0, 4))
@settings(max_examples=300, deadline=None)
def test_mul_point_enclosure_hypothesis(alo, aw, blo, bw):
    a, b = Interval(alo, alo + aw), Interval(blo, blo + bw)
    r = a * b
    for x in (alo, alo + aw):
        for y in (blo, blo + bw):
            assert r.lo <= x * y <= r.hi


# ----------------------------------------------------------------------
# interval utilities
# ----------------------------------------------------------------------

def test_intersect_and_hull():
    a, b = Interval(0.0, 2.0), Interval(1.0, 3.0)
    m = a.intersect(b)
    assert m.lo == 1.0 and m.hi == 2.0
    h = a.hull(b)
    assert h.lo == 0.0 and h.hi == 3.0


def test_div_wide_spans_line_on_zero_divisor():
    r = div_wide(Interval(1.0), Interval(-1.0, 1.0))
    assert r.lo == -np.inf and r.hi == np.inf
    # sign-definite divisor stays finite and encloses the true quotient
    r2 = div_wide(Interval(1.0), Interval(2.0, 4.0))
    assert r2.lo <= 0.25 and 0.5 <= r2.hi and np.isfinite(r2.lo)


def test_sum_enclosure_tree_vs_naive():
    n = 4097  # odd leaf count exercises the zero-padding branch
    v = RNG.uniform(-1, 1, n)
    terms = Interval(v, v)
    r = sum_enclosure(terms)
    # enclosure of the exact sum (math.fsum is exactly rounded)
    import math

    s = math.fsum(v.tolist())
    assert r.lo <= s <= r.hi
    # tree summation keeps the slack at O(log n) ulps, far below 1e-12
    assert r.hi - r.lo < 1e-12


def test_clip_and_contains():
    a = Interval(-0.5, 1.5).clip(0.0, 1.0)
    assert a.lo == 0.0 and a.hi == 1.0
    assert a.contains(0.3) and not a.contains(1.2)
    assert Interval(-1.0, 1.0).contains_zero()
    assert not Interval(0.5, 1.0).contains_zero()


def test_strict_comparisons():
    assert Interval(0.0, 1.0).strictly_less(Interval(2.0, 3.0))
    assert not Interval(0.0, 2.5).strictly_less(Interval(2.0, 3.0))
    assert Interval(2.0, 3.0).strictly_greater(Interval(0.0, 1.0))


# ----------------------------------------------------------------------
# boxes, split, heuristics
# ----------------------------------------------------------------------

def test_split_midpoint_unit():
    box = Box.from_dict({"b1": (0.0, 1.0)})
    left, right = split(box, "b1")
    assert left.to_dict() == {"b1": (0.0, 0.5)}
    assert right.to_dict() == {"b1": (0.5, 1.0)}


def test_split_zero_width_raises():
    box = Box.from_dict({"b1": (-1.0, 1.0), "b2": (0.0, 0.0)})
    with pytest.raises(ZeroWidthDimension):
        split(box, "b2")


def test_split_halves_cover():
    box = Box.from_dict({"tau": (0.25, 0.75)})
    left, right = split(box, "tau")
    assert left["tau"].lo == 0.25 and right["tau"].hi == 0.75
    assert left["tau"].hi == right["tau"].lo  # shared midpoint, no gap


def test_split_soundness_random_boxes():
    for _ in range(200):
        k = int(RNG.integers(1, 4))
        lo = RNG.uniform(-2, 2, k)
        hi = lo + RNG.uniform(0.01, 2, k)
        box = Box(tuple(f"d{i}" for i in range(k)), Interval(lo, hi))
        for dim in range(k):
            left, right = split(box, dim)
            # union covers: left keeps lo, right keeps hi, shared meet point
            assert np.all(left.ivals.lo == box.ivals.lo)
            assert np.all(right.ivals.hi == box.ivals.hi)
            assert left.ivals.hi[dim] == right.ivals.lo[dim]


def test_pick_split_dim_heuristics():
    box = Box.from_dict({"b1": (0.0, 1.0), "b2": (0.0, 0.1)})
    assert box.names[pick_split_dim(box, "shortest_nonzero")] == "b2"
    assert box.names[pick_split_dim(box, "widest")] == "b1"


def test_pick_split_dim_tie_breaks_first():
    box = Box.from_dict({"b1": (0.0, 1.0), "b2": (0.0, 1.0)})
    assert box.names[pick_split_dim(box, "widest")] == "b1"


def test_pick_split_skips_degenerate():
    box = Box.from_dict({"b1": (0.5, 0.5), "b2": (0.0, 0.25)})
    assert box.names[pick_split_dim(box, "shortest_nonzero")] == "b2"
    assert box.names[pick_split_dim(box, "widest")] == "b2"


def test_pick_split_all_degenerate_raises():
    box = Box.from_dict({"b1": (0.5, 0.5)})
    with pytest.raises(AllDimensionsDegenerate):
        pick_split_dim(box, "widest")


def test_box_duplicate_dimension_rejected():
    with pytest.raises(IntervalError):
        Box(("b1", "b1"), Interval(np.zeros(2), np.ones(2)))


def test_as_interval_passthrough():
    a = Interval(1.0, 2.0)
    assert as_interval(a) is a
    b = as_interval(0.5)
    assert b.lo == 0.5 == b.hi
