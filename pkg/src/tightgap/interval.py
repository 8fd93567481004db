"""Outward-rounded interval arithmetic on IEEE binary64 endpoints.

Every value is a pair of float64 arrays ``lo <= hi`` (NaN is never allowed in
an endpoint).  Elementary operations return enclosures of the exact image.
For the correctly rounded hardware primitives (+, -, *, /, sqrt) the rounding
is properly directed: an error-free residual (2Sum for sums, Veltkamp/Dekker
for products) decides whether the round-to-nearest endpoint already lies on
the correct side, so exact results -- integer sums, products of small dyadics,
perfect squares -- stay exact, and inexact ones move one ``np.nextafter``
step outward.  libm-backed functions are widened by a documented number of
steps (see the ``_ULP_STEPS`` table).  The policy is validated against
high-precision references in the test suite.

Endpoints may be ``+-inf``.  Indeterminate endpoint forms arising inside an
operation are resolved conservatively and deterministically:

* ``0 * inf`` in multiplication endpoint products is taken as ``0`` (the
  measure-zero convention for interval products, after Kahan), and
* any other NaN endpoint (for instance ``inf - inf`` in addition) is replaced
  by ``-inf`` on the low side and ``+inf`` on the high side, i.e. the whole
  line.

Division by an interval containing zero raises
:class:`DivisionByIntervalContainingZero` at the public API.  Verification
kernels that must stay total use :func:`div_wide`, which returns the whole
line on offending elements instead of raising; a too-wide enclosure can only
make a certificate fail, never lie.

Precision is fixed: 53-bit significands (``PRECISION_BITS = 53``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from llvmlite import ir as _ll_ir
from numba import njit, vectorize
from numba.core import types as _nb_types
from numba.extending import intrinsic as _nb_intrinsic

PRECISION_BITS = 53

_INF = np.inf


class IntervalError(ValueError):
    """Base class for interval-domain failures."""


class DivisionByIntervalContainingZero(IntervalError):
    """Raised when the divisor interval contains zero."""


class DomainError(IntervalError):
    """Operand (partly) outside the mathematical domain of the operation."""


class ZeroWidthDimension(IntervalError):
    """Raised when asked to split a degenerate (zero-width) dimension."""


class AllDimensionsDegenerate(IntervalError):
    """Raised when no dimension of a box can be split."""


def _down(a):
    return np.nextafter(a, -_INF)


def _up(a):
    return np.nextafter(a, _INF)


_MAXF = np.finfo(np.float64).max
_SPLITTER = 134217729.0  # 2**27 + 1, Veltkamp splitting constant
_DEKKER_MAX = 2.0 ** 510  # magnitude guard: splitting never overflows below it
_DEKKER_MIN = 2.0 ** -900  # below this the residual may denormalize and lie


# ----------------------------------------------------------------------
# directed-rounding kernels
#
# The hardware primitives are correctly rounded, so an error-free residual
# (2Sum for sums, Veltkamp/Dekker for products) tells on which side of the
# exact value the round-to-nearest result lies: exact results stay exact and
# inexact ones take one nextafter step outward.  The kernels are compiled
# (numba @vectorize) because at 32k-element chunk sizes the equivalent numpy
# expression spends ~20x the time in nextafter/where temporaries.
#
# Edge policy, identical for all kernels:
#   * inf - inf and 0 * inf never propagate NaN: the former collapses to the
#     conservative infinity for the bound's direction, the latter is taken
#     as exact 0 (measure-zero convention after Kahan).
#   * overflow to the wrong-signed infinity is pulled back to +-_MAXF.
#   * residuals are only trusted inside (_DEKKER_MIN, _DEKKER_MAX) magnitude
#     guards; outside, the unconditional nextafter step applies (sound,
#     possibly 1 ulp loose).
# ----------------------------------------------------------------------
_F2 = "float64(float64, float64)"
_F4 = "float64(float64, float64, float64, float64)"
_KERNEL_OPTS = dict(nopython=True, cache=True)


@_nb_intrinsic
def _f2i(typingctx, x):
    # reinterpret float64 bits as int64 (no conversion)
    sig = _nb_types.int64(_nb_types.float64)

    def codegen(context, builder, signature, args):
        return builder.bitcast(args[0], _ll_ir.IntType(64))

    return sig, codegen


@_nb_intrinsic
def _i2f(typingctx, x):
    sig = _nb_types.float64(_nb_types.int64)

    def codegen(context, builder, signature, args):
        return builder.bitcast(args[0], _ll_ir.DoubleType())

    return sig, codegen


@njit(inline="always")
def _next_down(x):
    """One representable step toward -inf (x must not be NaN).

    libm's nextafter is an opaque call that blocks SIMD and dominates kernel
    time ~20x, hence the bit-level version: stepping the payload of a finite
    IEEE double moves exactly one ulp, including across binade and subnormal
    boundaries, and +inf steps down to the largest finite double.
    """
    if x == 0.0:
        return -5e-324
    if x == -_INF:
        return -_INF
    i = _f2i(x)
    if x > 0.0:
        return _i2f(i - 1)
    return _i2f(i + 1)


@njit(inline="always")
def _next_up(x):
    if x == 0.0:
        return 5e-324
    if x == _INF:
        return _INF
    i = _f2i(x)
    if x < 0.0:
        return _i2f(i - 1)
    return _i2f(i + 1)

# the kernels legitimately evaluate inf-inf / 0*inf / overflow internally;
# their handled FP flags must not leak warnings to callers.  (np.errstate
# instances are not reentrant, so a fresh one is built per call.)
_ERR_KW = dict(invalid="ignore", over="ignore", under="ignore",
               divide="ignore")


def _ERR():
    return np.errstate(**_ERR_KW)


@njit(inline="always")
def _tsum_err(s, a, b):
    # 2Sum residual: a + b == s + err exactly (s finite; Knuth, branch-free)
    t = s - a
    return (a - (s - t)) + (b - t)


@njit(inline="always")
def _tprod_err(p, a, b):
    # Dekker residual: a * b == p + err exactly (guarded magnitudes)
    ca = _SPLITTER * a
    ah = ca - (ca - a)
    al = a - ah
    cb = _SPLITTER * b
    bh = cb - (cb - b)
    bl = b - bh
    return al * bl - (((p - ah * bh) - al * bh) - ah * bl)


@njit(inline="always")
def _sum_lo_scalar(a, b):
    s = a + b
    if math.isnan(s):  # inf + -inf
        return -_INF
    if s == _INF and a != _INF and b != _INF:
        return _MAXF  # overflowed finite sum: MAXF is a valid lower bound
    if not math.isfinite(s):
        return s
    if _tsum_err(s, a, b) < 0.0:
        return _next_down(s)
    return s


@njit(inline="always")
def _sum_hi_scalar(a, b):
    s = a + b
    if math.isnan(s):
        return _INF
    if s == -_INF and a != -_INF and b != -_INF:
        return -_MAXF
    if not math.isfinite(s):
        return s
    if _tsum_err(s, a, b) > 0.0:
        return _next_up(s)
    return s


@njit(inline="always")
def _prod_lo_scalar(a, b):
    p = a * b
    if math.isnan(p):  # 0 * inf
        return 0.0
    if p == _INF:
        return _INF if (abs(a) == _INF or abs(b) == _INF) else _MAXF
    if p == -_INF:
        return -_INF
    if (abs(a) < _DEKKER_MAX and abs(b) < _DEKKER_MAX
            and (abs(p) >= _DEKKER_MIN or a == 0.0 or b == 0.0)):
        if _tprod_err(p, a, b) < 0.0:
            return _next_down(p)
        return p
    return _next_down(p)


@njit(inline="always")
def _prod_hi_scalar(a, b):
    p = a * b
    if math.isnan(p):
        return 0.0
    if p == -_INF:
        return -_INF if (abs(a) == _INF or abs(b) == _INF) else -_MAXF
    if p == _INF:
        return _INF
    if (abs(a) < _DEKKER_MAX and abs(b) < _DEKKER_MAX
            and (abs(p) >= _DEKKER_MIN or a == 0.0 or b == 0.0)):
        if _tprod_err(p, a, b) > 0.0:
            return _next_up(p)
        return p
    return _next_up(p)


@vectorize([_F2], **_KERNEL_OPTS)
def _k_add_lo(a, b):
    return _sum_lo_scalar(a, b)


@vectorize([_F2], **_KERNEL_OPTS)
def _k_add_hi(a, b):
    return _sum_hi_scalar(a, b)


@vectorize([_F2], **_KERNEL_OPTS)
def _k_sub_lo(a, b):
    return _sum_lo_scalar(a, -b)


@vectorize([_F2], **_KERNEL_OPTS)
def _k_sub_hi(a, b):
    return _sum_hi_scalar(a, -b)


@vectorize([_F4], **_KERNEL_OPTS)
def _k_mul_lo(alo, ahi, blo, bhi):
    m = _prod_lo_scalar(alo, blo)
    m2 = _prod_lo_scalar(alo, bhi)
    if m2 < m:
        m = m2
    m2 = _prod_lo_scalar(ahi, blo)
    if m2 < m:
        m = m2
    m2 = _prod_lo_scalar(ahi, bhi)
    if m2 < m:
        m = m2
    return m


@vectorize([_F4], **_KERNEL_OPTS)
def _k_mul_hi(alo, ahi, blo, bhi):
    m = _prod_hi_scalar(alo, blo)
    m2 = _prod_hi_scalar(alo, bhi)
    if m2 > m:
        m = m2
    m2 = _prod_hi_scalar(ahi, blo)
    if m2 > m:
        m = m2
    m2 = _prod_hi_scalar(ahi, bhi)
    if m2 > m:
        m = m2
    return m


@njit(inline="always")
def _quot_lo_scalar(x, y):
    q = x / y
    if math.isnan(q):  # inf / inf (0/0 is excluded by the zero-divisor gate)
        return 0.0
    if q == _INF:
        return _INF if abs(x) == _INF else _MAXF
    if q == -_INF:
        return -_INF
    if (abs(q) < _DEKKER_MAX and abs(y) < _DEKKER_MAX and math.isfinite(x)
            and (abs(x) >= _DEKKER_MIN or x == 0.0)):
        back = q * y
        if back == x and _tprod_err(back, q, y) == 0.0:
            return q  # exact quotient
    return _next_down(q)


@njit(inline="always")
def _quot_hi_scalar(x, y):
    q = x / y
    if math.isnan(q):
        return 0.0
    if q == -_INF:
        return -_INF if abs(x) == _INF else -_MAXF
    if q == _INF:
        return _INF
    if (abs(q) < _DEKKER_MAX and abs(y) < _DEKKER_MAX and math.isfinite(x)
            and (abs(x) >= _DEKKER_MIN or x == 0.0)):
        back = q * y
        if back == x and _tprod_err(back, q, y) == 0.0:
            return q
    return _next_up(q)


@vectorize([_F4], **_KERNEL_OPTS)
def _k_div_lo(alo, ahi, blo, bhi):
    if blo <= 0.0 <= bhi:
        return -_INF
    m = _quot_lo_scalar(alo, blo)
    m2 = _quot_lo_scalar(alo, bhi)
    if m2 < m:
        m = m2
    m2 = _quot_lo_scalar(ahi, blo)
    if m2 < m:
        m = m2
    m2 = _quot_lo_scalar(ahi, bhi)
    if m2 < m:
        m = m2
    return m


@vectorize([_F4], **_KERNEL_OPTS)
def _k_div_hi(alo, ahi, blo, bhi):
    if blo <= 0.0 <= bhi:
        return _INF
    m = _quot_hi_scalar(alo, blo)
    m2 = _quot_hi_scalar(alo, bhi)
    if m2 > m:
        m = m2
    m2 = _quot_hi_scalar(ahi, blo)
    if m2 > m:
        m = m2
    m2 = _quot_hi_scalar(ahi, bhi)
    if m2 > m:
        m = m2
    return m


@njit(inline="always")
def _sqrt_exact(r, x):
    # np.sqrt is correctly rounded; r is exact iff r*r reproduces x exactly
    if not (math.isfinite(r) and r < _DEKKER_MAX
            and (x >= _DEKKER_MIN or x == 0.0)):
        return False
    p = r * r
    return p == x and _tprod_err(p, r, r) == 0.0


@vectorize([_F2], **_KERNEL_OPTS)
def _k_sqrt_lo(lo, hi):
    x = lo if lo > 0.0 else 0.0  # domain clamp (caller rejects hi < 0)
    r = math.sqrt(x)
    if _sqrt_exact(r, x):
        return r
    r = _next_down(r)
    return r if r > 0.0 else 0.0


@vectorize([_F2], **_KERNEL_OPTS)
def _k_sqrt_hi(lo, hi):
    x = hi if hi > 0.0 else 0.0
    r = math.sqrt(x)
    if _sqrt_exact(r, x):
        return r
    return _next_up(r)


@vectorize([_F2], **_KERNEL_OPTS)
def _k_sqr_lo(lo, hi):
    if lo <= 0.0 <= hi:
        return 0.0
    m = abs(lo) if abs(lo) < abs(hi) else abs(hi)
    v = _prod_lo_scalar(m, m)
    return v if v > 0.0 else 0.0


@vectorize([_F2], **_KERNEL_OPTS)
def _k_sqr_hi(lo, hi):
    m = abs(lo) if abs(lo) > abs(hi) else abs(hi)
    return _prod_hi_scalar(m, m)


@vectorize([_F2], **_KERNEL_OPTS)
def _k_width(lo, hi):
    # directed hi - lo: exactly 0 for degenerate intervals
    return _sum_hi_scalar(hi, -lo)


def _down_k(a, k):
    a = np.asarray(a, dtype=np.float64)
    for _ in range(k):
        a = np.nextafter(a, -_INF)
    return a


def _up_k(a, k):
    a = np.asarray(a, dtype=np.float64)
    for _ in range(k):
        a = np.nextafter(a, _INF)
    return a


# np.nextafter steps applied to each endpoint, per libm function family
# (the hardware primitives +, -, *, /, sqrt use directed rounding instead).
# exp is faithfully rounded on every libm we target (error <= 1 ulp);
# sin/cos/arcsin carry a documented bound of <= 2 ulp, widened to 4 for
# headroom; erfc's vendor bound is ~2 ulp relative, widened to 16.
# Validated in tests/test_interval.py and tests/test_gauss.py against mpmath.
_ULP_STEPS = {
    "exp": 1,
    "trig": 4,
    "erfc": 16,
}


class Interval:
    """A (broadcastable array of) closed interval(s) ``[lo, hi]``.

    ``lo`` and ``hi`` are float64 ndarrays of identical shape; scalars are
    shape-``()``.  Degenerate intervals (``lo == hi``) are legal everywhere.
    """

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = np.asarray(lo, dtype=np.float64)
        hi = lo.copy() if hi is None else np.asarray(hi, dtype=np.float64)
        lo, hi = np.broadcast_arrays(lo, hi)
        lo = np.array(lo, dtype=np.float64)
        hi = np.array(hi, dtype=np.float64)
        if np.isnan(lo).any() or np.isnan(hi).any():
            raise DomainError("NaN endpoint in interval constructor")
        if np.any(lo > hi):
            raise IntervalError("interval constructor requires lo <= hi")
        self.lo = lo
        self.hi = hi

    @classmethod
    def _raw(cls, lo, hi):
        """Internal constructor without validation (endpoints already sane)."""
        iv = object.__new__(cls)
        iv.lo = np.asarray(lo, dtype=np.float64)
        iv.hi = np.asarray(hi, dtype=np.float64)
        return iv

    # ------------------------------------------------------------------
    # shape plumbing
    # ------------------------------------------------------------------
    @property
    def shape(self):
        return self.lo.shape

    @property
    def size(self):
        return self.lo.size

    def __len__(self):
        return len(self.lo)

    def __getitem__(self, idx):
        return Interval._raw(self.lo[idx], self.hi[idx])

    def reshape(self, *shape):
        return Interval._raw(self.lo.reshape(*shape), self.hi.reshape(*shape))

    def ravel(self):
        return Interval._raw(self.lo.ravel(), self.hi.ravel())

    def item(self):
        return (float(self.lo), float(self.hi))

    def copy(self):
        return Interval._raw(self.lo.copy(), self.hi.copy())

    @staticmethod
    def stack(ivs, axis=0):
        return Interval._raw(np.stack([i.lo for i in ivs], axis=axis),
                             np.stack([i.hi for i in ivs], axis=axis))

    def __repr__(self):
        if self.lo.shape == ():
            return f"Interval({self.lo!r}, {self.hi!r})"
        return f"Interval(shape={self.lo.shape}, lo={self.lo!r}, hi={self.hi!r})"

    # ------------------------------------------------------------------
    # measures and predicates
    # ------------------------------------------------------------------
    @property
    def width(self):
        """Upper bound on hi - lo (directed-rounded, so exactly 0 for
        degenerate intervals)."""
        with _ERR():
            return _k_width(self.lo, self.hi)

    @property
    def mid(self):
        """A float inside the interval, near the midpoint (not rigorous)."""
        with np.errstate(invalid="ignore"):
            m = self.lo + 0.5 * (self.hi - self.lo)
            m = np.where(np.isfinite(m), m, 0.5 * self.lo + 0.5 * self.hi)
            m = np.clip(m, self.lo, self.hi)
            return np.where(np.isnan(m), np.clip(0.0, self.lo, self.hi), m)

    @property
    def mag(self):
        """sup |x| over the interval."""
        return np.maximum(np.abs(self.lo), np.abs(self.hi))

    def contains(self, x):
        x = np.asarray(x, dtype=np.float64)
        return (self.lo <= x) & (x <= self.hi)

    def encloses(self, other: "Interval"):
        return (self.lo <= other.lo) & (other.hi <= self.hi)

    def intersect(self, other: "Interval") -> "Interval":
        """Intersection; empty elements collapse is an error.

        Intended for combining two enclosures of the same quantity, where
        emptiness would indicate a soundness bug.
        """
        lo = np.maximum(self.lo, other.lo)
        hi = np.minimum(self.hi, other.hi)
        if np.any(lo > hi):
            raise IntervalError("intersection of enclosures is empty")
        return Interval._raw(lo, hi)

    def hull(self, other: "Interval") -> "Interval":
        return Interval._raw(np.minimum(self.lo, other.lo),
                             np.maximum(self.hi, other.hi))

    def strictly_less(self, other):
        """Certified strict ``self < other`` (elementwise bool)."""
        other = as_interval(other)
        return self.hi < other.lo

    def strictly_greater(self, other):
        other = as_interval(other)
        return self.lo > other.hi

    def contains_zero(self):
        return (self.lo <= 0.0) & (0.0 <= self.hi)

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------
    def __add__(self, other):
        other = as_interval(other)
        with _ERR():
            return Interval._raw(_k_add_lo(self.lo, other.lo),
                                 _k_add_hi(self.hi, other.hi))

    __radd__ = __add__

    def __sub__(self, other):
        other = as_interval(other)
        with _ERR():
            return Interval._raw(_k_sub_lo(self.lo, other.hi),
                                 _k_sub_hi(self.hi, other.lo))

    def __rsub__(self, other):
        return as_interval(other) - self

    def __mul__(self, other):
        other = as_interval(other)
        with _ERR():
            return Interval._raw(
                _k_mul_lo(self.lo, self.hi, other.lo, other.hi),
                _k_mul_hi(self.lo, self.hi, other.lo, other.hi))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_interval(other)
        if np.any(other.contains_zero()):
            raise DivisionByIntervalContainingZero(
                "divisor interval contains zero; use div_wide for the total variant")
        return div_wide(self, other)

    def __rtruediv__(self, other):
        return as_interval(other) / self

    def __neg__(self):
        return Interval._raw(-self.hi, -self.lo)

    def __abs__(self):
        lo = np.where(self.lo >= 0.0, self.lo,
                      np.where(self.hi <= 0.0, -self.hi, 0.0))
        hi = np.maximum(-self.lo, self.hi)
        return Interval._raw(lo, hi)

    def sqr(self):
        """Enclosure of x^2 (tighter than self * self on sign-straddlers)."""
        with _ERR():
            return Interval._raw(_k_sqr_lo(self.lo, self.hi),
                                 _k_sqr_hi(self.lo, self.hi))

    def sqrt(self):
        """Square root.  Negative lows are clamped to 0 (documented domain
        policy); an interval entirely below zero raises DomainError.

        np.sqrt is correctly rounded, so a result that squares back exactly
        is exact and needs no widening; otherwise one ulp covers it.
        """
        if np.any(self.hi < 0.0):
            raise DomainError("sqrt of interval entirely below zero")
        with _ERR():
            return Interval._raw(_k_sqrt_lo(self.lo, self.hi),
                                 _k_sqrt_hi(self.lo, self.hi))

    def exp(self):
        k = _ULP_STEPS["exp"]
        lo = np.maximum(_down_k(np.exp(self.lo), k), 0.0)
        hi = _up_k(np.exp(self.hi), k)
        return Interval._raw(lo, hi)

    def min_with(self, other):
        other = as_interval(other)
        return Interval._raw(np.minimum(self.lo, other.lo),
                             np.minimum(self.hi, other.hi))

    def max_with(self, other):
        other = as_interval(other)
        return Interval._raw(np.maximum(self.lo, other.lo),
                             np.maximum(self.hi, other.hi))

    def clip(self, lo=None, hi=None):
        """Intersect with a constant band (used for ranges known a priori)."""
        nlo, nhi = self.lo, self.hi
        if lo is not None:
            nlo = np.maximum(nlo, lo)
            nhi = np.maximum(nhi, lo)
        if hi is not None:
            nlo = np.minimum(nlo, hi)
            nhi = np.minimum(nhi, hi)
        return Interval._raw(nlo, nhi)


def as_interval(x) -> Interval:
    if isinstance(x, Interval):
        return x
    return Interval(x)


def exact(x) -> Interval:
    """Degenerate interval [x, x] (x must be exactly representable)."""
    return Interval(x)


def div_wide(a: Interval, b: Interval) -> Interval:
    """Total division: elements whose divisor contains zero yield [-inf, inf].

    This is the documented per-op alternative used inside verification
    kernels so that criterion evaluation never throws mid-vector.
    """
    a, b = as_interval(a), as_interval(b)
    with _ERR():
        return Interval._raw(_k_div_lo(a.lo, a.hi, b.lo, b.hi),
                             _k_div_hi(a.lo, a.hi, b.lo, b.hi))


def sum_enclosure(terms: Interval, axis=-1) -> Interval:
    """Rigorous enclosure of the elementwise sum along ``axis``.

    Summation runs as an explicit binary tree of directed-rounded additions,
    so the accumulated widening is at most O(log2 n) ulps of the partial sums
    rather than O(n) -- and zero whenever every partial sum is exact.
    Opposite-infinity collisions collapse to the whole line on the affected
    element.
    """
    lo = np.moveaxis(np.asarray(terms.lo, dtype=np.float64), axis, -1)
    hi = np.moveaxis(np.asarray(terms.hi, dtype=np.float64), axis, -1)
    if lo.shape[-1] == 0:
        z = np.zeros(lo.shape[:-1])
        return Interval._raw(z, z.copy())
    while lo.shape[-1] > 1:
        if lo.shape[-1] % 2:
            pad = [(0, 0)] * (lo.ndim - 1) + [(0, 1)]
            lo = np.pad(lo, pad)  # adding exact 0.0 terms
            hi = np.pad(hi, pad)
        with _ERR():
            lo = _k_add_lo(lo[..., ::2], lo[..., 1::2])
            hi = _k_add_hi(hi[..., ::2], hi[..., 1::2])
    return Interval._raw(lo[..., 0], hi[..., 0])


# ----------------------------------------------------------------------
# spec-surface operation names
# ----------------------------------------------------------------------
_ARITH = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
}


def arith(a, b, kind: str) -> Interval:
    """Binary arithmetic dispatch: kind in {add, sub, mul, div}."""
    try:
        op = _ARITH[kind]
    except KeyError:
        raise IntervalError(f"unknown arith kind {kind!r}") from None
    return op(as_interval(a), as_interval(b))


def elem(a, kind: str, b=None) -> Interval:
    """Elementary function dispatch: kind in {exp, sqrt, abs, neg, min, max}.

    ``min``/``max`` are pairwise and require the second operand ``b``.
    """
    a = as_interval(a)
    if kind == "exp":
        return a.exp()
    if kind == "sqrt":
        return a.sqrt()
    if kind == "abs":
        return abs(a)
    if kind == "neg":
        return -a
    if kind in ("min", "max"):
        if b is None:
            raise IntervalError(f"elem kind {kind!r} needs a second operand")
        return a.min_with(b) if kind == "min" else a.max_with(b)
    raise IntervalError(f"unknown elem kind {kind!r}")


# ----------------------------------------------------------------------
# boxes
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class Box:
    """An axis-aligned box: ordered named dimensions with interval extents."""

    names: tuple
    ivals: Interval  # shape (len(names),)

    def __post_init__(self):
        if self.ivals.shape != (len(self.names),):
            raise IntervalError("Box needs one interval per dimension")
        if len(set(self.names)) != len(self.names):
            raise IntervalError("Box dimension names must be distinct")

    @classmethod
    def from_dict(cls, d) -> "Box":
        """Build from ``{name: Interval | scalar | (lo, hi)}`` (the tuple
        form is what :meth:`to_dict` emits, so the two round-trip)."""
        names = tuple(d.keys())
        los, his = [], []
        for v in d.values():
            if isinstance(v, (tuple, list)):
                lo, hi = v
                iv = Interval(float(lo), float(hi))
            else:
                iv = as_interval(v)
            los.append(float(iv.lo))
            his.append(float(iv.hi))
        return cls(names, Interval(np.array(los, float), np.array(his, float)))

    def __getitem__(self, name) -> Interval:
        return self.ivals[self.names.index(name)]

    def to_dict(self):
        return {n: (float(self.ivals.lo[i]), float(self.ivals.hi[i]))
                for i, n in enumerate(self.names)}

    @property
    def widths(self):
        return self.ivals.width

    def contains_point(self, pt) -> bool:
        pt = np.asarray(pt, dtype=np.float64)
        return bool(np.all(self.ivals.contains(pt)))


def split(box: Box, dim) -> tuple:
    """Split ``box`` along dimension ``dim`` (name or index) at the midpoint.

    The midpoint float is shared by both children, so their union is exactly
    the parent.  Degenerate dimensions cannot be split.
    """
    i = box.names.index(dim) if isinstance(dim, str) else int(dim)
    lo = float(box.ivals.lo[i])
    hi = float(box.ivals.hi[i])
    if lo == hi:
        raise ZeroWidthDimension(f"dimension {box.names[i]!r} has zero width")
    with np.errstate(invalid="ignore"):
        m = float(np.clip(lo + 0.5 * (hi - lo), lo, hi))
    if not np.isfinite(m):
        if lo == -_INF and hi == _INF:
            m = 0.0
        elif lo == -_INF:
            m = min(0.0, hi) - 1.0
        elif hi == _INF:
            m = max(0.0, lo) + 1.0
        else:
            m = 0.5 * lo + 0.5 * hi
    if m <= lo or m >= hi:
        m = float(np.nextafter(lo, hi))
    left_lo, left_hi = box.ivals.lo.copy(), box.ivals.hi.copy()
    right_lo, right_hi = box.ivals.lo.copy(), box.ivals.hi.copy()
    left_hi[i] = m
    right_lo[i] = m
    return (Box(box.names, Interval._raw(left_lo, left_hi)),
            Box(box.names, Interval._raw(right_lo, right_hi)))


def pick_split_dim(box: Box, heuristic: str = "widest") -> int:
    """Choose the dimension to split.  Ties resolve to the first dimension.

    heuristic 'widest': largest width; 'shortest_nonzero': smallest strictly
    positive width.  All-degenerate boxes raise AllDimensionsDegenerate.
    """
    w = box.ivals.width
    if not np.any(w > 0.0):
        raise AllDimensionsDegenerate("no splittable dimension left")
    if heuristic == "widest":
        return int(np.argmax(w))
    if heuristic == "shortest_nonzero":
        wm = np.where(w > 0.0, w, _INF)
        return int(np.argmin(wm))
    raise IntervalError(f"unknown split heuristic {heuristic!r}")
