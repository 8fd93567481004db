"""Rigorous enclosures for the standard normal family.

Point values of Phi come from ``erfc`` with documented outward widening; the
bivariate CDF comes from the arcsin substitution

    Phi_rho(x, y) = Phi(x)Phi(y) + (1/2pi) * int_0^{arcsin rho} exp(-q) dtheta,
    q(theta)      = (x^2 + y^2 - 2 x y sin(theta)) / (2 cos^2(theta)),

integrated by composite interval Simpson.  The rule's remainder on a piece
[a, b] of width w is -(w^5/2880) * g'''' (xi); the fourth derivative of
g = exp(-q) is bounded in closed form via

    g'''' = (q1^4 - 6 q1^2 q2 + 3 q2^2 + 4 q1 q3 - q4) * g,
    q_k   = N_k(s; A, B) / c^(k+2),   s = sin(theta), c = cos(theta),

with numerator polynomials (A = x^2+y^2, B = 2xy, derived symbolically once
and frozen here; validated against numeric differentiation in the tests):

    N1 = -B/2 + s*(A - B*s/2)
    N2 =  A   + s*(-5B/2 + s*(2A - B*s/2))
    N3 = -5B/2 + s*(8A + s*(-9B + s*(4A - B*s/2)))
    N4 =  8A  + s*(-61B/2 + s*(44A + s*(-29B + s*(8A - B*s/2))))

Every point enclosure is intersected with the Frechet-style envelope
max(0, Phi(x)+Phi(y)-1) <= Phi_rho <= min(Phi(x), Phi(y)) (plus the Slepian
product bound on the appropriate side of rho = 0) and with the boundary
Lipschitz clamp |Phi_rho - Phi_{+-1}| <= (pi/2 - |arcsin rho|)/(2pi), so the
result stays tight even when the quadrature cannot help.  For
|rho| > 1 - 1e-9 the quadrature is skipped entirely and the clamp is used.

Interval arguments are reduced to two point evaluations through monotonicity:
Phi_rho is nondecreasing in x, y, and rho.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special as _sp

from .interval import (
    DomainError,
    Interval,
    as_interval,
    div_wide,
    sum_enclosure,
    _down,
    _up,
    _down_k,
    _up_k,
)

__all__ = [
    "Correlation",
    "DegenerateCorrelation",
    "phi",
    "Phi",
    "Phi_inv",
    "biv_Phi",
    "biv_Phi_partials",
    "DEFAULT_QUAD_TOL",
    "BOUNDARY_BAND",
]

DEFAULT_QUAD_TOL = 1e-15
BOUNDARY_BAND = 1e-9  # |rho| beyond 1 - BOUNDARY_BAND uses the clamp only

_INF = np.inf


class DegenerateCorrelation(DomainError):
    """Correlation touches +-1 where the requested quantity is undefined."""


def _const(fn):
    """Interval constant from a float computation, widened 4 steps."""
    v = np.float64(fn)
    return Interval._raw(_down_k(v, 4), _up_k(v, 4))


TWO_PI = _const(2.0 * np.pi)
SQRT_2 = _const(np.sqrt(2.0))
INV_SQRT_2PI = _const(1.0 / np.sqrt(2.0 * np.pi))
HALF_PI = _const(np.pi / 2.0)
SIXTH = _const(1.0 / 6.0)
INV_2PI = _const(1.0 / (2.0 * np.pi))
INV_2880 = _const(1.0 / 2880.0)


@dataclass(frozen=True)
class Correlation:
    """A correlation enclosure, with explicit boundary contact flags."""

    rho: Interval

    def __post_init__(self):
        r = self.rho
        if np.any(r.lo < -1.0) or np.any(r.hi > 1.0):
            raise DomainError("correlation enclosure must lie within [-1, 1]")

    @property
    def at_minus_one(self):
        return self.rho.lo <= -1.0

    @property
    def at_plus_one(self):
        return self.rho.hi >= 1.0

    @property
    def interior(self):
        return (self.rho.lo > -1.0) & (self.rho.hi < 1.0)


# ----------------------------------------------------------------------
# univariate pieces
# ----------------------------------------------------------------------
def _erfc_iv(a: Interval) -> Interval:
    """erfc enclosure; erfc is decreasing, vendor error widened 16 steps."""
    lo = _down_k(_sp.erfc(a.hi), 16)
    hi = _up_k(_sp.erfc(a.lo), 16)
    lo = np.where(np.isinf(a.hi) & (a.hi > 0), 0.0, lo)
    hi = np.where(np.isinf(a.lo) & (a.lo < 0), 2.0, hi)
    return Interval._raw(np.clip(lo, 0.0, 2.0), np.clip(hi, 0.0, 2.0))


def phi(x) -> Interval:
    """Standard normal density enclosure; accepts +-inf (density 0)."""
    x = as_interval(x)
    e = (-(x.sqr()) * Interval(0.5)).exp()
    return (e * INV_SQRT_2PI).clip(lo=0.0)


def Phi(x) -> Interval:
    """Standard normal CDF enclosure; Phi(-inf)=0 and Phi(+inf)=1 exactly."""
    x = as_interval(x)
    arg = div_wide(-x, SQRT_2)
    out = _erfc_iv(arg) * Interval(0.5)
    lo = np.where(np.isinf(x.lo) & (x.lo > 0), 1.0, np.clip(out.lo, 0.0, 1.0))
    hi = np.where(np.isinf(x.hi) & (x.hi < 0), 0.0, np.clip(out.hi, 0.0, 1.0))
    lo = np.where(np.isinf(x.lo) & (x.lo < 0), 0.0, lo)
    hi = np.where(np.isinf(x.hi) & (x.hi > 0), 1.0, hi)
    return Interval._raw(lo, hi)


def _phi_inv_endpoint(q, side):
    """Verified float bound for Phi^-1 at probabilities ``q``.

    side=-1 returns a <= Phi^-1(q) (certified via Phi(a).hi <= q), side=+1 the
    symmetric upper bound.  q entries must lie in [0, 1]; 0 and 1 map to the
    infinities.
    """
    q = np.asarray(q, dtype=np.float64)
    out = np.where(q <= 0.0, -_INF, np.where(q >= 1.0, _INF, 0.0))
    inner = (q > 0.0) & (q < 1.0)
    if not np.any(inner):
        return out
    x0 = _sp.ndtri(q[inner])
    delta = 4.0 * np.spacing(np.maximum(1.0, np.abs(x0)))
    cand = x0 + side * delta
    for _ in range(64):
        pc = Phi(Interval(cand))
        ok = (pc.hi <= q[inner]) if side < 0 else (pc.lo >= q[inner])
        if np.all(ok):
            break
        delta = np.where(ok, delta, delta * 8.0)
        cand = np.where(ok, cand, x0 + side * delta)
    else:  # pragma: no cover - the loop converges in a handful of rounds
        raise DomainError("Phi_inv endpoint verification failed to converge")
    out[inner] = cand
    return out


def Phi_inv(p) -> Interval:
    """Inverse CDF enclosure.  Requires p within [0, 1] (else DomainError);
    endpoints touching 0/1 produce infinite endpoints.  Postcondition
    Phi(Phi_inv(p)) encloses p by construction."""
    p = as_interval(p)
    if np.any(p.lo < 0.0) or np.any(p.hi > 1.0):
        raise DomainError("Phi_inv needs probabilities inside [0, 1]")
    return Interval._raw(_phi_inv_endpoint(p.lo, -1), _phi_inv_endpoint(p.hi, +1))


# ----------------------------------------------------------------------
# interval sin / cos / arcsin on the folded quadrant [0, pi/2]
# ----------------------------------------------------------------------
_TRIG_K = 4


def _sin_q(lo, hi):
    slo = np.clip(_down_k(np.sin(lo), _TRIG_K), 0.0, 1.0)
    shi = np.clip(_up_k(np.sin(hi), _TRIG_K), 0.0, 1.0)
    return slo, shi


def _cos_q(lo, hi):
    clo = np.clip(_down_k(np.cos(hi), _TRIG_K), 0.0, 1.0)
    chi = np.clip(_up_k(np.cos(lo), _TRIG_K), 0.0, 1.0)
    return clo, chi


def _asin_iv(r) -> Interval:
    r = np.asarray(r, dtype=np.float64)
    return Interval._raw(_down_k(np.arcsin(r), _TRIG_K), _up_k(np.arcsin(r), _TRIG_K))


# ----------------------------------------------------------------------
# the Simpson kernel
# ----------------------------------------------------------------------
def _g_iv(s: Interval, c: Interval, Ai: Interval, Bi: Interval) -> Interval:
    """exp(-q) over the (s, c) enclosure; clipped to [0, 1]."""
    num = Ai - Bi * s
    den = c.sqr() * Interval(2.0)
    return (-div_wide(num, den)).exp().clip(lo=0.0, hi=1.0)


def _g4_factor(s: Interval, c: Interval, Ai: Interval, Bi: Interval) -> Interval:
    """Closed-form E with g'''' = E*g, from the frozen numerators N1..N4."""
    half_B = Bi * Interval(0.5)
    n1 = -half_B + s * (Ai - half_B * s)
    n2 = Ai + s * (Bi * Interval(-2.5) + s * (Ai * Interval(2.0) - half_B * s))
    n3 = Bi * Interval(-2.5) + s * (Ai * Interval(8.0) + s * (Bi * Interval(-9.0) + s * (Ai * Interval(4.0) - half_B * s)))
    n4 = Ai * Interval(8.0) + s * (Bi * Interval(-30.5) + s * (Ai * Interval(44.0) + s * (Bi * Interval(-29.0) + s * (Ai * Interval(8.0) - half_B * s))))
    c2 = c.sqr()
    c3 = c2 * c
    q1 = div_wide(n1, c3)
    q2 = div_wide(n2, c2.sqr())
    q3 = div_wide(n3, c2 * c3)
    q4 = div_wide(n4, c3.sqr())
    q1s = q1.sqr()
    return (q1s.sqr() - Interval(6.0) * q1s * q2 + Interval(3.0) * q2.sqr()
            + Interval(4.0) * q1 * q3 - q4)


_PIECE_LADDER = (32, 128, 512, 2048, 8192)


def _arc_integral(Tf, Tiv: Interval, Ai: Interval, Bi: Interval, tol,
                  pieces_ladder=_PIECE_LADDER):
    """Enclose J = int_0^T exp(-q) dtheta for T in Tiv (all T >= 0).

    Tf is a float lower representative of T; the sliver [Tf, T] is bounded by
    (Tiv - Tf) times a local integrand enclosure.  Refinement raises the
    piece count per element until the enclosure width meets ``tol`` or the
    ladder is exhausted (the result is sound either way, just wider).
    """
    Tf = np.asarray(Tf, dtype=np.float64)
    n = Tf.shape[0]
    out_lo = np.zeros(n)
    out_hi = np.zeros(n)
    todo = np.ones(n, dtype=bool)
    prev_w = np.full(n, _INF)

    for P in pieces_ladder:
        idx = np.flatnonzero(todo)
        if idx.size == 0:
            break
        # batch rows so the node arrays stay modest
        max_rows = max(1, 6_000_000 // (3 * P))
        for start in range(0, idx.size, max_rows):
            rows = idx[start:start + max_rows]
            J = _arc_integral_fixed(Tf[rows], Ai[rows], Bi[rows], P)
            out_lo[rows] = J.lo
            out_hi[rows] = J.hi
            w = _up(J.hi - J.lo)
            # stop when the target is met, or when refinement stops paying
            # (the residual width then comes from the interval arguments, not
            # the quadrature, and more pieces cannot remove it)
            done = (w <= tol) | (w > 0.71 * prev_w[rows])
            prev_w[rows] = w
            todo[rows] = ~done
    # ladder exhausted for any remaining rows: widest-P result is kept
    J = Interval._raw(out_lo, out_hi)
    sliver = (Tiv - Interval(Tf)) * _local_g(Tf, Ai, Bi)
    return (J + sliver).clip(lo=0.0)


def _local_g(Tf, Ai: Interval, Bi: Interval) -> Interval:
    s = Interval._raw(*_sin_q(Tf, Tf))
    c = Interval._raw(*_cos_q(Tf, Tf))
    return _g_iv(s, c, Ai, Bi)


def _arc_integral_fixed(Tf, Ai: Interval, Bi: Interval, P) -> Interval:
    """One composite-Simpson pass with P pieces (P a power of two)."""
    fracs = np.arange(P + 1, dtype=np.float64) / P
    a = Tf[:, None] * fracs[None, :]                      # exact dyadic fracs
    A2, B2 = Ai[:, None], Bi[:, None]

    se_lo, se_hi = _sin_q(a, a)
    ce_lo, ce_hi = _cos_q(a, a)
    s_even = Interval._raw(se_lo, se_hi)
    c_even = Interval._raw(ce_lo, ce_hi)
    g_even = _g_iv(s_even, c_even, A2, B2)

    m_lo = _down(0.5 * _down(a[:, :-1] + a[:, 1:]))
    m_hi = _up(0.5 * _up(a[:, :-1] + a[:, 1:]))
    sm = Interval._raw(*_sin_q(m_lo, m_hi))
    cm = Interval._raw(*_cos_q(m_lo, m_hi))
    g_mid = _g_iv(sm, cm, A2, B2)

    w = Interval._raw(_down(a[:, 1:] - a[:, :-1]), _up(a[:, 1:] - a[:, :-1]))
    g_l = g_even[:, :-1]
    g_r = g_even[:, 1:]
    terms = (w * SIXTH) * (g_l + g_mid * Interval(4.0) + g_r)
    simp = sum_enclosure(terms, axis=1)

    s_piece = Interval._raw(se_lo[:, :-1], se_hi[:, 1:])
    c_piece = Interval._raw(ce_lo[:, 1:], ce_hi[:, :-1])
    g_piece = _g_iv(s_piece, c_piece, A2, B2)
    E = _g4_factor(s_piece, c_piece, A2, B2)
    w5 = w.sqr().sqr() * w
    corr = -(w5 * INV_2880) * (E * g_piece)
    rem = sum_enclosure(corr, axis=1)
    return simp + rem


# ----------------------------------------------------------------------
# point evaluation of the bivariate CDF
# ----------------------------------------------------------------------
def _biv_point(x, y, r, tol):
    """Enclosure of Phi_r(x, y) for float arrays x, y, r (flattened)."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    r = np.asarray(r, dtype=np.float64)
    Px = Phi(Interval(x))
    Py = Phi(Interval(y))

    # Frechet envelope, valid for every rho
    env_lo = np.maximum(0.0, _down((Px.lo + Py.lo) - 1.0))
    env_hi = np.minimum(Px.hi, Py.hi)
    # Slepian product bound on the signed side
    prod = Px * Py
    env_lo = np.where(r >= 0.0, np.maximum(env_lo, prod.lo), env_lo)
    env_hi = np.where(r <= 0.0, np.minimum(env_hi, prod.hi), env_hi)

    # boundary Lipschitz clamps: the rho-density is at most
    # 1/(2 pi sqrt(1-rho'^2)), whose integral from rho to +-1 is the arcsin
    # distance over 2 pi.
    asin_r = _asin_iv(r)
    dist_p1 = ((HALF_PI - asin_r) * INV_2PI).clip(lo=0.0)
    dist_m1 = ((HALF_PI + asin_r) * INV_2PI).clip(lo=0.0)
    at_plus = np.minimum(Px.lo, Py.lo)                       # Phi_{+1} lower
    at_minus = np.maximum(0.0, _up((Px.hi + Py.hi) - 1.0))   # Phi_{-1} upper
    env_lo = np.maximum(env_lo, _down(at_plus - dist_p1.hi))
    env_hi = np.minimum(env_hi, _up(at_minus + dist_m1.hi))
    env_lo = np.clip(env_lo, 0.0, 1.0)
    env_hi = np.clip(env_hi, 0.0, 1.0)

    lo = env_lo.copy()
    hi = env_hi.copy()

    finite = np.isfinite(x) & np.isfinite(y)
    quad = finite & (np.abs(r) <= 1.0 - BOUNDARY_BAND) & (r != 0.0)
    if np.any(quad):
        xi = Interval(x[quad])
        yi = Interval(y[quad])
        ri = r[quad]
        sign = np.sign(ri)
        Ai = xi.sqr() + yi.sqr()
        # fold the integration direction so every piece lives in [0, pi/2):
        # theta = sign * tau turns the integrand into exp(-(A - B_eff s)/2c^2)
        # with B_eff = 2 x y sign(rho), and I = sign * J.
        Bi = Interval(2.0) * xi * yi * Interval(sign)
        T = _asin_iv(np.abs(ri))
        Tf = T.lo
        J = _arc_integral(Tf, T, Ai, Bi, tol)
        I = Interval._raw(
            np.where(sign > 0, J.lo, -J.hi),
            np.where(sign > 0, J.hi, -J.lo),
        )
        val = Px[quad] * Py[quad] + I * INV_2PI
        lo[quad] = np.maximum(lo[quad], val.lo)
        hi[quad] = np.minimum(hi[quad], val.hi)

    zero = finite & (r == 0.0)
    if np.any(zero):
        val = Px[zero] * Py[zero]
        lo[zero] = np.maximum(lo[zero], val.lo)
        hi[zero] = np.minimum(hi[zero], val.hi)

    # exact infinite-argument reductions
    m_zero = (x == -_INF) | (y == -_INF)
    lo[m_zero] = 0.0
    hi[m_zero] = 0.0
    m_x = (x == _INF) & ~m_zero
    lo[m_x] = Py.lo[m_x]
    hi[m_x] = Py.hi[m_x]
    m_y = (y == _INF) & ~m_zero & ~m_x
    lo[m_y] = Px.lo[m_y]
    hi[m_y] = Px.hi[m_y]

    bad = lo > hi
    if np.any(bad):  # pragma: no cover - enclosure routes disagreeing is a bug
        raise DomainError("bivariate enclosure routes produced empty intersection")
    return Interval._raw(lo, hi)


def biv_Phi(x, y, rho, tol=None) -> Interval:
    """Enclosure of the bivariate normal CDF Phi_rho(x, y).

    Monotone reduction: interval arguments use the lower corner
    (x.lo, y.lo, rho.lo) for the lower endpoint and the upper corner for the
    upper endpoint.  ``tol`` is the target width of the quadrature part
    (default 1e-15); the enclosure is sound for any achieved width.
    """
    x, y = as_interval(x), as_interval(y)
    rho = rho.rho if isinstance(rho, Correlation) else as_interval(rho)
    if np.any(rho.lo < -1.0) or np.any(rho.hi > 1.0):
        raise DomainError("correlation out of [-1, 1]")
    if tol is None:
        tol = DEFAULT_QUAD_TOL
    xl, yl, rl, xh, yh, rh = np.broadcast_arrays(x.lo, y.lo, rho.lo, x.hi, y.hi, rho.hi)
    shape = xl.shape
    lo = _biv_point(xl.ravel(), yl.ravel(), rl.ravel(), tol).lo
    hi = _biv_point(xh.ravel(), yh.ravel(), rh.ravel(), tol).hi
    return Interval._raw(lo.reshape(shape), hi.reshape(shape))


# ----------------------------------------------------------------------
# partial derivatives
# ----------------------------------------------------------------------
def dPhi_drho(x, y, rho) -> Interval:
    """d/drho Phi_rho(x, y) = exp(-(x^2-2rho x y+y^2)/(2(1-rho^2))) /
    (2 pi sqrt(1-rho^2)); total version (whole-line on degenerate rho)."""
    x, y, rho = as_interval(x), as_interval(y), as_interval(rho)
    one_m = (Interval(1.0) - rho.sqr()).clip(lo=0.0)
    num = x.sqr() - Interval(2.0) * rho * x * y + y.sqr()
    e = (-div_wide(num, Interval(2.0) * one_m)).exp()
    out = div_wide(e, TWO_PI * one_m.sqrt())
    return out.clip(lo=0.0)


def biv_Phi_partials(x, y, rho):
    """(d/dx, d/dy, d/drho) of Phi_rho(x, y).

    Preconditions: x and y finite, 1 - rho^2 bounded away from zero; raises
    DomainError / DegenerateCorrelation otherwise.
    """
    x, y = as_interval(x), as_interval(y)
    rho = rho.rho if isinstance(rho, Correlation) else as_interval(rho)
    if np.any(~np.isfinite(x.lo)) or np.any(~np.isfinite(x.hi)) \
            or np.any(~np.isfinite(y.lo)) or np.any(~np.isfinite(y.hi)):
        raise DomainError("biv_Phi_partials needs finite x, y")
    one_m = Interval(1.0) - rho.sqr()
    if np.any(one_m.lo <= 0.0):
        raise DegenerateCorrelation("correlation touches +-1 in biv_Phi_partials")
    s = one_m.sqrt()
    dX = phi(x) * Phi((y - rho * x) / s)
    dY = phi(y) * Phi((x - rho * y) / s)
    dR = dPhi_drho(x, y, rho)
    return dX, dY, dR
