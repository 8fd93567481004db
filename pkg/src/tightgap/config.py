"""Clause configurations and the threshold-rounding analysis kernels.

A *configuration* is a clause type together with the first and second moments
of its literals under a pseudo-expectation / SDP solution: biases ``b_i``,
``b_j`` in [-1, 1] and a pair moment ``b_ij``.  The sign convention is
``-1 = true``: a literal with bias ``b`` is true with probability
``(1 - b) / 2``.

Clause types carry their multilinear (Fourier) expansion over {-1, +1} with
exactly representable dyadic coefficients, so ``value`` - the satisfaction
probability of the clause under the given moments - is evaluated without any
input rounding:

    OR        x or y            3/4 - x/4 - y/4 - xy/4
    IMP_OR    (not x) or y      3/4 + x/4 - y/4 + xy/4
    NAND      (not x) or not y  3/4 + x/4 + y/4 - xy/4
    UNARY_POS x                 1/2 - x/2
    UNARY_NEG not x             1/2 + x/2

Threshold rounding draws jointly normal ``g_i`` with correlation
``rho_of(config)`` and sets a literal true iff ``g_i > t_i``.  The two
families of thresholds used throughout:

* ``prob_beta``: ``t_i = Phi^-1((1 + beta b_i)/2)``, the linear rounding
  scheme whose singleton marginals are ``beta``-scaled biases;
* ``h_gamma``:   ``t_i = Phi^-1(gamma (1 + b_i)/2)``, the scheme tailored to
  one-sided (OR + negative-unary) instances.

The criterion functions compare rounded satisfaction probability against the
scaled configuration value:

    f_beta(c)  = prob_beta(c)  - beta  * value(c)
    h_gamma(c) = prob_gamma(c) - gamma * value(c)

Gradient routines implement frozen closed forms (checked against numeric
differentiation in the tests); the public ones raise on degenerate inputs,
while ``*_total`` variants stay defined everywhere by widening to the whole
line, which can only ever make a verification fail, not lie.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .gauss import (
    Correlation,
    DegenerateCorrelation,
    Phi,
    Phi_inv,
    biv_Phi,
    dPhi_drho,
    phi,
)
from .interval import DomainError, Interval, as_interval, div_wide

__all__ = [
    "PredicateType",
    "Configuration",
    "BoundaryBias",
    "feasibility",
    "rho_of",
    "value",
    "positivity",
    "prob_thresh",
    "prob_beta",
    "f_beta",
    "h_gamma",
    "g_b_beta",
    "rho_bt",
    "drho_bt_factor",
    "grad_f_beta",
    "grad_param_rho",
    "grad_fold_f_beta",
    "grad_fold_h_gamma",
    "parse_config_literal",
]


class BoundaryBias(DomainError):
    """A bias sits at +-1 where a gradient formula divides by 1 - b^2."""


class PredicateType(Enum):
    OR = "OR"
    IMP_OR = "IMPOR"
    NAND = "NAND"
    UNARY_POS = "POS"
    UNARY_NEG = "NEG"

    @property
    def arity(self) -> int:
        return 1 if self in (PredicateType.UNARY_POS, PredicateType.UNARY_NEG) else 2

    @property
    def fourier(self):
        """Multilinear coefficients (c_0, c_i[, c_j, c_ij]), exact dyadics."""
        return _FOURIER[self]


_FOURIER = {
    PredicateType.OR: (0.75, -0.25, -0.25, -0.25),
    PredicateType.IMP_OR: (0.75, 0.25, -0.25, 0.25),
    PredicateType.NAND: (0.75, 0.25, 0.25, -0.25),
    PredicateType.UNARY_POS: (0.5, -0.5),
    PredicateType.UNARY_NEG: (0.5, 0.5),
}


@dataclass(frozen=True)
class Configuration:
    """A clause type with (interval) first and second moments."""

    pred: PredicateType
    b_i: Interval
    b_j: Interval | None = None
    b_ij: Interval | None = None

    def __post_init__(self):
        object.__setattr__(self, "b_i", as_interval(self.b_i))
        if self.pred.arity == 1:
            if self.b_j is not None or self.b_ij is not None:
                raise DomainError("unary configuration takes a single bias")
        else:
            if self.b_j is None or self.b_ij is None:
                raise DomainError("binary configuration needs b_j and b_ij")
            object.__setattr__(self, "b_j", as_interval(self.b_j))
            object.__setattr__(self, "b_ij", as_interval(self.b_ij))
        for name in ("b_i", "b_j", "b_ij"):
            iv = getattr(self, name)
            if iv is not None and (np.any(iv.lo < -1.0) or np.any(iv.hi > 1.0)):
                raise DomainError(f"{name} must lie within [-1, 1]")


def _tri(certain_true, certain_false):
    """Collapse two certainty masks to True / False / None (scalar) or an
    int8 array (+1 / -1 / 0) for vectorized configurations."""
    t = np.asarray(certain_true)
    f = np.asarray(certain_false)
    if t.shape == ():
        return True if bool(t) else (False if bool(f) else None)
    out = np.zeros(t.shape, dtype=np.int8)
    out[t] = 1
    out[f & ~t] = -1
    return out


def feasibility(cfg: Configuration):
    """Tri-state: do the moments admit a distribution on {-1,+1}^2?

    The condition is ``-1 + |b_i + b_j| <= b_ij <= 1 - |b_i - b_j|``.
    True / +1 means it holds on the whole enclosure, False / -1 means one of
    the two inequalities fails everywhere, None / 0 is undecided.  Exact
    boundary configurations (the folds) report None: outward rounding cannot
    certify a non-strict inequality that holds with equality, and we prefer
    honesty over a special case.  Consumers that only need to reject
    impossible moments should test ``feasibility(c) is not False``.
    """
    if cfg.pred.arity == 1:
        return _tri(np.ones(cfg.b_i.shape, bool), np.zeros(cfg.b_i.shape, bool))
    low = Interval(-1.0) + abs(cfg.b_i + cfg.b_j)
    high = Interval(1.0) - abs(cfg.b_i - cfg.b_j)
    ok = (cfg.b_ij.lo >= low.hi) & (cfg.b_ij.hi <= high.lo)
    bad = (cfg.b_ij.hi < low.lo) | (cfg.b_ij.lo > high.hi)
    return _tri(ok, bad)


def rho_of(cfg: Configuration) -> Correlation:
    """Correlation of the Gaussian realization:
    ``(b_ij - b_i b_j) / sqrt((1-b_i^2)(1-b_j^2))``, clipped to [-1, 1].

    A vanishing denominator (a unit bias) contributes rho = 0; enclosures
    whose denominator merely touches zero widen to all of [-1, 1] on those
    elements.
    """
    if cfg.pred.arity == 1:
        raise DomainError("rho_of needs a binary configuration")
    num = cfg.b_ij - cfg.b_i * cfg.b_j
    den = ((Interval(1.0) - cfg.b_i.sqr()) * (Interval(1.0) - cfg.b_j.sqr())).clip(lo=0.0).sqrt()
    q = div_wide(num, den).clip(lo=-1.0, hi=1.0)
    # a bias pinned at +-1 zeroes the denominator for every point: rho := 0.
    # (Enclosures that merely touch a unit bias already widen through
    # div_wide to [-1, 1], which contains the conventional 0.)
    degenerate = (abs(cfg.b_i).lo >= 1.0) | (abs(cfg.b_j).lo >= 1.0)
    lo = np.where(degenerate, 0.0, q.lo)
    hi = np.where(degenerate, 0.0, q.hi)
    return Correlation(Interval._raw(lo, hi))


def value(cfg: Configuration) -> Interval:
    """Expected satisfaction of the clause under the configuration moments."""
    c = cfg.pred.fourier
    out = Interval(c[0]) + Interval(c[1]) * cfg.b_i
    if cfg.pred.arity == 2:
        out = out + Interval(c[2]) * cfg.b_j + Interval(c[3]) * cfg.b_ij
    return out.clip(lo=0.0, hi=1.0)


def positivity(cfg: Configuration):
    """Tri-state sign of (pair Fourier coefficient) * rho."""
    if cfg.pred.arity == 1:
        return _tri(np.ones(cfg.b_i.shape, bool), np.zeros(cfg.b_i.shape, bool))
    prod = Interval(cfg.pred.fourier[3]) * rho_of(cfg).rho
    return _tri(prod.lo >= 0.0, prod.hi < 0.0)


# ----------------------------------------------------------------------
# threshold rounding probabilities
# ----------------------------------------------------------------------
def prob_thresh(cfg: Configuration, t_i, t_j=None, tol=None) -> Interval:
    """Satisfaction probability when literal k is true iff ``g_k > t_k``.

    Infinite thresholds are legitimate (a literal pinned false / true).
    """
    t_i = as_interval(t_i)
    pred = cfg.pred
    if pred.arity == 1:
        if t_j is not None:
            raise DomainError("unary configuration takes a single threshold")
        if pred is PredicateType.UNARY_NEG:
            return Phi(t_i)
        return (Interval(1.0) - Phi(t_i)).clip(lo=0.0, hi=1.0)
    if t_j is None:
        raise DomainError("binary configuration needs both thresholds")
    t_j = as_interval(t_j)
    rho = rho_of(cfg)
    if pred is PredicateType.OR:
        out = Interval(1.0) - biv_Phi(t_i, t_j, rho, tol=tol)
    elif pred is PredicateType.IMP_OR:
        out = Interval(1.0) - Phi(t_j) + biv_Phi(t_i, t_j, rho, tol=tol)
    else:  # NAND
        out = Interval(1.0) - biv_Phi(-t_i, -t_j, rho, tol=tol)
    return out.clip(lo=0.0, hi=1.0)


def _beta_thresholds(cfg: Configuration, beta):
    beta = as_interval(beta)
    t_i = Phi_inv(((Interval(1.0) + beta * cfg.b_i) * Interval(0.5)).clip(lo=0.0, hi=1.0))
    t_j = None
    if cfg.pred.arity == 2:
        t_j = Phi_inv(((Interval(1.0) + beta * cfg.b_j) * Interval(0.5)).clip(lo=0.0, hi=1.0))
    return t_i, t_j


def _gamma_thresholds(cfg: Configuration, gamma):
    gamma = as_interval(gamma)
    t_i = Phi_inv((gamma * (Interval(1.0) + cfg.b_i) * Interval(0.5)).clip(lo=0.0, hi=1.0))
    t_j = None
    if cfg.pred.arity == 2:
        t_j = Phi_inv((gamma * (Interval(1.0) + cfg.b_j) * Interval(0.5)).clip(lo=0.0, hi=1.0))
    return t_i, t_j


def prob_beta(cfg: Configuration, beta, tol=None) -> Interval:
    """Rounded satisfaction under the beta-linear scheme."""
    t_i, t_j = _beta_thresholds(cfg, beta)
    return prob_thresh(cfg, t_i, t_j, tol=tol)


def f_beta(cfg: Configuration, beta, tol=None) -> Interval:
    """prob_beta - beta * value: the approximation-excess criterion."""
    beta = as_interval(beta)
    return prob_beta(cfg, beta, tol=tol) - beta * value(cfg)


def h_gamma(cfg: Configuration, gamma, tol=None) -> Interval:
    """One-sided variant: gamma-scheme probability minus gamma * value."""
    gamma = as_interval(gamma)
    t_i, t_j = _gamma_thresholds(cfg, gamma)
    return prob_thresh(cfg, t_i, t_j, tol=tol) - gamma * value(cfg)


# ----------------------------------------------------------------------
# the pair-boundary family (b + t, b - t, -1 + 2b)
# ----------------------------------------------------------------------
def rho_bt(b, t) -> Interval:
    """rho of the OR configuration (b+t, b-t, -1+2b):
    ``(-(1-b)^2 + t^2) / sqrt((1 - (b^2+t^2))^2 - 4 b^2 t^2)``."""
    b, t = as_interval(b), as_interval(t)
    num = -((Interval(1.0) - b).sqr()) + t.sqr()
    s2 = b.sqr() + t.sqr()
    den2 = (Interval(1.0) - s2).sqr() - Interval(4.0) * b.sqr() * t.sqr()
    den = den2.clip(lo=0.0).sqrt()
    return div_wide(num, den).clip(lo=-1.0, hi=1.0)


def drho_bt_factor(b, t) -> Interval:
    """F with d rho_bt / dt = t * F(b, t):
    ``4 b ((1-b)^2 - t^2) / ((1 - (b^2+t^2))^2 - 4 b^2 t^2)^{3/2}``."""
    b, t = as_interval(b), as_interval(t)
    s2 = b.sqr() + t.sqr()
    den2 = (Interval(1.0) - s2).sqr() - Interval(4.0) * b.sqr() * t.sqr()
    den = den2.clip(lo=0.0)
    den32 = den * den.sqrt()
    num = Interval(4.0) * b * ((Interval(1.0) - b).sqr() - t.sqr())
    return div_wide(num, den32)


def g_b_beta(b, beta, t, tol=None) -> Interval:
    """f_beta along the pair-boundary family (b+t, b-t, -1+2b).

    Precondition |b| + |t| <= 1 (so both biases stay in [-1, 1]); violated
    enclosures raise DomainError.  Uses the closed-form rho_bt rather than
    the generic quotient, which keeps the enclosure tight for small t.
    """
    b, t = as_interval(b), as_interval(t)
    if np.any((abs(b) + abs(t)).hi > 1.0):
        raise DomainError("g_b_beta needs |b| + |t| <= 1")
    beta = as_interval(beta)
    rho = rho_bt(b, t)
    t1 = Phi_inv(((Interval(1.0) + beta * (b + t)) * Interval(0.5)).clip(lo=0.0, hi=1.0))
    t2 = Phi_inv(((Interval(1.0) + beta * (b - t)) * Interval(0.5)).clip(lo=0.0, hi=1.0))
    prob = (Interval(1.0) - biv_Phi(t1, t2, rho, tol=tol)).clip(lo=0.0, hi=1.0)
    # value of (b+t, b-t, -1+2b) collapses to 1 - b
    return prob - beta * (Interval(1.0) - b)


# ----------------------------------------------------------------------
# gradients (frozen closed forms)
# ----------------------------------------------------------------------
def _lin_ratio(t_other, rho, t_own, s) -> Interval:
    """(t_other - rho * t_own) / s with s = sqrt(1 - rho^2)."""
    return div_wide(t_other - rho * t_own, s)


def grad_f_beta(cfg: Configuration, beta, tol=None):
    """(d/db_i, d/db_j, d/db_ij) of f_beta on an OR configuration.

    Raises DegenerateCorrelation when rho touches +-1 and BoundaryBias when a
    bias touches +-1 (both denominators vanish there).
    """
    if cfg.pred is not PredicateType.OR:
        raise DomainError("grad_f_beta is defined for OR configurations")
    beta = as_interval(beta)
    b1, b2, b12 = cfg.b_i, cfg.b_j, cfg.b_ij
    if np.any(abs(b1).hi >= 1.0) or np.any(abs(b2).hi >= 1.0):
        raise BoundaryBias("grad_f_beta needs |b_i|, |b_j| < 1")
    rho = rho_of(cfg).rho
    one_m = Interval(1.0) - rho.sqr()
    if np.any(one_m.lo <= 0.0):
        raise DegenerateCorrelation("grad_f_beta needs rho strictly inside (-1, 1)")
    s = one_m.sqrt()
    t1, t2 = _beta_thresholds(cfg, beta)
    dr = dPhi_drho(t1, t2, rho)
    m1 = Interval(1.0) - b1.sqr()
    m2 = Interval(1.0) - b2.sqr()
    D = (m1 * m2).sqrt()
    Dinv = div_wide(Interval(1.0), D)
    q = beta * Interval(0.25)
    h = beta * Interval(0.5)
    drho_db1 = -b2 * Dinv + rho * div_wide(b1, m1)
    drho_db2 = -b1 * Dinv + rho * div_wide(b2, m2)
    d1 = -h * Phi(_lin_ratio(t2, rho, t1, s)) - dr * drho_db1 + q
    d2 = -h * Phi(_lin_ratio(t1, rho, t2, s)) - dr * drho_db2 + q
    d12 = -dr * Dinv + q
    return d1, d2, d12


_PARAM_FNS = ("f_beta", "h_gamma")


def _surface_thresholds(fn, b1, b2, param):
    if fn == "f_beta":
        t1 = Phi_inv(((Interval(1.0) + param * b1) * Interval(0.5)).clip(lo=0.0, hi=1.0))
        t2 = Phi_inv(((Interval(1.0) + param * b2) * Interval(0.5)).clip(lo=0.0, hi=1.0))
    else:
        t1 = Phi_inv((param * (Interval(1.0) + b1) * Interval(0.5)).clip(lo=0.0, hi=1.0))
        t2 = Phi_inv((param * (Interval(1.0) + b2) * Interval(0.5)).clip(lo=0.0, hi=1.0))
    return t1, t2


def grad_param_rho(fn: str, b1, b2, rho, param, tol=None, total=False):
    """Gradient in (b_1, b_2, rho) coordinates of the OR-clause criterion
    with ``b_12 = b_1 b_2 + rho sqrt((1-b_1^2)(1-b_2^2))``.

    ``fn`` selects the threshold family: "f_beta" or "h_gamma"; ``param`` is
    the corresponding beta / gamma.  With ``total=True`` degenerate elements
    widen instead of raising (used by the cover verifier).
    """
    if fn not in _PARAM_FNS:
        raise DomainError(f"fn must be one of {_PARAM_FNS}")
    b1, b2, rho, param = map(as_interval, (b1, b2, rho, param))
    one_m = Interval(1.0) - rho.sqr()
    m1 = Interval(1.0) - b1.sqr()
    m2 = Interval(1.0) - b2.sqr()
    if not total:
        if np.any(abs(b1).hi >= 1.0) or np.any(abs(b2).hi >= 1.0):
            raise BoundaryBias("grad_param_rho needs |b_1|, |b_2| < 1")
        if np.any(one_m.lo <= 0.0):
            raise DegenerateCorrelation("grad_param_rho needs rho inside (-1, 1)")
    s = one_m.clip(lo=0.0).sqrt()
    t1, t2 = _surface_thresholds(fn, b1, b2, param)
    dr = dPhi_drho(t1, t2, rho)
    root = (m1 * m2).clip(lo=0.0).sqrt()
    q = param * Interval(0.25)
    h = param * Interval(0.5)
    # d b_12 / d b_1 = b_2 - rho b_1 sqrt((1-b_2^2)/(1-b_1^2))
    db12_db1 = b2 - rho * b1 * div_wide(m2, m1).clip(lo=0.0).sqrt()
    db12_db2 = b1 - rho * b2 * div_wide(m1, m2).clip(lo=0.0).sqrt()
    d1 = -h * Phi(_lin_ratio(t2, rho, t1, s)) + q * (Interval(1.0) + db12_db1)
    d2 = -h * Phi(_lin_ratio(t1, rho, t2, s)) + q * (Interval(1.0) + db12_db2)
    drho = -dr + q * root
    return d1, d2, drho


def grad_fold_f_beta(b1, b2, beta, total=False):
    """Gradient of f_beta restricted to the fold b_12 = -1 + b_1 + b_2
    (where rho = -sqrt((1-b_1)(1-b_2)/((1+b_1)(1+b_2))))."""
    b1, b2, beta = map(as_interval, (b1, b2, beta))
    num = (Interval(1.0) - b1) * (Interval(1.0) - b2)
    den = (Interval(1.0) + b1) * (Interval(1.0) + b2)
    if not total and np.any(den.lo <= 0.0):
        raise BoundaryBias("fold gradient needs b_1, b_2 > -1")
    rho = (-div_wide(num, den).clip(lo=0.0).sqrt()).clip(lo=-1.0, hi=1.0)
    return _fold_grad_common(b1, b2, rho, beta, "f_beta",
                             drho_sign=-1.0, value_term=beta * Interval(0.5))


def grad_fold_h_gamma(b1, b2, gamma, total=False):
    """Gradient of h_gamma restricted to the fold b_12 = -1 - b_1 - b_2
    (where rho = -sqrt((1+b_1)(1+b_2)/((1-b_1)(1-b_2)))); the clause value
    is identically 1 on this fold, so no value term appears."""
    b1, b2, gamma = map(as_interval, (b1, b2, gamma))
    num = (Interval(1.0) + b1) * (Interval(1.0) + b2)
    den = (Interval(1.0) - b1) * (Interval(1.0) - b2)
    if not total and np.any(den.lo <= 0.0):
        raise BoundaryBias("fold gradient needs b_1, b_2 < 1")
    rho = (-div_wide(num, den).clip(lo=0.0).sqrt()).clip(lo=-1.0, hi=1.0)
    return _fold_grad_common(b1, b2, rho, gamma, "h_gamma",
                             drho_sign=+1.0, value_term=Interval(0.0))


def _fold_grad_common(b1, b2, rho, param, fn, drho_sign, value_term):
    one_m = Interval(1.0) - rho.sqr()
    s = one_m.clip(lo=0.0).sqrt()
    t1, t2 = _surface_thresholds(fn, b1, b2, param)
    dr = dPhi_drho(t1, t2, rho)
    h = param * Interval(0.5)
    m1 = Interval(1.0) - b1.sqr()
    m2 = Interval(1.0) - b2.sqr()
    # d rho / d b_k = drho_sign * rho / (1 - b_k^2)
    d1 = (-h * Phi(_lin_ratio(t2, rho, t1, s))
          - dr * Interval(drho_sign) * div_wide(rho, m1) + value_term)
    d2 = (-h * Phi(_lin_ratio(t1, rho, t2, s))
          - dr * Interval(drho_sign) * div_wide(rho, m2) + value_term)
    return d1, d2


# ----------------------------------------------------------------------
# criterion values on the verification surfaces
# ----------------------------------------------------------------------
def f_param_rho(fn: str, b1, b2, rho, param, tol=None) -> Interval:
    """Criterion value in (b_1, b_2, rho) coordinates on OR clauses, with
    ``b_12 = b_1 b_2 + rho sqrt((1-b_1^2)(1-b_2^2))``.

    The value factor uses the raw multilinear formula (no clipping), so the
    function agrees with the analytic surface the gradients differentiate.
    """
    if fn not in _PARAM_FNS:
        raise DomainError(f"fn must be one of {_PARAM_FNS}")
    b1, b2, rho, param = map(as_interval, (b1, b2, rho, param))
    root = ((Interval(1.0) - b1.sqr()) * (Interval(1.0) - b2.sqr())).clip(lo=0.0).sqrt()
    b12 = b1 * b2 + rho * root
    t1, t2 = _surface_thresholds(fn, b1, b2, param)
    prob = Interval(1.0) - biv_Phi(t1, t2, rho, tol=tol)
    val = (Interval(3.0) - b1 - b2 - b12) * Interval(0.25)
    return prob - param * val


def f_fold(b1, b2, beta, tol=None) -> Interval:
    """f_beta on the fold b_12 = -1 + b_1 + b_2 (value = 1 - (b_1+b_2)/2).

    rho = -sqrt((1-b_1)(1-b_2)/((1+b_1)(1+b_2))), clipped into [-1, 0]; the
    clip keeps the bivariate argument legal on the infeasible side of the
    fold, where the boundary-clamped value is a sound stand-in.
    """
    b1, b2, beta = map(as_interval, (b1, b2, beta))
    num = (Interval(1.0) - b1) * (Interval(1.0) - b2)
    den = (Interval(1.0) + b1) * (Interval(1.0) + b2)
    rho = (-div_wide(num, den).clip(lo=0.0).sqrt()).clip(lo=-1.0, hi=0.0)
    t1, t2 = _surface_thresholds("f_beta", b1, b2, beta)
    prob = Interval(1.0) - biv_Phi(t1, t2, rho, tol=tol)
    val = Interval(1.0) - (b1 + b2) * Interval(0.5)
    return prob - beta * val


def h_fold(b1, b2, gamma, tol=None) -> Interval:
    """h_gamma on the fold b_12 = -1 - b_1 - b_2 (value identically 1).

    rho = -sqrt((1+b_1)(1+b_2)/((1-b_1)(1-b_2))), clipped into [-1, 0].
    """
    b1, b2, gamma = map(as_interval, (b1, b2, gamma))
    num = (Interval(1.0) + b1) * (Interval(1.0) + b2)
    den = (Interval(1.0) - b1) * (Interval(1.0) - b2)
    rho = (-div_wide(num, den).clip(lo=0.0).sqrt()).clip(lo=-1.0, hi=0.0)
    t1, t2 = _surface_thresholds("h_gamma", b1, b2, gamma)
    prob = Interval(1.0) - biv_Phi(t1, t2, rho, tol=tol)
    return prob - gamma


# ----------------------------------------------------------------------
# literal syntax: OR(0.3,-0.2;0.1)  NEG(0.16)
# (a plain comma before the pair moment is tolerated: OR(0,0,-1))
# ----------------------------------------------------------------------
_TAGS = {p.value: p for p in PredicateType}
_NUM = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_BIN_RE = re.compile(rf"^\s*([A-Z]+)\s*\(\s*({_NUM})\s*,\s*({_NUM})\s*[;,]\s*({_NUM})\s*\)\s*$")
_UN_RE = re.compile(rf"^\s*([A-Z]+)\s*\(\s*({_NUM})\s*\)\s*$")


def parse_config_literal(text: str) -> Configuration:
    """Parse ``TAG(b_i,b_j;b_ij)`` or ``TAG(b)`` into a Configuration.

    Tags: OR, IMPOR, NAND (binary); POS, NEG (unary).
    """
    m = _BIN_RE.match(text)
    if m:
        tag = m.group(1)
        pred = _TAGS.get(tag)
        if pred is None or pred.arity != 2:
            raise ValueError(f"unknown binary configuration tag {tag!r}")
        return Configuration(pred, float(m.group(2)), float(m.group(3)), float(m.group(4)))
    m = _UN_RE.match(text)
    if m:
        tag = m.group(1)
        pred = _TAGS.get(tag)
        if pred is None or pred.arity != 1:
            raise ValueError(f"unknown unary configuration tag {tag!r}")
        return Configuration(pred, float(m.group(2)))
    raise ValueError(f"cannot parse configuration literal {text!r}")
