"""Hard weighted distributions and their optimality certificates.

Two distributions are packaged here.  The first mixes an OR clause between
two equally negatively biased variables (with the pair moment on the lower
feasibility boundary) with a negated-literal unary on the same bias; its
acceptance probability under a single shared threshold has a unique interior
maximum, and the certificate pins that maximum against the clause value.
The second mixes OR and implication clauses over one positive and one
negative bias class; its acceptance probability over the two-threshold plane
peaks at a stationary pair and at two infinite corners, all at the same
height, which ties the distribution's ratio to the implication constant.

Certificates are explicit premise lists: every premise is an interval fact
checked here (or a cover delegated to the verifier), so a reader can audit
exactly what was established.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .config import (Configuration, PredicateType, feasibility, positivity,
                     prob_thresh, value as clause_value)
from .gauss import Phi, Phi_inv, phi, biv_Phi
from .interval import DomainError, Interval, as_interval
from .verifier import SCHEMA_VERSION, CheckStatus, run_lemma


class HardnessError(Exception):
    """Base for hard-distribution construction/certificate errors."""


class NegativeWeight(HardnessError):
    """A constructed weight cannot be certified nonnegative."""


class UnmappedBias(HardnessError):
    """A bias has no threshold slot under the sign mapping."""


class PremiseFailed(HardnessError):
    """A certificate premise failed; the message names it."""


# canonical input enclosures (wide enough to absorb the last printed digit)
GAMMA_STAR_WINDOW = (0.9539798, 0.95398)
THETA1_BIAS = -0.1824167935
THETA2_BIAS = 0.1489442419
BIAS_SLACK = 1e-6


@dataclass(frozen=True)
class ThresholdPoint:
    """A pair of rounding thresholds, one per bias sign class."""

    t1: Interval
    t2: Interval

    def __post_init__(self):
        object.__setattr__(self, "t1", as_interval(self.t1))
        object.__setattr__(self, "t2", as_interval(self.t2))

    def to_json_dict(self):
        return {"t1": [float(self.t1.lo), float(self.t1.hi)],
                "t2": [float(self.t2.lo), float(self.t2.hi)]}


@dataclass(frozen=True)
class WeightedDistribution:
    """Weighted clause configurations with certified-nonnegative weights
    summing to one (to within the enclosure widths)."""

    entries: tuple

    def __post_init__(self):
        entries = tuple((cfg, as_interval(w)) for cfg, w in self.entries)
        object.__setattr__(self, "entries", entries)
        for cfg, w in entries:
            if not isinstance(cfg, Configuration):
                raise TypeError("entries must pair Configuration with weight")
            if np.any(w.lo < 0.0):
                raise NegativeWeight(
                    f"weight {w!r} for {cfg.pred.value} is not certified"
                    f" nonnegative")
            # boundary moments legitimately report None here
            if feasibility(cfg) is False:
                raise ValueError(f"infeasible configuration {cfg!r}")
        res = self.sum_residual()
        if res.lo > 0.0 or res.hi < 0.0:
            raise ValueError(
                f"weights do not sum to 1 (residual [{float(res.lo)},"
                f" {float(res.hi)}])")

    def weights(self):
        return tuple(w for _, w in self.entries)

    def sum_residual(self) -> Interval:
        total = Interval(0.0)
        for _, w in self.entries:
            total = total + w
        return total - Interval(1.0)

    def value(self) -> Interval:
        """Weighted clause value of the distribution."""
        total = Interval(0.0)
        for cfg, w in self.entries:
            total = total + w * clause_value(cfg)
        return total

    def to_json_dict(self) -> dict:
        out = []
        for cfg, w in self.entries:
            rec = {"pred": cfg.pred.value,
                   "b_i": [float(cfg.b_i.lo), float(cfg.b_i.hi)],
                   "weight_lo": float(w.lo), "weight_hi": float(w.hi)}
            if cfg.pred.arity == 2:
                rec["b_j"] = [float(cfg.b_j.lo), float(cfg.b_j.hi)]
                rec["b_ij"] = [float(cfg.b_ij.lo), float(cfg.b_ij.hi)]
            out.append(rec)
        return {"schema_version": SCHEMA_VERSION, "entries": out}

    @staticmethod
    def from_json_dict(data: dict) -> "WeightedDistribution":
        entries = []
        for rec in data["entries"]:
            pred = PredicateType(rec["pred"])
            kw = {"b_i": Interval(*rec["b_i"])}
            if pred.arity == 2:
                kw["b_j"] = Interval(*rec["b_j"])
                kw["b_ij"] = Interval(*rec["b_ij"])
            entries.append((Configuration(pred, **kw),
                            Interval(rec["weight_lo"], rec["weight_hi"])))
        return WeightedDistribution(tuple(entries))

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json_dict(), fh, indent=2)
            fh.write("\n")


def _slot(bias: Interval, t: ThresholdPoint) -> Interval:
    if np.all(bias.hi < 0.0):
        return t.t1
    if np.all(bias.lo > 0.0):
        return t.t2
    raise UnmappedBias(
        f"bias {bias!r} straddles zero; the sign mapping (negative -> t1,"
        f" positive -> t2) cannot place it")


def prob_theta(dist: WeightedDistribution, t: ThresholdPoint,
               tol=None) -> Interval:
    """Acceptance probability of threshold rounding on the distribution.

    Thresholds attach to variables by bias sign: negative-bias variables use
    t1, positive-bias ones t2 (UnmappedBias for a bias enclosure straddling
    zero).
    """
    total = Interval(0.0)
    for cfg, w in dist.entries:
        t_i = _slot(cfg.b_i, t)
        t_j = _slot(cfg.b_j, t) if cfg.pred.arity == 2 else None
        total = total + w * prob_thresh(cfg, t_i, t_j, tol=tol)
    return total


# ----------------------------------------------------------------------
# first distribution: OR on the lower fold + negated unary
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class Theta1Params:
    gamma: Interval
    bg: Interval
    rho1: Interval
    u1: Interval
    t_gamma: Interval
    p1: Interval
    p2: Interval


def theta1_params(gamma, bg, tol=None) -> Theta1Params:
    gamma, bg = as_interval(gamma), as_interval(bg)
    if np.any(bg.hi >= 0.0) or np.any(bg.lo <= -1.0):
        raise DomainError("the shared bias must lie strictly in (-1, 0)")
    one = Interval(1.0)
    rho1 = -((one + bg) / (one - bg))
    u1 = (((one - rho1) / (one + rho1)).clip(lo=0.0)).sqrt()
    t_gamma = Phi_inv((gamma * (one + bg) * Interval(0.5)).clip(lo=0.0, hi=1.0))
    w = Interval(2.0) * Phi(u1 * t_gamma)
    p1 = one / (one + w)
    p2 = w / (one + w)
    return Theta1Params(gamma=gamma, bg=bg, rho1=rho1, u1=u1,
                        t_gamma=t_gamma, p1=p1, p2=p2)


def build_theta1(gamma_star=None, b_star=None, tol=None) -> WeightedDistribution:
    """The OR + negated-unary distribution at the given fixed-point inputs.

    The OR clause sits between two copies of the negative bias with the pair
    moment on the lower feasibility boundary; the unary weight is chosen so
    the shared threshold at the fixed point is stationary.
    """
    gamma = Interval(*GAMMA_STAR_WINDOW) if gamma_star is None \
        else as_interval(gamma_star)
    bg = Interval(THETA1_BIAS - BIAS_SLACK, THETA1_BIAS + BIAS_SLACK) \
        if b_star is None else as_interval(b_star)
    par = theta1_params(gamma, bg, tol=tol)
    b_ij = (Interval(-1.0) - Interval(2.0) * bg).clip(lo=-1.0, hi=1.0)
    entries = (
        (Configuration(PredicateType.OR, b_i=bg, b_j=bg, b_ij=b_ij), par.p1),
        (Configuration(PredicateType.UNARY_NEG, b_i=bg), par.p2),
    )
    return WeightedDistribution(entries)


def theta1_deriv_factor(par: Theta1Params, t) -> Interval:
    """d Prob / dt = phi(t) * (p2 - 2 p1 Phi(u1 t)); this is the second
    factor, strictly decreasing in t whenever p1 > 0 and u1 > 0."""
    t = as_interval(t)
    return par.p2 - Interval(2.0) * par.p1 * Phi(par.u1 * t)


# ----------------------------------------------------------------------
# second distribution: OR + implication mix over two bias classes
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class Theta2Params:
    b: Interval
    rho: Interval
    s: Interval          # sqrt(1 - rho^2)
    t_star: Interval     # Phi^{-1}((1-b)/2), the negative stationary threshold
    u: Interval          # 1/sqrt(b)
    r: Interval          # Phi(u t_star)
    rprime: Interval
    p: Interval          # p1 = p2 = p5 = p6
    p3: Interval
    p4: Interval


def theta2_params(b_star, tol=None) -> Theta2Params:
    b = as_interval(b_star)
    if np.any(b.lo <= 0.0) or np.any(b.hi >= 1.0):
        raise DomainError("the bias magnitude must lie strictly in (0, 1)")
    one = Interval(1.0)
    rho = -((one - b) / (one + b))
    s = (one - rho.sqr()).clip(lo=0.0).sqrt()
    t_star = Phi_inv(((one - b) * Interval(0.5)).clip(lo=0.0, hi=1.0))
    u = one / b.sqrt()
    r = Phi(u * t_star)
    diag_lo = biv_Phi(t_star, t_star, rho, tol=tol)
    diag_hi = biv_Phi(-t_star, -t_star, rho, tol=tol)
    rprime = one - (one - r) * (one - diag_lo) - r * (one - diag_hi)
    p = rprime / (one + Interval(2.0) * rprime)
    gap = one - Interval(2.0) * p
    p3 = r * gap - p
    p4 = (one - r) * gap - p
    for nm, w in (("p", p), ("p3", p3), ("p4", p4)):
        if np.any(w.lo < 0.0):
            raise NegativeWeight(
                f"weight {nm} = [{float(w.lo)}, {float(w.hi)}] is not"
                f" certified nonnegative at bias {b!r}")
    return Theta2Params(b=b, rho=rho, s=s, t_star=t_star, u=u, r=r,
                        rprime=rprime, p=p, p3=p3, p4=p4)


def build_theta2(b_star=None, tol=None) -> WeightedDistribution:
    """The six-entry OR/implication distribution at bias magnitude b.

    Entries (weights): OR(-b,-b) and OR(+b,+b) on the lower fold (p each);
    implications with the pair moment on the upper boundary, one per
    orientation (p3, p4); negated unaries on each bias (p each).
    """
    b = Interval(THETA2_BIAS - BIAS_SLACK, THETA2_BIAS + BIAS_SLACK) \
        if b_star is None else as_interval(b_star)
    par = theta2_params(b, tol=tol)
    one = Interval(1.0)
    two = Interval(2.0)
    lower = (-one + two * b).clip(lo=-1.0, hi=1.0)   # -1 + 2b
    upper = (one - two * b).clip(lo=-1.0, hi=1.0)    # 1 - 2b
    OR, IMP, NEG = (PredicateType.OR, PredicateType.IMP_OR,
                    PredicateType.UNARY_NEG)
    entries = (
        (Configuration(OR, b_i=-b, b_j=-b, b_ij=lower), par.p),
        (Configuration(OR, b_i=b, b_j=b, b_ij=lower), par.p),
        (Configuration(IMP, b_i=-b, b_j=b, b_ij=upper), par.p3),
        (Configuration(IMP, b_i=b, b_j=-b, b_ij=upper), par.p4),
        (Configuration(NEG, b_i=-b), par.p),
        (Configuration(NEG, b_i=b), par.p),
    )
    return WeightedDistribution(entries)


def _inners(par: Theta2Params, t1: Interval, t2: Interval):
    p34 = par.p3 + par.p4
    ell = (t2 + par.rho * t1) / par.s
    m = (t1 + par.rho * t2) / par.s
    inner1 = (-Interval(2.0) * par.p * Phi(par.u * t1) + p34 * Phi(ell)
              - par.p4 + par.p)
    inner2 = (-Interval(2.0) * par.p * Phi(par.u * t2) + p34 * Phi(m)
              - par.p3 + par.p)
    return p34, ell, m, inner1, inner2


def theta2_grad(par: Theta2Params, t1, t2):
    """Gradient of the acceptance probability in (t1, t2)."""
    t1, t2 = as_interval(t1), as_interval(t2)
    _, _, _, inner1, inner2 = _inners(par, t1, t2)
    return phi(t1) * inner1, phi(t2) * inner2


def theta2_hessian(par: Theta2Params, t1, t2):
    """Hessian (H11, H12, H22) of the acceptance probability."""
    t1, t2 = as_interval(t1), as_interval(t2)
    p34, ell, m, inner1, inner2 = _inners(par, t1, t2)
    two = Interval(2.0)
    rs = par.rho / par.s
    h11 = phi(t1) * (-(t1 * inner1) - two * par.p * par.u * phi(par.u * t1)
                     + p34 * rs * phi(ell))
    h22 = phi(t2) * (-(t2 * inner2) - two * par.p * par.u * phi(par.u * t2)
                     + p34 * rs * phi(m))
    h12 = p34 * phi(t1) * phi(ell) / par.s
    return h11, h12, h22


def theta2_excess(par: Theta2Params, t1, t2, tol=None) -> Interval:
    """Prob(t1, t2) - (1 - 2p), written so every term carries a factor that
    vanishes with the thresholds.

    Expanding the per-entry probabilities and cancelling the weight sum
    leaves
        -p F(t1,t1) - p F(t2,t2) + p3 G(t1,t2) + p4 G(t2,t1)
        - (p4-p) Phi(t1) - (p3-p) Phi(t2),
    with F the pair CDF at the distribution correlation and G the pair CDF
    at its negation.  Near the corners the naive difference of two O(1)
    quantities loses to the weight-enclosure width; this form does not.
    """
    t1, t2 = as_interval(t1), as_interval(t2)
    rho_neg = par.rho
    rho_pos = -par.rho
    return (-par.p * biv_Phi(t1, t1, rho_neg, tol=tol)
            - par.p * biv_Phi(t2, t2, rho_neg, tol=tol)
            + par.p3 * biv_Phi(t1, t2, rho_pos, tol=tol)
            + par.p4 * biv_Phi(t2, t1, rho_pos, tol=tol)
            - (par.p4 - par.p) * Phi(t1)
            - (par.p3 - par.p) * Phi(t2))


# ----------------------------------------------------------------------
# certificates
# ----------------------------------------------------------------------
@dataclass
class Premise:
    name: str
    passed: Optional[bool]   # None means skipped at caller request
    detail: str = ""

    @property
    def status(self) -> str:
        if self.passed is None:
            return "Skipped"
        return "Verified" if self.passed else "Failed"


@dataclass
class Certificate:
    name: str
    premises: list
    conclusion: str
    notes: list = field(default_factory=list)

    @property
    def status(self) -> str:
        if any(p.passed is False for p in self.premises):
            return "Failed"
        if any(p.passed is None for p in self.premises):
            return "Incomplete"
        return "Verified"

    def to_json_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "name": self.name,
            "status": self.status,
            "conclusion": self.conclusion,
            "premises": [{"name": p.name, "status": p.status,
                          "detail": p.detail} for p in self.premises],
            "notes": list(self.notes),
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_json_dict(), indent=indent)

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_json() + "\n")


def _fmt(iv: Interval) -> str:
    return f"[{float(iv.lo):.12g}, {float(iv.hi):.12g}]"


def _contains_zero(iv: Interval) -> bool:
    return bool(np.all(iv.lo <= 0.0) and np.all(iv.hi >= 0.0))


def _positivity_premise(dist: WeightedDistribution) -> Premise:
    """Every binary entry must be a positive configuration: the pair
    Fourier coefficient times the correlation is certified nonnegative
    (the step-1/step-2 reductions only cover positive configurations)."""
    results = []
    ok = True
    for cfg, _ in dist.entries:
        if cfg.pred.arity != 2:
            continue
        sign = positivity(cfg)
        ok = ok and sign is True
        results.append(f"{cfg.pred.value}({_fmt(cfg.b_i)}): "
                       f"{'+' if sign is True else '?' if sign is None else '-'}")
    return Premise("all 2-configurations are positive", bool(ok),
                   "; ".join(results))


def theta1_optimal_certificate(gamma=None, b=None, tol=None) -> Certificate:
    """Certify that the shared-threshold acceptance probability of the
    OR + negated-unary distribution has a unique interior maximum at the
    fixed-point threshold, with endpoint limits strictly below it, and that
    the max-to-value ratio is consistent with the fixed-point window.

    The derivative is phi(t) times a factor that premise 1 makes strictly
    decreasing, so the sign checks bracket the unique stationary threshold.
    """
    gamma = Interval(*GAMMA_STAR_WINDOW) if gamma is None else as_interval(gamma)
    bg = Interval(THETA1_BIAS - BIAS_SLACK, THETA1_BIAS + BIAS_SLACK) \
        if b is None else as_interval(b)
    par = theta1_params(gamma, bg, tol=tol)
    dist = build_theta1(gamma, bg, tol=tol)
    ts = par.t_gamma
    prem = []

    prem.append(Premise(
        "derivative factor strictly decreasing",
        bool(par.p1.lo > 0.0 and par.u1.lo > 0.0),
        f"p1 {_fmt(par.p1)}, slope scale {_fmt(par.u1)}"))

    res = theta1_deriv_factor(par, ts)
    prem.append(Premise(
        "stationarity residual at the fixed-point threshold contains zero",
        _contains_zero(res), f"factor(t*) {_fmt(res)}"))

    for delta in (0.1, 0.001):
        below = theta1_deriv_factor(par, ts - Interval(delta))
        above = theta1_deriv_factor(par, ts + Interval(delta))
        prem.append(Premise(
            f"derivative factor positive at t* - {delta}",
            bool(below.lo > 0.0), f"factor {_fmt(below)}"))
        prem.append(Premise(
            f"derivative factor negative at t* + {delta}",
            bool(above.hi < 0.0), f"factor {_fmt(above)}"))

    p_star = prob_theta(dist, ThresholdPoint(ts, ts), tol=tol)
    prem.append(Premise(
        "both infinite-threshold limits stay below the stationary value",
        bool(par.p1.hi < p_star.lo and par.p2.hi < p_star.lo),
        f"limits p1 {_fmt(par.p1)} / p2 {_fmt(par.p2)},"
        f" Prob(t*) {_fmt(p_star)}"))

    prem.append(_positivity_premise(dist))

    # the sign flips at +-0.001 bracket the true maximizer
    bracket = Interval(float(ts.lo) - 0.001, float(ts.hi) + 0.001)
    p_max = prob_theta(dist, ThresholdPoint(bracket, bracket), tol=tol)
    val = dist.value()
    ratio = Interval(float(p_star.lo), float(p_max.hi)) / val
    window = Interval(*GAMMA_STAR_WINDOW)
    prem.append(Premise(
        "max-to-value ratio overlaps the fixed-point window",
        bool(ratio.hi >= window.lo and ratio.lo <= window.hi),
        f"ratio {_fmt(ratio)}, window {_fmt(window)}"))

    conclusion = (f"max over shared thresholds of Prob lies in"
                  f" [{float(p_star.lo):.12g}, {float(p_max.hi):.12g}];"
                  f" value {_fmt(val)}; ratio {_fmt(ratio)}")
    return Certificate("theta1-optimal-threshold", prem, conclusion)


def theta2_boundary_certificate(b=None, strip: float = 1e-4,
                                band: float = 0.12, tol=None) -> Certificate:
    """Certify the corner-square analysis for the OR/implication distribution.

    The threshold-plane cover hands off exactly two regions: the aligned
    corner squares where both probability coordinates are within ``strip``
    of 0 or both within ``strip`` of 1.  Write T = Phi^{-1}(strip) (so the
    low square is t1, t2 <= T) and inner1/inner2 for the bracketed factors
    of the two partial derivatives of the acceptance probability,

        inner1 = -2p Phi(u t1) + (p3+p4) Phi((t2 + rho t1)/s) - p4 + p,
        inner2 = -2p Phi(u t2) + (p3+p4) Phi((t1 + rho t2)/s) - p3 + p.

    On the low square the diagonal-slope identity (1 + rho)/s = sqrt(b)
    (premise 4) gives, wherever t2 <= t1 <= T,

        (t2 + rho t1)/s <= t1 (1 + rho)/s = t1 sqrt(b) <= T sqrt(b),

    so the band term of inner1 is below Phi(T sqrt(b)) < band (premise 3)
    and premise 1 forces inner1 < 0: the probability grows as t1 falls to
    the diagonal.  On the diagonal both band terms obey the same bound, so
    premises 1 and 2 force both factors negative and the probability grows
    all the way into the corner limit, which equals the target 1 - 2p
    exactly by the weight-sum identity (premise 5).  The half t1 <= t2
    mirrors through inner2 and premise 2.  The high square maps onto the
    low one because negating both coordinates in reverse order fixes the
    acceptance probability (premise 6, the negation symmetry of the
    distribution).
    """
    bb = Interval(THETA2_BIAS - BIAS_SLACK, THETA2_BIAS + BIAS_SLACK) \
        if b is None else as_interval(b)
    par = theta2_params(bb, tol=tol)
    p34 = par.p3 + par.p4
    band_iv = Interval(band)
    t_strip = Phi_inv(Interval(strip))
    prem = []

    d1 = p34 * band_iv - par.p4 + par.p
    prem.append(Premise(
        "band bound forces the first slope factor negative",
        bool(d1.hi < 0.0), f"(p3+p4) {band} - p4 + p = {_fmt(d1)}"))

    d2 = p34 * band_iv - par.p3 + par.p
    prem.append(Premise(
        "band bound forces the second slope factor negative",
        bool(d2.hi < 0.0), f"(p3+p4) {band} - p3 + p = {_fmt(d2)}"))

    corner = Phi(t_strip * bb.sqrt())
    prem.append(Premise(
        "band term stays below the band on the corner square",
        bool(corner.hi < band),
        f"Phi(T sqrt(b)) = {_fmt(corner)} vs band {band}"))

    slope = (Interval(1.0) + par.rho) / par.s - bb.sqrt()
    prem.append(Premise(
        "diagonal-slope identity (1 + rho)/s = sqrt(b)",
        _contains_zero(slope), f"residual {_fmt(slope)}"))

    ident = (Interval(4.0) * par.p + par.p3 + par.p4) - Interval(1.0)
    prem.append(Premise(
        "aligned corner limits meet the target exactly",
        _contains_zero(ident), f"4p + p3 + p4 - 1 = {_fmt(ident)}"))

    dist = build_theta2(bb, tol=tol)
    pairs = ((4.0, 4.5), (3.8, 5.5), (0.3, -0.8))
    res = []
    sym_ok = True
    for a, c in pairs:
        r = (prob_theta(dist, ThresholdPoint(a, c), tol=tol)
             - prob_theta(dist, ThresholdPoint(-c, -a), tol=tol))
        sym_ok = sym_ok and _contains_zero(r)
        res.append(_fmt(r))
    prem.append(Premise(
        "negation symmetry Prob(a, b) = Prob(-b, -a)",
        sym_ok,
        "residuals at sample pairs: " + ", ".join(res)
        + "; the identity is algebraic (negating every variable fixes the"
          " distribution and reverses the threshold pair)"))

    conclusion = (f"on the two aligned corner squares of side {strip} the"
                  f" acceptance probability stays strictly below 1 - 2p,"
                  f" approaching it only in the corner limits")
    return Certificate("theta2-boundary", prem, conclusion)


def theta2_global_certificate(b=None, workers: int = 1,
                              skip_verify: bool = False, report=None,
                              tol=None, heuristic: str = "widest") -> Certificate:
    """Compose the full optimality certificate for the OR/implication
    distribution: the threshold-plane cover, stationarity, concavity at the
    stationary pair, the peak-value identity, the boundary certificate and
    the corner gap.  Raises PremiseFailed naming the first failing premise.

    ``report`` may supply an existing cover result for the threshold-plane
    lemma; ``skip_verify`` records that premise as skipped instead of
    rerunning the cover (the certificate is then Incomplete, not Verified).
    """
    bb = Interval(THETA2_BIAS - BIAS_SLACK, THETA2_BIAS + BIAS_SLACK) \
        if b is None else as_interval(b)
    par = theta2_params(bb, tol=tol)
    dist = build_theta2(bb, tol=tol)
    gap = Interval(1.0) - Interval(2.0) * par.p
    prem = []

    if report is not None:
        ok = (getattr(report, "lemma_id", None) == "horn-hard"
              and report.status is CheckStatus.VERIFIED)
        prem.append(Premise(
            "threshold-plane cover verified",
            bool(ok),
            f"supplied report: lemma {getattr(report, 'lemma_id', '?')},"
            f" status {getattr(report, 'status', '?')}"))
    elif skip_verify:
        prem.append(Premise(
            "threshold-plane cover verified", None,
            "skipped at caller request; run the horn-hard cover separately"))
    else:
        rep = run_lemma("horn-hard", workers=workers, heuristic=heuristic)
        prem.append(Premise(
            "threshold-plane cover verified",
            rep.status is CheckStatus.VERIFIED,
            f"{rep.boxes_examined} boxes, max depth {rep.max_depth},"
            f" {rep.wall_time_s:.1f} s"))

    g1, g2 = theta2_grad(par, par.t_star, -par.t_star)
    prem.append(Premise(
        "stationary pair: gradient contains (0, 0)",
        _contains_zero(g1) and _contains_zero(g2),
        f"grad ({_fmt(g1)}, {_fmt(g2)})"))

    h11, h12, h22 = theta2_hessian(par, par.t_star, -par.t_star)
    det = h11 * h22 - h12.sqr()
    prem.append(Premise(
        "stationary pair: Hessian negative definite",
        bool(h11.hi < 0.0 and det.lo > 0.0),
        f"H11 {_fmt(h11)}, H12 {_fmt(h12)}, H22 {_fmt(h22)},"
        f" det {_fmt(det)}"))

    peak = prob_theta(dist, ThresholdPoint(par.t_star, -par.t_star), tol=tol)
    peak_res = peak - gap
    prem.append(Premise(
        "peak value identity: Prob(t*, -t*) equals 1 - 2p",
        _contains_zero(peak_res),
        f"Prob {_fmt(peak)}, 1-2p {_fmt(gap)}, residual {_fmt(peak_res)}"))

    bc = theta2_boundary_certificate(bb, tol=tol)
    prem.append(Premise(
        "boundary certificate verified",
        bc.status == "Verified",
        f"{sum(1 for p in bc.premises if p.passed)} of"
        f" {len(bc.premises)} premises verified"))

    prem.append(Premise(
        "implication weight dominates the unary weight",
        bool((par.p3 - par.p).lo > 0.0),
        f"p3 - p = {_fmt(par.p3 - par.p)}; keeps the excess identity"
        f" decisive along the edge strips, where its limit is"
        f" -p Phi_rho(t,t) - (p3 - p) Phi(t)"))

    prem.append(Premise(
        "weights form a distribution",
        _contains_zero(dist.sum_residual()),
        f"sum residual {_fmt(dist.sum_residual())}"))

    prem.append(_positivity_premise(dist))

    val = dist.value()
    ratio = gap / val
    conclusion = (f"max over threshold pairs of Prob equals 1 - 2p ="
                  f" {_fmt(gap)}; value {_fmt(val)};"
                  f" ratio {_fmt(ratio)}")
    cert = Certificate("theta2-global-optimal", prem, conclusion,
                       notes=[f"boundary certificate status: {bc.status}"])
    for p in cert.premises:
        if p.passed is False:
            raise PremiseFailed(f"premise failed: {p.name} ({p.detail})")
    return cert
