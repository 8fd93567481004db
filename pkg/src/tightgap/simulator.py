"""Monte-Carlo cross-validation of the analytic rounding probabilities.

Each 2-configuration embeds as three unit vectors in 3 dimensions (a Gram
factorization — no SDP solver needed for a single constraint).  Rounding
draws one standard normal 3-vector r and sets a variable true iff its
projection v_perp . r clears the scheme threshold Phi^-1((1 + f(b))/2);
sample estimates are then compared against the certified enclosures
elsewhere in the package, with no shared code path to leak a common bug.

Sampling uses counter-based (Philox) substreams keyed by (seed, batch
index), so estimates are bit-for-bit reproducible and independent of how
batches are scheduled across workers.  A brute-force optimizer for tiny
explicit instances provides ground truth for demo instances.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy.special import ndtri

from .config import Configuration, PredicateType
from .hardness import ThresholdPoint, WeightedDistribution, _slot

__all__ = [
    "InfeasibleConfiguration",
    "TinyInstance",
    "TooManyVariables",
    "VectorTriple",
    "brute_force_opt",
    "embed",
    "mc_distribution",
    "mc_round",
    "parse_tiny_instance",
    "scheme_beta",
    "scheme_gamma",
]

_DOT_TOL = 1e-12
_UNIT_EPS = 1e-14
_BATCH = 1 << 16
_MIN_SAMPLES = 10_000


class InfeasibleConfiguration(Exception):
    """The moment matrix of the configuration is not PSD: no unit vectors
    can realize these inner products."""


class TooManyVariables(Exception):
    """Brute force enumerates 2^n assignments; n is capped at 20."""


# ----------------------------------------------------------------------
# embedding
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class VectorTriple:
    """Unit vectors realizing one configuration: v0 (the false vector)
    and the two variable vectors, with v0.vi = b_i, v0.vj = b_j,
    vi.vj = b_ij."""

    v0: np.ndarray
    vi: np.ndarray
    vj: np.ndarray

    def dots(self) -> Tuple[float, float, float]:
        return (float(self.v0 @ self.vi), float(self.v0 @ self.vj),
                float(self.vi @ self.vj))

    def perp(self, which: str) -> Optional[np.ndarray]:
        """(v - b v0)/sqrt(1 - b^2), or None at a unit bias (the
        projection degenerates; rounding uses an independent coordinate)."""
        v = self.vi if which == "i" else self.vj
        b = float(self.v0 @ v)
        s = 1.0 - b * b
        if s <= _UNIT_EPS:
            return None
        return (v - b * self.v0) / math.sqrt(s)


def _mid(iv) -> float:
    return float(np.asarray(iv.mid).reshape(()))


def embed(c: Configuration) -> VectorTriple:
    """Gram-factorize the 3x3 moment matrix of a configuration.

    Unary configurations embed with vj = v0 (the bias-1 collapse).  A unit
    bias pins the variable vector to +-v0 and demands b_ij = b_i b_j; the
    remaining vector then takes an independent coordinate.
    """
    bi = _mid(c.b_i)
    if c.pred.arity == 1:
        bj, bij = 1.0, bi
    else:
        bj, bij = _mid(c.b_j), _mid(c.b_ij)

    v0 = np.array([1.0, 0.0, 0.0])
    si = 1.0 - bi * bi
    if si <= _UNIT_EPS:
        if abs(bij - bi * bj) > 1e-9:
            raise InfeasibleConfiguration(
                f"unit bias b_i={bi} forces b_ij = b_i b_j, got {bij}")
        vi = np.array([bi, 0.0, 0.0])
        vj = np.array([bj, math.sqrt(max(1.0 - bj * bj, 0.0)), 0.0])
        return _checked(VectorTriple(v0, vi, vj), (bi, bj, bij))

    vi = np.array([bi, math.sqrt(si), 0.0])
    y = (bij - bi * bj) / math.sqrt(si)
    z2 = 1.0 - bj * bj - y * y
    if z2 < -_DOT_TOL:
        raise InfeasibleConfiguration(
            f"moment matrix is not PSD (z^2 = {z2:.3e} < 0) for"
            f" (b_i, b_j, b_ij) = ({bi}, {bj}, {bij})")
    vj = np.array([bj, y, math.sqrt(max(z2, 0.0))])
    return _checked(VectorTriple(v0, vi, vj), (bi, bj, bij))


def _checked(triple: VectorTriple, target) -> VectorTriple:
    got = triple.dots()
    err = max(abs(g - t) for g, t in zip(got, target))
    if err > 1e-9:  # pragma: no cover - arithmetic safety net
        raise InfeasibleConfiguration(
            f"embedding failed to reproduce the moments (error {err:.3e})")
    return triple


# ----------------------------------------------------------------------
# rounding schemes
# ----------------------------------------------------------------------
def scheme_beta(beta: float) -> Callable[[float], float]:
    """The linear threshold family f(b) = beta * b."""
    def f(b: float) -> float:
        return beta * b
    return f


def scheme_gamma(gamma: float) -> Callable[[float], float]:
    """The shifted family f(b) = gamma * (1 + b) - 1."""
    def f(b: float) -> float:
        return gamma * (1.0 + b) - 1.0
    return f


def _threshold_of(f_value: float) -> float:
    if not -1.0 - 1e-12 <= f_value <= 1.0 + 1e-12:
        raise ValueError(f"scheme value {f_value} falls outside [-1, 1]")
    q = 0.5 * (1.0 + min(max(f_value, -1.0), 1.0))
    if q <= 0.0:
        return -math.inf
    if q >= 1.0:
        return math.inf
    return float(ndtri(q))


def _satisfied(pred: PredicateType, xi: np.ndarray,
               xj: Optional[np.ndarray]) -> np.ndarray:
    if pred is PredicateType.OR:
        return xi | xj
    if pred is PredicateType.IMP_OR:
        return ~xi | xj
    if pred is PredicateType.NAND:
        return ~(xi & xj)
    if pred is PredicateType.UNARY_POS:
        return xi
    return ~xi


def _count_batch(triple: VectorTriple, pred: PredicateType, t_i: float,
                 t_j: Optional[float], seed: int, sub: int, m: int) -> int:
    gen = np.random.Generator(np.random.Philox(key=[seed, sub]))
    r = gen.standard_normal((m, 3))
    pi = triple.perp("i")
    gi = r @ pi if pi is not None else gen.standard_normal(m)
    xi = gi >= t_i
    xj = None
    if pred.arity == 2:
        pj = triple.perp("j")
        gj = r @ pj if pj is not None else gen.standard_normal(m)
        xj = gj >= t_j
    return int(np.sum(_satisfied(pred, xi, xj)))


def _mc_thresholds(c: Configuration, t_i: float, t_j: Optional[float],
                   samples: int, seed: int, stream: int = 0,
                   workers: Optional[int] = None) -> Tuple[float, float]:
    triple = embed(c)
    seed = int(seed) % (1 << 64)
    batches = []
    done = 0
    k = 0
    while done < samples:
        m = min(_BATCH, samples - done)
        batches.append(((int(stream) << 32) | k, m))
        done += m
        k += 1

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=int(workers)) as pool:
            counts = list(pool.map(
                lambda sm: _count_batch(triple, c.pred, t_i, t_j,
                                        seed, sm[0], sm[1]), batches))
    else:
        counts = [_count_batch(triple, c.pred, t_i, t_j, seed, sub, m)
                  for sub, m in batches]
    est = sum(counts) / samples
    stderr = math.sqrt(max(est * (1.0 - est), 0.0) / samples)
    return est, stderr


def mc_round(c: Configuration, scheme: Callable[[float], float],
             samples: int, seed: int,
             workers: Optional[int] = None) -> Tuple[float, float]:
    """Estimate the satisfaction probability of one configuration under
    threshold rounding with the given scheme (a map b -> f(b) in [-1, 1]).

    Returns (estimate, stderr); deterministic given the seed, independent
    of worker count.
    """
    if samples < _MIN_SAMPLES:
        raise ValueError(f"samples must be >= {_MIN_SAMPLES}")
    t_i = _threshold_of(float(scheme(_mid(c.b_i))))
    t_j = _threshold_of(float(scheme(_mid(c.b_j)))) \
        if c.pred.arity == 2 else None
    return _mc_thresholds(c, t_i, t_j, samples, seed, workers=workers)


def mc_distribution(dist: WeightedDistribution, t: ThresholdPoint,
                    samples: int, seed: int,
                    workers: Optional[int] = None) -> Tuple[float, float]:
    """Weighted satisfaction estimate of a distribution at a threshold
    pair (negative biases round at t1, positive at t2, as in the analytic
    prob_theta).  Entries draw from disjoint substreams; the standard
    error propagates through the weights."""
    if samples < _MIN_SAMPLES:
        raise ValueError(f"samples must be >= {_MIN_SAMPLES}")
    est = 0.0
    var = 0.0
    for idx, (cfg, w) in enumerate(dist.entries):
        t_i = float(np.asarray(_slot(cfg.b_i, t).mid).reshape(()))
        t_j = float(np.asarray(_slot(cfg.b_j, t).mid).reshape(())) \
            if cfg.pred.arity == 2 else None
        e, se = _mc_thresholds(cfg, t_i, t_j, samples, seed,
                               stream=idx, workers=workers)
        wm = _mid(w)
        est += wm * e
        var += (wm * se) ** 2
    return est, math.sqrt(var)


# ----------------------------------------------------------------------
# tiny explicit instances
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class TinyInstance:
    """An explicit weighted instance small enough to solve exactly."""

    n: int
    clauses: Tuple[Tuple[PredicateType, Tuple[int, ...], float], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("instance needs at least one variable")
        if self.n > 20:
            raise TooManyVariables(f"n = {self.n} exceeds the cap of 20")
        total = 0.0
        for pred, idxs, w in self.clauses:
            if len(idxs) != pred.arity:
                raise ValueError(f"{pred.value} clause takes {pred.arity}"
                                 f" variable(s), got {idxs}")
            if any(i < 0 or i >= self.n for i in idxs):
                raise ValueError(f"variable index out of range in {idxs}")
            if w < 0.0:
                raise ValueError("clause weights must be nonnegative")
            total += w
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"clause weights sum to {total}, expected 1")

    def evaluate(self, assignment: Sequence[bool]) -> float:
        """Total weight of clauses satisfied by the boolean assignment."""
        if len(assignment) != self.n:
            raise ValueError("assignment length must equal n")
        total = 0.0
        for pred, idxs, w in self.clauses:
            xi = bool(assignment[idxs[0]])
            xj = bool(assignment[idxs[1]]) if pred.arity == 2 else None
            if bool(_satisfied(pred, np.asarray(xi), None if xj is None
                               else np.asarray(xj))):
                total += w
        return total


def brute_force_opt(inst: TinyInstance) -> Tuple[float, Tuple[bool, ...]]:
    """Exact optimum over all 2^n assignments.

    Ties resolve to the lexicographically smallest assignment (False
    before True, first variable most significant).
    """
    n = inst.n
    if n > 20:  # unreachable through the validated type, kept as contract
        raise TooManyVariables(f"n = {n} exceeds the cap of 20")
    size = 1 << n
    idx = np.arange(size, dtype=np.uint32)
    # bit n-1-i of the index is x_i, so index order is lexicographic order
    cols = [((idx >> (n - 1 - i)) & 1).astype(bool) for i in range(n)]
    total = np.zeros(size)
    for pred, idxs, w in inst.clauses:
        xi = cols[idxs[0]]
        xj = cols[idxs[1]] if pred.arity == 2 else None
        total += w * _satisfied(pred, xi, xj)
    best = int(np.argmax(total))      # first occurrence = lex smallest
    assignment = tuple(bool(cols[i][best]) for i in range(n))
    return float(total[best]), assignment


def parse_tiny_instance(text: str) -> TinyInstance:
    """Parse the DIMACS-like weighted format: one clause per line,
    ``w <weight> <lit> [<lit>]``, literals as 1-based integers with a
    minus sign for negation; ``c``/``#`` lines are comments.

    Sign patterns map onto predicate types: (+,+) -> OR, (-,+)/(+,-) ->
    IMP_OR (negated literal first), (-,-) -> NAND, bare +/- -> POS/NEG.
    """
    clauses = []
    max_var = 0
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(("c ", "c\t", "#")) or line == "c":
            continue
        parts = line.split()
        if parts[0] != "w" or len(parts) not in (3, 4):
            raise ValueError(f"line {ln}: expected 'w <weight> <lit>"
                             f" [<lit>]', got {raw!r}")
        try:
            weight = float(parts[1])
            lits = [int(p) for p in parts[2:]]
        except ValueError as exc:
            raise ValueError(f"line {ln}: {exc}") from None
        if any(l == 0 for l in lits):
            raise ValueError(f"line {ln}: literal 0 is not allowed")
        max_var = max(max_var, *(abs(l) for l in lits))
        if len(lits) == 1:
            lit = lits[0]
            pred = PredicateType.UNARY_POS if lit > 0 \
                else PredicateType.UNARY_NEG
            clauses.append((pred, (abs(lit) - 1,), weight))
        else:
            a, b = lits
            if a > 0 and b > 0:
                clauses.append((PredicateType.OR,
                                (a - 1, b - 1), weight))
            elif a < 0 and b < 0:
                clauses.append((PredicateType.NAND,
                                (-a - 1, -b - 1), weight))
            elif a < 0:
                clauses.append((PredicateType.IMP_OR,
                                (-a - 1, b - 1), weight))
            else:
                clauses.append((PredicateType.IMP_OR,
                                (-b - 1, a - 1), weight))
    if not clauses:
        raise ValueError("no clauses found")
    return TinyInstance(n=max_var, clauses=tuple(clauses))
