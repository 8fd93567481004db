"""Certified branch-and-bound cover verification.

The engine proves statements of the form "every point of a box satisfies at
least one criterion" by adaptive bisection: a criterion that certifies on a
sub-box removes it from the frontier, and undecided sub-boxes are split until
everything is resolved or a depth limit is hit.  Criteria must be *sound*
(a True answer on a box means the property holds at every point of the box)
and *monotone* (True on a box stays True on any sub-box); interval
evaluations of strict inequalities have both properties for free.

Strictness is taken seriously: an inequality is only certified when the
interval bound clears the threshold strictly, so ties are never certified.

The seven lemma tasks at the bottom package the specific covers needed for
the rounding-threshold analysis: two steps each for the two-clause problem,
the OR-with-negations variant and the implication variant, plus the
threshold-plane check for the implication hard distribution.
"""

from __future__ import annotations

import json
import time
from collections import deque
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Mapping, Optional, Sequence

import numpy as np

from . import config as _cfg
from .gauss import Phi, Phi_inv
from .interval import Box, Interval

SCHEMA_VERSION = "1"
PRECISION_BITS = 53

_INF = float("inf")


class CheckStatus(str, Enum):
    VERIFIED = "Verified"
    DEPTH_EXCEEDED = "DepthExceeded"
    ABORTED = "Aborted"


@dataclass(frozen=True)
class Criterion:
    """A named sound-and-monotone box predicate.

    ``predicate(cols, tol)`` receives a mapping from dimension name to an
    Interval holding one entry per box, and returns a boolean array marking
    the boxes on which the criterion certifies.  ``tol`` is the quadrature
    tolerance to pass to bivariate-normal evaluations (None for default).
    """

    id: str
    predicate: Callable[[Mapping[str, Interval], Optional[float]], np.ndarray]


@dataclass
class CheckReport:
    """Outcome of a cover run, serializable to a stable JSON shape."""

    lemma_id: str
    status: CheckStatus
    boxes_examined: int
    max_depth: int
    wall_time_s: float
    heuristic: str
    criterion_counts: dict
    witness: Optional[dict] = None
    notes: list = field(default_factory=list)
    precision_bits: int = PRECISION_BITS
    schema_version: str = SCHEMA_VERSION

    def to_json_dict(self) -> dict:
        out = {
            "schema_version": self.schema_version,
            "lemma_id": self.lemma_id,
            "status": self.status.value,
            "boxes_examined": self.boxes_examined,
            "max_depth": self.max_depth,
            "wall_time_s": self.wall_time_s,
            "heuristic": self.heuristic,
            "precision_bits": self.precision_bits,
            "criterion_counts": dict(self.criterion_counts),
            "notes": list(self.notes),
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_json_dict(), indent=indent)

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_json() + "\n")


def _excludes_zero(iv: Interval) -> np.ndarray:
    return (iv.lo > 0.0) | (iv.hi < 0.0)


def _rows(iv: Interval, idx) -> Interval:
    """Row-subset of an array-valued interval."""
    return Interval._raw(np.asarray(iv.lo)[idx].copy(),
                         np.asarray(iv.hi)[idx].copy())


# ----------------------------------------------------------------------
# engine
# ----------------------------------------------------------------------
def _split_points(lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Vectorized midpoints matching interval.split's choice exactly."""
    with np.errstate(invalid="ignore"):
        m = np.clip(lo + 0.5 * (hi - lo), lo, hi)
    bad = ~np.isfinite(m)
    if bad.any():
        m = np.where(bad & (lo == -_INF) & (hi == _INF), 0.0, m)
        m = np.where(bad & (lo == -_INF) & (hi != _INF),
                     np.minimum(0.0, hi) - 1.0, m)
        m = np.where(bad & (lo != -_INF) & (hi == _INF),
                     np.maximum(0.0, lo) + 1.0, m)
    stuck = (m <= lo) | (m >= hi)
    if stuck.any():
        m = np.where(stuck, np.nextafter(lo, hi), m)
    return m


def _witness_key(depth: int, lo: np.ndarray, hi: np.ndarray):
    return (-int(depth), tuple(float(v) for v in lo), tuple(float(v) for v in hi))


def _process_chunk(pack, lo, hi, depth, quad_tol, depth_limit, heuristic):
    """Evaluate criteria on one chunk of boxes, split the survivors.

    Returns (criterion counts, boxes in chunk, deepest depth seen,
    children (lo, hi, depth) or None, number of unresolved boxes, witness
    candidate for the canonically-first unresolved box or None).
    """
    names = pack.dim_names
    n = lo.shape[0]
    undecided = np.ones(n, dtype=bool)
    counts = {}
    for crit_id, fn in pack.criteria():
        if undecided.any():
            idx = np.flatnonzero(undecided)
            cols = {nm: Interval._raw(lo[idx, k].copy(), hi[idx, k].copy())
                    for k, nm in enumerate(names)}
            cert = np.asarray(fn(cols, quad_tol), dtype=bool).reshape(-1)
            counts[crit_id] = int(cert.sum())
            undecided[idx[cert]] = False
        else:
            counts[crit_id] = 0

    unresolved = undecided & (depth >= depth_limit)
    to_split = undecided & ~unresolved
    children = None
    if to_split.any():
        idx = np.flatnonzero(to_split)
        slo, shi, sd = lo[idx], hi[idx], depth[idx]
        w = shi - slo
        with np.errstate(invalid="ignore"):
            if heuristic == "widest":
                k = np.argmax(np.where(np.isnan(w), _INF, w), axis=1)
            elif heuristic == "shortest_nonzero":
                k = np.argmin(np.where(w > 0.0, w, _INF), axis=1)
            else:
                raise ValueError(f"unknown split heuristic {heuristic!r}")
        rows = np.arange(len(idx))
        dlo, dhi = slo[rows, k], shi[rows, k]
        m = _split_points(dlo, dhi)
        ok = (m > dlo) & (m < dhi)
        if not ok.all():
            # width at most one ulp in every useful dimension: cannot refine
            unresolved[idx[~ok]] = True
            idx, rows = idx[ok], np.arange(int(ok.sum()))
            slo, shi, sd, k, m = slo[ok], shi[ok], sd[ok], k[ok], m[ok]
        if len(idx):
            left_hi = shi.copy()
            left_hi[rows, k] = m
            right_lo = slo.copy()
            right_lo[rows, k] = m
            children = (np.concatenate([slo, right_lo]),
                        np.concatenate([left_hi, shi]),
                        np.concatenate([sd + 1, sd + 1]))

    n_unresolved = int(unresolved.sum())
    witness = None
    if n_unresolved:
        uidx = np.flatnonzero(unresolved)
        best = min(range(len(uidx)),
                   key=lambda i: _witness_key(depth[uidx[i]], lo[uidx[i]], hi[uidx[i]]))
        j = uidx[best]
        witness = (_witness_key(depth[j], lo[j], hi[j]),
                   {"depth": int(depth[j]),
                    "box": {nm: [float(lo[j, kk]), float(hi[j, kk])]
                            for kk, nm in enumerate(names)}})
    return counts, n, int(depth.max()), children, n_unresolved, witness


@dataclass(frozen=True)
class _CriteriaPack:
    dim_names: tuple
    crits: tuple

    def criteria(self):
        return [(c.id, c.predicate) for c in self.crits]


def _engine(pack, root_lo, root_hi, *, lemma_id, heuristic, depth_limit,
            workers, quad_tol, chunk_size, time_limit_s, notes):
    t0 = time.perf_counter()
    # report counts in canonical id order even when the evaluation order
    # differs (lemma tasks put cheap criteria first)
    crit_ids = sorted(cid for cid, _ in pack.criteria())
    agg = {cid: 0 for cid in crit_ids}
    boxes = 0
    maxd = 0
    unresolved_total = 0
    best_witness = None
    aborted = False
    notes = list(notes)

    queue = deque()
    queue.append((root_lo[None, :].astype(np.float64),
                  root_hi[None, :].astype(np.float64),
                  np.zeros(1, dtype=np.int64)))

    def merge(result):
        nonlocal boxes, maxd, unresolved_total, best_witness
        counts, n, d, children, n_unres, witness = result
        for cid, c in counts.items():
            agg[cid] += c
        boxes += n
        maxd = max(maxd, d)
        unresolved_total += n_unres
        if witness is not None:
            if best_witness is None or witness[0] < best_witness[0]:
                best_witness = witness
        if children is not None:
            clo, chi, cd = children
            for start in range(0, clo.shape[0], chunk_size):
                queue.append((clo[start:start + chunk_size],
                              chi[start:start + chunk_size],
                              cd[start:start + chunk_size]))

    def out_of_time():
        return time_limit_s is not None and time.perf_counter() - t0 > time_limit_s

    if workers <= 1:
        while queue:
            if out_of_time():
                aborted = True
                break
            merge(_process_chunk(pack, *queue.popleft(),
                                 quad_tol, depth_limit, heuristic))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            pending = set()
            while queue or pending:
                if out_of_time():
                    aborted = True
                    for fut in pending:
                        fut.cancel()
                    break
                while queue and len(pending) < 2 * workers:
                    lo, hi, depth = queue.popleft()
                    pending.add(pool.submit(_process_chunk, pack, lo, hi,
                                            depth, quad_tol, depth_limit,
                                            heuristic))
                done, pending = wait(pending, return_when=FIRST_COMPLETED)
                for fut in done:
                    merge(fut.result())

    if aborted:
        status = CheckStatus.ABORTED
        notes.append(f"aborted: time limit {time_limit_s} s exceeded"
                     f" with {len(queue)} chunk(s) still queued")
        if best_witness is None and queue:
            lo, hi, depth = queue[0]
            best_witness = (None,
                            {"depth": int(depth[0]),
                             "box": {nm: [float(lo[0, k]), float(hi[0, k])]
                                     for k, nm in enumerate(pack.dim_names)}})
    elif unresolved_total:
        status = CheckStatus.DEPTH_EXCEEDED
        notes.append(f"{unresolved_total} box(es) left unresolved at the"
                     f" depth limit {depth_limit}")
    else:
        status = CheckStatus.VERIFIED

    return CheckReport(
        lemma_id=lemma_id,
        status=status,
        boxes_examined=boxes,
        max_depth=maxd,
        wall_time_s=time.perf_counter() - t0,
        heuristic=heuristic,
        criterion_counts=agg,
        witness=best_witness[1] if best_witness is not None else None,
        notes=notes,
    )


def check(root: Box, criteria: Sequence[Criterion], heuristic: str = "widest",
          depth_limit: int = 60, workers: int = 1, quad_tol=None,
          chunk_size: int = 32768, time_limit_s=None, lemma_id: str = "adhoc",
          notes: Sequence[str] = ()) -> CheckReport:
    """Run the cover engine on ``root`` with the given criteria.

    Every box is charged to the first criterion in order that certifies it.
    The explored tree, and hence every count in the report, is a function of
    the root and the criteria alone: worker scheduling cannot change it.
    """
    pack = _CriteriaPack(tuple(root.names), tuple(criteria))
    return _engine(pack, np.asarray(root.ivals.lo, dtype=np.float64),
                   np.asarray(root.ivals.hi, dtype=np.float64),
                   lemma_id=lemma_id, heuristic=heuristic,
                   depth_limit=depth_limit, workers=workers, quad_tol=quad_tol,
                   chunk_size=chunk_size, time_limit_s=time_limit_s,
                   notes=notes)


# ----------------------------------------------------------------------
# lemma tasks
# ----------------------------------------------------------------------
def _b12_of(b1: Interval, b2: Interval, rho: Interval) -> Interval:
    root = ((Interval(1.0) - b1.sqr()) * (Interval(1.0) - b2.sqr())).clip(lo=0.0).sqrt()
    return b1 * b2 + rho * root


class LemmaTask:
    """Base for the packaged lemma covers (picklable; criteria are bound
    methods recreated on the worker side, so only plain state is shipped)."""

    lemma_id: str = ""
    dim_names: tuple = ()
    root: tuple = ()
    default_quad_tol: float = 1e-9
    default_depth_limit: int = 60

    def root_box(self) -> Box:
        lo = np.array([a for a, _ in self.root], dtype=np.float64)
        hi = np.array([b for _, b in self.root], dtype=np.float64)
        return Box(self.dim_names, Interval(lo, hi))

    def criteria(self):
        raise NotImplementedError

    def side_checks(self, quad_tol):
        """Once-per-run scalar checks that complete the lemma (default none).

        Returns a list of (name, passed, detail) tuples."""
        return []

    def notes(self):
        return []


class _SurfaceStep1(LemmaTask):
    """Step 1 pattern: full (b_1, b_2, rho) cube.

    C1: the induced b_12 lies strictly below the feasibility floor
        -1 + |b_1 + b_2| (the box holds no realizable configuration).
    C2: the criterion value clears the margin on the whole parameter window.
    C3: b_12 stays strictly below the feasibility ceiling 1 - |b_1 - b_2|
        and the surface gradient is certified nonzero (no stationary point).
    """

    dim_names = ("b1", "b2", "rho")
    root = ((-1.0, 1.0), (-1.0, 1.0), (-1.0, 1.0))
    fn = "f_beta"

    def __init__(self, param_lo: float, param_hi: float, margin: float):
        self.param = Interval(param_lo, param_hi)
        self.margin = float(margin)

    def crit_below_floor(self, cols, tol):
        b1, b2, rho = cols["b1"], cols["b2"], cols["rho"]
        floor = Interval(-1.0) + abs(b1 + b2)
        return _b12_of(b1, b2, rho).hi < floor.lo

    def crit_margin(self, cols, tol):
        b1, b2, rho = cols["b1"], cols["b2"], cols["rho"]
        loose = 1e-5 if tol is None or tol < 1e-5 else tol
        val = _cfg.f_param_rho(self.fn, b1, b2, rho, self.param, tol=loose)
        ok = np.asarray(val.lo > self.margin, dtype=bool).reshape(-1)
        if loose != tol:
            need = np.flatnonzero(~ok)
            if need.size:
                v2 = _cfg.f_param_rho(self.fn, _rows(b1, need),
                                      _rows(b2, need), _rows(rho, need),
                                      self.param, tol=tol)
                ok[need[np.asarray(v2.lo > self.margin,
                                   dtype=bool).reshape(-1)]] = True
        return ok

    def crit_no_stationary(self, cols, tol):
        b1, b2, rho = cols["b1"], cols["b2"], cols["rho"]
        ceil = Interval(1.0) - abs(b1 - b2)
        inside = _b12_of(b1, b2, rho).hi < ceil.lo
        g1, g2, g3 = _cfg.grad_param_rho(self.fn, b1, b2, rho, self.param,
                                         tol=tol, total=True)
        return inside & (_excludes_zero(g1) | _excludes_zero(g2)
                         | _excludes_zero(g3))

    def criteria(self):
        # C2 needs the bivariate quadrature, so it is evaluated last; ids and
        # the certified counts keep their canonical meaning regardless.
        return [("C1", self.crit_below_floor),
                ("C3", self.crit_no_stationary),
                ("C2", self.crit_margin)]


class _FoldStep2(LemmaTask):
    """Step 2 pattern: the 2-D fold where b_12 sits on the feasibility floor.

    ``fold_sign`` +1 means the floor is -1 + (b_1 + b_2) (realizable only for
    b_1 + b_2 >= 0); -1 means -1 - (b_1 + b_2) (realizable for <= 0).

    C1: criterion value clears the margin on the whole parameter window.
    C2: the box lies strictly on the unrealizable side of the fold.
    C3: the box lies strictly on the realizable side and the in-fold
        gradient is certified nonzero.
    C4: the box sits inside the epsilon-box around the critical bias, whose
        behaviour the side checks pin down.

    (The implication-variant subclass renumbers C2/C3; see its criteria().)
    """

    dim_names = ("b1", "b2")
    root = ((-1.0, 1.0), (-1.0, 1.0))
    eps = 1e-6

    def __init__(self, param_lo: float, param_hi: float, margin: float,
                 b0: float):
        self.param = Interval(param_lo, param_hi)
        self.param_lo = float(param_lo)
        self.param_hi = float(param_hi)
        self.margin = float(margin)
        self.b0 = float(b0)

    # subclasses set these
    fold_sign = +1

    def _fold_val(self, b1, b2, param, tol):
        raise NotImplementedError

    def _fold_grad(self, b1, b2, param):
        raise NotImplementedError

    def crit_margin(self, cols, tol):
        b1, b2 = cols["b1"], cols["b2"]
        loose = 1e-5 if tol is None or tol < 1e-5 else tol
        val = self._fold_val(b1, b2, self.param, loose)
        ok = np.asarray(val.lo > self.margin, dtype=bool).reshape(-1)
        if loose != tol:
            need = np.flatnonzero(~ok)
            if need.size:
                v2 = self._fold_val(_rows(b1, need), _rows(b2, need),
                                    self.param, tol)
                ok[need[np.asarray(v2.lo > self.margin,
                                   dtype=bool).reshape(-1)]] = True
        return ok

    def crit_unrealizable(self, cols, tol):
        s = cols["b1"] + cols["b2"]
        return s.hi < 0.0 if self.fold_sign > 0 else s.lo > 0.0

    def crit_no_stationary(self, cols, tol):
        s = cols["b1"] + cols["b2"]
        on_side = s.lo > 0.0 if self.fold_sign > 0 else s.hi < 0.0
        on_side = np.asarray(on_side, dtype=bool).reshape(-1)
        if not on_side.any():
            return on_side
        b1, b2 = cols["b1"], cols["b2"]
        g1, g2 = self._fold_grad(b1, b2, self.param)
        ok = np.asarray(_excludes_zero(g1) | _excludes_zero(g2),
                        dtype=bool).reshape(-1)
        # Near the fold minimum the whole-window gradient hull is wider than
        # the true range (the window enters the expression several times and
        # the evaluations decorrelate), which would leave a ring of boxes
        # around the eps-box that nothing certifies.  The for-all-parameters
        # claim splits over any partition of the window, so retry the
        # failures on successively finer partitions; each sub-window hull is
        # near-degenerate in the parameter and the ring closes.
        if self.param_lo < self.param_hi:
            for K in (4, 16, 64):
                need = np.flatnonzero(on_side & ~ok)
                if not need.size:
                    break
                sb1, sb2 = _rows(b1, need), _rows(b2, need)
                edges = np.linspace(self.param_lo, self.param_hi, K + 1)
                good = np.ones(need.size, dtype=bool)
                for i in range(K):
                    if not good.any():
                        break
                    h1, h2 = self._fold_grad(sb1, sb2,
                                             Interval(edges[i], edges[i + 1]))
                    good &= np.asarray(_excludes_zero(h1) | _excludes_zero(h2),
                                       dtype=bool).reshape(-1)
                ok[need[good]] = True
        return on_side & ok

    def crit_eps_box(self, cols, tol):
        lo, hi = self.b0 - self.eps, self.b0 + self.eps
        b1, b2 = cols["b1"], cols["b2"]
        return ((b1.lo >= lo) & (b1.hi <= hi)
                & (b2.lo >= lo) & (b2.hi <= hi))

    def _positive_on_eps_box(self, endpoint: float, tol: float):
        """Certify fold value > 0 on the eps-box at one window endpoint.

        A single whole-box evaluation is hopeless here (the dependency slop
        is an order above the true margin), so this runs a small cover.
        Returns (passed, detail).
        """
        lo, hi = self.b0 - self.eps, self.b0 + self.eps
        root = Box(("b1", "b2"),
                   Interval(np.array([lo, lo]), np.array([hi, hi])))
        param = Interval(endpoint)

        def positive(cols, _tol):
            val = self._fold_val(cols["b1"], cols["b2"], param, tol)
            return np.asarray(val.lo > 0.0, dtype=bool).reshape(-1)

        rep = check(root, [Criterion("positive", positive)], depth_limit=24,
                    lemma_id="side-check")
        return (rep.status is CheckStatus.VERIFIED,
                f"cover of the eps-box with {rep.boxes_examined} boxes,"
                f" status {rep.status.value}")

    def criteria(self):
        # cheap tests first (C1 needs the bivariate quadrature); ids keep the
        # canonical numbering: C2 the bare sign test on the unrealizable
        # side, C3 the realizable side with a certified-nonzero gradient
        return [("C4", self.crit_eps_box),
                ("C2", self.crit_unrealizable),
                ("C3", self.crit_no_stationary),
                ("C1", self.crit_margin)]


class Lemma2SatStep1(_SurfaceStep1):
    lemma_id = "2sat-step1"
    fn = "f_beta"

    def __init__(self):
        super().__init__(0.94, 0.9405, 0.001)

    def notes(self):
        return ["window endpoints are the nearest binary doubles to the"
                " decimals 0.94 and 0.9405"]


class Lemma2SatStep2(_FoldStep2):
    lemma_id = "2sat-step2"
    fold_sign = +1

    def __init__(self):
        super().__init__(0.9401653, 0.9401658, 0.001, 0.16247834)

    def _fold_val(self, b1, b2, param, tol):
        return _cfg.f_fold(b1, b2, param, tol=tol)

    def _fold_grad(self, b1, b2, param):
        return _cfg.grad_fold_f_beta(b1, b2, param, total=True)

    def side_checks(self, quad_tol):
        pt = Interval(self.b0)
        hi = _cfg.f_fold(pt, pt, Interval(self.param_hi), tol=1e-12)
        ok2, detail2 = self._positive_on_eps_box(self.param_lo, 1e-12)
        return [
            ("fold value negative at the critical bias for the upper window"
             " endpoint", bool(hi.hi < 0.0),
             f"f_{self.param_hi}(b0, b0) in [{float(hi.lo):.6e},"
             f" {float(hi.hi):.6e}]"),
            ("fold value positive on the eps-box at the lower window"
             " endpoint", ok2, f"f_{self.param_lo} > 0: {detail2}"),
        ]

    def notes(self):
        return ["upper window endpoint literal 9401658 read as the decimal"
                " 0.9401658"]


class LemmaOrnotStep1(_SurfaceStep1):
    lemma_id = "ornot-step1"
    fn = "h_gamma"

    def __init__(self):
        super().__init__(0.95, 0.96, 0.001)


class LemmaOrnotStep2(_FoldStep2):
    """Fold step for the negation variant.  Here the realizable side is
    b_1 + b_2 <= 0 and the task numbers its criteria the other way round:
    C2 is the realizable-side test carrying the gradient conjunct, C3 the
    bare sign test on the unrealizable side."""

    lemma_id = "ornot-step2"
    fold_sign = -1

    def __init__(self):
        super().__init__(0.9539798, 0.95398, 0.001, -0.1824167935)

    def _fold_val(self, b1, b2, param, tol):
        return _cfg.h_fold(b1, b2, param, tol=tol)

    def _fold_grad(self, b1, b2, param):
        return _cfg.grad_fold_h_gamma(b1, b2, param, total=True)

    def criteria(self):
        return [("C4", self.crit_eps_box),
                ("C3", self.crit_unrealizable),
                ("C2", self.crit_no_stationary),
                ("C1", self.crit_margin)]

    def side_checks(self, quad_tol):
        pt = Interval(self.b0)
        hi = _cfg.h_fold(pt, pt, Interval(self.param_hi), tol=1e-12)
        ok2, detail2 = self._positive_on_eps_box(self.param_lo, 1e-12)
        return [
            ("fold value negative at the critical bias for the upper window"
             " endpoint", bool(hi.hi < 0.0),
             f"h_{self.param_hi}(b0, b0) in [{float(hi.lo):.6e},"
             f" {float(hi.hi):.6e}]"),
            ("fold value positive on the eps-box at the lower window"
             " endpoint", ok2, f"h_{self.param_lo} > 0: {detail2}"),
        ]


def _horn_ceiling() -> float:
    # strict upper float bound for 1 - 1/0.95
    r = Interval(1.0) - Interval(1.0) / Interval(0.95)
    return float(r.hi)


def _horn_target_lo() -> float:
    # strict lower float bound for 1 - 1/0.9462
    r = Interval(1.0) - Interval(1.0) / Interval(0.9462)
    return float(r.lo)


class LemmaHornStep1(_SurfaceStep1):
    lemma_id = "horn-step1"
    fn = "f_beta"

    def __init__(self):
        super().__init__(1.0, 1.0, _horn_ceiling())

    def notes(self):
        return [f"margin is a strict float upper bound for 1 - 1/0.95"
                f" ({self.margin!r})"]


class LemmaHornStep2(_FoldStep2):
    lemma_id = "horn-step2"
    fold_sign = +1

    def __init__(self):
        super().__init__(1.0, 1.0, _horn_ceiling(), 0.1489442419)

    def _fold_val(self, b1, b2, param, tol):
        return _cfg.f_fold(b1, b2, param, tol=tol)

    def _fold_grad(self, b1, b2, param):
        return _cfg.grad_fold_f_beta(b1, b2, param, total=True)

    def side_checks(self, quad_tol):
        eb = Interval(self.b0 - self.eps, self.b0 + self.eps)
        val = _cfg.f_fold(eb, eb, Interval(1.0), tol=1e-12)
        target = _horn_target_lo()
        return [
            ("fold value at the critical bias dips below 1 - 1/0.9462",
             bool(val.hi < target),
             f"f_1(eps-box) in [{float(val.lo):.6e}, {float(val.hi):.6e}],"
             f" target {target:.6e}"),
        ]

    def notes(self):
        return [f"margin is a strict float upper bound for 1 - 1/0.95"
                f" ({self.margin!r})"]


class LemmaHornHard(LemmaTask):
    """Threshold-plane check for the implication hard distribution.

    Working in probability coordinates tau = Phi(t) on [0, 1]^2:

    C1: the acceptance probability sits strictly below the target 1 - 2p
        (checked through an exact excess identity whose terms vanish with
        the thresholds, so it stays decisive along the edges and at the
        mixed corners, where the excess tends to -p3 / -p4).
    C2: the box lies inside one of the two aligned corner squares (both tau
        within 1e-4 of 0, or both within 1e-4 of 1); there the excess tends
        to 0 and the boundary certificate takes over.
    C3: the box lies within 1e-2 of the stationary threshold pair and the
        Hessian is certified negative definite there; the stationarity and
        value premises of the global certificate close these boxes.
    C4: the gradient is certified nonzero (no interior maximum).
    """

    lemma_id = "horn-hard"
    dim_names = ("tau1", "tau2")
    root = ((0.0, 1.0), (0.0, 1.0))
    strip = 1e-4
    nbhd = 1e-2

    def __init__(self):
        from . import hardness as _hd
        b0 = 0.1489442419
        self.params = _hd.theta2_params(Interval(b0 - 1e-6, b0 + 1e-6),
                                        tol=1e-12)

    def crit_excess_negative(self, cols, tol):
        from . import hardness as _hd
        t1 = Phi_inv(cols["tau1"])
        t2 = Phi_inv(cols["tau2"])
        # a loose quadrature pass settles most boxes; only the failures pay
        # for the tight pass (a looser tolerance can only widen an
        # enclosure, so certifying through it is sound)
        loose = 1e-5 if tol is None or tol < 1e-5 else tol
        d = _hd.theta2_excess(self.params, t1, t2, tol=loose)
        ok = np.asarray(d.hi < 0.0, dtype=bool).reshape(-1)
        if loose != tol:
            need = np.flatnonzero(~ok)
            if need.size:
                d2 = _hd.theta2_excess(self.params, _rows(t1, need),
                                       _rows(t2, need), tol=tol)
                ok[need[np.asarray(d2.hi < 0.0, dtype=bool).reshape(-1)]] = True
        return ok

    def crit_corner_squares(self, cols, tol):
        a, b = cols["tau1"], cols["tau2"]
        s = self.strip
        return (((a.hi <= s) & (b.hi <= s))
                | ((a.lo >= 1.0 - s) & (b.lo >= 1.0 - s)))

    def crit_saddle_nbhd(self, cols, tol):
        from . import hardness as _hd
        c1 = (Interval(1.0) - self.params.b) * Interval(0.5)
        c2 = (Interval(1.0) + self.params.b) * Interval(0.5)
        near = ((abs(cols["tau1"] - c1).hi <= self.nbhd)
                & (abs(cols["tau2"] - c2).hi <= self.nbhd))
        if not near.any():
            return near
        t1 = Phi_inv(cols["tau1"])
        t2 = Phi_inv(cols["tau2"])
        h11, h12, h22 = _hd.theta2_hessian(self.params, t1, t2)
        det = h11 * h22 - h12.sqr()
        return near & (h11.hi < 0.0) & (det.lo > 0.0)

    def crit_grad_nonzero(self, cols, tol):
        from . import hardness as _hd
        t1 = Phi_inv(cols["tau1"])
        t2 = Phi_inv(cols["tau2"])
        g1, g2 = _hd.theta2_grad(self.params, t1, t2)
        return _excludes_zero(g1) | _excludes_zero(g2)

    def criteria(self):
        # cheap tests first (C1 needs four bivariate quadratures per box)
        return [("C2", self.crit_corner_squares),
                ("C3", self.crit_saddle_nbhd),
                ("C4", self.crit_grad_nonzero),
                ("C1", self.crit_excess_negative)]

    def notes(self):
        return ["C2/C3 acceptances rely on the boundary and stationarity"
                " premises of the global certificate for the hard"
                " distribution"]


_LEMMA_CLASSES = {
    "2sat-step1": Lemma2SatStep1,
    "2sat-step2": Lemma2SatStep2,
    "ornot-step1": LemmaOrnotStep1,
    "ornot-step2": LemmaOrnotStep2,
    "horn-step1": LemmaHornStep1,
    "horn-step2": LemmaHornStep2,
    "horn-hard": LemmaHornHard,
}

LEMMA_IDS = tuple(_LEMMA_CLASSES)


def make_lemma(lemma_id: str) -> LemmaTask:
    try:
        cls = _LEMMA_CLASSES[lemma_id]
    except KeyError:
        raise KeyError(f"unknown lemma id {lemma_id!r};"
                       f" known: {', '.join(LEMMA_IDS)}") from None
    return cls()


def run_lemma(lemma_id: str, heuristic: str = "widest", depth_limit=None,
              workers: int = 1, quad_tol=None, time_limit_s=None,
              chunk_size: int = 32768) -> CheckReport:
    """Run one packaged lemma cover plus its side checks."""
    task = make_lemma(lemma_id)
    qt = task.default_quad_tol if quad_tol is None else quad_tol
    dl = task.default_depth_limit if depth_limit is None else depth_limit
    report = _engine(task,
                     np.array([a for a, _ in task.root], dtype=np.float64),
                     np.array([b for _, b in task.root], dtype=np.float64),
                     lemma_id=task.lemma_id, heuristic=heuristic,
                     depth_limit=dl, workers=workers, quad_tol=qt,
                     chunk_size=chunk_size, time_limit_s=time_limit_s,
                     notes=())
    for name, passed, detail in task.side_checks(qt):
        report.notes.append(
            f"side check {'passed' if passed else 'FAILED'}: {name} [{detail}]")
        if not passed and report.status is CheckStatus.VERIFIED:
            report.status = CheckStatus.ABORTED
    report.notes.extend(task.notes())
    return report
