"""Edge-count reconstruction from a partial deck.

Pipeline: card statistics -> floor-average size estimate -> histogram of
estimated degrees -> exact degree counts (zero rule and nearest-lattice
recovery in the middle range) -> certified extension in both directions ->
either the whole degree spectrum, or a window of small counts and a unique
shift aligning the known counts with the estimated histogram.

Every exact answer is certified by integer or rational arithmetic. Anything
that cannot be certified ends the run with an explicit ambiguous or failed
outcome naming the stage.
"""

from __future__ import annotations

import json
import math
import time
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from decksize.deck import CardStats, PartialDeck, card_stats


class PipelineError(Exception):
    ambiguous = False

    def __init__(self, stage: str, detail: str = "", scores: dict[int, int] | None = None):
        super().__init__(f"{stage}: {detail}")
        self.stage = stage
        self.detail = detail
        self.scores = scores or {}


class TooFewCardsError(PipelineError):
    pass


class InconsistentDeckError(PipelineError):
    pass


class NoWindowError(PipelineError):
    pass


class AmbiguousShiftError(PipelineError):
    ambiguous = True


# -- size estimate ---------------------------------------------------------


@dataclass(frozen=True)
class SizeEstimate:
    n: int
    k: int
    m_tilde: int
    alpha_max: int


def estimate_size(stats: CardStats) -> SizeEstimate:
    n, k = stats.n, stats.k
    divisor = n - 2 - k
    if divisor < 1:
        raise TooFewCardsError("estimate", f"need n - 2 - k >= 1 (n={n}, k={k})")
    return SizeEstimate(n, k, stats.edge_total // divisor, k * (n - 1) // divisor)


@dataclass(frozen=True)
class EstimatedDegreeHistogram:
    n: int
    k: int
    counts: tuple[int, ...]

    def at(self, t: int) -> int:
        return self.counts[t] if 0 <= t < len(self.counts) else 0


def estimated_histogram(stats: CardStats, est: SizeEstimate) -> EstimatedDegreeHistogram:
    """Counts of ``m_tilde - e(card)`` over the given cards, on ``0..n-1+alpha_max``."""
    degrees = est.m_tilde - stats.edges
    size = stats.n + est.alpha_max
    if (degrees < 0).any():
        raise InconsistentDeckError("histogram", "a card has more edges than the size estimate")
    if (degrees >= size).any():
        raise InconsistentDeckError("histogram", "an estimated degree exceeds n - 1 + alpha_max")
    counts = np.bincount(degrees, minlength=size)
    return EstimatedDegreeHistogram(stats.n, stats.k, tuple(int(c) for c in counts))


# -- coarse counts ---------------------------------------------------------


@dataclass(frozen=True)
class DtStarTable:
    values: tuple[int, ...]
    # True where the value was read off the complemented cards (2t >= n)
    complement_side: tuple[bool, ...]


def dt_star(stats: CardStats) -> DtStarTable:
    """Largest per-card count of degree ``t`` (complement-reflected for ``2t >= n``).

    Within a factor of four of ``d_t`` when ``3k <= n``; a larger ``k`` only
    triggers a warning.
    """
    n, k = stats.n, stats.k
    if 3 * k > n:
        warnings.warn(f"d_t* bounds need k <= n/3 (n={n}, k={k})", stacklevel=2)
    direct = stats.hist.max(axis=0)
    flipped = stats.complemented().hist.max(axis=0)
    values = []
    side = []
    for t in range(n):
        if 2 * t < n:
            values.append(int(direct[t]))
            side.append(False)
        else:
            values.append(int(flipped[n - 1 - t]))
            side.append(True)
    return DtStarTable(tuple(values), tuple(side))


# -- known degree counts ---------------------------------------------------


@dataclass
class KnownDegrees:
    """Per-degree knowledge of ``d_t``: an exact value, certified large, or unknown.

    Large means ``d_t**2 > n``; small means ``16 * d_t**2 <= 9 * n``.
    """

    n: int
    exact: dict[int, int] = field(default_factory=dict)
    large: set[int] = field(default_factory=set)

    def copy(self) -> "KnownDegrees":
        return KnownDegrees(self.n, dict(self.exact), set(self.large))

    def status(self, t: int) -> str:
        if t in self.exact:
            return "exact"
        if t in self.large:
            return "large"
        return "unknown"

    def is_large(self, t: int) -> bool:
        if t in self.exact:
            return self.exact[t] ** 2 > self.n
        return t in self.large

    def is_small(self, t: int) -> bool:
        return t in self.exact and 16 * self.exact[t] ** 2 <= 9 * self.n

    def set_exact(self, t: int, value: int) -> None:
        if value < 0:
            raise InconsistentDeckError("recover", f"negative count for degree {t}")
        old = self.exact.get(t)
        if old is not None and old != value:
            raise InconsistentDeckError("recover", f"two different exact values for d_{t}: {old} and {value}")
        self.exact[t] = value
        self.large.discard(t)

    def mark_large(self, t: int) -> None:
        if t not in self.exact:
            self.large.add(t)

    def complete(self) -> bool:
        return len(self.exact) == self.n

    def summary(self) -> dict[str, int]:
        return {
            "exact": len(self.exact),
            "large": len(self.large),
            "unknown": self.n - len(self.exact) - len(self.large),
        }

    def mirrored(self) -> "KnownDegrees":
        """The same knowledge about the complement graph (degree ``t`` -> ``n-1-t``)."""
        m = self.n - 1
        return KnownDegrees(self.n, {m - t: v for t, v in self.exact.items()}, {m - t for t in self.large})


@dataclass(frozen=True)
class RecoveryParams:
    beta: Fraction = Fraction(1, 2)
    K: int | None = None
    lo: int | None = None
    hi: int | None = None

    @property
    def gamma(self) -> Fraction:
        return Fraction(3, 4) + Fraction(self.beta) / 4

    def cap(self, n: int) -> int:
        """``K``: explicit, else the least integer ``>= max(2, n**(1 - gamma))``."""
        if self.K is not None:
            return self.K
        e = 1 - self.gamma
        K = 2
        while Fraction(K) ** e.denominator < Fraction(n) ** e.numerator:
            K += 1
        return K

    def interval(self, n: int) -> tuple[int, int]:
        lo = self.lo if self.lo is not None else -(-n // 3)
        hi = self.hi if self.hi is not None else (2 * n) // 3
        return lo, hi

    @classmethod
    def parse(cls, text: str | None) -> "RecoveryParams":
        """``"beta=0.5,K=12"``; empty or None gives the defaults."""
        kwargs = {}
        for item in filter(None, (text or "").split(",")):
            key, _, value = item.partition("=")
            key = key.strip()
            if key == "beta":
                kwargs["beta"] = Fraction(value.strip())
            elif key in ("K", "lo", "hi"):
                kwargs[key] = int(value)
            else:
                raise ValueError(f"unknown parameter {key!r}")
        params = cls(**kwargs)
        if not 0 <= params.beta < 1:
            raise ValueError("beta must lie in [0, 1)")
        if params.K is not None and params.K < 2:
            raise ValueError("K must be at least 2")
        return params


def _near_fraction(t: int, n: int, K: int, eps: int) -> bool:
    """Is ``(t+1)/n`` within ``2*eps/n`` of some ``x/y`` with ``1 <= y <= 2K-2``, ``0 <= x <= y``?"""
    if eps == 0:
        return False
    num = t + 1
    for y in range(1, 2 * K - 1):
        x0 = (num * y) // n
        for x in (x0, x0 + 1):
            if 0 <= x <= y and abs(num * y - x * n) < 2 * eps * y:
                return True
    return False


def recover_exact_middle(stats: CardStats, params: RecoveryParams | None = None) -> KnownDegrees:
    """Exact counts that can be certified without neighbouring knowledge.

    Zero rule (all ``t``): ``s_t = 0`` with ``n-1-t > k`` and ``t+1 > k``
    forces ``d_t = d_{t+1} = 0``, since every vertex of degree ``t`` or
    ``t+1`` survives with degree ``t`` on more cards than are missing.

    Lattice rule (``t`` in the middle interval, only when ``3k <= n``): if
    ``d*_t`` and ``d*_{t+1}`` are both below ``K/4 - 1`` then ``d_t`` and
    ``d_{t+1}`` are below ``K``, and ``s_t`` lies within ``2kK`` below
    ``(n-1-t) d_t + (t+1) d_{t+1}``. The pair is read off the nearest
    lattice point when that point is unique by a margin of ``2 * 2kK``.
    """
    params = params or RecoveryParams()
    n, k = stats.n, stats.k
    s = [int(x) for x in stats.degree_seen]
    known = KnownDegrees(n)
    for t in range(n - 1):
        if s[t] == 0 and n - 1 - t > k and t + 1 > k:
            known.set_exact(t, 0)
            known.set_exact(t + 1, 0)

    if 3 * k > n:
        return known
    K = params.cap(n)
    lo, hi = params.interval(n)
    eps = 2 * k * K
    star = dt_star(stats).values

    def in_a(t: int) -> bool:
        return t < n and 4 * (star[t] + 1) >= K

    for t in range(max(lo, 0), min(hi, n - 2) + 1):
        if in_a(t) or in_a(t + 1) or _near_fraction(t, n, K, eps):
            continue
        pair = lattice_pair(n, t, s[t], K, eps)
        if pair is not None:
            known.set_exact(t, pair[0])
    return known


def lattice_pair(n: int, t: int, seen: int, K: int, eps: int) -> tuple[int, int] | None:
    """The ``(a, b)`` in ``{0..K-1}^2`` whose ``(n-1-t) a + (t+1) b`` is nearest
    to ``seen``, if it beats the runner-up by more than ``2 * eps`` and sits
    at most ``eps`` above ``seen``; otherwise None."""
    left, right = n - 1 - t, t + 1
    ranked = sorted((abs(left * a + right * b - seen), a, b) for a in range(K) for b in range(K))
    (d1, a, b), (d2, _, _) = ranked[0], ranked[1]
    if d2 - d1 > 2 * eps and 0 <= left * a + right * b - seen <= eps:
        return a, b
    return None


# -- certified extension ---------------------------------------------------


def _extend_down(n: int, k: int, s: Sequence[int], known: KnownDegrees) -> bool:
    """Walk ``t`` downwards, deriving ``d_t`` from an exact ``d_{t+1}``.

    ``d'_t = (s_t - (t+1) d_{t+1}) / (n-1-t)`` is a lower bound for ``d_t``,
    and ``U = (d'_t + k d_{t+1}/(n-1-t)) / (1 - k/(n-1-t))`` an upper bound.
    One integer in ``[d'_t, U]`` -> exact; otherwise ``d'_t**2 > n`` ->
    large. Returns whether anything changed.
    """
    changed = False
    for t in range(n - 2, -1, -1):
        if t in known.exact:
            continue
        nxt = known.exact.get(t + 1)
        if nxt is None:
            continue
        r = n - 1 - t
        lower = Fraction(s[t] - (t + 1) * nxt, r)
        if r > k:
            upper = (lower + Fraction(k * nxt, r)) / (1 - Fraction(k, r))
            lo_i, hi_i = math.ceil(lower), math.floor(upper)
            if lo_i == hi_i and lo_i >= 0:
                known.set_exact(t, lo_i)
                changed = True
                continue
        if lower > 0 and lower * lower > n and t not in known.large:
            known.mark_large(t)
            changed = True
    return changed


def extend_known(stats: CardStats, known: KnownDegrees) -> KnownDegrees:
    """Extend exact counts leftwards, and rightwards through the complemented deck."""
    n, k = stats.n, stats.k
    s = [int(x) for x in stats.degree_seen]
    s_co = [int(x) for x in stats.complemented().degree_seen]
    known = known.copy()
    while True:
        changed = _extend_down(n, k, s, known)
        mirror = known.mirrored()
        if _extend_down(n, k, s_co, mirror):
            changed = True
            for t, v in mirror.exact.items():
                known.set_exact(n - 1 - t, v)
            for t in mirror.large:
                known.mark_large(n - 1 - t)
        if not changed:
            return known


# -- shift detection -------------------------------------------------------


def find_window(known: KnownDegrees, k: int) -> tuple[int, int]:
    """Leftmost run of ``max(2k, 2)`` exact, small counts inside ``[ceil(n/3), floor(2n/3)]``."""
    n = known.n
    length = max(2 * k, 2)
    lo, hi = -(-n // 3), (2 * n) // 3
    run = 0
    for t in range(lo, hi + 1):
        run = run + 1 if known.is_small(t) else 0
        if run == length:
            return t - length + 1, t
    raise NoWindowError("window", f"no {length} consecutive exact small counts in [{lo}, {hi}]")


def known_span(known: KnownDegrees, window: tuple[int, int]) -> tuple[int, int]:
    """Widen ``window`` while neighbouring counts are exact or large."""
    tl, tr = window
    while tl > 0 and known.status(tl - 1) != "unknown":
        tl -= 1
    while tr < known.n - 1 and known.status(tr + 1) != "unknown":
        tr += 1
    return tl, tr


@dataclass(frozen=True)
class ShiftResult:
    alpha: int
    window: tuple[int, int]
    scores: dict[int, int]
    cap: int


def _ceil_sqrt(n: int) -> int:
    r = math.isqrt(n)
    return r if r * r == n else r + 1


def detect_shift(
    known: KnownDegrees,
    hist: EstimatedDegreeHistogram,
    window: tuple[int, int],
    k: int,
    est: SizeEstimate,
) -> ShiftResult:
    """The unique ``s`` in ``0..alpha_max`` with capped L1 score at most ``k``.

    Counts are capped at ``ceil(sqrt(n))``; large counts map to the cap. The
    true shift always scores at most ``k`` on a genuine deck, so a unique
    candidate is the answer.
    """
    n = known.n
    cap = _ceil_sqrt(n)
    tl, tr = window
    capped = []
    for t in range(tl, tr + 1):
        if known.is_large(t):
            capped.append(cap)
        elif t in known.exact:
            capped.append(min(known.exact[t], cap))
        else:
            raise ValueError(f"d_{t} is unknown inside the shift window")
    scores = {}
    for s in range(est.alpha_max + 1):
        scores[s] = sum(abs(c - min(hist.at(t + s), cap)) for t, c in zip(range(tl, tr + 1), capped))
    fits = [s for s, v in scores.items() if v <= k]
    if not fits:
        raise AmbiguousShiftError("no-shift", f"no shift scores <= {k}", scores)
    if len(fits) > 1:
        raise AmbiguousShiftError("multi-shift", f"shifts {fits} all score <= {k}", scores)
    return ShiftResult(fits[0], (tl, tr), scores, cap)


# -- pipeline --------------------------------------------------------------


@dataclass
class ReconstructionReport:
    outcome: str  # "exact", "ambiguous" or "failed"
    m: int | None = None
    stage: str | None = None
    detail: str = ""
    m_tilde: int | None = None
    alpha: int | None = None
    window: tuple[int, int] | None = None
    scores: dict[int, int] = field(default_factory=dict)
    known_summary: dict[str, int] = field(default_factory=dict)
    elapsed_ms: float | None = None
    heuristic: bool = False

    @property
    def is_exact(self) -> bool:
        return self.outcome == "exact"

    def to_dict(self, timing: bool = True) -> dict:
        return {
            "outcome": self.outcome,
            "m": self.m,
            "m_tilde": self.m_tilde,
            "alpha": self.alpha,
            "stage": self.stage,
            "window": list(self.window) if self.window else None,
            "scores": {str(s): v for s, v in sorted(self.scores.items())},
            "known_summary": self.known_summary,
            "elapsed_ms": round(self.elapsed_ms, 3) if timing and self.elapsed_ms is not None else None,
            "detail": self.detail,
            "heuristic": self.heuristic,
        }

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing))


def _check_alignment(stats: CardStats, known: KnownDegrees, hist, alpha: int, m: int, stage: str) -> None:
    """Necessary conditions on a genuine deck once ``m`` is fixed."""
    n, k = stats.n, stats.k
    if not 0 <= m <= n * (n - 1) // 2:
        raise InconsistentDeckError(stage, f"size {m} impossible for n={n}")
    degrees = m - stats.edges
    if (degrees < 0).any() or (degrees > n - 1).any():
        raise InconsistentDeckError(stage, "a card implies a degree outside 0..n-1")
    deficit = 0
    for t, d in known.exact.items():
        seen = hist.at(t + alpha)
        if seen > d:
            raise InconsistentDeckError(stage, f"{seen} cards imply degree {t} but d_{t} = {d}")
        deficit += d - seen
    if deficit > k:
        raise InconsistentDeckError(stage, f"known counts miss {deficit} > k vertices")
    s = stats.degree_seen
    for t, d in known.exact.items():
        d_next = 0 if t == n - 1 else known.exact.get(t + 1)
        if d_next is None:
            continue
        eps = (n - 1 - t) * d + (t + 1) * d_next - int(s[t])
        if not 0 <= eps <= k * (d + d_next):
            raise InconsistentDeckError(stage, f"degree-{t} statistics out of bounds")


def reconstruct_from_stats(stats: CardStats, params: RecoveryParams | None = None) -> ReconstructionReport:
    start = time.perf_counter()
    report = ReconstructionReport("failed")
    try:
        _run(stats, params or RecoveryParams(), report)
    except PipelineError as exc:
        report.outcome = "ambiguous" if exc.ambiguous else "failed"
        report.stage = exc.stage
        report.detail = exc.detail
        report.m = None
        if exc.scores:
            report.scores = exc.scores
    report.elapsed_ms = (time.perf_counter() - start) * 1000
    return report


def _run(stats: CardStats, params: RecoveryParams, report: ReconstructionReport) -> None:
    n, k = stats.n, stats.k
    est = estimate_size(stats)
    report.m_tilde = est.m_tilde
    hist = estimated_histogram(stats, est)
    if est.alpha_max == 0:
        report.outcome, report.m, report.alpha, report.stage = "exact", est.m_tilde, 0, "estimate"
        return

    known = recover_exact_middle(stats, params)
    known = extend_known(stats, known)
    report.known_summary = known.summary()

    if known.complete():
        spectrum = [known.exact[t] for t in range(n)]
        twice = sum(t * d for t, d in enumerate(spectrum))
        if sum(spectrum) != n or twice % 2:
            raise InconsistentDeckError("degree-sequence", "recovered spectrum is not a degree spectrum")
        m = twice // 2
        alpha = est.m_tilde - m
        if not 0 <= alpha <= est.alpha_max:
            raise InconsistentDeckError("cross-check", f"m_tilde - m = {alpha} outside [0, {est.alpha_max}]")
        _check_alignment(stats, known, hist, alpha, m, "cross-check")
        try:
            shift = detect_shift(known, hist, (0, n - 1), k, est)
        except AmbiguousShiftError:
            shift = None
        if shift is not None:
            report.scores = shift.scores
            if shift.alpha != alpha:
                raise InconsistentDeckError("cross-check", f"shift {shift.alpha} disagrees with degree route {alpha}")
        report.outcome, report.m, report.alpha, report.stage = "exact", m, alpha, "degree-sequence"
        report.window = (0, n - 1)
        return

    window = known_span(known, find_window(known, k))
    report.window = window
    shift = detect_shift(known, hist, window, k, est)
    report.scores = shift.scores
    m = est.m_tilde - shift.alpha
    _check_alignment(stats, known, hist, shift.alpha, m, "cross-check")
    report.outcome, report.m, report.alpha, report.stage = "exact", m, shift.alpha, "shift"


def reconstruct_size(deck: PartialDeck, params: RecoveryParams | None = None) -> ReconstructionReport:
    """Edge count of the graph behind ``deck``, or an explicit failure."""
    return reconstruct_from_stats(card_stats(deck), params)
