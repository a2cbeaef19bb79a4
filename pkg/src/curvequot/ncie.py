"""Non-classical interval exchanges and Rauzy induction with exact widths.

An exchange is a base interval [0, delta] with bands glued along its upper
side ``+`` and lower side ``-``.  A band glued to both sides is orientation
preserving (the gluing is a translation); a band glued twice to the same
side is orientation reversing (the gluing is a flip).

Induction convention.  Compare the terminal (rightmost) bands of the two
sides.  The narrower one loses, the base shrinks by its width and the
winner's width drops by the same amount.  The loser's terminal attachment
is re-routed across the winner:

* winner preserving: it re-enters immediately after the winner's other
  attachment, which sits on the opposite side;
* winner reversing: it re-enters immediately before the winner's other
  attachment on the same side, which flips the loser's orientation.

Each step adds the winner's row of the passage array into the loser's row,
so entry (i, j) counts how often the current band i runs over original
band j.  Old widths are recovered from new ones as ``E.T @ new``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import (
    CapExceeded,
    CoverageGap,
    DegenerateBand,
    IllFormedInduction,
    NcieInvalid,
    NonpositiveInput,
    OrientationInconsistent,
    OverlappingAttachments,
    SaddleConnection,
    WidthMismatch,
)

HARD_CAP = 100_000
PLUS, MINUS = "+", "-"


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(str(x)) if isinstance(x, str) else Fraction(x)


@dataclass(frozen=True)
class Attachment:
    side: str
    offset: Fraction
    width: Fraction | None = None   # only set by fixtures that glue a mismatched width


@dataclass(frozen=True)
class Band:
    width: Fraction
    attachments: tuple
    orientation: str | None = None   # declared flag: "preserving" / "reversing"

    @property
    def preserving(self) -> bool:
        return self.attachments[0].side != self.attachments[1].side


@dataclass(frozen=True)
class Ncie:
    base_length: Fraction
    bands: tuple

    @property
    def widths(self) -> tuple:
        return tuple(b.width for b in self.bands)

    def row(self, side: str) -> list[tuple[int, int]]:
        """(band, attachment index) pairs on one side, left to right."""
        ends = [(b.attachments[k].offset, i, k) for i, b in enumerate(self.bands)
                for k in (0, 1) if b.attachments[k].side == side]
        return [(i, k) for _, i, k in sorted(ends)]

    @classmethod
    def from_rows(cls, base_length, widths: Sequence, top: Sequence, bottom: Sequence) -> "Ncie":
        """Rebuild offsets from the two rows of (band, attachment index)."""
        widths = [_q(w) for w in widths]
        att = [[None, None] for _ in widths]
        for side, row in ((PLUS, top), (MINUS, bottom)):
            x = Fraction(0)
            for i, k in row:
                att[i][k] = Attachment(side, x)
                x += widths[i]
        return cls(_q(base_length), tuple(Band(w, tuple(a)) for w, a in zip(widths, att)))

    @classmethod
    def from_dict(cls, data: dict) -> "Ncie":
        bands = []
        for b in data["bands"]:
            atts = tuple(
                Attachment(a["side"], _q(a["offset"]), _q(a["width"]) if "width" in a else None)
                for a in b["attachments"]
            )
            bands.append(Band(_q(b["width"]), atts, b.get("orientation")))
        return cls(_q(data["base_length"]), tuple(bands))

    @classmethod
    def load(cls, path) -> "Ncie":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))

    def to_dict(self) -> dict:
        return {
            "base_length": str(self.base_length),
            "bands": [
                {"width": str(b.width),
                 "attachments": [{"side": a.side, "offset": str(a.offset)} for a in b.attachments]}
                for b in self.bands
            ],
        }


def rotation(p, q) -> Ncie:
    """Two preserving bands of widths p and q, in swapped order top and bottom."""
    p, q = _q(p), _q(q)
    return Ncie.from_rows(p + q, (p, q), [(0, 0), (1, 0)], [(1, 1), (0, 1)])


# -- validation ---------------------------------------------------------------


def problems(x: Ncie) -> list[NcieInvalid]:
    errs: list[NcieInvalid] = []
    delta = x.base_length
    if delta <= 0:
        errs.append(WidthMismatch(f"base length {delta} is not positive"))
    per_side = {PLUS: [], MINUS: []}
    for i, b in enumerate(x.bands):
        if b.width <= 0:
            errs.append(WidthMismatch(f"band {i}: width {b.width} is not positive"))
        if len(b.attachments) != 2:
            errs.append(CoverageGap(f"band {i}: needs exactly two attachments"))
            continue
        for k, a in enumerate(b.attachments):
            if a.side not in per_side:
                errs.append(OrientationInconsistent(f"band {i}: unknown side {a.side!r}"))
                continue
            w = a.width if a.width is not None else b.width
            if w != b.width:
                errs.append(WidthMismatch(f"band {i}: attachment {k} has width {w}, band has {b.width}"))
            per_side[a.side].append((a.offset, a.offset + w, i))
        if b.orientation is not None:
            expect = "preserving" if b.preserving else "reversing"
            if b.orientation != expect:
                errs.append(OrientationInconsistent(
                    f"band {i}: declared {b.orientation} but attachments make it {expect}"))
    for side, ivs in per_side.items():
        total = sum((hi - lo for lo, hi, _ in ivs), Fraction(0))
        if total != delta:
            errs.append(WidthMismatch(f"side {side}: widths sum to {total}, base length is {delta}"))
        ivs.sort()
        at = Fraction(0)
        for lo, hi, i in ivs:
            if lo < at:
                errs.append(OverlappingAttachments(f"side {side}: band {i} overlaps at {lo}"))
            elif lo > at:
                errs.append(CoverageGap(f"side {side}: gap ({at}, {lo})"))
            at = max(at, hi)
        if at < delta:
            errs.append(CoverageGap(f"side {side}: gap ({at}, {delta})"))
        elif at > delta:
            errs.append(CoverageGap(f"side {side}: attachments run past {delta}"))
    return errs


def validate(x: Ncie) -> None:
    errs = problems(x)
    if errs:
        first = errs[0]
        raise type(first)("; ".join(str(e) for e in errs), errs)


def to_train_track(x: Ncie, region_punctures: dict | None = None):
    """Collapse the base to one switch; side A follows I+, side B follows I-.

    Without an explicit puncture assignment every region with at most two
    cusps gets one puncture (two when it has none), which is the least
    needed to make the track valid.
    """
    from .orbifolds import SurfaceSig
    from .traintrack import TrainTrack, _regions_raw

    validate(x)
    name = lambda i, k: f"b{i}.{k}"
    side_a = tuple(name(i, k) for i, k in x.row(PLUS))
    side_b = tuple(name(i, k) for i, k in x.row(MINUS))
    branches = [(name(i, 0), name(i, 1)) for i in range(len(x.bands))]
    t = TrainTrack([(side_a, side_b)], branches, SurfaceSig(0, 0))
    if region_punctures is None:
        region_punctures = {}
        for k, r in enumerate(_regions_raw(t)):
            if r.cusps == 0:
                region_punctures[k] = 2
            elif r.cusps <= 2:
                region_punctures[k] = 1
    t.region_punctures = {int(k): int(v) for k, v in region_punctures.items()}
    t.surface = SurfaceSig(t.ribbon_genus(), sum(t.region_punctures.values()))
    return t


# -- induction ----------------------------------------------------------------


@dataclass(frozen=True)
class StepRecord:
    loser: int
    winner: int
    subtracted: Fraction
    base_length: Fraction          # after the step
    widths: tuple                  # after the step
    winner_preserving: bool

    def update(self, n: int) -> np.ndarray:
        """Elementary array I + e_loser e_winner^T."""
        E = np.identity(n, dtype=np.int64).astype(object)
        E[self.loser, self.winner] += 1
        return E

    def as_dict(self) -> dict:
        return {
            "loser": self.loser,
            "winner": self.winner,
            "subtracted": str(self.subtracted),
            "base_length": str(self.base_length),
            "widths": [str(w) for w in self.widths],
            "winner_preserving": self.winner_preserving,
        }


def _step(x: Ncie) -> tuple[Ncie, StepRecord]:
    top, bottom = x.row(PLUS), x.row(MINUS)
    a, b = top[-1], bottom[-1]
    if a[0] == b[0]:
        raise IllFormedInduction(f"band {a[0]} is terminal on both sides")
    widths = list(x.widths)
    u, v = widths[a[0]], widths[b[0]]
    if u == v:
        raise SaddleConnection(f"terminal bands {a[0]} and {b[0]} both have width {u}")
    if u > v:
        win, lose, own, other = a, b, top, bottom      # loser sits on the lower side
    else:
        win, lose, own, other = b, a, bottom, top
    other.pop()
    far = (win[0], 1 - win[1])
    if far in other:
        # winner keeps the far end on the loser's side: translation
        other.insert(other.index(far) + 1, lose)
        preserving = True
    else:
        own.insert(own.index(far), lose)
        preserving = False
    loser_w = widths[lose[0]]
    widths[win[0]] -= loser_w
    if widths[win[0]] <= 0:
        raise DegenerateBand(f"band {win[0]} would reach width {widths[win[0]]}")
    new = Ncie.from_rows(x.base_length - loser_w, widths, top, bottom)
    rec = StepRecord(lose[0], win[0], loser_w, new.base_length, new.widths, preserving)
    return new, rec


def rauzy_step(x: Ncie) -> tuple[Ncie, np.ndarray, StepRecord]:
    validate(x)
    new, rec = _step(x)
    return new, rec.update(len(x.bands)), rec


def carrying_holds(before: Ncie, after: Ncie, rec: StepRecord) -> bool:
    """Old widths equal the new widths pushed through the elementary update."""
    E = rec.update(len(before.bands))
    pushed = E.T.dot(np.array(after.widths, dtype=object))
    return tuple(pushed) == before.widths


class PassageMatrix:
    """Nonnegative integer array indexed (current band, original band)."""

    def __init__(self, array):
        self.array = np.array(array, dtype=object)

    @classmethod
    def identity(cls, n: int) -> "PassageMatrix":
        return cls(np.identity(n, dtype=np.int64).astype(object))

    def apply(self, rec: StepRecord) -> "PassageMatrix":
        out = self.array.copy()
        out[rec.loser] = out[rec.loser] + out[rec.winner]
        return PassageMatrix(out)

    def min_entry(self) -> int:
        return int(min(self.array.flat)) if self.array.size else 0

    def tolist(self) -> list:
        return [[int(v) for v in row] for row in self.array]

    @property
    def shape(self):
        return self.array.shape

    def __eq__(self, other):
        if isinstance(other, PassageMatrix):
            other = other.array
        other = np.asarray(other, dtype=object)
        return other.shape == self.array.shape and bool((other == self.array).all())

    def __repr__(self):
        return f"PassageMatrix({self.tolist()})"


@dataclass
class InductionTrace:
    initial: Ncie
    steps: list = field(default_factory=list)
    final: Ncie | None = None
    stopped_by: str = ""

    def __len__(self):
        return len(self.steps)

    def to_jsonl(self) -> str:
        return "".join(json.dumps({"step": k + 1, **r.as_dict()}, sort_keys=True) + "\n"
                       for k, r in enumerate(self.steps))


def passage_product(trace: InductionTrace) -> PassageMatrix:
    P = PassageMatrix.identity(len(trace.initial.bands))
    for rec in trace.steps:
        P = P.apply(rec)
    return P


# stop rules take (current exchange, trace, passage array) and return True to stop


@dataclass(frozen=True)
class StopRule:
    name: str
    test: Callable = field(repr=False, compare=False)

    def __call__(self, x, trace, passage) -> bool:
        return self.test(x, trace, passage)


def length_below(eps) -> StopRule:
    eps = _q(eps)
    return StopRule(f"length_below({eps})", lambda x, tr, P: x.base_length < eps)


def all_passages_at_least(k: int) -> StopRule:
    return StopRule(f"all_passages_at_least({k})", lambda x, tr, P: P.min_entry() >= k)


def max_steps(m: int) -> StopRule:
    return StopRule(f"max_steps({m})", lambda x, tr, P: len(tr.steps) >= m)


def rauzy_until(x: Ncie, stop: StopRule, cap: int = HARD_CAP, check_carrying: bool = False) -> InductionTrace:
    """Induct until ``stop`` fires; a tie raises SaddleConnection carrying the partial trace."""
    validate(x)
    trace = InductionTrace(initial=x, final=x)
    P = PassageMatrix.identity(len(x.bands))
    cur = x
    while not stop(cur, trace, P):
        if len(trace.steps) >= cap:
            raise CapExceeded(f"no stop after {cap} steps")
        try:
            nxt, rec = _step(cur)
        except SaddleConnection as e:
            trace.stopped_by = "saddle_connection"
            raise SaddleConnection(str(e), trace) from None
        if check_carrying and not carrying_holds(cur, nxt, rec):
            raise AssertionError(f"carrying identity fails at step {len(trace.steps) + 1}")
        trace.steps.append(rec)
        P = P.apply(rec)
        cur = nxt
        trace.final = cur
    trace.stopped_by = stop.name
    return trace


def twice_cover_index(x: Ncie, cap: int = HARD_CAP) -> int:
    """Least number of steps after which every passage entry is at least two."""
    trace = rauzy_until(x, all_passages_at_least(2), cap=cap)
    return len(trace.steps)


def maximally_filling_certificate(vertical: PassageMatrix, horizontal: PassageMatrix) -> bool:
    return vertical.min_entry() >= 2 and horizontal.min_entry() >= 2


def ratio_lower_bound(stage_base_length, eps) -> Fraction:
    stage_base_length, eps = _q(stage_base_length), _q(eps)
    if stage_base_length <= 0 or eps <= 0:
        raise NonpositiveInput("base length and epsilon must be positive")
    return 2 * eps / stage_base_length


def curve_passages(p: int, q: int) -> PassageMatrix:
    """Passages over the two original bands of the curve with weights (p, q).

    The curve is induced down the rotation of widths (p, q) until the two
    bands tie; it is then one copy of each current band, so its row is the
    sum of the rows of the passage array.
    """
    p, q = abs(int(p)), abs(int(q))
    if p == 0 or q == 0:
        return PassageMatrix([[p, q]])
    try:
        trace = rauzy_until(rotation(p, q), max_steps(HARD_CAP))
    except SaddleConnection as e:
        trace = e.trace
    P = passage_product(trace)
    g = trace.final.widths[0]
    row = (P.array[0] + P.array[1]) * int(g)
    return PassageMatrix([list(row)])


def euclid_trace(p: int, q: int) -> list[tuple[int, int]]:
    """Subtractive Euclid on (p, q): the pairs after each subtraction, stopping at a tie."""
    out = []
    while p != q:
        if p > q:
            p -= q
        else:
            q -= p
        out.append((p, q))
    return out
