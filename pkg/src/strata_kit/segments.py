"""Cuspidal lines and Zelevinsky segments.

A cuspidal line is an opaque label (an inertial class of cuspidal
representations) with a dimension and an optional finite twist period e;
points on the line are integer twist exponents, reduced mod e when e is
finite.  A segment [a, b] on a line is the string of consecutive twists
a, a+1, ..., b.  Twists are always stored in absolute coordinates relative
to the line's fixed base point, so equivalence of segments is structural
equality.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace
from typing import Optional, Union

from .errors import ShapeError, WraparoundError


@dataclass(frozen=True)
class CuspidalLabel:
    """A point on a cuspidal line: the base representation twisted ``twist`` times.

    ``period`` is None for a line with infinite twist orbit and a positive
    integer e when the twist action has order e; in the latter case the
    twist is stored reduced mod e.
    """

    line_id: str
    dim: int = 1
    period: Optional[int] = None
    twist: int = 0

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ShapeError("cuspidal dimension must be >= 1")
        if self.period is not None:
            if self.period < 1:
                raise ShapeError("twist period must be >= 1")
            object.__setattr__(self, "twist", self.twist % self.period)

    @property
    def infinite_period(self) -> bool:
        return self.period is None

    def base(self) -> "CuspidalLabel":
        """The distinguished base point of this line (twist 0)."""
        return replace(self, twist=0)

    def shifted(self, t: int) -> "CuspidalLabel":
        return replace(self, twist=self.twist + t)

    def reduce(self, t: int) -> int:
        """Reduce an absolute twist exponent mod the period."""
        return t if self.period is None else t % self.period

    def isomorphic(self, other: "CuspidalLabel") -> bool:
        """Same line and same reduced twist."""
        return (
            self.line_id == other.line_id
            and self.dim == other.dim
            and self.period == other.period
            and self.twist == other.twist
        )


class EmptySegment:
    """The empty segment; Z of it is the one-dimensional class of the trivial group."""

    _instance: Optional["EmptySegment"] = None

    def __new__(cls) -> "EmptySegment":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    is_empty = True

    def __repr__(self) -> str:
        return "EmptySegment"

    def to_json(self) -> dict:
        return {"empty": True}


EMPTY_SEGMENT = EmptySegment()


@dataclass(frozen=True)
class Segment:
    """The segment [a, b] on a cuspidal line, with b >= a in absolute twists.

    A nonzero twist on the label is folded into the endpoints at
    construction, so the stored label is always the line's base point.
    """

    cuspidal: CuspidalLabel
    a: int
    b: int

    is_empty = False

    def __post_init__(self) -> None:
        if self.b < self.a:
            raise ShapeError(f"segment needs b >= a, got [{self.a},{self.b}]")
        if self.cuspidal.twist != 0:
            t = self.cuspidal.twist
            object.__setattr__(self, "cuspidal", self.cuspidal.base())
            object.__setattr__(self, "a", self.a + t)
            object.__setattr__(self, "b", self.b + t)

    @property
    def length(self) -> int:
        return self.b - self.a + 1

    @property
    def dim(self) -> int:
        return self.cuspidal.dim

    @property
    def degree(self) -> int:
        return self.dim * self.length

    @property
    def line_id(self) -> str:
        return self.cuspidal.line_id

    @property
    def infinite_period(self) -> bool:
        return self.cuspidal.infinite_period

    def same_line(self, other: "Segment") -> bool:
        return self.cuspidal.base() == other.cuspidal.base()

    def start_label(self) -> CuspidalLabel:
        return self.cuspidal.shifted(self.a)

    def end_label(self) -> CuspidalLabel:
        return self.cuspidal.shifted(self.b)

    def shifted(self, t: int) -> "Segment":
        return Segment(self.cuspidal, self.a + t, self.b + t)

    def sort_key(self) -> tuple:
        """Deterministic structural key; orders by line, then end descending,
        then start ascending (containing segments first among equal ends)."""
        c = self.cuspidal
        return (c.line_id, c.dim, c.period is not None, c.period or 0, -self.b, self.a)

    def __str__(self) -> str:
        return f"[{self.a},{self.b}]_{self.line_id}"

    def to_json(self) -> dict:
        return {
            "line": self.line_id,
            "dim": self.dim,
            "period": self.cuspidal.period,
            "a": self.a,
            "b": self.b,
        }

    @classmethod
    def from_json(cls, data: dict) -> "SegmentLike":
        if data.get("empty"):
            return EMPTY_SEGMENT
        label = CuspidalLabel(
            line_id=data["line"],
            dim=data.get("dim", 1),
            period=data.get("period"),
        )
        return cls(label, data["a"], data["b"])


SegmentLike = Union[Segment, EmptySegment]


def segment_invariants(seg: SegmentLike) -> tuple[int, int, int]:
    """(length, cuspidal dim, degree); (0, 0, 0) for the empty segment."""
    if seg.is_empty:
        return (0, 0, 0)
    assert isinstance(seg, Segment)
    return (seg.length, seg.dim, seg.degree)


def support(seg: Segment) -> Counter:
    """Multiset of (line_id, reduced twist) pairs covered by the segment."""
    if seg.is_empty:
        raise ShapeError("support of the empty segment is undefined")
    c = seg.cuspidal
    return Counter((c.line_id, c.reduce(t)) for t in range(seg.a, seg.b + 1))


def equivalent(s1: SegmentLike, s2: SegmentLike) -> bool:
    """Equal lengths and isomorphic starting cuspidals."""
    if s1.is_empty or s2.is_empty:
        return s1.is_empty and s2.is_empty
    assert isinstance(s1, Segment) and isinstance(s2, Segment)
    return s1.length == s2.length and s1.start_label().isomorphic(s2.start_label())


def inertially_equivalent(s1: SegmentLike, s2: SegmentLike) -> bool:
    """Equal lengths and same cuspidal line, any twist."""
    if s1.is_empty or s2.is_empty:
        return s1.is_empty and s2.is_empty
    assert isinstance(s1, Segment) and isinstance(s2, Segment)
    return s1.length == s2.length and s1.cuspidal.base() == s2.cuspidal.base()


@dataclass(frozen=True)
class Relation:
    """How two segments sit relative to each other on their lines.

    ``precedes`` means the first segment is linked with the second and
    starts (equivalently ends) strictly earlier; ``juxtaposed`` means
    linked with empty intersection; ``disjoint`` means empty intersection
    (always true across distinct lines).
    """

    same_line: bool
    precedes: bool
    preceded_by: bool
    linked: bool
    juxtaposed: bool
    contains: bool
    contained_in: bool
    disjoint: bool


def relate(s1: Segment, s2: Segment) -> Relation:
    """Relation record for two nonempty segments; infinite-period lines only."""
    if s1.is_empty or s2.is_empty:
        raise ShapeError("relate is undefined for empty segments")
    if not (s1.infinite_period and s2.infinite_period):
        raise WraparoundError("linking undefined with wraparound")
    if not s1.same_line(s2):
        return Relation(False, False, False, False, False, False, False, True)
    contains = s1.a <= s2.a and s2.b <= s1.b
    contained_in = s2.a <= s1.a and s1.b <= s2.b
    overlap = max(s1.a, s2.a) <= min(s1.b, s2.b)
    union_is_segment = s2.a <= s1.b + 1 and s1.a <= s2.b + 1
    linked = union_is_segment and not contains and not contained_in
    return Relation(
        same_line=True,
        precedes=linked and s1.a < s2.a,
        preceded_by=linked and s2.a < s1.a,
        linked=linked,
        juxtaposed=linked and not overlap,
        contains=contains,
        contained_in=contained_in,
        disjoint=not overlap,
    )


def union_and_intersection(s1: Segment, s2: Segment) -> tuple[Segment, SegmentLike]:
    """(union, intersection) of a linked pair; the intersection may be empty."""
    rel = relate(s1, s2)
    if not rel.linked:
        raise ShapeError("segments not linked")
    union = Segment(s1.cuspidal, min(s1.a, s2.a), max(s1.b, s2.b))
    lo, hi = max(s1.a, s2.a), min(s1.b, s2.b)
    inter: SegmentLike = Segment(s1.cuspidal, lo, hi) if lo <= hi else EMPTY_SEGMENT
    return union, inter


def top_minus(seg: Segment, beta: int = 1) -> SegmentLike:
    """Drop the top beta twists: [a, b] -> [a, b - beta], empty if beta >= length."""
    if seg.is_empty:
        raise ShapeError("cannot truncate the empty segment")
    if beta < 1:
        raise ShapeError("beta must be >= 1")
    if beta > seg.length - 1:
        return EMPTY_SEGMENT
    return Segment(seg.cuspidal, seg.a, seg.b - beta)


def bottom_minus(seg: Segment) -> SegmentLike:
    """Drop the lowest twist: [a, b] -> [a + 1, b], empty for a singleton."""
    if seg.is_empty:
        raise ShapeError("cannot truncate the empty segment")
    if seg.length == 1:
        return EMPTY_SEGMENT
    return Segment(seg.cuspidal, seg.a + 1, seg.b)
