"""Multisegments: multisets of segments and their combinatorics.

Covers the degree and highest-derivative partition invariants, the
canonical (does-not-precede) ordering, the elementary-operation poset,
the Moeglin-Waldspurger involution, and inertial classes.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import BudgetExceededError, ShapeError, WraparoundError
from .partitions import Partition
from .segments import (
    EMPTY_SEGMENT,
    CuspidalLabel,
    Segment,
    SegmentLike,
    relate,
    support as segment_support,
    top_minus,
    union_and_intersection,
)

DEFAULT_SUPPORT_BOUND = 10
DEFAULT_NODE_BOUND = 5000


@dataclass(frozen=True)
class Multisegment:
    """A multiset of nonempty segments, stored canonically sorted.

    Empty segments are dropped at construction so truncation maps can be
    composed freely.
    """

    segments: tuple[Segment, ...] = ()

    def __post_init__(self) -> None:
        kept = tuple(
            sorted((s for s in self.segments if not s.is_empty), key=Segment.sort_key)
        )
        object.__setattr__(self, "segments", kept)

    @classmethod
    def of(cls, *segments: SegmentLike) -> "Multisegment":
        return cls(tuple(s for s in segments if not s.is_empty))  # type: ignore[arg-type]

    def __len__(self) -> int:
        return len(self.segments)

    def __iter__(self):
        return iter(self.segments)

    @property
    def infinite_period(self) -> bool:
        return all(s.infinite_period for s in self.segments)

    def union(self, other: "Multisegment") -> "Multisegment":
        return Multisegment(self.segments + other.segments)

    def support(self) -> Counter:
        """Multiset union of the member segments' supports."""
        total: Counter = Counter()
        for s in self.segments:
            total += segment_support(s)
        return total

    def replace_pair(self, i: int, j: int, new: Iterable[SegmentLike]) -> "Multisegment":
        rest = [s for k, s in enumerate(self.segments) if k not in (i, j)]
        rest.extend(s for s in new if not s.is_empty)
        return Multisegment(tuple(rest))

    def __str__(self) -> str:
        return "{" + ",".join(str(s) for s in self.segments) + "}"

    def to_json(self) -> dict:
        return {"segments": [s.to_json() for s in self.segments]}

    @classmethod
    def from_json(cls, data: dict) -> "Multisegment":
        return cls(tuple(Segment.from_json(s) for s in data["segments"]))  # type: ignore[arg-type]


def degree(m: Multisegment) -> int:
    """Sum of member degrees."""
    return sum(s.degree for s in m.segments)


def lambda_of(m: Multisegment) -> Partition:
    """Highest derivative partition: part i sums the dims of segments of length >= i."""
    if not m.segments:
        return Partition()
    max_len = max(s.length for s in m.segments)
    parts = []
    for i in range(1, max_len + 1):
        parts.append(sum(s.dim for s in m.segments if s.length >= i))
    return Partition(tuple(parts))


def canonical_order(m: Multisegment) -> list[Segment]:
    """Segments ordered so no segment precedes a later one.

    Within a line the order is by end twist descending, then start twist
    ascending; distinct lines are separated by the line-id tie-break.
    Requires infinite-period lines, since precedence is a linking notion.
    """
    if not m.infinite_period:
        raise WraparoundError("canonical order undefined with wraparound")
    return sorted(m.segments, key=Segment.sort_key)


def elementary_reductions(m: Multisegment) -> set[Multisegment]:
    """All one-step degradations: replace a linked pair by its union and intersection."""
    if not m.infinite_period:
        raise WraparoundError("elementary operations undefined with wraparound")
    out: set[Multisegment] = set()
    segs = m.segments
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            rel = relate(segs[i], segs[j])
            if rel.linked:
                union, inter = union_and_intersection(segs[i], segs[j])
                out.add(m.replace_pair(i, j, (union, inter)))
    return out


@dataclass(frozen=True)
class Poset:
    """The reduction poset below a multisegment: nodes and covering edges."""

    nodes: tuple[Multisegment, ...]
    edges: tuple[tuple[int, int], ...]

    def to_dot(self) -> str:
        lines = ["digraph downset {"]
        for i, node in enumerate(self.nodes):
            lam = lambda_of(node)
            lines.append(f'  n{i} [label="{node} | λ={lam}"];')
        for i, j in self.edges:
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "nodes": [n.to_json() for n in self.nodes],
            "edges": [list(e) for e in self.edges],
        }


def downset(m: Multisegment, node_bound: int = DEFAULT_NODE_BOUND) -> Poset:
    """Transitive closure of elementary reductions starting from m."""
    seen: set[Multisegment] = {m}
    frontier = [m]
    edge_set: set[tuple[Multisegment, Multisegment]] = set()
    while frontier:
        nxt: list[Multisegment] = []
        for node in frontier:
            for child in elementary_reductions(node):
                edge_set.add((node, child))
                if child not in seen:
                    seen.add(child)
                    nxt.append(child)
                    if len(seen) > node_bound:
                        raise BudgetExceededError(
                            f"downset node bound {node_bound} exceeded"
                        )
        frontier = nxt
    nodes = tuple(sorted(seen, key=str))
    index = {n: i for i, n in enumerate(nodes)}
    edges = tuple(sorted((index[p], index[c]) for p, c in edge_set))
    return Poset(nodes, edges)


def _dual_one_line(segs: list[Segment]) -> list[Segment]:
    """Moeglin-Waldspurger peeling on a single infinite-period line.

    Repeatedly extract the maximal chain of segments whose ends descend by
    one and whose starts strictly decrease; the twist interval of the
    chain's ends becomes a segment of the dual, and each chain member
    loses its top twist.
    """
    remaining = list(segs)
    out: list[Segment] = []
    while remaining:
        b = max(s.b for s in remaining)
        chain: list[int] = []
        e = b
        start: Optional[int] = None
        while True:
            candidates = [
                i
                for i, s in enumerate(remaining)
                if i not in chain
                and s.b == e
                and (start is None or s.a < start)
            ]
            if not candidates:
                break
            pick = max(candidates, key=lambda i: remaining[i].a)
            chain.append(pick)
            start = remaining[pick].a
            e -= 1
        line = remaining[0].cuspidal
        out.append(Segment(line, b - len(chain) + 1, b))
        peeled = []
        for i, s in enumerate(remaining):
            if i in chain:
                shorter = top_minus(s)
                if not shorter.is_empty:
                    peeled.append(shorter)  # type: ignore[arg-type]
            else:
                peeled.append(s)
        remaining = peeled
    return out


def mw_dual(m: Multisegment) -> Multisegment:
    """The Zelevinsky-dual multisegment, computed by maximal-chain peeling."""
    if not m.infinite_period:
        raise WraparoundError("the involution is undefined with wraparound")
    by_line: dict[CuspidalLabel, list[Segment]] = {}
    for s in m.segments:
        by_line.setdefault(s.cuspidal, []).append(s)
    dual: list[Segment] = []
    for segs in by_line.values():
        dual.extend(_dual_one_line(segs))
    return Multisegment(tuple(dual))


@dataclass(frozen=True)
class InertialClass:
    """A multisegment up to independent unramified twists of its segments.

    The representative anchors every segment at start twist 0, so that
    inertially equivalent segments become literally equal and two
    multisegments are inertially equivalent exactly when their classes
    compare equal.
    """

    representative: Multisegment
    orbit_sizes: tuple[int, ...] = field(default=())

    @property
    def degree(self) -> int:
        return degree(self.representative)

    @property
    def tangent_dim(self) -> int:
        return len(self.representative)

    def weyl_order(self) -> int:
        import math

        out = 1
        for n in self.orbit_sizes:
            out *= math.factorial(n)
        return out

    def distinct_segments(self) -> list[tuple[Segment, int]]:
        """Distinct inertial segments of the representative with multiplicities."""
        counts: Counter = Counter(self.representative.segments)
        return sorted(counts.items(), key=lambda kv: kv[0].sort_key())

    def to_json(self) -> dict:
        return {
            "representative": self.representative.to_json(),
            "orbit_sizes": list(self.orbit_sizes),
        }


def inertial_class(m: Multisegment) -> InertialClass:
    """Collapse each segment to its start-0 inertial representative."""
    rep = Multisegment(
        tuple(Segment(s.cuspidal, 0, s.length - 1) for s in m.segments)
    )
    counts = Counter(rep.segments)
    sizes = tuple(
        counts[s] for s, _ in sorted(counts.items(), key=lambda kv: kv[0].sort_key())
    )
    return InertialClass(rep, sizes)


def enumerate_with_support(
    points: Iterable[CuspidalLabel], bound: int = DEFAULT_SUPPORT_BOUND
) -> list[Multisegment]:
    """All multisegments whose support is exactly the given multiset of twists."""
    pts = list(points)
    if len(pts) > bound:
        raise BudgetExceededError(f"support size bound {bound} exceeded")
    if any(p.period is not None for p in pts):
        raise WraparoundError("support enumeration undefined with wraparound")
    remaining: Counter = Counter((p.base(), p.twist) for p in pts)
    results: set[Multisegment] = set()

    def rec(rem: Counter, acc: list[Segment]) -> None:
        if not rem:
            results.add(Multisegment(tuple(acc)))
            return
        base, t = max(rem, key=lambda k: (k[0].line_id, k[0].dim, k[1]))
        a = t
        while True:
            new = rem.copy()
            ok = True
            for u in range(a, t + 1):
                if new[(base, u)] > 0:
                    new[(base, u)] -= 1
                    if new[(base, u)] == 0:
                        del new[(base, u)]
                else:
                    ok = False
                    break
            if not ok:
                break
            acc.append(Segment(base, a, t))
            rec(new, acc)
            acc.pop()
            a -= 1

    rec(remaining, [])
    return sorted(results, key=str)
