"""Stratification layer: membership predicates, component enumeration,
invariant-ring presentations, and the point <-> multisegment bijection.

A stratum is indexed by a partition lambda; its components are inertial
classes of multisegments with that highest derivative partition, and each
component's endomorphism ring is presented as the invariant ring of twist
variables under the product of symmetric groups permuting inertially equal
segments.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .errors import BudgetExceededError, ShapeError, WeightMismatchError, WraparoundError
from .multisegments import InertialClass, Multisegment, inertial_class, lambda_of
from .partitions import Partition, conjugate, dominance_leq
from .segments import CuspidalLabel, Segment

DEFAULT_COMPONENT_BOUND = 10000


@dataclass(frozen=True)
class BlockSpec:
    """A finite family of cuspidal lines and a total degree to stratify."""

    lines: tuple[CuspidalLabel, ...]
    n: int
    support_budget: Optional[int] = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ShapeError("total degree must be >= 1")
        if not self.lines:
            raise ShapeError("block needs at least one cuspidal line")

    @property
    def infinite_period(self) -> bool:
        return all(line.infinite_period for line in self.lines)

    def to_json(self) -> dict:
        return {
            "lines": [
                {"line": l.line_id, "dim": l.dim, "period": l.period}
                for l in self.lines
            ],
            "n": self.n,
            "support_budget": self.support_budget,
        }

    @classmethod
    def from_json(cls, data: dict) -> "BlockSpec":
        lines = tuple(
            CuspidalLabel(d["line"], d.get("dim", 1), d.get("period"))
            for d in data["lines"]
        )
        return cls(lines, data["n"], data.get("support_budget"))


@dataclass(frozen=True)
class InvariantRingPresentation:
    """Polynomial presentation of a stratum component's endomorphism ring.

    One variable per segment of the class representative; variables of
    inertially equal segments form one symmetric-group orbit, generated by
    its elementary symmetric polynomials.  The top elementary symmetric
    polynomial of each orbit is a unit (the twist variables are invertible),
    recorded in ``units`` rather than by carrying out a localization.
    """

    variables: tuple[str, ...]
    orbits: tuple[tuple[str, ...], ...]
    generators: tuple[str, ...]
    units: tuple[str, ...]

    @property
    def dimension(self) -> int:
        return len(self.variables)

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "orbits": [list(o) for o in self.orbits],
            "generators": list(self.generators),
            "units": list(self.units),
        }


@dataclass(frozen=True)
class StratumReport:
    """All inertial components of one stratum, with their ring presentations."""

    lam: Partition
    components: tuple[tuple[InertialClass, InvariantRingPresentation], ...]

    def to_json(self) -> dict:
        return {
            "lambda": self.lam.to_json(),
            "components": [
                {"class": cls.to_json(), "ring": ring.to_json()}
                for cls, ring in self.components
            ],
        }


def in_stratum(m: Multisegment, lam: Partition) -> str:
    """Classify lambda(m) against lam: 'equal', 'strictly_below', or
    'above_or_incomparable'."""
    mine = lambda_of(m)
    if mine.weight != lam.weight:
        raise WeightMismatchError("incomparable weights")
    if mine == lam:
        return "equal"
    if dominance_leq(mine, lam):
        return "strictly_below"
    return "above_or_incomparable"


def classification_partition(m: Multisegment) -> Partition:
    """Conjugate of the partition of segment lengths weighted by cuspidal dims.

    Equals the highest derivative partition lambda(m); the equality is a
    checked invariant, not an assumption, so this computes via conjugation.
    """
    lengths: list[int] = []
    for s in m.segments:
        lengths.extend([s.length] * s.dim)
    return conjugate(Partition.from_counts(lengths))


def ring_presentation(cls: InertialClass) -> InvariantRingPresentation:
    """Variables grouped by inertial-segment orbit with elementary symmetric
    generators."""
    variables: list[str] = []
    orbits: list[tuple[str, ...]] = []
    generators: list[str] = []
    units: list[str] = []
    index = 0
    for _, mult in cls.distinct_segments():
        orbit = tuple(f"X{index + i + 1}" for i in range(mult))
        index += mult
        variables.extend(orbit)
        orbits.append(orbit)
        if mult == 1:
            generators.append(orbit[0])
            units.append(orbit[0])
        else:
            joined = ",".join(orbit)
            for k in range(1, mult + 1):
                generators.append(f"e{k}({joined})")
            units.append(f"e{mult}({joined})")
    return InvariantRingPresentation(
        tuple(variables), tuple(orbits), tuple(generators), tuple(units)
    )


def _enumerate_classes(block: BlockSpec, bound: int) -> list[InertialClass]:
    """All inertial classes of total degree block.n over the block's lines.

    A class is a multiset of (line, length) choices; representatives anchor
    every segment at start twist 0.
    """
    items: list[tuple[CuspidalLabel, int]] = []
    for line in sorted(block.lines, key=lambda l: (l.line_id, l.dim)):
        base = line.base()
        for length in range(1, block.n // line.dim + 1):
            items.append((base, length))
    out: list[InertialClass] = []

    def rec(idx: int, remaining: int, acc: list[Segment]) -> None:
        if remaining == 0:
            out.append(inertial_class(Multisegment(tuple(acc))))
            if len(out) > bound:
                raise BudgetExceededError(f"component enumeration bound {bound} exceeded")
            return
        if idx == len(items):
            return
        line, length = items[idx]
        d = line.dim * length
        copies = 0
        while copies * d <= remaining:
            rec(idx + 1, remaining - copies * d, acc)
            acc.append(Segment(line, 0, length - 1))
            copies += 1
        del acc[len(acc) - copies :]

    rec(0, block.n, [])
    return sorted(out, key=lambda c: str(c.representative))


def components(block: BlockSpec, lam: Partition, bound: Optional[int] = None) -> StratumReport:
    """Inertial components of the stratum lam over the block, with rings."""
    if lam.weight != block.n:
        raise WeightMismatchError("incomparable weights")
    if not block.infinite_period:
        raise WraparoundError("component enumeration undefined with wraparound")
    limit = bound if bound is not None else (block.support_budget or DEFAULT_COMPONENT_BOUND)
    matched = [
        c for c in _enumerate_classes(block, limit) if lambda_of(c.representative) == lam
    ]
    return StratumReport(
        lam, tuple((c, ring_presentation(c)) for c in matched)
    )


def point_to_multisegment(
    cls: InertialClass, tokens: Sequence[Optional[int]]
) -> Multisegment:
    """Twist each representative segment by its integer token.

    Tokens follow the variable order of ring_presentation (orbit by orbit);
    assignments differing by a permutation within an orbit give equal
    multisegments.
    """
    expanded: list[Segment] = []
    for seg, mult in cls.distinct_segments():
        expanded.extend([seg] * mult)
    if len(tokens) != len(expanded):
        raise ShapeError(
            f"expected {len(expanded)} tokens, got {len(tokens)}"
        )
    shifted = []
    for seg, tok in zip(expanded, tokens):
        if tok is None:
            raise ShapeError("missing twist token")
        shifted.append(seg.shifted(tok))
    return Multisegment(tuple(shifted))


def multisegment_to_orbit(
    m: Multisegment,
) -> tuple[InertialClass, frozenset[tuple[int, ...]]]:
    """Recover the inertial class and the symmetric-group orbit of twist tokens."""
    if not m.infinite_period:
        raise WraparoundError("bijection undefined with wraparound")
    cls = inertial_class(m)
    per_orbit_shifts: list[list[int]] = []
    for rep, _ in cls.distinct_segments():
        shifts = sorted(
            s.a - rep.a
            for s in m.segments
            if s.cuspidal.base() == rep.cuspidal.base() and s.length == rep.length
        )
        per_orbit_shifts.append(shifts)
    orbit: set[tuple[int, ...]] = set()
    perms_per_orbit = [
        sorted(set(itertools.permutations(shifts))) for shifts in per_orbit_shifts
    ]
    for combo in itertools.product(*perms_per_orbit):
        orbit.add(tuple(itertools.chain.from_iterable(combo)))
    return cls, frozenset(orbit)


def tangent_dim(m: Multisegment) -> int:
    """Number of segments, with multiplicity."""
    return len(m)


def ext_dimensions(arg: Union[Multisegment, int]) -> list[int]:
    """Binomial dimensions [C(r,0), ..., C(r,r)] of the exterior algebra on r
    generators, r being the segment count."""
    r = arg if isinstance(arg, int) else tangent_dim(arg)
    if r < 0:
        raise ShapeError("r must be nonnegative")
    return [math.comb(r, i) for i in range(r + 1)]
