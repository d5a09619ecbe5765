"""Graded Grothendieck-group bookkeeping for products of segment classes.

Classes of irreducible representations are written Z(m) for a multisegment
m; the empty multisegment denotes the one-dimensional class of the trivial
group.  A term is a commutative product of such classes; a graded virtual
element assigns an integer combination of terms to each derivative order.
Derivatives follow the Leibniz rule, with each class contributing its
known graded derivative: a single segment has exactly one positive-degree
derivative Z(segment)^(n) = Z(segment minus top twist), and the
singleton-over-segment shape Z({[c,c],[a,c-1]}) has the two extra degrees
established by the composition and juxtaposition lemmas below.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .errors import ShapeError
from .multisegments import Multisegment, lambda_of
from .partitions import Partition
from .segments import EMPTY_SEGMENT, Segment, relate, top_minus, union_and_intersection

# A term is a commutative product of irreducible classes, stored as a
# canonically sorted tuple of atoms; the empty tuple is the trivial class.
Atom = Multisegment
Term = tuple


@dataclass(frozen=True)
class OpaqueDerivative:
    """Placeholder for a derivative component no registered rule computes."""

    source: str
    degree: int

    def __str__(self) -> str:
        return f"?D^{self.degree}({self.source})"


def _sorted_term(atoms) -> Term:
    """Canonical commutative product: drop trivial atoms, sort the rest."""
    kept = [a for a in atoms if isinstance(a, OpaqueDerivative) or len(a) > 0]
    return tuple(sorted(kept, key=str))


def _add_term(acc: dict, term: Term, coeff: int) -> None:
    new = acc.get(term, 0) + coeff
    if new:
        acc[term] = new
    else:
        acc.pop(term, None)


def _term_str(term: Term) -> str:
    if not term:
        return "1"
    return " * ".join(f"Z{a}" for a in term)


@dataclass(frozen=True)
class ProductTerm:
    """An ordered product Z(seg_1) x ... x Z(seg_k) of single-segment classes.

    Order matters only for display; as a Grothendieck-group class the term
    is identified with the multiset of its factors.
    """

    factors: tuple[Segment, ...] = ()

    def __post_init__(self) -> None:
        for f in self.factors:
            if f.is_empty:
                raise ShapeError("product factors must be nonempty segments")

    @classmethod
    def of(cls, *factors: Segment) -> "ProductTerm":
        return cls(tuple(factors))

    def as_term(self) -> Term:
        return _sorted_term(Multisegment.of(f) for f in self.factors)

    @property
    def degree(self) -> int:
        return sum(f.degree for f in self.factors)

    def __str__(self) -> str:
        return _term_str(tuple(Multisegment.of(f) for f in self.factors))


class GradedVirtual:
    """Map from derivative order to an integer combination of terms."""

    def __init__(self, layers: Optional[dict] = None) -> None:
        self.layers: dict[int, dict[Term, int]] = {}
        if layers:
            for g, combo in layers.items():
                for term, coeff in combo.items():
                    self.add(g, term, coeff)

    def add(self, degree: int, term: Term, coeff: int = 1) -> None:
        if coeff == 0:
            return
        layer = self.layers.setdefault(degree, {})
        _add_term(layer, term, coeff)
        if not layer:
            del self.layers[degree]

    def degrees(self) -> list[int]:
        return sorted(self.layers)

    def layer(self, degree: int) -> dict[Term, int]:
        return dict(self.layers.get(degree, {}))

    def top_degree(self) -> int:
        return max(self.layers) if self.layers else 0

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GradedVirtual) and self.layers == other.layers

    def __str__(self) -> str:
        if not self.layers:
            return "0"
        chunks = []
        for g in self.degrees():
            combo = " + ".join(
                (f"{c}*" if c != 1 else "") + _term_str(t)
                for t, c in sorted(self.layers[g].items(), key=lambda kv: _term_str(kv[0]))
            )
            chunks.append(f"deg {g}: {combo}")
        return "; ".join(chunks)


def _lemcomp_shape(atom: Multisegment) -> Optional[tuple[Segment, Segment]]:
    """Match Z({[c,c], [a,c-1]}) on one infinite-period line; return (top, lower)."""
    if len(atom.segments) != 2:
        return None
    top, lower = atom.segments
    if not (top.infinite_period and lower.infinite_period):
        return None
    if not top.same_line(lower):
        return None
    if top.length == 1 and lower.b == top.a - 1:
        return top, lower
    return None


def atom_derivative(atom: Multisegment) -> Optional[dict[int, list[tuple[Term, int]]]]:
    """Complete graded derivative of an irreducible class, or None if unknown.

    Known shapes: the trivial class, single segments, and the
    singleton-over-segment shape handled by the composition lemma.
    """
    segs = atom.segments
    if not segs:
        return {0: [((), 1)]}
    if len(segs) == 1:
        d = segs[0]
        return {
            0: [((atom,), 1)],
            d.dim: [(_sorted_term([Multisegment.of(top_minus(d))]), 1)],
        }
    shape = _lemcomp_shape(atom)
    if shape is not None:
        top, lower = shape
        k = top.dim
        mid = Multisegment.of(top, top_minus(lower))
        bottom = Multisegment.of(top_minus(lower))
        return {
            0: [((atom,), 1)],
            k: [(_sorted_term([mid]), 1)],
            2 * k: [(_sorted_term([bottom]), 1)],
        }
    return None


def term_derivative(term: Term) -> Optional[GradedVirtual]:
    """Leibniz expansion of a product of atoms; None if any factor is unknown."""
    result: dict[int, dict[Term, int]] = {0: {(): 1}}
    for atom in term:
        if isinstance(atom, OpaqueDerivative):
            return None
        table = atom_derivative(atom)
        if table is None:
            return None
        nxt: dict[int, dict[Term, int]] = {}
        for g1, combo in result.items():
            for t1, c1 in combo.items():
                for g2, pieces in table.items():
                    for t2, c2 in pieces:
                        layer = nxt.setdefault(g1 + g2, {})
                        _add_term(layer, _sorted_term(t1 + t2), c1 * c2)
        result = nxt
    return GradedVirtual(result)


def total_derivative(t: ProductTerm) -> GradedVirtual:
    """All graded derivative components of a product of single-segment classes."""
    out = term_derivative(t.as_term())
    assert out is not None  # single-segment factors always have known derivatives
    return out


def highest_derivative_of_product(m: Multisegment) -> tuple[Partition, Multisegment]:
    """(highest derivative partition, the multisegment with every top twist removed)."""
    truncated = Multisegment(tuple(s for s in (top_minus(d) for d in m.segments) if not s.is_empty))  # type: ignore[arg-type]
    return lambda_of(m), truncated


def resolve_pair(d1: Segment, d2: Segment) -> list[Multisegment]:
    """Constituents [Z({d1,d2}), Z({d2 union d1})] of Z(d1) x Z(d2).

    Requires d2 to precede d1 with the pair juxtaposed (the two-constituent
    short exact sequence case).
    """
    rel = relate(d2, d1)
    if not (rel.precedes and rel.juxtaposed):
        raise ShapeError("not a juxtaposed preceding pair")
    union, _ = union_and_intersection(d1, d2)
    return [Multisegment.of(d1, d2), Multisegment.of(union)]


def lemcomp_derivative(rho_top: Segment, delta: Segment) -> Multisegment:
    """Degree-k derivative of Z({[c,c], delta}): replace delta by its top truncation."""
    if rho_top.is_empty or delta.is_empty:
        raise ShapeError("expected nonempty segments")
    if not (
        rho_top.length == 1
        and rho_top.same_line(delta)
        and rho_top.a == delta.b + 1
    ):
        raise ShapeError("expected a singleton just above the segment's end")
    return Multisegment.of(rho_top, top_minus(delta))


def weirdcase_constituents(alpha: int, delta: Segment) -> list[Multisegment]:
    """Constituents of Z([a+1,a+1]-singleton at alpha+1) x Z({[alpha,alpha], delta}).

    For delta = [0, alpha-1] the two constituents are
    {[alpha+1,alpha+1], [alpha,alpha], delta} and {[alpha,alpha+1], delta}.
    """
    if delta.is_empty or delta.a != 0 or delta.b != alpha - 1:
        raise ShapeError("expected the segment [0, alpha-1]")
    line = delta.cuspidal
    s_mid = Segment(line, alpha, alpha)
    s_top = Segment(line, alpha + 1, alpha + 1)
    s_pair = Segment(line, alpha, alpha + 1)
    return [Multisegment.of(s_top, s_mid, delta), Multisegment.of(s_pair, delta)]


# --------------------------------------------------------------------------
# Expression trees and the identity checker
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ZClass:
    """The class Z(m) of the irreducible with multisegment m."""

    mseg: Multisegment


@dataclass(frozen=True)
class ProductExpr:
    factors: tuple


@dataclass(frozen=True)
class SumExpr:
    terms: tuple


@dataclass(frozen=True)
class DerivativeExpr:
    """The degree-g derivative component of the inner expression."""

    degree: int
    inner: object


Expr = Union[ZClass, ProductExpr, SumExpr, DerivativeExpr]


def evaluate(expr: Expr) -> dict[Term, int]:
    """Evaluate an expression to an integer combination of terms.

    Derivative nodes of unknown classes produce opaque placeholder atoms,
    which later force an "unverifiable" verdict rather than a guess.
    """
    if isinstance(expr, ZClass):
        return {_sorted_term([expr.mseg]): 1}
    if isinstance(expr, SumExpr):
        acc: dict[Term, int] = {}
        for sub in expr.terms:
            for term, coeff in evaluate(sub).items():
                _add_term(acc, term, coeff)
        return acc
    if isinstance(expr, ProductExpr):
        acc = {(): 1}
        for sub in expr.factors:
            nxt: dict[Term, int] = {}
            for t1, c1 in acc.items():
                for t2, c2 in evaluate(sub).items():
                    _add_term(nxt, _sorted_term(t1 + t2), c1 * c2)
            acc = nxt
        return acc
    if isinstance(expr, DerivativeExpr):
        acc = {}
        for term, coeff in evaluate(expr.inner).items():
            if expr.degree == 0:
                _add_term(acc, term, coeff)
                continue
            graded = term_derivative(term)
            if graded is None:
                marker = OpaqueDerivative(_term_str(term), expr.degree)
                _add_term(acc, (marker,), coeff)
                continue
            for t2, c2 in graded.layer(expr.degree).items():
                _add_term(acc, t2, coeff * c2)
        return acc
    raise ShapeError(f"not an expression node: {expr!r}")


def _try_rewrite_pair(a1: Multisegment, a2: Multisegment):
    """One rewriting step on a product of two classes, or None.

    Rules: merge pairwise-unlinked classes into one; split a juxtaposed
    preceding pair of single segments into its two constituents; split a
    singleton times a singleton-over-segment class into its two
    constituents.  Each returns a list of (atoms, coeff) replacements.
    """
    if all(
        not relate(s1, s2).linked and s1.infinite_period
        for s1 in a1.segments
        for s2 in a2.segments
    ):
        return [([a1.union(a2)], 1)]
    if len(a1) == 1 and len(a2) == 1:
        s1, s2 = a1.segments[0], a2.segments[0]
        rel = relate(s2, s1)
        if rel.juxtaposed and rel.precedes:
            return [([m], 1) for m in resolve_pair(s1, s2)]
        if rel.juxtaposed and rel.preceded_by:
            return [([m], 1) for m in resolve_pair(s2, s1)]
    for single, other in ((a1, a2), (a2, a1)):
        if len(single) != 1:
            continue
        s = single.segments[0]
        shape = _lemcomp_shape(other)
        if shape is None:
            continue
        top, lower = shape
        if s.length == 1 and s.same_line(top) and s.a == top.a + 1:
            pair = Segment(s.cuspidal, top.a, s.a)
            return [
                ([Multisegment.of(s, top, lower)], 1),
                ([Multisegment.of(pair, lower)], 1),
            ]
    return None


def normalize(combo: dict[Term, int], max_steps: int = 10000) -> dict[Term, int]:
    """Exhaustively apply the registered rewriting rules to every product term."""
    current = dict(combo)
    for _ in range(max_steps):
        changed = False
        nxt: dict[Term, int] = {}
        for term, coeff in current.items():
            atoms = list(term)
            rewritten = None
            spot = None
            if all(isinstance(a, Multisegment) for a in atoms):
                for i in range(len(atoms)):
                    for j in range(i + 1, len(atoms)):
                        rewritten = _try_rewrite_pair(atoms[i], atoms[j])
                        if rewritten is not None:
                            spot = (i, j)
                            break
                    if rewritten is not None:
                        break
            if rewritten is None:
                _add_term(nxt, term, coeff)
                continue
            changed = True
            i, j = spot  # type: ignore[misc]
            rest = [a for k, a in enumerate(atoms) if k not in (i, j)]
            for new_atoms, c in rewritten:
                _add_term(nxt, _sorted_term(rest + list(new_atoms)), coeff * c)
        current = nxt
        if not changed:
            return current
    raise ShapeError("rewriting did not terminate within the step budget")


@dataclass(frozen=True)
class Verdict:
    """Outcome of an identity check: verified, unverifiable, or refuted."""

    status: str
    reason: str = ""
    witness_degree: Optional[int] = None

    @property
    def verified(self) -> bool:
        return self.status == "verified"

    def __str__(self) -> str:
        if self.status == "verified":
            return "verified"
        if self.status == "unverifiable":
            return f"unverifiable: {self.reason}"
        return f"refuted at degree {self.witness_degree}"


def _to_graded(side) -> GradedVirtual:
    if isinstance(side, GradedVirtual):
        return side
    if isinstance(side, ProductTerm):
        return GradedVirtual({0: {side.as_term(): 1}})
    if isinstance(side, Multisegment):
        return GradedVirtual({0: {_sorted_term([side]): 1}})
    return GradedVirtual({0: evaluate(side)})


def check_identity(lhs, rhs) -> Verdict:
    """Compare two sides after exhaustive rewriting; never guesses.

    Sides may be expression trees, graded virtual elements, product terms,
    or multisegments.  The result is "verified" when the normal forms agree
    in every degree, "refuted" at the lowest disagreeing degree, and
    "unverifiable" when the disagreement involves a product no registered
    rule decomposes.
    """
    left, right = _to_graded(lhs), _to_graded(rhs)
    diff: dict[int, dict[Term, int]] = {}
    for g in set(left.degrees()) | set(right.degrees()):
        layer: dict[Term, int] = {}
        for term, coeff in normalize(left.layer(g)).items():
            _add_term(layer, term, coeff)
        for term, coeff in normalize(right.layer(g)).items():
            _add_term(layer, term, -coeff)
        if layer:
            diff[g] = layer
    if not diff:
        return Verdict("verified")
    for g in sorted(diff):
        for term in diff[g]:
            if len(term) > 1 or any(isinstance(a, OpaqueDerivative) for a in term):
                return Verdict(
                    "unverifiable",
                    reason=f"undecomposed product remains at degree {g}: {_term_str(term)}",
                )
    return Verdict("refuted", witness_degree=min(diff))
