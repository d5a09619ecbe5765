import itertools

import pytest

from strata_kit import (
    DerivativeExpr,
    Multisegment,
    Partition,
    ProductExpr,
    ProductTerm,
    ShapeError,
    SumExpr,
    ZClass,
    check_identity,
    dominance_leq,
    highest_derivative_of_product,
    lambda_of,
    lemcomp_derivative,
    relate,
    resolve_pair,
    total_derivative,
    weirdcase_constituents,
)
from strata_kit.cli import parse_expression

from conftest import mseg, seg


def term_of(*pairs):
    return tuple(sorted((mseg(p) for p in pairs), key=str))


class TestTotalDerivative:
    def test_single_segment(self):
        gv = total_derivative(ProductTerm.of(seg(0, 1)))
        assert gv.layer(0) == {(mseg((0, 1)),): 1}
        assert gv.layer(1) == {(mseg((0, 0)),): 1}
        assert gv.degrees() == [0, 1]

    def test_cuspidal(self):
        gv = total_derivative(ProductTerm.of(seg(0, 0)))
        assert gv.layer(1) == {(): 1}

    def test_leibniz_pair(self):
        gv = total_derivative(ProductTerm.of(seg(0, 1), seg(0, 0)))
        assert gv.layer(0) == {term_of((0, 1), (0, 0)): 1}
        assert gv.layer(1) == {term_of((0, 0), (0, 0)): 1, (mseg((0, 1)),): 1}
        assert gv.layer(2) == {(mseg((0, 0)),): 1}

    def test_dim_scaling(self):
        gv = total_derivative(ProductTerm.of(seg(0, 1, dim=2)))
        assert gv.degrees() == [0, 2]

    def test_top_degree_is_lambda_one(self):
        pool = [seg(a, b) for a in range(3) for b in range(a, 3)]
        for r in range(1, 4):
            for combo in itertools.combinations_with_replacement(pool, r):
                m = Multisegment.of(*combo)
                gv = total_derivative(ProductTerm(tuple(combo)))
                assert gv.top_degree() == lambda_of(m).part(1)
                assert len(gv.layer(gv.top_degree())) == 1
                assert list(gv.layer(gv.top_degree()).values()) == [1]

    def test_iterated_tops_reproduce_lambda(self):
        factors = (seg(0, 2), seg(1, 1), seg(0, 1))
        m = Multisegment.of(*factors)
        parts = []
        current = list(factors)
        while current:
            gv = total_derivative(ProductTerm(tuple(current)))
            top = gv.top_degree()
            parts.append(top)
            (term,) = gv.layer(top)
            current = [s for atom in term for s in atom.segments]
        assert Partition(tuple(parts)) == lambda_of(m)


class TestHighestDerivative:
    def test_examples(self):
        assert highest_derivative_of_product(mseg((0, 1), (0, 0))) == (
            Partition.of(2, 1),
            mseg((0, 0)),
        )
        assert highest_derivative_of_product(mseg((0, 0))) == (
            Partition.of(1),
            Multisegment(),
        )
        m = Multisegment.of(seg(0, 2, dim=2))
        assert highest_derivative_of_product(m) == (
            Partition.of(2, 2, 2),
            Multisegment.of(seg(0, 1, dim=2)),
        )

    def test_iteration_exhausts(self):
        m = mseg((0, 2), (1, 1), (3, 4))
        lam = lambda_of(m)
        for _ in range(lam.length):
            _, m = highest_derivative_of_product(m)
        assert m == Multisegment()


class TestResolvePair:
    def test_examples(self):
        assert resolve_pair(seg(1, 1), seg(0, 0)) == [mseg((1, 1), (0, 0)), mseg((0, 1))]
        assert resolve_pair(seg(2, 3), seg(0, 1)) == [mseg((2, 3), (0, 1)), mseg((0, 3))]
        assert resolve_pair(seg(1, 2), seg(0, 0)) == [mseg((1, 2), (0, 0)), mseg((0, 2))]

    def test_precondition(self):
        with pytest.raises(ShapeError, match="not a juxtaposed preceding pair"):
            resolve_pair(seg(0, 0), seg(1, 1))
        with pytest.raises(ShapeError, match="not a juxtaposed preceding pair"):
            resolve_pair(seg(1, 3), seg(0, 2))

    def test_lambda_comparison(self):
        for d1, d2 in [(seg(1, 1), seg(0, 0)), (seg(2, 3), seg(0, 1))]:
            pair, union = resolve_pair(d1, d2)
            assert dominance_leq(lambda_of(union), lambda_of(pair))
            assert lambda_of(union) != lambda_of(pair)


class TestLemcomp:
    def test_examples(self):
        assert lemcomp_derivative(seg(2, 2), seg(0, 1)) == mseg((2, 2), (0, 0))
        assert lemcomp_derivative(seg(1, 1), seg(0, 0)) == mseg((1, 1))
        assert lemcomp_derivative(seg(3, 3), seg(0, 2)) == mseg((3, 3), (0, 1))

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            lemcomp_derivative(seg(3, 3), seg(0, 1))
        with pytest.raises(ShapeError):
            lemcomp_derivative(seg(2, 3), seg(0, 1))


class TestWeirdcase:
    def test_examples(self):
        assert weirdcase_constituents(1, seg(0, 0)) == [
            mseg((2, 2), (1, 1), (0, 0)),
            mseg((1, 2), (0, 0)),
        ]
        assert weirdcase_constituents(2, seg(0, 1)) == [
            mseg((3, 3), (2, 2), (0, 1)),
            mseg((2, 3), (0, 1)),
        ]

    def test_degree_conserved(self):
        for alpha in range(1, 5):
            delta = seg(0, alpha - 1, dim=1)
            for m in weirdcase_constituents(alpha, delta):
                assert sum(s.degree for s in m.segments) == delta.degree + 2

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            weirdcase_constituents(2, seg(0, 0))


class TestCheckIdentity:
    def check(self, lhs, rhs):
        return str(check_identity(parse_expression(lhs), parse_expression(rhs)))

    def test_resolve_identity(self):
        assert self.check("Z[1,1]*Z[0,0]", "Z{[1,1],[0,0]} + Z{[0,1]}") == "verified"
        assert self.check("Z{[1,1],[0,0]} + Z{[0,1]}", "Z[1,1]*Z[0,0]") == "verified"

    def test_unlinked_merge(self):
        assert self.check("Z[0,0]*Z[3,4]", "Z{[0,0],[3,4]}") == "verified"
        assert self.check("Z[0,0]*Z[0,0;s]", "Z{[0,0],[0,0;s]}") == "verified"

    def test_refuted(self):
        v = check_identity(parse_expression("Z[0,0]"), parse_expression("Z[1,1]"))
        assert v.status == "refuted"
        assert v.witness_degree == 0
        assert str(v) == "refuted at degree 0"

    def test_unverifiable_product(self):
        v = check_identity(
            parse_expression("Z[0,2]*Z[1,3]"), parse_expression("Z{[0,2],[1,3]}")
        )
        assert v.status == "unverifiable"

    def test_unverifiable_unknown_derivative(self):
        v = check_identity(
            parse_expression("D^1(Z{[0,1],[1,2]})"), parse_expression("Z{[0,1],[1,1]}")
        )
        assert v.status == "unverifiable"

    def test_lemcomp_identity(self):
        for alpha in range(1, 5):
            lhs = DerivativeExpr(
                1, ZClass(mseg((alpha, alpha), (0, alpha - 1)))
            )
            rhs = ZClass(lemcomp_derivative(seg(alpha, alpha), seg(0, alpha - 1)))
            assert check_identity(lhs, rhs).verified

    def test_weirdcase_displays(self):
        for alpha in (1, 2, 3):
            delta = f"[0,{alpha-1}]"
            inner = "" if alpha == 1 else f"[0,{alpha-2}]"
            z_dm = "Z{%s}" % inner
            pi = f"Z[{alpha+1},{alpha+1}]*Z{{[{alpha},{alpha}],{delta}}}"
            mid = f"Z{{[{alpha},{alpha}]" + (f",{inner}}}" if inner else "}")
            assert (
                self.check(
                    f"D^2({pi})", f"{mid} + Z[{alpha+1},{alpha+1}]*{z_dm}"
                )
                == "verified"
            )
            assert (
                self.check(
                    f"D^2(Z{{[{alpha+1},{alpha+1}],[{alpha},{alpha}]}}*Z{{{delta}}})",
                    f"Z{{{delta}}} + Z[{alpha+1},{alpha+1}]*{z_dm}",
                )
                == "verified"
            )
            assert (
                self.check(
                    f"D^1({pi})",
                    f"Z[{alpha+1},{alpha+1}]*{mid} + Z{{[{alpha},{alpha}],{delta}}}",
                )
                == "verified"
            )

    def test_all_juxtaposed_pairs_small_window(self):
        segs = [seg(a, b) for a in range(3) for b in range(a, 3)]
        for d1, d2 in itertools.product(segs, segs):
            rel = relate(d2, d1)
            if not (rel.precedes and rel.juxtaposed):
                continue
            lhs = ProductExpr((ZClass(Multisegment.of(d1)), ZClass(Multisegment.of(d2))))
            rhs = SumExpr(tuple(ZClass(m) for m in resolve_pair(d1, d2)))
            assert check_identity(lhs, rhs).verified

    def test_graded_virtual_sides(self):
        left = total_derivative(ProductTerm.of(seg(0, 1), seg(0, 0)))
        right = total_derivative(ProductTerm.of(seg(0, 0), seg(0, 1)))
        assert check_identity(left, right).verified
