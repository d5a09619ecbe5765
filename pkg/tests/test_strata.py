import itertools

import pytest

from strata_kit import (
    BlockSpec,
    CuspidalLabel,
    Multisegment,
    Partition,
    ShapeError,
    WeightMismatchError,
    WraparoundError,
    classification_partition,
    components,
    enumerate_partitions,
    ext_dimensions,
    in_stratum,
    inertial_class,
    lambda_of,
    multisegment_to_orbit,
    point_to_multisegment,
    ring_presentation,
    tangent_dim,
)

from conftest import mseg, seg


class TestInStratum:
    def test_examples(self):
        assert in_stratum(mseg((0, 0), (1, 1)), Partition.of(2)) == "equal"
        assert in_stratum(mseg((0, 1)), Partition.of(2)) == "strictly_below"
        assert (
            in_stratum(mseg((0, 0), (1, 1)), Partition.of(1, 1))
            == "above_or_incomparable"
        )

    def test_weight_mismatch(self):
        with pytest.raises(WeightMismatchError):
            in_stratum(mseg((0, 1)), Partition.of(3))

    def test_finite_period_allowed(self):
        m = Multisegment.of(seg(0, 1, period=2))
        assert in_stratum(m, Partition.of(1, 1)) == "equal"


class TestClassificationPartition:
    def test_examples(self):
        assert classification_partition(mseg((0, 1))) == Partition.of(1, 1)
        assert classification_partition(mseg((0, 0), (1, 1))) == Partition.of(2)
        m = Multisegment.of(seg(0, 2, dim=2))
        assert classification_partition(m) == Partition.of(2, 2, 2)

    def test_equals_lambda_mixed_dims(self):
        pool = [seg(a, b) for a in range(2) for b in range(a, 3)] + [
            seg(a, b, line_id="s", dim=2) for a in range(2) for b in range(a, 2)
        ]
        for r in range(4):
            for combo in itertools.combinations_with_replacement(pool, r):
                m = Multisegment.of(*combo)
                assert classification_partition(m) == lambda_of(m)


class TestRingPresentation:
    def test_repeated_segment(self):
        ring = ring_presentation(inertial_class(mseg((0, 1), (4, 5))))
        assert ring.dimension == 2
        assert ring.orbits == (("X1", "X2"),)
        assert ring.generators == ("e1(X1,X2)", "e2(X1,X2)")
        assert ring.units == ("e2(X1,X2)",)

    def test_single_segment(self):
        ring = ring_presentation(inertial_class(mseg((0, 1))))
        assert ring.dimension == 1
        assert ring.generators == ("X1",)

    def test_mixed(self):
        ring = ring_presentation(inertial_class(mseg((0, 1), (3, 4), (0, 0))))
        assert ring.dimension == 3
        assert ring.orbits == (("X1", "X2"), ("X3",))
        assert ring.generators == ("e1(X1,X2)", "e2(X1,X2)", "X3")

    def test_dimension_matches_tangent(self):
        for m in [mseg((0, 1)), mseg((0, 0), (1, 1), (2, 2)), Multisegment()]:
            cls = inertial_class(m)
            assert ring_presentation(cls).dimension == tangent_dim(m)


class TestComponents:
    def block(self, n, dim=1, period=None):
        return BlockSpec((CuspidalLabel("r", dim, period),), n)

    def test_n2(self):
        rep = components(self.block(2), Partition.of(1, 1))
        assert len(rep.components) == 1
        cls, ring = rep.components[0]
        assert cls.representative == mseg((0, 1))
        assert ring.dimension == 1
        rep = components(self.block(2), Partition.of(2))
        assert len(rep.components) == 1
        cls, ring = rep.components[0]
        assert cls.representative == mseg((0, 0), (0, 0))
        assert ring.dimension == 2
        assert ring.orbits == (("X1", "X2"),)

    def test_n3_hook(self):
        rep = components(self.block(3), Partition.of(2, 1))
        assert len(rep.components) == 1
        cls, ring = rep.components[0]
        assert cls.representative == mseg((0, 1), (0, 0))
        assert ring.dimension == 2
        assert cls.weyl_order() == 1

    def test_partition_of_classes(self):
        n = 4
        all_reps = []
        for lam in enumerate_partitions(n):
            for cls, _ in components(self.block(n), lam).components:
                assert lambda_of(cls.representative) == lam
                all_reps.append(cls.representative)
        assert len(all_reps) == len(set(all_reps)) == 5

    def test_weight_mismatch(self):
        with pytest.raises(WeightMismatchError):
            components(self.block(2), Partition.of(3))

    def test_finite_period_rejected(self):
        with pytest.raises(WraparoundError):
            components(self.block(2, period=3), Partition.of(2))

    def test_report_json_shape(self):
        rep = components(self.block(2), Partition.of(2))
        data = rep.to_json()
        assert data["lambda"] == [2]
        assert data["components"][0]["ring"]["dimension"] == 2
        assert set(data["components"][0]) == {"class", "ring"}


class TestBijection:
    def test_identity_tokens(self):
        cls = inertial_class(mseg((0, 1), (0, 0)))
        assert point_to_multisegment(cls, (0, 0)) == cls.representative

    def test_orbit_equal_tokens(self):
        cls = inertial_class(mseg((0, 0), (0, 0)))
        assert point_to_multisegment(cls, (2, 5)) == point_to_multisegment(cls, (5, 2))
        assert point_to_multisegment(cls, (0, 1)) == mseg((0, 0), (1, 1))

    def test_orbit_example(self):
        cls, orbit = multisegment_to_orbit(mseg((0, 0), (1, 1)))
        assert cls == inertial_class(mseg((0, 0), (0, 0)))
        assert orbit == frozenset({(0, 1), (1, 0)})
        cls, orbit = multisegment_to_orbit(mseg((0, 1), (3, 4)))
        assert orbit == frozenset({(0, 3), (3, 0)})

    def test_round_trip_small(self):
        for lengths in [(1,), (2,), (1, 1), (2, 1), (2, 2), (1, 1, 2), (1, 1, 1, 1)]:
            rep = Multisegment.of(*(seg(0, l - 1) for l in lengths))
            cls = inertial_class(rep)
            r = tangent_dim(rep)
            for tokens in itertools.product(range(4), repeat=r):
                m = point_to_multisegment(cls, tokens)
                cls2, orbit = multisegment_to_orbit(m)
                assert cls2 == cls
                assert tokens in orbit
                for other in orbit:
                    assert point_to_multisegment(cls, other) == m

    def test_token_errors(self):
        cls = inertial_class(mseg((0, 0), (0, 0)))
        with pytest.raises(ShapeError):
            point_to_multisegment(cls, (0,))
        with pytest.raises(ShapeError):
            point_to_multisegment(cls, (0, None))


class TestTangentAndExt:
    def test_tangent(self):
        assert tangent_dim(mseg((0, 1))) == 1
        assert tangent_dim(mseg((0, 0), (1, 1))) == 2
        assert tangent_dim(Multisegment()) == 0

    def test_ext(self):
        assert ext_dimensions(3) == [1, 3, 3, 1]
        assert ext_dimensions(0) == [1]
        assert ext_dimensions(5) == [1, 5, 10, 10, 5, 1]
        assert ext_dimensions(mseg((0, 0), (1, 1), (3, 3))) == [1, 3, 3, 1]

    def test_ext_sum(self):
        for r in range(13):
            assert sum(ext_dimensions(r)) == 2**r
