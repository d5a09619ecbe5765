import pytest

from strata_kit import CuspidalLabel, Multisegment, Segment


@pytest.fixture
def line():
    return CuspidalLabel("r")


def seg(a, b, line_id="r", dim=1, period=None):
    return Segment(CuspidalLabel(line_id, dim, period), a, b)


def mseg(*pairs, line_id="r", dim=1, period=None):
    return Multisegment.of(*(seg(a, b, line_id, dim, period) for a, b in pairs))
