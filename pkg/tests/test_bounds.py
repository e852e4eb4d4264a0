import math

import pytest

from landaukol.bounds import (
    EXACT,
    UPPER_BOUND,
    BoundQuery,
    FullLine,
    HalfLine,
    Segment,
    compute_bound,
)

SQRT2 = math.sqrt(2.0)


def test_full_line_routing():
    res = compute_bound(BoundQuery(2, 1, 1, 1, FullLine))
    assert res.status == EXACT
    assert res.value == pytest.approx(SQRT2, abs=1e-12)
    assert res.witness is not None
    res3 = compute_bound(BoundQuery(3, 1, 1, 1, FullLine))
    assert res3.value == pytest.approx((9 / 8) ** (1 / 3), abs=1e-12)


def test_half_line_routing():
    assert compute_bound(BoundQuery(2, 1, 1, 1, HalfLine)).value == pytest.approx(2.0, abs=1e-12)
    res = compute_bound(BoundQuery(3, 2, 1, 1, HalfLine))
    assert res.status == EXACT
    assert res.value == pytest.approx(2 * 3 ** (1 / 3), abs=1e-12)
    res5 = compute_bound(BoundQuery(5, 2, 1, 1, HalfLine))
    assert res5.status == UPPER_BOUND
    assert res5.value >= compute_bound(BoundQuery(5, 2, 1, 1, FullLine)).value - 1e-9


def test_segment_routing():
    res = compute_bound(BoundQuery(2, 1, 1, 1, Segment(1.0)))
    assert res.value == pytest.approx(2.5, abs=1e-12)
    res3 = compute_bound(BoundQuery(3, 1, 1, 1, Segment(100.0)))
    assert res3.value == pytest.approx(3 ** (5 / 3) / 2, abs=1e-12)
    res4 = compute_bound(BoundQuery(4, 2, 1, 1, Segment(3.0)))
    assert res4.status == UPPER_BOUND
    # the certificate dominates the sharp whole-line value
    assert res4.value >= compute_bound(BoundQuery(4, 2, 1, 1, FullLine)).value


def test_query_validation():
    with pytest.raises(ValueError):
        BoundQuery(1, 1, 1, 1, FullLine)
    with pytest.raises(ValueError):
        BoundQuery(2, 3, 1, 1, FullLine)
    with pytest.raises(ValueError):
        BoundQuery(2, 1, -1, 1, FullLine)
    with pytest.raises(ValueError):
        Segment(0.0)
