"""Shared result types and the uniform bound-query front door.

Every computed bound carries a status (Exact / UpperBound / Interval), an
optional extremal witness spline with the point where the value is attained,
and a provenance tag naming the formula or method that produced it.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .pwpoly import PiecewisePoly

EXACT = "Exact"
UPPER_BOUND = "UpperBound"
INTERVAL = "Interval"


@dataclass(frozen=True)
class Segment:
    T: float

    def __post_init__(self):
        if not self.T > 0:
            raise ValueError(f"segment length must be positive, got {self.T}")


class _HalfLineType:
    def __repr__(self) -> str:
        return "HalfLine"


class _FullLineType:
    def __repr__(self) -> str:
        return "FullLine"


HalfLine = _HalfLineType()
FullLine = _FullLineType()

Domain = Union[Segment, _HalfLineType, _FullLineType]


@dataclass(frozen=True)
class BoundQuery:
    n: int
    k: int
    a: float
    b: float
    domain: Domain

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("order n must be >= 2")
        if not 0 <= self.k <= self.n:
            raise ValueError(f"need 0 <= k <= n, got k={self.k}")
        if not (self.a > 0 and self.b > 0):
            raise ValueError("bounds a and b must be positive")


@dataclass(frozen=True)
class BoundResult:
    value: float
    status: str  # EXACT | UPPER_BOUND | INTERVAL
    provenance: str
    lo: Optional[float] = None
    hi: Optional[float] = None
    witness: Optional[PiecewisePoly] = None
    witness_point: Optional[float] = None

    def as_dict(self) -> dict:
        out = {"value": self.value, "status": self.status, "provenance": self.provenance}
        if self.status == INTERVAL:
            out["lo"] = self.lo
            out["hi"] = self.hi
        if self.witness is not None:
            out["witness"] = self.witness.to_json_dict()
            out["witness_point"] = self.witness_point
        return out


def compute_bound(query: BoundQuery) -> BoundResult:
    """Route a (n, k, a, b, domain) query to the sharpest applicable result:
    closed forms for n = 2 and the whole line, the n = 3 segment/half-line
    formulas, half-line brackets, and certificate upper bounds otherwise."""
    from . import landau2, landaun, peano

    n, k, a, b, dom = query.n, query.k, query.a, query.b, query.domain

    if isinstance(dom, _FullLineType):
        value = landaun.kolmogorov_bound(n, k, a, b)
        witness = landau2.whole_line_witness(a, b) if (n, k) == (2, 1) else None
        point = landau2.whole_line_witness_point(a, b) if (n, k) == (2, 1) else None
        return BoundResult(value, EXACT, "kolmogorov-whole-line", witness=witness, witness_point=point)

    if isinstance(dom, _HalfLineType):
        if n == 2 and k == 1:
            return landau2.sigma_inf(a, b, HalfLine)
        if n == 3 and k in (1, 2):
            sato = landaun.sato_segment(k, a, b, landaun.sato_t0(a, b))
            return BoundResult(sato.value_for(k), EXACT, "sato-half-line")
        bracket = landaun.cnk_bracket(n, k)
        scale = a ** (1 - k / n) * b ** (k / n)
        return BoundResult(
            bracket.upper * scale,
            UPPER_BOUND,
            f"half-line-bracket({bracket.upper_source})",
        )

    T = dom.T
    if n == 2 and k == 1:
        return landau2.sigma_inf(a, b, Segment(T))
    if n == 3 and k in (1, 2):
        sato = landaun.sato_segment(k, a, b, T)
        return BoundResult(sato.value_for(k), EXACT, f"sato-segment-{sato.regime}")
    cert = peano.vandermonde_certificate(n, k)
    return BoundResult(cert.segment_bound(a, b, T), UPPER_BOUND, "vandermonde-certificate")
