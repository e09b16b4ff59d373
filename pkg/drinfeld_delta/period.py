"""The Carlitz period xi as a ramified series.

xi = (-[1])^(1/(q-1)) * prod_{i >= 1} (1 - [i]/[i+1]),  [i] = t^(q^i) - t.

(-[1])^(1/(q-1)) splits as c * t^(q/(q-1)) times the 1-unit root
(1 - t^(1-q))^(1/(q-1)) = prod_{j >= 0} (1 - t^((1-q) q^j))^(-1), where
c^(q-1) = -1 lives in F_{q^k}. Every factor is a 1-unit, so the product is
truncated once the deviation of the next factor reaches the precision.
"""

from __future__ import annotations

from .apoly import APoly
from .series import RamifiedSeries, SeriesRing, minimal_residue_degree, series_ring


def root_of_minus_one(ring: SeriesRing) -> int:
    """First c in F_{q^k} (integer order) with c^(q-1) = -1."""
    field = ring.field
    minus_one = field.neg(1)
    for c in field.nonzero_elements():
        if field.pow(c, ring.q - 1) == minus_one:
            return c
    raise ValueError(
        f"F_{ring.q}^{ring.k} has no (q-1)-st root of -1; use k = {minimal_residue_degree(ring.q)}"
    )


def xi_ring(q: int, precision: int, m: int | None = None, k: int | None = None) -> SeriesRing:
    m = q - 1 if m is None else m
    if m % (q - 1):
        raise ValueError(f"ramification m={m} must be a multiple of q-1={q - 1}")
    k = minimal_residue_degree(q) if k is None else k
    return series_ring(q, m, k, precision)


def bracket(ring: SeriesRing, i: int) -> APoly:
    field = ring.base_field
    return APoly.monomial(field, 1, ring.q**i) - APoly.t(field)


def xi_factor(ring: SeriesRing, i: int) -> RamifiedSeries:
    """1 - [i]/[i+1], truncated at the ring precision."""
    ratio = ring.from_fraction(bracket(ring, i), bracket(ring, i + 1))
    return (ring.one() - ratio).truncated(ring.prec)


def _leading_monomial(ring: SeriesRing) -> RamifiedSeries:
    q, m = ring.q, ring.m
    return ring.monomial(root_of_minus_one(ring), -m * q // (q - 1))


def _unit_root(ring: SeriesRing) -> RamifiedSeries:
    # (1 - t^(1-q))^(1/(q-1))
    q, m, prec = ring.q, ring.m, ring.prec
    acc = ring.one()
    step = m * (q - 1)
    while step < prec:
        factor = (ring.one() - ring.monomial(1, step)).inverse()
        acc = (acc * factor).truncated(prec)
        step *= q
    return acc


def compute_xi(q: int, precision: int, m: int | None = None, k: int | None = None) -> RamifiedSeries:
    """xi to relative precision ``precision`` in s = t^(-1/m) over F_{q^k}."""
    ring = xi_ring(q, precision, m, k)
    q, m = ring.q, ring.m
    acc = _unit_root(ring)
    i = 1
    while m * (q ** (i + 1) - q**i) < precision:
        acc = (acc * xi_factor(ring, i)).truncated(precision)
        i += 1
    return _leading_monomial(ring) * acc.truncated(precision)


def compute_xi_product_form(q: int, precision: int, m: int | None = None, k: int | None = None) -> RamifiedSeries:
    """The same period from c * t^(q/(q-1)) * prod_{i >= 1} (1 - t^(1-q^i))^(-1)."""
    ring = xi_ring(q, precision, m, k)
    q, m = ring.q, ring.m
    acc = ring.one()
    i = 1
    while m * (q**i - 1) < precision:
        factor = (ring.one() - ring.monomial(1, m * (q**i - 1))).inverse()
        acc = (acc * factor).truncated(precision)
        i += 1
    return _leading_monomial(ring) * acc
