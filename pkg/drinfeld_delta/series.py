"""Truncated Laurent series in s = t^(-1/m) over F_{q^k}.

A RamifiedSeries is sum_{j >= v} c_j s^j known modulo s^prec (absolute
precision). ``prec is None`` marks an exact element (a finite sum, such as the
image of a rational function with monomial denominator or of an element of A).
The absolute value is |s| = q^(-1/m), so |x| = q^(-v/m).

Precision rules: sums keep the smaller absolute precision; products keep the
smaller relative precision; the inverse keeps relative precision; p-th powers
multiply valuation and absolute precision by p (exact in characteristic p).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Sequence

from .apoly import APoly
from .errors import InverseOfZeroError, PrecisionLossError
from .galois import GaloisField, embedding, galois_field, prime_power_decomposition


def minimal_residue_degree(q: int) -> int:
    """Smallest k such that F_{q^k} contains a (q-1)-st root of -1."""
    p, e = prime_power_decomposition(q)
    k = 1
    while True:
        field = galois_field(p, e * k)
        minus_one = field.neg(1)
        if any(field.pow(c, q - 1) == minus_one for c in field.nonzero_elements()):
            return k
        k += 1


class SeriesRing:
    """Parent of RamifiedSeries: base field F_q, coefficient field F_{q^k}, ramification m."""

    def __init__(self, q: int, m: int, k: int = 1, prec: int = 100) -> None:
        if m < 1:
            raise ValueError(f"ramification m must be >= 1, got {m}")
        if k < 1:
            raise ValueError(f"residue degree k must be >= 1, got {k}")
        if prec < 1:
            raise ValueError(f"precision must be >= 1, got {prec}")
        self.q = q
        self.p, self.e = prime_power_decomposition(q)
        self.m = m
        self.k = k
        self.prec = prec
        self.base_field: GaloisField = galois_field(self.p, self.e)
        self.field: GaloisField = galois_field(self.p, self.e * k)
        self._embed = embedding(self.base_field, self.field)

    def __repr__(self) -> str:
        return f"SeriesRing(q={self.q}, m={self.m}, k={self.k}, prec={self.prec})"

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.q, self.m, self.k)

    def embed(self, c: int) -> int:
        """Image of an element of F_q in F_{q^k}."""
        return self._embed[c]

    def zero(self) -> RamifiedSeries:
        return RamifiedSeries(self, 0, (), None)

    def one(self) -> RamifiedSeries:
        return RamifiedSeries(self, 0, (1,), None)

    def monomial(self, c: int, exponent: int) -> RamifiedSeries:
        """Exact c * s^exponent with c in F_{q^k}."""
        if not c:
            return self.zero()
        return RamifiedSeries(self, exponent, (c,), None)

    def s(self) -> RamifiedSeries:
        return self.monomial(1, 1)

    def t(self) -> RamifiedSeries:
        return self.monomial(1, -self.m)

    def from_apoly(self, a: APoly) -> RamifiedSeries:
        """sum a_j t^j = sum a_j s^(-m j), exact."""
        if a.is_zero():
            return self.zero()
        m = self.m
        coeffs = [0] * (m * a.degree + 1)
        for j, c in enumerate(a.coeffs):
            coeffs[m * (a.degree - j)] = self.embed(c)
        return make_series(self, -m * a.degree, coeffs, None)

    def from_fraction(self, num: APoly, den: APoly) -> RamifiedSeries:
        return self.from_apoly(num) * self.from_apoly(den).inverse()

    def from_coefficients(self, valuation: int, coeffs: Sequence[int], prec: int | None) -> RamifiedSeries:
        return make_series(self, valuation, list(coeffs), prec)

    def refine(self, other: SeriesRing) -> SeriesRing:
        """Common refinement: lcm of the ramification indices, larger default precision."""
        if (self.q, self.k) != (other.q, other.k):
            raise ValueError(f"{self!r} and {other!r} have no common refinement")
        return series_ring(self.q, lcm(self.m, other.m), self.k, max(self.prec, other.prec))


@lru_cache(maxsize=None)
def series_ring(q: int, m: int, k: int = 1, prec: int = 100) -> SeriesRing:
    return SeriesRing(q, m, k, prec)


def make_series(ring: SeriesRing, valuation: int, coeffs: list[int], prec: int | None) -> RamifiedSeries:
    """Normalize a coefficient list starting at s^valuation."""
    start = 0
    n = len(coeffs)
    while start < n and not coeffs[start]:
        start += 1
    valuation += start
    end = n
    if prec is not None:
        end = min(end, start + max(prec - valuation, 0))
    while end > start and not coeffs[end - 1]:
        end -= 1
    if end <= start:
        return RamifiedSeries(ring, prec if prec is not None else 0, (), prec)
    return RamifiedSeries(ring, valuation, tuple(coeffs[start:end]), prec)


def _reciprocal(field: GaloisField, c: Sequence[int], n: int) -> list[int]:
    """First n coefficients of 1/c by Newton iteration b <- b(2 - cb)."""
    b = [field.inv(c[0])]
    two = field.from_int(2)
    length = 1
    while length < n:
        length = min(2 * length, n)
        e = [field.neg(x) for x in field.convolve(c, b, length)]
        e[0] = field.add(e[0], two)
        b = field.convolve(b, e, length)
    return b


def _min_prec(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


@dataclass(frozen=True, slots=True)
class RamifiedSeries:
    ring: SeriesRing
    valuation: int
    coeffs: tuple[int, ...]
    prec: int | None = None

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        """True when zero at tracked precision (or exactly zero)."""
        return not self.coeffs

    def is_exact(self) -> bool:
        return self.prec is None

    @property
    def relative_precision(self) -> int | None:
        if self.prec is None:
            return None
        return self.prec - self.valuation

    @property
    def end(self) -> int:
        return self.valuation + len(self.coeffs)

    def coefficient(self, exponent: int) -> int:
        i = exponent - self.valuation
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def log_abs(self) -> Fraction:
        """log_q |x|."""
        if self.is_zero():
            raise ValueError("log of zero")
        return Fraction(-self.valuation, self.ring.m)

    def zero_like(self) -> RamifiedSeries:
        return self.ring.zero()

    def one_like(self) -> RamifiedSeries:
        return self.ring.one()

    def truncated(self, prec: int | None) -> RamifiedSeries:
        """Forget everything from s^prec on."""
        new_prec = _min_prec(self.prec, prec)
        if new_prec == self.prec:
            return self
        return make_series(self.ring, self.valuation, list(self.coeffs), new_prec)

    def lift(self, ring: SeriesRing) -> RamifiedSeries:
        """Rescale indices into a refinement (same q and k, m divides ring.m)."""
        if ring is self.ring:
            return self
        if ring.key == self.ring.key:
            return RamifiedSeries(ring, self.valuation, self.coeffs, self.prec)
        if (ring.q, ring.k) != (self.ring.q, self.ring.k) or ring.m % self.ring.m:
            raise ValueError(f"{self.ring!r} does not lift to {ring!r}")
        f = ring.m // self.ring.m
        out = [0] * ((len(self.coeffs) - 1) * f + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[i * f] = c
        prec = None if self.prec is None else self.prec * f
        valuation = self.valuation * f if self.coeffs else (prec if prec is not None else 0)
        return RamifiedSeries(ring, valuation, tuple(out), prec)

    def _coerce(self, other: RamifiedSeries) -> tuple[RamifiedSeries, RamifiedSeries]:
        if other.ring is self.ring or other.ring.key == self.ring.key:
            return self, other
        ring = self.ring.refine(other.ring)
        return self.lift(ring), other.lift(ring)

    # -- ring operations --------------------------------------------------

    def __add__(self, other: RamifiedSeries) -> RamifiedSeries:
        x, y = self._coerce(other)
        prec = _min_prec(x.prec, y.prec)
        if x.is_zero():
            return y.truncated(prec)
        if y.is_zero():
            return x.truncated(prec)
        field = x.ring.field
        lo = min(x.valuation, y.valuation)
        hi = max(x.end, y.end)
        if prec is not None:
            hi = min(hi, prec)
        if hi <= lo:
            return make_series(x.ring, lo, [], prec)
        out = [0] * (hi - lo)
        for i, c in enumerate(x.coeffs):
            idx = x.valuation - lo + i
            if idx >= len(out):
                break
            out[idx] = c
        for i, c in enumerate(y.coeffs):
            idx = y.valuation - lo + i
            if idx >= len(out):
                break
            out[idx] = field.add(out[idx], c)
        return make_series(x.ring, lo, out, prec)

    def __neg__(self) -> RamifiedSeries:
        neg = self.ring.field.neg
        return RamifiedSeries(self.ring, self.valuation, tuple(neg(c) for c in self.coeffs), self.prec)

    def __sub__(self, other: RamifiedSeries) -> RamifiedSeries:
        return self + (-other)

    def __mul__(self, other: RamifiedSeries) -> RamifiedSeries:
        x, y = self._coerce(other)
        ring = x.ring
        if x.is_zero() or y.is_zero():
            if (x.is_zero() and x.is_exact()) or (y.is_zero() and y.is_exact()):
                return ring.zero()
            # an inexact zero times anything: O(s^(prec + valuation of the other))
            if x.is_zero() and y.is_zero():
                return make_series(ring, 0, [], x.prec + y.prec)
            zero, nonzero = (x, y) if x.is_zero() else (y, x)
            return make_series(ring, 0, [], zero.prec + nonzero.valuation)
        rel = _min_prec(x.relative_precision, y.relative_precision)
        valuation = x.valuation + y.valuation
        n = len(x.coeffs) + len(y.coeffs) - 1
        if rel is not None:
            n = min(n, rel)
        coeffs = ring.field.convolve(x.coeffs, y.coeffs, n)
        return make_series(ring, valuation, coeffs, None if rel is None else valuation + rel)

    def scale(self, c: int) -> RamifiedSeries:
        """Multiply by a constant of F_{q^k}."""
        if not c:
            return self.ring.zero() if self.is_exact() else make_series(self.ring, 0, [], self.prec)
        mul = self.ring.field.mul
        return RamifiedSeries(self.ring, self.valuation, tuple(mul(c, x) for x in self.coeffs), self.prec)

    def shift(self, n: int) -> RamifiedSeries:
        """Multiply by s^n."""
        prec = None if self.prec is None else self.prec + n
        valuation = self.valuation + n if self.coeffs else (prec if prec is not None else 0)
        return RamifiedSeries(self.ring, valuation, self.coeffs, prec)

    def inverse(self) -> RamifiedSeries:
        if self.is_zero():
            if self.is_exact():
                raise InverseOfZeroError("inverse of an exact zero series")
            raise PrecisionLossError(f"inverse of a series that vanishes modulo s^{self.prec}")
        ring = self.ring
        field = ring.field
        if self.is_exact() and len(self.coeffs) == 1:
            return RamifiedSeries(ring, -self.valuation, (field.inv(self.coeffs[0]),), None)
        rel = self.relative_precision if self.prec is not None else ring.prec
        out = _reciprocal(field, self.coeffs[:rel], rel)
        return make_series(ring, -self.valuation, out, -self.valuation + rel)

    def __truediv__(self, other: RamifiedSeries) -> RamifiedSeries:
        return self * other.inverse()

    def frobenius(self) -> RamifiedSeries:
        """p-th power."""
        p = self.ring.p
        field = self.ring.field
        prec = None if self.prec is None else self.prec * p
        if not self.coeffs:
            return make_series(self.ring, 0, [], prec)
        out = [0] * ((len(self.coeffs) - 1) * p + 1)
        for i, c in enumerate(self.coeffs):
            out[i * p] = field.frobenius(c)
        return RamifiedSeries(self.ring, self.valuation * p, tuple(out), prec)

    def frobenius_q(self) -> RamifiedSeries:
        """q-th power, as e repeated p-th powers."""
        x = self
        for _ in range(self.ring.e):
            x = x.frobenius()
        return x

    def __pow__(self, n: int) -> RamifiedSeries:
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison -------------------------------------------------------

    def agreement(self, other: RamifiedSeries) -> int | None:
        """Absolute precision to which the two values agree (None when both exact and equal)."""
        diff = self - other
        if diff.is_zero():
            return diff.prec
        return diff.valuation

    def equals_at_precision(self, other: RamifiedSeries) -> bool:
        return (self - other).is_zero()

    def to_dict(self) -> dict[str, object]:
        return {
            "m": self.ring.m,
            "k": self.ring.k,
            "valuation": self.valuation if self.coeffs else None,
            "precision": self.prec,
            "coefficients": list(self.coeffs),
        }


def series_arith(x: RamifiedSeries, y: RamifiedSeries | int | None, op: str) -> RamifiedSeries:
    """Dispatch add, sub, mul, div, inv, pow (y is the exponent) or frobenius."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    if op == "inv":
        return x.inverse()
    if op == "pow":
        return x**y
    if op == "frobenius":
        return x.frobenius()
    raise ValueError(f"unknown series operation: {op}")
