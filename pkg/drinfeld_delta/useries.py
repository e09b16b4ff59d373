"""Truncated power series in u with coefficients in a ring of characteristic p."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Generic

from .additive import R
from .errors import InverseOfZeroError


@dataclass(frozen=True)
class USeries(Generic[R]):
    """u^shift * sum_{n < order} coeffs[n] u^n + O(u^(shift + order))."""

    order: int
    coeffs: tuple[R, ...]
    p: int
    shift: int = 0

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError(f"order must be >= 1, got {self.order}")
        if len(self.coeffs) != self.order:
            raise ValueError(f"expected {self.order} coefficients, got {len(self.coeffs)}")

    @classmethod
    def from_terms(cls, order: int, terms: dict[int, R], zero: R, p: int) -> USeries[R]:
        coeffs = [zero] * order
        for n, c in terms.items():
            if 0 <= n < order:
                coeffs[n] = c
        return cls(order, tuple(coeffs), p)

    @classmethod
    def constant(cls, order: int, c: R, p: int) -> USeries[R]:
        zero = c.zero_like()
        return cls(order, (c,) + (zero,) * (order - 1), p)

    def _zero(self) -> R:
        return self.coeffs[0].zero_like()

    def support(self) -> list[int]:
        return [n for n, c in enumerate(self.coeffs) if not c.is_zero()]

    def truncate(self, order: int) -> USeries[R]:
        order = min(order, self.order)
        return USeries(order, self.coeffs[:order], self.p, self.shift)

    def __add__(self, other: USeries[R]) -> USeries[R]:
        if self.shift != other.shift:
            raise ValueError("cannot add u-series with different shifts")
        order = min(self.order, other.order)
        return USeries(order, tuple(a + b for a, b in zip(self.coeffs[:order], other.coeffs)), self.p, self.shift)

    def __neg__(self) -> USeries[R]:
        return USeries(self.order, tuple(-c for c in self.coeffs), self.p, self.shift)

    def __sub__(self, other: USeries[R]) -> USeries[R]:
        return self + (-other)

    def __mul__(self, other: USeries[R]) -> USeries[R]:
        order = min(self.order, other.order)
        left = [(i, c) for i, c in enumerate(self.coeffs[:order]) if not c.is_zero()]
        right = [(j, c) for j, c in enumerate(other.coeffs[:order]) if not c.is_zero()]
        out: list[R | None] = [None] * order
        for i, a in left:
            for j, b in right:
                n = i + j
                if n >= order:
                    break
                term = a * b
                out[n] = term if out[n] is None else out[n] + term
        zero = self._zero()
        return USeries(order, tuple(zero if c is None else c for c in out), self.p, self.shift + other.shift)

    def frobenius(self) -> USeries[R]:
        """p-th power: sum c_n^p u^(p n)."""
        zero = self._zero()
        out = [zero] * self.order
        for n, c in enumerate(self.coeffs):
            if self.p * n >= self.order:
                break
            if not c.is_zero():
                out[self.p * n] = c.frobenius()
        return USeries(self.order, tuple(out), self.p, self.p * self.shift)

    def inverse(self) -> USeries[R]:
        """Inverse of a series whose constant term is a unit (shift must be 0)."""
        if self.shift:
            raise ValueError("only series with shift 0 are inverted")
        c0 = self.coeffs[0]
        unit_inverse = getattr(c0, "unit_inverse", None)
        if c0.is_zero() or unit_inverse is None:
            raise InverseOfZeroError("constant term is not invertible")
        b0 = unit_inverse()
        out = [b0]
        for n in range(1, self.order):
            acc = None
            for i in range(1, n + 1):
                ci = self.coeffs[i]
                if ci.is_zero():
                    continue
                term = ci * out[n - i]
                acc = term if acc is None else acc + term
            out.append(self._zero() if acc is None else -(b0 * acc))
        return USeries(self.order, tuple(out), self.p)

    def is_one(self) -> bool:
        first = self.coeffs[0]
        return first == first.one_like() and all(c.is_zero() for c in self.coeffs[1:])


def useries_arith(x: USeries[R], y: USeries[R] | None, op: str) -> USeries[R]:
    """Dispatch add, sub, mul, inv or frobenius."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "inv":
        return x.inverse()
    if op == "frobenius":
        return x.frobenius()
    raise ValueError(f"unknown u-series operation: {op}")


def _one_like(x: USeries[R]) -> USeries[R]:
    return USeries.constant(x.order, x.coeffs[0].one_like(), x.p)


def base_p_digits(n: int, p: int) -> list[int]:
    digits = []
    while n:
        n, d = divmod(n, p)
        digits.append(d)
    return digits


def charp_pow(x: USeries[R], exponent: int) -> USeries[R]:
    """x^E as prod_j (x^(p^j))^(d_j) over the base-p digits d_j of E."""
    if exponent < 0:
        raise ValueError("charp_pow takes a non-negative exponent")
    result = _one_like(x)
    power = x
    for j, digit in enumerate(base_p_digits(exponent, x.p)):
        if j:
            power = power.frobenius()
        for _ in range(digit):
            result = result * power
    return result


def naive_pow(x: USeries[R], exponent: int) -> USeries[R]:
    """Square-and-multiply."""
    if exponent < 0:
        raise ValueError("naive_pow takes a non-negative exponent")
    result = _one_like(x)
    base = x
    while exponent:
        if exponent & 1:
            result = result * base
        exponent >>= 1
        if exponent:
            base = base * base
    return result
