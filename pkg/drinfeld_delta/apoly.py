"""Polynomials in A = F_q[t]."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

from .errors import InverseOfZeroError
from .galois import GaloisField


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    end = len(coeffs)
    while end and not coeffs[end - 1]:
        end -= 1
    return tuple(coeffs[:end])


def poly_add(field: GaloisField, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = field.add(out[i], c)
    return _trim(out)


def poly_mul(field: GaloisField, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    if not a or not b:
        return ()
    return _trim(field.convolve(a, b, len(a) + len(b) - 1))


def poly_frobenius(field: GaloisField, a: Sequence[int]) -> tuple[int, ...]:
    """p-th power of sum a_i t^i."""
    if not a:
        return ()
    p = field.p
    out = [0] * (p * (len(a) - 1) + 1)
    for i, c in enumerate(a):
        out[p * i] = field.frobenius(c)
    return tuple(out)


def poly_scale(field: GaloisField, a: Sequence[int], c: int) -> tuple[int, ...]:
    if not c:
        return ()
    return _trim([field.mul(c, x) for x in a])


@dataclass(frozen=True, slots=True)
class APoly:
    """Element of F_q[t]; coefficients lowest degree first, no trailing zeros."""

    field: GaloisField
    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _trim(tuple(self.coeffs)))

    @classmethod
    def constant(cls, field: GaloisField, c: int) -> APoly:
        return cls(field, (c,))

    @classmethod
    def t(cls, field: GaloisField) -> APoly:
        return cls(field, (0, 1))

    @classmethod
    def monomial(cls, field: GaloisField, c: int, degree: int) -> APoly:
        return cls(field, (0,) * degree + (c,))

    @property
    def degree(self) -> int:
        """Degree in t; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def zero_like(self) -> APoly:
        return APoly(self.field)

    def one_like(self) -> APoly:
        return APoly(self.field, (1,))

    def __add__(self, other: APoly) -> APoly:
        return APoly(self.field, poly_add(self.field, self.coeffs, other.coeffs))

    def __neg__(self) -> APoly:
        return APoly(self.field, tuple(self.field.neg(c) for c in self.coeffs))

    def __sub__(self, other: APoly) -> APoly:
        return self + (-other)

    def __mul__(self, other: APoly | int) -> APoly:
        if isinstance(other, int):
            return APoly(self.field, poly_scale(self.field, self.coeffs, other))
        return APoly(self.field, poly_mul(self.field, self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> APoly:
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = self.one_like()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def frobenius(self) -> APoly:
        """p-th power: c_i t^i -> c_i^p t^(p i)."""
        return APoly(self.field, poly_frobenius(self.field, self.coeffs))

    def divmod(self, other: APoly) -> tuple[APoly, APoly]:
        if other.is_zero():
            raise InverseOfZeroError("division by the zero polynomial")
        field = self.field
        lead_inv = field.inv(other.leading)
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        quot = [0] * max(dq + 1, 0)
        for shift in range(dq, -1, -1):
            c = field.mul(rem[shift + other.degree], lead_inv)
            if not c:
                continue
            quot[shift] = c
            for i, b in enumerate(other.coeffs):
                rem[shift + i] = field.sub(rem[shift + i], field.mul(c, b))
        return APoly(field, tuple(quot)), APoly(field, tuple(rem))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mono = "t" if i == 1 else f"t^{i}"
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)


def apoly_monic_of_degree(field: GaloisField, d: int) -> Iterator[APoly]:
    """All monic polynomials of degree exactly d, lexicographic in coefficients."""
    if d < 0:
        return
    for low in product(field.elements(), repeat=d):
        yield APoly(field, tuple(reversed(low)) + (1,))


def apoly_monic_iter(field: GaloisField, d: int) -> Iterator[APoly]:
    """All monic polynomials of degree <= d, degree-major."""
    if d < 0:
        raise ValueError(f"degree bound must be >= 0, got {d}")
    for j in range(d + 1):
        yield from apoly_monic_of_degree(field, j)


def apoly_iter_all(field: GaloisField, d: int) -> Iterator[APoly]:
    """All polynomials of degree <= d, the zero polynomial first."""
    for coeffs in product(field.elements(), repeat=d + 1):
        yield APoly(field, tuple(reversed(coeffs)))
