"""F_q-linear (additive) polynomials sum a_i X^(q^i) over a ring of characteristic p.

The coefficient ring only has to provide addition, multiplication and the
p-th power map; A, the ramified series and the symbolic coefficients all do.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Generic, Protocol, Sequence, TypeVar

from .galois import prime_power_decomposition


class FrobeniusRingElement(Protocol):
    def __add__(self, other: Any) -> Any: ...

    def __sub__(self, other: Any) -> Any: ...

    def __mul__(self, other: Any) -> Any: ...

    def __neg__(self) -> Any: ...

    def frobenius(self) -> Any: ...

    def is_zero(self) -> bool: ...

    def zero_like(self) -> Any: ...


R = TypeVar("R", bound=FrobeniusRingElement)


def frobenius_power(x: R, e: int) -> R:
    """x^(p^e)."""
    for _ in range(e):
        x = x.frobenius()
    return x


@dataclass(frozen=True)
class AdditivePoly(Generic[R]):
    """coeffs[i] is the coefficient of X^(q^i); trailing zero coefficients are dropped."""

    q: int
    coeffs: tuple[R, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(self.coeffs)
        end = len(coeffs)
        while end and coeffs[end - 1].is_zero():
            end -= 1
        object.__setattr__(self, "coeffs", coeffs[:end])

    @classmethod
    def identity(cls, q: int, one: R) -> AdditivePoly[R]:
        return cls(q, (one,))

    @property
    def _e(self) -> int:
        return prime_power_decomposition(self.q)[1]

    @property
    def tau_degree(self) -> int:
        """Degree in tau = X^q; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: AdditivePoly[R]) -> AdditivePoly[R]:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return AdditivePoly(self.q, tuple(out))

    def __sub__(self, other: AdditivePoly[R]) -> AdditivePoly[R]:
        return self + other.map_coefficients(lambda c: -c)

    def scale(self, c: R) -> AdditivePoly[R]:
        """Left multiplication by the constant c (c * f(X))."""
        return AdditivePoly(self.q, tuple(c * a for a in self.coeffs))

    def map_coefficients(self, fn: Callable[[R], R]) -> AdditivePoly[R]:
        return AdditivePoly(self.q, tuple(fn(a) for a in self.coeffs))

    def leading(self) -> R:
        return ap_leading(self)

    def __call__(self, x: R) -> R:
        return ap_eval(self, x)

    def compose(self, other: AdditivePoly[R]) -> AdditivePoly[R]:
        return ap_compose(self, other)


def ap_compose(f: AdditivePoly[R], g: AdditivePoly[R]) -> AdditivePoly[R]:
    """(f o g)(X) = f(g(X)); coefficient c_{i+j} += a_i * b_j^(q^i)."""
    if f.q != g.q:
        raise ValueError(f"cannot compose additive polynomials over q={f.q} and q={g.q}")
    if f.is_zero() or g.is_zero():
        return AdditivePoly(f.q, ())
    e = f._e
    out: list[R | None] = [None] * (f.tau_degree + g.tau_degree + 1)
    twisted: Sequence[R] = g.coeffs
    for i, a in enumerate(f.coeffs):
        if i:
            twisted = [frobenius_power(b, e) for b in twisted]
        if a.is_zero():
            continue
        for j, b in enumerate(twisted):
            term = a * b
            out[i + j] = term if out[i + j] is None else out[i + j] + term
    zero = f.coeffs[0].zero_like()
    return AdditivePoly(f.q, tuple(zero if c is None else c for c in out))


def ap_eval(f: AdditivePoly[R], x: R) -> R:
    """sum a_i x^(q^i) with x^(q^i) by iterated Frobenius."""
    e = f._e
    acc = x.zero_like()
    power = x
    for i, a in enumerate(f.coeffs):
        if i:
            power = frobenius_power(power, e)
        if not a.is_zero():
            acc = acc + a * power
    return acc


def ap_leading(f: AdditivePoly[R]) -> R:
    if f.is_zero():
        raise ValueError("the zero additive polynomial has no leading coefficient")
    return f.coeffs[-1]
