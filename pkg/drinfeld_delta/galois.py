"""Finite fields F_{p^n} with elements encoded as integers.

An element is the integer whose base-p digits are the coefficients (lowest
first) of its representative polynomial modulo the field's modulus. The
modulus is the first monic primitive polynomial of degree n in integer
order, so the encoding is fixed per (p, n) and the powers of x give the
antilog table.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .errors import InverseOfZeroError

FqElem = int

MAX_FIELD_ORDER = 1 << 16
_ADD_TABLE_LIMIT = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power_decomposition(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p**e, or raise ValueError."""
    if q < 2:
        raise ValueError(f"q must be a prime power >= 2, got {q}")
    p = 2
    while q % p:
        p += 1
    e = 0
    rest = q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise ValueError(f"q={q} is not a prime power")
    return p, e


class GaloisField:
    def __init__(self, p: int, degree: int) -> None:
        if not is_prime(p):
            raise ValueError(f"characteristic must be prime, got {p}")
        if degree < 1:
            raise ValueError(f"degree must be >= 1, got {degree}")
        self.p = p
        self.degree = degree
        self.order = p**degree
        if self.order > MAX_FIELD_ORDER:
            raise ValueError(f"field order {self.order} exceeds {MAX_FIELD_ORDER}")
        self._size = self.order - 1
        self.modulus, exp = self._primitive_modulus()
        self._exp = exp + exp
        self._log = [-1] * self.order
        for i, value in enumerate(exp):
            self._log[value] = i
        self._neg_table: list[int] | None = None
        self._add_table: list[int] | None = None
        if p > 2 and degree > 1:
            self._neg_table = [self._from_digits([(-d) % p for d in self.digits(a)]) for a in range(self.order)]
            if self.order <= _ADD_TABLE_LIMIT:
                self._add_table = [
                    self._add_digits(a, b) for a in range(self.order) for b in range(self.order)
                ]

    def __repr__(self) -> str:
        return f"GaloisField(p={self.p}, degree={self.degree})"

    # -- encoding ---------------------------------------------------------

    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.degree):
            a, d = divmod(a, self.p)
            out.append(d)
        return out

    def _from_digits(self, digits: Sequence[int]) -> int:
        value = 0
        for d in reversed(digits):
            value = value * self.p + d
        return value

    def _add_digits(self, a: int, b: int) -> int:
        p = self.p
        return self._from_digits([(x + y) % p for x, y in zip(self.digits(a), self.digits(b))])

    def _primitive_modulus(self) -> tuple[tuple[int, ...], list[int]]:
        for low in range(1, self.order):
            tail = self.digits(low)
            if tail[0] == 0:
                continue
            exp = self._power_cycle(tail)
            if exp is not None:
                return tuple(tail) + (1,), exp
        raise RuntimeError(f"no primitive polynomial found for p={self.p}, n={self.degree}")

    def _power_cycle(self, tail: list[int]) -> list[int] | None:
        # powers of x modulo x^n + tail; None unless x has order p^n - 1
        p = self.p
        state = [0] * self.degree
        state[0] = 1
        exp: list[int] = []
        for i in range(self._size):
            value = self._from_digits(state)
            if i and value == 1:
                return None
            exp.append(value)
            top = state[-1]
            state = [0] + state[:-1]
            if top:
                state = [(d - top * c) % p for d, c in zip(state, tail)]
        return exp if self._from_digits(state) == 1 else None

    # -- arithmetic -------------------------------------------------------

    def elements(self) -> range:
        return range(self.order)

    def nonzero_elements(self) -> range:
        return range(1, self.order)

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.degree == 1:
            s = a + b
            return s - self.p if s >= self.p else s
        if self._add_table is not None:
            return self._add_table[a * self.order + b]
        return self._add_digits(a, b)

    def neg(self, a: int) -> int:
        if self.p == 2 or not a:
            return a
        if self.degree == 1:
            return self.p - a
        return self._neg_table[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        if self.degree == 1:
            return a * b % self.p
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if not a:
            raise InverseOfZeroError(f"inverse of zero in {self!r}")
        return self._exp[(self._size - self._log[a]) % self._size]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if not a:
            if n > 0:
                return 0
            if n == 0:
                return 1
            raise InverseOfZeroError(f"negative power of zero in {self!r}")
        return self._exp[(self._log[a] * n) % self._size]

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    def sum(self, values: Iterable[int]) -> int:
        total = 0
        for v in values:
            total = self.add(total, v)
        return total

    def convolve(self, a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
        """First n coefficients of the product of two coefficient lists."""
        if n <= 0:
            return []
        a = a[:n]
        b = b[:n]
        if not a or not b:
            return [0] * n
        if self.degree == 1:
            return self._kronecker(a, b, n)
        out = [0] * n
        log, exp = self._log, self._exp
        logb = [log[x] for x in b]
        lb = len(b)
        binary = self.p == 2
        add = self.add
        for i, c in enumerate(a):
            if not c:
                continue
            lc = log[c]
            for j in range(min(lb, n - i)):
                lj = logb[j]
                if lj < 0:
                    continue
                k = i + j
                if binary:
                    out[k] ^= exp[lc + lj]
                else:
                    out[k] = add(out[k], exp[lc + lj])
        return out

    def _kronecker(self, a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
        # pack both operands into one integer each, multiply, unpack
        p = self.p
        bound = min(len(a), len(b)) * (p - 1) ** 2
        width = max(1, (bound.bit_length() + 3) // 4)
        fmt = f"0{width}x"
        x = int("".join(format(c, fmt) for c in reversed(a)), 16)
        y = int("".join(format(c, fmt) for c in reversed(b)), 16)
        total = len(a) + len(b) - 1
        packed = format(x * y, fmt) if x and y else "0"
        packed = packed.rjust(total * width, "0")
        out = [0] * n
        end = len(packed)
        for k in range(min(n, total)):
            chunk = packed[end - (k + 1) * width : end - k * width]
            out[k] = int(chunk, 16) % p
        return out


@lru_cache(maxsize=None)
def galois_field(p: int, degree: int = 1) -> GaloisField:
    return GaloisField(p, degree)


def field_of_order(q: int) -> GaloisField:
    p, e = prime_power_decomposition(q)
    return galois_field(p, e)


@lru_cache(maxsize=None)
def embedding(base: GaloisField, ext: GaloisField) -> tuple[int, ...]:
    """Table of a field embedding base -> ext, sending x to the first root of base's modulus."""
    if base.p != ext.p or ext.degree % base.degree:
        raise ValueError(f"{base!r} does not embed into {ext!r}")
    if base is ext or base.degree == 1:
        return tuple(range(base.order))
    root = None
    for y in ext.nonzero_elements():
        acc = 0
        for c in reversed(base.modulus):
            acc = ext.add(ext.mul(acc, y), c)
        if acc == 0:
            root = y
            break
    if root is None:
        raise RuntimeError(f"modulus of {base!r} has no root in {ext!r}")
    powers = [ext.pow(root, i) for i in range(base.degree)]
    return tuple(
        ext.sum(ext.mul(d, w) for d, w in zip(base.digits(a), powers)) for a in base.elements()
    )


def fq_arith(field: GaloisField, a: FqElem, b: FqElem | None, op: str) -> FqElem:
    """Dispatch one field operation: add, sub, mul, div, inv or pow (b is the exponent)."""
    if op == "add":
        return field.add(a, b)
    if op == "sub":
        return field.sub(a, b)
    if op == "mul":
        return field.mul(a, b)
    if op == "div":
        return field.div(a, b)
    if op == "inv":
        return field.inv(a)
    if op == "pow":
        return field.pow(a, b)
    raise ValueError(f"unknown field operation: {op}")
