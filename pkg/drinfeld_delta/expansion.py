"""u-expansion of Delta from the product formula.

Delta = -Delta'^q u^(q-1) prod_{a monic, deg a >= 1} (1 + f_a(u))^((q^r - 1)(q - 1))

Only the factors with deg a <= D contribute below u^N.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dataclass_field
from pathlib import Path
from typing import Any, Callable

from pydantic import BaseModel, Field

from .apoly import APoly, apoly_iter_all, apoly_monic_iter
from .config import SCHEMA_VERSION
from .errors import InconsistencyError
from .galois import field_of_order
from .series import RamifiedSeries
from .symbolic import ModuleValues, SymCoeff, f_a_build, specialize
from .useries import USeries, charp_pow, naive_pow

MODES = ("monic", "full")

StatusCallback = Callable[[str], None]


def degree_bound(order: int, q: int, rank: int) -> int:
    """Smallest D with q^((r-1)(D+1)) - q^((r-1)(D+1)-1) >= N."""
    if order < 1:
        raise ValueError(f"N must be >= 1, got {order}")
    D = 0
    while True:
        top = (rank - 1) * (D + 1)
        if q**top - q ** (top - 1) >= order:
            return D
        D += 1


def factor_valuation(q: int, rank: int, degree: int) -> int:
    """u-adic valuation of f_a for deg a = degree >= 1."""
    top = (rank - 1) * degree
    return q**top - q ** (top - 1)


class SymTerm(BaseModel):
    g_exponents: list[int]
    delta_exponent: int
    scalar: list[int]


class CoefficientEntry(BaseModel):
    n: int
    value: list[int] | list[SymTerm]


class ExpansionMeta(BaseModel):
    factor_count: int
    factor_exponent: int
    field_modulus: list[int]
    min_delta_exponent: int | None = None
    degree_bound_required: int


class ExpansionDocument(BaseModel):
    schema_version: int = SCHEMA_VERSION
    q: int
    r: int
    N: int
    mode: str
    D: int
    prefactor_shift: int
    coefficients: list[CoefficientEntry] = Field(default_factory=list)
    meta: ExpansionMeta


@dataclass(frozen=True)
class ExpansionResult:
    q: int
    rank: int
    order: int
    mode: str
    degree: int
    coefficients: tuple[SymCoeff, ...]
    factor_count: int
    factor_exponent: int
    elapsed: float = dataclass_field(default=0.0, compare=False)

    @property
    def prefactor_shift(self) -> int:
        return self.q - 1

    def coefficient(self, n: int) -> SymCoeff:
        return self.coefficients[n]

    def nonzero(self) -> list[tuple[int, SymCoeff]]:
        return [(n, c) for n, c in enumerate(self.coefficients) if not c.is_zero()]

    def min_delta_exponent(self) -> int | None:
        exps = [c.min_delta_exponent() for _, c in self.nonzero()]
        exps = [e for e in exps if e is not None]
        return min(exps, default=None)

    def to_document(self) -> ExpansionDocument:
        field = field_of_order(self.q)
        return ExpansionDocument(
            q=self.q,
            r=self.rank,
            N=self.order,
            mode=self.mode,
            D=self.degree,
            prefactor_shift=self.prefactor_shift,
            coefficients=[CoefficientEntry(n=n, value=c.to_json()) for n, c in self.nonzero()],
            meta=ExpansionMeta(
                factor_count=self.factor_count,
                factor_exponent=self.factor_exponent,
                field_modulus=list(field.modulus),
                min_delta_exponent=self.min_delta_exponent(),
                degree_bound_required=degree_bound(self.order, self.q, self.rank),
            ),
        )

    def render_text(self) -> str:
        lines = [f"Delta u-expansion: q={self.q} r={self.rank} N={self.order} mode={self.mode} D={self.degree}"]
        for n, c in self.nonzero():
            lines.append(f"u^{n}: {c}")
        lines.append(f"+ O(u^{self.order})")
        return "\n".join(lines) + "\n"


def _factors(q: int, rank: int, degree: int, mode: str) -> list[tuple[APoly, int]]:
    field = field_of_order(q)
    if mode == "monic":
        exponent = (q**rank - 1) * (q - 1)
        return [(a, exponent) for a in apoly_monic_iter(field, degree) if a.degree >= 1]
    if mode == "full":
        exponent = q**rank - 1
        polys = sorted((a for a in apoly_iter_all(field, degree) if a.degree >= 1), key=lambda a: a.degree)
        return [(a, exponent) for a in polys]
    raise ValueError(f"unknown mode: {mode}; expected one of {MODES}")


def fa_useries(a: APoly, rank: int, order: int) -> USeries[SymCoeff]:
    """1 + f_a(u) truncated at u^order."""
    field = a.field
    one = SymCoeff.constant(field, rank, 1)
    terms = {n: c for n, c in f_a_build(a, rank).terms.items() if n < order}
    terms[0] = one
    return USeries.from_terms(order, terms, SymCoeff.zero(field, rank), field.p)


def delta_expansion(
    q: int,
    rank: int,
    order: int,
    mode: str = "monic",
    degree_override: int | None = None,
    use_charp: bool = True,
    status_callback: StatusCallback | None = None,
) -> ExpansionResult:
    if rank < 2:
        raise ValueError(f"rank must be >= 2, got {rank}")
    if mode not in MODES:
        raise ValueError(f"unknown mode: {mode}; expected one of {MODES}")
    started = time.perf_counter()
    field = field_of_order(q)
    degree = degree_bound(order, q, rank) if degree_override is None else degree_override
    if degree < 0:
        raise ValueError(f"D must be >= 0, got {degree}")
    shift = q - 1
    zero = SymCoeff.zero(field, rank)
    prefactor = SymCoeff.delta(field, rank, q, field.neg(1))
    factors = _factors(q, rank, degree, mode)
    power = charp_pow if use_charp else naive_pow
    coefficients = [zero] * order
    product_order = order - shift
    if product_order > 0:
        acc = USeries.constant(product_order, SymCoeff.constant(field, rank, 1), field.p)
        current_degree = 0
        for a, exponent in factors:
            if a.degree != current_degree and status_callback:
                status_callback(f"multiplying factors of degree {a.degree}")
            current_degree = a.degree
            acc = acc * power(fa_useries(a, rank, product_order), exponent)
        for n in range(product_order):
            coefficients[n + shift] = prefactor * acc.coeffs[n]
        if coefficients[shift] != prefactor:
            raise InconsistencyError("coefficient of u^(q-1) is not -Delta'^q")
    result = ExpansionResult(
        q=q,
        rank=rank,
        order=order,
        mode=mode,
        degree=degree,
        coefficients=tuple(coefficients),
        factor_count=len(factors),
        factor_exponent=factors[0][1] if factors else 0,
        elapsed=time.perf_counter() - started,
    )
    if status_callback:
        status_callback(f"expansion q={q} r={rank} N={order} done in {result.elapsed:.2f}s")
    return result


def evaluate_expansion(result: ExpansionResult, values: ModuleValues, u: RamifiedSeries) -> RamifiedSeries:
    """sum_{n < N} c_n(g, Delta') u^n by Horner's rule."""
    acc = values.ring.zero()
    for c in reversed(result.coefficients):
        acc = acc * u
        if not c.is_zero():
            acc = acc + specialize(c, values)
    return acc


def expansion_schema() -> dict[str, Any]:
    return ExpansionDocument.model_json_schema()


def expansion_schema_file() -> Path:
    base = Path(__file__).resolve().parent
    return base / "schemas" / "expansion_result.v1.json"
