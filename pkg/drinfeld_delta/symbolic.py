"""Symbolic coefficients A[g_1, ..., g_{r-2}, D, D^-1] and the polynomials f_a.

The generic rank-(r-1) module is phi_t = t X + g_1 X^q + ... + g_{r-2} X^(q^(r-2)) + D X^(q^(r-1)),
D standing for the discriminant Delta'. For r = 2 there are no variables and
D = 1, so coefficients are plain elements of A.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from functools import lru_cache
from typing import Mapping

from .additive import AdditivePoly, ap_compose, ap_leading
from .apoly import APoly, poly_add, poly_frobenius, poly_mul, poly_scale
from .errors import InconsistencyError, InverseOfZeroError, PrecisionLossError
from .galois import GaloisField
from .series import RamifiedSeries, SeriesRing

Monomial = tuple[int, ...]


def _n_vars(rank: int) -> int:
    if rank < 2:
        raise ValueError(f"rank must be >= 2, got {rank}")
    return 0 if rank == 2 else rank - 1


class SymCoeff:
    """Sparse map from monomials (g exponents..., D exponent) to coefficient tuples of A."""

    __slots__ = ("field", "rank", "terms")

    def __init__(self, field: GaloisField, rank: int, terms: Mapping[Monomial, tuple[int, ...]]) -> None:
        self.field = field
        self.rank = rank
        self.terms: dict[Monomial, tuple[int, ...]] = {k: v for k, v in terms.items() if v}

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, field: GaloisField, rank: int) -> SymCoeff:
        return cls(field, rank, {})

    @classmethod
    def from_apoly(cls, a: APoly, rank: int) -> SymCoeff:
        return cls(a.field, rank, {(0,) * _n_vars(rank): a.coeffs})

    @classmethod
    def constant(cls, field: GaloisField, rank: int, c: int) -> SymCoeff:
        return cls(field, rank, {(0,) * _n_vars(rank): (c,)})

    @classmethod
    def g(cls, field: GaloisField, rank: int, i: int) -> SymCoeff:
        """The variable g_i, 1 <= i <= r-2."""
        if not 1 <= i <= rank - 2:
            raise ValueError(f"g_{i} does not exist in rank {rank}")
        key = [0] * _n_vars(rank)
        key[i - 1] = 1
        return cls(field, rank, {tuple(key): (1,)})

    @classmethod
    def delta(cls, field: GaloisField, rank: int, power: int = 1, scalar: int = 1) -> SymCoeff:
        """scalar * D^power; D = 1 in rank 2."""
        if rank == 2:
            return cls.constant(field, rank, scalar)
        key = [0] * _n_vars(rank)
        key[-1] = power
        return cls(field, rank, {tuple(key): (scalar,)})

    # -- ring protocol ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def zero_like(self) -> SymCoeff:
        return SymCoeff(self.field, self.rank, {})

    def one_like(self) -> SymCoeff:
        return SymCoeff.constant(self.field, self.rank, 1)

    def __add__(self, other: SymCoeff) -> SymCoeff:
        if len(self.terms) < len(other.terms):
            small, big = self.terms, other.terms
        else:
            small, big = other.terms, self.terms
        out = dict(big)
        for key, c in small.items():
            out[key] = poly_add(self.field, out[key], c) if key in out else c
        return SymCoeff(self.field, self.rank, out)

    def __neg__(self) -> SymCoeff:
        neg = self.field.neg
        return SymCoeff(self.field, self.rank, {k: tuple(neg(x) for x in c) for k, c in self.terms.items()})

    def __sub__(self, other: SymCoeff) -> SymCoeff:
        return self + (-other)

    def __mul__(self, other: SymCoeff) -> SymCoeff:
        field = self.field
        out: dict[Monomial, tuple[int, ...]] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(k1, k2))
                prod = poly_mul(field, c1, c2)
                out[key] = poly_add(field, out[key], prod) if key in out else prod
        return SymCoeff(field, self.rank, out)

    def scale(self, c: int) -> SymCoeff:
        """Multiply by an element of F_q."""
        return SymCoeff(
            self.field, self.rank, {k: poly_scale(self.field, v, c) for k, v in self.terms.items()}
        )

    def frobenius(self) -> SymCoeff:
        p = self.field.p
        return SymCoeff(
            self.field,
            self.rank,
            {tuple(p * x for x in k): poly_frobenius(self.field, v) for k, v in self.terms.items()},
        )

    def unit_inverse(self) -> SymCoeff:
        """Inverse of c * g^0 * D^n with c in F_q^*; anything else is not a unit."""
        if len(self.terms) != 1:
            raise InverseOfZeroError(f"{self} is not a unit")
        ((key, c),) = self.terms.items()
        if len(c) != 1 or any(key[:-1]):
            raise InverseOfZeroError(f"{self} is not a unit")
        return SymCoeff(self.field, self.rank, {tuple(-x for x in key): (self.field.inv(c[0]),)})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymCoeff):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.rank, frozenset(self.terms.items())))

    # -- inspection -------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Monomial, APoly]]:
        """Terms in graded lexicographic order on (g exponents, D exponent)."""
        keys = sorted(self.terms, key=lambda k: (sum(k), k))
        return [(k, APoly(self.field, self.terms[k])) for k in keys]

    def scalar(self) -> APoly:
        """The element of A when no variable occurs (always the case in rank 2)."""
        if not self.terms:
            return APoly(self.field)
        base = (0,) * _n_vars(self.rank)
        if set(self.terms) != {base}:
            raise ValueError(f"{self} is not an element of A")
        return APoly(self.field, self.terms[base])

    def min_delta_exponent(self) -> int | None:
        if self.rank == 2 or not self.terms:
            return None
        return min(k[-1] for k in self.terms)

    def to_json(self) -> object:
        if self.rank == 2:
            return list(self.scalar().coeffs)
        return [
            {"g_exponents": list(k[:-1]), "delta_exponent": k[-1], "scalar": list(c.coeffs)}
            for k, c in self.sorted_terms()
        ]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key, c in self.sorted_terms():
            factors = [f"({c})"]
            for i, x in enumerate(key[:-1], start=1):
                if x:
                    factors.append(f"g{i}" if x == 1 else f"g{i}^{x}")
            if key and key[-1]:
                factors.append("D" if key[-1] == 1 else f"D^{key[-1]}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"SymCoeff({self})"


@lru_cache(maxsize=None)
def generic_phi_t(field: GaloisField, rank: int) -> AdditivePoly[SymCoeff]:
    coeffs = [SymCoeff.from_apoly(APoly.t(field), rank)]
    coeffs += [SymCoeff.g(field, rank, i) for i in range(1, rank - 1)]
    coeffs.append(SymCoeff.delta(field, rank))
    return AdditivePoly(field.order, tuple(coeffs))


@lru_cache(maxsize=None)
def phi_a_symbolic(a: APoly, rank: int) -> AdditivePoly[SymCoeff]:
    """phi_a = sum_j c_j phi_t^(o j) for a = sum_j c_j t^j."""
    if a.is_zero():
        raise ValueError("phi_a is only needed for a != 0")
    field = a.field
    phi_t = generic_phi_t(field, rank)
    acc: AdditivePoly[SymCoeff] = AdditivePoly(field.order, ())
    power = AdditivePoly.identity(field.order, SymCoeff.constant(field, rank, 1))
    for j, c in enumerate(a.coeffs):
        if j:
            power = ap_compose(phi_t, power)
        if c:
            acc = acc + power.map_coefficients(lambda x, c=c: x.scale(c))
    return acc


def delta_exponent(q: int, rank: int, degree: int) -> int:
    """1 + q^(r-1) + ... + q^((r-1)(deg a - 1))."""
    step = q ** (rank - 1)
    return (step**degree - 1) // (step - 1)


def delta_a_power(a: APoly, rank: int) -> SymCoeff:
    """Leading coefficient of phi_a: lc(a) * D^(1 + q^(r-1) + ... + q^((r-1)(deg a - 1)))."""
    if a.is_zero():
        raise ValueError("delta_a_power needs a != 0")
    exponent = delta_exponent(a.field.order, rank, a.degree)
    return SymCoeff.delta(a.field, rank, exponent, a.leading)


@dataclass(frozen=True)
class FaPoly:
    """f_a(X) = X^(q^D) Delta'_a^-1 phi_a(1/X) - 1 as {exponent: coefficient}, D = (r-1) deg a."""

    a: APoly
    rank: int
    terms: Mapping[int, SymCoeff] = dataclass_field(default_factory=dict)

    @property
    def tau_degree(self) -> int:
        return (self.rank - 1) * self.a.degree

    @property
    def degree(self) -> int:
        return max(self.terms, default=0)

    @property
    def valuation(self) -> int | None:
        return min(self.terms, default=None)

    def items(self) -> list[tuple[int, SymCoeff]]:
        return sorted(self.terms.items())

    def reciprocal_identity_holds(self) -> bool:
        """u^(q^D) phi_a(1/u) == Delta'_a (1 + f_a(u)) as polynomials in u."""
        phi = phi_a_symbolic(self.a, self.rank)
        q = self.a.field.order
        top = q**self.tau_degree
        lhs = {top - q**i: c for i, c in enumerate(phi.coeffs) if not c.is_zero()}
        lead = delta_a_power(self.a, self.rank)
        rhs = {n: lead * c for n, c in self.terms.items()}
        rhs[0] = rhs[0] + lead if 0 in rhs else lead
        rhs = {n: c for n, c in rhs.items() if not c.is_zero()}
        return lhs == rhs


@lru_cache(maxsize=None)
def f_a_build(a: APoly, rank: int) -> FaPoly:
    if a.is_zero():
        raise ValueError("f_a is only defined for a != 0")
    field = a.field
    q = field.order
    if a.degree == 0:
        return FaPoly(a, rank, {})
    phi = phi_a_symbolic(a, rank)
    D = (rank - 1) * a.degree
    if phi.tau_degree != D:
        raise InconsistencyError(f"phi_a for a={a} has tau-degree {phi.tau_degree}, expected {D}")
    lead = delta_a_power(a, rank)
    if ap_leading(phi) != lead:
        raise InconsistencyError(f"leading coefficient of phi_a for a={a} is not {lead}")
    lead_inv = lead.unit_inverse()
    top = q**D
    reversed_terms = {top - q**i: c * lead_inv for i, c in enumerate(phi.coeffs) if not c.is_zero()}
    reversed_terms[0] = reversed_terms[0] - SymCoeff.constant(field, rank, 1)
    terms = {n: c for n, c in reversed_terms.items() if not c.is_zero()}
    if 0 in terms:
        raise InconsistencyError(f"f_a for a={a} has a nonzero constant term")
    floor = top - q ** (D - 1)
    if any(n < floor for n in terms):
        raise InconsistencyError(f"f_a for a={a} is not divisible by X^{floor}")
    return FaPoly(a, rank, terms)


@dataclass
class ModuleValues:
    """Numeric values of g_1..g_{r-2} and Delta' for specialization."""

    ring: SeriesRing
    g: tuple[RamifiedSeries, ...] = ()
    delta: RamifiedSeries | None = None
    _powers: dict[tuple[int, int], RamifiedSeries] = dataclass_field(default_factory=dict, repr=False)

    def power(self, index: int, n: int) -> RamifiedSeries:
        """index < len(g) selects g_{index+1}; index == len(g) selects Delta'."""
        key = (index, n)
        cached = self._powers.get(key)
        if cached is None:
            base = self.g[index] if index < len(self.g) else self.delta
            if base is None:
                raise ValueError("Delta' value is required for this specialization")
            if n < 0 and base.is_zero():
                raise PrecisionLossError("Delta' vanishes at working precision")
            cached = base**n
            self._powers[key] = cached
        return cached


def specialize(x: SymCoeff, values: ModuleValues) -> RamifiedSeries:
    ring = values.ring
    acc = ring.zero()
    for key, c in x.sorted_terms():
        term = ring.from_apoly(c)
        for index, n in enumerate(key):
            if n:
                term = term * values.power(index, n)
        acc = acc + term
    return acc
