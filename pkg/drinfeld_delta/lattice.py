"""Lattices in C_infty, their exponential functions and Drinfeld modules.

The truncated lattice V_B is the F_q-span of {t^j omega_i : j <= B}. Its
exponential e_V(z) = z prod'_{lambda in V_B} (1 - z/lambda) is evaluated by
adjoining one basis vector w at a time:

    E_{V + F_q w}(z) = E_V(z) - E_V(z)^q / E_V(w)^(q-1),

which is the same polynomial as the product and costs a handful of series
operations per basis vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

from .additive import AdditivePoly, ap_compose, ap_eval, ap_leading
from .apoly import APoly, apoly_iter_all
from .errors import DegenerateActionError, InconsistencyError, InverseOfZeroError, PrecisionLossError
from .galois import GaloisField
from .series import RamifiedSeries, SeriesRing

DENSE_TORSION_LIMIT = 16


@dataclass(frozen=True)
class Omega:
    """(omega_1, ..., omega_r) with omega_r = xi."""

    entries: tuple[RamifiedSeries, ...]

    def __post_init__(self) -> None:
        if len(self.entries) < 1:
            raise ValueError("omega needs at least one entry")

    @classmethod
    def normalized(cls, firsts: Sequence[RamifiedSeries], xi: RamifiedSeries) -> Omega:
        return cls(tuple(firsts) + (xi,))

    @property
    def rank(self) -> int:
        return len(self.entries)

    @property
    def ring(self) -> SeriesRing:
        return self.entries[-1].ring

    @property
    def xi(self) -> RamifiedSeries:
        return self.entries[-1]

    def prime(self) -> Omega:
        """omega' = (omega_2, ..., omega_r)."""
        return Omega(self.entries[1:])

    def check_normalization(self, xi: RamifiedSeries) -> None:
        if not self.xi.equals_at_precision(xi):
            raise ValueError("last entry of omega is not xi at working precision")

    @property
    def general_position_verified(self) -> bool:
        """Sufficient condition: the valuations are pairwise distinct modulo m."""
        if any(x.is_zero() for x in self.entries):
            return False
        classes = [x.valuation % self.ring.m for x in self.entries]
        return len(set(classes)) == len(classes)

    def region_parameter(self) -> int | None:
        """Smallest n with omega in Omega_n, when general position is verified."""
        if not self.general_position_verified:
            return None
        vals = [x.valuation for x in self.entries]
        m = self.ring.m
        return -((min(vals) - max(vals)) // m)


@dataclass(frozen=True)
class LatticeSpec:
    basis: tuple[RamifiedSeries, ...]
    bound: int

    def __post_init__(self) -> None:
        if self.bound < 0:
            raise ValueError(f"truncation bound must be >= 0, got {self.bound}")

    @classmethod
    def of(cls, omega: Omega, bound: int) -> LatticeSpec:
        return cls(omega.entries, bound)

    @property
    def ring(self) -> SeriesRing:
        return self.basis[0].ring

    @property
    def rank(self) -> int:
        return len(self.basis)

    def fq_basis(self) -> list[RamifiedSeries]:
        """t^j omega_i for j <= B, ordered by j then i."""
        m = self.ring.m
        return [w.shift(-m * j) for j in range(self.bound + 1) for w in self.basis]

    def points(self) -> Iterator[RamifiedSeries]:
        """Every sum a_i omega_i with deg a_i <= B, zero first."""
        ring = self.ring
        polys = list(apoly_iter_all(ring.base_field, self.bound))
        for combo in product(polys, repeat=self.rank):
            acc = ring.zero()
            for a, w in zip(combo, self.basis):
                if not a.is_zero():
                    acc = acc + ring.from_apoly(a) * w
            yield acc


@dataclass(frozen=True)
class GammaMatrix:
    rows: tuple[tuple[APoly, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.rows)
        if not n or any(len(row) != n for row in self.rows):
            raise ValueError("gamma must be a square matrix")
        if not self.is_unimodular():
            raise ValueError(f"det gamma = {self.determinant()} is not a unit of A")

    @classmethod
    def identity(cls, field: GaloisField, rank: int) -> GammaMatrix:
        return cls.from_ints(field, [[int(i == j) for j in range(rank)] for i in range(rank)])

    @classmethod
    def from_ints(cls, field: GaloisField, rows: Sequence[Sequence[int | APoly]]) -> GammaMatrix:
        def coerce(x: int | APoly) -> APoly:
            return x if isinstance(x, APoly) else APoly.constant(field, x)

        return cls(tuple(tuple(coerce(x) for x in row) for row in rows))

    @property
    def rank(self) -> int:
        return len(self.rows)

    def determinant(self) -> APoly:
        return _det([list(row) for row in self.rows])

    def is_unimodular(self) -> bool:
        return self.determinant().degree == 0


def _det(rows: list[list[APoly]]) -> APoly:
    if len(rows) == 1:
        return rows[0][0]
    acc = rows[0][0].zero_like()
    for j, a in enumerate(rows[0]):
        if a.is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
        term = a * _det(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def _cancel_leading(w: RamifiedSeries, vectors: Sequence[RamifiedSeries]) -> RamifiedSeries | None:
    """w minus an F_q-combination of the vectors of valuation v(w) that kills its leading term."""
    same = [v for v in vectors if not v.is_zero() and v.valuation == w.valuation]
    if not same:
        return None
    ring = w.ring
    ext = ring.field
    leads = [v.coeffs[0] for v in same]
    for combo in product(ring.base_field.elements(), repeat=len(same)):
        if not any(combo):
            continue
        if ext.sum(ext.mul(ring.embed(c), lead) for c, lead in zip(combo, leads)) != w.coeffs[0]:
            continue
        for c, v in zip(combo, same):
            if c:
                w = w - v.scale(ring.embed(c))
        return w
    return None


def reduce_basis(basis: Sequence[RamifiedSeries]) -> tuple[RamifiedSeries, ...]:
    """An A-basis of the same lattice with |sum a_i w_i| = max |a_i w_i|.

    Each pass cancels the leading term of one vector against A-multiples of
    vectors no larger than it, so the valuation of that vector strictly grows.
    """
    vectors = list(basis)
    if any(v.is_zero() for v in vectors):
        raise PrecisionLossError("a lattice basis vector vanishes at working precision")
    m = vectors[0].ring.m
    while True:
        order = sorted(range(len(vectors)), key=lambda i: (-vectors[i].valuation, i))
        for pos, i in enumerate(order):
            w = vectors[i]
            aligned = [
                vectors[j].shift(w.valuation - vectors[j].valuation)
                for j in order[:pos]
                if (vectors[j].valuation - w.valuation) % m == 0
            ]
            reduced = _cancel_leading(w, aligned)
            if reduced is None:
                continue
            if reduced.is_zero():
                raise PrecisionLossError("lattice basis is dependent at working precision")
            vectors[i] = reduced
            break
        else:
            return tuple(vectors)


def in_truncated_lattice(lattice: LatticeSpec, z: RamifiedSeries) -> bool:
    """Whether z lies in V_B at working precision; the basis must be reduced."""
    basis = lattice.fq_basis()
    while not z.is_zero():
        reduced = _cancel_leading(z, basis)
        if reduced is None:
            return False
        z = reduced
    return True


def _exp_step(x: RamifiedSeries, scale: RamifiedSeries, q: int) -> RamifiedSeries:
    """x - x^q * scale, computed only to the precision x carries."""
    if x.is_zero() and x.is_exact():
        return x
    v_corr = q * x.valuation + scale.valuation
    if x.prec is None:
        return x - x.frobenius_q() * scale
    if v_corr >= x.prec:
        return x
    need = x.prec - v_corr
    xq = x.truncated(x.valuation - (-need // q)).frobenius_q()
    return x - xq * scale.truncated(scale.valuation + need)


def exp_eval_many(lattice: LatticeSpec, points: Sequence[RamifiedSeries]) -> list[RamifiedSeries]:
    """e_{V_B}(z) for every z in points.

    A point of V_B maps to the exact zero. The membership test is exact only
    up to working precision and assumes a reduced basis.
    """
    basis = lattice.fq_basis()
    values = list(basis) + list(points)
    q = lattice.ring.q
    for k in range(len(basis)):
        pivot = values[k]
        if pivot.is_zero():
            raise PrecisionLossError(
                f"basis vector {k} of the truncated lattice vanishes; basis is dependent at working precision"
            )
        scale = (pivot ** (q - 1)).inverse()
        for j in range(k + 1, len(values)):
            values[j] = _exp_step(values[j], scale, q)
    out = values[len(basis) :]
    for i, z in enumerate(points):
        if out[i].is_zero() and not out[i].is_exact() and in_truncated_lattice(lattice, z):
            out[i] = lattice.ring.zero()
    return out


def exp_eval(lattice: LatticeSpec, z: RamifiedSeries) -> RamifiedSeries:
    return exp_eval_many(lattice, [z])[0]


def exp_eval_naive(lattice: LatticeSpec, z: RamifiedSeries) -> RamifiedSeries:
    """The literal product z prod'(1 - z/lambda); only for tiny lattices."""
    acc = z
    one = lattice.ring.one()
    for lam in lattice.points():
        if lam.is_zero():
            continue
        acc = acc * (one - z * lam.inverse())
    return acc


def torsion_basis(basis: Sequence[RamifiedSeries], a: APoly) -> list[RamifiedSeries]:
    """F_q-basis (t^j / a) omega_i, j < deg a, of a^-1 Lambda / Lambda."""
    ring = basis[0].ring
    inv_a = ring.from_apoly(a).inverse()
    m = ring.m
    return [w.shift(-m * j) * inv_a for j in range(a.degree) for w in basis]


def torsion_points(basis: Sequence[RamifiedSeries], a: APoly) -> list[RamifiedSeries]:
    """All nonzero sum (b_i / a) omega_i with deg b_i < deg a."""
    ring = basis[0].ring
    inv_a = ring.from_apoly(a).inverse()
    polys = list(apoly_iter_all(ring.base_field, a.degree - 1))
    out = []
    for combo in product(polys, repeat=len(basis)):
        if all(b.is_zero() for b in combo):
            continue
        acc = ring.zero()
        for b, w in zip(combo, basis):
            if not b.is_zero():
                acc = acc + ring.from_apoly(b) * w
        out.append(acc * inv_a)
    return out


def expand_roots(roots: Sequence[RamifiedSeries], one: RamifiedSeries) -> list[RamifiedSeries]:
    """Coefficients (lowest first) of prod (X - root)."""
    coeffs = [one]
    for root in roots:
        shifted = [one.zero_like()] + coeffs
        coeffs = [hi - root * lo for hi, lo in zip(shifted, coeffs + [one.zero_like()])]
    return coeffs


def _phi_dense(lattice: LatticeSpec, a: APoly) -> AdditivePoly[RamifiedSeries]:
    ring = lattice.ring
    q = ring.q
    values = exp_eval_many(lattice, torsion_points(lattice.basis, a))
    one = ring.one()
    coeffs = [one]
    for e in values:
        if e.is_zero():
            raise PrecisionLossError("a torsion value vanishes at working precision")
        inv_e = e.inverse()
        shifted = [one.zero_like()] + coeffs
        coeffs = [lo - hi * inv_e for lo, hi in zip(coeffs + [one.zero_like()], shifted)]
    # phi_a(Z) = a Z prod(1 - Z/e): coefficient of Z^n is a * coeffs[n - 1]
    q_powers = {q**i - 1 for i in range(lattice.rank * a.degree + 1)}
    for n, c in enumerate(coeffs):
        if n not in q_powers and not c.is_zero():
            raise InconsistencyError(
                f"coefficient of Z^{n + 1} in phi_{a} is not zero at working precision; increase B or P"
            )
    a_series = ring.from_apoly(a)
    return AdditivePoly(q, tuple(a_series * coeffs[q**i - 1] for i in range(lattice.rank * a.degree + 1)))


def _phi_recursive(lattice: LatticeSpec, a: APoly) -> AdditivePoly[RamifiedSeries]:
    ring = lattice.ring
    q = ring.q
    one = ring.one()
    poly = AdditivePoly.identity(q, one)
    for w in exp_eval_many(lattice, torsion_basis(lattice.basis, a)):
        c = ap_eval(poly, w)
        if c.is_zero():
            raise PrecisionLossError("torsion values are dependent at working precision")
        step = AdditivePoly(q, (one, -((c ** (q - 1)).inverse())))
        poly = ap_compose(step, poly)
    return poly.scale(ring.from_apoly(a))


def phi_from_lattice(lattice: LatticeSpec, a: APoly, method: str = "auto") -> AdditivePoly[RamifiedSeries]:
    """phi^L_a(Z) = a Z prod'_{lambda in a^-1 L / L} (1 - Z / e_L(lambda))."""
    if a.degree < 1:
        if a.is_zero():
            raise ValueError("phi_a needs a != 0")
        return AdditivePoly(lattice.ring.q, (lattice.ring.from_apoly(a),))
    if method == "auto":
        method = "dense" if lattice.ring.q ** (lattice.rank * a.degree) <= DENSE_TORSION_LIMIT else "recursive"
    if method == "dense":
        return _phi_dense(lattice, a)
    if method == "recursive":
        return _phi_recursive(lattice, a)
    raise ValueError(f"unknown expansion method: {method}")


def module_coefficients(lattice: LatticeSpec) -> tuple[RamifiedSeries, ...]:
    """(t, g_1, ..., g_{rho-1}, Delta) of phi^L_t."""
    phi = phi_from_lattice(lattice, APoly.t(lattice.ring.base_field))
    return phi.coeffs


def u_param(omega: Omega, bound: int) -> RamifiedSeries:
    """u = 1 / e_{Lambda'}(omega_1), Lambda' = A omega_2 + ... + A omega_r."""
    lattice = LatticeSpec(omega.entries[1:], bound)
    value = exp_eval(lattice, omega.entries[0])
    if value.is_zero():
        raise InverseOfZeroError("omega_1 lies in Lambda' at working precision")
    return value.inverse()


def gamma_act(gamma: GammaMatrix, omega: Omega) -> tuple[Omega, RamifiedSeries]:
    """Normalized gamma * omega and the factor j = (gamma omega)_r / xi."""
    if gamma.rank != omega.rank:
        raise ValueError(f"gamma has rank {gamma.rank}, omega has rank {omega.rank}")
    ring = omega.ring
    raw = []
    for row in gamma.rows:
        acc = ring.zero()
        for a, w in zip(row, omega.entries):
            if not a.is_zero():
                acc = acc + ring.from_apoly(a) * w
        raw.append(acc)
    if raw[-1].is_zero():
        raise DegenerateActionError("last entry of gamma * omega vanishes")
    j = raw[-1] / omega.xi
    inv_j = j.inverse()
    return Omega(tuple(y * inv_j for y in raw[:-1]) + (omega.xi,)), j


def delta_direct(omega: Omega, bound: int, cross_check: bool = False) -> RamifiedSeries:
    """Delta(omega) = t * prod over nonzero alpha in (t^-1 A / A)^r of e_Lambda(omega alpha)^-1."""
    ring = omega.ring
    basis = reduce_basis(omega.entries)
    lattice = LatticeSpec(basis, bound)
    t = APoly.t(ring.base_field)
    values = exp_eval_many(lattice, torsion_points(basis, t))
    acc = ring.one()
    for v in values:
        if v.is_zero():
            raise PrecisionLossError("a t-torsion value vanishes at working precision")
        acc = acc * v
    delta = ring.t() * acc.inverse()
    if cross_check:
        leading = ap_leading(phi_from_lattice(lattice, t))
        if not leading.equals_at_precision(delta):
            raise InconsistencyError("leading coefficient of phi_t disagrees with the torsion product")
    return delta
