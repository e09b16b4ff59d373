"""Numeric verification of the product expansion against the lattice definition.

Every case returns a normalized dict:

    {"case", "params", "pass", "status", "valuation_of_difference",
     "guaranteed_precision", "digits", "evidence"}

``status`` is "passed", "failed" or "precision_exhausted". Precisions are
absolute s-adic exponents; ``digits`` is the guaranteed precision relative to
the valuation of the compared value.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Sequence

from .additive import AdditivePoly, ap_eval, ap_leading
from .apoly import APoly, apoly_iter_all, apoly_monic_of_degree
from .config import RunConfig
from .errors import EXIT_OK, EXIT_PRECISION_EXHAUSTED, EXIT_VERIFICATION_FAILED, PrecisionLossError
from .expansion import ExpansionResult, StatusCallback, degree_bound, delta_expansion, evaluate_expansion, factor_valuation
from .galois import GaloisField, field_of_order
from .lattice import (
    GammaMatrix,
    LatticeSpec,
    Omega,
    delta_direct,
    exp_eval,
    exp_eval_many,
    expand_roots,
    gamma_act,
    phi_from_lattice,
    torsion_points,
    u_param,
)
from .period import compute_xi
from .series import RamifiedSeries, SeriesRing
from .symbolic import ModuleValues, f_a_build, specialize

CaseCheck = Callable[[], dict[str, Any]]

CASE_KEYS = (
    "case",
    "params",
    "pass",
    "status",
    "valuation_of_difference",
    "guaranteed_precision",
    "digits",
    "evidence",
)

IDENTITY_SAMPLES = 10

DEFAULT_COMBINATIONS = ((2, 2), (3, 2), (2, 3), (3, 3))


@dataclass(frozen=True)
class PointSpec:
    """omega_i = unit_i * xi * s^(-exponent_i) for i < r, omega_r = xi."""

    name: str
    q: int
    rank: int
    m: int
    exponents: tuple[int, ...]
    units: tuple[int, ...]


BUILTIN_POINTS: tuple[PointSpec, ...] = (
    PointSpec("q2r2-a", 2, 2, 2, (1,), (1,)),
    PointSpec("q2r2-b", 2, 2, 2, (3,), (1,)),
    PointSpec("q2r2-c", 2, 2, 2, (5,), (1,)),
    PointSpec("q3r2-a", 3, 2, 2, (1,), (1,)),
    PointSpec("q3r2-b", 3, 2, 2, (3,), (2,)),
    PointSpec("q3r2-c", 3, 2, 2, (5,), (1,)),
    PointSpec("q2r3-a", 2, 3, 3, (2, 1), (1, 1)),
    PointSpec("q2r3-b", 2, 3, 3, (5, 1), (1, 1)),
    PointSpec("q3r3-a", 3, 3, 6, (2, 1), (1, 1)),
)


def builtin_points(q: int | None = None, rank: int | None = None) -> list[PointSpec]:
    return [
        spec
        for spec in BUILTIN_POINTS
        if (q is None or spec.q == q) and (rank is None or spec.rank == rank)
    ]


def build_omega(spec: PointSpec, precision: int) -> Omega:
    xi = compute_xi(spec.q, precision, m=spec.m)
    ring = xi.ring
    firsts = [xi.shift(-e).scale(ring.embed(c)) for e, c in zip(spec.exponents, spec.units)]
    return Omega.normalized(firsts, xi)


@dataclass
class TestPoint:
    """A point omega with everything the product formula needs, at B and at B+1."""

    __test__ = False

    spec: PointSpec
    omega: Omega
    bound: int
    u: RamifiedSeries
    values: ModuleValues
    phi_prime: AdditivePoly
    prime_torsion: tuple[RamifiedSeries, ...]
    direct: RamifiedSeries
    u_next: RamifiedSeries
    values_next: ModuleValues
    phi_prime_next: AdditivePoly
    prime_torsion_next: tuple[RamifiedSeries, ...]
    direct_next: RamifiedSeries

    @property
    def ring(self) -> SeriesRing:
        return self.omega.ring

    @property
    def torsion_valuation(self) -> int:
        """Valuation of the largest t-torsion value of Lambda'."""
        return min(v.valuation for v in self.prime_torsion)

    @property
    def region(self) -> int | None:
        return self.omega.region_parameter()


def module_values(phi: AdditivePoly, ring: SeriesRing, rank: int) -> ModuleValues:
    if rank == 2:
        return ModuleValues(ring)
    coeffs = phi.coeffs
    return ModuleValues(ring, tuple(coeffs[1:-1]), coeffs[-1])


def prepare_point(spec: PointSpec, precision: int, bound: int) -> TestPoint:
    omega = build_omega(spec, precision)
    ring = omega.ring
    t = APoly.t(ring.base_field)
    prime = LatticeSpec(omega.entries[1:], bound)
    prime_next = LatticeSpec(omega.entries[1:], bound + 1)
    phi = phi_from_lattice(prime, t)
    phi_next = phi_from_lattice(prime_next, t)
    torsion = exp_eval_many(prime, torsion_points(prime.basis, t))
    torsion_next = exp_eval_many(prime_next, torsion_points(prime.basis, t))
    return TestPoint(
        spec=spec,
        omega=omega,
        bound=bound,
        u=u_param(omega, bound),
        values=module_values(phi, ring, spec.rank),
        phi_prime=phi,
        prime_torsion=tuple(torsion),
        direct=delta_direct(omega, bound),
        u_next=u_param(omega, bound + 1),
        values_next=module_values(phi_next, ring, spec.rank),
        phi_prime_next=phi_next,
        prime_torsion_next=tuple(torsion_next),
        direct_next=delta_direct(omega, bound + 1),
    )


@lru_cache(maxsize=None)
def cached_expansion(q: int, rank: int, order: int, degree: int | None) -> ExpansionResult:
    return delta_expansion(q, rank, order, degree_override=degree)


# -- precision bookkeeping -----------------------------------------------


def _precisions(*values: int | None) -> int | None:
    known = [v for v in values if v is not None]
    return min(known) if known else None


def _difference_valuation(x: RamifiedSeries, y: RamifiedSeries) -> int | None:
    return x.agreement(y)


def tail_bound(expansion: ExpansionResult, point: TestPoint) -> int:
    """Valuation bound for the u-series terms beyond the computed ones.

    Every coefficient sigma_n of the product satisfies |sigma_n| <= d^n with d
    the largest t-torsion value of Lambda', so the missing part is bounded by
    |Delta'^q u^(q-1)| (d |u|)^M.
    """
    q, rank = expansion.q, expansion.rank
    computed = expansion.order - (q - 1)
    missing = factor_valuation(q, rank, expansion.degree + 1)
    terms = min(computed, missing)
    rate = point.u.valuation + point.torsion_valuation
    head = (q - 1) * point.u.valuation
    if rank > 2:
        head += q * point.values.delta.valuation
    return head + terms * rate


def _status(passed: bool, digits: int | None, target: int) -> str:
    if not passed:
        return "failed"
    if digits is not None and digits < target:
        return "precision_exhausted"
    return "passed"


def _case(
    case: str,
    params: dict[str, Any],
    value: RamifiedSeries,
    difference: int | None,
    guaranteed: int | None,
    target: int,
    evidence: dict[str, Any] | None = None,
) -> dict[str, Any]:
    digits = None
    if guaranteed is not None and not value.is_zero():
        digits = guaranteed - value.valuation
    passed = difference is None or guaranteed is None or difference >= guaranteed
    status = _status(passed, digits, target)
    return {
        "case": case,
        "params": params,
        "pass": status == "passed",
        "status": status,
        "valuation_of_difference": difference,
        "guaranteed_precision": guaranteed,
        "digits": digits,
        "evidence": dict(evidence or {}),
    }


def _params(point: TestPoint, **extra: Any) -> dict[str, Any]:
    params = {
        "q": point.spec.q,
        "r": point.spec.rank,
        "point": point.spec.name,
        "B": point.bound,
        "P": point.ring.prec,
    }
    params.update(extra)
    return params


# -- cases ---------------------------------------------------------------


def verify_product_vs_direct(
    point: TestPoint,
    order: int,
    degree: int | None = None,
    target_digits: int = 40,
) -> dict[str, Any]:
    spec = point.spec
    expansion = cached_expansion(spec.q, spec.rank, order, degree)
    product = evaluate_expansion(expansion, point.values, point.u)
    product_next = evaluate_expansion(expansion, point.values_next, point.u_next)
    guaranteed = _precisions(
        point.direct.prec,
        point.direct.agreement(point.direct_next),
        product.prec,
        product.agreement(product_next),
        tail_bound(expansion, point),
    )
    return _case(
        "product_vs_direct",
        _params(point, N=order, D=expansion.degree),
        point.direct,
        _difference_valuation(point.direct, product),
        guaranteed,
        target_digits,
        {
            "valuation_of_delta": point.direct.valuation,
            "log_q_abs_u": str(point.u.log_abs()),
            "region": point.region,
            "tail_bound": tail_bound(expansion, point),
        },
    )


def default_gammas(field: GaloisField, rank: int) -> list[tuple[str, GammaMatrix]]:
    t = APoly.t(field)
    one = APoly.constant(field, 1)
    zero = APoly(field)
    minus_one = APoly.constant(field, field.neg(1))

    def with_entries(entries: dict[tuple[int, int], APoly]) -> GammaMatrix:
        rows = [[one if i == j else zero for j in range(rank)] for i in range(rank)]
        for (i, j), a in entries.items():
            rows[i][j] = a
        return GammaMatrix(tuple(tuple(row) for row in rows))

    last = rank - 1
    return [
        ("identity", with_entries({})),
        ("swap", with_entries({(0, 0): zero, (last, last): zero, (0, last): one, (last, 0): one})),
        ("upper_t", with_entries({(0, last): t})),
        ("lower_one", with_entries({(last, 0): one})),
        ("upper_t2_plus_1", with_entries({(0, 1): t * t + one})),
        ("diagonal", with_entries({(0, 0): minus_one})),
        ("mixed", with_entries({(0, 0): t, (0, 1): one, (1, 0): one, (1, 1): zero})),
    ]


def random_gamma(field: GaloisField, rank: int, rng: random.Random) -> GammaMatrix:
    i, j = rng.sample(range(rank), 2)
    entry = APoly(field, (rng.randrange(field.order), rng.randrange(1, field.order)))
    rows = [[APoly.constant(field, int(a == b)) for b in range(rank)] for a in range(rank)]
    rows[i][j] = entry
    return GammaMatrix(tuple(tuple(row) for row in rows))


def verify_covariance(point: TestPoint, name: str, gamma: GammaMatrix, target_digits: int = 40) -> dict[str, Any]:
    q, rank = point.spec.q, point.spec.rank
    moved, j = gamma_act(gamma, point.omega)
    left = delta_direct(moved, point.bound)
    left_next = delta_direct(moved, point.bound + 1)
    right = j ** (q**rank - 1) * point.direct
    guaranteed = _precisions(
        left.prec,
        left.agreement(left_next),
        right.prec,
        point.direct.agreement(point.direct_next),
    )
    return _case(
        "covariance",
        _params(point, gamma=name),
        left,
        _difference_valuation(left, right),
        guaranteed,
        target_digits,
        {"log_q_abs_j": str(j.log_abs())},
    )


def random_series(ring: SeriesRing, rng: random.Random, valuation: int, length: int) -> RamifiedSeries:
    coeffs = [rng.randrange(1, ring.field.order)] + [rng.randrange(ring.field.order) for _ in range(length - 1)]
    return ring.from_coefficients(valuation, coeffs, valuation + length)


def random_argument(point: TestPoint, rng: random.Random) -> RamifiedSeries:
    """xi times a random series of absolute value below 1."""
    ring = point.ring
    small = random_series(ring, rng, rng.randrange(1, ring.m + 1), ring.prec)
    return point.omega.xi * small


def _exponential_product(prime: LatticeSpec, omega_1: RamifiedSeries, x: RamifiedSeries, b_prime: int) -> RamifiedSeries:
    ring = prime.ring
    multiples = [ring.from_apoly(a) * omega_1 for a in apoly_iter_all(ring.base_field, b_prime) if not a.is_zero()]
    values = exp_eval_many(prime, [x] + multiples)
    y = values[0]
    acc = y
    one = ring.one()
    for w in values[1:]:
        acc = acc * (one + y * w.inverse())
    return acc


def exponential_product_degree(q: int) -> int:
    """Largest deg a in the omega_1-product of the exponential identity."""
    return 3 if q == 2 else 1


def check_exponential_product_identity(
    point: TestPoint, x: RamifiedSeries, b_prime: int, target_digits: int = 40, sample: int = 0
) -> dict[str, Any]:
    """e_Lambda(x) = e'(x) prod'_{deg a <= B'} (e'(x) + e'(a omega_1)) / e'(a omega_1)."""
    omega = point.omega
    lhs = exp_eval(LatticeSpec.of(omega, point.bound), x)
    lhs_next = exp_eval(LatticeSpec.of(omega, point.bound + 1), x)
    prime = LatticeSpec(omega.entries[1:], point.bound)
    prime_next = LatticeSpec(omega.entries[1:], point.bound + 1)
    rhs = _exponential_product(prime, omega.entries[0], x, b_prime)
    rhs_next = _exponential_product(prime_next, omega.entries[0], x, b_prime + 1)
    guaranteed = _precisions(lhs.prec, lhs.agreement(lhs_next), rhs.prec, rhs.agreement(rhs_next))
    return _case(
        "exponential_product_identity",
        _params(point, b_prime=b_prime, sample=sample),
        lhs,
        _difference_valuation(lhs, rhs),
        guaranteed,
        target_digits,
    )


def _torsion_sides(
    phi: AdditivePoly, torsion: Sequence[RamifiedSeries], z0: RamifiedSeries
) -> tuple[list[RamifiedSeries], list[RamifiedSeries]]:
    ring = z0.ring
    q = ring.q
    roots = [z0] + [z0 + tau for tau in torsion]
    lhs = [ap_leading(phi) * c for c in expand_roots(roots, ring.one())]
    rhs = [ring.zero() for _ in lhs]
    rhs[0] = -ap_eval(phi, z0)
    for i, c in enumerate(phi.coeffs):
        rhs[q**i] = rhs[q**i] + c
    return lhs, rhs


def check_torsion_product_identity(
    point: TestPoint, z0: RamifiedSeries, target_digits: int = 40, sample: int = 0
) -> dict[str, Any]:
    """Delta' prod_{phi_t(z) = phi_t(z0)} (X - z) = phi_t(X - z0) coefficientwise."""
    lhs, rhs = _torsion_sides(point.phi_prime, point.prime_torsion, z0)
    lhs_next, rhs_next = _torsion_sides(point.phi_prime_next, point.prime_torsion_next, z0)
    worst_difference: int | None = None
    guaranteed: int | None = None
    for a, b, a_next, b_next in zip(lhs, rhs, lhs_next, rhs_next):
        diff = a - b
        if not diff.is_zero():
            worst_difference = _precisions(worst_difference, diff.valuation)
        guaranteed = _precisions(guaranteed, a.prec, b.prec, a.agreement(a_next), b.agreement(b_next))
    if worst_difference is None:
        worst_difference = guaranteed
    return _case(
        "torsion_product_identity",
        _params(point, sample=sample),
        lhs[-1],
        worst_difference,
        guaranteed,
        target_digits,
        {"degree": len(lhs) - 1},
    )


def check_leading_power(point: TestPoint, target_digits: int = 40) -> dict[str, Any]:
    """Leading coefficient of phi'_{t^2} equals (leading of phi'_t)^(1 + q^rho)."""
    ring = point.ring
    rho = point.spec.rank - 1
    t2 = APoly.monomial(ring.base_field, 1, 2)
    exponent = 1 + ring.q**rho

    def leading_t2(bound: int) -> RamifiedSeries:
        prime = LatticeSpec(point.omega.entries[1:], bound)
        return ap_leading(phi_from_lattice(prime, t2, method="recursive"))

    lead_t2 = leading_t2(point.bound)
    lead_t2_next = leading_t2(point.bound + 1)
    expected = ap_leading(point.phi_prime) ** exponent
    expected_next = ap_leading(point.phi_prime_next) ** exponent
    guaranteed = _precisions(
        lead_t2.prec,
        lead_t2.agreement(lead_t2_next),
        expected.prec,
        expected.agreement(expected_next),
    )
    return _case(
        "leading_power",
        _params(point),
        lead_t2,
        _difference_valuation(lead_t2, expected),
        guaranteed,
        target_digits,
    )


def factor_decay_table(point: TestPoint, max_degree: int) -> list[dict[str, Any]]:
    """Largest |f_a(u)| over monic a of each degree, with the valuation it must exceed."""
    q, rank = point.spec.q, point.spec.rank
    ring = point.ring
    field = ring.base_field
    rows = []
    for d in range(1, max_degree + 1):
        tau = (rank - 1) * d
        exponents = [q**tau - q**i for i in range(tau)]
        powers = {n: point.u**n for n in exponents}
        best: int | None = None
        for a in apoly_monic_of_degree(field, d):
            value = ring.zero()
            for n, c in f_a_build(a, rank).items():
                value = value + specialize(c, point.values) * powers[n]
            if value.is_zero():
                continue
            best = value.valuation if best is None else min(best, value.valuation)
        rows.append(
            {
                "degree": d,
                "count": q**d,
                "valuation": best,
                "log_q_size": None if best is None else str(Fraction(-best, ring.m)),
                "min_exponent": factor_valuation(q, rank, d),
            }
        )
    return rows


def check_factor_decay(point: TestPoint, max_degree: int) -> dict[str, Any]:
    rows = factor_decay_table(point, max_degree)
    valuations = [row["valuation"] for row in rows]
    decreasing = all(v is not None for v in valuations) and all(
        a < b for a, b in zip(valuations, valuations[1:])
    )
    return {
        "case": "factor_decay",
        "params": _params(point, max_degree=max_degree),
        "pass": decreasing,
        "status": "passed" if decreasing else "failed",
        "valuation_of_difference": None,
        "guaranteed_precision": None,
        "digits": None,
        "evidence": {"rows": rows},
    }


# -- suite ---------------------------------------------------------------


def _normalize_case(result: dict[str, Any]) -> dict[str, Any]:
    status = str(result.get("status", "failed"))
    return {
        "case": str(result.get("case", "unknown_case")),
        "params": dict(result.get("params", {})),
        "pass": status == "passed",
        "status": status,
        "valuation_of_difference": result.get("valuation_of_difference"),
        "guaranteed_precision": result.get("guaranteed_precision"),
        "digits": result.get("digits"),
        "evidence": dict(result.get("evidence", {})),
    }


def _run_case(name: str, params: dict[str, Any], check: CaseCheck) -> dict[str, Any]:
    try:
        raw = check()
    except PrecisionLossError as exc:
        raw = {"case": name, "params": params, "status": "precision_exhausted", "evidence": {"error": str(exc)}}
    except Exception as exc:
        raw = {"case": name, "params": params, "status": "failed", "evidence": {"error": f"{type(exc).__name__}: {exc}"}}
    return _normalize_case(raw)


def point_cases(point: TestPoint, config: RunConfig, rng: random.Random, first: bool) -> list[tuple[str, dict[str, Any], CaseCheck]]:
    """The checks run at one prepared point."""
    q, rank = point.spec.q, point.spec.rank
    field = field_of_order(q)
    target = config.target_digits
    params = _params(point)
    cases: list[tuple[str, dict[str, Any], CaseCheck]] = [
        ("product_vs_direct", params, lambda: verify_product_vs_direct(point, config.N, config.D, target)),
    ]
    if not first:
        return cases
    gammas = default_gammas(field, rank) + [("random", random_gamma(field, rank, rng))]
    for name, gamma in gammas:
        cases.append(("covariance", params, lambda name=name, gamma=gamma: verify_covariance(point, name, gamma, target)))
    b_prime = exponential_product_degree(q)
    for sample in range(IDENTITY_SAMPLES):
        x = random_argument(point, rng)
        cases.append(
            (
                "exponential_product_identity",
                params,
                lambda x=x, sample=sample: check_exponential_product_identity(point, x, b_prime, target, sample),
            )
        )
    for sample in range(IDENTITY_SAMPLES):
        z0 = random_argument(point, rng)
        cases.append(
            (
                "torsion_product_identity",
                params,
                lambda z0=z0, sample=sample: check_torsion_product_identity(point, z0, target, sample),
            )
        )
    cases.append(("leading_power", params, lambda: check_leading_power(point, target)))
    if rank == 2:
        max_degree = min(4, degree_bound(config.N, q, rank) + 1)
        cases.append(("factor_decay", params, lambda: check_factor_decay(point, max_degree)))
    return cases


def run_verification_suite(
    config: RunConfig,
    combinations: Sequence[tuple[int, int]] = DEFAULT_COMBINATIONS,
    status_callback: StatusCallback | None = None,
) -> list[dict[str, Any]]:
    rng = random.Random(config.seed)
    results: list[dict[str, Any]] = []
    for q, rank in combinations:
        for index, spec in enumerate(builtin_points(q, rank)):
            if status_callback:
                status_callback(f"preparing point {spec.name} (B={config.B}, P={config.P})")
            params = {"q": q, "r": rank, "point": spec.name, "B": config.B, "P": config.P}
            try:
                point = prepare_point(spec, config.P, config.B)
            except Exception as exc:
                status = "precision_exhausted" if isinstance(exc, PrecisionLossError) else "failed"
                results.append(
                    _normalize_case(
                        {"case": "prepare_point", "params": params, "status": status, "evidence": {"error": str(exc)}}
                    )
                )
                continue
            for name, case_params, check in point_cases(point, config, rng, first=index == 0):
                result = _run_case(name, case_params, check)
                if status_callback:
                    status_callback(f"{spec.name} {result['case']}: {result['status']}")
                results.append(result)
    return results


def suite_exit_code(results: Sequence[dict[str, Any]]) -> int:
    statuses = {item["status"] for item in results}
    if "failed" in statuses:
        return EXIT_VERIFICATION_FAILED
    if "precision_exhausted" in statuses:
        return EXIT_PRECISION_EXHAUSTED
    return EXIT_OK


def summarize(results: Sequence[dict[str, Any]]) -> dict[str, Any]:
    return {
        "total_cases": len(results),
        "passed_cases": sum(1 for item in results if item["pass"]),
        "failed_cases": [f"{item['params'].get('point')}:{item['case']}" for item in results if item["status"] == "failed"],
        "exhausted_cases": [
            f"{item['params'].get('point')}:{item['case']}" for item in results if item["status"] == "precision_exhausted"
        ],
    }


def evaluate_point(spec: PointSpec, config: RunConfig) -> dict[str, Any]:
    """Delta at a built-in point by both routes, for the eval command."""
    point = prepare_point(spec, config.P, config.B)
    case = verify_product_vs_direct(point, config.N, config.D, config.target_digits)
    expansion = cached_expansion(spec.q, spec.rank, config.N, config.D)
    product = evaluate_expansion(expansion, point.values, point.u)
    return {
        "point": spec.name,
        "q": spec.q,
        "r": spec.rank,
        "u": point.u.to_dict(),
        "delta_product": product.to_dict(),
        "delta_direct": point.direct.to_dict(),
        "comparison": case,
    }

