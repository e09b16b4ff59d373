import random

import pytest

from drinfeld_delta.additive import ap_compose
from drinfeld_delta.apoly import APoly
from drinfeld_delta.errors import InverseOfZeroError, PrecisionLossError
from drinfeld_delta.galois import field_of_order
from drinfeld_delta.lattice import (
    GammaMatrix,
    LatticeSpec,
    Omega,
    delta_direct,
    exp_eval,
    exp_eval_many,
    exp_eval_naive,
    gamma_act,
    in_truncated_lattice,
    module_coefficients,
    phi_from_lattice,
    reduce_basis,
    torsion_points,
    u_param,
)
from drinfeld_delta.verification import build_omega, builtin_points


def _small_omega(name="q2r2-a", precision=60):
    (spec,) = [spec for spec in builtin_points() if spec.name == name]
    return build_omega(spec, precision)


def test_exp_of_zero_and_of_lattice_points():
    omega = _small_omega()
    ring = omega.ring
    lattice = LatticeSpec.of(omega, 2)
    t = ring.from_apoly(APoly.t(ring.base_field))
    assert exp_eval(lattice, ring.zero()).is_zero()
    lam = omega.entries[0] + t * omega.xi
    assert exp_eval(lattice, lam).is_zero()


def test_subspace_recursion_matches_literal_product():
    omega = _small_omega()
    ring = omega.ring
    lattice = LatticeSpec.of(omega, 1)
    rng = random.Random(8)
    for _ in range(5):
        z = ring.from_coefficients(-6, [1] + [rng.randrange(2) for _ in range(40)], 35) * omega.xi.shift(4)
        assert exp_eval(lattice, z).equals_at_precision(exp_eval_naive(lattice, z))


def test_exp_is_nonzero_off_the_lattice():
    omega = _small_omega()
    ring = omega.ring
    lattice = LatticeSpec.of(omega, 2)
    rng = random.Random(12)
    arguments = [
        ring.from_coefficients(rng.randrange(-12, 0), [1] + [rng.randrange(2) for _ in range(30)], None)
        for _ in range(20)
    ]
    for value in exp_eval_many(lattice, arguments):
        assert not value.is_zero()


def test_u_param_is_small():
    omega = _small_omega()
    u = u_param(omega, 3)
    assert u.valuation == 6


def test_u_param_of_lattice_point_raises():
    omega = _small_omega()
    degenerate = Omega((omega.xi, omega.xi))
    with pytest.raises(InverseOfZeroError):
        u_param(degenerate, 2)


def test_dense_and_recursive_phi_agree(point_q2r2):
    prime = LatticeSpec(point_q2r2.omega.entries, 3)
    t = APoly.t(point_q2r2.ring.base_field)
    dense = phi_from_lattice(prime, t, method="dense")
    recursive = phi_from_lattice(prime, t, method="recursive")
    assert dense.tau_degree == recursive.tau_degree == 2
    for a, b in zip(dense.coeffs, recursive.coeffs):
        assert a.equals_at_precision(b)


def test_phi_is_a_ring_homomorphism(point_q3r2):
    lattice = LatticeSpec.of(point_q3r2.omega, 3)
    field = point_q3r2.ring.base_field
    t = APoly.t(field)
    a = t + APoly.constant(field, 1)
    phi_t = phi_from_lattice(lattice, t)
    phi_a = phi_from_lattice(lattice, a)
    phi_ta = phi_from_lattice(lattice, t * a)
    assert phi_ta.tau_degree == 4
    for x, y in zip(phi_ta.coeffs, ap_compose(phi_t, phi_a).coeffs):
        assert x.equals_at_precision(y)
    for x, y in zip(ap_compose(phi_a, phi_t).coeffs, ap_compose(phi_t, phi_a).coeffs):
        assert x.equals_at_precision(y)


def test_delta_is_leading_coefficient(point_q2r2):
    omega = point_q2r2.omega
    delta = delta_direct(omega, 3, cross_check=True)
    coefficients = module_coefficients(LatticeSpec.of(omega, 3))
    assert delta.equals_at_precision(coefficients[-1])


def test_torsion_points_count(point_q2r2):
    field = point_q2r2.ring.base_field
    t2 = APoly.monomial(field, 1, 2)
    assert len(torsion_points(point_q2r2.omega.entries, t2)) == 2**4 - 1


def test_gamma_identity_action(point_q2r2):
    field = point_q2r2.ring.base_field
    moved, j = gamma_act(GammaMatrix.identity(field, 2), point_q2r2.omega)
    assert j.equals_at_precision(point_q2r2.ring.one())
    assert moved.entries[0].equals_at_precision(point_q2r2.omega.entries[0])


def test_gamma_must_be_unimodular():
    field = field_of_order(2)
    t = APoly.t(field)
    with pytest.raises(ValueError):
        GammaMatrix.from_ints(field, [[t, 0], [0, 1]])
    gamma = GammaMatrix.from_ints(field, [[1, t], [0, 1]])
    assert gamma.determinant() == APoly.constant(field, 1)


def test_covariance_under_swap(point_q3r2):
    field = point_q3r2.ring.base_field
    gamma = GammaMatrix.from_ints(field, [[0, 1], [1, 0]])
    moved, j = gamma_act(gamma, point_q3r2.omega)
    left = delta_direct(moved, 3)
    right = j ** (3**2 - 1) * point_q3r2.direct
    assert left.agreement(right) >= min(left.prec, right.prec)


def test_region_parameter(point_q2r2, point_q2r3):
    assert point_q2r2.omega.general_position_verified
    assert point_q2r2.region == 1
    assert point_q2r3.omega.general_position_verified
    assert point_q2r3.region == 1


def test_check_normalization():
    omega = _small_omega()
    omega.check_normalization(omega.xi)
    with pytest.raises(ValueError):
        omega.check_normalization(omega.entries[0])


def _random_series(ring, rng, count=5):
    return [
        ring.from_coefficients(rng.randrange(-12, 0), [1] + [rng.randrange(ring.q) for _ in range(30)], None)
        for _ in range(count)
    ]


def test_exp_of_lattice_point_is_exact_zero():
    omega = _small_omega()
    ring = omega.ring
    lattice = LatticeSpec.of(omega, 2)
    lam = omega.entries[0] + ring.t() * omega.xi
    value = exp_eval(lattice, lam)
    assert value.is_zero()
    assert value.is_exact()
    assert in_truncated_lattice(lattice, lam)
    assert not in_truncated_lattice(lattice, lam + ring.one())


@pytest.mark.parametrize("name", ["q2r2-a", "q3r2-a"])
def test_exp_is_fq_linear(name):
    omega = _small_omega(name)
    ring = omega.ring
    lattice = LatticeSpec.of(omega, 2)
    rng = random.Random(21)
    xs = _random_series(ring, rng)
    ys = _random_series(ring, rng)
    c = ring.embed(ring.q - 1)
    for x, y in zip(xs, ys):
        ex, ey, exy, ecx = exp_eval_many(lattice, [x, y, x + y, x.scale(c)])
        assert exy.equals_at_precision(ex + ey)
        assert ecx.equals_at_precision(ex.scale(c))


def test_exp_scales_with_the_lattice():
    omega = _small_omega()
    ring = omega.ring
    c = ring.from_coefficients(-1, [1, 0, 1, 1], None)
    lattice = LatticeSpec.of(omega, 2)
    scaled = LatticeSpec(tuple(c * w for w in omega.entries), 2)
    for z in _random_series(ring, random.Random(4)):
        assert exp_eval(scaled, c * z).equals_at_precision(c * exp_eval(lattice, z))


def test_u_is_invariant_under_translating_omega_1():
    omega = _small_omega()
    ring = omega.ring
    t = ring.t()
    u = u_param(omega, 3)
    for lam in (omega.xi, t * omega.xi, (t * t + ring.one()) * omega.xi):
        moved = Omega((omega.entries[0] + lam, omega.xi))
        assert u_param(moved, 3).equals_at_precision(u)


def test_reduce_basis_leaves_general_position_alone(point_q2r3):
    entries = point_q2r3.omega.entries
    reduced = reduce_basis(entries)
    assert all(a.equals_at_precision(b) for a, b in zip(reduced, entries))


def test_reduce_basis_undoes_a_unimodular_change():
    omega = _small_omega()
    ring = omega.ring
    w1, xi = omega.entries
    skewed = (w1, xi + ring.t() * w1)
    reduced = reduce_basis(skewed)
    assert reduced[0].equals_at_precision(w1)
    assert reduced[1].equals_at_precision(xi)
    assert delta_direct(Omega(skewed), 2).equals_at_precision(delta_direct(omega, 2))


def test_reduce_basis_rejects_dependent_vectors():
    omega = _small_omega()
    with pytest.raises(PrecisionLossError):
        reduce_basis((omega.xi, omega.xi))
