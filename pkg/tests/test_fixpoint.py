import random
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_quantum_program, random_rank_one_density
from ctcsim.dsl import parse_program
from ctcsim.errors import ContractViolationError, ResourceLimitError
from ctcsim.exact.matrices import Matrix, exact_inverse
from ctcsim.exact.polys import Polynomial
from ctcsim.exact.scalars import GaussianRational, Rational
from ctcsim.fixpoint import (
    cesaro_oracle,
    compute_fixed_point,
    fixed_point_projector,
    fixed_space_basis,
    projector_limit,
    symbolic_resolvent,
    to_complex_array,
    verify_fixed_point,
)
from ctcsim.gallery import QUANTUM_DEMOS
from ctcsim.superop import DensityMatrix, Superoperator, program_to_natural

HALF = GaussianRational(Rational(1, 2))


def channel_of(name):
    return program_to_natural(parse_program(QUANTUM_DEMOS[name]))


def test_identity_channel_resolvent():
    s = symbolic_resolvent(Matrix.identity(4))
    # det(I - (1-z)I) = z^4
    assert s.denominator == Polynomial([0, 0, 0, 0, 1])
    proj = projector_limit(s)
    assert proj.r_matrix == Matrix.identity(4)


def test_grandfather_resolvent_denominator():
    k = channel_of("grandfather").k_matrix
    s = symbolic_resolvent(k)
    # det(I - (1-z)K) = 1 - (1-z)^2 = 2z - z^2
    assert s.denominator == Polynomial([0, 2, -1])


def test_grandfather_projector_matrix():
    proj = fixed_point_projector(channel_of("grandfather"))
    z = GaussianRational(0)
    expected = Matrix.from_rows(
        [
            [HALF, z, z, HALF],
            [z, z, z, z],
            [z, z, z, z],
            [HALF, z, z, HALF],
        ]
    )
    assert proj.r_matrix == expected


def test_resolvent_pointwise_values():
    k = channel_of("grandfather").k_matrix
    s = symbolic_resolvent(k)
    third = Rational(1, 3)
    for z in (Rational(1, 2), third, Rational(5, 7)):
        lhs = s.evaluate(z)
        grid = Matrix.identity(4) - k.scale(GaussianRational(1 - z))
        rhs = exact_inverse(grid).scale(GaussianRational(z))
        assert lhs == rhs


@given(st.integers(0, 100_000))
def test_resolvent_matches_direct_inverse(seed):
    rng = random.Random(seed)
    prog = random_quantum_program(rng, q=1)
    k = program_to_natural(prog).k_matrix
    s = symbolic_resolvent(k)
    z = Rational(1, 2)
    grid = Matrix.identity(4) - k.scale(GaussianRational(1 - z))
    assert s.evaluate(z) == exact_inverse(grid).scale(GaussianRational(z))


def test_resolvent_matches_truncated_neumann():
    # at z = 1/2 the series z * sum (1-z)^t M^t converges geometrically,
    # so 64 terms pin the float value down to machine precision
    k = channel_of("entangler").k_matrix
    s = symbolic_resolvent(k)
    m = to_complex_array(k)
    n = m.shape[0]
    acc = np.zeros_like(m)
    term = np.eye(n, dtype=complex)
    for _ in range(64):
        acc += term
        term = 0.5 * (m @ term)
    exact = to_complex_array(s.evaluate(Rational(1, 2)))
    assert np.max(np.abs(exact - 0.5 * acc)) < 1e-12


def test_divergent_resolvent_is_a_contract_violation():
    # a Jordan block on eigenvalue 1 cannot come from a channel: the
    # resolvent entry above the diagonal grows like 1/z
    j = Matrix.from_rows(
        [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    )
    s = symbolic_resolvent(j)
    with pytest.raises(ContractViolationError, match="diverges"):
        projector_limit(s)


def test_projector_limit_needs_square_dimension():
    m = Matrix.from_rows([[1, 0], [0, 1]])
    with pytest.raises(ValueError, match="perfect square"):
        projector_limit(symbolic_resolvent(m))


def test_non_trace_preserving_source_rejected():
    doubled = Superoperator(2, Matrix.identity(4).scale(2))
    with pytest.raises(ContractViolationError):
        fixed_point_projector(doubled)


def test_dimension_cap():
    big = Superoperator(16, Matrix.identity(256))
    with pytest.raises(ResourceLimitError, match="allow_large"):
        fixed_point_projector(big)


def test_allow_large_warns_and_computes():
    small = Superoperator(4, Matrix.identity(16))
    with pytest.warns(RuntimeWarning, match="minutes"):
        proj = fixed_point_projector(small, max_dim=8, allow_large=True)
    assert proj.r_matrix == Matrix.identity(16)


def test_grandfather_fixed_point_is_even_mixture():
    proj = fixed_point_projector(channel_of("grandfather"))
    rho = compute_fixed_point(proj, DensityMatrix.basis_state(2, 0))
    assert rho.matrix == Matrix.identity(2).scale(HALF)
    assert verify_fixed_point(proj.source, rho)


def test_dephase_keeps_diagonal_seeds():
    phi = channel_of("dephase")
    proj = fixed_point_projector(phi)
    one = compute_fixed_point(proj, DensityMatrix.basis_state(2, 1))
    assert one.matrix == DensityMatrix.basis_state(2, 1).matrix
    plus = DensityMatrix(2, Matrix.from_rows([[HALF, HALF], [HALF, HALF]]))
    projected = compute_fixed_point(proj, plus)
    assert projected.matrix == Matrix.identity(2).scale(HALF)


def test_reset_channel_forces_zero():
    proj = fixed_point_projector(channel_of("reset"))
    rho = compute_fixed_point(proj, DensityMatrix.maximally_mixed(2))
    assert rho.matrix == DensityMatrix.basis_state(2, 0).matrix


def test_fixed_space_dimensions():
    assert len(fixed_space_basis(channel_of("grandfather"))) == 1
    assert len(fixed_space_basis(channel_of("dephase"))) == 2
    assert len(fixed_space_basis(channel_of("rotation"))) == 2
    assert len(fixed_space_basis(Superoperator(2, Matrix.identity(4)))) == 4


@given(st.integers(0, 100_000))
def test_fixed_space_basis_elements_are_fixed(seed):
    rng = random.Random(seed)
    phi = program_to_natural(random_quantum_program(rng))
    for b in fixed_space_basis(phi):
        assert phi.apply_matrix(b) == b


@given(st.integers(0, 100_000))
def test_projector_fixes_what_the_nullspace_finds(seed):
    """Completeness cross-check between the two independent routes."""
    rng = random.Random(seed)
    phi = program_to_natural(random_quantum_program(rng, q=1))
    proj = fixed_point_projector(phi)
    from ctcsim.superop import vec

    for b in fixed_space_basis(phi):
        assert proj.r_matrix @ vec(b) == vec(b)


@given(st.integers(0, 100_000))
def test_projected_seeds_are_exact_fixed_points(seed):
    rng = random.Random(seed)
    prog = random_quantum_program(rng, q=1)
    phi = program_to_natural(prog)
    proj = fixed_point_projector(phi)
    sigma = random_rank_one_density(rng, phi.input_dim)
    rho = compute_fixed_point(proj, sigma)
    assert verify_fixed_point(phi, rho)


def test_cesaro_oracle_approaches_exact_limit():
    phi = channel_of("grandfather")
    proj = fixed_point_projector(phi)
    sigma = DensityMatrix.basis_state(2, 0)
    exact = to_complex_array(compute_fixed_point(proj, sigma).matrix)
    approx = cesaro_oracle(phi, sigma, 20_000)
    assert np.max(np.abs(exact - approx)) < 1e-3


def test_cesaro_oracle_validates_count():
    phi = channel_of("grandfather")
    with pytest.raises(ValueError):
        cesaro_oracle(phi, DensityMatrix.maximally_mixed(2), 0)


def test_trivial_one_dimensional_channel():
    proj = fixed_point_projector(Superoperator(1, Matrix.identity(1)))
    assert proj.r_matrix == Matrix.identity(1)


def test_compute_fixed_point_dimension_check():
    proj = fixed_point_projector(channel_of("grandfather"))
    with pytest.raises(ValueError):
        compute_fixed_point(proj, DensityMatrix.maximally_mixed(4))
