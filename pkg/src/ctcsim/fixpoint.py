"""Exact fixed points of a channel via a one-parameter resolvent limit.

For a channel with natural matrix M, the damped resolvent

    R_z = z * (I - (1 - z) * M)^(-1)

is entrywise a ratio of polynomials in z, and its limit as z drops to 0
is a projector R onto the fixed space of M.  Applying R to any vectorized
density matrix and renormalizing by nothing at all (the limit is already
trace-correct) produces an exact fixed point of the channel.

The whole computation stays in rational arithmetic: the determinant and
adjugate of I - (1 - z) * M are sampled at integer values of z and
interpolated to exact polynomials, and the limit is read off the lowest
nonzero coefficients.  No eigendecomposition, no floating point, no
assumption that M is diagonalizable.

cesaro_oracle is the one deliberate exception: a float-precision running
average of channel iterates, used only to cross-check the exact path.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import List

import numpy as np

from .errors import ContractViolationError, ResourceLimitError
from .exact.matrices import (
    Matrix,
    PolyMatrix,
    SingularMatrixError,
    det_and_adjugate,
    hermitian_psd_check,
    nullspace,
)
from .exact.polys import Polynomial, lagrange_interpolate
from .exact.scalars import GaussianRational, ONE, ZERO
from .superop import DensityMatrix, Superoperator, choi_matrix, unvec, vec

__all__ = [
    "SymbolicResolvent",
    "FixedPointProjector",
    "symbolic_resolvent",
    "projector_limit",
    "fixed_point_projector",
    "compute_fixed_point",
    "verify_fixed_point",
    "cesaro_oracle",
    "fixed_space_basis",
    "to_complex_array",
    "DEFAULT_DIM_CAP",
    "LARGE_DIM_CAP",
]

DEFAULT_DIM_CAP = 64
LARGE_DIM_CAP = 256


@dataclass(frozen=True)
class SymbolicResolvent:
    """R_z as exact polynomial data: entry (i,j) is numerators[i,j]/denominator."""

    dim: int
    numerators: PolyMatrix
    denominator: Polynomial
    source_matrix: Matrix

    def evaluate(self, z) -> Matrix:
        """R_z at a concrete z with nonzero denominator."""
        d = self.denominator.evaluate(z)
        if d.is_zero():
            raise ZeroDivisionError(f"denominator vanishes at z = {z}")
        return self.numerators.evaluate(z).scale(GaussianRational(1) / d)


@dataclass(frozen=True)
class FixedPointProjector:
    """The limit projector R plus the channel it projects for."""

    r_matrix: Matrix
    source: Superoperator

    def as_superoperator(self) -> Superoperator:
        return Superoperator(self.source.input_dim, self.r_matrix)


def symbolic_resolvent(m: Matrix) -> SymbolicResolvent:
    """Interpolate z*(I - (1-z)M)^(-1) to exact polynomials.

    Samples det and adjugate of I - (1-z)M at integer abscissae starting
    from z = 1 (where the grid is exactly I, so never singular), skipping
    any z that happens to hit a root of the determinant.  n + 2 good
    samples pin down every entry, since all degrees are at most n + 1.
    """
    if m.rows != m.cols:
        raise ValueError("resolvent needs a square matrix")
    n = m.rows
    need = n + 2
    samples = []  # (z0, det, z0 * adjugate)
    z0 = 1
    while len(samples) < need:
        if z0 > 3 * n + 6:
            raise RuntimeError("could not find enough nonsingular sample points")
        grid = Matrix.identity(n) - m.scale(GaussianRational(1 - z0))
        try:
            det, adj = det_and_adjugate(grid)
        except SingularMatrixError:
            z0 += 1
            continue
        samples.append((GaussianRational(z0), det, adj.scale(GaussianRational(z0))))
        z0 += 1
    bound = n + 1
    denominator = lagrange_interpolate([(z, d) for z, d, _ in samples], bound)
    polys = []
    for i in range(n):
        for j in range(n):
            pts = [(z, num.entry(i, j)) for z, _, num in samples]
            polys.append(lagrange_interpolate(pts, bound))
    return SymbolicResolvent(n, PolyMatrix(n, n, polys, bound), denominator, m)


def projector_limit(s: SymbolicResolvent) -> FixedPointProjector:
    """Take z to 0: each entry becomes the ratio of the coefficients at
    the denominator's lowest nonzero order.

    A numerator with a nonzero coefficient below that order would make
    the entry blow up as z shrinks; that can only happen when the source
    matrix did not come from a trace-preserving map, so it is reported as
    a contract violation rather than a value.
    """
    k = s.denominator.lowest_nonzero_index()
    if k is None:
        raise ContractViolationError("resolvent denominator is identically zero")
    dk = s.denominator.coeff(k)
    entries: List[GaussianRational] = []
    for i in range(s.dim):
        for j in range(s.dim):
            num = s.numerators.entry(i, j)
            low = num.lowest_nonzero_index()
            if low is not None and low < k:
                raise ContractViolationError(
                    f"resolvent entry ({i},{j}) diverges as z -> 0: numerator "
                    f"order {low} is below denominator order {k}; the source "
                    f"matrix cannot represent a trace-preserving map"
                )
            entries.append(num.coeff(k) / dk)
    r = Matrix(s.dim, s.dim, entries)
    side = math.isqrt(s.dim)
    if side * side != s.dim:
        raise ValueError(
            f"projector dimension {s.dim} is not a perfect square; the source "
            f"was not a channel representation"
        )
    return FixedPointProjector(r, Superoperator(side, s.source_matrix))


def fixed_point_projector(
    phi: Superoperator,
    max_dim: int = DEFAULT_DIM_CAP,
    allow_large: bool = False,
) -> FixedPointProjector:
    """Full pipeline with every projector invariant verified exactly.

    Idempotence, absorption on both sides, trace preservation, and
    complete positivity of the limit are all checked before returning;
    any failure means the input was not CPTP (or a kernel bug) and
    raises a contract violation.
    """
    n = phi.k_matrix.rows
    if n > max_dim:
        if allow_large and n <= LARGE_DIM_CAP:
            warnings.warn(
                f"computing an exact {n}x{n} resolvent; this can take minutes "
                f"to hours",
                RuntimeWarning,
                stacklevel=2,
            )
        else:
            raise ResourceLimitError(
                f"channel representation is {n}x{n}, above the cap of "
                f"{max_dim}x{max_dim}; pass allow_large=True to go up to "
                f"{LARGE_DIM_CAP}x{LARGE_DIM_CAP}"
            )
    proj = projector_limit(symbolic_resolvent(phi.k_matrix))
    r, k = proj.r_matrix, phi.k_matrix
    if r @ r != r:
        raise ContractViolationError("fixed-point projector is not idempotent")
    if k @ r != r or r @ k != r:
        raise ContractViolationError(
            "channel does not absorb its fixed-point projector; input was not CPTP"
        )
    rs = Superoperator(phi.input_dim, r)
    if not rs.is_trace_preserving():
        raise ContractViolationError("fixed-point projector is not trace-preserving")
    verdict = hermitian_psd_check(choi_matrix(rs))
    if not verdict:
        raise ContractViolationError(
            f"fixed-point projector is not completely positive ({verdict.reason})"
        )
    return FixedPointProjector(r, phi)


def compute_fixed_point(proj: FixedPointProjector, sigma: DensityMatrix) -> DensityMatrix:
    """Project a seed state onto the fixed space: rho = unvec(R vec(sigma)).

    The result is verified to be an exact density matrix and an exact
    fixed point of the source channel before it is returned.
    """
    n = proj.source.input_dim
    if sigma.dim != n:
        raise ValueError(f"seed has dimension {sigma.dim}, channel wants {n}")
    out = unvec(proj.r_matrix @ vec(sigma.matrix), n)
    try:
        rho = DensityMatrix(n, out)
    except ValueError as exc:
        raise ContractViolationError(
            f"projected state is not a density matrix: {exc}"
        ) from None
    if not verify_fixed_point(proj.source, rho):
        raise ContractViolationError("projected state is not fixed by the channel")
    return rho


def verify_fixed_point(phi: Superoperator, rho: DensityMatrix) -> bool:
    """Exact test of Phi(rho) == rho."""
    if rho.dim != phi.input_dim:
        raise ValueError("dimension mismatch")
    return phi.apply_matrix(rho.matrix) == rho.matrix


def to_complex_array(m: Matrix) -> np.ndarray:
    """Float snapshot of an exact matrix, for numerical cross-checks only."""
    return np.array(
        [[complex(e.re, e.im) for e in row] for row in m.to_rows()], dtype=complex
    )


def cesaro_oracle(phi: Superoperator, sigma: DensityMatrix, t: int) -> np.ndarray:
    """Running average (1/T) sum_{k<T} Phi^k(sigma) in float arithmetic.

    Converges to the same limit as the exact projector; kept strictly
    outside the exact path and used only to cross-check it.
    """
    if t < 1:
        raise ValueError("need at least one term")
    n = phi.input_dim
    k = to_complex_array(phi.k_matrix)
    cur = to_complex_array(vec(sigma.matrix)).reshape(n * n)
    acc = np.zeros(n * n, dtype=complex)
    for _ in range(t):
        acc += cur
        cur = k @ cur
    return (acc / t).reshape(n, n)


def fixed_space_basis(phi: Superoperator) -> List[Matrix]:
    """Basis of the whole fixed space of the channel, as matrices.

    Solved by exact Gaussian elimination on (K - I) v = 0; independent of
    the resolvent route, which is what makes it useful as an oracle.
    """
    n = phi.input_dim
    k = phi.k_matrix - Matrix.identity(n * n)
    return [unvec(Matrix(n * n, 1, v), n) for v in nullspace(k)]
