"""Exact channel representations for the causally consistent register.

A quantum program induces a channel on its CTC register: run the circuit
unitary on CTC tensor ancilla, then trace out the ancilla block.  Working
with the channel as an N^2 x N^2 matrix acting on row-stacked density
matrices keeps everything linear-algebraic and exact.

Conventions: vec stacks rows, so vec(|x><y|) = |x>|y>, and the natural
matrix of a Kraus family {A_j} is sum_j A_j (x) conj(A_j).  The ancilla
occupies the low-order index block throughout, matching circuits.py.

program_to_natural builds the channel from the induced Kraus family; the
independent route program_to_natural_dense multiplies the embed / unitary /
block-trace matrices literally and exists to cross-check the first on
small programs.  Both are exact and they must agree entry for entry.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import List, Sequence

from .circuits import CTCProgram, DEFAULT_QUBIT_CAP, circuit_unitary
from .errors import ContractViolationError
from .exact.matrices import Matrix, hermitian_psd_check
from .exact.scalars import GaussianRational, ONE, ZERO

__all__ = [
    "DensityMatrix",
    "Superoperator",
    "KrausCompletenessWarning",
    "vec",
    "unvec",
    "kraus_to_natural",
    "program_to_natural",
    "program_to_natural_dense",
    "apply_channel",
    "partial_trace",
    "choi_matrix",
]


class KrausCompletenessWarning(UserWarning):
    """The Kraus operators do not sum to identity; the map is not TP."""


def vec(a: Matrix) -> Matrix:
    """Row-stacking: the rows of a, concatenated into one column."""
    return Matrix(a.rows * a.cols, 1, a.entries)


def unvec(v: Matrix, n: int) -> Matrix:
    if v.cols != 1 or v.rows != n * n:
        raise ValueError(f"expected a column of length {n * n}, got {v.rows}x{v.cols}")
    return Matrix(n, n, v.entries)


@dataclass(frozen=True)
class DensityMatrix:
    """An exactly verified density matrix: Hermitian, PSD, trace one."""

    dim: int
    matrix: Matrix

    def __post_init__(self):
        m = self.matrix
        if m.rows != self.dim or m.cols != self.dim:
            raise ValueError(f"expected {self.dim}x{self.dim}, got {m.rows}x{m.cols}")
        if not m.is_hermitian():
            raise ValueError("density matrix must be Hermitian")
        if m.trace() != ONE:
            raise ValueError(f"density matrix must have trace 1, got {m.trace()}")
        verdict = hermitian_psd_check(m)
        if not verdict:
            raise ValueError(f"density matrix must be PSD ({verdict.reason})")

    @classmethod
    def basis_state(cls, dim: int, k: int) -> "DensityMatrix":
        if not 0 <= k < dim:
            raise ValueError(f"basis index {k} out of range for dimension {dim}")
        return cls(
            dim,
            Matrix(
                dim,
                dim,
                (ONE if i == k and j == k else ZERO for i in range(dim) for j in range(dim)),
            ),
        )

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityMatrix":
        w = GaussianRational(1) / GaussianRational(dim)
        return cls(
            dim,
            Matrix(dim, dim, (w if i == j else ZERO for i in range(dim) for j in range(dim))),
        )


@dataclass(frozen=True)
class Superoperator:
    """A channel as the N^2 x N^2 matrix with K vec(rho) = vec(Phi(rho))."""

    input_dim: int
    k_matrix: Matrix

    def __post_init__(self):
        n2 = self.input_dim * self.input_dim
        if self.k_matrix.rows != n2 or self.k_matrix.cols != n2:
            raise ValueError(
                f"natural representation must be {n2}x{n2}, got "
                f"{self.k_matrix.rows}x{self.k_matrix.cols}"
            )

    def apply_vec(self, v: Matrix) -> Matrix:
        return self.k_matrix @ v

    def apply_matrix(self, rho: Matrix) -> Matrix:
        """Phi(rho) for an arbitrary (not necessarily density) matrix."""
        if rho.rows != self.input_dim or rho.cols != self.input_dim:
            raise ValueError("dimension mismatch")
        return unvec(self.k_matrix @ vec(rho), self.input_dim)

    def is_trace_preserving(self) -> bool:
        """vec(I)^T K == vec(I)^T, which says trace(Phi(rho)) = trace(rho)."""
        n = self.input_dim
        vec_i_t = Matrix(
            1, n * n, (ONE if idx // n == idx % n else ZERO for idx in range(n * n))
        )
        return vec_i_t @ self.k_matrix == vec_i_t


def kraus_to_natural(kraus: Sequence[Matrix]) -> Superoperator:
    """Natural matrix of the map rho -> sum_j A_j rho A_j^dagger.

    Warns (KrausCompletenessWarning) when sum A_j^dagger A_j != I, since
    the result then fails trace preservation.
    """
    if not kraus:
        raise ValueError("need at least one Kraus operator")
    n = kraus[0].rows
    for a in kraus:
        if a.rows != n or a.cols != n:
            raise ValueError("Kraus operators must be square and of equal dimension")
    total = Matrix.zeros(n, n)
    for a in kraus:
        total = total + a.dagger() @ a
    if not total.is_identity():
        warnings.warn(
            "Kraus family is not complete: sum A^dagger A != I",
            KrausCompletenessWarning,
            stacklevel=2,
        )
    k = Matrix.zeros(n * n, n * n)
    for a in kraus:
        k = k + a.kron(a.conj())
    return Superoperator(n, k)


def induced_kraus(program: CTCProgram, max_qubits: int = DEFAULT_QUBIT_CAP) -> List[Matrix]:
    """Kraus family of the CTC-register channel: one operator per ancilla
    readout value y, with entries A_y[x', x] = U[x' * 2^r + y, x * 2^r]."""
    if program.kind != "quantum":
        raise ValueError("only quantum programs induce a Kraus family")
    circuit = program.circuit
    u = circuit_unitary(circuit, max_qubits=max_qubits)
    q, r = circuit.ctc_qubits, circuit.cr_qubits
    n, anc = 1 << q, 1 << r
    out = []
    for y in range(anc):
        out.append(
            Matrix(
                n,
                n,
                (u.entry(xp * anc + y, x * anc) for xp in range(n) for x in range(n)),
            )
        )
    return out


def program_to_natural(
    program: CTCProgram, max_qubits: int = DEFAULT_QUBIT_CAP
) -> Superoperator:
    """Exact natural representation of the channel a quantum program
    induces on its CTC register (ancilla starts at |0..0> and is traced
    out after the circuit unitary)."""
    with warnings.catch_warnings():
        # the family from a genuine unitary is complete by construction
        warnings.simplefilter("error", KrausCompletenessWarning)
        return kraus_to_natural(induced_kraus(program, max_qubits=max_qubits))


def program_to_natural_dense(program: CTCProgram) -> Superoperator:
    """Cross-check route: literally embed, conjugate by U (x) conj(U),
    then block-trace.  Kept dense and independent of the Kraus path, so
    it is only offered for small programs (q + r <= 3)."""
    if program.kind != "quantum":
        raise ValueError("only quantum programs induce a channel")
    circuit = program.circuit
    q, r = circuit.ctc_qubits, circuit.cr_qubits
    if q + r > 3:
        raise ValueError("dense route is limited to q + r <= 3")
    u = circuit_unitary(circuit)
    n, anc = 1 << q, 1 << r
    big = n * anc
    # embed: vec(rho) -> vec(rho tensor |0..0><0..0|)
    m0 = Matrix.zeros(big * big, n * n)
    rows = [list(row) for row in m0.to_rows()]
    for x in range(n):
        for xp in range(n):
            rows[(x * anc) * big + (xp * anc)][x * n + xp] = ONE
    m0 = Matrix(big * big, n * n, (e for row in rows for e in row))
    # block trace: vec(M) -> vec(sum_y <y|-block M |y>-block)
    rows = [[ZERO] * (big * big) for _ in range(n * n)]
    for x in range(n):
        for xp in range(n):
            for y in range(anc):
                rows[x * n + xp][(x * anc + y) * big + (xp * anc + y)] = ONE
    m1 = Matrix(n * n, big * big, (e for row in rows for e in row))
    k = m1 @ (u.kron(u.conj())) @ m0
    return Superoperator(n, k)


def apply_channel(s: Superoperator, rho: DensityMatrix) -> DensityMatrix:
    """Phi(rho), re-verified to be a density matrix.

    A failure here means the Superoperator was not CPTP, which callers
    treat as a broken contract rather than bad input.
    """
    if rho.dim != s.input_dim:
        raise ValueError(
            f"channel acts on dimension {s.input_dim}, state has {rho.dim}"
        )
    out = unvec(s.apply_vec(vec(rho.matrix)), s.input_dim)
    if not out.is_hermitian():
        raise ContractViolationError("channel output is not Hermitian")
    if out.trace() != ONE:
        raise ContractViolationError(f"channel output has trace {out.trace()}, not 1")
    verdict = hermitian_psd_check(out)
    if not verdict:
        raise ContractViolationError(f"channel output is not PSD ({verdict.reason})")
    return DensityMatrix(s.input_dim, out)


def partial_trace(a: Matrix, keep_dim: int) -> Matrix:
    """Trace out the low-order tensor factor, keeping the first keep_dim.

    The index convention a[i*D + y, j*D + w] makes the traced factor the
    low block, so the sum runs over matching y = w.
    """
    if a.rows != a.cols:
        raise ValueError("partial trace needs a square matrix")
    if keep_dim < 1 or a.rows % keep_dim:
        raise ValueError(f"dimension {a.rows} does not factor through {keep_dim}")
    d = a.rows // keep_dim
    entries = []
    for i in range(keep_dim):
        for j in range(keep_dim):
            total = ZERO
            for y in range(d):
                total = total + a.entry(i * d + y, j * d + y)
            entries.append(total)
    return Matrix(keep_dim, keep_dim, entries)


def choi_matrix(s: Superoperator) -> Matrix:
    """sum_ij |i><j| tensor Phi(|i><j|), assembled straight from k_matrix.

    With row-stacking, Phi(|i><j|)[k, l] is k_matrix[k*N + l, i*N + j].
    """
    n = s.input_dim
    k = s.k_matrix
    entries = []
    for i in range(n):
        for kk in range(n):
            for j in range(n):
                for ll in range(n):
                    entries.append(k.entry(kk * n + ll, i * n + j))
    return Matrix(n * n, n * n, entries)
