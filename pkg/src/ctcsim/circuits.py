"""Circuit representations for programs that run around a closed timelike curve.

A program owns two registers.  The CTC register holds the state that must
be causally consistent; the causality-respecting register starts in the
all-zeros state and carries the observable output.  Wire 0 is the most
significant bit of a basis index, and the CTC wires occupy the high-order
block, so a basis index always decomposes as x * 2**r + y with x the CTC
value and y the causality-respecting value.

Three program kinds share the CTCProgram wrapper:

  quantum     a unitary circuit over exact-rational gate matrices
  classical   a straight-line Boolean program or an explicit function table
  stochastic  a column-stochastic matrix acting on the CTC register

Constructors check shape only.  Semantic properties (unitarity of custom
gates, stochasticity, table totality) are reported by the validator in
the dsl module and enforced again by the operations that rely on them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ResourceLimitError
from .exact.matrices import Matrix
from .exact.scalars import GaussianRational, Rational, ZERO, ONE

__all__ = [
    "QuantumGate",
    "BUILTIN_GATES",
    "GateApplication",
    "QuantumCircuit",
    "Wire",
    "ClassicalAssignment",
    "ClassicalCircuit",
    "FunctionTable",
    "StochasticMatrix",
    "StochasticCircuit",
    "CTCProgram",
    "circuit_unitary",
    "classical_table",
    "DEFAULT_QUBIT_CAP",
    "DEFAULT_BIT_CAP",
]

DEFAULT_QUBIT_CAP = 8
DEFAULT_BIT_CAP = 20


@dataclass(frozen=True)
class QuantumGate:
    """A named unitary with an exact matrix; arity is log2 of its dimension."""

    name: str
    matrix: Matrix

    def __post_init__(self):
        n = self.matrix.rows
        if self.matrix.cols != n or n < 2 or n & (n - 1):
            raise ValueError(
                f"gate {self.name}: matrix must be square with power-of-two "
                f"dimension, got {self.matrix.rows}x{self.matrix.cols}"
            )

    @property
    def arity(self) -> int:
        return self.matrix.rows.bit_length() - 1


def _gate(name: str, rows) -> QuantumGate:
    return QuantumGate(name, Matrix.from_rows(rows))


_i = GaussianRational(0, 1)

BUILTIN_GATES: Dict[str, QuantumGate] = {
    g.name: g
    for g in (
        _gate("X", [[0, 1], [1, 0]]),
        _gate("Y", [[0, -_i], [_i, 0]]),
        _gate("Z", [[1, 0], [0, -1]]),
        _gate("S", [[1, 0], [0, _i]]),
        _gate(
            "CNOT",
            [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
        ),
        _gate(
            "CZ",
            [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]],
        ),
        _gate(
            "SWAP",
            [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
        ),
        _gate(
            "TOFFOLI",
            [
                [1, 0, 0, 0, 0, 0, 0, 0],
                [0, 1, 0, 0, 0, 0, 0, 0],
                [0, 0, 1, 0, 0, 0, 0, 0],
                [0, 0, 0, 1, 0, 0, 0, 0],
                [0, 0, 0, 0, 1, 0, 0, 0],
                [0, 0, 0, 0, 0, 1, 0, 0],
                [0, 0, 0, 0, 0, 0, 0, 1],
                [0, 0, 0, 0, 0, 0, 1, 0],
            ],
        ),
    )
}


@dataclass(frozen=True)
class GateApplication:
    """A gate applied to distinct global wires; wires[0] is the gate's MSB."""

    gate: QuantumGate
    wires: Tuple[int, ...]

    def __post_init__(self):
        if len(self.wires) != self.gate.arity:
            raise ValueError(
                f"gate {self.gate.name} has arity {self.gate.arity}, "
                f"got {len(self.wires)} wires"
            )
        if len(set(self.wires)) != len(self.wires):
            raise ValueError(f"gate {self.gate.name}: wires must be distinct")


@dataclass(frozen=True)
class QuantumCircuit:
    """q CTC qubits (wires 0..q-1) and r causality-respecting qubits."""

    ctc_qubits: int
    cr_qubits: int
    defgates: Tuple[QuantumGate, ...] = ()
    gates: Tuple[GateApplication, ...] = ()

    def __post_init__(self):
        if self.ctc_qubits < 1:
            raise ValueError("need at least one CTC qubit")
        if self.cr_qubits < 0:
            raise ValueError("negative register size")
        n = self.ctc_qubits + self.cr_qubits
        for app in self.gates:
            for w in app.wires:
                if not 0 <= w < n:
                    raise ValueError(
                        f"gate {app.gate.name}: wire {w} out of range for "
                        f"{n} wires"
                    )

    @property
    def total_qubits(self) -> int:
        return self.ctc_qubits + self.cr_qubits


Wire = Tuple[str, int]  # bank "ctc" | "cr" | "tmp", index

_ARITY = {"and": 2, "or": 2, "not": 1, "copy": 1}


@dataclass(frozen=True)
class ClassicalAssignment:
    """out <- op(inputs), executed in program order."""

    op: str
    out: Wire
    inputs: Tuple[Wire, ...]

    def __post_init__(self):
        if self.op not in _ARITY:
            raise ValueError(f"unknown classical op {self.op!r}")
        if len(self.inputs) != _ARITY[self.op]:
            raise ValueError(
                f"op {self.op} takes {_ARITY[self.op]} inputs, got {len(self.inputs)}"
            )


@dataclass(frozen=True)
class FunctionTable:
    """A total function on bit strings, stored as a dense output list."""

    bits: int
    outputs: Tuple[int, ...]

    def __post_init__(self):
        size = 1 << self.bits
        if len(self.outputs) != size:
            raise ValueError(f"table needs {size} entries, got {len(self.outputs)}")
        for v in self.outputs:
            if not 0 <= v < size:
                raise ValueError(f"table output {v} out of range")

    def apply(self, x: int) -> int:
        return self.outputs[x]

    def compose(self, other: "FunctionTable") -> "FunctionTable":
        """self after other: (self.compose(other))(x) == self(other(x))."""
        if self.bits != other.bits:
            raise ValueError("composing tables of different widths")
        return FunctionTable(self.bits, tuple(self.outputs[v] for v in other.outputs))


@dataclass(frozen=True)
class ClassicalCircuit:
    """Boolean program on p CTC bits and qc causality-respecting bits.

    The body is either a straight-line assignment list (temporaries start
    undefined and must be written before read), or an explicit function
    table on all p + qc bits, or both.  When both are given they must
    agree; the validator checks that.
    """

    ctc_bits: int
    cr_bits: int
    assignments: Tuple[ClassicalAssignment, ...] = ()
    table: Optional[FunctionTable] = None

    def __post_init__(self):
        if self.ctc_bits < 1:
            raise ValueError("need at least one CTC bit")
        if self.cr_bits < 0:
            raise ValueError("negative register size")
        if self.table is not None and self.table.bits != self.ctc_bits + self.cr_bits:
            raise ValueError(
                f"table is on {self.table.bits} bits, registers give "
                f"{self.ctc_bits + self.cr_bits}"
            )

    @property
    def total_bits(self) -> int:
        return self.ctc_bits + self.cr_bits


@dataclass(frozen=True)
class StochasticMatrix:
    """A column-stochastic matrix: column j is the successor distribution."""

    dim: int
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.rows != self.dim or self.matrix.cols != self.dim:
            raise ValueError(
                f"expected a {self.dim}x{self.dim} matrix, got "
                f"{self.matrix.rows}x{self.matrix.cols}"
            )

    def column_defects(self) -> List[str]:
        """Human-readable stochasticity violations, empty when valid."""
        out = []
        for j in range(self.dim):
            total = Rational(0)
            for i in range(self.dim):
                e = self.matrix.entry(i, j)
                if e.im:
                    out.append(f"entry ({i},{j}) is not real")
                elif e.re < 0 or e.re > 1:
                    out.append(f"entry ({i},{j}) = {e.re} outside [0,1]")
                else:
                    total += e.re
            if total != 1:
                out.append(f"column {j} sums to {total}, not 1")
        return out


@dataclass(frozen=True)
class StochasticCircuit:
    """Stochastic update of the CTC register plus a one-bit output rule.

    The output bit is 1 exactly when the CTC register's value matches one
    of the patterns (strings over 0, 1, and the wildcard *).
    """

    ctc_bits: int
    chain: StochasticMatrix
    output_patterns: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.ctc_bits < 1:
            raise ValueError("need at least one CTC bit")
        if self.chain.dim != 1 << self.ctc_bits:
            raise ValueError(
                f"chain dimension {self.chain.dim} does not match "
                f"{self.ctc_bits} CTC bits"
            )
        for p in self.output_patterns:
            if len(p) != self.ctc_bits or any(c not in "01*" for c in p):
                raise ValueError(f"bad output pattern {p!r}")

    def output_bit_of(self, x: int) -> int:
        bits = format(x, f"0{self.ctc_bits}b")
        for p in self.output_patterns:
            if all(pc in ("*", bc) for pc, bc in zip(p, bits)):
                return 1
        return 0


_KINDS = ("quantum", "classical", "stochastic")


@dataclass(frozen=True)
class CTCProgram:
    """A circuit of one of the three kinds plus the designated output bit.

    output_bit indexes into the causality-respecting register; it may be
    None for programs that are only used for fixed-point computation.
    """

    kind: str
    circuit: object
    output_bit: Optional[int] = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown program kind {self.kind!r}")
        expected = {
            "quantum": QuantumCircuit,
            "classical": ClassicalCircuit,
            "stochastic": StochasticCircuit,
        }[self.kind]
        if not isinstance(self.circuit, expected):
            raise ValueError(
                f"{self.kind} program needs a {expected.__name__}, got "
                f"{type(self.circuit).__name__}"
            )
        if self.output_bit is not None:
            cap = {
                "quantum": getattr(self.circuit, "cr_qubits", 0),
                "classical": getattr(self.circuit, "cr_bits", 0),
                "stochastic": 1,
            }[self.kind]
            if not 0 <= self.output_bit < cap:
                raise ValueError(
                    f"output bit {self.output_bit} out of range for this program"
                )


# -- elaboration ---------------------------------------------------------

def circuit_unitary(circuit: QuantumCircuit, max_qubits: int = DEFAULT_QUBIT_CAP) -> Matrix:
    """Exact full-space unitary of the circuit, gates applied in order.

    The result dimension is 2**(q+r); a cap guards against runaway sizes
    since the matrix is dense and exact.
    """
    n = circuit.total_qubits
    if n > max_qubits:
        raise ResourceLimitError(
            f"circuit on {n} qubits would need a {1 << n}x{1 << n} exact "
            f"matrix (cap is {max_qubits} qubits)"
        )
    dim = 1 << n
    rows: List[List[GaussianRational]] = [
        [ONE if i == j else ZERO for j in range(dim)] for i in range(dim)
    ]
    for app in circuit.gates:
        rows = _apply_gate(rows, n, app)
    return Matrix(dim, dim, (e for row in rows for e in row))


def _apply_gate(rows, n, app: GateApplication):
    k = app.gate.arity
    gdim = 1 << k
    gm = app.gate.matrix
    # nonzero structure of each gate row
    structure = []
    for i in range(gdim):
        nz = [(j, gm.entry(i, j)) for j in range(gdim) if not gm.entry(i, j).is_zero()]
        structure.append(nz)
    posbits = [n - 1 - w for w in app.wires]
    mask = 0
    for pb in posbits:
        mask |= 1 << pb
    offsets = []
    for j in range(gdim):
        off = 0
        for t, pb in enumerate(posbits):
            if (j >> (k - 1 - t)) & 1:
                off |= 1 << pb
        offsets.append(off)
    dim = 1 << n
    for base in range(dim):
        if base & mask:
            continue
        idxs = [base | off for off in offsets]
        old = [rows[ix] for ix in idxs]
        for i in range(gdim):
            nz = structure[i]
            if len(nz) == 1 and nz[0][1] == ONE:
                rows[idxs[i]] = old[nz[0][0]]
                continue
            acc = None
            for j, c in nz:
                src = old[j]
                if acc is None:
                    acc = [c * v for v in src]
                else:
                    for t, v in enumerate(src):
                        if not v.is_zero():
                            acc[t] = acc[t] + c * v
            rows[idxs[i]] = acc if acc is not None else [ZERO] * dim
    return rows


def _eval_assignments(circuit: ClassicalCircuit, x: int) -> int:
    p, qc = circuit.ctc_bits, circuit.cr_bits
    total = p + qc
    env: Dict[Wire, int] = {}
    for i in range(p):
        env[("ctc", i)] = (x >> (total - 1 - i)) & 1
    for j in range(qc):
        env[("cr", j)] = (x >> (qc - 1 - j)) & 1
    for a in circuit.assignments:
        vals = []
        for w in a.inputs:
            if w not in env:
                raise ValueError(f"wire {w[0]}[{w[1]}] read before it is written")
            vals.append(env[w])
        if a.op == "and":
            res = vals[0] & vals[1]
        elif a.op == "or":
            res = vals[0] | vals[1]
        elif a.op == "not":
            res = 1 - vals[0]
        else:  # copy
            res = vals[0]
        env[a.out] = res
    out = 0
    for i in range(p):
        out = (out << 1) | env[("ctc", i)]
    for j in range(qc):
        out = (out << 1) | env[("cr", j)]
    return out


def classical_table(
    circuit: ClassicalCircuit, bit_cap: int = DEFAULT_BIT_CAP
) -> Tuple[FunctionTable, FunctionTable]:
    """Elaborate to the full table and the induced CTC-only table.

    The induced table fixes the causality-respecting input bits to zero
    and projects the output onto the CTC register.  When the circuit
    carries an explicit table, that table is used directly.
    """
    p, qc = circuit.ctc_bits, circuit.cr_bits
    total = p + qc
    if total > bit_cap:
        raise ResourceLimitError(
            f"classical circuit on {total} bits exceeds the cap of {bit_cap}"
        )
    if circuit.table is not None:
        full = circuit.table
    else:
        full = FunctionTable(
            total, tuple(_eval_assignments(circuit, x) for x in range(1 << total))
        )
    induced = FunctionTable(
        p, tuple(full.outputs[y << qc] >> qc for y in range(1 << p))
    )
    return full, induced
