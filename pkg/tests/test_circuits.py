import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import (
    eval_classical_input,
    random_classical_circuit,
    random_quantum_program,
    random_table,
)
from ctcsim.circuits import (
    BUILTIN_GATES,
    ClassicalAssignment,
    ClassicalCircuit,
    CTCProgram,
    FunctionTable,
    GateApplication,
    QuantumCircuit,
    QuantumGate,
    StochasticCircuit,
    StochasticMatrix,
    circuit_unitary,
    classical_table,
)
from ctcsim.errors import ResourceLimitError
from ctcsim.exact.matrices import Matrix
from ctcsim.exact.scalars import GaussianRational, Rational


def test_builtin_gates_are_unitary():
    for name, gate in BUILTIN_GATES.items():
        assert gate.matrix.is_unitary(), name
        assert gate.arity in (1, 2, 3)


def test_gate_arity():
    assert BUILTIN_GATES["X"].arity == 1
    assert BUILTIN_GATES["CNOT"].arity == 2
    assert BUILTIN_GATES["TOFFOLI"].arity == 3


def test_gate_rejects_non_power_of_two():
    with pytest.raises(ValueError):
        QuantumGate("bad", Matrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]]))


@given(st.integers(0, 10_000))
def test_circuit_unitary_is_unitary(seed):
    rng = random.Random(seed)
    prog = random_quantum_program(rng)
    u = circuit_unitary(prog.circuit)
    assert u.is_unitary()


@given(st.integers(0, 10_000))
def test_reversed_adjoint_circuit_inverts(seed):
    """Applying a circuit then its gate-by-gate adjoint in reverse
    order gives the identity."""
    rng = random.Random(seed)
    prog = random_quantum_program(rng)
    circuit = prog.circuit
    inverse_apps = []
    adjoints = {}
    for app in reversed(circuit.gates):
        g = app.gate
        if g.name not in adjoints:
            adjoints[g.name] = QuantumGate(f"{g.name}_adj", g.matrix.dagger())
        inverse_apps.append(GateApplication(adjoints[g.name], app.wires))
    doubled = QuantumCircuit(
        circuit.ctc_qubits,
        circuit.cr_qubits,
        circuit.defgates + tuple(adjoints.values()),
        circuit.gates + tuple(inverse_apps),
    )
    n = circuit.total_qubits
    assert circuit_unitary(doubled) == Matrix.identity(1 << n)


def test_single_gate_embedding_on_named_wires():
    # X on the cr wire of a 1+1 circuit: flips the low-order bit
    circuit = QuantumCircuit(
        1, 1, (), (GateApplication(BUILTIN_GATES["X"], (1,)),)
    )
    u = circuit_unitary(circuit)
    one = GaussianRational(1)
    for col in range(4):
        row = col ^ 1
        assert u.entry(row, col) == one


def test_cnot_wire_order_matters():
    fwd = QuantumCircuit(2, 0, (), (GateApplication(BUILTIN_GATES["CNOT"], (0, 1)),))
    rev = QuantumCircuit(2, 0, (), (GateApplication(BUILTIN_GATES["CNOT"], (1, 0)),))
    uf = circuit_unitary(fwd)
    ur = circuit_unitary(rev)
    assert uf != ur
    # control on wire 0: basis state |10> maps to |11>
    assert uf.entry(0b11, 0b10) == GaussianRational(1)
    # control on wire 1: basis state |01> maps to |11>
    assert ur.entry(0b11, 0b01) == GaussianRational(1)


def test_unitary_qubit_cap():
    circuit = QuantumCircuit(5, 4, (), ())
    with pytest.raises(ResourceLimitError):
        circuit_unitary(circuit, max_qubits=8)


@given(st.integers(0, 10_000), st.integers(1, 3), st.integers(0, 2))
def test_classical_table_matches_per_input_oracle(seed, p, qc):
    rng = random.Random(seed)
    circuit = random_classical_circuit(rng, p, qc)
    full, induced = classical_table(circuit)
    for x in range(1 << (p + qc)):
        assert full.apply(x) == eval_classical_input(circuit, x)
    # induced table: extra wires pinned to zero, then projected away
    for y in range(1 << p):
        whole = eval_classical_input(circuit, y << qc)
        assert induced.apply(y) == whole >> qc


def test_classical_table_bit_cap():
    circuit = ClassicalCircuit(15, 10, (), None)
    with pytest.raises(ResourceLimitError):
        classical_table(circuit)


def test_table_mode_passthrough():
    table = FunctionTable(2, (1, 2, 3, 0))
    circuit = ClassicalCircuit(2, 0, (), table)
    full, induced = classical_table(circuit)
    assert full is table
    assert induced.outputs == table.outputs


def test_function_table_compose_order():
    f = FunctionTable(2, (1, 2, 3, 0))
    g = FunctionTable(2, (0, 0, 1, 1))
    # compose(other) applies other first
    fg = f.compose(g)
    for x in range(4):
        assert fg.apply(x) == f.apply(g.apply(x))


def test_function_table_validation():
    with pytest.raises(ValueError):
        FunctionTable(1, (0, 2))
    with pytest.raises(ValueError):
        FunctionTable(1, (0,))


@given(st.integers(0, 10_000), st.integers(1, 3))
def test_table_iterated_square_matches_step(seed, bits):
    rng = random.Random(seed)
    t = random_table(rng, bits)
    sq = t.compose(t)
    for x in range(1 << bits):
        assert sq.apply(x) == t.apply(t.apply(x))


def test_stochastic_matrix_column_defects():
    half = Rational(1, 2)
    good = StochasticMatrix(2, Matrix.from_rows([[half, 1], [half, 0]]))
    assert good.column_defects() == []
    short = StochasticMatrix(2, Matrix.from_rows([[half, 1], [half, half]]))
    assert any("column 1" in d for d in short.column_defects())


def test_stochastic_matrix_flags_negative():
    m = StochasticMatrix(2, Matrix.from_rows([[2, 0], [-1, 1]]))
    defects = m.column_defects()
    assert any("outside [0,1]" in d for d in defects)


def test_stochastic_matrix_flags_complex():
    i = GaussianRational(0, 1)
    one_minus_i = GaussianRational(1, -1)
    m = StochasticMatrix(2, Matrix.from_rows([[i, 0], [one_minus_i, 1]]))
    assert any("not real" in d for d in m.column_defects())


def test_stochastic_matrix_shape_check():
    with pytest.raises(ValueError):
        StochasticMatrix(2, Matrix.identity(3))


def test_stochastic_circuit_output_patterns():
    m = StochasticMatrix(4, Matrix.identity(4))
    circ = StochasticCircuit(2, m, ("1*",))
    assert circ.output_bit_of(0b10) == 1
    assert circ.output_bit_of(0b01) == 0


def test_program_kind_checks():
    table = FunctionTable(1, (0, 1))
    circuit = ClassicalCircuit(1, 0, (), table)
    with pytest.raises(ValueError):
        CTCProgram("quantum", circuit, None)
