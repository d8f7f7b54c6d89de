"""Shared generators and independent oracles for the test suite.

Oracles here deliberately re-derive results through different algorithms
than the package (cofactor determinants, per-input circuit evaluation,
walk-based cycle detection) so agreement actually means something.
"""

import random
from typing import Dict, List, Optional, Tuple

from hypothesis import HealthCheck, settings

from ctcsim.circuits import (
    BUILTIN_GATES,
    ClassicalAssignment,
    ClassicalCircuit,
    CTCProgram,
    FunctionTable,
    GateApplication,
    QuantumCircuit,
    QuantumGate,
)
from ctcsim.exact.matrices import Matrix
from ctcsim.exact.scalars import GaussianRational, Rational, ZERO

settings.register_profile(
    "exact",
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")

# unit-hypotenuse triples for exactly unitary rotations and phases
TRIPLES = [(3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25), (20, 21, 29)]


def random_rational_gate(rng: random.Random, name: str) -> QuantumGate:
    a, b, c = rng.choice(TRIPLES)
    if rng.random() < 0.5:
        rows = [
            [Rational(a, c), Rational(-b, c)],
            [Rational(b, c), Rational(a, c)],
        ]
    else:
        rows = [
            [1, 0],
            [0, GaussianRational(Rational(a, c), Rational(b, c))],
        ]
    return QuantumGate(name, Matrix.from_rows(rows))


def random_quantum_program(
    rng: random.Random,
    q: Optional[int] = None,
    r: Optional[int] = None,
    with_output: bool = True,
) -> CTCProgram:
    q = q if q is not None else rng.randint(1, 2)
    r = r if r is not None else rng.randint(0, 2)
    n = q + r
    defgates: List[QuantumGate] = []
    apps: List[GateApplication] = []
    one_qubit = ["X", "Y", "Z", "S"]
    two_qubit = ["CNOT", "CZ", "SWAP"]
    for _ in range(rng.randint(1, 6)):
        roll = rng.random()
        if roll < 0.3:
            gate = random_rational_gate(rng, f"G{len(defgates)}")
            defgates.append(gate)
            apps.append(GateApplication(gate, (rng.randrange(n),)))
        elif roll < 0.7 or n < 2:
            gate = BUILTIN_GATES[rng.choice(one_qubit)]
            apps.append(GateApplication(gate, (rng.randrange(n),)))
        else:
            gate = BUILTIN_GATES[rng.choice(two_qubit)]
            apps.append(GateApplication(gate, tuple(rng.sample(range(n), 2))))
    circuit = QuantumCircuit(q, r, tuple(defgates), tuple(apps))
    out = rng.randrange(r) if (with_output and r) else None
    return CTCProgram("quantum", circuit, out)


def random_classical_circuit(rng: random.Random, p: int, qc: int) -> ClassicalCircuit:
    """Straight-line program; temporaries are always written before read."""
    wires = [("ctc", i) for i in range(p)] + [("cr", j) for j in range(qc)]
    readable = list(wires)
    assignments = []
    tmp_count = 0
    for _ in range(rng.randint(1, 8)):
        op = rng.choice(["and", "or", "not", "copy"])
        arity = 2 if op in ("and", "or") else 1
        ins = tuple(rng.choice(readable) for _ in range(arity))
        if rng.random() < 0.4:
            out = ("tmp", tmp_count)
            tmp_count += 1
        else:
            out = rng.choice(wires)
        assignments.append(ClassicalAssignment(op, out, ins))
        if out not in readable:
            readable.append(out)
    return ClassicalCircuit(p, qc, tuple(assignments), None)


def random_table(rng: random.Random, bits: int) -> FunctionTable:
    size = 1 << bits
    return FunctionTable(bits, tuple(rng.randrange(size) for _ in range(size)))


def random_rank_one_density(rng: random.Random, dim: int):
    """v v^dagger / |v|^2 for a random nonzero Gaussian-rational vector;
    exactly a density matrix, no square roots needed."""
    while True:
        v = [
            GaussianRational(
                Rational(rng.randint(-3, 3)), Rational(rng.randint(-3, 3))
            )
            for _ in range(dim)
        ]
        norm = sum((x.abs2() for x in v), Rational(0))
        if norm:
            break
    inv = GaussianRational(1) / GaussianRational(norm)
    entries = [v[i] * v[j].conj() * inv for i in range(dim) for j in range(dim)]
    from ctcsim.superop import DensityMatrix

    return DensityMatrix(dim, Matrix(dim, dim, entries))


# -- independent oracles ---------------------------------------------------

def cofactor_det(rows: List[List[GaussianRational]]) -> GaussianRational:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = ZERO
    for j in range(n):
        e = rows[0][j]
        if e.is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
        term = e * cofactor_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def eval_classical_input(circuit: ClassicalCircuit, x: int) -> int:
    """Per-input oracle for straight-line programs, written separately
    from the package's evaluator."""
    p, qc = circuit.ctc_bits, circuit.cr_bits
    total = p + qc
    bits: Dict[Tuple[str, int], int] = {}
    text = format(x, f"0{total}b")
    for i in range(p):
        bits[("ctc", i)] = int(text[i])
    for j in range(qc):
        bits[("cr", j)] = int(text[p + j])
    for a in circuit.assignments:
        vals = [bits[w] for w in a.inputs]
        if a.op == "and":
            bits[a.out] = vals[0] and vals[1]
        elif a.op == "or":
            bits[a.out] = vals[0] or vals[1]
        elif a.op == "not":
            bits[a.out] = 0 if vals[0] else 1
        else:
            bits[a.out] = vals[0]
    out_text = "".join(str(bits[("ctc", i)]) for i in range(p))
    out_text += "".join(str(bits[("cr", j)]) for j in range(qc))
    return int(out_text, 2)


def walk_cyclic_nodes(table: FunctionTable) -> frozenset:
    """A node is cyclic exactly when iterating the function size-many
    times from it returns to it at some step."""
    size = 1 << table.bits
    cyclic = set()
    for y in range(size):
        z = y
        for _ in range(size):
            z = table.apply(z)
            if z == y:
                cyclic.add(y)
                break
    return frozenset(cyclic)
