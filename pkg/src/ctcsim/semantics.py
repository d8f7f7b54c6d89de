"""Verdict semantics for programs on a causally consistent register.

A program does not run forward in time: the CTC register must be handed a
state that the program maps back to itself.  Deciding a program therefore
means finding the consistent states, pushing each through the circuit,
and reading the designated output bit.

Classical programs induce a function on the CTC bit strings; consistent
distributions are exactly the mixtures of uniform-on-cycle distributions,
so the all-states quantifier is certified by enumerating cycles.
Stochastic programs induce a column-stochastic chain; the consistent set
is the convex hull of the per-recurrent-class stationary distributions.
Quantum programs go through the exact fixed-point projector, with the
range of acceptance probabilities over the whole fixed space read off the
eigenvalues of an exact Hermitian acceptance operator.

Verdicts use the 2/3 versus 1/3 acceptance thresholds, with `ambiguous`
as a first-class outcome whenever different consistent states disagree.
A separate field records the comparison of the canonical acceptance
probability against 1/2 for promise-style use.

The gadget generators build the three classic reductions: a search loop
that only closes on a solution, a clocked machine whose halting answer is
forced around the loop, and a one-bit chain whose tiny reset probability
amplifies a single witness among exponentially many candidates.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from .circuits import (
    ClassicalCircuit,
    CTCProgram,
    DEFAULT_BIT_CAP,
    DEFAULT_QUBIT_CAP,
    FunctionTable,
    StochasticCircuit,
    StochasticMatrix,
    circuit_unitary,
    classical_table,
)
from .errors import ContractViolationError, ResourceLimitError
from .exact.matrices import Matrix, nullspace
from .exact.scalars import GaussianRational, Rational, ONE, ZERO
from .fixpoint import (
    DEFAULT_DIM_CAP,
    FixedPointProjector,
    compute_fixed_point,
    fixed_point_projector,
    to_complex_array,
)
from .superop import DensityMatrix, program_to_natural, unvec, vec

__all__ = [
    "ClassicalDistribution",
    "Verdict",
    "StationaryResult",
    "EpsilonReport",
    "MachineSpec",
    "cycle_fixed_point",
    "enumerate_cycles",
    "cycle_support",
    "off_cycle_mass",
    "table_to_stochastic",
    "classical_decide",
    "stationary_distribution",
    "stochastic_decide",
    "accept_probability",
    "acceptance_operator",
    "quantum_decide",
    "gadget_np_search",
    "parse_machine",
    "gadget_pspace",
    "gadget_narrow_np",
    "gadget_np_conp",
    "epsilon_fixed_point_check",
    "ACCEPT_THRESHOLD",
    "REJECT_THRESHOLD",
    "RANGE_SLACK",
]

ACCEPT_THRESHOLD = Rational(2, 3)
REJECT_THRESHOLD = Rational(1, 3)
RANGE_SLACK = 1e-6  # float tolerance when exact values meet numeric ranges


@dataclass(frozen=True)
class ClassicalDistribution:
    """Exact probability vector over p-bit strings."""

    bits: int
    probabilities: Tuple[Rational, ...]

    def __post_init__(self):
        if len(self.probabilities) != 1 << self.bits:
            raise ValueError(
                f"need {1 << self.bits} probabilities, got {len(self.probabilities)}"
            )
        total = Rational(0)
        for p in self.probabilities:
            if p < 0:
                raise ValueError(f"negative probability {p}")
            total += p
        if total != 1:
            raise ValueError(f"probabilities sum to {total}, not 1")

    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.probabilities) if p > 0)


@dataclass(frozen=True)
class Verdict:
    """Outcome of deciding a program under the all-consistent-states rule.

    exact_accept_probability is taken at the canonical consistent state
    (all-zeros seed); probability_range is the float [min, max] over every
    consistent state when that range was computed, and certified records
    whether the quantifier was actually checked rather than sampled.
    """

    decision: str
    exact_accept_probability: Rational
    probability_range: Tuple[float, float]
    witness: object
    half_comparison: str
    certified: bool


@dataclass(frozen=True)
class StationaryResult:
    """Canonical stationary distribution plus the per-class breakdown."""

    distribution: ClassicalDistribution
    multiple: bool
    classes: Tuple[ClassicalDistribution, ...]


@dataclass(frozen=True)
class EpsilonReport:
    """Distance between a state and its image, compared against epsilon."""

    ok: bool
    exact_distance: Optional[Rational]
    float_distance: Optional[float]
    exact_upper_bound: Optional[Rational]


def _half_comparison(p: Rational) -> str:
    half = Rational(1, 2)
    if p > half:
        return "greater"
    if p < half:
        return "less"
    return "equal"


# -- classical ------------------------------------------------------------

def cycle_fixed_point(table: FunctionTable) -> Tuple[ClassicalDistribution, Tuple[int, ...]]:
    """Canonical consistent distribution of a function on bit strings.

    Iterated squaring of the table gives its 2^p-fold composite in p
    steps; applying that to the all-zeros string always lands on a cycle,
    because any walk of length 2^p must already have looped.  The result
    is uniform on that cycle, which the function permutes, so pushing the
    distribution through the function returns it unchanged.
    """
    g = table
    for _ in range(table.bits):
        g = g.compose(g)
    start = g.apply(0)
    cycle = [start]
    y = table.apply(start)
    while y != start:
        cycle.append(y)
        y = table.apply(y)
    w = Rational(1, len(cycle))
    probs = [Rational(0)] * (1 << table.bits)
    for y in cycle:
        probs[y] = w
    return ClassicalDistribution(table.bits, tuple(probs)), tuple(cycle)


def enumerate_cycles(table: FunctionTable) -> List[Tuple[int, ...]]:
    """All cycles of the functional graph, each starting at its smallest
    element, listed in increasing order of that element."""
    size = 1 << table.bits
    state = [0] * size  # 0 unseen, 1 on current walk, 2 settled
    cycles = []
    for start in range(size):
        if state[start]:
            continue
        path = []
        y = start
        while state[y] == 0:
            state[y] = 1
            path.append(y)
            y = table.apply(y)
        if state[y] == 1:
            at = path.index(y)
            cyc = path[at:]
            rot = cyc.index(min(cyc))
            cycles.append(tuple(cyc[rot:] + cyc[:rot]))
        for v in path:
            state[v] = 2
    cycles.sort(key=lambda c: c[0])
    return cycles


def cycle_support(table: FunctionTable) -> frozenset:
    return frozenset(y for c in enumerate_cycles(table) for y in c)


def off_cycle_mass(table: FunctionTable, dist: ClassicalDistribution) -> Rational:
    """Exact distance from dist to the nearest distribution supported on
    the cycles of the table: mass off the cycle support has to move, and
    moving it costs exactly itself in half-L1 distance."""
    if dist.bits != table.bits:
        raise ValueError("dimension mismatch")
    keep = cycle_support(table)
    total = Rational(0)
    for y, p in enumerate(dist.probabilities):
        if y not in keep:
            total += p
    return total


def table_to_stochastic(table: FunctionTable) -> StochasticMatrix:
    """The deterministic chain of a function: column x is a point mass on
    the image of x."""
    size = 1 << table.bits
    entries = [[ZERO] * size for _ in range(size)]
    for x in range(size):
        entries[table.apply(x)][x] = ONE
    return StochasticMatrix(size, Matrix(size, size, (e for row in entries for e in row)))


def classical_decide(
    program: CTCProgram,
    cr_fixings: Optional[Dict[int, int]] = None,
    bit_cap: int = DEFAULT_BIT_CAP,
    certify_limit: int = 16,
) -> Verdict:
    """Decide a classical program under the all-consistent-distributions
    quantifier.

    The canonical verdict comes from the cycle reached from the all-zeros
    string.  Up to certify_limit CTC bits, every cycle is enumerated so
    the quantifier is certified: accept means every consistent
    distribution outputs 1 with certainty, reject means 0 with certainty,
    anything else is ambiguous.  cr_fixings pins chosen input bits of the
    causality-respecting register (default all zeros).
    """
    if program.kind != "classical":
        raise ValueError("classical_decide needs a classical program")
    if program.output_bit is None:
        raise ValueError("program has no designated output bit")
    circuit: ClassicalCircuit = program.circuit
    p, qc = circuit.ctc_bits, circuit.cr_bits
    full, _ = classical_table(circuit, bit_cap)
    z = 0
    if cr_fixings:
        for idx, bit in cr_fixings.items():
            if not 0 <= idx < qc:
                raise ValueError(f"cr index {idx} out of range")
            if bit not in (0, 1):
                raise ValueError(f"bit value {bit!r} must be 0 or 1")
            z |= bit << (qc - 1 - idx)
    induced = FunctionTable(
        p, tuple(full.outputs[(y << qc) | z] >> qc for y in range(1 << p))
    )

    out_pos = qc - 1 - program.output_bit

    def out_bit(y: int) -> int:
        return (full.outputs[(y << qc) | z] >> out_pos) & 1

    dist, cycle = cycle_fixed_point(induced)
    ones = sum(out_bit(y) for y in cycle)
    p_acc = Rational(ones, len(cycle))

    if p <= certify_limit:
        per_cycle = []
        for c in enumerate_cycles(induced):
            per_cycle.append(Rational(sum(out_bit(y) for y in c), len(c)))
        lo, hi = min(per_cycle), max(per_cycle)
        if all(f == 1 for f in per_cycle):
            decision = "accept"
        elif all(f == 0 for f in per_cycle):
            decision = "reject"
        else:
            decision = "ambiguous"
        certified = True
    else:
        lo = hi = p_acc
        decision = "accept" if p_acc == 1 else "reject" if p_acc == 0 else "ambiguous"
        certified = False
    return Verdict(
        decision=decision,
        exact_accept_probability=p_acc,
        probability_range=(float(lo), float(hi)),
        witness=dist,
        half_comparison=_half_comparison(p_acc),
        certified=certified,
    )


# -- stochastic -----------------------------------------------------------

def stationary_distribution(chain: StochasticMatrix) -> StationaryResult:
    """Every stationary distribution of a finite chain, exactly.

    The recurrent classes are the terminal strongly connected components
    of the support graph; each carries a unique stationary distribution,
    found by exact elimination, and the stationary set is their convex
    hull.  The canonical representative averages the classes, which for
    the identity chain gives the uniform distribution.
    """
    defects = chain.column_defects()
    if defects:
        raise ValueError(f"matrix is not column-stochastic: {defects[0]}")
    dim = chain.dim
    bits = dim.bit_length() - 1
    if 1 << bits != dim:
        raise ValueError(f"chain dimension {dim} is not a power of two")
    g = nx.DiGraph()
    g.add_nodes_from(range(dim))
    for j in range(dim):
        for i in range(dim):
            if chain.matrix.entry(i, j).re > 0:
                g.add_edge(j, i)
    cond = nx.condensation(g)
    terminal = [c for c in cond.nodes if cond.out_degree(c) == 0]
    member_lists = sorted(sorted(cond.nodes[c]["members"]) for c in terminal)
    per_class = []
    for members in member_lists:
        k = len(members)
        sub = Matrix(
            k,
            k,
            (
                chain.matrix.entry(members[i], members[j]) - (ONE if i == j else ZERO)
                for i in range(k)
                for j in range(k)
            ),
        )
        basis = nullspace(sub)
        if len(basis) != 1:
            raise ContractViolationError(
                f"recurrent class {members} has stationary dimension {len(basis)}"
            )
        vals = []
        for e in basis[0]:
            if e.im:
                raise ContractViolationError("stationary solve left the reals")
            vals.append(e.re)
        total = sum(vals, Rational(0))
        if total == 0:
            raise ContractViolationError("stationary solve returned the zero vector")
        pi = [v / total for v in vals]
        if any(v < 0 for v in pi):
            raise ContractViolationError("stationary solve produced negative mass")
        probs = [Rational(0)] * dim
        for m, v in zip(members, pi):
            probs[m] = v
        per_class.append(ClassicalDistribution(bits, tuple(probs)))
    share = Rational(1, len(per_class))
    avg = [Rational(0)] * dim
    for cls in per_class:
        for i, v in enumerate(cls.probabilities):
            avg[i] += v * share
    return StationaryResult(
        distribution=ClassicalDistribution(bits, tuple(avg)),
        multiple=len(per_class) > 1,
        classes=tuple(per_class),
    )


def stochastic_decide(program: CTCProgram) -> Verdict:
    """Decide a stochastic program over all of its stationary states."""
    if program.kind != "stochastic":
        raise ValueError("stochastic_decide needs a stochastic program")
    if program.output_bit is None:
        raise ValueError("program has no designated output bit")
    circuit: StochasticCircuit = program.circuit
    res = stationary_distribution(circuit.chain)

    def accept_mass(dist: ClassicalDistribution) -> Rational:
        total = Rational(0)
        for x, p in enumerate(dist.probabilities):
            if circuit.output_bit_of(x):
                total += p
        return total

    p_acc = accept_mass(res.distribution)
    per = [accept_mass(c) for c in res.classes]
    lo, hi = min(per), max(per)
    if lo >= ACCEPT_THRESHOLD:
        decision = "accept"
    elif hi <= REJECT_THRESHOLD:
        decision = "reject"
    else:
        decision = "ambiguous"
    return Verdict(
        decision=decision,
        exact_accept_probability=p_acc,
        probability_range=(float(lo), float(hi)),
        witness=res.distribution,
        half_comparison=_half_comparison(p_acc),
        certified=True,
    )


# -- quantum --------------------------------------------------------------

def _output_projector(program: CTCProgram) -> Matrix:
    circuit = program.circuit
    q, r = circuit.ctc_qubits, circuit.cr_qubits
    dim = 1 << (q + r)
    pos = r - 1 - program.output_bit
    return Matrix(
        dim,
        dim,
        (
            (ONE if (s >> pos) & 1 else ZERO) if s == t else ZERO
            for s in range(dim)
            for t in range(dim)
        ),
    )


def accept_probability(
    program: CTCProgram, rho: DensityMatrix, max_qubits: int = DEFAULT_QUBIT_CAP
) -> Rational:
    """Exact probability that the designated output bit reads 1 when the
    CTC register is fed rho and the ancilla starts at all zeros."""
    if program.kind != "quantum":
        raise ValueError("accept_probability needs a quantum program")
    if program.output_bit is None:
        raise ValueError("program has no designated output bit")
    circuit = program.circuit
    q, r = circuit.ctc_qubits, circuit.cr_qubits
    if rho.dim != 1 << q:
        raise ValueError(f"state has dimension {rho.dim}, circuit wants {1 << q}")
    u = circuit_unitary(circuit, max_qubits=max_qubits)
    if r:
        anc = Matrix(
            1 << r,
            1 << r,
            (ONE if i == 0 and j == 0 else ZERO for i in range(1 << r) for j in range(1 << r)),
        )
        big = rho.matrix.kron(anc)
    else:
        big = rho.matrix
    w = u @ big @ u.dagger()
    pos = r - 1 - program.output_bit
    total = Rational(0)
    for s in range(w.rows):
        if (s >> pos) & 1:
            e = w.entry(s, s)
            if e.im:
                raise ContractViolationError("acceptance probability left the reals")
            total += e.re
    return total


def acceptance_operator(program: CTCProgram, proj: FixedPointProjector) -> Matrix:
    """The exact Hermitian operator H with trace(H sigma) equal to the
    acceptance probability of the fixed point grown from seed sigma.

    Sampling the corner block of U^dagger F U gives the operator A whose
    trace against rho is the acceptance probability at rho; composing
    with the projector transposes onto the seed side.
    """
    circuit = program.circuit
    q, r = circuit.ctc_qubits, circuit.cr_qubits
    n, rdim = 1 << q, 1 << r
    u = circuit_unitary(circuit)
    g = u.dagger() @ _output_projector(program) @ u
    a = Matrix(n, n, (g.entry(xp * rdim, x * rdim) for xp in range(n) for x in range(n)))
    h_t = unvec(proj.r_matrix.transpose() @ vec(a.transpose()), n)
    h = h_t.transpose()
    if not h.is_hermitian():
        raise ContractViolationError("acceptance operator is not Hermitian")
    return h


def quantum_decide(
    program: CTCProgram,
    max_dim: int = DEFAULT_DIM_CAP,
    allow_large: bool = False,
) -> Verdict:
    """Decide a quantum program over its entire fixed-point set.

    The canonical fixed point is grown from the all-zeros seed and its
    acceptance probability is exact.  Because every fixed point is the
    image of some seed under the projector, the acceptance probabilities
    over all fixed points form the numerical range of the acceptance
    operator on density matrices, which is exactly [lambda_min,
    lambda_max]; those eigenvalues are evaluated in floats with a small
    documented slack.
    """
    if program.kind != "quantum":
        raise ValueError("quantum_decide needs a quantum program")
    if program.output_bit is None:
        raise ValueError("program has no designated output bit")
    phi = program_to_natural(program)
    proj = fixed_point_projector(phi, max_dim=max_dim, allow_large=allow_large)
    n = phi.input_dim
    rho = compute_fixed_point(proj, DensityMatrix.basis_state(n, 0))
    p_acc = accept_probability(program, rho)
    h = acceptance_operator(program, proj)
    evals = np.linalg.eigvalsh(to_complex_array(h))
    lo, hi = float(evals[0]), float(evals[-1])
    pf = float(p_acc)
    if not (lo - RANGE_SLACK <= pf <= hi + RANGE_SLACK):
        raise ContractViolationError(
            f"canonical acceptance probability {pf} escapes the numeric "
            f"range [{lo}, {hi}]"
        )
    if p_acc >= ACCEPT_THRESHOLD and lo >= float(ACCEPT_THRESHOLD) - RANGE_SLACK:
        decision = "accept"
    elif p_acc <= REJECT_THRESHOLD and hi <= float(REJECT_THRESHOLD) + RANGE_SLACK:
        decision = "reject"
    else:
        decision = "ambiguous"
    return Verdict(
        decision=decision,
        exact_accept_probability=p_acc,
        probability_range=(lo, hi),
        witness=rho,
        half_comparison=_half_comparison(p_acc),
        certified=True,
    )


# -- gadget generators ----------------------------------------------------

def gadget_np_search(n: int, solutions: Sequence[bool]) -> CTCProgram:
    """Search loop on n bits: solutions stay put, everything else steps to
    the next string (wrapping), and the output bit reports whether the
    final content is a solution.

    Consistency does the searching: the only cycles are the solution
    loops when any exist, or the full increment cycle (all outputs 0)
    when none do.
    """
    if n < 1:
        raise ValueError("need at least one bit")
    if n + 1 > DEFAULT_BIT_CAP:
        raise ResourceLimitError(f"{n} bits exceeds the cap of {DEFAULT_BIT_CAP - 1}")
    size = 1 << n
    if len(solutions) != size:
        raise ValueError(f"need {size} predicate entries, got {len(solutions)}")
    outputs = []
    for v in range(size << 1):
        x = v >> 1
        nxt = x if solutions[x] else (x + 1) % size
        outputs.append((nxt << 1) | (1 if solutions[nxt] else 0))
    circuit = ClassicalCircuit(n, 1, (), FunctionTable(n + 1, tuple(outputs)))
    return CTCProgram("classical", circuit, 0)


@dataclass(frozen=True)
class MachineSpec:
    """A clocked machine as an explicit configuration graph.

    names is indexed by configuration code; successors[i] is None for
    halting configurations.  Every configuration must reach a halting one
    (the clock guarantees that for real machines; here it is validated).
    """

    names: Tuple[str, ...]
    start: int
    successors: Tuple[Optional[int], ...]
    accepting: frozenset
    rejecting: frozenset

    def __post_init__(self):
        count = len(self.names)
        if not count:
            raise ValueError("machine has no configurations")
        if not 0 <= self.start < count:
            raise ValueError("start configuration out of range")
        if len(self.successors) != count:
            raise ValueError("successor list length mismatch")
        if self.accepting & self.rejecting:
            both = sorted(self.accepting & self.rejecting)[0]
            raise ValueError(f"configuration {self.names[both]} both accepts and rejects")
        for i, s in enumerate(self.successors):
            halting = i in self.accepting or i in self.rejecting
            if halting:
                continue
            if s is None:
                raise ValueError(f"non-halting configuration {self.names[i]} has no successor")
            if not 0 <= s < count:
                raise ValueError(f"successor of {self.names[i]} out of range")
        for i in range(count):
            self._run_from(i)

    def _is_halting(self, i: int) -> bool:
        return i in self.accepting or i in self.rejecting

    def _run_from(self, i: int) -> Tuple[Tuple[int, ...], int]:
        """Configurations visited from i through halting, plus the answer."""
        path = [i]
        seen = {i}
        while not self._is_halting(path[-1]):
            nxt = self.successors[path[-1]]
            if nxt in seen:
                raise ValueError(
                    f"machine never halts from {self.names[i]} (loops at "
                    f"{self.names[nxt]})"
                )
            path.append(nxt)
            seen.add(nxt)
        return tuple(path), 1 if path[-1] in self.accepting else 0

    def canonical_run(self) -> Tuple[Tuple[int, ...], int]:
        return self._run_from(self.start)


def parse_machine(text: str) -> MachineSpec:
    """Machine files: `start <name>`, `config <name> -> <name>`,
    `accept <name>`, `reject <name>`; # comments allowed."""
    names: List[str] = []
    index: Dict[str, int] = {}

    def intern(name: str) -> int:
        if name not in index:
            index[name] = len(names)
            names.append(name)
        return index[name]

    start: Optional[int] = None
    succ: Dict[int, int] = {}
    accepting = set()
    rejecting = set()
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "start" and len(parts) == 2:
            if start is not None:
                raise ValueError(f"line {no}: duplicate start line")
            start = intern(parts[1])
        elif parts[0] == "config" and len(parts) == 4 and parts[2] == "->":
            src = intern(parts[1])
            if src in succ:
                raise ValueError(f"line {no}: duplicate successor for {parts[1]}")
            succ[src] = intern(parts[3])
        elif parts[0] in ("accept", "reject") and len(parts) == 2:
            (accepting if parts[0] == "accept" else rejecting).add(intern(parts[1]))
        else:
            raise ValueError(f"line {no}: cannot parse machine line {line!r}")
    if start is None:
        raise ValueError("machine file has no start line")
    successors = tuple(succ.get(i) for i in range(len(names)))
    return MachineSpec(
        tuple(names), start, successors, frozenset(accepting), frozenset(rejecting)
    )


def gadget_pspace(machine: MachineSpec) -> CTCProgram:
    """Force a machine's halting answer around the loop.

    CTC contents pair a configuration code with a control bit (bit 0).
    Non-halting configurations advance and keep the bit; halting ones
    restart at the start configuration with the bit rewritten to the
    answer; codes above the configuration count drain to the start.  The
    only cycle left is the canonical run carrying the true answer, and
    the output bit reads the control bit.
    """
    count = len(machine.names)
    if count > 1 << (DEFAULT_BIT_CAP - 1):
        raise ResourceLimitError(f"{count} configurations exceeds the bit cap")
    p_cfg = max(1, (count - 1).bit_length())
    p = p_cfg + 1
    outputs = []
    for v in range(1 << (p + 1)):
        y = v >> 1
        m, b = y >> 1, y & 1
        if m >= count:
            y2 = (machine.start << 1) | b
        elif m in machine.accepting:
            y2 = (machine.start << 1) | 1
        elif m in machine.rejecting:
            y2 = (machine.start << 1) | 0
        else:
            y2 = (machine.successors[m] << 1) | b
        outputs.append((y2 << 1) | b)
    circuit = ClassicalCircuit(p, 1, (), FunctionTable(p + 1, tuple(outputs)))
    return CTCProgram("classical", circuit, 0)


def gadget_narrow_np(n: int, witnesses: Sequence[bool], eps: Rational) -> CTCProgram:
    """One-bit chain that amplifies any witness among 2^n candidates.

    Each round guesses a candidate uniformly; with probability eps the
    bit resets to 0, otherwise a guessed witness forces it to 1 and a
    non-witness leaves it alone.  Marginalizing the guess leaves a 2x2
    chain whose stationary state puts mass pw(1-eps)/(eps + pw(1-eps)) on
    1, where pw is the witness density, so a single witness beats any
    eps well below 2^-n while no witness pins the bit to 0.
    """
    if n < 1 or n > 20:
        raise ValueError("n must be between 1 and 20")
    size = 1 << n
    if len(witnesses) != size:
        raise ValueError(f"need {size} witness entries, got {len(witnesses)}")
    eps = Rational(eps)
    if not 0 < eps < 1:
        raise ValueError("eps must be strictly between 0 and 1")
    if eps >= Rational(1, size):
        warnings.warn(
            f"eps = {eps} is not below 2^-{n}; a single witness may fail to "
            f"dominate the reset",
            RuntimeWarning,
            stacklevel=2,
        )
    pw = Rational(sum(1 for w in witnesses if w), size)
    stay = 1 - eps
    chain = StochasticMatrix(
        2,
        Matrix.from_rows(
            [
                [1 - pw * stay, eps],
                [pw * stay, stay],
            ]
        ),
    )
    return CTCProgram("stochastic", StochasticCircuit(1, chain, ("1",)), 0)


def gadget_np_conp(
    n: int, yes_witnesses: Sequence[bool], no_witnesses: Sequence[bool]
) -> CTCProgram:
    """Two-sided variant: guessed yes-witnesses force the bit to 1,
    guessed no-witnesses force it to 0, anything else keeps it.  With
    witnesses on exactly one side the stationary state is a point mass,
    with no reset probability needed."""
    if n < 1 or n > 20:
        raise ValueError("n must be between 1 and 20")
    size = 1 << n
    if len(yes_witnesses) != size or len(no_witnesses) != size:
        raise ValueError(f"witness tables must have {size} entries")
    overlap = [i for i in range(size) if yes_witnesses[i] and no_witnesses[i]]
    if overlap:
        raise ValueError(
            f"candidate {overlap[0]} is listed as both a yes- and a no-witness"
        )
    p_yes = Rational(sum(1 for w in yes_witnesses if w), size)
    p_no = Rational(sum(1 for w in no_witnesses if w), size)
    chain = StochasticMatrix(
        2,
        Matrix.from_rows(
            [
                [1 - p_yes, p_no],
                [p_yes, 1 - p_no],
            ]
        ),
    )
    return CTCProgram("stochastic", StochasticCircuit(1, chain, ("1",)), 0)


# -- epsilon-fixed-point analysis -----------------------------------------

def epsilon_fixed_point_check(channel, state, eps) -> EpsilonReport:
    """Is the state within eps of its image, in half-L1 or trace distance?

    Classical pairs (StochasticMatrix, ClassicalDistribution) get an
    exact rational distance.  Quantum pairs (Superoperator,
    DensityMatrix) get a float trace distance (singular values, 1e-9
    tolerance) plus an exact entrywise half-L1 upper bound, since the
    trace norm never exceeds the entrywise absolute sum.
    """
    eps = Rational(eps)
    if isinstance(channel, StochasticMatrix) and isinstance(state, ClassicalDistribution):
        if channel.dim != len(state.probabilities):
            raise ValueError("dimension mismatch")
        image = []
        for i in range(channel.dim):
            total = Rational(0)
            for j in range(channel.dim):
                total += channel.matrix.entry(i, j).re * state.probabilities[j]
            image.append(total)
        l1 = Rational(0)
        for a, b in zip(state.probabilities, image):
            l1 += abs(a - b)
        d = l1 / 2
        return EpsilonReport(
            ok=d <= eps,
            exact_distance=d,
            float_distance=float(d),
            exact_upper_bound=None,
        )
    from .superop import Superoperator  # local to avoid import fuss at module top

    if isinstance(channel, Superoperator) and isinstance(state, DensityMatrix):
        if channel.input_dim != state.dim:
            raise ValueError("dimension mismatch")
        delta = state.matrix - channel.apply_matrix(state.matrix)
        sv = np.linalg.svd(to_complex_array(delta), compute_uv=False)
        fd = float(np.sum(sv)) / 2.0
        bound = Rational(0)
        for e in delta.entries:
            bound += abs(e.re) + abs(e.im)
        bound = bound / 2
        return EpsilonReport(
            ok=fd <= float(eps) + 1e-9,
            exact_distance=None,
            float_distance=fd,
            exact_upper_bound=bound,
        )
    raise TypeError(
        "expected (StochasticMatrix, ClassicalDistribution) or "
        "(Superoperator, DensityMatrix)"
    )
