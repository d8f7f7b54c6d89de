"""Exact simulator for programs that loop a register through time.

A program's CTC register must be fed a state the program maps back to
itself.  This package finds those states exactly: rational circuit
elaboration, an interpolated resolvent whose z -> 0 limit projects onto
the fixed space of the induced channel, cycle and stationary analysis for
classical and stochastic programs, and accept/reject/ambiguous verdicts
under the all-consistent-states rule.
"""

from .errors import ContractViolationError, ResourceLimitError
from .circuits import (
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
from .dsl import ParseError, ValidationReport, parse_program, program_to_text, validate_program
from .superop import (
    DensityMatrix,
    KrausCompletenessWarning,
    Superoperator,
    apply_channel,
    choi_matrix,
    kraus_to_natural,
    partial_trace,
    program_to_natural,
    program_to_natural_dense,
    unvec,
    vec,
)
from .fixpoint import (
    FixedPointProjector,
    SymbolicResolvent,
    cesaro_oracle,
    compute_fixed_point,
    fixed_point_projector,
    fixed_space_basis,
    projector_limit,
    symbolic_resolvent,
    verify_fixed_point,
)
from .semantics import (
    ClassicalDistribution,
    EpsilonReport,
    MachineSpec,
    StationaryResult,
    Verdict,
    accept_probability,
    classical_decide,
    cycle_fixed_point,
    enumerate_cycles,
    epsilon_fixed_point_check,
    gadget_narrow_np,
    gadget_np_conp,
    gadget_np_search,
    gadget_pspace,
    parse_machine,
    quantum_decide,
    stationary_distribution,
    stochastic_decide,
)
from .gallery import QUANTUM_DEMOS, demo_source, machine_source

__version__ = "0.1.0"

__all__ = [
    "ContractViolationError",
    "ResourceLimitError",
    "BUILTIN_GATES",
    "ClassicalAssignment",
    "ClassicalCircuit",
    "CTCProgram",
    "FunctionTable",
    "GateApplication",
    "QuantumCircuit",
    "QuantumGate",
    "StochasticCircuit",
    "StochasticMatrix",
    "circuit_unitary",
    "classical_table",
    "ParseError",
    "ValidationReport",
    "parse_program",
    "program_to_text",
    "validate_program",
    "DensityMatrix",
    "KrausCompletenessWarning",
    "Superoperator",
    "apply_channel",
    "choi_matrix",
    "kraus_to_natural",
    "partial_trace",
    "program_to_natural",
    "program_to_natural_dense",
    "unvec",
    "vec",
    "FixedPointProjector",
    "SymbolicResolvent",
    "cesaro_oracle",
    "compute_fixed_point",
    "fixed_point_projector",
    "fixed_space_basis",
    "projector_limit",
    "symbolic_resolvent",
    "verify_fixed_point",
    "ClassicalDistribution",
    "EpsilonReport",
    "MachineSpec",
    "StationaryResult",
    "Verdict",
    "accept_probability",
    "classical_decide",
    "cycle_fixed_point",
    "enumerate_cycles",
    "epsilon_fixed_point_check",
    "gadget_narrow_np",
    "gadget_np_conp",
    "gadget_np_search",
    "gadget_pspace",
    "parse_machine",
    "quantum_decide",
    "stationary_distribution",
    "stochastic_decide",
    "QUANTUM_DEMOS",
    "demo_source",
    "machine_source",
    "__version__",
]
