"""Fault-tolerant resource estimation for lattice-model energy estimation.

The package covers the full pipeline: Pauli-term enumeration of the target
lattice models, error budgeting, T-count models for five phase-estimation
back-ends, surface-code distance and physical-qubit planning, a
beat-clocked lattice-surgery scheduling simulator, and the
quantum-classical runtime crossover analysis.
"""

from .budget import AlgorithmKind, ErrorBudget, budget_from_target, readout_digits
from .crossover import (
    CrossoverReport,
    FitKind,
    FitResult,
    TracePoint,
    extrapolate_ground_energy,
    find_crosspoint,
    fit_size_scaling,
    fit_time_to_accuracy,
    load_classical_endpoints,
    load_quantum_endpoints,
    load_reference_beats,
    read_trace,
)
from .floorplan import CellRole, FloorPlan, build_floor_plan
from .gatecosts import (
    SynthesisConstants,
    bits_for,
    tcount_adder,
    tcount_controlled_adder,
    tcount_controlled_rotation,
    tcount_cswap,
    tcount_mcx,
    tcount_power2_adder,
    tcount_rotation,
    tcount_uniform,
)
from .instructions import InstrKind, Instruction, synthesize_select
from .lattices import (
    Boundary,
    BoundaryRescale,
    FermiHubbard,
    HeisenbergChain,
    HeisenbergJ1J2,
    LatticeSpec,
    PauliTerm,
    TermTable,
    boundary_rescale,
    chain,
    cylinder,
    enumerate_terms,
    lattice_spec_from_mapping,
    load_lattice_spec,
    periodic_spec,
    term_table_to_csv,
)
from .algorithms import (
    CostReport,
    OracleFlavor,
    RepetitionAccounting,
    asp_time_estimate,
    estimate_all,
    prepare_cost,
    qdrift_cost,
    qubitization_cost,
    select_cost,
    select_cost_closed_form,
    taylor_order,
    taylorization_cost,
    tcount_select_sequential,
    trotter2_cost,
)
from .planner import (
    CodePlan,
    HardwareSpec,
    InfeasibleHardwareError,
    SweepCell,
    closed_form_beats,
    physical_qubits_detailed,
    physical_qubits_rough,
    runtime_closed_forms,
    runtime_estimate,
    select_qubits_involved,
    solve_code_distance,
    solve_code_distance_rough,
    sweep_grid,
)
from .simulator import PlanDefectError, SimResult, simulate

__version__ = "0.1.0"
