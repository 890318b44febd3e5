"""Statevector toolkit for layered parameterized quantum circuits.

Builds the layered rotation ansatz with randomized slot placement, measures
relative expressibility and Meyer-Wallach entangling capability, runs VQE
against tabulated molecular Pauli Hamiltonians, and extends the analyses to
single-qudit frequency-comb pipelines.
"""

from ._kernels import BACKEND as kernel_backend
from .circuit import (
    CircuitTemplate,
    RotationConfiguration,
    RotationSlot,
    configuration_record,
    max_rotations,
    min_param_count,
    parse_configuration_record,
    random_configuration,
    run_circuit,
    slot_list,
)
from .errors import CapacityError, EomLeakageError, HamiltonianFormatError, UnitarityError
from .gates import EntanglerKind, GateSpec, entangler_layout, multi_controlled, rotation, standard_gate
from .hamiltonian import (
    PauliHamiltonian,
    bundled_hamiltonian,
    exact_ground_energy,
    expectation,
    load_hamiltonian,
    parse_hamiltonian,
)
from .metrics import (
    EntanglingResult,
    ExpressibilityResult,
    FidelityHistogram,
    entangling_capability,
    expressibility,
    haar_bin_probability,
    idle_baseline,
    meyer_wallach_q,
)
from .photonics import (
    EomGate,
    PhotonicConfiguration,
    PsGate,
    QuditState,
    apply_eom,
    apply_ps,
    dft_gate,
    even_superposition,
    photonic_pipeline,
    qudit_as_qubits,
)
from .state import (
    Statevector,
    SubVector,
    apply_gate,
    fidelity,
    generalized_distance,
    project_out,
    zero_state,
)
from .vqe import OptimizerSettings, VqeOutcome, vqe_minimize

__version__ = "0.1.0"
