"""Optimized 1->M universal symmetric quantum telecloning: circuit
construction, exact and noisy simulation, parallel single-qubit tomography,
and verification against the closed-form fidelity bound."""

from .analysis import CloneReport, ideal_clone_density, theoretical_fidelity
from .builder import (MessageSpec, TelecloningLayout, build_prep_circuit,
                      build_telecloning_circuit, correction_table,
                      tetrahedral_states)
from .circuit import Circuit, Gate, Instruction, compute_depth, count_gates, validate_circuit
from .dicke import build_dicke_unitary, build_scs, build_weight_ladder, ladder_angles
from .qasm import emit_qasm, parse_qasm_subset
from .sampling import ShotSampler, sample_shots
from .sim import (ExactCloneResult, NoiseModel, ShotResult, Statevector,
                  exact_clone_density, partial_trace_1q, run_shot)
from .tomography import (TomographyCounts, density_from_bloch, estimate_bloch,
                         fidelity, project_physical, reconstruct_clones)

__version__ = "0.1.0"
