"""Mode-splitting and particle-detection simulator for identical fermions.

Sparse second-quantized states with exact sign bookkeeping, a dense
first-quantized brute-force oracle, particle-bipartition Schmidt analysis,
fermionic concurrence, a toy counting detector, and self-checking scenario
pipelines.
"""

__version__ = "0.1.0"

from .fock import (
    FockVector,
    OrbitalBasis,
    apply_annihilation,
    apply_creation,
    inner_product,
    slater_state,
    states_equal,
    vacuum,
)
from .firstq import (
    FirstQuantizedTensor,
    antisymmetrize,
    particle_bipartition_svd,
    product_tensor,
    reduced_density_firstq,
    to_first_quantized,
)
from .transforms import (
    CountingDistribution,
    SingleParticleUnitary,
    counting_statistics,
    distinguishable_pair_counting,
    lift_unitary,
    make_split,
    project_mode_count,
)
from .entanglement import (
    EffectiveBipartiteState,
    EffectiveSplitState,
    SchmidtEntry,
    SchmidtResult,
    concurrence_mixed,
    concurrence_pure,
    cut_purity,
    density_matrix,
    effective_state,
    effective_state_general,
    is_slater,
    linear_entropy_single,
    m_particle_rdm,
    particle_cut_matrix,
    predicted_purity,
    predicted_rank,
    predicted_spectrum,
    schmidt_decomposition,
    schmidt_spectrum,
    sector_kets,
)
from .detector import (
    DetectorCoupling,
    JointState,
    build_coupling,
    interact,
    readout,
    trace_out_detector,
)
from .scenarios import (
    Check,
    RunRecord,
    scenario_certification,
    scenario_detector,
    scenario_n_fermion,
    scenario_two_electron,
)

__all__ = [
    "FockVector",
    "OrbitalBasis",
    "apply_annihilation",
    "apply_creation",
    "inner_product",
    "slater_state",
    "states_equal",
    "vacuum",
    "FirstQuantizedTensor",
    "antisymmetrize",
    "particle_bipartition_svd",
    "product_tensor",
    "reduced_density_firstq",
    "to_first_quantized",
    "CountingDistribution",
    "SingleParticleUnitary",
    "counting_statistics",
    "distinguishable_pair_counting",
    "lift_unitary",
    "make_split",
    "project_mode_count",
    "EffectiveBipartiteState",
    "EffectiveSplitState",
    "SchmidtEntry",
    "SchmidtResult",
    "concurrence_mixed",
    "concurrence_pure",
    "cut_purity",
    "density_matrix",
    "effective_state",
    "effective_state_general",
    "is_slater",
    "linear_entropy_single",
    "m_particle_rdm",
    "particle_cut_matrix",
    "predicted_purity",
    "predicted_rank",
    "predicted_spectrum",
    "schmidt_decomposition",
    "schmidt_spectrum",
    "sector_kets",
    "DetectorCoupling",
    "JointState",
    "build_coupling",
    "interact",
    "readout",
    "trace_out_detector",
    "Check",
    "RunRecord",
    "scenario_certification",
    "scenario_detector",
    "scenario_n_fermion",
    "scenario_two_electron",
]
