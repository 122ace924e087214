"""Finite-dimensional quantum states from bit vectors: Hilbert-space
factorization, subsystem entropies, and permutation evolutions."""

__version__ = "0.1.0"

from .bitstate import (
    OnticVector,
    complement,
    inner_ontic,
    overlap_standard,
    popcount,
    random_ontic,
)
from .entropy import (
    Spectrum,
    collision_entropy,
    renyi_entropy,
    spectrum_of,
    von_neumann_entropy,
)
from .errors import (
    AlphaOne,
    ConfigError,
    DegenerateState,
    DimensionCap,
    DomainError,
    EmptyInput,
    IndexOutOfRange,
    InvalidCycle,
    LengthMismatch,
    NotHermitian,
    NumericViolation,
    OnticsimError,
    SizeMismatch,
    TrivialSubsystem,
)
from .experiment import (
    CycleCensus,
    CycleCountStat,
    SizeSummary,
    SweepConfig,
    SweepRecord,
    SweepSummary,
    run_cycle_census,
    run_sweep,
    run_time_series,
    summarize_by_size,
    sweep_csv,
    write_sweep_csv,
)
from .indexing import (
    FactorizationShape,
    SubsystemMask,
    decode,
    encode,
    merge_index,
    natural_state_lower_bound,
    orthant_sphere_area,
    split_index,
)
from .permrep import (
    EnergyBasis,
    Permutation,
    apply_permutation,
    energy_basis,
    evolve_ontic,
    fourier_block,
    permutation_from_cycles,
    permutation_matrix,
    random_permutation,
    to_energy_basis,
)
from .reduction import (
    BipartiteView,
    bipartite_view,
    purity,
    purity_from_density,
    reduced_density,
    reduced_density_bruteforce,
)
from .states import (
    DensityMatrix,
    NaturalVector,
    PureState,
    density_full,
    project_standard,
    state_from_natural,
    state_from_ontic,
)
