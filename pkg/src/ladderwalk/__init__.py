"""Discrete-time quantum walks on a line and on a two-rail ladder.

Simulation of conventional, split-step and mixed ladder protocols in
position space, decomposition of the ladder walk into its two
quasi-momentum sectors, and the derived diagnostics: spread,
magnetization-like parameters, coin density matrices, entropies and
mutual information.  The :mod:`ladderwalk.cli` module exposes batch
experiment commands.
"""

from .core import (
    DEFAULT_GAMMA_Y,
    CoinOperator,
    CoinSpinor,
    Conventional,
    Ladder,
    LadderState,
    LatticeOverflowError,
    ProtocolSpec,
    SplitStep,
    WalkerState1D,
    evolve,
    localized_ladder,
    localized_walker,
    make_coin,
    position_distribution,
    shift_full,
    shift_half_down,
    shift_half_up,
    step_conventional,
    step_ladder,
    step_splitstep,
)
from .observables import (
    MagnetizationTriple,
    SpreadReport,
    discriminant,
    magnetization,
    second_moment,
    side_marginals,
    spread_report,
    total_variation,
)
from .sectors import (
    EMPTY_SECTOR_WEIGHT,
    EffectiveAngles,
    SectorPair,
    WalkPattern,
    classify_pattern,
    effective_angle_fractions,
    effective_angles,
    reconstruct_ladder,
    reduce_angle,
    reduce_pi_fraction,
    sector_project,
)
from .spectral import (
    AliasingError,
    DegenerateCoinError,
    DensityMatrix2,
    MomentumMode,
    WalkSummary,
    asymptotic_rho,
    average_rho,
    cesaro_rho,
    dispersion,
    entropy,
    evolve_spectral,
    finite_n_rho,
    mode_eigensystem,
    mutual_information,
    rho_eigenvalues,
    walk_summary,
    walk_summary_from_angles,
)

__version__ = "0.1.0"
