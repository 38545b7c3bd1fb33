"""Entanglement of Gaussian states of continuous-variable systems.

Conventions: quadratures ordered ``(x1, p1, x2, p2, ...)``, ``hbar = 2``,
so the vacuum covariance matrix is the identity.
"""

from .errors import DomainError, GaussentError, InvalidArgumentError, NumericError
from .io import dumps, loads, read_state, write_state
from .measures import (
    MEASURES,
    GaussianEMResult,
    OneVsRestResult,
    contangle_pure_1xN,
    contangle_two_mode,
    gaussian_eof,
    gaussian_tangle_pure_1xN,
    gaussian_tangle_two_mode,
    m_squared_theta,
    measure_from_m_squared,
    minimize_m_squared,
    one_vs_rest,
    purity_matched_inversion,
    symmetric_eof_bound,
)
from .separability import (
    Bipartition,
    TwoModeStdForm,
    average_log_negativity,
    classify_purities,
    entropy_of_entanglement,
    eof_symmetric,
    glems,
    gmems,
    is_ppt,
    log_negativity,
    negativity,
    partial_transpose,
    pt_spectrum,
    two_mode_invariants,
    two_mode_standard_form,
)
from .states import (
    GaussianState,
    bona_fide_tolerance,
    generalized_entropy,
    is_bona_fide,
    is_pure,
    purity,
    reduce,
    renyi_entropy,
    thermal,
    two_mode_squeezed,
    vacuum,
    von_neumann_entropy,
    wigner_at,
)
from .symmetric import (
    BisymmetricSpec,
    FullySymmetricSpec,
    LocalizationResult,
    asymptotic_1K_bound,
    block_log_negativity,
    fully_symmetric_mixed,
    fully_symmetric_pure,
    one_vs_block_log_negativity,
    unitary_localization,
)
from .symplectic import omega, symplectic_spectrum, williamson
from .tripartite import (
    MonogamyReport,
    ResidualContangleReport,
    ThreeModeLocalMix,
    four_mode_promiscuous,
    ghzw,
    monogamy_check,
    pure_three_mode,
    residual_contangle_generic,
    residual_contangle_pure,
    three_mode_class,
)

__version__ = "0.1.0"
