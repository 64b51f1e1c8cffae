"""Capacity-region bounds for the two-user Gaussian interference channel
with noisy channel-output feedback: inner and outer rate regions, their
worst-case gap, and a verifier for the projected split-rate system."""

from .achievable import (
    AchievableTerms,
    AuxTerms,
    CodingScheme,
    GridSpec,
    a_terms,
    achievable_bounds,
    achievable_union,
    aux_terms,
    rho_max,
)
from .channel import (
    ChannelParams,
    CoefficientSet,
    Scenario,
    ScenarioPair,
    SymmetricSpec,
    classify,
    db_to_linear,
    derive_params,
    from_symmetric,
    linear_to_db,
    params_from_dict,
)
from .converse import (
    ConverseAuxTerms,
    ConverseEvaluation,
    converse_aux,
    converse_bounds,
    converse_union,
    family_suprema,
)
from .errors import (
    DomainError,
    EquivalenceFailure,
    IcnofError,
    InputError,
    InterferenceTooWeak,
    VerificationFailure,
)
from .fm import (
    RateSplit,
    ThetaVector,
    equivalence_check,
    fm_bounds,
    split_feasible,
    theta_from_scheme,
)
from .gaps import (
    GapLedger,
    ledger_gap,
    numeric_gap,
    sample_case11_channel,
    sample_channel,
    select_scheme,
    sweep_alpha_beta,
    verify_constant_gap,
)
from .geometry import BoundSet, GapResult, RatePair, Region, contains, frontier, gap_xi

__version__ = "0.1.0"
