"""Seifert forms, monodromy identities and root movies of chain singularities."""

from .critical import (
    CriticalData,
    CurveCoeffs,
    MorsificationConstants,
    XiSequence,
    branch_points,
    critv_curve,
    fa_critical_values,
    morsification_critical_values,
    rational_constants,
    xi_sequence,
)
from .invariants import (
    ChainTuple,
    ChainTupleError,
    InvariantBundle,
    alpha_prime_poly,
    alpha_series,
    companion_matrix,
    degree_d,
    identity_suite,
    invariant_bundle,
    milnor_number,
    quasi_weights,
    r_sequence,
    seifert_inductive,
    seifert_series,
)
from .lattice import (
    BasisState,
    PetalChain,
    SeifertLattice,
    duality_transform,
    intersection_form,
    monodromy_as_twists,
    monodromy_matrix,
    mutate_left,
    mutate_right,
    petal_chain_pairing,
    petal_pairing,
    pl_twist,
    preserves_intersection_form,
    seifert_pair,
    seifert_via_petals,
)
from .movie import (
    MovieConfig,
    PetalReport,
    TrackResult,
    classify_roots,
    find_alpha,
    poly_roots,
    rotation_equivariance,
    track,
    verify_egervary_ordering,
)
from .series import (
    IntMatrix,
    RainbowMatrix,
    TruncatedSeries,
    mat_inverse_unimodular,
    mat_mul,
    mat_pow,
    mat_transpose,
    rainbow_extend,
    rainbow_invert,
    series_int_pow,
    series_inv,
    series_mul,
    substitute_nilpotent,
)

__version__ = "0.1.0"
