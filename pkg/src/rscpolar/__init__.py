"""Symmetric binary-input channels as mixtures of BSCs, Arikan transforms and polar code construction."""

from .algebra import (
    EXACT,
    FLOAT,
    balls_in_boxes,
    binary_entropy,
    diamond,
    diamond_power,
    multinomial,
    star,
    star_power,
    varpi,
)
from .arikan import (
    a0,
    a1,
    a_seq,
    bec_fast,
    bsc_closed_form,
    delta_closed,
    delta_m,
    delta_wpq,
    nabla_closed,
    nabla_m,
    nabla_wpq,
)
from .channel import (
    BscComponent,
    SymmetricChannel,
    bhattacharyya,
    canonicalize,
    capacity,
    degrade_merge,
    equivalent,
    lrp,
    make_bec,
    make_bsc,
    mix,
    p_error,
    phi,
)
from .construction import (
    ConstructionResult,
    b_of_alpha,
    bhattacharyya_bounds,
    check_phi_bounds,
    construct,
    encode,
    generator_matrix,
    s_set,
    select_frozen,
    varphi_alpha,
)
from .errors import AsymmetricChannelError, ModeError, ParseError, ResourceError, UsageError
from .oracle import oracle_a0, oracle_a1, oracle_a_seq, table_of
from .profile import GeneralChannel, LikelihoodRatioProfile, is_symmetric, lrp_from_table

__version__ = "0.1.0"
