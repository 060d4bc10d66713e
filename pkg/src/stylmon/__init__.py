"""The stylic monoid of finite rank, its tropical representation, and identity checking."""

from .congruence import (
    ADJAN,
    Identity,
    Var,
    Verdict,
    basis,
    brute_force_check,
    check_identity_styl,
    debruijn_identity,
    distinguishing_word,
    family_identity,
    simon_equivalent,
    tropical_counterexample_search,
    witness_evaluation,
)
from .stylic import (
    MonoidTable,
    NTableau,
    absorbing,
    canonical_word,
    delta,
    enumerate_monoid,
    insert_letter,
    is_j_trivial,
    multiply,
    n_tableau,
    schensted,
    stylic_equal,
    up_arrow,
)
from .tropical import (
    TropMatrix,
    decode_tableau,
    mat_mul,
    rho,
    rho_letter,
    skew_transpose,
    truncate,
)
from .words import (
    Alphabet,
    Word,
    complement_reverse,
    is_subsequence,
    k_spectrum,
    longest_decreasing_in_band,
    support,
)

__version__ = "0.1.0"
