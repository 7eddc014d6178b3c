"""gapcode: binary constant-weight codes with information in the gaps.

The encoder places w ones on a circle of n = 2**ell points so that the
cyclic gaps between successive ones spell out the message blocks; decoding
locates the anchor (the first one written) and reads the gaps back.  Both
directions run in time linear in the message length, with the post-parse
decode work poly-logarithmic in n, and neither touches a binomial
coefficient — the classic combinadics path lives in :mod:`gapcode.oracle`
purely as an independent referee.

Quick start::

    >>> import gapcode
    >>> code = gapcode.make_code("c", ell=4)
    >>> cw = code.encode(gapcode.BitString.from_text("101011100"))
    >>> cw.ones
    (1, 2, 10, 14)
    >>> code.decode(cw).text()
    '101011100'
"""

from .core import (
    BitString,
    CodeError,
    Codeword,
    GapVector,
    MalformedCodewordError,
    NotACodewordError,
    ParameterError,
    WeightCollisionError,
    cshift,
    dec,
    extract_gaps,
    from_dec,
    gap,
)
from .sequences import (
    MAX_ELL,
    CharSeq,
    DecodabilityWitness,
    anchor_conditions,
    delta,
    f_ell,
    f_ell_r,
    f_ell_t,
    f_hat,
    is_anchor_decodable,
    k_ell,
    k_ell_r,
    k_lower_bound,
    mu,
    r_max,
)
from .codec import (
    AnchorResult,
    OpCounter,
    decode,
    decode2,
    encode,
    find_anchor,
    find_anchor2,
    split_blocks,
)
from .derived import (
    CONSTRUCTIONS,
    Code,
    CodeParams,
    decode_bt,
    decode_ct,
    decode_dt,
    encode_bt,
    encode_ct,
    encode_dt,
    find_anchor_bt,
    make_code,
    resolve_params,
    seq_dt,
)
from .analysis import (
    BoundsReport,
    DeltaReport,
    SearchResult,
    binom,
    bounds_report,
    bounds_table,
    delta_ell,
    floor_log2_binom,
    necklace_bound,
    necklace_count,
    optimality_search,
    primitive_necklaces,
    primitive_necklaces_by_inversion,
    stirling_upper_bound,
)
from .oracle import (
    CensusReport,
    VerifyReport,
    boundary_messages,
    codebook,
    coverage_census,
    rank_lex,
    unrank_lex,
    verify_exhaustive,
    verify_sampled,
)

__version__ = "0.1.0"
