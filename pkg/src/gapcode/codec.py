"""Gap encoder and the two anchor-locating decoders.

The encoder walks a position pointer around a circle of n = 2**ell points:
for each message block, it skips as many zeros as the block's value and
sets the next position to one.  Decoding reduces to locating the anchor
processed by the very first write; its position is the value of the top
block and every later gap is the value of one block.

Two anchor rules are implemented.  ``find_anchor`` (for anchor-decodable
sequences) takes the largest gap, after a special-case match against the
maximal-gap pattern.  ``find_anchor2`` (for the two-parameter family) marks
every gap reaching a threshold as a candidate and picks the candidate that
is preceded cyclically by at least 2r-2 non-candidates.

Decoders take a ``strict`` flag: strict mode rejects any weight-w word
whose recovered gaps do not fit their blocks (i.e. anything outside the
encoder's image); permissive mode masks such gaps and returns best-effort
output.  Encoding and decoding are pure functions, safe to batch across
threads or processes with no shared state.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import (
    BitString,
    Codeword,
    GapVector,
    MalformedCodewordError,
    NotACodewordError,
    ParameterError,
    WeightCollisionError,
    gaps_from_ones,
)
from .sequences import CharSeq, delta, f_ell_r


@dataclass(frozen=True)
class AnchorResult:
    """Anchor location plus how it was found.

    ``ambiguous`` is only ever set for inputs outside the encoder's image
    (argmax tie, or a candidate walk that fell through); valid codewords
    always identify the anchor uniquely.
    """

    anchor_index: int
    via_maximal_gap: bool = False
    ambiguous: bool = False


class OpCounter:
    """Tallies gap inspections performed after gap extraction.

    Used by the complexity checks: anchor search touches O(w^2) gaps in the
    worst case, so decode work past the input parse stays poly-logarithmic
    in the blocklength.
    """

    __slots__ = ("gap_ops",)

    def __init__(self):
        self.gap_ops = 0


def split_blocks(x: BitString, seq: CharSeq) -> tuple[BitString, ...]:
    """Blocks x_w .. x_1 of a message, left to right."""
    seq = CharSeq.coerce(seq)
    if x.length != seq.k:
        raise ParameterError(f"message length {x.length} != k = {seq.k}")
    return tuple(
        BitString((x.value >> shift) & mask, length)
        for (shift, mask), length in zip(seq.extract_plan, seq.lens_desc)
    )


def encode_value(value: int, seq: CharSeq) -> tuple[int, ...]:
    """Sorted one-positions of the codeword for a message given as an integer."""
    if not 0 <= value < (1 << seq.k):
        raise ParameterError(f"message value {value} does not fit {seq.k} bits")
    mask_n = seq.n - 1
    pos = -1
    out = []
    for shift, mask in seq.extract_plan:
        pos = (pos + 1 + ((value >> shift) & mask)) & mask_n
        out.append(pos)
    out.sort()
    for i in range(len(out) - 1):
        if out[i] == out[i + 1]:
            raise WeightCollisionError(
                f"position {out[i]} written twice; sequence does not preserve weight"
            )
    return tuple(out)


def encode(x: BitString, seq: CharSeq) -> Codeword:
    """Encode a message into a weight-w word of length n = 2**ell."""
    seq = CharSeq.coerce(seq)
    if not isinstance(x, BitString):
        x = BitString.from_text(x) if isinstance(x, str) else BitString.from_bits(x)
    if x.length != seq.k:
        raise ParameterError(f"message length {x.length} != k = {seq.k}")
    return Codeword(seq.n, encode_value(x.value, seq))


def find_anchor(g, seq: CharSeq, counter: OpCounter | None = None) -> AnchorResult:
    """Anchor index for an anchor-decodable sequence: maximal-gap pattern
    match first, otherwise the unique largest gap (lowest index on a tie)."""
    if isinstance(g, GapVector):
        g = g.g
    seq = CharSeq.coerce(seq)
    w = len(g)
    inspected = 0
    target = seq.gaps_allone
    if len(target) == w:
        for n0 in range(w):
            for i in range(w):
                inspected += 1
                m = n0 + i
                if g[m - w if m >= w else m] != target[i]:
                    break
            else:
                if counter is not None:
                    counter.gap_ops += inspected
                return AnchorResult(n0, via_maximal_gap=True)
    best = -1
    arg = 0
    tie = False
    for m in range(w):
        v = g[m]
        if v > best:
            best, arg, tie = v, m, False
        elif v == best:
            tie = True
    inspected += w
    if counter is not None:
        counter.gap_ops += inspected
    return AnchorResult(arg, ambiguous=tie)


def find_anchor2(
    g, ell: int, r: int, counter: OpCounter | None = None
) -> AnchorResult:
    """Anchor index for the two-parameter family via the candidate rule.

    Gaps at or above 2**(ell-r-1) are candidates.  The anchor is the
    candidate preceded cyclically by >= 2r-2 non-candidates; a lone
    candidate is the anchor directly.  When the family offset is 1 the
    maximal-gap pattern is matched first, because in that one case the
    anchor gap itself falls below the threshold.
    """
    if isinstance(g, GapVector):
        g = g.g
    seq = f_ell_r(ell, r)
    w = len(g)
    if w != ell:
        raise MalformedCodewordError(f"gap vector has {w} entries, expected {ell}")
    threshold = 1 << (ell - r - 1)
    inspected = 0
    if delta(ell, r) == 1:
        target = (threshold - 1,) + seq.allone_tail
        for n0 in range(w):
            for i in range(w):
                inspected += 1
                m = n0 + i
                if g[m - w if m >= w else m] != target[i]:
                    break
            else:
                if counter is not None:
                    counter.gap_ops += inspected
                return AnchorResult(n0, via_maximal_gap=True)
    is_cand = [v >= threshold for v in g]
    inspected += w
    count = sum(is_cand)
    if count == 0:
        if counter is not None:
            counter.gap_ops += inspected
        raise NotACodewordError("no gap reaches the candidate threshold")
    m0 = is_cand.index(True)
    if count == 1:
        if counter is not None:
            counter.gap_ops += inspected
        return AnchorResult(m0)
    run = 0
    need = 2 * r - 2
    for step in range(1, w + 1):
        m = m0 + step
        if m >= w:
            m -= w
        inspected += 1
        if not is_cand[m]:
            run += 1
        else:
            if run >= need:
                if counter is not None:
                    counter.gap_ops += inspected
                return AnchorResult(m)
            run = 0
    # Unreachable for words in the encoder's image; fall back to the first
    # candidate like the walk's initialisation does.
    if counter is not None:
        counter.gap_ops += inspected
    return AnchorResult(m0, ambiguous=True)


def _reassemble(ones, gaps, anchor: int, seq: CharSeq, strict: bool) -> int:
    lens = seq.lens_desc
    w = len(gaps)
    value = ones[anchor]
    for i in range(1, w):
        m = anchor + i
        if m >= w:
            m -= w
        g = gaps[m]
        blen = lens[i]
        if g >> blen:
            if strict:
                raise NotACodewordError(
                    f"gap {g} does not fit its {blen}-bit block; not an encoder output"
                )
            g &= (1 << blen) - 1
        value = (value << blen) | g
    return value


def decode_ones(
    ones: Sequence[int],
    seq: CharSeq,
    strict: bool = True,
    counter: OpCounter | None = None,
) -> int:
    """Message value for the sorted one-positions of a codeword."""
    w = seq.w
    if len(ones) != w:
        raise MalformedCodewordError(f"weight {len(ones)} != {w}")
    gaps = gaps_from_ones(ones, seq.n)
    res = find_anchor(gaps, seq, counter)
    return _reassemble(ones, gaps, res.anchor_index, seq, strict)


def decode(
    c: Codeword,
    seq: CharSeq,
    strict: bool = True,
    counter: OpCounter | None = None,
) -> BitString:
    """Inverse of :func:`encode` on the encoder's image (anchor-decodable
    sequences); raises in strict mode for words outside the image."""
    seq = CharSeq.coerce(seq)
    if c.n != seq.n:
        raise MalformedCodewordError(f"blocklength {c.n} != n = {seq.n}")
    return BitString(decode_ones(c.ones, seq, strict, counter), seq.k)


def decode2_ones(
    ones: Sequence[int],
    seq: CharSeq,
    strict: bool = True,
    counter: OpCounter | None = None,
) -> int:
    """Message value under the two-parameter family's candidate decoder."""
    if seq.r is None:
        raise ParameterError("sequence carries no r; build it with f_ell_r or f_hat")
    w = seq.w
    if len(ones) != w:
        raise MalformedCodewordError(f"weight {len(ones)} != {w}")
    gaps = gaps_from_ones(ones, seq.n)
    res = find_anchor2(gaps, seq.ell, seq.r, counter)
    return _reassemble(ones, gaps, res.anchor_index, seq, strict)


def decode2(
    c: Codeword,
    seq: CharSeq,
    strict: bool = True,
    counter: OpCounter | None = None,
) -> BitString:
    """Inverse of :func:`encode` when the auxiliary sequence is f_{ell,r}."""
    seq = CharSeq.coerce(seq)
    if c.n != seq.n:
        raise MalformedCodewordError(f"blocklength {c.n} != n = {seq.n}")
    return BitString(decode2_ones(c.ones, seq, strict, counter), seq.k)
