"""Derived code families and the construction registry.

Three transformations of the main code widen the parameter range while
keeping the same encode/decode machinery:

* weight reduction by sequence swap ("ct"): a width-t sequence with the
  same blocklength exponent gives weight-t words;
* weight reduction by message shortening ("dt"): zeroing the low blocks
  makes their ones consecutive, and dropping them leaves a weight-t word
  whose decoder is the generic one on the top-t sub-sequence;
* blocklength truncation ("bt"): the anchor position is scaled by 2**t and
  2**t - 1 zeros are deleted right after the last write, shrinking the
  length to 2**ell - 2**t + 1 at the cost of 2t message bits.

``make_code`` resolves any construction name into a ready encode/decode
pair; ``resolve_params`` just reports the (n, k, w) arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

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
from .codec import (
    AnchorResult,
    OpCounter,
    decode_ones,
    decode2_ones,
    encode_value,
)
from .sequences import MAX_ELL, CharSeq, f_ell, f_ell_r, f_ell_t, f_hat, k_ell, r_max

CONSTRUCTIONS = ("c", "chat", "ct", "dt", "bt")


@dataclass(frozen=True)
class CodeParams:
    """Resolved parameters of one construction instance."""

    construction: str
    ell: int
    t: int | None
    r: int | None
    n: int
    k: int
    w: int

    def describe(self) -> str:
        extra = ""
        if self.t is not None:
            extra += f" t={self.t}"
        if self.r is not None:
            extra += f" r={self.r}"
        return f"{self.construction} ell={self.ell}{extra} (n={self.n}, k={self.k}, w={self.w})"


@lru_cache(maxsize=None)
def seq_dt(ell: int, t: int) -> CharSeq:
    """Effective sequence of the shortened-message code: the top t entries
    of the main sequence.  It inherits anchor-decodability with slack, so
    the generic decoder applies unchanged."""
    if not 1 <= t < ell:
        raise ParameterError(f"need 1 <= t < ell, got t={t}, ell={ell}")
    base = f_ell(ell).s
    return CharSeq(base[ell - t :], label=f"d_{ell}^({t})")


@lru_cache(maxsize=None)
def _bt_plan(ell: int, t: int):
    """Cached tables for the truncated-blocklength code."""
    base = f_ell(ell)
    f = base.s
    if not 1 <= t < f[0]:
        raise ParameterError(f"need 1 <= t < {f[0]} (= first block length), got t={t}")
    # Block lengths in encode order: x_ell is ell-t bits, x_1 loses t bits.
    lens_desc = (ell - t,) + tuple(f[ell - 2 : 0 : -1]) + (f[0] - t,)
    plan = []
    shift = 0
    for length in reversed(lens_desc):
        plan.append((shift, (1 << length) - 1))
        shift += length
    plan.reverse()
    k = shift
    n_big = 1 << ell
    n_out = n_big - (1 << t) + 1
    # Maximal-gap pattern of the truncated word.  The untruncated anchor
    # gap would be 2^ell - 1 - sum_i 2^|x_i|; deleting 2^t - 1 zeros right
    # after the last write shrinks exactly that gap.
    head = (
        n_big
        - 1
        - sum(1 << v for v in f[:-1])
        + (1 << f[0])
        - (1 << (f[0] - t))
        - ((1 << t) - 1)
    )
    gaps_allone = (
        (head,)
        + tuple((1 << v) - 1 for v in f[ell - 2 : 0 : -1])
        + ((1 << (f[0] - t)) - 1,)
    )
    # Increment budget from the weight lemma; encoding asserts it so the
    # deletion provably never removes a one.
    increment_bound = n_big - (1 << f[-2]) - (1 << t)
    return lens_desc, tuple(plan), k, n_big, n_out, gaps_allone, increment_bound


def encode_bt_value(value: int, ell: int, t: int) -> tuple[int, ...]:
    """Sorted one-positions of the truncated-blocklength codeword."""
    lens_desc, plan, k, n_big, n_out, _, bound = _bt_plan(ell, t)
    if not 0 <= value < (1 << k):
        raise ParameterError(f"message value {value} does not fit {k} bits")
    mask_n = n_big - 1
    top_shift, top_mask = plan[0]
    pos = ((value >> top_shift) & top_mask) << t
    ones = [pos]
    increments = 0
    for shift, mask in plan[1:]:
        step = 1 + ((value >> shift) & mask)
        increments += step
        pos = (pos + step) & mask_n
        ones.append(pos)
    assert increments <= bound, "increment budget exceeded; weight lemma violated"
    window = (1 << t) - 1
    start = (pos + 1) & mask_n
    if start + window <= n_big:
        hi = start + window
        out = []
        for q in ones:
            if start <= q < hi:
                raise WeightCollisionError("deletion window contains a one")
            out.append(q if q < start else q - window)
    else:
        low = start + window - n_big
        out = []
        for q in ones:
            if q >= start or q < low:
                raise WeightCollisionError("deletion window contains a one")
            out.append(q - low)
    out.sort()
    for i in range(len(out) - 1):
        if out[i] == out[i + 1]:
            raise WeightCollisionError("position written twice")
    return tuple(out)


def find_anchor_bt(
    g, ell: int, t: int, counter: OpCounter | None = None
) -> AnchorResult:
    """Anchor rule for the truncated code: maximal-gap match, else largest gap.

    The anchor gap stays strictly maximal even after losing 2**t - 1 zeros,
    so the argmax branch alone would suffice; the pattern match keeps the
    maximal-gap case explicit."""
    lens_desc, _, _, _, n_out, target, _ = _bt_plan(ell, t)
    if isinstance(g, GapVector):
        g = g.g
    w = len(g)
    if w != ell:
        raise MalformedCodewordError(f"gap vector has {w} entries, expected {ell}")
    inspected = 0
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
    if counter is not None:
        counter.gap_ops += inspected + w
    return AnchorResult(arg, ambiguous=tie)


def decode_bt_ones(
    ones: Sequence[int],
    ell: int,
    t: int,
    strict: bool = True,
    counter: OpCounter | None = None,
) -> int:
    """Message value for a truncated-blocklength codeword."""
    lens_desc, _, _, _, n_out, _, _ = _bt_plan(ell, t)
    if len(ones) != ell:
        raise MalformedCodewordError(f"weight {len(ones)} != {ell}")
    gaps = gaps_from_ones(ones, n_out)
    res = find_anchor_bt(gaps, ell, t, counter)
    anchor = res.anchor_index
    # The deletion shifted the anchor down by at most 2^t - 1 from a
    # multiple of 2^t, so ceiling division recovers the top block.
    value = (ones[anchor] + (1 << t) - 1) >> t
    w = ell
    for i in range(1, w):
        m = anchor + i
        if m >= w:
            m -= w
        g = gaps[m]
        blen = lens_desc[i]
        if g >> blen:
            if strict:
                raise NotACodewordError(
                    f"gap {g} does not fit its {blen}-bit block; not an encoder output"
                )
            g &= (1 << blen) - 1
        value = (value << blen) | g
    return value


def resolve_params(
    construction: str,
    ell: int,
    t: int | None = None,
    r: int | None = None,
    max_ell: int = MAX_ELL,
) -> CodeParams:
    """Validate a parameter combination and compute (n, k, w)."""
    construction = construction.lower()
    if construction not in CONSTRUCTIONS:
        raise ParameterError(
            f"unknown construction {construction!r}; pick one of {CONSTRUCTIONS}"
        )
    if not isinstance(ell, int) or not 3 <= ell <= max_ell:
        raise ParameterError(f"need 3 <= ell <= {max_ell}, got {ell}")
    if construction in ("c", "chat") and t is not None:
        raise ParameterError(f"construction {construction!r} takes no t")
    if construction in ("c", "ct", "dt", "bt") and r is not None:
        raise ParameterError(f"construction {construction!r} takes no r")
    if construction == "c":
        seq = f_ell(ell)
        return CodeParams("c", ell, None, None, seq.n, seq.k, seq.w)
    if construction == "chat":
        rr = r_max(ell) if r is None else r
        seq = f_ell_r(ell, rr)
        return CodeParams("chat", ell, None, rr, seq.n, seq.k, seq.w)
    if t is None:
        raise ParameterError(f"construction {construction!r} requires t")
    if construction == "ct":
        seq = f_ell_t(ell, t)
        return CodeParams("ct", ell, t, None, seq.n, seq.k, seq.w)
    if construction == "dt":
        seq = seq_dt(ell, t)
        return CodeParams("dt", ell, t, None, seq.n, seq.k, seq.w)
    _, _, k, _, n_out, _, _ = _bt_plan(ell, t)
    assert k == k_ell(ell) - 2 * t
    return CodeParams("bt", ell, t, None, n_out, k, ell)


@dataclass(frozen=True)
class Code:
    """One resolved code: parameters plus encode/decode entry points."""

    params: CodeParams
    seq: CharSeq | None
    _encode_value: Callable[[int], tuple[int, ...]]
    _decode_ones: Callable[..., int]

    @property
    def anchor_len(self) -> int:
        """Bit length of the block recovered from the anchor position."""
        if self.params.construction == "bt":
            return self.params.ell - self.params.t
        return self.seq.s[-1]

    def encode_value(self, value: int) -> tuple[int, ...]:
        return self._encode_value(value)

    def decode_ones(self, ones, strict: bool = True, counter=None) -> int:
        return self._decode_ones(ones, strict=strict, counter=counter)

    def encode(self, x: BitString) -> Codeword:
        if not isinstance(x, BitString):
            x = BitString.from_text(x) if isinstance(x, str) else BitString.from_bits(x)
        if x.length != self.params.k:
            raise ParameterError(f"message length {x.length} != k = {self.params.k}")
        return Codeword(self.params.n, self._encode_value(x.value))

    def decode(self, c: Codeword, strict: bool = True, counter=None) -> BitString:
        if c.n != self.params.n:
            raise MalformedCodewordError(f"blocklength {c.n} != n = {self.params.n}")
        value = self._decode_ones(c.ones, strict=strict, counter=counter)
        return BitString(value, self.params.k)


def make_code(
    construction: str,
    ell: int,
    t: int | None = None,
    r: int | None = None,
    max_ell: int = MAX_ELL,
) -> Code:
    """Build the encode/decode pair for any construction."""
    params = resolve_params(construction, ell, t=t, r=r, max_ell=max_ell)
    name = params.construction
    if name == "bt":
        tt = params.t

        def enc(value, _ell=ell, _t=tt):
            return encode_bt_value(value, _ell, _t)

        def dec(ones, strict=True, counter=None, _ell=ell, _t=tt):
            return decode_bt_ones(ones, _ell, _t, strict=strict, counter=counter)

        return Code(params, None, enc, dec)
    if name == "c":
        seq = f_ell(ell)
        decoder = decode_ones
    elif name == "chat":
        seq = f_ell_r(ell, params.r)
        decoder = decode2_ones
    elif name == "ct":
        seq = f_ell_t(ell, params.t)
        decoder = decode_ones
    else:
        seq = seq_dt(ell, params.t)
        decoder = decode_ones

    def enc(value, _seq=seq):
        return encode_value(value, _seq)

    def dec(ones, strict=True, counter=None, _seq=seq, _decoder=decoder):
        return _decoder(ones, _seq, strict=strict, counter=counter)

    return Code(params, seq, enc, dec)


# Spec-level operation names for the three derived families.


def encode_ct(x: BitString, ell: int, t: int) -> Codeword:
    """Weight-t encoder obtained by swapping in the width-t sequence."""
    return make_code("ct", ell, t=t).encode(x)


def decode_ct(c: Codeword, ell: int, t: int, strict: bool = True) -> BitString:
    return make_code("ct", ell, t=t).decode(c, strict=strict)


def encode_dt(x: BitString, ell: int, t: int) -> Codeword:
    """Weight-t encoder obtained by shortening the message: the low ell-t
    blocks are fixed to zero and their consecutive ones dropped."""
    return make_code("dt", ell, t=t).encode(x)


def decode_dt(c: Codeword, ell: int, t: int, strict: bool = True) -> BitString:
    return make_code("dt", ell, t=t).decode(c, strict=strict)


def encode_bt(x: BitString, ell: int, t: int) -> Codeword:
    """Weight-ell encoder on the truncated blocklength 2**ell - 2**t + 1."""
    return make_code("bt", ell, t=t).encode(x)


def decode_bt(c: Codeword, ell: int, t: int, strict: bool = True) -> BitString:
    return make_code("bt", ell, t=t).decode(c, strict=strict)
