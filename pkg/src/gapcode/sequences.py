"""Characteristic sequences and their dimension arithmetic.

A characteristic sequence is the list of message-block lengths that drives
the gap encoder.  Its last entry fixes the blocklength exponent: a width-w
sequence ending in L produces weight-w words of length n = 2**L.  For the
main family the width equals the last entry; the reduced-weight variants
keep the last entry but shrink the width.

This module builds the sequence families, decides anchor-decodability
(with a witness naming the violated condition), and provides the exact
dimension formulas plus the closed-form lower bound on the main family's
dimension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .core import ParameterError, cshift

# Guard for materialized codes: n = 2**24 is a 16-Mbit blocklength.  Sequence
# construction itself is not capped (dimension formulas are cheap at any ell);
# the cap is enforced where codewords get built (derived.resolve_params).
MAX_ELL = 24


def _floor_log2(x: int) -> int:
    return x.bit_length() - 1


def _ceil_log2(x: int) -> int:
    return (x - 1).bit_length()


@dataclass(frozen=True)
class CharSeq:
    """A characteristic sequence plus cached encode/decode tables.

    ``s`` holds the block lengths, ``s[i-1]`` housing the length of block i
    (block 1 is the rightmost, least significant message block).  ``r`` is
    set when the sequence comes from the two-parameter family and is needed
    by the second decoder.
    """

    s: tuple[int, ...]
    r: int | None = None
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if not isinstance(self.s, tuple):
            object.__setattr__(self, "s", tuple(self.s))
        if not self.s:
            raise ParameterError("sequence must be non-empty")
        if any(not isinstance(v, int) or v < 1 for v in self.s):
            raise ParameterError("sequence entries must be positive integers")

    @classmethod
    def coerce(cls, obj) -> "CharSeq":
        if isinstance(obj, cls):
            return obj
        if isinstance(obj, str):
            return cls.parse(obj)
        return cls(tuple(obj))

    @classmethod
    def parse(cls, text: str) -> "CharSeq":
        try:
            entries = tuple(int(p) for p in text.strip().split(","))
        except ValueError as exc:
            raise ParameterError(f"cannot parse sequence {text!r}") from exc
        return cls(entries)

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.s)

    def __len__(self) -> int:
        return len(self.s)

    @property
    def w(self) -> int:
        """Width: number of blocks, equals the codeword weight."""
        return len(self.s)

    @property
    def ell(self) -> int:
        """Blocklength exponent; the last entry by construction."""
        return self.s[-1]

    @property
    def n(self) -> int:
        return 1 << self.s[-1]

    @cached_property
    def k(self) -> int:
        """Combinatorial dimension: total message length in bits."""
        return sum(self.s)

    @cached_property
    def lens_desc(self) -> tuple[int, ...]:
        """Block lengths in decode order: s(w), s(w-1), ..., s(1)."""
        return tuple(reversed(self.s))

    @cached_property
    def extract_plan(self) -> tuple[tuple[int, int], ...]:
        """(shift, mask) per block in encode order x_w .. x_1."""
        plan = []
        shift = 0
        for length in self.s:
            plan.append((shift, (1 << length) - 1))
            shift += length
        plan.reverse()
        return tuple(plan)

    @cached_property
    def gaps_allone(self) -> tuple[int, ...]:
        """Gap vector of the maximal-gap codewords, anchor gap first."""
        head = self.n - 1 - sum(1 << v for v in self.s[:-1])
        return (head,) + self.allone_tail

    @cached_property
    def allone_tail(self) -> tuple[int, ...]:
        """Maximal non-anchor gaps: 2**s(i) - 1 for i = w-1 .. 1."""
        return tuple((1 << v) - 1 for v in reversed(self.s[:-1]))


def _check_ell(ell: int):
    if not isinstance(ell, int) or ell < 3:
        raise ParameterError(f"need integer ell >= 3, got {ell}")


def mu(ell: int) -> int:
    """2**ceil(log2 ell) - ell; zero exactly when ell is a power of two."""
    _check_ell(ell)
    return (1 << _ceil_log2(ell)) - ell


@lru_cache(maxsize=None)
def f_ell_t(ell: int, t: int) -> CharSeq:
    """Width-t sequence for weight-t codes in blocklength 2**ell.

    Requires log2(t) < ell - 1.  With t = ell this is the main sequence.
    """
    _check_ell(ell)
    if not isinstance(t, int) or t < 1:
        raise ParameterError(f"need integer t >= 1, got {t}")
    if t >= 1 << (ell - 1):
        raise ParameterError(f"need log2(t) < ell - 1, got t={t}, ell={ell}")
    if t == 1:
        s = (ell,)
    elif t & (t - 1) == 0:
        lg = _floor_log2(t)
        s = (ell - lg - 1,) + (ell - lg,) * (t - 2) + (ell,)
    else:
        lo, hi = _floor_log2(t), _ceil_log2(t)
        m = (1 << hi) - t
        s = (ell - hi,) * (t - m) + (ell - lo,) * (m - 1) + (ell,)
    label = f"f_{ell}" if t == ell else f"f_{ell}^({t})"
    return CharSeq(s, label=label)


def f_ell(ell: int) -> CharSeq:
    """The main length-ell sequence (non-decreasing, ends in ell)."""
    return f_ell_t(ell, ell)


def r_max(ell: int) -> int:
    _check_ell(ell)
    return (ell + 3) // 4


def delta(ell: int, r: int) -> int:
    """Offset added to the first entry of the two-parameter family.

    Equals 1 except in the boundary cases ell <= 2r + 2, which within the
    admitted range r <= r_max(ell) are exactly (r=1, ell in {3,4}) and
    (r=2, ell in {5,6}).
    """
    return 1 if ell > 2 * r + 2 else 0


@lru_cache(maxsize=None)
def f_ell_r(ell: int, r: int) -> CharSeq:
    """The two-parameter sequence; not anchor-decodable, but decoded by the
    candidate-stretch rule of the second decoder."""
    _check_ell(ell)
    if not isinstance(r, int) or not 1 <= r <= r_max(ell):
        raise ParameterError(f"need 1 <= r <= {r_max(ell)} for ell={ell}, got r={r}")
    d = delta(ell, r)
    s = []
    for i in range(1, ell + 1):
        if i == ell:
            v = ell
        elif i == 1:
            v = r + d
        elif i >= ell - 2 * r:
            v = ell - 1 - ((ell - i + 1) // 2)  # ceil((ell - i) / 2)
        else:
            v = r + i - 1
        s.append(v)
    return CharSeq(tuple(s), r=r, label=f"f_{ell},{r}")


def f_hat(ell: int) -> CharSeq:
    """The two-parameter sequence at r = r_max(ell), where its dimension peaks."""
    return f_ell_r(ell, r_max(ell))


def k_ell(ell: int) -> int:
    """Closed-form dimension of the main family (equals sum(f_ell(ell).s))."""
    _check_ell(ell)
    lo, hi = _floor_log2(ell), _ceil_log2(ell)
    if lo == hi:
        return ell * ell - ell * lo + lo - 1
    m = (1 << hi) - ell
    return ell * ell - (m * lo + (ell - m) * hi) + lo


def k_ell_r(ell: int, r: int) -> int:
    """Closed-form dimension of the two-parameter family."""
    _check_ell(ell)
    if not 1 <= r <= r_max(ell):
        raise ParameterError(f"need 1 <= r <= {r_max(ell)}, got r={r}")
    return ell * (ell - 1) // 2 + r * (ell - r - 1) + 1 + delta(ell, r)


def k_lower_bound(ell: int) -> float:
    """Closed-form lower bound on k_ell; exact when ell is a power of two."""
    _check_ell(ell)
    b = ell - (1 << _floor_log2(ell))
    lg = math.log2(ell)
    if b == 0:
        return ell * ell - ell * lg + lg - 1
    inv_ln2 = 1.0 / math.log(2)
    return ell * ell - ell * lg + lg - b * (2 - inv_ln2) - (b / ell) * inv_ln2


@dataclass(frozen=True)
class DecodabilityWitness:
    """Outcome of an anchor-decodability check.

    ``condition`` names the first violated requirement: 'shape' (not
    non-decreasing, or last entry != width), 'capacity' (the power-sum
    inequality), or 'shift' (the maximal-gap vector equals one of its own
    cyclic shifts, recorded in ``shift``).
    """

    ok: bool
    condition: str | None = None
    detail: str = ""
    shift: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def anchor_conditions(seq) -> DecodabilityWitness:
    """The two gap conditions relative to the sequence's own width.

    This is the translated form used by the reduced-width families: shape
    (width == last entry) is not required here.
    """
    seq = CharSeq.coerce(seq)
    s = seq.s
    w = len(s)
    if w == 1:
        return DecodabilityWitness(True)
    capacity = (1 << s[-1]) - sum(1 << v for v in s[:-1])
    if capacity < (1 << s[-2]):
        return DecodabilityWitness(
            False,
            "capacity",
            f"2^{s[-1]} - sum(2^s(i)) = {capacity} < 2^{s[-2]} = {1 << s[-2]}",
        )
    gamma = seq.gaps_allone
    for off in range(1, w):
        if cshift(gamma, off) == gamma:
            return DecodabilityWitness(
                False,
                "shift",
                f"maximal-gap vector is invariant under cyclic shift {off}",
                shift=off,
            )
    return DecodabilityWitness(True)


def is_anchor_decodable(seq) -> DecodabilityWitness:
    """Decide anchor-decodability of a sequence, with a witness on failure."""
    seq = CharSeq.coerce(seq)
    s = seq.s
    if any(s[i] > s[i + 1] for i in range(len(s) - 1)):
        return DecodabilityWitness(False, "shape", "sequence is not non-decreasing")
    if s[-1] != len(s):
        return DecodabilityWitness(
            False, "shape", f"last entry {s[-1]} != length {len(s)}"
        )
    return anchor_conditions(seq)
