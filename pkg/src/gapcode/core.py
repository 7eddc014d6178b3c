"""Bit-vector and modular-gap primitives shared by all code constructions.

Bit vectors are big-endian: index 0 is the most significant bit, so the
decimal value of ``x`` is ``sum(x[i] * 2**(len-1-i))``.  Codewords are kept
sparse, as a sorted tuple of one-positions, because every code in this
package has weight far below its blocklength; the dense 0/1 string is an
I/O format, not the working representation.

Everything here is an immutable value and every function is pure, so the
module is safe to use from any number of threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class CodeError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(CodeError, ValueError):
    """An argument is outside its legal range."""


class MalformedCodewordError(CodeError, ValueError):
    """Input has the wrong blocklength or weight for the selected code."""


class NotACodewordError(CodeError, ValueError):
    """Well-formed vector that is not in the image of the encoder."""


class WeightCollisionError(CodeError, ValueError):
    """Encoder tried to set the same position twice (invalid sequence)."""


@dataclass(frozen=True)
class BitString:
    """Immutable bit vector stored as (value, length), index 0 = MSB."""

    value: int
    length: int

    def __post_init__(self):
        if self.length < 0:
            raise ParameterError(f"negative length {self.length}")
        if not 0 <= self.value < (1 << self.length):
            raise ParameterError(
                f"value {self.value} does not fit in {self.length} bits"
            )

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitString":
        value = 0
        length = 0
        for b in bits:
            if b not in (0, 1):
                raise ParameterError(f"bit symbol {b!r} is not 0/1")
            value = (value << 1) | b
            length += 1
        return cls(value, length)

    @classmethod
    def from_text(cls, text: str) -> "BitString":
        stripped = text.strip()
        if stripped.strip("01"):
            raise ParameterError(f"bit string {text!r} has symbols outside 0/1")
        return cls(int(stripped, 2) if stripped else 0, len(stripped))

    @classmethod
    def zeros(cls, length: int) -> "BitString":
        return cls(0, length)

    @classmethod
    def all_ones(cls, length: int) -> "BitString":
        return cls((1 << length) - 1, length)

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.value >> (self.length - 1 - i)) & 1

    def __iter__(self) -> Iterator[int]:
        return (self[i] for i in range(self.length))

    def __str__(self) -> str:
        return self.text()

    def bits(self) -> tuple[int, ...]:
        return tuple(self)

    def text(self) -> str:
        if self.length == 0:
            return ""
        return format(self.value, f"0{self.length}b")

    def concat(self, other: "BitString") -> "BitString":
        return BitString(
            (self.value << other.length) | other.value, self.length + other.length
        )


def dec(x) -> int:
    """Decimal value of a big-endian bit vector; dec of the empty vector is 0.

    Accepts a :class:`BitString`, a 0/1 text string, or any iterable of bits.
    """
    if isinstance(x, BitString):
        return x.value
    if isinstance(x, str):
        return BitString.from_text(x).value
    return BitString.from_bits(x).value


def from_dec(v: int, length: int) -> BitString:
    """Binary representation of ``v`` in exactly ``length`` bits (MSB first)."""
    if v < 0:
        raise ParameterError(f"negative value {v}")
    if length < 1:
        raise ParameterError(f"length must be positive, got {length}")
    if v >> length:
        raise ParameterError(f"value {v} overflows {length} bits")
    return BitString(v, length)


def gap(a: int, b: int, n: int) -> int:
    """Number of zeros from position ``a`` to position ``b``, cyclically mod ``n``."""
    if n <= 0:
        raise ParameterError(f"blocklength must be positive, got {n}")
    if not (0 <= a < n and 0 <= b < n):
        raise ParameterError(f"positions ({a}, {b}) out of range for n={n}")
    return (b - a - 1) % n


def cshift(g: Sequence, offset: int) -> tuple:
    """Circular shift: ``cshift(g, k)[i] == g[(k + i) % len(g)]``."""
    seq = tuple(g)
    if not seq:
        return seq
    k = offset % len(seq)
    return seq[k:] + seq[:k]


@dataclass(frozen=True)
class Codeword:
    """A constant-weight word: blocklength ``n`` plus sorted one-positions."""

    n: int
    ones: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError(f"blocklength must be positive, got {self.n}")
        ones = self.ones
        if not isinstance(ones, tuple):
            object.__setattr__(self, "ones", tuple(ones))
            ones = self.ones
        prev = -1
        for p in ones:
            if p <= prev:
                raise ParameterError("one-positions must be strictly increasing")
            prev = p
        if ones and ones[-1] >= self.n:
            raise ParameterError(f"position {ones[-1]} out of range for n={self.n}")

    @property
    def weight(self) -> int:
        return len(self.ones)

    def bits_text(self) -> str:
        chars = ["0"] * self.n
        for p in self.ones:
            chars[p] = "1"
        return "".join(chars)

    @classmethod
    def from_bits_text(cls, text: str) -> "Codeword":
        stripped = text.strip()
        if stripped.strip("01"):
            raise ParameterError(f"codeword string has symbols outside 0/1")
        return cls(len(stripped), tuple(i for i, ch in enumerate(stripped) if ch == "1"))

    def ones_text(self) -> str:
        return f"n={self.n}:" + ",".join(str(p) for p in self.ones)

    @classmethod
    def from_ones_text(cls, text: str) -> "Codeword":
        head, sep, body = text.strip().partition(":")
        if not sep or not head.startswith("n="):
            raise ParameterError(f"expected 'n=<n>:i,j,...', got {text!r}")
        try:
            n = int(head[2:])
            ones = tuple(int(p) for p in body.split(",")) if body else ()
        except ValueError as exc:
            raise ParameterError(f"cannot parse codeword {text!r}") from exc
        return cls(n, ones)

    def rotated(self, offset: int) -> "Codeword":
        """Codeword with every one-position shifted by ``offset`` mod n."""
        moved = sorted((p + offset) % self.n for p in self.ones)
        return Codeword(self.n, tuple(moved))

    def __str__(self) -> str:
        return self.ones_text()


@dataclass(frozen=True)
class GapVector:
    """Cyclic gaps between successive ones; invariant sum(g) + len(g) == n."""

    g: tuple[int, ...]
    n: int

    def __post_init__(self):
        if not isinstance(self.g, tuple):
            object.__setattr__(self, "g", tuple(self.g))
        if any(x < 0 for x in self.g):
            raise ParameterError("gaps must be non-negative")
        if sum(self.g) + len(self.g) != self.n:
            raise ParameterError(
                f"gap sum {sum(self.g)} + weight {len(self.g)} != n={self.n}"
            )

    def __len__(self) -> int:
        return len(self.g)

    def __getitem__(self, i: int) -> int:
        return self.g[i]

    def __iter__(self) -> Iterator[int]:
        return iter(self.g)


def gaps_from_ones(ones: Sequence[int], n: int) -> list[int]:
    """Gap list for sorted positions; entry m is the gap from one m-1 to one m,
    entry 0 wraps around the end of the word."""
    out = [(ones[0] - ones[-1] - 1) % n]
    for i in range(1, len(ones)):
        out.append(ones[i] - ones[i - 1] - 1)
    return out


def extract_gaps(c: Codeword) -> GapVector:
    """Cyclic gap vector of a codeword (weight must be at least 1)."""
    if c.weight == 0:
        raise MalformedCodewordError("zero-weight word has no gaps")
    return GapVector(tuple(gaps_from_ones(c.ones, c.n)), c.n)
