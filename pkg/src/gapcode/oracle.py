"""Independent ground truth and verification drivers.

The ranking pair here is the classic lexicographic combinadics method,
binomial coefficients and all.  That cost is the point: it shares no logic
with the gap codecs beyond the core value types, so it can arbitrate.

``verify_exhaustive`` sweeps every message of a code; ``verify_sampled``
draws a seeded deterministic sample and always prepends the boundary
family (all-zero, all-ones, and the full maximal-gap sweep, which is what
exercises the pattern-match branch of the anchor finders).
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field

from .core import CodeError, Codeword, MalformedCodewordError, ParameterError
from .derived import Code, CodeParams, make_code

DEFAULT_BUDGET = 1 << 25
MAX_RECORDED_FAILURES = 32


def unrank_lex(rank: int, n: int, w: int) -> Codeword:
    """The rank-th w-subset of {0..n-1} in lexicographic order."""
    if n < 0 or w < 0:
        raise ParameterError(f"need non-negative n, w; got ({n}, {w})")
    total = math.comb(n, w)
    if not 0 <= rank < total:
        raise ParameterError(f"rank {rank} out of range [0, {total})")
    ones = []
    remaining = w
    for pos in range(n):
        if remaining == 0:
            break
        below = math.comb(n - pos - 1, remaining - 1)
        if rank < below:
            ones.append(pos)
            remaining -= 1
        else:
            rank -= below
    return Codeword(n, tuple(ones))


def rank_lex(c: Codeword, w: int | None = None) -> int:
    """Number of w-subsets lexicographically below the support of ``c``."""
    ones = c.ones
    if w is not None and w != len(ones):
        raise MalformedCodewordError(f"weight {len(ones)} != {w}")
    w = len(ones)
    rank = 0
    prev = -1
    for i, a in enumerate(ones):
        for v in range(prev + 1, a):
            rank += math.comb(c.n - 1 - v, w - 1 - i)
        prev = a
    return rank


@dataclass(frozen=True)
class Failure:
    message_value: int
    kind: str  # 'roundtrip' | 'weight' | 'decode-error'
    detail: str


@dataclass(frozen=True)
class VerifyReport:
    params: CodeParams
    mode: str  # 'exhaustive' | 'sampled'
    messages_checked: int
    failure_count: int
    failures: tuple[Failure, ...]
    weight_ok: bool
    codebook_distinct: bool | None  # None when not tracked (sampled mode)
    samples: int | None = None
    seed: int | None = None
    elapsed: float = field(default=0.0, compare=False)

    @property
    def ok(self) -> bool:
        return (
            self.failure_count == 0
            and self.weight_ok
            and self.codebook_distinct is not False
        )

    def render_text(self) -> str:
        lines = [
            f"code: {self.params.describe()}",
            f"mode: {self.mode}"
            + (
                f" samples={self.samples} seed={self.seed}"
                if self.mode == "sampled"
                else ""
            ),
            f"messages checked: {self.messages_checked}",
            f"failures: {self.failure_count}",
            f"weight ok: {self.weight_ok}",
            f"codebook distinct: "
            + ("not tracked" if self.codebook_distinct is None else str(self.codebook_distinct)),
            f"elapsed: {self.elapsed:.3f}s",
        ]
        for f in self.failures:
            lines.append(f"  FAIL value={f.message_value} [{f.kind}] {f.detail}")
        lines.append("PASS" if self.ok else "FAIL")
        return "\n".join(lines)

    def summary(self) -> dict:
        return {
            "construction": self.params.construction,
            "ell": self.params.ell,
            "t": self.params.t,
            "r": self.params.r,
            "n": self.params.n,
            "k": self.params.k,
            "w": self.params.w,
            "mode": self.mode,
            "messages_checked": self.messages_checked,
            "failure_count": self.failure_count,
            "weight_ok": self.weight_ok,
            "codebook_distinct": self.codebook_distinct,
            "samples": self.samples,
            "seed": self.seed,
            "ok": self.ok,
        }


def _as_code(code) -> Code:
    if isinstance(code, Code):
        return code
    if isinstance(code, CodeParams):
        return make_code(code.construction, code.ell, t=code.t, r=code.r)
    raise ParameterError(f"expected Code or CodeParams, got {type(code).__name__}")


def _pack(ones, shift: int) -> int:
    acc = 0
    for p in ones:
        acc = (acc << shift) | p
    return acc


def _check_one(code: Code, value: int, w: int, strict: bool, failures, counts):
    """Run one message through encode/decode; record failures; return ones."""
    ones = code.encode_value(value)
    if len(ones) != w:
        counts["weight"] += 1
        if len(failures) < MAX_RECORDED_FAILURES:
            failures.append(
                Failure(value, "weight", f"weight {len(ones)} != {w}")
            )
    try:
        back = code.decode_ones(ones, strict=strict)
    except CodeError as exc:
        counts["fail"] += 1
        if len(failures) < MAX_RECORDED_FAILURES:
            failures.append(Failure(value, "decode-error", str(exc)))
        return ones
    if back != value:
        counts["fail"] += 1
        if len(failures) < MAX_RECORDED_FAILURES:
            failures.append(
                Failure(value, "roundtrip", f"decoded {back} != encoded {value}")
            )
    return ones


def verify_exhaustive(
    code, strict: bool = True, budget: int = DEFAULT_BUDGET
) -> VerifyReport:
    """Round-trip, weight, and injectivity checks over every message."""
    code = _as_code(code)
    params = code.params
    total = 1 << params.k
    if total > budget:
        raise ParameterError(
            f"2^{params.k} messages exceed the exhaustive budget {budget}; "
            "use verify_sampled instead"
        )
    start = time.perf_counter()
    shift = params.n.bit_length()
    seen = set()
    failures: list[Failure] = []
    counts = {"fail": 0, "weight": 0}
    w = params.w
    for value in range(total):
        ones = _check_one(code, value, w, strict, failures, counts)
        seen.add(_pack(ones, shift))
    return VerifyReport(
        params=params,
        mode="exhaustive",
        messages_checked=total,
        failure_count=counts["fail"] + counts["weight"],
        failures=tuple(failures),
        weight_ok=counts["weight"] == 0,
        codebook_distinct=len(seen) == total,
        elapsed=time.perf_counter() - start,
    )


def boundary_messages(code) -> list[int]:
    """The all-zero message plus the full maximal-gap family (every anchor
    value with all other blocks all-ones; the all-ones message is its last
    member)."""
    code = _as_code(code)
    k = code.params.k
    tail_len = k - code.anchor_len
    tail = (1 << tail_len) - 1
    out = [0]
    out.extend((v << tail_len) | tail for v in range(1 << code.anchor_len))
    return out


def verify_sampled(
    code, samples: int, seed: int, strict: bool = True
) -> VerifyReport:
    """Seeded deterministic sampling: boundary family first, then uniform
    draws.  Identical (seed, samples) give an identical report."""
    code = _as_code(code)
    params = code.params
    start = time.perf_counter()
    failures: list[Failure] = []
    counts = {"fail": 0, "weight": 0}
    w = params.w
    checked = 0
    for value in boundary_messages(code):
        _check_one(code, value, w, strict, failures, counts)
        checked += 1
    rng = random.Random(seed)
    k = params.k
    for _ in range(samples):
        _check_one(code, rng.getrandbits(k), w, strict, failures, counts)
        checked += 1
    return VerifyReport(
        params=params,
        mode="sampled",
        messages_checked=checked,
        failure_count=counts["fail"] + counts["weight"],
        failures=tuple(failures),
        weight_ok=counts["weight"] == 0,
        codebook_distinct=None,
        samples=samples,
        seed=seed,
        elapsed=time.perf_counter() - start,
    )


def codebook(code, limit: int = 1 << 22) -> frozenset:
    """Every codeword support of a code, as a frozenset of ones-tuples."""
    code = _as_code(code)
    total = 1 << code.params.k
    if total > limit:
        raise ParameterError(f"codebook of 2^{code.params.k} words exceeds limit")
    return frozenset(code.encode_value(v) for v in range(total))


@dataclass(frozen=True)
class CensusReport:
    """How much of the weight-w layer the encoder image covers."""

    params: CodeParams
    total_words: int
    in_image: int
    expected: int

    @property
    def matches_dimension(self) -> bool:
        return self.in_image == self.expected

    def render_text(self) -> str:
        return (
            f"{self.params.describe()}: {self.in_image} of {self.total_words} "
            f"weight-{self.params.w} words decode and re-encode to themselves "
            f"(expected 2^{self.params.k} = {self.expected})"
        )


def coverage_census(
    ell: int, construction: str = "c", max_words: int = 1 << 20
) -> CensusReport:
    """Walk every weight-w word via unranking; count encoder-image members
    (strict decode succeeds and re-encoding reproduces the word)."""
    code = make_code(construction, ell)
    n, w = code.params.n, code.params.w
    total = math.comb(n, w)
    if total > max_words:
        raise ParameterError(
            f"C({n},{w}) = {total} words exceed the census cap {max_words}"
        )
    in_image = 0
    for rank in range(total):
        cw = unrank_lex(rank, n, w)
        try:
            value = code.decode_ones(cw.ones, strict=True)
        except CodeError:
            continue
        if code.encode_value(value) == cw.ones:
            in_image += 1
    return CensusReport(code.params, total, in_image, 1 << code.params.k)
