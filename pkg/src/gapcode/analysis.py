"""Exact dimension bounds, necklace counts, and the optimality search.

All integer quantities are computed exactly: binomials through
``math.comb`` and floor-log2 through bit length, never through floating
point.  The only floats here are the two analytic bounds, which are upper
estimates by construction.

Necklace counting has two independent routes.  The production path is the
gcd-divisor Moebius formula; the validator follows the divisor-sum
formulation in which each term is a coefficient of the cycle-index
polynomial (non-integer exponents contribute zero).  The test suite pits
both against brute-force rotation-class enumeration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement

from .core import ParameterError
from .sequences import (
    CharSeq,
    f_ell,
    f_hat,
    is_anchor_decodable,
    k_ell,
)

LN2 = math.log(2.0)


def binom(n: int, w: int) -> int:
    """Exact binomial coefficient; zero when w > n."""
    if n < 0 or w < 0:
        raise ParameterError(f"need non-negative arguments, got ({n}, {w})")
    return math.comb(n, w)


def floor_log2_binom(n: int, w: int) -> int:
    """Exact floor(log2 C(n, w)), via the bit length of the exact binomial."""
    b = binom(n, w)
    if b < 1:
        raise ParameterError(f"C({n},{w}) = 0 has no logarithm")
    return b.bit_length() - 1


def stirling_upper_bound(ell: int) -> float:
    """Analytic upper bound on floor(log2 C(2**ell, ell)).

    Full expansion of log2((2**ell * e / ell)**ell / sqrt(2*pi*ell)); the
    constant term is ln(2*pi)/(2*ln 2), which keeps this a true upper bound
    (the halved-sqrt term is easy to drop and then the "bound" dips below
    the exact floor already at ell = 5)."""
    if ell < 3:
        raise ParameterError(f"need ell >= 3, got {ell}")
    return (
        ell * ell
        - ell * math.log2(ell)
        + ell / LN2
        - 0.5 * math.log2(ell)
        - math.log(2 * math.pi) / (2 * LN2)
    )


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    out.sort()
    return out


def _mobius(n: int) -> int:
    if n == 1:
        return 1
    result = 1
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def _totient(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def primitive_necklaces(n: int, w: int) -> int:
    """Count of primitive binary necklaces of length n and weight w.

    A necklace is an equivalence class under rotation; primitive means the
    class has full size n.  Computed by Moebius inversion over the divisors
    of gcd(n, w)."""
    if n < 1 or not 0 <= w <= n:
        raise ParameterError(f"need n >= 1 and 0 <= w <= n, got ({n}, {w})")
    g = math.gcd(n, w) if w else n
    total = sum(_mobius(d) * math.comb(n // d, w // d) for d in _divisors(g))
    assert total % n == 0
    return total // n


def necklace_count(n: int, w: int) -> int:
    """All binary necklaces (primitive or not) of length n and weight w;
    equals the x^w y^(n-w) coefficient of the cycle-index polynomial."""
    if n < 1 or not 0 <= w <= n:
        raise ParameterError(f"need n >= 1 and 0 <= w <= n, got ({n}, {w})")
    total = 0
    for e in _divisors(n):
        if w % e == 0:
            total += _totient(e) * math.comb(n // e, w // e)
    assert total % n == 0
    return total // n


def primitive_necklaces_by_inversion(n: int, w: int) -> int:
    """Validator route: Moebius inversion of the plain necklace counts over
    the divisors of n, skipping terms whose weight w*d/n is not integral."""
    total = 0
    for d in _divisors(n):
        wd = w * d
        if wd % n:
            continue
        total += _mobius(n // d) * necklace_count(d, wd // n)
    return total


def necklace_bound(ell: int) -> int:
    """Dimension bound from the cyclic-orbit structure:
    ell + floor(log2 p(2**ell, ell))."""
    if ell < 3:
        raise ParameterError(f"need ell >= 3, got {ell}")
    p = primitive_necklaces(1 << ell, ell)
    return ell + (p.bit_length() - 1)


@dataclass(frozen=True)
class DeltaReport:
    """Exact gap to the information-theoretic bound, with the linear cap."""

    ell: int
    delta: int
    linear_bound: float
    holds: bool


def delta_ell(ell: int) -> DeltaReport:
    """Delta(ell) = floor(log2 C(2**ell, ell)) - k_ell, plus the check that
    it stays below the linear-in-ell analytic cap."""
    d = floor_log2_binom(1 << ell, ell) - k_ell(ell)
    cap = (
        (1 + 1 / (2 * LN2)) * ell
        - 1.5 * math.log2(ell)
        - math.log(2 * math.pi / math.e) / (2 * LN2)
    )
    return DeltaReport(ell, d, cap, d <= cap)


@dataclass(frozen=True)
class BoundsReport:
    """One row of the dimension-vs-bounds table."""

    ell: int
    k_ell: int
    k_hat_ell: int
    floor_log2_binom: int
    stirling_ub: float
    necklace_ub: int
    delta_ell: int


def bounds_report(ell: int) -> BoundsReport:
    return BoundsReport(
        ell=ell,
        k_ell=k_ell(ell),
        k_hat_ell=f_hat(ell).k,
        floor_log2_binom=floor_log2_binom(1 << ell, ell),
        stirling_ub=stirling_upper_bound(ell),
        necklace_ub=necklace_bound(ell),
        delta_ell=delta_ell(ell).delta,
    )


def bounds_table(max_ell: int, min_ell: int = 3) -> list[BoundsReport]:
    if not 3 <= min_ell <= max_ell:
        raise ParameterError(f"need 3 <= min_ell <= max_ell, got [{min_ell}, {max_ell}]")
    return [bounds_report(ell) for ell in range(min_ell, max_ell + 1)]


@dataclass(frozen=True)
class SearchResult:
    """Outcome of the exhaustive search over anchor-decodable sequences."""

    ell: int
    max_k: int
    maximizers: tuple[CharSeq, ...]
    f_ell_is_max: bool
    candidates_checked: int
    anchor_decodable_count: int


def optimality_search(ell: int) -> SearchResult:
    """Enumerate all anchor-decodable sequences of length ell and return the
    dimension maximizers.

    Candidates are the non-decreasing sequences ending in ell; the
    power-sum (capacity) inequality prunes a candidate before the trailing
    cyclic-shift check runs.  Desk scale only."""
    if not 3 <= ell <= 8:
        raise ParameterError(f"search supported for 3 <= ell <= 8, got {ell}")
    limit = 1 << ell
    best_k = -1
    best: list[CharSeq] = []
    checked = 0
    decodable = 0
    reference = f_ell(ell).s
    f_is_max = False
    for head in combinations_with_replacement(range(1, ell + 1), ell - 1):
        checked += 1
        # capacity prune: sum 2^s(i) + 2^s(ell-1) must fit inside 2^ell
        if sum(1 << v for v in head) + (1 << head[-1]) > limit:
            continue
        seq = CharSeq(head + (ell,))
        if not is_anchor_decodable(seq):
            continue
        decodable += 1
        k = seq.k
        if k > best_k:
            best_k = k
            best = [seq]
        elif k == best_k:
            best.append(seq)
    for seq in best:
        if seq.s == reference:
            f_is_max = True
    return SearchResult(ell, best_k, tuple(best), f_is_max, checked, decodable)
