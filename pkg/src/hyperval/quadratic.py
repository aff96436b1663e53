"""Quadratic-parameter machinery and the equidistribution harness.

The irreducible quadratic factors of f·g carry square-free discriminant
parts Δ; their splitting behavior mod p is read off Legendre symbols.
This module profiles those discriminants, decides existence of
"condition primes" (p with (Δ/p) = 1 for one chosen Δ and −1 for the
rest) by GF(2) linear algebra over the character coordinates, searches
for the smallest such prime directly, and samples rep(r ± s√Δ)/p over
primes in progressions to measure equidistribution empirically.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Union

from .errors import EmptySampleSet, UnsupportedFactorization
from .hyperseq import HypergeomSeq
from .numtheory import (
    Rational,
    factorize,
    legendre,
    mod_rep,
    sieve_primes,
    sqrt_mod,
    squarefree_part,
)
from .polyq import discriminant_quadratic, factor

_EXHAUSTIVE_LIMIT = 20  # coordinates; 2^20 brute force is still instant


@dataclass(frozen=True)
class DiscriminantProfile:
    """Square-free discriminant parts of the quadratic factors of f·g.

    vectors[Δ] is the exponent vector of |Δ| over prime_support; the
    sign of a negative Δ is carried by the Δ itself (and surfaced via
    ``negatives``), not by the vector.
    """

    discs: frozenset[int]
    prime_support: tuple[int, ...]
    vectors: dict[int, tuple[int, ...]]

    @property
    def negatives(self) -> tuple[int, ...]:
        return tuple(sorted(d for d in self.discs if d < 0))

    @property
    def has_negative(self) -> bool:
        return any(d < 0 for d in self.discs)

    def summary(self) -> str:
        discs = ",".join(str(d) for d in sorted(self.discs))
        support = ",".join(str(p) for p in self.prime_support)
        note = ""
        if self.has_negative:
            negs = ",".join(str(d) for d in self.negatives)
            note = f" negative-discriminants={negs}"
        return f"discriminants={{{discs}}} prime-support=[{support}]{note}"


def discriminant_profile(seq: HypergeomSeq) -> DiscriminantProfile:
    """Collect Δ = squarefree part of disc over irreducible quadratics."""
    discs: set[int] = set()
    for poly in (seq.f, seq.g):
        fac = factor(poly)
        for pf in fac.factors:
            if not pf.certified or pf.poly.degree > 2:
                raise UnsupportedFactorization(
                    f"cannot certify the factor {pf.poly} "
                    "(degree above 2 or incomplete split)"
                )
            if pf.poly.degree == 2:
                discs.add(squarefree_part(discriminant_quadratic(pf.poly)))
    support: set[int] = set()
    for d in discs:
        support.update(factorize(abs(d)) if abs(d) > 1 else ())
    prime_support = tuple(sorted(support))
    vectors = {
        d: tuple(1 if abs(d) % p == 0 else 0 for p in prime_support)
        for d in discs
    }
    return DiscriminantProfile(frozenset(discs), prime_support, vectors)


# -- condition primes ---------------------------------------------------


def _solver_vectors(profile: DiscriminantProfile) -> dict[int, tuple[int, ...]]:
    """Character coordinates for each Δ: optional sign bit + prime bits.

    The Legendre symbol of a square-free Δ factors into independent
    characters (−1/p), (2/p), (q/p): a sign pattern on those coordinates
    is realizable by infinitely many primes, so solvability over these
    vectors is exactly existence of a condition prime.  The sign
    coordinate is prepended only when some Δ is negative.
    """
    if profile.has_negative:
        return {
            d: ((1 if d < 0 else 0),) + profile.vectors[d]
            for d in profile.discs
        }
    return dict(profile.vectors)


def exists_condition_prime(
    profile: DiscriminantProfile, delta: int
) -> Optional[tuple[int, ...]]:
    """An ε with δ^(delta)·ε ≡ 0 and δ^(Δ′)·ε ≡ 1 (mod 2) for the rest.

    Coordinates follow _solver_vectors (a leading sign coordinate
    appears iff the profile has negative discriminants).  Small systems
    are enumerated lexicographically — the returned ε is the lex-least
    solution — larger ones fall back to GF(2) elimination.  None means
    the system is unsolvable, i.e. no condition prime exists at all.
    """
    if delta not in profile.discs:
        raise ValueError(f"delta = {delta} is not one of the discriminants")
    vectors = _solver_vectors(profile)
    r = len(next(iter(vectors.values()))) if vectors else 0
    targets = [(vec, 0 if d == delta else 1) for d, vec in vectors.items()]
    if r <= _EXHAUSTIVE_LIMIT:
        for eps in itertools.product((0, 1), repeat=r):
            if all(
                sum(v * e for v, e in zip(vec, eps)) % 2 == want
                for vec, want in targets
            ):
                return eps
        return None
    return _gf2_solve(targets, r)


def _gf2_solve(
    targets: Sequence[tuple[tuple[int, ...], int]], r: int
) -> Optional[tuple[int, ...]]:
    """Particular solution of the affine GF(2) system, rows as bitmasks."""
    rows = []
    for vec, want in targets:
        mask = 0
        for j, v in enumerate(vec):
            if v:
                mask |= 1 << j
        rows.append((mask, want))
    pivots: list[tuple[int, int, int]] = []  # (pivot bit, mask, rhs)
    for mask, rhs in rows:
        for pbit, pmask, prhs in pivots:
            if mask >> pbit & 1:
                mask ^= pmask
                rhs ^= prhs
        if mask == 0:
            if rhs:
                return None
            continue
        pivots.append((mask.bit_length() - 1, mask, rhs))
    eps = 0
    # each mask's non-pivot bits sit below its pivot (the top bit), so
    # ascending pivot order sees only finalized coordinates
    for pbit, mask, rhs in sorted(pivots):
        if bin(eps & (mask ^ (1 << pbit))).count("1") & 1 != rhs:
            eps |= 1 << pbit
    return tuple(eps >> j & 1 for j in range(r))


@dataclass(frozen=True)
class ConditionPrimeSearch:
    prime: Optional[int]
    diagnostic: str
    tested: int  # candidate primes examined

    def __bool__(self) -> bool:
        return self.prime is not None


def find_condition_prime(
    profile: DiscriminantProfile, delta: int, p_max: int = 100_000
) -> ConditionPrimeSearch:
    """Smallest odd prime coprime to every Δ with the split/inert pattern.

    Requires legendre(delta, p) = 1 and legendre(Δ′, p) = −1 for every
    other discriminant.  When the ε-system is unsolvable no such prime
    exists at any cap, and the scan is skipped with a diagnostic;
    an exhausted scan of a solvable system is reported as such, never
    as nonexistence.
    """
    if delta not in profile.discs:
        raise ValueError(f"delta = {delta} is not one of the discriminants")
    if exists_condition_prime(profile, delta) is None:
        return ConditionPrimeSearch(
            None, "the character system is unsolvable: no such prime exists", 0
        )
    others = sorted(profile.discs - {delta})
    tested = 0
    for p in sieve_primes(p_max):
        if p == 2 or any(abs(d) % p == 0 for d in profile.discs):
            continue
        tested += 1
        if legendre(delta, p) != 1:
            continue
        if all(legendre(d, p) == -1 for d in others):
            return ConditionPrimeSearch(p, "found by direct scan", tested)
    return ConditionPrimeSearch(
        None,
        f"solvable system but no prime found up to {p_max}; raise the cap",
        tested,
    )


# -- rep(r ± s√Δ) -------------------------------------------------------


def rep_quadratic(r: Rational, s: Rational, delta: int, p: int,
                  sign: int = 1) -> int:
    """rep(r + sign·s·D) in [0, p) with D = √delta mod p, D < p/2."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    d_root = sqrt_mod(delta % p, p)
    return (mod_rep(r, p) + sign * mod_rep(s, p) * d_root) % p


# -- equidistribution harness ------------------------------------------


@dataclass(frozen=True)
class EquidistributionReport:
    delta: int
    progression: tuple[int, int]  # (a, q)
    p_limit: int
    samples: int
    skipped_undefined: int  # qualifying primes hitting a denominator
    bins: tuple[tuple[Fraction, Fraction, float], ...]  # (left, right, freq)
    star_discrepancy: float

    def csv_rows(self) -> Iterator[str]:
        for left, right, freq in self.bins:
            yield f"{float(left):.6f},{float(right):.6f},{freq:.8f}"

    def summary(self) -> str:
        return (
            f"delta={self.delta} progression={self.progression[0]}"
            f"(mod {self.progression[1]}) p_limit={self.p_limit} "
            f"samples={self.samples} skipped={self.skipped_undefined} "
            f"star_discrepancy={self.star_discrepancy:.6f}"
        )


def _require_sampling_delta(delta: int) -> None:
    if delta < 2 or squarefree_part(delta) != delta:
        raise ValueError(
            "sampling needs a square-free delta >= 2 "
            f"(got {delta}); negative or square parts are out of scope"
        )


def _collect_samples(
    primes: Sequence[int], delta: int, r: Rational, s: Rational
) -> tuple[list[tuple[int, int]], int]:
    """(rep, p) pairs for both signs over qualifying primes + skip count."""
    out: list[tuple[int, int]] = []
    skipped = 0
    r_den = Fraction(r).denominator
    s_den = Fraction(s).denominator
    for p in primes:
        if p == 2 or legendre(delta, p) != 1:
            continue
        if r_den % p == 0 or s_den % p == 0:
            skipped += 1
            continue
        d_root = sqrt_mod(delta % p, p)
        base = mod_rep(r, p)
        offs = mod_rep(s, p) * d_root
        out.append(((base + offs) % p, p))
        out.append(((base - offs) % p, p))
    return out, skipped


def star_discrepancy(points: Sequence[Fraction]) -> Fraction:
    """Exact D* of points in [0,1): sup over [0,t) boxes, via sorting."""
    xs = sorted(points)
    n = len(xs)
    if n == 0:
        raise ValueError("no points")
    best = Fraction(0)
    for i, xv in enumerate(xs, start=1):
        best = max(best, Fraction(i, n) - xv, xv - Fraction(i - 1, n))
    return best


def equidistribution_sample(
    delta: int,
    q: int = 1,
    a: int = 0,
    r: Union[Rational, int] = 0,
    s: Union[Rational, int] = 1,
    p_limit: int = 100_000,
    bin_count: int = 10,
    threads: int = 1,
) -> EquidistributionReport:
    """Histogram of rep(r ± s√delta)/p over primes p ≡ a (mod q).

    Pools both signs; primes where a denominator of r or s collides are
    counted as skipped.  The star discrepancy is computed exactly on the
    pooled sample.
    """
    _require_sampling_delta(delta)
    if Fraction(s) == 0:
        raise ValueError("s must be nonzero")
    if bin_count < 2:
        raise ValueError("bin_count must be >= 2")
    if q < 1:
        raise ValueError("q must be >= 1")
    primes = [p for p in sieve_primes(p_limit) if p % q == a % q]
    if threads > 1 and len(primes) >= 64:
        chunk = (len(primes) + threads - 1) // threads
        parts = [primes[i:i + chunk] for i in range(0, len(primes), chunk)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(
                pool.map(lambda part: _collect_samples(part, delta, r, s),
                         parts)
            )
        samples = [pair for part, _ in results for pair in part]
        skipped = sum(sk for _, sk in results)
    else:
        samples, skipped = _collect_samples(primes, delta, r, s)
    if not samples:
        raise EmptySampleSet(
            f"no primes <= {p_limit} with p = {a} (mod {q}) split delta = {delta}"
        )
    k = len(samples)
    counts = [0] * bin_count
    for rep, p in samples:
        counts[rep * bin_count // p] += 1
    bins = tuple(
        (Fraction(i, bin_count), Fraction(i + 1, bin_count), counts[i] / k)
        for i in range(bin_count)
    )
    disc = star_discrepancy([Fraction(rep, p) for rep, p in samples])
    return EquidistributionReport(
        delta=delta,
        progression=(a % q, q),
        p_limit=p_limit,
        samples=k,
        skipped_undefined=skipped,
        bins=bins,
        star_discrepancy=float(disc),
    )


def window_count(
    delta: int,
    q: int,
    a: int,
    r: Union[Rational, int],
    s: Union[Rational, int],
    N: int,
    window_delta: float,
    alpha: Union[Rational, float],
    beta: Union[Rational, float],
) -> int:
    """#{primes p in [N, (1+δ)N): p ≡ a (mod q), some sign has rep/p ∈ [α,β)}."""
    _require_sampling_delta(delta)
    al, be = Fraction(alpha), Fraction(beta)
    if not (0 <= al < be <= 1):
        raise ValueError("need 0 <= alpha < beta <= 1")
    if window_delta <= 0:
        raise ValueError("window_delta must be positive")
    if q < 1:
        raise ValueError("q must be >= 1")
    hi = int(N * (1 + window_delta))
    primes = [p for p in sieve_primes(hi)
              if N <= p < hi and p % q == a % q]
    samples, _ = _collect_samples(primes, delta, r, s)
    hits = {p for rep, p in samples if al <= Fraction(rep, p) < be}
    return len(hits)


# -- class C ------------------------------------------------------------


def class_c_check(seq: HypergeomSeq) -> bool:
    """Do all irrational parameters fit in Q(√Δ₁) ∪ Q(√Δ₂) ∪ Q(√Δ₁Δ₂)?

    True iff some factor is an irreducible quadratic and the square-free
    discriminant parts number at most three — with exactly three only
    when one is the square-free part of the product of the other two.
    Negative parts participate like any others (the profile flags them).
    """
    profile = discriminant_profile(seq)
    discs = sorted(profile.discs)
    if not discs:
        return False  # every parameter is rational
    if len(discs) > 3:
        return False
    if len(discs) == 3:
        return any(
            discs[k] == squarefree_part(discs[i] * discs[j])
            for i, j, k in ((0, 1, 2), (0, 2, 1), (1, 2, 0))
        )
    return True
