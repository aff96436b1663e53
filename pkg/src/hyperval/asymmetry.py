"""Root-count asymmetry at a prime and the certified valuation envelope.

If f and g have different numbers of roots mod p (counted with
multiplicity, at a prime where mod-p root structure is trustworthy),
the p-adic valuation of uₙ drifts linearly: each root contributes
n/(p−1) + O(log n) to the valuation sum on its side.  This module finds
such primes, packages them as certificates, and turns a certificate
into an explicit lower bound L(n) ≤ |ν_p(uₙ)| whose constants are
spelled out rather than hidden in an O(·).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .errors import NotHenselPrime, UnsupportedFactorization, UnsupportedInput
from .hyperseq import HypergeomSeq, TermCursor
from .numtheory import (
    INFINITY,
    Rational,
    padic_valuation,
    sieve_primes,
    squarefree_part,
)
from .padic import count_roots_mod_p
from .polyq import discriminant_quadratic, factor


def root_counts(seq: HypergeomSeq, p: int) -> tuple[int, int]:
    """(m_f, m_g): roots of f and g mod p, counted with multiplicity."""
    from .hyperseq import usable_prime

    if not usable_prime(seq, p):
        raise NotHenselPrime(
            f"p = {p} cannot be trusted for this recurrence "
            "(bad reduction or colliding roots)"
        )
    return (count_roots_mod_p(seq.f, p), count_roots_mod_p(seq.g, p))


def is_p_symmetric(seq: HypergeomSeq, p: int) -> bool:
    """Do f and g have equally many roots mod p?"""
    m_f, m_g = root_counts(seq, p)
    return m_f == m_g


@dataclass(frozen=True)
class AsymmetryCertificate:
    """A prime witnessing linear divergence of ν_p(uₙ).

    slope = (m_g − m_f)/(p−1) is signed (g drives valuations up); A is
    its magnitude and B bounds the integer-cleared polynomial values,
    max(|F(m)|, |G(m)|) ≤ B·n^d for 1 ≤ m ≤ n.  The producing scan only
    emits certificates at primes coprime to u₀ (and to any requested
    extra rationals), so u0_valuation is normally 0; the envelope still
    subtracts |u0_valuation| so a hand-built certificate stays sound.
    """

    p: int
    m_f: int
    m_g: int
    slope: Fraction
    A: Fraction
    B: int
    u0_valuation: int

    def to_record(self) -> str:
        return (
            f"asymmetry-certificate: p={self.p} m_f={self.m_f} "
            f"m_g={self.m_g} slope={self.slope} A={self.A} B={self.B} "
            f"u0_valuation={self.u0_valuation}"
        )


@dataclass(frozen=True)
class ScanResult:
    """Outcome of a prime scan: a certificate, or why every prime failed."""

    certificate: Optional[AsymmetryCertificate]
    p_min: int
    p_max: int
    tested: int  # usable primes examined
    symmetric: int  # usable but equal root counts
    unusable: int  # failed the reduction/collision gate
    excluded: int  # divided u₀ or a caller-supplied rational

    def __bool__(self) -> bool:
        return self.certificate is not None

    def summary(self) -> str:
        if self.certificate is not None:
            return self.certificate.to_record()
        return (
            f"scan-summary: range=[{self.p_min},{self.p_max}] "
            f"tested={self.tested} symmetric={self.symmetric} "
            f"unusable={self.unusable} excluded={self.excluded} "
            "result=empty"
        )


def _poly_value_bound(seq: HypergeomSeq) -> int:
    """B with max(|F(m)|, |G(m)|) ≤ B·n^d for 1 ≤ m ≤ n (integer forms)."""
    F, _, G, _ = seq.integer_forms()
    return max(sum(abs(c) for c in F), sum(abs(c) for c in G), 1)


def _divides(p: int, value: Rational) -> bool:
    return value.numerator % p == 0 or value.denominator % p == 0


def make_certificate(seq: HypergeomSeq, p: int,
                     coprime_with: Sequence[Rational] = ()) -> AsymmetryCertificate:
    """Build the certificate at a specific prime, or fail loudly.

    Raises NotHenselPrime if the prime cannot be trusted, ValueError if
    the root counts are equal or the prime divides u₀ (or one of the
    extra rationals to stay coprime with).
    """
    if seq.u0 != 0 and _divides(p, seq.u0):
        raise ValueError(f"p = {p} divides u0 = {seq.u0}")
    for value in coprime_with:
        if value != 0 and _divides(p, value):
            raise ValueError(f"p = {p} divides required-coprime value {value}")
    m_f, m_g = root_counts(seq, p)
    if m_f == m_g:
        raise ValueError(f"sequence is symmetric at p = {p} ({m_f} roots each)")
    v0 = 0 if seq.u0 == 0 else int(padic_valuation(seq.u0, p))
    return AsymmetryCertificate(
        p=p,
        m_f=m_f,
        m_g=m_g,
        slope=Fraction(m_g - m_f, p - 1),
        A=Fraction(abs(m_g - m_f), p - 1),
        B=_poly_value_bound(seq),
        u0_valuation=v0,
    )


def iter_asymmetric_certificates(
    seq: HypergeomSeq,
    p_min: int,
    p_max: int,
    coprime_with: Sequence[Rational] = (),
) -> Iterator[AsymmetryCertificate]:
    """All certificates in the range, in increasing prime order."""
    for p in sieve_primes(p_max):
        if p < p_min:
            continue
        try:
            yield make_certificate(seq, p, coprime_with)
        except (NotHenselPrime, ValueError):
            continue


def find_asymmetric_prime(
    seq: HypergeomSeq,
    p_min: int = 2,
    p_max: int = 10_000,
    coprime_with: Sequence[Rational] = (),
) -> ScanResult:
    """Smallest trustworthy prime with unequal root counts, with stats."""
    if p_min < 2:
        raise ValueError("p_min must be >= 2")
    tested = symmetric = unusable = excluded = 0
    for p in sieve_primes(p_max):
        if p < p_min:
            continue
        if (seq.u0 != 0 and _divides(p, seq.u0)) or any(
            value != 0 and _divides(p, value) for value in coprime_with
        ):
            excluded += 1
            continue
        try:
            m_f, m_g = root_counts(seq, p)
        except NotHenselPrime:
            unusable += 1
            continue
        tested += 1
        if m_f == m_g:
            symmetric += 1
            continue
        cert = make_certificate(seq, p, coprime_with)
        return ScanResult(cert, p_min, p_max, tested, symmetric,
                          unusable, excluded)
    return ScanResult(None, p_min, p_max, tested, symmetric,
                      unusable, excluded)


# -- the certified envelope --------------------------------------------


@dataclass(frozen=True)
class Envelope:
    """L(n) ≤ |ν_p(uₙ)| for all n ≥ 1, with explicit constants.

    L(n) = A·n − c·(⌊log_p(B·n^d)⌋ + 2) − |ν_p(u₀)| with c = m_f + m_g
    and d = max(deg f, deg g).  Counting multiples layer by layer: for
    each of the c roots, #{m ≤ n : p^j divides the shifted factor} is
    ⌊n/p^j⌋ or ⌈n/p^j⌉ for every j ≥ 1 (roots lift uniquely past the
    collision gate), and no layer beyond ⌊log_p(B·n^d)⌋ is populated,
    so each root contributes n/(p−1) ± (⌊log_p(B·n^d)⌋ + 2).
    """

    p: int
    A: Fraction
    c: int
    B: int
    d: int
    u0_valuation_abs: int

    def log_cap(self, n: int) -> int:
        """⌊log_p(B·n^d)⌋, exactly."""
        t = self.B * n**self.d
        j = 0
        pw = self.p
        while pw <= t:
            j += 1
            pw *= self.p
        return j

    def __call__(self, n: int) -> Fraction:
        if n < 1:
            raise ValueError("the envelope is stated for n >= 1")
        return (self.A * n - self.c * (self.log_cap(n) + 2)
                - self.u0_valuation_abs)

    def crossover(self) -> int:
        """Smallest n from which the bound stays positive."""
        return self.bound_index(0)

    def bound_index(self, tau: int, max_n: Optional[int] = None) -> int:
        """Smallest n₀ with L(m) > tau guaranteed for every m ≥ n₀.

        Works on the increasing minorant S(m) = A·m − c·(log_p B +
        d·log_p m + 2) − |ν₀| ≤ L(m), asking S(m) ≥ tau + 1 beyond S's
        stationary point, so the answer survives the local dips of L at
        powers of p.  Raises UnsupportedInput when the answer would
        exceed max_n.
        """
        lp = math.log(self.p)
        a = float(self.A)
        base = self.c * (math.log(max(self.B, 1)) / lp + 2.0) + \
            self.u0_valuation_abs
        # S is increasing for m >= c*d/(A ln p)
        m_incr = max(1, math.ceil(self.c * self.d / (a * lp)) + 1)

        def surrogate_ok(m: int) -> bool:
            s = a * m - (base + self.c * self.d * math.log(m) / lp)
            return s >= tau + 1.0

        hi = m_incr
        while not surrogate_ok(hi):
            hi *= 2
            if max_n is not None and hi > 4 * max_n:
                raise UnsupportedInput(
                    f"certified bound index exceeds the cap {max_n}"
                )
        lo = max(m_incr - 1, hi // 2)
        while hi - lo > 1:  # invariant: ok(hi), not ok(lo) (or lo < m_incr)
            mid = (lo + hi) // 2
            if mid >= m_incr and surrogate_ok(mid):
                hi = mid
            else:
                lo = mid
        if max_n is not None and hi > max_n:
            raise UnsupportedInput(
                f"certified bound index {hi} exceeds the cap {max_n}"
            )
        if self(hi) <= tau:
            raise AssertionError("envelope surrogate failed its safety check")
        return hi


def certified_envelope(cert: AsymmetryCertificate,
                       seq: HypergeomSeq) -> Envelope:
    """Attach the divergence bound of a certificate to its sequence."""
    if cert.m_f == cert.m_g:
        raise ValueError("certificate has equal root counts")
    d = max(seq.f.degree, seq.g.degree)
    if d < 1:
        raise ValueError("constant f and g cannot carry an asymmetric prime")
    return Envelope(
        p=cert.p,
        A=cert.A,
        c=cert.m_f + cert.m_g,
        B=cert.B,
        d=d,
        u0_valuation_abs=abs(cert.u0_valuation),
    )


# -- empirical slope ----------------------------------------------------


@dataclass(frozen=True)
class SlopeFit:
    slope: Fraction  # exact least squares over the window
    intercept: Fraction
    max_log_deviation: float  # max |ν_p(uₙ) − slope·n| / log n on the window
    window: tuple[int, int]


def slope_fit(seq: HypergeomSeq, p: int, n_max: int) -> SlopeFit:
    """Fit ν_p(uₙ) ≈ slope·n over the top half of [0, n_max].

    One valuation-only cursor pass; the least squares is exact integer
    arithmetic.  The deviation statistic normalizes by log n, matching
    the expected O(log n) wobble around the line.
    """
    lo, hi = n_max // 2, n_max
    if lo < 2:
        raise ValueError("n_max too small for a slope window")
    cur = TermCursor(seq, primes=(p,), track_value=False)
    samples = []
    for n in range(1, hi + 1):
        cur.advance()
        if n >= lo:
            v = cur.valuations[p]
            if v is INFINITY:
                raise ValueError(
                    "sequence is eventually zero; valuations are infinite"
                )
            samples.append((n, v))
    k = len(samples)
    sx = sum(n for n, _ in samples)
    sy = sum(v for _, v in samples)
    sxx = sum(n * n for n, _ in samples)
    sxy = sum(n * v for n, v in samples)
    denom = k * sxx - sx * sx
    slope = Fraction(k * sxy - sx * sy, denom)
    intercept = Fraction(sy - slope * sx, k)
    dev = max(
        abs(v - slope * n) / math.log(n) for n, v in samples
    )
    return SlopeFit(slope, intercept, float(dev), (lo, hi))


# -- quadratic class-D criterion ----------------------------------------


def class_d_quadratic_check(seq: HypergeomSeq) -> bool:
    """Do f and g force divergence through mismatched quadratic data?

    Each irreducible factor (with multiplicity) contributes the
    square-free part of its discriminant — 1 for a linear factor — and
    the sequence is divergence-certified iff the two multisets differ:
    no pairing of parameters can then generate equal number fields with
    equal discriminant classes.
    """
    multisets = []
    for poly in (seq.f, seq.g):
        fac = factor(poly)
        tags: list[int] = []
        for pf in fac.factors:
            if not pf.certified or pf.poly.degree > 2:
                raise UnsupportedFactorization(
                    f"cannot certify the factor {pf.poly} "
                    "(degree above 2 or incomplete split)"
                )
            if pf.poly.degree == 1:
                tags.extend([1] * pf.multiplicity)
            else:
                disc = discriminant_quadratic(pf.poly)
                part = 1 if disc == 0 else squarefree_part(disc)
                tags.extend([part] * pf.multiplicity)
        multisets.append(sorted(tags))
    return multisets[0] != multisets[1]
