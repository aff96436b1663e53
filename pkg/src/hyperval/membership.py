"""Deciding whether a target value occurs in a sequence.

The certified route: find a prime p where root counts of f and g differ
(so |ν_p(uₙ)| grows linearly along the sequence) and p divides neither
u₀ nor the target t.  The envelope then yields an index n₀ with
|ν_p(uₙ)| > |ν_p(t)| for every n ≥ n₀ — beyond it uₙ = t is impossible
— and the finite prefix is scanned exhaustively.  The scan streams
p-adic valuations and two word-size modular residues as filters; any
index surviving the filters is re-verified with a fresh exact term, so
filter collisions cost time, never correctness.

Eventually-zero sequences (u₀ = 0 or g with a positive integer root)
are decided directly from their finite nonzero prefix, and t = 0 is
answered from the validation flags alone.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .asymmetry import (
    AsymmetryCertificate,
    certified_envelope,
    find_asymmetric_prime,
    iter_asymmetric_certificates,
    make_certificate,
)
from .errors import HypervalError, NotHenselPrime, UnsupportedInput
from .hyperseq import HypergeomSeq, TermCursor, term
from .numtheory import Rational, padic_valuation

# filter moduli: two Mersenne primes; a congruence that holds for equal
# integers holds at every modulus, so the filter can never lose a witness
_M1 = (1 << 61) - 1
_M2 = (1 << 31) - 1


@dataclass(frozen=True)
class MembershipConfig:
    prime_cap: int = 10_000
    term_cap: int = 10_000_000
    forced_prime: Optional[int] = None


@dataclass(frozen=True)
class MembershipVerdict:
    outcome: str  # "yes" | "no" | "unsupported"
    witness: Optional[int] = None
    reason: str = ""
    certificate: Optional[AsymmetryCertificate] = None
    bound_n0: Optional[int] = None
    terms_checked: int = 0
    wall_time: float = 0.0

    @property
    def is_yes(self) -> bool:
        return self.outcome == "yes"

    def to_record(self) -> str:
        parts = [f"outcome={self.outcome}"]
        if self.witness is not None:
            parts.append(f"witness={self.witness}")
        if self.bound_n0 is not None:
            parts.append(f"n0={self.bound_n0}")
        parts.append(f"terms_checked={self.terms_checked}")
        parts.append(f"wall_time={self.wall_time:.3f}s")
        if self.certificate is not None:
            parts.append(self.certificate.to_record())
        if self.reason:
            parts.append(f"reason={self.reason}")
        return "membership: " + " ".join(parts)

    def csv_row(self) -> str:
        cert = self.certificate
        return ",".join([
            self.outcome,
            "" if self.witness is None else str(self.witness),
            "" if self.bound_n0 is None else str(self.bound_n0),
            str(self.terms_checked),
            f"{self.wall_time:.3f}",
            "" if cert is None else str(cert.p),
            "" if cert is None else str(cert.slope),
            self.reason.replace(",", ";"),
        ])


def _yes(n: int, seq: HypergeomSeq, t: Fraction, t0: float,
         certificate=None, bound_n0=None, checked=0) -> MembershipVerdict:
    if term(seq, n) != t:
        raise AssertionError(
            f"witness verification failed at n = {n}"
        )
    return MembershipVerdict(
        "yes", witness=n, certificate=certificate, bound_n0=bound_n0,
        terms_checked=checked, wall_time=time.monotonic() - t0,
    )


def _best_certificate(
    seq: HypergeomSeq, t: Fraction, config: MembershipConfig
):
    """Asymmetric prime coprime to t, preferring the steepest slope.

    Scans primes in increasing order but keeps the certificate with the
    largest |slope| (ties to the smaller prime): a steep slope shrinks
    n₀.  Stops early once no later prime can beat the current best,
    since |m_g − m_f| ≤ max(deg f, deg g) caps future slopes.
    """
    if config.forced_prime is not None:
        return make_certificate(seq, config.forced_prime, coprime_with=(t,))
    maxdeg = seq.max_degree
    best = None
    for cert in iter_asymmetric_certificates(
        seq, 2, config.prime_cap, coprime_with=(t,)
    ):
        if best is None or cert.A > best.A:
            best = cert
        if best.A >= Fraction(maxdeg, cert.p):
            break
    if best is None:
        scan = find_asymmetric_prime(seq, 2, config.prime_cap,
                                     coprime_with=(t,))
        raise UnsupportedInput(
            "no usable asymmetric prime below the cap; " + scan.summary()
        )
    return best


def decide(seq: HypergeomSeq, t: Union[Rational, int],
           config: MembershipConfig = MembershipConfig()) -> MembershipVerdict:
    """Does uₙ = t hold for some n ≥ 0?"""
    t = Fraction(t)
    t0 = time.monotonic()

    if seq.flags.degenerate_zero:
        return _decide_degenerate(seq, t, config, t0)

    if t == 0:
        # a product of nonzero rationals is never zero
        return MembershipVerdict(
            "no",
            reason="u0 is nonzero and g has no positive integer roots, "
                   "so every term is a product of nonzero rationals",
            wall_time=time.monotonic() - t0,
        )

    try:
        cert = _best_certificate(seq, t, config)
    except (UnsupportedInput, NotHenselPrime, ValueError) as exc:
        return MembershipVerdict(
            "unsupported", reason=str(exc),
            wall_time=time.monotonic() - t0,
        )

    envelope = certified_envelope(cert, seq)
    vt = abs(int(padic_valuation(t, cert.p)))
    try:
        n0 = envelope.bound_index(vt, max_n=config.term_cap)
    except UnsupportedInput as exc:
        return MembershipVerdict(
            "unsupported", reason=str(exc), certificate=cert,
            wall_time=time.monotonic() - t0,
        )

    hit = _scan_prefix(seq, t, cert.p, vt, n0)
    if hit is not None:
        return _yes(hit, seq, t, t0, certificate=cert, bound_n0=n0,
                    checked=hit + 1)
    return MembershipVerdict(
        "no", certificate=cert, bound_n0=n0, terms_checked=n0,
        reason=f"|v_{cert.p}| exceeds {vt} for all n >= {n0}; "
               "prefix scanned exhaustively",
        wall_time=time.monotonic() - t0,
    )


def _decide_degenerate(seq: HypergeomSeq, t: Fraction,
                       config: MembershipConfig, t0: float) -> MembershipVerdict:
    """u₀ = 0 or g with a positive root: compare along the finite prefix."""
    roots = seq.flags.g_positive_integer_roots
    first_zero = 0 if seq.u0 == 0 else (min(roots) if roots else None)
    if t == 0:
        # first_zero is not None here: degenerate_zero flag implies it
        return _yes(first_zero, seq, t, t0, checked=first_zero + 1)
    if seq.u0 == 0:
        return MembershipVerdict(
            "no", reason="the zero sequence never equals a nonzero target",
            wall_time=time.monotonic() - t0,
        )
    if first_zero > config.term_cap:
        return MembershipVerdict(
            "unsupported",
            reason=f"nonzero prefix of length {first_zero} exceeds the "
                   f"term cap {config.term_cap}",
            wall_time=time.monotonic() - t0,
        )
    cur = TermCursor(seq)
    for n in range(first_zero):
        if n > 0:
            cur.advance()
        if cur.value == t:
            return _yes(n, seq, t, t0, checked=n + 1)
    return MembershipVerdict(
        "no", terms_checked=first_zero,
        reason=f"target differs from the {first_zero} nonzero terms and "
               "from the zero tail",
        wall_time=time.monotonic() - t0,
    )


def _scan_prefix(seq: HypergeomSeq, t: Fraction, p: int, vt: int,
                 n0: int) -> Optional[int]:
    """First n < n0 with uₙ = t, or None.

    Streams ν_p and two modular residues of the cross-multiplied
    identity u0num·tden·DF^n·∏G(m) = tnum·u0den·DG^n·∏F(m); both are
    conserved exactly at a true witness, so they only ever filter out
    non-witnesses.  Survivors get an exact from-scratch check.
    """
    F, DF, G, DG = seq.integer_forms()
    u0n, u0d = seq.u0.numerator, seq.u0.denominator
    tn, td = t.numerator, t.denominator
    lhs1, rhs1 = (u0n * td) % _M1, (tn * u0d) % _M1
    lhs2, rhs2 = (u0n * td) % _M2, (tn * u0d) % _M2
    v = _int_val(u0n, p) - _int_val(u0d, p)
    dp = _int_val(DF, p) - _int_val(DG, p)
    n = 0
    while True:
        if v == vt and lhs1 == rhs1 and lhs2 == rhs2:
            if term(seq, n) == t:
                return n
        n += 1
        if n >= n0:
            return None
        gm = _horner(G, n)
        fm = _horner(F, n)
        v += _int_val(gm, p) - _int_val(fm, p) + dp
        a, b = gm * DF, fm * DG
        lhs1, rhs1 = (lhs1 * a) % _M1, (rhs1 * b) % _M1
        lhs2, rhs2 = (lhs2 * a) % _M2, (rhs2 * b) % _M2


def _horner(coeffs: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _int_val(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def decide_batch(
    items: Sequence[tuple[HypergeomSeq, Union[Rational, int]]],
    config: MembershipConfig = MembershipConfig(),
) -> list[MembershipVerdict]:
    """Independent verdicts per (sequence, target); errors stay per-item."""
    out = []
    for seq, t in items:
        try:
            out.append(decide(seq, t, config))
        except HypervalError as exc:
            out.append(MembershipVerdict(
                "unsupported", reason=f"{type(exc).__name__}: {exc}"
            ))
    return out
