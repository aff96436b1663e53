"""The hypergeometric sequence model.

A sequence is defined by f(n)·uₙ = g(n)·uₙ₋₁ with rational polynomials
f, g and a rational u₀, so uₙ = u₀·∏_{m=1}^{n} g(m)/f(m).  Construction
canonicalizes (divides out common factors of f and g) and validates that
f has no positive integer roots; a g with positive integer roots (or
u₀ = 0) is allowed but flagged, since the sequence is then eventually
zero.

The module streams exact terms and p-adic valuations incrementally,
rewrites a recurrence into a regular one (no two roots of f·g differing
by a nonzero integer) times an explicit rational-function correction,
and profiles Weil-height growth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Union

from .errors import BadPrime, InvalidF, UnsupportedFactorization, UnsupportedInput
from .numtheory import (
    INFINITY,
    Rational,
    Valuation,
    is_prime,
    padic_valuation,
    weil_height_exact,
)
from .padic import is_hensel_prime
from .polyq import (
    RatPoly,
    RationalFunction,
    factor,
    poly_gcd,
    positive_integer_roots,
    radical,
    shift_equivalent,
)


@dataclass(frozen=True)
class ValidationFlags:
    common_factor_removed: bool
    g_positive_integer_roots: tuple[int, ...]
    u0_is_zero: bool

    @property
    def degenerate_zero(self) -> bool:
        """The sequence is eventually (or identically) zero."""
        return self.u0_is_zero or bool(self.g_positive_integer_roots)


class HypergeomSeq:
    """Validated recurrence f(n)·uₙ = g(n)·uₙ₋₁ with u₀."""

    __slots__ = ("f", "g", "u0", "flags", "_int_forms", "_radical_fg")

    def __init__(self, f: RatPoly, g: RatPoly, u0: Fraction,
                 flags: ValidationFlags):
        self.f = f
        self.g = g
        self.u0 = u0
        self.flags = flags
        self._int_forms: Optional[tuple[list[int], int, list[int], int]] = None
        self._radical_fg: Optional[RatPoly] = None

    @property
    def max_degree(self) -> int:
        return max(self.f.degree, self.g.degree)

    def integer_forms(self) -> tuple[list[int], int, list[int], int]:
        """(F, DF, G, DG) with f = F/DF, g = G/DG, F, G integer polys."""
        if self._int_forms is None:
            F, DF = self.f.to_integer()
            G, DG = self.g.to_integer()
            self._int_forms = (F, DF, G, DG)
        return self._int_forms

    @property
    def radical_fg(self) -> RatPoly:
        """Product of the distinct irreducible factors of f·g."""
        if self._radical_fg is None:
            self._radical_fg = radical(self.f * self.g)
        return self._radical_fg

    def __str__(self):
        return f"f = {self.f}; g = {self.g}; u0 = {self.u0}"

    def __repr__(self):
        return f"HypergeomSeq({self})"


def make_sequence(f: RatPoly, g: RatPoly,
                  u0: Union[Rational, int, str]) -> HypergeomSeq:
    """Canonicalize and validate a recurrence.

    Common polynomial factors of f and g are divided out first; then f
    must have no positive integer roots (InvalidF lists offenders) —
    that is exactly what keeps every uₙ, n ≥ 1, well-defined.  A root
    of f at 0 is harmless (f is never evaluated there) and legal.
    """
    if f.is_zero or g.is_zero:
        raise ValueError("f and g must be nonzero")
    u0 = Fraction(u0)
    common = poly_gcd(f, g)
    reduced = common.degree > 0
    if reduced:
        f = f // common
        g = g // common
    bad = positive_integer_roots(f)
    if bad:
        raise InvalidF(tuple(bad))
    g_pos = tuple(positive_integer_roots(g))
    flags = ValidationFlags(
        common_factor_removed=reduced,
        g_positive_integer_roots=g_pos,
        u0_is_zero=(u0 == 0),
    )
    return HypergeomSeq(f, g, u0, flags)


def usable_prime(seq: HypergeomSeq, p: int) -> bool:
    """Can mod-p root structure of this recurrence be trusted at p?

    Requires p coprime to every coefficient denominator and to both
    leading coefficients, and the product of distinct irreducible
    factors of f·g square-free mod p — so distinct roots stay distinct
    and every root lifts uniquely.
    """
    if not is_prime(p):
        raise BadPrime(f"{p} is not prime")
    for poly in (seq.f, seq.g):
        for c in poly.coeffs:
            if c.denominator % p == 0:
                return False
        if poly.leading.numerator % p == 0:
            return False
    return is_hensel_prime(seq.radical_fg, p)


def _int_horner(coeffs: Sequence[int], x: int) -> int:
    acc = 0
    for a in reversed(coeffs):
        acc = acc * x + a
    return acc


def _int_valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class TermCursor:
    """Streams u₀, u₁, … with exact incremental reduction.

    Each step multiplies by g(m)/f(m), removing common factors against
    the running numerator and denominator as it goes, so the stored pair
    is always fully reduced and never transits through unreduced
    products.  Optionally tracks p-adic valuations per listed prime;
    with track_value=False only the valuations advance (used for long
    valuation-only scans where the exact value would be enormous).
    """

    __slots__ = ("seq", "n", "num", "den", "valuations", "track_value",
                 "_F", "_DF", "_G", "_DG", "_dps")

    def __init__(self, seq: HypergeomSeq, primes: Sequence[int] = (),
                 track_value: bool = True):
        self.seq = seq
        self.n = 0
        self.track_value = track_value
        self.num = seq.u0.numerator
        self.den = seq.u0.denominator
        self._F, self._DF, self._G, self._DG = seq.integer_forms()
        self.valuations: dict[int, Valuation] = {}
        self._dps = {}
        for p in primes:
            if self.num == 0:
                self.valuations[p] = INFINITY
            else:
                self.valuations[p] = (_int_valuation(self.num, p)
                                      - _int_valuation(self.den, p))
            self._dps[p] = (_int_valuation(self._DF, p)
                            - _int_valuation(self._DG, p))

    @property
    def value(self) -> Fraction:
        if not self.track_value:
            raise ValueError("cursor was created with track_value=False")
        return Fraction(self.num, self.den)

    def copy(self) -> "TermCursor":
        c = object.__new__(TermCursor)
        c.seq, c.n, c.num, c.den = self.seq, self.n, self.num, self.den
        c.track_value = self.track_value
        c._F, c._DF, c._G, c._DG = self._F, self._DF, self._G, self._DG
        c.valuations = dict(self.valuations)
        c._dps = self._dps
        return c

    def advance(self) -> int:
        """Step to the next index; returns the new n."""
        m = self.n + 1
        gm = _int_horner(self._G, m)
        fm = _int_horner(self._F, m)
        for p in self.valuations:
            if self.valuations[p] is INFINITY or gm == 0:
                self.valuations[p] = INFINITY
            else:
                self.valuations[p] += (_int_valuation(gm, p)
                                       - _int_valuation(fm, p)
                                       + self._dps[p])
        if self.track_value and self.num != 0:
            a = gm * self._DF
            b = fm * self._DG
            if a == 0:
                self.num, self.den = 0, 1
            else:
                if b < 0:
                    a, b = -a, -b
                g0 = math.gcd(a, b)
                if g0 > 1:
                    a //= g0
                    b //= g0
                al = math.gcd(a, self.den)
                if al > 1:
                    a //= al
                    self.den //= al
                be = math.gcd(b, self.num)
                if be > 1:
                    b //= be
                    self.num //= be
                self.num *= a
                self.den *= b
        self.n = m
        return m

    def advance_to(self, n: int) -> None:
        if n < self.n:
            raise ValueError(f"cursor at {self.n} cannot rewind to {n}")
        while self.n < n:
            self.advance()


def term(seq: HypergeomSeq, n: int) -> Fraction:
    """Exact uₙ."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    cur = TermCursor(seq)
    cur.advance_to(n)
    return cur.value


def term_valuation(seq: HypergeomSeq, n: int, p: int) -> Valuation:
    """ν_p(uₙ) without constructing the term itself."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    if seq.u0 == 0:
        return INFINITY
    F, DF, G, DG = seq.integer_forms()
    dp = _int_valuation(DF, p) - _int_valuation(DG, p)
    v = padic_valuation(seq.u0, p)
    for m in range(1, n + 1):
        gm = _int_horner(G, m)
        if gm == 0:
            return INFINITY
        v += _int_valuation(gm, p) - _int_valuation(_int_horner(F, m), p) + dp
    return v


def valuation_profile(seq: HypergeomSeq, p: int, n_max: int) -> list[Valuation]:
    """[ν_p(u₀), …, ν_p(u_{n_max})] in one streaming pass."""
    cur = TermCursor(seq, primes=(p,), track_value=False)
    out = [cur.valuations[p]]
    for _ in range(n_max):
        cur.advance()
        out.append(cur.valuations[p])
    return out


# -- regularization ----------------------------------------------------


@dataclass(frozen=True)
class ShiftMember:
    poly: RatPoly
    shift: int  # member(x) = representative(x − shift), shift ≥ 0
    source: str  # "f" or "g"


@dataclass(frozen=True)
class ShiftClass:
    representative: RatPoly
    members: tuple[ShiftMember, ...]
    gamma: int  # (#g-members) − (#f-members)


@dataclass(frozen=True)
class RegularizationResult:
    regular_seq: HypergeomSeq
    correction: RationalFunction
    shift_classes: tuple[ShiftClass, ...]


def regularize(seq: HypergeomSeq) -> RegularizationResult:
    """Rewrite uₙ = q(n)·ũₙ with ũ regular (Gosper-style shift quotients).

    Groups the irreducible factors of f and g into shift-equivalence
    classes, keeps one representative per class (the member with the
    most negative roots, so no positive integer roots can appear), and
    telescopes every other member against it:

        ∏_{m=1}^{n} M(m) / ∏_{m=1}^{n} R(m)
            = ∏_{m=1}^{d} M(m) / ∏_{i=1}^{d} M(n+i)   when M(x) = R(x−d).

    The new recurrence keeps only reps with unbalanced counts; leading
    units are carried into f̃ and g̃ so the correction stays a pure
    shift quotient.
    """
    if seq.flags.g_positive_integer_roots:
        raise UnsupportedInput(
            "g has positive integer roots "
            f"{seq.flags.g_positive_integer_roots}; the telescoping "
            "constants vanish on the zero tail"
        )
    ff = factor(seq.f)
    gf = factor(seq.g)
    for fac in (ff, gf):
        if not fac.is_certified:
            bad = [str(pf.poly) for pf in fac.factors if not pf.certified]
            raise UnsupportedFactorization(
                "factorization not certified complete; opaque factors: "
                + ", ".join(bad)
            )

    members: list[tuple[RatPoly, str]] = []
    for fac, tag in ((ff, "f"), (gf, "g")):
        for pf in fac.factors:
            members.extend([(pf.poly, tag)] * pf.multiplicity)

    # group into shift classes (anchor = first member seen)
    groups: list[list[tuple[RatPoly, str, int]]] = []  # (poly, tag, delta)
    for poly, tag in members:
        for grp in groups:
            anchor = grp[0][0]
            if poly.degree != anchor.degree:
                continue
            d = shift_equivalent(poly, anchor)
            if d is not None:
                grp.append((poly, tag, d))
                break
        else:
            groups.append([(poly, tag, 0)])

    classes: list[ShiftClass] = []
    unit_num = Fraction(1)
    unit_den = Fraction(1)
    numer_factors: dict[RatPoly, int] = {}
    denom_factors: dict[RatPoly, int] = {}
    f_tilde = RatPoly([ff.unit])
    g_tilde = RatPoly([gf.unit])

    for grp in groups:
        delta_rep = max(d for _, _, d in grp)
        rep = next(poly for poly, _, d in grp if d == delta_rep)
        cls_members = []
        gamma = 0
        for poly, tag, d_anchor in grp:
            d = delta_rep - d_anchor  # poly(x) = rep(x − d), d ≥ 0
            cls_members.append(ShiftMember(poly, d, tag))
            gamma += 1 if tag == "g" else -1
            c = Fraction(1)
            for m in range(1, d + 1):
                c *= poly(m)
            tgt = numer_factors if tag == "f" else denom_factors
            for s in range(1, d + 1):
                shifted = poly.shift_arg(s)
                tgt[shifted] = tgt.get(shifted, 0) + 1
            if tag == "g":
                unit_num *= c
            else:
                unit_den *= c
        classes.append(ShiftClass(rep, tuple(cls_members), gamma))
        if gamma > 0:
            g_tilde = g_tilde * rep**gamma
        elif gamma < 0:
            f_tilde = f_tilde * rep**(-gamma)

    q = RationalFunction(
        unit_num / unit_den,
        sorted(numer_factors.items(), key=lambda kv: str(kv[0])),
        sorted(denom_factors.items(), key=lambda kv: str(kv[0])),
    )
    regular = make_sequence(f_tilde, g_tilde, seq.u0)

    # cheap self-check on the first few indices
    cur, rcur = TermCursor(seq), TermCursor(regular)
    for n in range(4):
        if cur.value != q(n) * rcur.value:
            raise AssertionError(
                f"regularization identity failed at n = {n}"
            )
        cur.advance()
        rcur.advance()
    return RegularizationResult(regular, q, tuple(classes))


# -- height profiles ---------------------------------------------------


@dataclass(frozen=True)
class HeightProfile:
    rows: tuple[tuple[int, int, float], ...]  # (n, max(|num|,den), log of it)
    growth_constant: float  # min of height/n over the top half of the range
    n_max: int
    stride: int

    def csv_rows(self) -> Iterator[str]:
        for n, mag, h in self.rows:
            yield f"{n},{h:.12g}"


def height_profile(seq: HypergeomSeq, n_max: int,
                   stride: int = 1) -> HeightProfile:
    """Weil heights h(uₙ) along the sequence, one exact pass.

    Rows are sampled every `stride` indices; the growth constant is the
    minimum of h(uₙ)/n over the second half of the range (all indices,
    not only sampled ones).
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if stride < 1:
        raise ValueError("stride must be >= 1")
    cur = TermCursor(seq)
    rows = []
    growth = math.inf
    half = n_max // 2
    for n in range(n_max + 1):
        if n > 0:
            cur.advance()
        if n % stride == 0 or n == n_max:
            mag = weil_height_exact(cur.value)
            h = math.log(mag) if mag > 0 else 0.0
            rows.append((n, mag, h))
        if n >= max(half, 1):
            mag = weil_height_exact(cur.value)
            h = math.log(mag) if mag > 0 else 0.0
            growth = min(growth, h / n)
    return HeightProfile(tuple(rows), growth, n_max, stride)


# -- sequence-spec text format ----------------------------------------


def parse_sequence_spec(text: str) -> HypergeomSeq:
    """Parse `f = <poly>; g = <poly>; u0 = <rational>` into a sequence."""
    from .cli import parse_poly, parse_rational

    fields = {}
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        key, eq, value = chunk.partition("=")
        if not eq:
            raise ValueError(f"malformed field {chunk!r}: expected key = value")
        key = key.strip()
        if key in fields:
            raise ValueError(f"sequence spec repeats field {key!r}")
        fields[key] = value.strip()
    missing = {"f", "g", "u0"} - fields.keys()
    if missing:
        raise ValueError(f"sequence spec missing {sorted(missing)}")
    extra = fields.keys() - {"f", "g", "u0"}
    if extra:
        raise ValueError(f"sequence spec has unknown fields {sorted(extra)}")
    return make_sequence(
        parse_poly(fields["f"]),
        parse_poly(fields["g"]),
        parse_rational(fields["u0"]),
    )
