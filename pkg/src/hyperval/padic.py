"""Polynomials over prime fields and p-adic root machinery.

Covers reduction of rational polynomials mod p, root counting in the
p-element field via gcd with x^p - x, detection of primes where every
root lifts uniquely, Newton/Hensel lifting to prime-power precision, and
digit-level diagnostics of lifted roots (zero runs, pattern frequencies,
and the valuation identity at n = p^s that ties digit runs to ν_p(u_n)).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from . import _fp
from .errors import (
    BadPrime,
    NotHenselPrime,
    NotSimpleRoot,
    PrecisionExhausted,
)
from .numtheory import is_prime, mod_rep, padic_valuation
from .polyq import RatPoly, poly_gcd

if TYPE_CHECKING:  # pragma: no cover - import cycle guard, typing only
    from .hyperseq import HypergeomSeq

DEFAULT_DIGIT_CAP = 2**14


@dataclass(frozen=True)
class ModPoly:
    """Dense polynomial over the p-element field, coefficients in [0,p)."""

    p: int
    coeffs: tuple[int, ...]  # little-endian, no trailing zeros

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, a: int) -> int:
        return _fp.eval_at(list(self.coeffs), a % self.p, self.p)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                xpart = "x" if i == 1 else f"x^{i}"
                parts.append(xpart if c == 1 else f"{c}*{xpart}")
        return " + ".join(parts)


def _require_prime(p: int) -> None:
    if p < 2 or not is_prime(p):
        raise BadPrime(f"{p} is not prime")


def reduce_mod_p(f: RatPoly, p: int) -> ModPoly:
    """Coefficientwise reduction of f modulo p.

    Denominators are inverted mod p; a denominator divisible by p is a
    BadPrime error.
    """
    _require_prime(p)
    coeffs = [mod_rep(c, p) for c in f.coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return ModPoly(p, tuple(coeffs))


def count_roots_mod_p(f: RatPoly, p: int) -> int:
    """Number of roots of f in the p-element field, with multiplicity.

    Iterated gcd with x^p - x (x^p computed by modular exponentiation):
    each pass collects deg gcd roots and divides them out, so a root of
    multiplicity e is counted e times.  Simple roots with multiplicity 1
    everywhere reduce this to the classical deg gcd(f, x^p - x) count.
    """
    fp_poly = reduce_mod_p(f, p)
    if fp_poly.is_zero:
        raise ValueError("polynomial vanishes identically mod p")
    h = list(fp_poly.coeffs)
    total = 0
    while _fp.deg(h) > 0:
        xp = _fp.pow_mod([0, 1], p, h, p)
        frob = _fp.sub(xp, [0, 1], p)
        r = _fp.gcd(h, frob, p)
        if _fp.deg(r) <= 0:
            break
        total += _fp.deg(r)
        h = _fp.divmod_(h, r, p)[0]
    return total


def roots_mod_p(f: RatPoly, p: int) -> list[int]:
    """The distinct roots of f in the p-element field (direct scan)."""
    fp_poly = reduce_mod_p(f, p)
    if fp_poly.is_zero:
        raise ValueError("polynomial vanishes identically mod p")
    c = list(fp_poly.coeffs)
    return [a for a in range(p) if _fp.eval_at(c, a, p) == 0]


def is_hensel_prime(f: RatPoly, p: int) -> bool:
    """True iff every root of f mod p lifts uniquely to the p-adics.

    Operationally: p divides no coefficient denominator, p does not
    divide the leading coefficient, and f is square-free mod p.
    """
    _require_prime(p)
    if f.is_zero:
        raise ValueError("zero polynomial")
    for c in f.coeffs:
        if c.denominator % p == 0:
            return False
    if mod_rep(f.leading, p) == 0:
        return False
    h = list(reduce_mod_p(f, p).coeffs)
    return _fp.deg(_fp.gcd(h, _fp.derivative(h, p), p)) <= 0


@dataclass(frozen=True)
class PadicRoot:
    """A root of a polynomial to precision k: value in [0, p^k).

    Immutable; ``lift_to`` re-runs the lift and returns a new value.
    """

    p: int
    precision: int
    value: int
    digits: tuple[int, ...]
    _source: RatPoly = field(repr=False, compare=False)

    def digit(self, j: int) -> int:
        if j >= self.precision:
            raise PrecisionExhausted(
                f"digit {j} beyond precision {self.precision}"
            )
        return self.digits[j]

    def truncate(self, k: int) -> "PadicRoot":
        if k > self.precision:
            raise PrecisionExhausted(f"cannot truncate {self.precision} to {k}")
        return PadicRoot(self.p, k, self.value % self.p**k,
                         self.digits[:k], self._source)

    def lift_to(self, k: int) -> "PadicRoot":
        if k <= self.precision:
            return self.truncate(k)
        return hensel_lift(self._source, self.p, self.value % self.p, k)

    def digit_text(self) -> str:
        """Digits as text, least-significant first, one per token."""
        return " ".join(str(d) for d in self.digits)


def _to_pintegral_int_poly(f: RatPoly, p: int) -> list[int]:
    # clear denominators by the p-free part of their lcm; valuations at p
    # of values are unchanged and the poly becomes integer
    ic, L = f.to_integer()
    if L % p == 0:
        raise BadPrime(f"coefficient denominator divisible by {p}")
    return ic


def hensel_lift(f: RatPoly, p: int, r0: int, k: int) -> PadicRoot:
    """The unique root of f mod p^k congruent to the simple root r0 mod p.

    Newton iteration with doubling precision; the defining congruence
    f(value) ≡ 0 (mod p^k) is asserted before returning.
    """
    _require_prime(p)
    if k < 1:
        raise ValueError(f"precision must be >= 1, got {k}")
    F = _to_pintegral_int_poly(f, p)
    Fd = [i * c for i, c in enumerate(F)][1:]
    r0 %= p
    if _int_eval_mod(F, r0, p) != 0:
        raise ValueError(f"{r0} is not a root mod {p}")
    if _int_eval_mod(Fd, r0, p) == 0:
        raise NotSimpleRoot(
            f"derivative vanishes at {r0} mod {p}; root is not simple"
        )
    prec = 1
    r = r0
    while prec < k:
        prec = min(2 * prec, k)
        mod = p**prec
        fr = _int_eval_mod(F, r, mod)
        fdr = _int_eval_mod(Fd, r, mod)
        r = (r - fr * pow(fdr, -1, mod)) % mod
    mod = p**k
    assert _int_eval_mod(F, r, mod) == 0
    digits = []
    v = r
    for _ in range(k):
        v, d = divmod(v, p)
        digits.append(d)
    return PadicRoot(p, k, r, tuple(digits), f)


def _int_eval_mod(c: list[int], x: int, mod: int) -> int:
    acc = 0
    for a in reversed(c):
        acc = (acc * x + a) % mod
    return acc


def zero_run_length(root: PadicRoot, s: int,
                    max_digits: int = DEFAULT_DIGIT_CAP) -> int:
    """Length of the zero-digit run starting at digit index s.

    Lifts more digits on demand (doubling) so the run provably ends
    within the reported length; PrecisionExhausted once max_digits is
    reached without seeing a nonzero digit.
    """
    if s < 0:
        raise ValueError("digit index must be nonnegative")
    run = 0
    j = s
    while True:
        if j >= root.precision:
            if root.precision >= max_digits:
                raise PrecisionExhausted(
                    f"zero run at index {s} still open at the "
                    f"{max_digits}-digit lifting cap"
                )
            root = root.lift_to(min(max(2 * root.precision, j + 1),
                                    max_digits))
            continue
        if root.digits[j] != 0:
            return run
        run += 1
        j += 1


def digit_frequency(root: PadicRoot, pattern_length: int) -> dict[tuple[int, ...], float]:
    """Empirical frequency of each digit pattern of the given length.

    Sliding window over all available digits; diagnostic only (normality
    would predict p^(-pattern_length) for every pattern).
    """
    if pattern_length < 1:
        raise ValueError("pattern length must be >= 1")
    digits = root.digits
    windows = len(digits) - pattern_length + 1
    if windows <= 0:
        raise ValueError("pattern longer than available digits")
    counts: dict[tuple[int, ...], int] = {}
    for i in range(windows):
        w = digits[i:i + pattern_length]
        counts[w] = counts.get(w, 0) + 1
    return {w: c / windows for w, c in sorted(counts.items())}


# -- the valuation identity at n = p^s ---------------------------------


def _strip_zero_roots(f: RatPoly) -> tuple[RatPoly, int]:
    """(f without its x^v factor, v)."""
    v = 0
    while v <= f.degree and f.coeff(v) == 0:
        v += 1
    return RatPoly(f.coeffs[v:]), v


def _root_multiplicity(f: RatPoly, p: int, a: int) -> int:
    """Multiplicity of the root a of f mod p (via repeated division)."""
    c = list(reduce_mod_p(f, p).coeffs)
    lin = [(-a) % p, 1]
    mult = 0
    while _fp.deg(c) >= 1:
        q, r = _fp.divmod_(c, lin, p)
        if r:
            break
        mult += 1
        c = q
    return mult


def _c_count(root: PadicRoot, s: int, p: int,
             max_digits: int = DEFAULT_DIGIT_CAP) -> tuple[int, PadicRoot]:
    """#{r > s : 1 ≤ (root mod p^r) ≤ p^s}: the digit-run count feeding
    the valuation identity.  Returns the count and the (possibly deeper)
    lift used, so callers can reuse precision."""
    ps = p**s
    count = 0
    r = s + 1
    while True:
        if r > max_digits:
            raise PrecisionExhausted(
                f"truncation scan passed the {max_digits}-digit cap"
            )
        if root.precision < r:
            root = root.lift_to(min(max(2 * root.precision, r), max_digits))
        tau = root.value % p**r
        if tau > ps:
            return count, root
        if tau >= 1:
            count += 1
        r += 1


def valuation_at_prime_power(
    seq: "HypergeomSeq", p: int, s: int, include_u0: bool = False
) -> tuple[int, int]:
    """ν_p(u_{p^s}) computed two independent ways: (direct, digit formula).

    Direct: incremental summation of ν_p(g(m)) − ν_p(f(m)) for m ≤ p^s.
    Digit formula: Σ over lifted roots β of g of the truncation count
    minus the same over roots α of f — the per-root count being the
    number of precisions r > s at which the truncated root lies in
    [1, p^s], which for a root with nonzero digit at index s−… reduces
    to the length of its zero-digit run.  Requires the same number of
    roots mod p on both sides so the coarse layers cancel.
    """
    from .hyperseq import term_valuation, usable_prime

    if s < 0:
        raise ValueError("s must be nonnegative")
    if not usable_prime(seq, p):
        raise NotHenselPrime(
            f"{p} is unusable: root structure of f·g is not clean mod {p}"
        )
    mf = count_roots_mod_p(seq.f, p)
    mg = count_roots_mod_p(seq.g, p)
    if mf != mg:
        raise ValueError(
            f"digit identity needs equal root counts; got {mf} vs {mg}"
        )
    v0 = padic_valuation(seq.u0, p)
    if not include_u0 and v0 != 0:
        raise ValueError(
            "u0 must be a p-adic unit (or pass include_u0=True)"
        )

    direct = term_valuation(seq, p**s, p)

    start = max(2 * s, 4)
    digit_side = 0
    for poly, sign in ((seq.g, +1), (seq.f, -1)):
        stripped, _v = _strip_zero_roots(poly)
        # exact roots at 0 contribute nothing: their truncations are 0
        # at every precision, never landing in [1, p^s]
        if stripped.degree >= 1:
            sqfree = (stripped // poly_gcd(stripped,
                                           stripped.derivative())).monic()
            for a in roots_mod_p(sqfree, p):
                root = hensel_lift(sqfree, p, a, start)
                mult = _root_multiplicity(poly, p, a)
                cnt, root = _c_count(root, s, p)
                digit_side += sign * mult * cnt
    if include_u0:
        digit_side += int(v0)
    return int(direct), digit_side
