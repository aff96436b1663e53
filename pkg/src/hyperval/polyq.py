"""Exact univariate polynomials over the rationals.

:class:`RatPoly` is a dense immutable polynomial with Fraction
coefficients (index = degree; the zero polynomial has no coefficients and
degree -1).  On top of it this module provides gcd, square-free
decomposition, a factoring pipeline certified complete whenever every
irreducible factor has degree at most 2, quadratic discriminants,
integer-shift detection, and factored rational functions.

Factoring strategy: strip powers of x, make the polynomial monic with
integer coefficients, run Yun's square-free decomposition, extract integer
roots by bounded divisor scanning, then search for monic quadratic factors
by lifting factor candidates from a good small prime and testing exact
division.  Residual factors of degree >= 3 are returned opaque and flagged
not certified irreducible; degree <= 2 factors are always certified
(quadratics via a non-square discriminant).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import _fp
from .numtheory import Rational, factorize, is_prime

_MAX_DIVISOR_CANDIDATES = 200_000


class RatPoly:
    """Immutable dense polynomial over Q. Coefficients little-endian."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[Rational | int | str] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._c = tuple(cs)

    # -- basic structure ------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    @property
    def is_zero(self) -> bool:
        return not self._c

    @property
    def leading(self) -> Fraction:
        if not self._c:
            raise ValueError("zero polynomial has no leading coefficient")
        return self._c[-1]

    @property
    def is_monic(self) -> bool:
        return bool(self._c) and self._c[-1] == 1

    def coeff(self, i: int) -> Fraction:
        return self._c[i] if 0 <= i < len(self._c) else Fraction(0)

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, RatPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self == RatPoly([other])
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def __repr__(self):
        return f"RatPoly({self})"

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self._c), len(other._c))
        return RatPoly(
            [self.coeff(i) + other.coeff(i) for i in range(n)]
        )

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return RatPoly([-c for c in self._c])

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if not self._c or not other._c:
            return RatPoly()
        out = [Fraction(0)] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a:
                for j, b in enumerate(other._c):
                    out[i + j] += a * b
        return RatPoly(out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = RatPoly([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        other = _coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self._c)
        q = [Fraction(0)] * max(len(r) - len(other._c) + 1, 0)
        db = other.degree
        lc = other.leading
        while len(r) - 1 >= db and r:
            if r[-1] == 0:
                r.pop()
                continue
            k = len(r) - 1 - db
            c = r[-1] / lc
            q[k] = c
            for i, b in enumerate(other._c):
                r[k + i] -= c * b
            r.pop()
        return RatPoly(q), RatPoly(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x: Rational | int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    # -- structural operations ------------------------------------------

    def derivative(self) -> "RatPoly":
        return RatPoly([i * c for i, c in enumerate(self._c)][1:])

    def monic(self) -> "RatPoly":
        if self.is_zero:
            return self
        lc = self.leading
        return RatPoly([c / lc for c in self._c])

    def shift_arg(self, d: Rational | int) -> "RatPoly":
        """p(x + d)."""
        d = Fraction(d)
        out = RatPoly()
        xd = RatPoly([d, 1])
        power = RatPoly([1])
        for c in self._c:
            out = out + power * c
            power = power * xd
        return out

    def scale_arg(self, c: Rational | int) -> "RatPoly":
        """p(c * x)."""
        c = Fraction(c)
        return RatPoly([a * c**i for i, a in enumerate(self._c)])

    def to_integer(self) -> tuple[list[int], int]:
        """(coeffs, L) with L > 0 minimal so that L * self has integer
        coefficients; returns those integer coefficients."""
        L = 1
        for c in self._c:
            L = L * c.denominator // math.gcd(L, c.denominator)
        return [int(c * L) for c in self._c], L

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeff(i)
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                xpart = "x" if i == 1 else f"x^{i}"
                body = xpart if mag == 1 else f"{mag}*{xpart}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def _coerce(v) -> RatPoly:
    if isinstance(v, RatPoly):
        return v
    if isinstance(v, (int, Fraction)):
        return RatPoly([v])
    raise TypeError(f"cannot use {v!r} as a polynomial")


X = RatPoly([0, 1])
ONE = RatPoly([1])


def poly_gcd(a: RatPoly, b: RatPoly) -> RatPoly:
    """Monic gcd over Q (monic 1 for coprime inputs; gcd(0, 0) = 0)."""
    while not b.is_zero:
        a, b = b, (a % b)
        if not b.is_zero:
            b = b.monic()  # keeps coefficient growth in check
    return a.monic() if not a.is_zero else a


# -- factoring ----------------------------------------------------------


@dataclass(frozen=True)
class PolyFactor:
    poly: RatPoly
    multiplicity: int
    certified: bool = True  # irreducibility established (always for deg <= 2)


@dataclass(frozen=True)
class FactoredPoly:
    """unit * prod(poly**multiplicity), factors monic, canonically ordered."""

    unit: Fraction
    factors: tuple[PolyFactor, ...]

    @property
    def is_certified(self) -> bool:
        return all(f.certified for f in self.factors)

    def expand(self) -> RatPoly:
        out = RatPoly([self.unit])
        for f in self.factors:
            out = out * f.poly ** f.multiplicity
        return out

    def __str__(self):
        if not self.factors:
            return str(self.unit)
        parts = [] if self.unit == 1 else [str(self.unit)]
        for f in self.factors:
            body = f"({f.poly})"
            if f.multiplicity > 1:
                body += f"^{f.multiplicity}"
            parts.append(body)
        return " * ".join(parts)


def _canonical_key(p: RatPoly):
    return (p.degree, tuple(reversed(p.coeffs)))


def factor(p: RatPoly) -> FactoredPoly:
    """Factor p into monic irreducibles over Q, up to certification limits.

    Complete and certified whenever all irreducible factors have degree
    <= 2.  A residual factor of degree >= 3 that the quadratic search
    cannot split is returned whole with certified=False.  The product of
    the result is checked against p on every call.
    """
    if p.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    unit = p.leading
    work = p.monic()
    counts: dict[RatPoly, int] = {}
    flags: dict[RatPoly, bool] = {}

    # powers of x first, so every later constant term is nonzero
    nz = 0
    while nz <= work.degree and work.coeffs[nz] == 0:
        nz += 1
    if nz:
        counts[X] = nz
        flags[X] = True
        work = RatPoly(work.coeffs[nz:])

    for part, mult in _yun(work):
        for q, certified in _factor_squarefree(part):
            counts[q] = counts.get(q, 0) + mult
            flags[q] = flags.get(q, True) and certified

    ordered = tuple(
        PolyFactor(q, counts[q], flags[q])
        for q in sorted(counts, key=_canonical_key)
    )
    result = FactoredPoly(unit, ordered)
    if result.expand() != p:  # self-check on every call; degrees are small
        raise AssertionError("factor() failed to reconstruct its input")
    return result


def _yun(p: RatPoly) -> list[tuple[RatPoly, int]]:
    """Square-free decomposition of monic p: [(part, multiplicity)]."""
    if p.degree < 1:
        return []
    d = p.derivative()
    g = poly_gcd(p, d)
    if g.degree == 0:
        return [(p, 1)]
    out = []
    c = p // g
    w = d // g - c.derivative()
    i = 1
    while c.degree > 0:
        pi = poly_gcd(c, w)
        if pi.degree > 0:
            out.append((pi, i))
        c = c // pi
        w = w // pi - c.derivative()
        i += 1
    return out


def _divisors_upto(n: int, bound: int) -> Optional[list[int]]:
    """Positive divisors of |n| that are <= bound, or None if there would
    be too many to enumerate."""
    fac = factorize(n)
    divs = [1]
    for q, e in fac.items():
        fresh = []
        for d in divs:
            v = d
            for _ in range(e):
                v *= q
                if v <= bound:
                    fresh.append(v)
                else:
                    break
        divs.extend(fresh)
        if len(divs) > _MAX_DIVISOR_CANDIDATES:
            return None
    return [d for d in set(divs) if d <= bound]


def _factor_squarefree(h: RatPoly) -> list[tuple[RatPoly, bool]]:
    """Factor a monic square-free h with nonzero constant term.

    Returns [(monic factor, certified)] working through an integer
    monicized image of h.
    """
    if h.degree <= 0:
        return []
    if h.degree == 1:
        return [(h, True)]

    ic, L = h.to_integer()
    # Monicize: H(y) = L^(n-1) * (L*h)(y/L) has integer coefficients, is
    # monic, and its factors map back by x -> L*x.
    n = h.degree
    H = [ic[i] * L ** (n - 1 - i) for i in range(n)] + [1]

    out_int: list[tuple[list[int], bool]] = []
    _factor_monic_int(H, out_int)

    out: list[tuple[RatPoly, bool]] = []
    for coeffs, certified in out_int:
        q = RatPoly(coeffs).scale_arg(L)
        q = q.monic()
        out.append((q, certified))
    return out


def _int_eval(c: list[int], x: int) -> int:
    acc = 0
    for a in reversed(c):
        acc = acc * x + a
    return acc


def _int_divmod(a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    """Exact division machinery for integer polys with monic b."""
    r = list(a)
    q = [0] * max(len(r) - len(b) + 1, 0)
    db = len(b) - 1
    while len(r) - 1 >= db and r:
        if r[-1] == 0:
            r.pop()
            continue
        k = len(r) - 1 - db
        c = r[-1]
        q[k] = c
        for i, bc in enumerate(b):
            r[k + i] -= c * bc
        r.pop()
    while r and r[-1] == 0:
        r.pop()
    return q, r


def _factor_monic_int(H: list[int], out: list[tuple[list[int], bool]]) -> None:
    """Factor monic square-free integer H; append (coeffs, certified)."""
    deg = len(H) - 1
    if deg <= 0:
        return
    if deg == 1:
        out.append((H, True))
        return

    # Integer roots: divisors of the constant term inside the Cauchy bound.
    const = H[0]
    bound = 1 + max(abs(c) for c in H)
    divs = _divisors_upto(const, bound)
    if divs is not None:
        h1 = _int_eval(H, 1)
        hm1 = _int_eval(H, -1)
        for d in sorted(divs):
            for r in (d, -d):
                # cheap filters: (r - 1) | H(1) and (r + 1) | H(-1)
                if r != 1 and h1 % (r - 1) != 0:
                    continue
                if r != -1 and hm1 % (r + 1) != 0:
                    continue
                while _int_eval(H, r) == 0:
                    out.append(([-r, 1], True))
                    H, rem = _int_divmod(H, [-r, 1])
                    assert not rem
                    if len(H) - 1 <= 0:
                        return
        deg = len(H) - 1

    if deg == 0:
        return
    if deg == 1:
        out.append((H, True))
        return
    if deg == 2:
        _emit_quadratic(H, out)
        return
    if deg == 3:
        # no rational root (checked above when enumerable): any factorization
        # would include a linear factor, but we do not certify that here
        out.append((H, False))
        return

    q = _find_quadratic_factor(H)
    if q is None:
        out.append((H, False))
        return
    _emit_quadratic(q, out)
    quo, rem = _int_divmod(H, q)
    assert not rem
    _factor_monic_int(quo, out)


def _emit_quadratic(q: list[int], out: list[tuple[list[int], bool]]) -> None:
    """Append monic integer quadratic q, split if its discriminant is square."""
    c, b, _ = q
    disc = b * b - 4 * c
    if disc >= 0:
        s = math.isqrt(disc)
        if s * s == disc:
            # square discriminant: the roots (-b +- s)/2 are integers
            # (b and s share parity), so split into linear factors
            for root in ((-b + s) // 2, (-b - s) // 2):
                out.append(([-root, 1], True))
            return
    out.append((q, True))


def _find_quadratic_factor(H: list[int]) -> Optional[list[int]]:
    """A monic integer quadratic factor of monic square-free H, or None.

    Candidates come from a prime p where H stays square-free: irreducible
    quadratic factors of H mod p, and products of pairs of its linear
    factors, lifted to enough p-adic precision to pin integer coefficients.
    """
    for p in _candidate_primes():
        Hp = _fp.from_int_coeffs(H, p)
        if _fp.deg(_fp.gcd(Hp, _fp.derivative(Hp, p), p)) != 0:
            continue  # not square-free mod p; finitely many such primes
        # Any quadratic factor of H reduces to a quadratic divisor of
        # H mod p, so this one prime settles the question either way.
        return _search_at_prime(H, Hp, p)
    return None


def _candidate_primes(limit: int = 1000):
    for p in range(3, limit, 2):
        if is_prime(p):
            yield p


def _search_at_prime(H: list[int], Hp: list[int], p: int) -> Optional[list[int]]:
    roots = [a for a in range(p) if _fp.eval_at(Hp, a, p) == 0]
    rest = Hp
    for a in roots:
        rest = _fp.divmod_(rest, [(-a) % p, 1], p)[0]
    # rest now has only irreducible factors of degree >= 2 mod p, so its
    # monic quadratic divisors are exactly its irreducible quadratic factors
    quads: list[list[int]] = []
    while _fp.deg(rest) > 0:
        hit = None
        for b in range(p):
            for c in range(p):
                cand = [c, b, 1]
                q, r = _fp.divmod_(rest, cand, p)
                if not r:
                    hit = cand
                    rest = q
                    break
            if hit:
                break
        if hit is None:
            break  # leftover has no quadratic factor mod p
        quads.append(hit)

    candidates = list(quads)
    for a, b in itertools.combinations(roots, 2):
        candidates.append(_fp.mul([(-a) % p, 1], [(-b) % p, 1], p))

    bound = _quadratic_coeff_bound(H)
    for cand in candidates:
        q = _lift_and_test(H, cand, p, bound)
        if q is not None:
            return q
    return None


def _quadratic_coeff_bound(H: list[int]) -> int:
    # roots of any factor are roots of H; Cauchy bound R = 1 + max|coef|
    R = 1 + max(abs(c) for c in H)
    return max(2 * R, R * R)


def _lift_and_test(H: list[int], u: list[int], p: int, bound: int) -> Optional[list[int]]:
    """Hensel-lift the candidate quadratic u (mod p) against H and test
    exact integer division.  Returns the integer quadratic or None."""
    v, r = _fp.divmod_(_fp.from_int_coeffs(H, p), u, p)
    if r:
        return None
    g, s, t = _fp.xgcd(u, v, p)
    if _fp.deg(g) != 0:
        return None  # not coprime mod p; cannot lift this pair cleanly
    # s*u + t*v = 1 (mod p)
    K = 1
    pk = p
    target = 2 * bound + 1
    U = [c % p for c in u]
    V = [c % p for c in v]
    while pk < target:
        newmod = pk * p
        # defect E = (H - U*V) / p^K (mod p)
        prod = _poly_mul_int(U, V)
        E = [0] * max(len(H), len(prod))
        for i, c in enumerate(H):
            E[i] = c
        for i, c in enumerate(prod):
            E[i] -= c
        E = [(c // pk) % p for c in E]
        while E and E[-1] == 0:
            E.pop()
        # correction: du = (t*E mod u); dv = s*E + (t*E div u)*v  (all mod p)
        tE = _fp.mul(t, E, p)
        qq, du = _fp.divmod_(tE, u, p)
        dv = _fp.add(_fp.mul(s, E, p), _fp.mul(qq, v, p), p)
        U = _add_shifted(U, du, pk, newmod)
        V = _add_shifted(V, dv, pk, newmod)
        pk = newmod
        K += 1
    # symmetric representatives
    cand = [c if c <= pk // 2 else c - pk for c in U]
    if len(cand) != 3 or cand[2] != 1:
        return None
    if max(abs(c) for c in cand) > bound:
        return None
    _, rem = _int_divmod(H, cand)
    if rem:
        return None
    return cand


def _poly_mul_int(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _add_shifted(base: list[int], delta: list[int], pk: int, newmod: int) -> list[int]:
    out = list(base)
    for i, d in enumerate(delta):
        if i < len(out):
            out[i] = (out[i] + pk * d) % newmod
        else:
            out.append((pk * d) % newmod)
    while out and out[-1] == 0:
        out.pop()
    return out


# -- derived queries ----------------------------------------------------


def discriminant_quadratic(p: RatPoly) -> Fraction:
    """b^2 - 4ac for a quadratic ax^2 + bx + c."""
    if p.degree != 2:
        raise ValueError(f"discriminant_quadratic needs degree 2, got {p.degree}")
    a, b, c = p.coeff(2), p.coeff(1), p.coeff(0)
    return b * b - 4 * a * c


def shift_equivalent(h: RatPoly, h2: RatPoly) -> Optional[int]:
    """The integer d with h(x) = h2(x + d), or None.

    Both inputs must be monic of equal degree; the candidate shift is read
    off the subleading coefficients and then verified by expansion.
    """
    if not (h.is_monic and h2.is_monic):
        raise ValueError("shift equivalence is defined for monic polynomials")
    n = h.degree
    if n != h2.degree:
        raise ValueError("shift equivalence needs equal degrees")
    if n == 0:
        return 0
    diff = (h.coeff(n - 1) - h2.coeff(n - 1)) / n
    if diff.denominator != 1:
        return None
    d = int(diff)
    return d if h2.shift_arg(d) == h else None


def nonnegative_integer_roots(p: RatPoly) -> list[int]:
    """Sorted distinct integer roots n >= 0 of p (p nonzero)."""
    if p.is_zero:
        raise ValueError("the zero polynomial has every root")
    roots = []
    coeffs = list(p.coeffs)
    nz = 0
    while coeffs[nz] == 0:
        nz += 1
    if nz:
        roots.append(0)
        coeffs = coeffs[nz:]
    ic, _L = RatPoly(coeffs).to_integer()
    if len(ic) == 1:
        return roots
    bound_f = 1 + max(abs(c) for c in ic) / abs(ic[-1])
    bound = int(bound_f) + 1
    divs = _divisors_upto(ic[0], bound)
    if divs is None:
        # fall back to direct scan within the root bound
        divs = list(range(1, bound + 1))
    poly = RatPoly(coeffs)
    for d in sorted(set(divs)):
        if poly(d) == 0:
            roots.append(d)
    return sorted(set(roots))


def positive_integer_roots(p: RatPoly) -> list[int]:
    return [r for r in nonnegative_integer_roots(p) if r > 0]


def radical(p: RatPoly) -> RatPoly:
    """Product of the distinct irreducible factors of p, monic."""
    if p.is_zero:
        raise ValueError("radical of the zero polynomial")
    if p.degree == 0:
        return ONE
    g = poly_gcd(p, p.derivative())
    return (p // g).monic()


# -- rational functions -------------------------------------------------


class RationalFunction:
    """A rational function kept in factored form.

    unit * prod(numer_factors) / prod(denom_factors); factors are
    (RatPoly, positive exponent) pairs.  ``numer``/``denom`` expand
    lazily to a coprime pair with monic denominator.
    """

    __slots__ = ("unit", "numer_factors", "denom_factors", "_expanded")

    def __init__(
        self,
        unit: Rational | int = 1,
        numer_factors: Sequence[tuple[RatPoly, int]] = (),
        denom_factors: Sequence[tuple[RatPoly, int]] = (),
    ):
        self.unit = Fraction(unit)
        self.numer_factors = tuple((q, int(e)) for q, e in numer_factors)
        self.denom_factors = tuple((q, int(e)) for q, e in denom_factors)
        self._expanded: Optional[tuple[RatPoly, RatPoly]] = None

    def __call__(self, x: Rational | int) -> Fraction:
        num = self.unit
        for q, e in self.numer_factors:
            num *= q(x) ** e
        den = Fraction(1)
        for q, e in self.denom_factors:
            den *= q(x) ** e
        return num / den

    def _expand(self) -> tuple[RatPoly, RatPoly]:
        if self._expanded is None:
            num = RatPoly([self.unit])
            for q, e in self.numer_factors:
                num = num * q**e
            den = ONE
            for q, e in self.denom_factors:
                den = den * q**e
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            if not den.is_zero and den.leading != 1:
                num = num * (1 / den.leading)
                den = den.monic()
            self._expanded = (num, den)
        return self._expanded

    @property
    def numer(self) -> RatPoly:
        return self._expand()[0]

    @property
    def denom(self) -> RatPoly:
        return self._expand()[1]

    @property
    def degree(self) -> int:
        """max(deg numerator, deg denominator) after cancellation."""
        num, den = self._expand()
        return max(num.degree, den.degree)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        a_n, a_d = self._expand()
        b_n, b_d = other._expand()
        return a_n == b_n and a_d == b_d

    def __str__(self):
        def side(factors):
            if not factors:
                return "1"
            return " * ".join(
                f"({q})" + (f"^{e}" if e > 1 else "") for q, e in factors
            )

        num = side(self.numer_factors)
        if self.unit != 1:
            num = f"{self.unit} * {num}" if num != "1" else str(self.unit)
        den = side(self.denom_factors)
        return num if den == "1" else f"({num}) / ({den})"

    def __repr__(self):
        return f"RationalFunction({self})"
