from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hyperval.errors import (
    BadPrime,
    NotSimpleRoot,
    PrecisionExhausted,
)
from hyperval.numtheory import INFINITY, sieve_primes
from hyperval.padic import (
    count_roots_mod_p,
    digit_frequency,
    hensel_lift,
    is_hensel_prime,
    reduce_mod_p,
    roots_mod_p,
    valuation_at_prime_power,
    zero_run_length,
)
from hyperval.polyq import ONE, RatPoly, X


def count_roots_oracle(coeffs, p):
    """Roots in the p-element field counted with multiplicity, by repeated
    synthetic division at every residue."""
    c = [int(v) % p for v in coeffs]
    while c and c[-1] == 0:
        c.pop()
    total = 0
    for a in range(p):
        while True:
            # divide by (x - a) if a is a root of the current quotient
            if not c or sum(ci * pow(a, i, p) for i, ci in enumerate(c)) % p:
                break
            q, carry = [0] * (len(c) - 1), 0
            for i in range(len(c) - 1, 0, -1):
                carry = (carry * a + c[i]) % p
                q[i - 1] = carry
            c = q
            total += 1
    return total


class TestReduceModP:
    def test_coefficients(self):
        fp = reduce_mod_p(X * X - RatPoly([2]), 7)
        assert fp.coeffs == (5, 0, 1)
        assert fp(3) == 0 and fp(1) == 6

    def test_rational_coefficients(self):
        fp = reduce_mod_p(RatPoly([Fraction(1, 3)]) + X, 7)
        assert fp.coeffs == (5, 1)  # 1/3 ≡ 5 (mod 7)

    def test_denominator_divisible(self):
        with pytest.raises(BadPrime):
            reduce_mod_p(RatPoly([Fraction(1, 7)]), 7)

    def test_composite_modulus(self):
        with pytest.raises(BadPrime):
            reduce_mod_p(X, 6)


class TestCountRoots:
    @pytest.mark.parametrize("poly,p,expected", [
        (X * X - ONE, 7, 2),
        (X * X, 7, 2),                    # double root at 0 counts twice
        (X * X + ONE, 7, 0),
        (X * X + ONE, 5, 2),
        ((X + ONE) ** 3, 5, 3),
        (X * X - RatPoly([2]), 7, 2),
        (X * X - RatPoly([2]), 5, 0),
    ])
    def test_hand_cases(self, poly, p, expected):
        assert count_roots_mod_p(poly, p) == expected

    @given(st.lists(st.integers(-10, 10), min_size=1, max_size=6),
           st.sampled_from([2, 3, 5, 7, 11, 13]))
    @settings(max_examples=120, deadline=None)
    def test_matches_division_oracle(self, coeffs, p):
        poly = RatPoly(coeffs)
        fp = [c % p for c in coeffs]
        while fp and fp[-1] == 0:
            fp.pop()
        if not fp:  # vanishes identically mod p
            with pytest.raises(ValueError):
                count_roots_mod_p(poly, p)
            return
        assert count_roots_mod_p(poly, p) == count_roots_oracle(coeffs, p)

    def test_distinct_roots_listed(self):
        assert roots_mod_p(X * X - ONE, 7) == [1, 6]
        assert roots_mod_p(X * X, 7) == [0]
        assert roots_mod_p(X * X + ONE, 7) == []


class TestHenselPrime:
    def test_known_values(self):
        assert is_hensel_prime(X * X - RatPoly([2]), 7)
        assert not is_hensel_prime(X * X - RatPoly([2]), 2)   # x^2 mod 2
        assert not is_hensel_prime(X * X - ONE, 2)            # (x+1)^2 mod 2
        assert is_hensel_prime(X * X - ONE, 5)

    def test_leading_coefficient_vanishing(self):
        assert not is_hensel_prime(RatPoly([1, 0, 7]), 7)

    def test_denominator_blocked(self):
        assert not is_hensel_prime(X + RatPoly([Fraction(1, 5)]), 5)


class TestHenselLift:
    def test_sqrt2_digits_base7(self):
        root = hensel_lift(X * X - RatPoly([2]), 7, 3, 8)
        assert [root.digit(i) for i in range(4)] == [3, 1, 2, 6]
        v = root.lift_to(8).value
        assert (v * v - 2) % 7**8 == 0

    def test_deep_precision(self):
        root = hensel_lift(X * X - RatPoly([2]), 7, 3, 100)
        v = root.value
        assert (v * v - 2) % 7**100 == 0

    def test_other_branch(self):
        root = hensel_lift(X * X - RatPoly([2]), 7, 4, 6)
        v = root.value
        assert (v * v - 2) % 7**6 == 0 and v % 7 == 4

    def test_multiple_root_rejected(self):
        with pytest.raises(NotSimpleRoot):
            hensel_lift(X * X, 7, 0, 5)

    def test_non_root_rejected(self):
        with pytest.raises(ValueError):
            hensel_lift(X * X - RatPoly([2]), 7, 1, 5)

    def test_rational_coefficient_lift(self):
        # x - 1/3 over the 7-adics: root is the 7-adic expansion of 1/3
        root = hensel_lift(X - RatPoly([Fraction(1, 3)]), 7, 5, 6)
        v = root.value
        assert (3 * v - 1) % 7**6 == 0


class TestZeroRun:
    def test_runs_in_small_integers(self):
        # 5 = 2 + 1*3: digits (2, 1, 0, 0, ...)
        five = hensel_lift(X - RatPoly([5]), 3, 2, 4)
        assert zero_run_length(five, 1) == 0
        # 19 = 1 + 0*3 + 2*9: digits (1, 0, 2, 0, ...)
        nineteen = hensel_lift(X - RatPoly([19]), 3, 1, 4)
        assert zero_run_length(nineteen, 1) == 1

    def test_all_zero_tail_exhausts(self):
        five = hensel_lift(X - RatPoly([5]), 3, 2, 4)
        with pytest.raises(PrecisionExhausted):
            zero_run_length(five, 2, max_digits=64)

    def test_negative_index_rejected(self):
        five = hensel_lift(X - RatPoly([5]), 3, 2, 4)
        with pytest.raises(ValueError):
            zero_run_length(five, -1)


class TestDigitFrequency:
    def test_frequencies_sum_to_one(self):
        root = hensel_lift(X * X - RatPoly([2]), 7, 3, 200)
        freq = digit_frequency(root, 1)
        assert sum(freq.values()) == pytest.approx(1.0)
        assert all(len(k) == 1 for k in freq)

    def test_pattern_length_two(self):
        root = hensel_lift(X * X - RatPoly([2]), 7, 3, 200)
        freq = digit_frequency(root, 2)
        assert sum(freq.values()) == pytest.approx(1.0)
        assert all(len(k) == 2 for k in freq)

    def test_known_expansion(self):
        # 1/3 in base 7 has digits 5, 4, 4, 4, ... (3*(5+4*7+4*49+...) = 1)
        root = hensel_lift(X - RatPoly([Fraction(1, 3)]), 7, 5, 64)
        freq = digit_frequency(root, 1)
        assert freq[(4,)] == pytest.approx(63 / 64)


class TestValuationAtPrimePower:
    def test_unequal_root_counts_rejected(self, factorial):
        # the digit formula needs matching root counts; f = 1, g = x has 0 vs 1
        with pytest.raises(ValueError):
            valuation_at_prime_power(factorial, 3, 1)

    def test_both_routes_agree_on_quadratic_pair(self, sq_pair):
        direct, digit_route = valuation_at_prime_power(sq_pair, 23, 1)
        assert direct == digit_route == 0

    def test_linear_shift_pair(self):
        from hyperval.hyperseq import make_sequence
        seq = make_sequence(X + ONE, X + RatPoly([80]), Fraction(1))
        direct, digit_route = valuation_at_prime_power(seq, 3, 1)
        assert direct == digit_route == 3
        direct, digit_route = valuation_at_prime_power(seq, 3, 2)
        assert direct == digit_route == 2

    def test_include_initial_value(self):
        from hyperval.hyperseq import make_sequence
        unit_u0 = make_sequence(X + ONE, X + RatPoly([80]), Fraction(1))
        third_u0 = make_sequence(X + ONE, X + RatPoly([80]), Fraction(1, 3))
        base = valuation_at_prime_power(unit_u0, 3, 1)
        shifted = valuation_at_prime_power(third_u0, 3, 1, include_u0=True)
        assert shifted[0] == shifted[1] == base[0] - 1
        # without include_u0 the initial value must be a p-adic unit
        with pytest.raises(ValueError):
            valuation_at_prime_power(third_u0, 3, 1)
