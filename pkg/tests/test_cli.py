"""Tests for the command-line interface: grammar, subcommands, exit codes."""

import contextlib
import io
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperval.cli import MAX_EXPONENT, main, parse_poly, parse_rational
from hyperval.errors import PolyParseError
from hyperval.padic import hensel_lift, zero_run_length
from hyperval.polyq import RatPoly

X = RatPoly([0, 1])


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


class TestParsePoly:
    def test_frozen_expansions(self):
        assert parse_poly("(x^2-2)*(x^2-3)") == RatPoly([6, 0, -5, 0, 1])
        assert parse_poly("x") == X
        assert parse_poly("7") == RatPoly([7])
        assert parse_poly("3/2") == RatPoly([Fraction(3, 2)])
        assert parse_poly("x^3 - 2*x + 1") == RatPoly([1, -2, 0, 1])
        assert parse_poly("1 + 2*x^2") == RatPoly([1, 0, 2])
        assert parse_poly("(x+1)^2") == RatPoly([1, 2, 1])
        assert parse_poly("1/2*x") == RatPoly([0, Fraction(1, 2)])
        assert parse_poly("2^3") == RatPoly([8])
        assert parse_poly("  x + 1 ") == RatPoly([1, 1])

    def test_unary_minus(self):
        # the sign binds tighter than '^' applies: -x^2 is -(x^2)
        assert parse_poly("-x^2") == RatPoly([0, 0, -1])
        assert parse_poly("--x") == X
        assert parse_poly("-(x-1)") == RatPoly([1, -1])

    def test_exponent_cap(self):
        assert parse_poly(f"x^{MAX_EXPONENT}").degree == MAX_EXPONENT
        with pytest.raises(PolyParseError, match="exponent overflow"):
            parse_poly(f"x^{MAX_EXPONENT + 1}")

    def test_errors_carry_positions(self):
        cases = {
            "": 0,
            "x^^2": 2,
            "x x": 2,  # no implicit multiplication
            "2x": 1,
            "x/2": 1,  # '/' lives inside rational literals only
            "x^-2": 2,
            "(x+1": 4,
            "@": 0,
        }
        for text, pos in cases.items():
            with pytest.raises(PolyParseError) as exc:
                parse_poly(text)
            assert exc.value.position == pos, text

    @settings(deadline=None, max_examples=120)
    @given(st.lists(
        st.fractions(min_value=Fraction(-20), max_value=Fraction(20),
                     max_denominator=9),
        min_size=0, max_size=6))
    def test_round_trip_through_str(self, coeffs):
        p = RatPoly(coeffs)
        assert parse_poly(str(p)) == p


class TestParseRational:
    def test_accepted(self):
        assert parse_rational("3/4") == Fraction(3, 4)
        assert parse_rational("-2") == -2
        assert parse_rational(" 5 ") == 5
        # decimal literals normalize to exact fractions
        assert parse_rational("1.5") == Fraction(3, 2)

    def test_rejected(self):
        for bad in ("abc", "", "1/0"):
            with pytest.raises(PolyParseError):
                parse_rational(bad)


class TestValidate:
    def test_human(self):
        code, out, _ = run("validate", "--f", "1", "--g", "x", "--u0", "1")
        assert code == 0
        assert out == (
            "f = 1\ng = x\nu0 = 1\ncommon_factor_removed = false\n"
            "g_positive_integer_roots = none\nu0_is_zero = false\n"
            "degenerate_zero = false\n"
        )

    def test_csv(self):
        code, out, _ = run("--format", "csv", "validate",
                           "--f", "1", "--g", "x", "--u0", "1")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "# hyperval csv 1"
        assert lines[1].startswith("f,g,u0,")
        assert lines[2] == "1,x,1,false,none,false,false"

    def test_invalid_sequence_is_a_domain_error(self):
        code, out, err = run("validate", "--f", "x-4", "--g", "x", "--u0", "1")
        assert code == 1
        assert "error: type=InvalidF" in err


class TestTerms:
    def test_human(self):
        code, out, _ = run("terms", "--f", "x+2", "--g", "x+1",
                           "--u0", "1", "--n", "10")
        assert code == 0
        assert out.splitlines()[-1] == "u_10 = 1/6"

    def test_csv(self):
        code, out, _ = run("--format", "csv", "terms", "--f", "x+2",
                           "--g", "x+1", "--u0", "1", "--n", "2")
        assert out.splitlines() == [
            "# hyperval csv 1", "n,u_n", "0,1", "1,2/3", "2,1/2"]

    def test_structured(self):
        code, out, _ = run("--format", "structured-text", "terms",
                           "--f", "x+2", "--g", "x+1", "--u0", "1", "--n", "2")
        assert out.splitlines() == [
            "# hyperval structured-text 1",
            "term: n=0 u=1", "term: n=1 u=2/3", "term: n=2 u=1/2"]


class TestHeightAndValuation:
    def test_height_csv(self):
        code, out, _ = run("--format", "csv", "height", "--f", "1",
                           "--g", "2", "--u0", "1", "--nmax", "2")
        assert out.splitlines() == [
            "# hyperval csv 1", "n,height",
            "0,0", "1,0.69314718056", "2,1.38629436112"]

    def test_height_human_growth_line(self):
        code, out, _ = run("height", "--f", "1", "--g", "2",
                           "--u0", "1", "--nmax", "2")
        assert out.splitlines()[-1] == \
            "growth constant (min h/n, top half): 0.693147"

    def test_valuation_reports_infinity(self):
        code, out, _ = run("valuation", "--f", "x+1", "--g", "x-3",
                           "--u0", "1", "--p", "3", "--nmax", "4")
        assert code == 0
        assert out.splitlines() == [
            "v_3(u_0) = 0", "v_3(u_1) = 0", "v_3(u_2) = -1",
            "v_3(u_3) = inf", "v_3(u_4) = inf"]


class TestRegularize:
    def test_telescoping(self):
        code, out, _ = run("regularize", "--f", "x+2", "--g", "x+1",
                           "--u0", "1")
        assert code == 0
        assert out.splitlines() == [
            "f_tilde = 1", "g_tilde = 1", "u0_tilde = 1",
            "q = (2) / ((x + 2))",
            "class rep x + 2: f:x + 2 (shift 0), g:x + 1 (shift 1) [gamma=0]"]


class TestAsymmetry:
    def test_human(self):
        code, out, _ = run("asymmetry", "--f", "x^2-2", "--g", "x^2-3",
                           "--u0", "1")
        assert code == 0
        assert out.splitlines() == [
            "asymmetric prime p = 7",
            "m_f = 2, m_g = 0",
            "slope = -1/3  (v_p(u_n) ~ slope * n)",
            "envelope: A = 1/3, B = 4"]

    def test_structured(self):
        code, out, _ = run("--format", "structured-text", "asymmetry",
                           "--f", "x^2-2", "--g", "x^2-3", "--u0", "1")
        assert out.splitlines()[1] == (
            "asymmetry-certificate: p=7 m_f=2 m_g=0 slope=-1/3 A=1/3 B=4 "
            "u0_valuation=0")

    def test_empty_scan_exits_zero(self):
        code, out, _ = run(
            "asymmetry", "--f", "(x^4-10*x^2+1)*x^2",
            "--g", "(x^2-2)*(x^2-3)*(x^2-6)", "--u0", "1", "--pmax", "200")
        assert code == 0
        assert "result=empty" in out


class TestClassify:
    def test_quadratic_pair(self):
        code, out, _ = run("classify", "--f", "x^2-2", "--g", "x^2-3",
                           "--u0", "1")
        assert code == 0
        assert out.splitlines() == [
            "discriminants={2,3} prime-support=[2,3]",
            "class_c = true",
            "class_d = true",
            "condition_prime[delta=2] = 7",
            "condition_prime[delta=3] = 11"]


class TestMembership:
    def test_human(self):
        code, out, _ = run("membership", "--f", "1", "--g", "x",
                           "--u0", "1", "--target", "120")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "outcome: yes"
        assert lines[1] == "witness: n = 5"
        assert lines[2].startswith("certificate: asymmetry-certificate: p=7")
        assert lines[3] == "cutoff n0 = 29"
        assert lines[4] == "terms checked: 6"
        assert lines[5].startswith("wall time: ")

    def test_csv(self):
        code, out, _ = run("--format", "csv", "membership", "--f", "1",
                           "--g", "x", "--u0", "1", "--target", "120")
        lines = out.splitlines()
        assert lines[0] == "# hyperval csv 1"
        assert lines[1] == (
            "outcome,witness,n0,terms_checked,wall_time,cert_p,cert_slope,"
            "reason")
        cols = lines[2].split(",")
        assert cols[:4] == ["yes", "5", "29", "6"]
        assert cols[5:] == ["7", "1/6", ""]

    def test_structured(self):
        code, out, _ = run("--format", "structured-text", "membership",
                           "--f", "1", "--g", "x", "--u0", "1",
                           "--target", "120")
        assert out.splitlines()[1].startswith(
            "membership: outcome=yes witness=5 n0=29 terms_checked=6")

    def test_unsupported_is_not_an_error(self):
        code, out, _ = run("membership", "--f", "x+2", "--g", "x+1",
                           "--u0", "1", "--target", "2/9",
                           "--prime-cap", "300")
        assert code == 0
        assert "outcome: unsupported" in out

    def test_rational_target(self):
        code, out, _ = run("membership", "--f", "x+2", "--g", "x+1",
                           "--u0", "1", "--target", "1/6")
        # telescoping is out of scope for the certificate route, but the
        # target itself must at least parse
        assert code == 0


class TestEquidist:
    def test_csv_bins(self):
        code, out, _ = run("--format", "csv", "equidist", "--delta", "2",
                           "--plimit", "3000", "--bins", "4")
        assert out.splitlines() == [
            "# hyperval csv 1",
            "0.000000,0.250000,0.25238095",
            "0.250000,0.500000,0.24761905",
            "0.500000,0.750000,0.24761905",
            "0.750000,1.000000,0.25238095"]

    def test_human_summary(self):
        code, out, _ = run("equidist", "--delta", "2", "--plimit", "3000")
        assert code == 0
        assert out.startswith("delta=2 progression=0(mod 1) p_limit=3000 ")

    def test_determinism(self):
        args = ("--format", "csv", "equidist", "--delta", "2",
                "--plimit", "3000")
        assert run(*args) == run(*args)

    def test_threads_flag_and_env_agree(self, monkeypatch):
        base = run("--format", "csv", "equidist", "--delta", "2",
                   "--plimit", "3000")
        flagged = run("--format", "csv", "--threads", "2", "equidist",
                      "--delta", "2", "--plimit", "3000")
        monkeypatch.setenv("HYPERVAL_THREADS", "2")
        env = run("--format", "csv", "equidist", "--delta", "2",
                  "--plimit", "3000")
        assert base == flagged == env

    def test_empty_sample_set_is_a_domain_error(self):
        code, _, err = run("equidist", "--delta", "2", "--plimit", "4")
        assert code == 1
        assert "error: type=EmptySampleSet" in err

    def test_bad_delta(self):
        code, _, err = run("equidist", "--delta", "8", "--plimit", "1000")
        assert code == 1
        assert "error: type=ValueError" in err


class TestPadic:
    def test_sqrt2_digits(self):
        code, out, _ = run("padic", "--poly", "x^2-2", "--p", "7",
                           "--digits", "4")
        assert code == 0
        assert out.splitlines() == [
            "root 3: digits (least significant first) 3 1 2 6",
            "root 4: digits (least significant first) 4 5 4 0"]

    def test_no_roots(self):
        code, out, _ = run("padic", "--poly", "x^2-3", "--p", "7")
        assert code == 0
        assert out.strip() == "no roots mod 7"

    def test_multiple_root_not_lifted(self):
        code, out, _ = run("padic", "--poly", "(x+1)^2", "--p", "5")
        assert code == 0
        assert "root 4: multiple root mod 5, not lifted" in out

    def test_zero_run(self):
        code, out, _ = run("padic", "--poly", "x^2-2", "--p", "7",
                           "--digits", "8", "--zero-run", "1")
        root = hensel_lift(parse_poly("x^2-2"), 7, 3, 8)
        want = zero_run_length(root, 1)
        assert f"root 3: zero run at index 1 has length {want}" in out


class TestExitCodes:
    def test_missing_required_flag(self):
        code, _, _ = run("membership", "--f", "1", "--g", "x", "--u0", "1")
        assert code == 2

    def test_conflicting_sources(self):
        code, _, err = run("terms", "--f", "1", "--g", "x", "--u0", "1",
                           "--seq", "f=1; g=x; u0=1", "--n", "1")
        assert code == 2
        assert "usage error" in err

    def test_partial_inline_definition(self):
        code, _, _ = run("terms", "--f", "1", "--n", "1")
        assert code == 2

    def test_unknown_subcommand(self):
        assert run("frobnicate")[0] == 2

    def test_help_exits_zero(self):
        assert run("--help")[0] == 0

    def test_parse_error_reports_position(self):
        code, _, err = run("terms", "--f", "x^^2", "--g", "x",
                           "--u0", "1", "--n", "1")
        assert code == 1
        assert "type=PolyParseError" in err
        assert "position=2" in err


class TestSequenceSources:
    def test_inline_spec(self):
        code, out, _ = run("terms", "--seq", "f = x+2; g = x+1; u0 = 1",
                           "--n", "1")
        assert code == 0
        assert out.splitlines() == ["u_0 = 1", "u_1 = 2/3"]

    def test_spec_file(self, tmp_path):
        spec = tmp_path / "seq.txt"
        spec.write_text("f = x+2; g = x+1; u0 = 1\n")
        code, out, _ = run("terms", "--seq-file", str(spec), "--n", "1")
        assert code == 0
        assert out.splitlines() == ["u_0 = 1", "u_1 = 2/3"]
