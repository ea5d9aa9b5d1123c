"""Core polynomial arithmetic: worked examples and randomized laws."""

import itertools
import random

import pytest

from permcheck.fppoly import (
    GRLEX,
    LEX,
    DegreeOverflowError,
    MonomialOrder,
    ParseError,
    Polynomial,
    PrimeModulus,
    StructureError,
    TruncatedAccumulator,
    TruncationContext,
    VariableSpace,
    coefficient_of,
    evaluate,
    exact_divide,
    leading_term,
    parse_poly,
    render_poly,
    substitute,
    truncate,
    truncated_mul,
    truncated_pow,
)
from helpers import random_poly, random_point, small_space

Z3 = small_space(3)


def zpoly(text, p=3, space=Z3):
    return parse_poly(text, space, p)


class TestAdd:
    def test_disjoint_supports(self):
        assert zpoly("z2^2") + zpoly("z1*z3") == zpoly("z2^2 + z1*z3")

    def test_additive_inverse_mod_3(self):
        assert (zpoly("2*z1") + zpoly("z1")).is_zero

    def test_additive_identity(self):
        f = zpoly("z2^2 + z1*z3")
        assert f + Polynomial.zero(Z3, 3) == f

    def test_space_mismatch(self):
        other = small_space(2)
        with pytest.raises(StructureError):
            zpoly("z1") + parse_poly("z1", other, 3)

    def test_char_mismatch(self):
        with pytest.raises(StructureError):
            zpoly("z1", 3) + zpoly("z1", 5)


class TestMul:
    def test_square_over_f5(self):
        # (z2^2 + z1 z3)^2 = z2^4 + 2 z1 z2^2 z3 + z1^2 z3^2, by hand
        f = zpoly("z2^2 + z1*z3", 5)
        assert f * f == zpoly("z2^4 + 2*z1*z2^2*z3 + z1^2*z3^2", 5)

    def test_multiplicative_identity(self):
        f = zpoly("z2^2 + 2*z1*z3")
        assert f * Polynomial.one(Z3, 3) == f

    def test_annihilation(self):
        f = zpoly("z2^2 + 2*z1*z3")
        assert (f * Polynomial.zero(Z3, 3)).is_zero

    def test_degree_cap_overflow(self):
        tight = VariableSpace(("x",), degree_cap=5)
        x = Polynomial.variable(tight, 3, 0)
        cube = x * x * x
        with pytest.raises(DegreeOverflowError):
            cube * cube


class TestTruncated:
    def setup_method(self):
        self.xy = VariableSpace(("x1", "y1"))
        self.ctx = TruncationContext(PrimeModulus(3), self.xy)

    def test_product_below_bound(self):
        s = parse_poly("x1 + y1", self.xy, 3)
        assert truncated_mul(s, s, self.ctx) == parse_poly(
            "x1^2 + 2*x1*y1 + y1^2", self.xy, 3
        )

    def test_power_annihilated(self):
        x = Polynomial.variable(self.xy, 3, 0)
        assert truncated_mul(x * x, x, self.ctx).is_zero

    def test_freshman_dream_cube(self):
        # (x+y)^3 = x^3 + y^3 mod 3, and both cubes truncate away
        s = parse_poly("x1 + y1", self.xy, 3)
        sq = truncated_mul(s, s, self.ctx)
        assert truncated_mul(sq, s, self.ctx).is_zero

    def test_pow_small_cases(self):
        ctx3 = TruncationContext(PrimeModulus(3), Z3)
        f2 = zpoly("z2^2 + z1*z3")
        assert truncated_pow(f2, 2, ctx3) == zpoly("2*z1*z2^2*z3 + z1^2*z3^2")
        a = zpoly("z1^2 + 2*z3")
        assert truncated_pow(a, 0, ctx3) == Polynomial.one(Z3, 3)
        assert truncated_pow(a, 1, ctx3) == truncate(a, ctx3)


class TestLeadingTerm:
    def test_hankel_2_diagonal_order(self):
        f2 = zpoly("z2^2 + z1*z3")
        assert leading_term(f2, LEX) == ((1, 0, 1), 1)

    def test_single_monomial(self):
        f = zpoly("3*z1^2", 5)
        assert leading_term(f, GRLEX) == ((2, 0, 0), 3)

    def test_hankel_3_diagonal_order(self):
        z5 = small_space(5)
        # perm of the 3x3 Hankel matrix
        f3 = parse_poly(
            "z1*z3*z5 + z1*z4^2 + z2^2*z5 + 2*z2*z3*z4 + z3^3", z5, 3
        )
        assert leading_term(f3, LEX) == ((1, 0, 1, 0, 1), 1)

    def test_zero_polynomial_refused(self):
        with pytest.raises(ValueError):
            leading_term(Polynomial.zero(Z3, 3))

    def test_priority_permutation(self):
        rev = MonomialOrder("lex", priority=(2, 1, 0))
        assert leading_term(zpoly("z2^2 + z1*z3"), rev) == ((1, 0, 1), 1)
        assert leading_term(zpoly("z1^2 + z2*z3"), rev) == ((0, 1, 1), 1)


class TestExactDivide:
    def test_square_over_factor(self):
        wxyz = VariableSpace(("x1", "x2", "x3", "x4"))
        b = parse_poly("x1*x4 + x2*x3", wxyz, 3)
        assert exact_divide(b * b, b) == b

    def test_constant_obstruction(self):
        assert exact_divide(zpoly("z1*z3 + 1"), zpoly("z1")) is None

    def test_symmetric_binomial_power(self):
        y = VariableSpace(("y1_1", "y1_2", "y2_2"))
        b = parse_poly("y1_1*y2_2 + y1_2^2", y, 3)
        rng = random.Random(5)
        for _ in range(20):
            h = random_poly(rng, y, 3, max_terms=4, allow_zero=False)
            product = b * b * h
            assert exact_divide(product, b) == b * h

    def test_zero_divisor_refused(self):
        with pytest.raises(ValueError):
            exact_divide(zpoly("z1"), Polynomial.zero(Z3, 3))


class TestSubstitute:
    def test_generic_to_hankel(self):
        x = VariableSpace(("x1_1", "x1_2", "x2_1", "x2_2"))
        perm = parse_poly("x1_1*x2_2 + x1_2*x2_1", x, 3)
        images = {
            0: Polynomial.variable(Z3, 3, 0),
            1: Polynomial.variable(Z3, 3, 1),
            2: Polynomial.variable(Z3, 3, 1),
            3: Polynomial.variable(Z3, 3, 2),
        }
        assert substitute(perm, images) == zpoly("z1*z3 + z2^2")

    def test_identity_map(self):
        f = zpoly("z2^2 + 2*z1*z3")
        images = {i: Polynomial.variable(Z3, 3, i) for i in range(3)}
        assert substitute(f, images) == f
        assert substitute(f, {}) == f

    def test_all_to_zero(self):
        f = zpoly("z2^2 + 2*z1*z3 + 2")
        images = {i: Polynomial.zero(Z3, 3) for i in range(3)}
        assert substitute(f, images) == Polynomial.constant(Z3, 3, 2)

    def test_unmapped_variable_into_new_space(self):
        other = small_space(2, prefix="w")
        with pytest.raises(StructureError):
            substitute(zpoly("z1*z3"), {0: Polynomial.variable(other, 3, 0)})


class TestEvaluate:
    def test_hankel_2_at_ones(self):
        assert evaluate(zpoly("z2^2 + z1*z3"), (1, 1, 1)) == 2

    def test_origin_gives_constant_term(self):
        f = zpoly("z2^2 + 2*z1*z3 + 2")
        assert evaluate(f, (0, 0, 0)) == 2

    def test_wraparound(self):
        xy = VariableSpace(("x1", "y1"))
        assert evaluate(parse_poly("x1 + y1", xy, 3), (2, 1)) == 0

    def test_length_mismatch(self):
        with pytest.raises(StructureError):
            evaluate(zpoly("z1"), (1, 1))


class TestTextFormat:
    def test_grammar_example(self):
        assert zpoly("z2^2 + z1*z3") == Polynomial(Z3, 3, {(0, 2, 0): 1, (1, 0, 1): 1})

    def test_zero(self):
        assert zpoly("0").is_zero
        assert render_poly(Polynomial.zero(Z3, 3)) == "0"

    def test_round_trip_canonical(self):
        x = VariableSpace(("x1_1",))
        assert render_poly(parse_poly("2*x1_1^2", x, 3)) == "2*x1_1^2"

    def test_round_trip_random(self):
        rng = random.Random(11)
        for _ in range(200):
            f = random_poly(rng, Z3, 5, max_terms=6, max_exp=4)
            assert parse_poly(render_poly(f), Z3, 5) == f

    def test_coefficient_reduction(self):
        assert zpoly("5*z1") == zpoly("2*z1")

    def test_syntax_error_position(self):
        with pytest.raises(ParseError) as err:
            zpoly("z1 + ")
        assert err.value.position == 5

    def test_unknown_variable(self):
        with pytest.raises(ParseError):
            zpoly("w1 + z1")

    def test_whitespace_insignificant(self):
        assert zpoly("  z2 ^2+ z1 * z3 ") == zpoly("z2^2 + z1*z3")


class TestRandomizedLaws:
    """Ring axioms and operation identities on seeded random inputs."""

    PRIMES = (3, 5, 7)
    CASES = 500

    def test_ring_axioms(self):
        rng = random.Random(101)
        space = small_space(4)
        for p in self.PRIMES:
            for _ in range(self.CASES):
                a = random_poly(rng, space, p)
                b = random_poly(rng, space, p)
                c = random_poly(rng, space, p)
                assert (a + b) + c == a + (b + c)
                assert a + b == b + a
                assert (a * b) * c == a * (b * c)
                assert a * b == b * a
                assert a * (b + c) == a * b + a * c

    def test_truncation_is_a_quotient(self):
        rng = random.Random(102)
        space = small_space(3)
        for p, e in ((3, 1), (3, 2), (5, 1)):
            ctx = TruncationContext(PrimeModulus(p, e), space)
            for _ in range(300):
                a = random_poly(rng, space, p, max_exp=p)
                b = random_poly(rng, space, p, max_exp=p)
                assert truncate(a * b, ctx) == truncated_mul(
                    truncate(a, ctx), truncate(b, ctx), ctx
                )

    def test_powering_strategies_agree(self):
        rng = random.Random(103)
        space = small_space(3)
        ctx = TruncationContext(PrimeModulus(5), space)
        for _ in range(60):
            a = random_poly(rng, space, 5, max_exp=4)
            folded = Polynomial.one(space, 5)
            for k in range(9):
                assert truncated_pow(a, k, ctx, strategy="binary") == folded
                assert truncated_pow(a, k, ctx, strategy="repeated") == folded
                assert truncated_pow(a, k, ctx, strategy="auto") == folded
                folded = truncated_mul(folded, a, ctx)

    def test_exact_divide_round_trip(self):
        rng = random.Random(104)
        space = small_space(3)
        for p in self.PRIMES:
            for _ in range(self.CASES):
                f = random_poly(rng, space, p)
                g = random_poly(rng, space, p, allow_zero=False)
                assert exact_divide(f * g, g) == f

    def test_leading_term_multiplicative(self):
        rng = random.Random(105)
        space = small_space(4)
        for order in (GRLEX, LEX, MonomialOrder("grlex", priority=(3, 0, 2, 1))):
            for _ in range(300):
                a = random_poly(rng, space, 7, allow_zero=False)
                b = random_poly(rng, space, 7, allow_zero=False)
                ma, ca = leading_term(a, order)
                mb, cb = leading_term(b, order)
                mono = tuple(x + y for x, y in zip(ma, mb))
                assert leading_term(a * b, order) == (mono, ca * cb % 7)

    def test_point_count_coefficient_identity(self):
        # For deg g <= v(p-1), sum_{a in F_p^v} g(a) = (-1)^v [prod x_i^{p-1}] g.
        rng = random.Random(106)
        for p in (3, 5):
            for v in (1, 2, 3):
                space = small_space(v)
                full = (p - 1,) * v
                for _ in range(40):
                    terms = {}
                    for _ in range(rng.randrange(1, 6)):
                        mono = tuple(rng.randrange(p) for _ in range(v))
                        terms[mono] = rng.randrange(1, p)
                    if rng.random() < 0.5:
                        terms[full] = rng.randrange(1, p)
                    g = Polynomial(space, p, terms)
                    total = 0
                    for point in itertools.product(range(p), repeat=v):
                        total = (total + evaluate(g, point)) % p
                    expected = (-1) ** v * coefficient_of(g, full) % p
                    assert total == expected


class TestTruncatedAccumulator:
    def test_matches_sparse_pipeline(self):
        rng = random.Random(107)
        space = small_space(3)
        ctx = TruncationContext(PrimeModulus(5), space)
        for _ in range(100):
            a = random_poly(rng, space, 5, max_exp=4, allow_zero=False)
            b = random_poly(rng, space, 5, max_exp=4)
            acc = TruncatedAccumulator(a, ctx).mul_poly(b).mul_poly(a)
            direct = truncated_mul(truncated_mul(a, b, ctx), a, ctx)
            assert acc.to_polynomial() == direct
            assert acc.is_zero == direct.is_zero
            assert acc.nnz() == len(direct)
            for mono, c in direct.items():
                assert acc.coeff(mono) == c

    def test_equals_monomial(self):
        space = small_space(2)
        ctx = TruncationContext(PrimeModulus(3), space)
        acc = TruncatedAccumulator(parse_poly("2*z1*z2", space, 3), ctx)
        assert acc.equals_monomial((1, 1), 2)
        assert acc.equals_monomial((1, 1), -1)
        assert not acc.equals_monomial((1, 1), 1)
        assert not acc.equals_monomial((1, 0), 2)


class TestPrimeModulus:
    def test_accepts_odd_primes(self):
        assert PrimeModulus(3).q == 3
        assert PrimeModulus(3, 2).q == 9
        assert PrimeModulus(31, 3).q == 29791

    @pytest.mark.parametrize("p", [2, 4, 9, 1, -3, 2**31 + 11])
    def test_rejects_bad_primes(self, p):
        with pytest.raises(ValueError):
            PrimeModulus(p)

    def test_rejects_bad_exponent(self):
        with pytest.raises(ValueError):
            PrimeModulus(3, 0)
