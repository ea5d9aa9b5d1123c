"""Degree-bounded membership: worked instances and the solver itself."""

import random

import pytest

from permcheck.fppoly import Polynomial, parse_poly
from permcheck.frobcheck import colon_membership
from permcheck.linmember import (
    LinearSystem,
    MembershipInstance,
    SizeGuardError,
    build_system,
    gaussian_solve,
    member_bounded,
    monomials_of_degree,
    monomials_up_to,
)
from permcheck.shapes import MatrixShape, build_matrix, permanental_generators
from permcheck.witnesses import minimal_primes_generic, witness_generic
from helpers import random_poly


class TestMonomialEnumeration:
    def test_degree_counts(self):
        assert len(list(monomials_of_degree(3, 2))) == 6
        assert len(list(monomials_up_to(2, 3))) == 10

    def test_deterministic_order(self):
        assert list(monomials_of_degree(2, 2)) == [(2, 0), (1, 1), (0, 2)]


class TestGaussianSolve:
    def test_identity_system(self):
        system = LinearSystem(
            row_labels=[0, 1],
            col_labels=[0, 1],
            matrix=[{0: 1}, {1: 1}],
            rhs=[2, 1],
            p=3,
        )
        assert gaussian_solve(system) == [2, 1]

    def test_inconsistent_1x1(self):
        system = LinearSystem([0], [0], [{}], [1], 3)
        assert gaussian_solve(system) is None

    def test_random_consistent_systems(self):
        rng = random.Random(21)
        for _ in range(300):
            p = rng.choice([3, 5, 7])
            nrows, ncols = rng.randrange(1, 7), rng.randrange(1, 7)
            matrix = []
            for _ in range(nrows):
                support = rng.sample(range(ncols), rng.randrange(0, ncols + 1))
                matrix.append({c: rng.randrange(1, p) for c in support})
            x0 = [rng.randrange(p) for _ in range(ncols)]
            rhs = [sum(v * x0[c] for c, v in row.items()) % p for row in matrix]
            solution = gaussian_solve(LinearSystem([None] * nrows, list(range(ncols)), matrix, rhs, p))
            assert solution is not None
            for row, b in zip(matrix, rhs):
                assert sum(v * solution[c] for c, v in row.items()) % p == b

    def test_detects_random_inconsistency(self):
        # a clearly inconsistent pair of identical rows with different rhs
        system = LinearSystem([0, 1], [0, 1], [{0: 1, 1: 2}, {0: 1, 1: 2}], [1, 2], 3)
        assert gaussian_solve(system) is None


class TestMemberBounded:
    def setup_method(self):
        self.mat23 = build_matrix(MatrixShape.generic(2, 3))
        self.gens23 = permanental_generators(self.mat23, 2, char=3)

    def test_entry_triple_member(self):
        target = parse_poly("x1_1*x1_2*x2_3", self.mat23.space, 3)
        comb = member_bounded(MembershipInstance(target, self.gens23.generators, 3))
        assert comb is not None
        total = Polynomial.zero(self.mat23.space, 3)
        for gi, h in comb.items():
            total = total + h * self.gens23.generators[gi]
        assert total == target

    def test_squared_entry_member(self):
        mat = build_matrix(MatrixShape.generic(3, 3))
        gens = permanental_generators(mat, 2, char=5)
        target = parse_poly("x1_1^2*x2_2*x3_3", mat.space, 5)
        assert member_bounded(MembershipInstance(target, gens.generators, 4)) is not None

    def test_degree_two_absence_matches_brute_force(self):
        target = parse_poly("x1_1*x1_2", self.mat23.space, 3)
        assert member_bounded(MembershipInstance(target, self.gens23.generators, 2)) is None
        # independent oracle: all F_3-combinations of the three generators
        found = False
        g1, g2, g3 = self.gens23.generators
        for c1 in range(3):
            for c2 in range(3):
                for c3 in range(3):
                    if g1 * c1 + g2 * c2 + g3 * c3 == target:
                        found = True
        assert not found

    def test_random_combinations_are_members(self):
        rng = random.Random(31)
        space = self.mat23.space

        def random_linear():
            terms = {(0,) * space.count: rng.randrange(3)}
            for _ in range(rng.randrange(0, 3)):
                mono = [0] * space.count
                mono[rng.randrange(space.count)] = 1
                terms[tuple(mono)] = rng.randrange(3)
            return Polynomial(space, 3, terms)

        for _ in range(25):
            multipliers = [random_linear() for _ in self.gens23.generators]
            target = Polynomial.zero(space, 3)
            for h, g in zip(multipliers, self.gens23.generators):
                target = target + h * g
            if target.is_zero:
                continue
            bound = target.total_degree()
            comb = member_bounded(MembershipInstance(target, self.gens23.generators, bound))
            assert comb is not None
            # monotonicity: membership persists at larger bounds
            assert member_bounded(
                MembershipInstance(target, self.gens23.generators, bound + 1)
            ) is not None

    def test_size_guard(self):
        target = parse_poly("x1_1*x1_2*x2_3", self.mat23.space, 3)
        inst = MembershipInstance(target, self.gens23.generators, 3)
        with pytest.raises(SizeGuardError) as err:
            member_bounded(inst, max_entries=10)
        assert err.value.rows > 0 and err.value.cols > 0

    def test_target_degree_above_bound_rejected(self):
        target = parse_poly("x1_1*x1_2*x2_3", self.mat23.space, 3)
        with pytest.raises(ValueError):
            MembershipInstance(target, self.gens23.generators, 2)

    def test_agreement_with_colon_membership_2x3(self):
        # same verdicts as the structural decision on every minimal prime
        p = 3
        f = witness_generic(2, 3, p)
        for prime in minimal_primes_generic(2, 3):
            gens = [prime.omega(p) ** (p - 1)] + [g**p for g in prime.generators(p)]
            structural = colon_membership(f, prime, p) is not None
            linear = member_bounded(
                MembershipInstance(f, tuple(gens), f.total_degree()),
                max_entries=2 * 10**8,
            )
            assert (linear is not None) == structural
            # and the constant 1 is correctly refused on both routes
            one = Polynomial.one(f.space, p)
            assert colon_membership(one, prime, p) is None
            assert member_bounded(MembershipInstance(one, tuple(gens), 0)) is None
