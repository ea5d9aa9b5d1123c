"""Shared independent oracles and random generators for the test suite."""

import itertools

from permcheck.fppoly import Polynomial, VariableSpace


def brute_permanent(mat, rows, cols, char):
    """Permutation-sum symbolic permanent; the oracle for the DP version."""
    rows, cols = tuple(rows), tuple(cols)
    space = mat.space
    total = Polynomial.zero(space, char)
    for perm in itertools.permutations(range(len(cols))):
        term = Polynomial.one(space, char)
        for i, j in enumerate(perm):
            term = term * Polynomial.variable(space, char, mat.entry(rows[i], cols[j]))
        total = total + term
    return total


def random_poly(rng, space, p, max_terms=5, max_exp=3, allow_zero=True):
    n_terms = rng.randrange(0 if allow_zero else 1, max_terms + 1)
    terms = {}
    for _ in range(n_terms):
        mono = tuple(rng.randrange(max_exp + 1) for _ in range(space.count))
        terms[mono] = rng.randrange(1, p)
    return Polynomial(space, p, terms)


def random_point(rng, space, p):
    return tuple(rng.randrange(p) for _ in range(space.count))


def small_space(v, prefix="z"):
    return VariableSpace(tuple(f"{prefix}{i + 1}" for i in range(v)))
