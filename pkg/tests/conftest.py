"""Shared test helpers: oracles and targeted generators."""

from __future__ import annotations

import math
import random
from fractions import Fraction

from branchlink.semigroup import derive_from_generators


def naive_det(rows) -> Fraction:
    """Cofactor-expansion determinant; the independent oracle for small sizes."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(rows[0][0])
    total = Fraction(0)
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        total += (-1) ** j * Fraction(rows[0][j]) * naive_det(minor)
    return total


_PRIMES = (2, 3, 5, 7, 11, 13, 17)


def random_zhs_semigroup(g: int, rng: random.Random):
    """Random generator list whose surface has an integral homology sphere link.

    Takes pairwise coprime exponents (distinct primes) and quotients coprime
    to the remaining gcd levels, which is exactly the classification
    criterion.
    """
    n = list(rng.sample(_PRIMES, g))  # n_1, ..., n_g, pairwise coprime
    e = [math.prod(n[i:]) for i in range(g + 1)]
    m = n[0] + 1 + rng.randrange(0, 8)
    while math.gcd(m, e[0]) != 1:
        m += 1
    beta = [e[0], m * e[1]]
    for i in range(1, g):
        lo = n[i - 1] * beta[i] // e[i + 1] + 1
        c = lo + rng.randrange(0, 10)
        # coprime to n_{i+1} for validity and to e_{i+1} for the integral link
        while math.gcd(c, e[i]) != 1:
            c += 1
        beta.append(c * e[i + 1])
    out = tuple(beta)
    derive_from_generators(out)
    return out
