"""Shared test helpers: independent oracles, a scriptable RNG, record zoo.

The oracles deliberately avoid the library's code paths (and Python's
three-argument pow) so expected values are computed by a second route.
"""

from __future__ import annotations

import random

from translucent import (
    Ciphertext,
    RecipientPublic,
    RecipientSecret,
    gen_escrow_keys,
    setup_global,
)


def slow_mod_exp(base: int, exponent: int, modulus: int) -> int:
    """base**exponent mod modulus by literal repeated multiplication."""
    result = 1
    for _ in range(exponent):
        result = (result * base) % modulus
    return result


def scan_inverse(a: int, modulus: int) -> int:
    """Brute-force scan for the multiplicative inverse."""
    for b in range(1, modulus):
        if (a * b) % modulus == 1:
            return b
    raise AssertionError(f"{a} has no inverse mod {modulus}")


def trial_division_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def element_order(a: int, modulus: int) -> int:
    """Multiplicative order by stepping powers until 1 reappears."""
    value = a % modulus
    order = 1
    while value != 1:
        value = (value * a) % modulus
        order += 1
    return order


class ScriptedRng:
    """Stands in for random.Random, replaying a fixed list of draws."""

    def __init__(self, values):
        self.values = list(values)

    def randrange(self, start, stop=None):
        if stop is None:
            start, stop = 0, start
        value = self.values.pop(0)
        assert start <= value < stop, f"scripted draw {value} outside [{start}, {stop})"
        return value


# small safe primes (p = 2q + 1) for custom-setup fuzzing
SMALL_SAFE_PRIMES = (5, 7, 11, 23, 47, 59, 83, 107)


def small_custom_setup(rng: random.Random):
    """Random valid custom global parameters over a tiny safe prime."""
    rho = rng.choice(SMALL_SAFE_PRIMES)
    q = (rho - 1) // 2
    g = next(
        g
        for g in range(2, rho)
        if pow(g, 2, rho) != 1 and pow(g, q, rho) != 1
    )
    return setup_global(rho=rho, g=g, factors=[2, q], seed=f"fuzz-{rng.randrange(1 << 30)}")


def sample_records(seed: int):
    """One random record of every serializable kind."""
    rng = random.Random(seed)
    glob = small_custom_setup(rng)
    toy = setup_global("toy23")
    t = rng.randrange(1, 9)
    secret, params = gen_escrow_keys(toy, t, rng)
    return [
        glob,
        toy,
        params,
        secret,
        RecipientPublic(y_b=rng.randrange(1, toy.rho)),
        RecipientSecret(x_b=rng.randrange(1, toy.rho - 1)),
        Ciphertext(
            c1=rng.randrange(1, toy.rho),
            c2=rng.randrange(1, toy.rho),
            c3=rng.randrange(1, toy.rho),
            i=rng.randrange(1, t + 1),
        ),
    ]
