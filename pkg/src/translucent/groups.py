"""Modular arithmetic over a prime-order multiplicative group.

All group elements are plain Python ints in [1, rho-1] for an odd prime
modulus rho; exponents are non-negative ints. Python's arbitrary-precision
integers make a dedicated bignum type unnecessary.

WARNING: nothing here is constant-time. This package is a protocol study
and simulation artifact, not production cryptography.
"""

from __future__ import annotations

import hashlib

from .errors import (
    ExhaustedError,
    IncompleteFactorizationError,
    NotInvertibleError,
    OutOfGroupError,
)

# First 12 primes: a deterministic Miller-Rabin base set proven complete
# for every n < 2^64.
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_DETERMINISTIC_LIMIT = 1 << 64

_MAX_DERIVE_ATTEMPTS = 1000


def in_group(x: int, rho: int) -> bool:
    """True iff x is a member of the multiplicative group mod rho."""
    return 1 <= x <= rho - 1


def check_group_element(x: int, rho: int, name: str = "element") -> int:
    """Return x unchanged, or raise OutOfGroupError if x is not in [1, rho-1]."""
    if not in_group(x, rho):
        raise OutOfGroupError(f"{name} = {x} is not in [1, {rho - 1}]")
    return x


def mod_exp(base: int, exponent: int, rho: int) -> int:
    """base**exponent mod rho via square-and-multiply.

    Delegates to the built-in three-argument pow, which runs in
    O(bits(exponent)) modular multiplications. The exponent must be
    non-negative; negative exponents are a caller error.
    """
    if exponent < 0:
        raise ValueError("exponent must be non-negative")
    return pow(base, exponent, rho)


def mod_inv(a: int, rho: int) -> int:
    """Multiplicative inverse of a modulo the prime rho."""
    if a % rho == 0:
        raise NotInvertibleError(f"{a} has no inverse mod {rho}")
    return pow(a, -1, rho)


def _miller_rabin_witness(n: int, a: int, d: int, r: int) -> bool:
    """True iff a witnesses the compositeness of n, where n-1 = d * 2^r."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(r - 1):
        x = (x * x) % n
        if x == n - 1:
            return False
    return True


def is_probable_prime(n: int, rounds: int = 40) -> bool:
    """Miller-Rabin primality test.

    For n < 2^64 the deterministic 12-prime base set is used and the answer
    is exact. For larger n, `rounds` bases are derived by hashing (n, round
    index) so repeated calls give identical answers on every platform; the
    bases are as good as independently drawn ones for any n not crafted
    against SHA-256.
    """
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False

    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1

    if n < _DETERMINISTIC_LIMIT:
        bases = _SMALL_PRIMES
    else:
        bases = _hash_derived_bases(n, rounds)
    return not any(_miller_rabin_witness(n, a, d, r) for a in bases)


def _hash_derived_bases(n: int, rounds: int) -> list:
    n_bytes = n.to_bytes((n.bit_length() + 7) // 8, "big")
    bases = []
    for i in range(rounds):
        digest = hashlib.sha256(n_bytes + i.to_bytes(8, "big")).digest()
        bases.append(int.from_bytes(digest, "big") % (n - 3) + 2)
    return bases


def validate_generator(g: int, rho: int, prime_factors: list[int] | tuple[int, ...]) -> bool:
    """True iff g generates the full multiplicative group mod rho.

    `prime_factors` must be the complete list of distinct primes dividing
    rho-1; g is a generator exactly when g^((rho-1)/q) != 1 for each q.
    Completeness itself cannot be checked, but a list whose product does
    not even divide rho-1 is certainly wrong and is rejected.
    """
    distinct = set(prime_factors)
    if not distinct:
        raise IncompleteFactorizationError("empty factor list")
    product = 1
    for q in distinct:
        product *= q
    if (rho - 1) % product != 0:
        raise IncompleteFactorizationError(
            f"product of listed primes {sorted(distinct)} does not divide {rho - 1}"
        )
    if not in_group(g, rho):
        return False
    return all(pow(g, (rho - 1) // q, rho) != 1 for q in distinct)


def derive_nums_value(seed: bytes, rho: int) -> int:
    """Hash `seed` into the group, yielding a public constant whose discrete
    log nobody can plausibly know.

    SHA-256 digests of seed || counter (counter as an 8-byte big-endian
    suffix) are concatenated until at least bit_length(rho) bits are
    available, and the concatenation is reduced mod rho. Results 0 and 1
    are rejected by bumping the starting counter and rehashing, so the
    output always lies in [2, rho-1]. Pure function of (seed, rho).
    """
    bits = rho.bit_length()
    counter = 0
    for _ in range(_MAX_DERIVE_ATTEMPTS):
        buf = b""
        c = counter
        while 8 * len(buf) < bits:
            buf += hashlib.sha256(seed + c.to_bytes(8, "big")).digest()
            c += 1
        u = int.from_bytes(buf, "big") % rho
        if u >= 2:
            return u
        counter += 1
    raise ExhaustedError("could not derive a group constant from this seed")
