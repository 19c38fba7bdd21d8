"""Group presets and the escrow authority's published key chain.

The authority publishes t group elements V_1..V_t derived from a single
trapdoor exponent: V_ell = g^x_L for a secret slot ell, and every other
V_j = V_ell * U^(j-ell) where U is a public constant with unknown discrete
log. Anyone can check the chain's structure (consecutive ratios are powers
of U); nobody but the authority can tell which slot has a usable trapdoor.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import (
    InvalidCountError,
    NotGeneratorError,
    NotPrimeError,
)
from .groups import (
    check_group_element,
    derive_nums_value,
    in_group,
    is_probable_prime,
    mod_exp,
    mod_inv,
    validate_generator,
)


@dataclass(frozen=True)
class GlobalParams:
    """The shared public group: prime modulus, generator, and NUMS constant U."""

    rho: int
    g: int
    u: int
    seed: bytes
    preset: str | None = None


@dataclass(frozen=True)
class EscrowSecret:
    """The authority's trapdoor: exponent x_L, good slot ell, chain shape."""

    x_l: int
    ell: int
    t: int
    epoch: int


@dataclass(frozen=True)
class EscrowParams:
    """The published chain V_1..V_t (v[0] is V_1; indices are 1-based)."""

    v: tuple[int, ...]
    t: int
    epoch: int


@dataclass(frozen=True)
class _Preset:
    rho: int
    g: int
    factors: tuple[int, ...]
    seed: bytes
    pinned_u: int | None = None


# toy23 is small enough to cross-check every equation by hand; its U is
# pinned rather than hash-derived so worked examples stay stable.
# test64 and demo512 are fixed safe primes (rho = 2q + 1), so the prime
# factors of the group order are just (2, q).
PRESETS: dict[str, _Preset] = {
    "toy23": _Preset(rho=23, g=5, factors=(2, 11), seed=b"toy23", pinned_u=7),
    "test64": _Preset(
        rho=17851573385854533947,
        g=2,
        factors=(2, 8925786692927266973),
        seed=b"test64/U",
    ),
    "demo512": _Preset(
        rho=int(
            "9b547179677dd63448b54894b2a4543e7e3b0ca198b216ebf8c5e46bf0378cb3"
            "f6de2c108418086fff542e42fc795839f619634f1214ffc34d8b280c9705418b",
            16,
        ),
        g=2,
        factors=(
            2,
            int(
                "4daa38bcb3beeb1a245aa44a59522a1f3f1d8650cc590b75fc62f235f81bc659"
                "fb6f1608420c0437ffaa17217e3cac1cfb0cb1a7890a7fe1a6c594064b82a0c5",
                16,
            ),
        ),
        seed=b"demo512/U",
    ),
}


def setup_global(
    preset: str | None = None,
    *,
    rho: int | None = None,
    g: int | None = None,
    factors: list[int] | tuple[int, ...] | None = None,
    seed: bytes | str | None = None,
) -> GlobalParams:
    """Build validated GlobalParams from a preset label or custom values.

    Custom setups must pass the primality and generator checks; the NUMS
    constant U is then derived from the seed. Preset constants are vetted
    once in the test suite and are not re-validated here.

    Raises NotPrimeError, NotGeneratorError, or IncompleteFactorizationError
    for bad custom inputs, ValueError for an unknown preset label.
    """
    if preset is not None:
        if rho is not None or g is not None or factors is not None or seed is not None:
            raise ValueError("give either a preset label or custom values, not both")
        try:
            spec = PRESETS[preset]
        except KeyError:
            raise ValueError(f"unknown preset {preset!r}") from None
        u = spec.pinned_u
        if u is None:
            u = derive_nums_value(spec.seed, spec.rho)
        return GlobalParams(rho=spec.rho, g=spec.g, u=u, seed=spec.seed, preset=preset)

    if rho is None or g is None or factors is None or seed is None:
        raise ValueError("custom setup needs rho, g, factors, and seed")
    if isinstance(seed, str):
        seed = seed.encode("utf-8")
    if not is_probable_prime(rho):
        raise NotPrimeError(f"{rho} is not prime")
    if not validate_generator(g, rho, factors):
        raise NotGeneratorError(f"{g} does not generate the group mod {rho}")
    u = derive_nums_value(seed, rho)
    return GlobalParams(rho=rho, g=g, u=u, seed=seed, preset=None)


def make_escrow_keys(
    glob: GlobalParams, t: int, x_l: int, ell: int, epoch: int = 0
) -> tuple[EscrowSecret, EscrowParams]:
    """Deterministically build the secret and the chain from explicit (x_l, ell).

    V_ell = g^x_l; V_j = V_ell * U^(j-ell), descending powers realized through
    mod_inv(U). Exposed separately from gen_escrow_keys so worked examples can
    pin the randomness.
    """
    if t < 1:
        raise InvalidCountError("chain length t must be >= 1")
    if not 1 <= ell <= t:
        raise ValueError(f"ell = {ell} outside [1, {t}]")
    if not 1 <= x_l <= glob.rho - 2:
        raise ValueError(f"x_l = {x_l} outside [1, {glob.rho - 2}]")

    v_ell = mod_exp(glob.g, x_l, glob.rho)
    u_inv = mod_inv(glob.u, glob.rho)
    v1 = v_ell * mod_exp(u_inv, ell - 1, glob.rho) % glob.rho
    chain = [v1]
    for _ in range(t - 1):
        chain.append(chain[-1] * glob.u % glob.rho)

    secret = EscrowSecret(x_l=x_l, ell=ell, t=t, epoch=epoch)
    params = EscrowParams(v=tuple(chain), t=t, epoch=epoch)
    return secret, params


def gen_escrow_keys(
    glob: GlobalParams, t: int, rng: random.Random
) -> tuple[EscrowSecret, EscrowParams]:
    """Draw a fresh trapdoor and chain: x_l uniform in [1, rho-2], then ell
    uniform in [1, t] (the draw order is part of the seeding contract)."""
    if t < 1:
        raise InvalidCountError("chain length t must be >= 1")
    x_l = rng.randrange(1, glob.rho - 1)
    ell = rng.randrange(1, t + 1)
    return make_escrow_keys(glob, t, x_l, ell, epoch=0)


def rotate_escrow_keys(
    glob: GlobalParams, t: int, rng: random.Random, previous_epoch: int
) -> tuple[EscrowSecret, EscrowParams]:
    """Fresh (x_l, ell) for the next epoch; counters the index-reveal leak."""
    if t < 1:
        raise InvalidCountError("chain length t must be >= 1")
    x_l = rng.randrange(1, glob.rho - 1)
    ell = rng.randrange(1, t + 1)
    return make_escrow_keys(glob, t, x_l, ell, epoch=previous_epoch + 1)


def verify_escrow_params(glob: GlobalParams, params: EscrowParams) -> bool:
    """Public well-formedness check: V_j / V_1 == U^(j-1) for every j in [2, t].

    Vacuously true for t = 1. A passing chain proves structure only; it says
    nothing about who, if anyone, knows a trapdoor for any slot.
    """
    if params.t < 1:
        raise InvalidCountError("chain length t must be >= 1")
    if len(params.v) != params.t:
        raise ValueError(f"chain holds {len(params.v)} elements, t = {params.t}")
    for j, v in enumerate(params.v, start=1):
        check_group_element(v, glob.rho, name=f"V_{j}")
    if params.t <= 1:
        return True
    v1_inv = mod_inv(params.v[0], glob.rho)
    power = 1
    for j in range(2, params.t + 1):
        power = power * glob.u % glob.rho
        if params.v[j - 1] * v1_inv % glob.rho != power:
            return False
    return True
