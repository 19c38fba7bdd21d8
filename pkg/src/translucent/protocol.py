"""Core transmission protocol: one ElGamal encryption plus an escrow slot.

A sender picks a chain index i and nonce k and transmits
{c1, c2, c3, i} = {g^k, s*y_B^k, s*V_i^k, i}. The recipient recovers the
session key s from (c1, c2) alone. The escrow authority can recover s
from (c1, c3) exactly when i happens to be its good slot AND c3 really
was built from V_i -- neither of which the ciphertext proves.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import (
    IndexOutOfRangeError,
    NonceOutOfRangeError,
    SessionKeyOutOfGroupError,
)
from .escrow import EscrowParams, EscrowSecret, GlobalParams
from .groups import mod_exp, mod_inv


@dataclass(frozen=True)
class RecipientKeypair:
    """Recipient's ElGamal keypair: secret exponent x_b, public y_b = g^x_b."""

    x_b: int
    y_b: int


@dataclass(frozen=True)
class Ciphertext:
    """One transmission {c1, c2, c3, i}.

    Only component ranges and the index bound are checkable by third
    parties. Whether c3 actually involves V_i is not an invariant -- it is
    publicly unverifiable, which is what the malformed-ciphertext attack
    exploits.
    """

    c1: int
    c2: int
    c3: int
    i: int


@dataclass(frozen=True)
class EscrowAttempt:
    """Outcome of the authority's decryption pass over one ciphertext.

    `candidate` is just a group element. The authority has no way to test
    whether it equals the session key the recipient obtained, so no
    correctness claim is attached.
    """

    attempted: bool
    candidate: int | None = None

    def __post_init__(self) -> None:
        if self.attempted != (self.candidate is not None):
            raise ValueError("candidate must be present exactly when attempted")


NOT_ATTEMPTED = EscrowAttempt(attempted=False)


def keypair_from_secret(glob: GlobalParams, x_b: int) -> RecipientKeypair:
    """Deterministic keypair for a forced secret exponent (test hook)."""
    if not 1 <= x_b <= glob.rho - 2:
        raise ValueError(f"x_b = {x_b} outside [1, {glob.rho - 2}]")
    return RecipientKeypair(x_b=x_b, y_b=mod_exp(glob.g, x_b, glob.rho))


def gen_recipient_keys(glob: GlobalParams, rng: random.Random) -> RecipientKeypair:
    """Draw x_b uniform in [1, rho-2] and publish y_b = g^x_b."""
    return keypair_from_secret(glob, rng.randrange(1, glob.rho - 1))


def encrypt(
    glob: GlobalParams,
    y_b: int,
    params: EscrowParams,
    i: int,
    s: int,
    k: int,
) -> Ciphertext:
    """Honest encryption of session key s to public key y_b under chain slot i.

    k is explicit so callers control the randomness; the simulator draws it
    from its own streams. k = 0 is excluded: it would transmit s in the clear.
    """
    if not 1 <= i <= params.t:
        raise IndexOutOfRangeError(f"index {i} outside [1, {params.t}]")
    if not 1 <= s <= glob.rho - 1:
        raise SessionKeyOutOfGroupError(f"s = {s} outside [1, {glob.rho - 1}]")
    if not 1 <= k <= glob.rho - 2:
        raise NonceOutOfRangeError(f"k = {k} outside [1, {glob.rho - 2}]")
    c1 = mod_exp(glob.g, k, glob.rho)
    c2 = s * mod_exp(y_b, k, glob.rho) % glob.rho
    c3 = s * mod_exp(params.v[i - 1], k, glob.rho) % glob.rho
    return Ciphertext(c1=c1, c2=c2, c3=c3, i=i)


def decrypt_recipient(glob: GlobalParams, x_b: int, ct: Ciphertext) -> int:
    """Recipient's decryption: s = c2 / c1^x_b. Ignores c3 and i entirely."""
    return ct.c2 * mod_inv(mod_exp(ct.c1, x_b, glob.rho), glob.rho) % glob.rho


def decrypt_escrow(
    glob: GlobalParams,
    secret: EscrowSecret,
    ct: Ciphertext,
    force_attempt: bool = False,
) -> EscrowAttempt:
    """The authority's decryption pass.

    A ciphertext labeled with any index other than the good slot is skipped
    (the authority knows its own ell). On a match it computes the candidate
    c3 / c1^x_l, which equals the true session key only if c3 was honestly
    built from V_ell. `force_attempt` computes the candidate regardless of
    the label, exposing the mismatch value for study.
    """
    if ct.i != secret.ell and not force_attempt:
        return NOT_ATTEMPTED
    candidate = ct.c3 * mod_inv(mod_exp(ct.c1, secret.x_l, glob.rho), glob.rho) % glob.rho
    return EscrowAttempt(attempted=True, candidate=candidate)
