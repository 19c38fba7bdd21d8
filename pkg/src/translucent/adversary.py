"""Sender-side attacks on the escrow scheme.

Two ways a sender defeats the authority while staying indistinguishable
on the wire:

* malformed ciphertexts -- build c3 from a random off-list element instead
  of any published V_i. The recipient still decrypts via (c1, c2); the
  authority's candidate is garbage even when the label matches its slot,
  and no public check can tell.

* index inference -- once disclosed case evidence shows which wiretapped
  sessions were actually decrypted, the good slot is read off directly,
  and the sender simply stops using it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

from .errors import (
    ExhaustedError,
    InconsistentEvidenceError,
    IndexOutOfRangeError,
    NoEvasionPossibleError,
    NonceOutOfRangeError,
    OutOfGroupError,
    SessionKeyOutOfGroupError,
)
from .escrow import EscrowParams, GlobalParams
from .groups import in_group, mod_exp
from .protocol import Ciphertext

_MAX_FORGE_REJECTIONS = 10**6


@dataclass(frozen=True)
class OfflistParameter:
    """A group element guaranteed absent from the chain it was forged against."""

    v_hat: int
    avoided: tuple[int, ...]


@dataclass(frozen=True)
class RevealedRecord:
    """One disclosed wiretap outcome: the slot the sender labeled, and whether
    the disclosed plaintext shows the authority recovered that session's key."""

    index_used: int
    escrow_decrypted: bool


@dataclass(frozen=True)
class IndexInference:
    """What the sender learned about the good slot: ell_hat, or nothing."""

    ell_hat: int | None = None

    @property
    def known(self) -> bool:
        return self.ell_hat is not None


def forge_offlist_parameter(
    glob: GlobalParams, params: EscrowParams, rng: random.Random
) -> OfflistParameter:
    """Uniform group element rejection-sampled until it misses the chain."""
    avoided = tuple(params.v)
    blocked = set(avoided)
    if glob.rho - 1 <= len(blocked):
        raise ExhaustedError("chain covers the whole group; nothing is off-list")
    for _ in range(_MAX_FORGE_REJECTIONS):
        candidate = rng.randrange(1, glob.rho)
        if candidate not in blocked:
            return OfflistParameter(v_hat=candidate, avoided=avoided)
    raise ExhaustedError("rejection sampling failed to leave the chain")


def encrypt_malformed(
    glob: GlobalParams,
    y_b: int,
    v_hat: int,
    i: int,
    s: int,
    k: int,
    t: int,
) -> Ciphertext:
    """Encrypt with c3 built from v_hat instead of the published V_i.

    The label i is free: the attacker needn't know the good slot. The
    recipient decrypts normally; the authority's candidate on a label match
    is s * (v_hat / V_ell)^k, which misses s whenever v_hat differs from
    V_ell (up to a negligible order coincidence). Passing v_hat equal to
    some V_i degenerates to honest encryption.
    """
    if not 1 <= i <= t:
        raise IndexOutOfRangeError(f"index {i} outside [1, {t}]")
    if not in_group(s, glob.rho):
        raise SessionKeyOutOfGroupError(f"s = {s} outside [1, {glob.rho - 1}]")
    if not 1 <= k <= glob.rho - 2:
        raise NonceOutOfRangeError(f"k = {k} outside [1, {glob.rho - 2}]")
    if not in_group(v_hat, glob.rho):
        raise OutOfGroupError(f"v_hat = {v_hat} outside [1, {glob.rho - 1}]")
    c1 = mod_exp(glob.g, k, glob.rho)
    c2 = s * mod_exp(y_b, k, glob.rho) % glob.rho
    c3 = s * mod_exp(v_hat, k, glob.rho) % glob.rho
    return Ciphertext(c1=c1, c2=c2, c3=c3, i=i)


def infer_escrow_index(revealed: Iterable[RevealedRecord]) -> IndexInference:
    """Read the good slot off the disclosed records.

    Any record marked escrow-decrypted names the slot outright. Records
    must come from honest traffic within a single escrow epoch; two
    decrypted records naming different slots mean the caller mixed epochs.
    """
    ell_hat: int | None = None
    for record in revealed:
        if not record.escrow_decrypted:
            continue
        if ell_hat is None:
            ell_hat = record.index_used
        elif ell_hat != record.index_used:
            raise InconsistentEvidenceError(
                f"decrypted records name both slot {ell_hat} and slot {record.index_used}"
            )
    return IndexInference(ell_hat=ell_hat)


def choose_evading_index(t: int, known_ell: int, rng: random.Random) -> int:
    """Uniform draw over [1, t] minus the known good slot."""
    if t == 1:
        raise NoEvasionPossibleError("t = 1 leaves no slot to evade to")
    if t < 1:
        raise ValueError("t must be >= 1")
    if not 1 <= known_ell <= t:
        raise ValueError(f"known_ell = {known_ell} outside [1, {t}]")
    draw = rng.randrange(1, t)
    return draw if draw < known_ell else draw + 1
