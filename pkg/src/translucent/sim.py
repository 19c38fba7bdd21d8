"""Seeded wiretap simulation.

Plays N sender-to-recipient sessions per epoch against a wiretapping
escrow authority and records, per session, what the authority attempted
(its *believed* coverage: every label matching its good slot) versus what
it actually recovered (ground truth it can never observe). An optional
disclosure event midway through the first epoch reveals which early
sessions were decrypted, letting an evading sender infer the good slot
and avoid it; key rotation at the epoch boundary resets that knowledge.

Everything is a pure function of the config. Per-session randomness comes
from SHA-256-derived substreams of the one seed, so any session can be
replayed (or run concurrently) independently of the rest, and reports are
byte-stable across runs and platforms.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field

from .adversary import (
    RevealedRecord,
    choose_evading_index,
    forge_offlist_parameter,
    encrypt_malformed,
    infer_escrow_index,
)
from .errors import ConfigInvalidError
from .escrow import (
    EscrowParams,
    EscrowSecret,
    GlobalParams,
    PRESETS,
    gen_escrow_keys,
    rotate_escrow_keys,
    setup_global,
)
from .protocol import (
    RecipientKeypair,
    decrypt_escrow,
    decrypt_recipient,
    encrypt,
    gen_recipient_keys,
)


@dataclass(frozen=True)
class HonestUniform:
    """Protocol-following sender: slot index uniform over [1, t]."""


@dataclass(frozen=True)
class Malformed:
    """Off-list c3 forger; the label is uniform or pinned to fixed_index."""

    fixed_index: int | None = None


@dataclass(frozen=True)
class Evading:
    """Honest ciphertexts, but avoids the good slot once it is inferred."""


SenderStrategy = HonestUniform | Malformed | Evading


@dataclass(frozen=True)
class SimConfig:
    preset: str = "test64"
    t: int = 4
    sessions: int = 1000
    epochs: int = 1
    disclosure_at: int | None = None
    strategy: SenderStrategy = field(default_factory=HonestUniform)
    seed: int = 0


@dataclass(frozen=True)
class SessionRecord:
    """Ground truth for one simulated transmission."""

    epoch: int
    session: int
    index_used: int
    honest: bool
    s_true: int
    bob_recovered: bool
    escrow_attempted: bool
    escrow_candidate: int | None
    escrow_correct: bool


@dataclass(frozen=True)
class InferenceEvent:
    """A disclosure let the sender pin the good slot at this session."""

    session: int
    ell_hat: int


@dataclass(frozen=True)
class EpochSummary:
    epoch: int
    sessions: int
    attempted: int
    correct: int
    believed_rate: float
    actual_rate: float
    inferences: tuple[InferenceEvent, ...]


@dataclass(frozen=True)
class SimReport:
    config: SimConfig
    seed: int
    epochs: tuple[EpochSummary, ...]
    records: tuple[SessionRecord, ...]


@dataclass(frozen=True)
class EpochState:
    """Everything a session needs: the group, the recipient, this epoch's keys."""

    glob: GlobalParams
    recipient: RecipientKeypair
    secret: EscrowSecret
    params: EscrowParams


def substream(seed: int, *path: int | str) -> random.Random:
    """Independent RNG derived from the run seed and a label path.

    The state is Random(SHA-256(seed || path)), so streams for different
    labels never correlate and any one stream can be rebuilt in isolation.
    """
    if not 0 <= seed < 1 << 64:
        raise ConfigInvalidError(f"seed {seed} is not a 64-bit unsigned integer")
    h = hashlib.sha256()
    h.update(seed.to_bytes(8, "big"))
    for part in path:
        if isinstance(part, bool) or not isinstance(part, (int, str)):
            raise TypeError(f"stream labels are ints or strings, got {part!r}")
        if isinstance(part, int):
            h.update(b"\x00" + part.to_bytes(8, "big", signed=False))
        else:
            h.update(b"\x01" + part.encode("utf-8"))
    return random.Random(int.from_bytes(h.digest(), "big"))


def _choose_index(
    strategy: SenderStrategy,
    t: int,
    rng: random.Random,
    inferred_ell: int | None,
) -> int:
    if isinstance(strategy, Malformed) and strategy.fixed_index is not None:
        return strategy.fixed_index
    if isinstance(strategy, Evading) and inferred_ell is not None:
        return choose_evading_index(t, inferred_ell, rng)
    return rng.randrange(1, t + 1)


def run_session(
    state: EpochState,
    strategy: SenderStrategy,
    rng: random.Random,
    session: int,
    inferred_ell: int | None = None,
) -> SessionRecord:
    """Play one transmission and record both sides' outcomes.

    Draw order within the session stream is fixed: index, s, k, then (for
    malformed senders) the off-list element.
    """
    glob = state.glob
    index = _choose_index(strategy, state.params.t, rng, inferred_ell)
    s = rng.randrange(1, glob.rho)
    k = rng.randrange(1, glob.rho - 1)

    honest = not isinstance(strategy, Malformed)
    if honest:
        ct = encrypt(glob, state.recipient.y_b, state.params, index, s, k)
    else:
        forged = forge_offlist_parameter(glob, state.params, rng)
        ct = encrypt_malformed(
            glob, state.recipient.y_b, forged.v_hat, index, s, k, t=state.params.t
        )

    bob_recovered = decrypt_recipient(glob, state.recipient.x_b, ct) == s
    attempt = decrypt_escrow(glob, state.secret, ct, force_attempt=False)
    correct = attempt.attempted and attempt.candidate == s

    return SessionRecord(
        epoch=state.secret.epoch,
        session=session,
        index_used=index,
        honest=honest,
        s_true=s,
        bob_recovered=bob_recovered,
        escrow_attempted=attempt.attempted,
        escrow_candidate=attempt.candidate,
        escrow_correct=correct,
    )


def aggregate_epoch(
    epoch: int,
    records: list[SessionRecord] | tuple[SessionRecord, ...],
    inferences: tuple[InferenceEvent, ...] = (),
) -> EpochSummary:
    """Order-independent per-epoch tallies."""
    n = len(records)
    attempted = sum(1 for r in records if r.escrow_attempted)
    correct = sum(1 for r in records if r.escrow_correct)
    return EpochSummary(
        epoch=epoch,
        sessions=n,
        attempted=attempted,
        correct=correct,
        believed_rate=attempted / n,
        actual_rate=correct / n,
        inferences=inferences,
    )


def _validate_config(config: SimConfig) -> None:
    if config.preset not in PRESETS:
        raise ConfigInvalidError(f"unknown preset {config.preset!r}")
    if config.t < 1:
        raise ConfigInvalidError("t must be >= 1")
    if config.sessions < 1:
        raise ConfigInvalidError("sessions must be >= 1")
    if config.epochs < 1:
        raise ConfigInvalidError("epochs must be >= 1")
    if not 0 <= config.seed < 1 << 64:
        raise ConfigInvalidError("seed must be a 64-bit unsigned integer")
    if config.disclosure_at is not None and not 1 <= config.disclosure_at <= config.sessions:
        raise ConfigInvalidError(
            f"disclosure_at = {config.disclosure_at} outside [1, {config.sessions}]"
        )
    if isinstance(config.strategy, Malformed):
        fixed = config.strategy.fixed_index
        if fixed is not None and not 1 <= fixed <= config.t:
            raise ConfigInvalidError(f"fixed index {fixed} outside [1, {config.t}]")
    elif isinstance(config.strategy, Evading):
        if config.t == 1 and config.disclosure_at is not None:
            raise ConfigInvalidError("evasion is impossible with t = 1")
    elif not isinstance(config.strategy, HonestUniform):
        raise ConfigInvalidError(f"unknown strategy {config.strategy!r}")


def run_simulation(config: SimConfig) -> SimReport:
    """Run the full multi-epoch simulation described by `config`.

    The disclosure event, when configured, fires once -- in the first
    epoch, after `disclosure_at` sessions -- mirroring a single court case.
    It reveals (index used, decrypted?) for the sessions so far; the
    resulting inference is recorded, and an evading sender then avoids the
    inferred slot for the rest of that epoch. Rotated epochs start with the
    inference wiped, so later epochs show steady-state behavior again.
    """
    _validate_config(config)
    glob = setup_global(config.preset)
    recipient = gen_recipient_keys(glob, substream(config.seed, "recipient"))

    all_records: list[SessionRecord] = []
    summaries: list[EpochSummary] = []
    secret: EscrowSecret | None = None
    params: EscrowParams | None = None

    for epoch in range(config.epochs):
        key_rng = substream(config.seed, "escrow", epoch)
        if epoch == 0:
            secret, params = gen_escrow_keys(glob, config.t, key_rng)
        else:
            secret, params = rotate_escrow_keys(glob, config.t, key_rng, secret.epoch)
        state = EpochState(glob=glob, recipient=recipient, secret=secret, params=params)

        inferred: int | None = None
        events: list[InferenceEvent] = []
        epoch_records: list[SessionRecord] = []
        for session in range(1, config.sessions + 1):
            rng = substream(config.seed, "session", epoch, session)
            record = run_session(state, config.strategy, rng, session, inferred)
            epoch_records.append(record)

            if epoch == 0 and config.disclosure_at == session:
                inference = infer_escrow_index(
                    RevealedRecord(r.index_used, r.escrow_correct) for r in epoch_records
                )
                if inference.known:
                    events.append(InferenceEvent(session=session, ell_hat=inference.ell_hat))
                    inferred = inference.ell_hat

        summaries.append(aggregate_epoch(epoch, epoch_records, tuple(events)))
        all_records.extend(epoch_records)

    return SimReport(
        config=config,
        seed=config.seed,
        epochs=tuple(summaries),
        records=tuple(all_records),
    )


def summarize(report: SimReport) -> list[tuple]:
    """One row per epoch: (epoch, sessions, attempted, correct, believed_rate,
    actual_rate, inferred_index-or-None). Column order is fixed."""
    rows = []
    for epoch in report.epochs:
        inferred = epoch.inferences[-1].ell_hat if epoch.inferences else None
        rows.append(
            (
                epoch.epoch,
                epoch.sessions,
                epoch.attempted,
                epoch.correct,
                epoch.believed_rate,
                epoch.actual_rate,
                inferred,
            )
        )
    return rows
