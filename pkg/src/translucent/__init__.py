"""Translucent encryption toolkit.

A study implementation of fractional key escrow over ElGamal: an escrow
authority publishes a chain of t candidate keys of which it holds exactly
one trapdoor, honest senders give it a 1/t chance per message, and two
classic sender-side attacks (off-list third components, good-slot
inference after disclosure) drive its real coverage to zero. Ships with a
seeded wiretap simulator that measures believed versus actual recovery.

Not production cryptography: no constant-time arithmetic, no payload
encryption, toy-size parameter presets.
"""

from .adversary import (
    IndexInference,
    OfflistParameter,
    RevealedRecord,
    choose_evading_index,
    encrypt_malformed,
    forge_offlist_parameter,
    infer_escrow_index,
)
from .escrow import (
    EscrowParams,
    EscrowSecret,
    GlobalParams,
    PRESETS,
    gen_escrow_keys,
    make_escrow_keys,
    rotate_escrow_keys,
    setup_global,
    verify_escrow_params,
)
from .groups import (
    derive_nums_value,
    is_probable_prime,
    mod_exp,
    mod_inv,
    validate_generator,
)
from .protocol import (
    Ciphertext,
    EscrowAttempt,
    RecipientKeypair,
    decrypt_escrow,
    decrypt_recipient,
    encrypt,
    gen_recipient_keys,
    keypair_from_secret,
)
from .records import (
    RecipientPublic,
    RecipientSecret,
    decode_record,
    emit_report_csv,
    encode_record,
)
from .sim import (
    EpochState,
    EpochSummary,
    Evading,
    HonestUniform,
    InferenceEvent,
    Malformed,
    SessionRecord,
    SimConfig,
    SimReport,
    aggregate_epoch,
    run_session,
    run_simulation,
    substream,
    summarize,
)

__version__ = "0.1.0"
