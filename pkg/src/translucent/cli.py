"""Command-line surface.

Every command is a thin composition of library calls: load records, run
one operation, write records or print a result. No protocol math lives
here. Exit codes: 0 success, 1 usage or I/O error, 2 validation or
verification failure.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import records
from .adversary import encrypt_malformed, forge_offlist_parameter
from .errors import TranslucentError, ValidationError
from .escrow import (
    EscrowParams,
    EscrowSecret,
    GlobalParams,
    PRESETS,
    gen_escrow_keys,
    setup_global,
    verify_escrow_params,
)
from .groups import in_group
from .protocol import (
    Ciphertext,
    decrypt_escrow,
    decrypt_recipient,
    encrypt,
    gen_recipient_keys,
)
from .records import RecipientPublic, RecipientSecret, decode_record, encode_record
from .sim import Evading, HonestUniform, Malformed, SimConfig, run_simulation

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2


class _UsageError(Exception):
    """Bad flag combination detected after argparse."""


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1, not argparse's default 2 (2 is reserved for
    # validation failures)
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def _hex_int(text: str) -> int:
    try:
        return int(text, 16)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not hexadecimal") from None


def _hex_list(text: str) -> list[int]:
    return [_hex_int(part) for part in text.split(",") if part]


def _load(path: str, expected: type, label: str):
    with open(path, "rb") as handle:
        record = decode_record(handle.read())
    if not isinstance(record, expected):
        raise ValidationError(f"{path} does not hold a {label} record")
    return record


def _check_members(glob: GlobalParams, **values: int) -> None:
    for name, value in values.items():
        if not in_group(value, glob.rho):
            raise ValidationError(f"{name} = {value:x} is not in the group mod {glob.rho:x}")


def _write(path: str, record) -> None:
    records.write_text_atomic(path, encode_record(record))


# --- command handlers ---


def _cmd_setup(args) -> int:
    custom = [args.rho, args.g, args.factors, args.seed]
    if args.preset is not None:
        if any(value is not None for value in custom):
            raise _UsageError("--preset excludes --rho/--g/--factors/--seed")
        glob = setup_global(args.preset)
    else:
        if any(value is None for value in custom):
            raise _UsageError("custom setup needs --rho, --g, --factors, and --seed")
        glob = setup_global(rho=args.rho, g=args.g, factors=args.factors, seed=args.seed)
    _write(args.out, glob)
    return EXIT_OK


def _cmd_escrow_keygen(args) -> int:
    glob = _load(args.global_file, GlobalParams, "global")
    secret, params = gen_escrow_keys(glob, args.t, random.Random(args.seed))
    _write(args.out_public, params)
    _write(args.out_secret, secret)
    return EXIT_OK


def _cmd_verify_params(args) -> int:
    glob = _load(args.global_file, GlobalParams, "global")
    params = _load(args.params, EscrowParams, "escrow-public")
    _check_members(glob, **{f"V_{j}": v for j, v in enumerate(params.v, start=1)})
    if verify_escrow_params(glob, params):
        print(f"ok: chain of {params.t} keys is well-formed")
        return EXIT_OK
    print(f"invalid: chain of {params.t} keys fails the ratio check")
    return EXIT_INVALID


def _cmd_keygen(args) -> int:
    glob = _load(args.global_file, GlobalParams, "global")
    pair = gen_recipient_keys(glob, random.Random(args.seed))
    _write(args.out_public, RecipientPublic(pair.y_b))
    _write(args.out_secret, RecipientSecret(pair.x_b))
    return EXIT_OK


def _prepare_encrypt(args):
    glob = _load(args.global_file, GlobalParams, "global")
    recipient = _load(args.recipient, RecipientPublic, "recipient-public")
    params = _load(args.params, EscrowParams, "escrow-public")
    _check_members(glob, y_B=recipient.y_b, s=args.s)
    if args.k is None:
        if args.seed is None:
            raise _UsageError("give --k or --seed")
        rng = random.Random(args.seed)
    else:
        rng = None
    return glob, recipient, params, rng


def _cmd_encrypt(args) -> int:
    glob, recipient, params, rng = _prepare_encrypt(args)
    k = args.k if args.k is not None else rng.randrange(1, glob.rho - 1)
    ct = encrypt(glob, recipient.y_b, params, args.i, args.s, k)
    _write(args.out, ct)
    return EXIT_OK


def _cmd_encrypt_malformed(args) -> int:
    if (args.vhat is None) == (not args.forge):
        raise _UsageError("give exactly one of --vhat or --forge")
    glob, recipient, params, rng = _prepare_encrypt(args)
    if args.forge:
        if args.seed is None:
            raise _UsageError("--forge draws from --seed")
        forge_rng = random.Random(args.seed)
        v_hat = forge_offlist_parameter(glob, params, forge_rng).v_hat
        # --seed drives the forge first and then k, in that order
        k = args.k if args.k is not None else forge_rng.randrange(1, glob.rho - 1)
    else:
        v_hat = args.vhat
        _check_members(glob, vhat=v_hat)
        k = args.k if args.k is not None else rng.randrange(1, glob.rho - 1)
    ct = encrypt_malformed(glob, recipient.y_b, v_hat, args.i, args.s, k, t=params.t)
    _write(args.out, ct)
    return EXIT_OK


def _cmd_decrypt(args) -> int:
    glob = _load(args.global_file, GlobalParams, "global")
    secret = _load(args.secret, RecipientSecret, "recipient-secret")
    ct = _load(args.ct, Ciphertext, "ciphertext")
    _check_members(glob, c1=ct.c1, c2=ct.c2, c3=ct.c3)
    s = decrypt_recipient(glob, secret.x_b, ct)
    print(format(s, "x"))
    return EXIT_OK


def _cmd_escrow_decrypt(args) -> int:
    glob = _load(args.global_file, GlobalParams, "global")
    secret = _load(args.escrow_secret, EscrowSecret, "escrow-secret")
    ct = _load(args.ct, Ciphertext, "ciphertext")
    _check_members(glob, c1=ct.c1, c2=ct.c2, c3=ct.c3)
    attempt = decrypt_escrow(glob, secret, ct, force_attempt=args.force)
    if not attempt.attempted:
        print("not-attempted")
    else:
        print(format(attempt.candidate, "x"))
    return EXIT_OK


_STRATEGIES = {
    "honest": HonestUniform,
    "malformed": Malformed,
    "evading": Evading,
}


def _cmd_simulate(args) -> int:
    config = SimConfig(
        preset=args.preset,
        t=args.t,
        sessions=args.sessions,
        epochs=args.epochs,
        disclosure_at=args.disclosure_at,
        strategy=_STRATEGIES[args.strategy](),
        seed=args.seed,
    )
    report = run_simulation(config)
    records.emit_report_csv(report, args.out_csv)
    return EXIT_OK


# --- parser wiring ---


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="translucent",
        description="Fractional key escrow over ElGamal: keys, ciphertexts, "
        "attacks, and a wiretap simulator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("setup", help="create and save global group parameters")
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--rho", type=_hex_int, help="custom prime modulus (hex)")
    p.add_argument("--g", type=_hex_int, help="custom generator (hex)")
    p.add_argument("--factors", type=_hex_list, help="prime factors of rho-1 (hex, comma separated)")
    p.add_argument("--seed", help="provenance string for the NUMS constant")
    p.add_argument("--out", required=True)
    p.set_defaults(handler=_cmd_setup)

    p = sub.add_parser("escrow-keygen", help="generate the authority's chain and trapdoor")
    p.add_argument("--global", dest="global_file", required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--seed", type=_u64, required=True)
    p.add_argument("--out-public", required=True)
    p.add_argument("--out-secret", required=True)
    p.set_defaults(handler=_cmd_escrow_keygen)

    p = sub.add_parser("verify-params", help="publicly check a published chain")
    p.add_argument("--global", dest="global_file", required=True)
    p.add_argument("--params", required=True)
    p.set_defaults(handler=_cmd_verify_params)

    p = sub.add_parser("keygen", help="generate a recipient keypair")
    p.add_argument("--global", dest="global_file", required=True)
    p.add_argument("--seed", type=_u64, required=True)
    p.add_argument("--out-public", required=True)
    p.add_argument("--out-secret", required=True)
    p.set_defaults(handler=_cmd_keygen)

    def add_encrypt_flags(p):
        p.add_argument("--global", dest="global_file", required=True)
        p.add_argument("--recipient", required=True)
        p.add_argument("--params", required=True)
        p.add_argument("--i", type=int, required=True)
        p.add_argument("--s", type=_hex_int, required=True)
        p.add_argument("--k", type=_hex_int)
        p.add_argument("--seed", type=_u64, help="draw k (and a forged element) from this seed")
        p.add_argument("--out", required=True)

    p = sub.add_parser("encrypt", help="honest encryption of a session key")
    add_encrypt_flags(p)
    p.set_defaults(handler=_cmd_encrypt)

    p = sub.add_parser("encrypt-malformed", help="encryption with an off-list third component")
    add_encrypt_flags(p)
    p.add_argument("--vhat", type=_hex_int, help="explicit off-list element (hex)")
    p.add_argument("--forge", action="store_true", help="draw the off-list element from --seed")
    p.set_defaults(handler=_cmd_encrypt_malformed)

    p = sub.add_parser("decrypt", help="recipient decryption; prints s in hex")
    p.add_argument("--global", dest="global_file", required=True)
    p.add_argument("--secret", required=True)
    p.add_argument("--ct", required=True)
    p.set_defaults(handler=_cmd_decrypt)

    p = sub.add_parser(
        "escrow-decrypt", help="authority decryption; prints not-attempted or a candidate"
    )
    p.add_argument("--global", dest="global_file", required=True)
    p.add_argument("--escrow-secret", dest="escrow_secret", required=True)
    p.add_argument("--ct", required=True)
    p.add_argument("--force", action="store_true", help="attempt even on a label mismatch")
    p.set_defaults(handler=_cmd_escrow_decrypt)

    p = sub.add_parser("simulate", help="run the wiretap simulation and emit CSV")
    p.add_argument("--preset", default="test64", choices=sorted(PRESETS))
    p.add_argument("--t", type=int, default=4)
    p.add_argument("--sessions", type=int, default=1000)
    p.add_argument("--epochs", type=int, default=1)
    p.add_argument("--strategy", default="honest", choices=sorted(_STRATEGIES))
    p.add_argument("--disclosure-at", dest="disclosure_at", type=int)
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--out-csv", dest="out_csv", required=True)
    p.set_defaults(handler=_cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except _UsageError as exc:
        print(f"translucent {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"translucent {args.command}: i/o error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TranslucentError as exc:
        print(f"translucent {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
