"""Key/ciphertext file format and CSV report emission.

One record per file: a single-line JSON object with a fixed field order,
a `kind` tag, and a format `version`, ending in a newline. Big integers
are lowercase hex with no leading zeros ("0" for zero); indices and
counters are plain JSON numbers. The format is strict both ways --
decode(encode(x)) == x, and anything that is not exactly a canonical
record is rejected rather than repaired.
"""

from __future__ import annotations

import json
import os
import re
import tempfile
from dataclasses import dataclass

from .errors import ParseError, ValidationError, VersionError
from .escrow import EscrowParams, EscrowSecret, GlobalParams, PRESETS, setup_global
from .groups import derive_nums_value, in_group, is_probable_prime
from .protocol import Ciphertext
from .sim import SimReport, summarize

FORMAT_VERSION = 1

_HEX_RE = re.compile(r"\A(?:0|[1-9a-f][0-9a-f]*)\Z")


@dataclass(frozen=True)
class RecipientPublic:
    """Published half of a recipient keypair."""

    y_b: int


@dataclass(frozen=True)
class RecipientSecret:
    """Secret half of a recipient keypair; kept in its own file."""

    x_b: int


Record = GlobalParams | EscrowParams | EscrowSecret | RecipientPublic | RecipientSecret | Ciphertext


def _hex(x: int) -> str:
    return format(x, "x")


def encode_record(record: Record) -> str:
    """Render a record as its canonical one-line JSON text."""
    if isinstance(record, GlobalParams):
        body = {
            "kind": "global",
            "version": FORMAT_VERSION,
            "rho": _hex(record.rho),
            "g": _hex(record.g),
            "U": _hex(record.u),
            "seed": record.seed.decode("utf-8"),
            "preset": record.preset,
        }
    elif isinstance(record, EscrowParams):
        body = {
            "kind": "escrow-public",
            "version": FORMAT_VERSION,
            "t": record.t,
            "epoch": record.epoch,
            "V": [_hex(v) for v in record.v],
        }
    elif isinstance(record, EscrowSecret):
        body = {
            "kind": "escrow-secret",
            "version": FORMAT_VERSION,
            "t": record.t,
            "epoch": record.epoch,
            "ell": record.ell,
            "x_L": _hex(record.x_l),
        }
    elif isinstance(record, RecipientPublic):
        body = {"kind": "recipient-public", "version": FORMAT_VERSION, "y_B": _hex(record.y_b)}
    elif isinstance(record, RecipientSecret):
        body = {"kind": "recipient-secret", "version": FORMAT_VERSION, "x_B": _hex(record.x_b)}
    elif isinstance(record, Ciphertext):
        body = {
            "kind": "ciphertext",
            "version": FORMAT_VERSION,
            "c1": _hex(record.c1),
            "c2": _hex(record.c2),
            "c3": _hex(record.c3),
            "i": record.i,
        }
    else:
        raise TypeError(f"cannot encode {type(record).__name__}")
    return json.dumps(body, separators=(",", ":")) + "\n"


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValidationError(message)


def _take_hex(obj: dict, key: str) -> int:
    value = obj.get(key)
    if not isinstance(value, str) or not _HEX_RE.match(value):
        raise ParseError(f"field {key!r} is not canonical lowercase hex")
    return int(value, 16)


def _take_int(obj: dict, key: str) -> int:
    value = obj.get(key)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"field {key!r} is not an integer")
    return value


def _take_str(obj: dict, key: str) -> str:
    value = obj.get(key)
    if not isinstance(value, str):
        raise ParseError(f"field {key!r} is not a string")
    return value


_FIELDS = {
    "global": ("kind", "version", "rho", "g", "U", "seed", "preset"),
    "escrow-public": ("kind", "version", "t", "epoch", "V"),
    "escrow-secret": ("kind", "version", "t", "epoch", "ell", "x_L"),
    "recipient-public": ("kind", "version", "y_B"),
    "recipient-secret": ("kind", "version", "x_B"),
    "ciphertext": ("kind", "version", "c1", "c2", "c3", "i"),
}


def decode_record(data: bytes | str) -> Record:
    """Parse and validate one record file's content.

    Raises ParseError for malformed text, VersionError for an unsupported
    version, and ValidationError when fields parse but break an invariant
    (for instance a zero group element, or a global record whose U does not
    match its own seed).
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8: {exc}") from None
    if not data.endswith("\n"):
        raise ParseError("record does not end with a newline")
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise ParseError("record is not a JSON object")

    kind = obj.get("kind")
    if kind not in _FIELDS:
        raise ParseError(f"unknown record kind {kind!r}")
    if set(obj) != set(_FIELDS[kind]):
        raise ParseError(
            f"{kind} record must have exactly the fields {list(_FIELDS[kind])}"
        )
    version = _take_int(obj, "version")
    if version != FORMAT_VERSION:
        raise VersionError(f"unsupported format version {version}")

    if kind == "global":
        return _decode_global(obj)
    if kind == "escrow-public":
        t = _take_int(obj, "t")
        epoch = _take_int(obj, "epoch")
        raw = obj.get("V")
        if not isinstance(raw, list) or not all(
            isinstance(x, str) and _HEX_RE.match(x) for x in raw
        ):
            raise ParseError("field 'V' is not a list of canonical hex strings")
        chain = tuple(int(x, 16) for x in raw)
        _require(t >= 1, "t must be >= 1")
        _require(epoch >= 0, "epoch must be >= 0")
        _require(len(chain) == t, f"chain holds {len(chain)} elements, t = {t}")
        _require(all(v >= 1 for v in chain), "chain elements must be >= 1")
        return EscrowParams(v=chain, t=t, epoch=epoch)
    if kind == "escrow-secret":
        t = _take_int(obj, "t")
        epoch = _take_int(obj, "epoch")
        ell = _take_int(obj, "ell")
        x_l = _take_hex(obj, "x_L")
        _require(t >= 1, "t must be >= 1")
        _require(epoch >= 0, "epoch must be >= 0")
        _require(1 <= ell <= t, f"ell = {ell} outside [1, {t}]")
        _require(x_l >= 1, "x_L must be >= 1")
        return EscrowSecret(x_l=x_l, ell=ell, t=t, epoch=epoch)
    if kind == "recipient-public":
        y_b = _take_hex(obj, "y_B")
        _require(y_b >= 1, "y_B must be >= 1")
        return RecipientPublic(y_b=y_b)
    if kind == "recipient-secret":
        x_b = _take_hex(obj, "x_B")
        _require(x_b >= 1, "x_B must be >= 1")
        return RecipientSecret(x_b=x_b)
    # ciphertext
    c1 = _take_hex(obj, "c1")
    c2 = _take_hex(obj, "c2")
    c3 = _take_hex(obj, "c3")
    i = _take_int(obj, "i")
    _require(c1 >= 1 and c2 >= 1 and c3 >= 1, "ciphertext components must be >= 1")
    _require(i >= 1, "index must be >= 1")
    return Ciphertext(c1=c1, c2=c2, c3=c3, i=i)


def _decode_global(obj: dict) -> GlobalParams:
    rho = _take_hex(obj, "rho")
    g = _take_hex(obj, "g")
    u = _take_hex(obj, "U")
    seed = _take_str(obj, "seed").encode("utf-8")
    preset = obj.get("preset")
    if preset is not None and not isinstance(preset, str):
        raise ParseError("field 'preset' is not a string or null")

    if preset is not None:
        _require(preset in PRESETS, f"unknown preset {preset!r}")
        expected = setup_global(preset)
        _require(
            (rho, g, u, seed) == (expected.rho, expected.g, expected.u, expected.seed),
            f"record does not match the {preset!r} preset",
        )
        return expected
    _require(rho >= 5, "rho must be >= 5")
    _require(is_probable_prime(rho), "rho is not prime")
    _require(in_group(g, rho) and g != 1, "g is not a nontrivial group element")
    _require(2 <= u <= rho - 1, "U outside [2, rho-1]")
    _require(u == derive_nums_value(seed, rho), "U does not match its seed")
    return GlobalParams(rho=rho, g=g, u=u, seed=seed, preset=None)


def write_text_atomic(path: str, text: str) -> None:
    """Whole-file atomic write: temp file in the same directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".tmp-record-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        os.unlink(tmp_path)
        raise


def emit_report_csv(report: SimReport, path: str | None = None) -> str:
    """Render a simulation report as CSV; optionally write it to `path`.

    Columns: epoch,sessions,attempted,correct,believed_rate,actual_rate,
    inferred_index. Rates carry four decimal places; a blank last column
    means no inference happened that epoch.
    """
    lines = ["epoch,sessions,attempted,correct,believed_rate,actual_rate,inferred_index"]
    for epoch, sessions, attempted, correct, believed, actual, inferred in summarize(report):
        tail = "" if inferred is None else str(inferred)
        lines.append(
            f"{epoch},{sessions},{attempted},{correct},{believed:.4f},{actual:.4f},{tail}"
        )
    text = "\n".join(lines) + "\n"
    if path is not None:
        write_text_atomic(path, text)
    return text
