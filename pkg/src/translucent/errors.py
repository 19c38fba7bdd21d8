"""Exception hierarchy for the translucent toolkit.

Every failure the library signals deliberately derives from
:class:`TranslucentError`, so callers (and the CLI) can distinguish
domain failures from programming errors.
"""


class TranslucentError(Exception):
    """Base class for all errors raised by this package."""


# --- group arithmetic / parameter validation ---

class NotPrimeError(TranslucentError):
    """A value required to be prime failed the primality test."""


class NotGeneratorError(TranslucentError):
    """The candidate element does not generate the multiplicative group."""


class IncompleteFactorizationError(TranslucentError):
    """The supplied prime-factor list cannot describe the group order."""


class NotInvertibleError(TranslucentError):
    """No modular inverse exists (zero residue)."""


class OutOfGroupError(TranslucentError):
    """A residue lies outside [1, rho-1]."""


class ExhaustedError(TranslucentError):
    """A bounded rejection-sampling loop ran out of attempts."""


# --- escrow / protocol ---

class InvalidCountError(TranslucentError):
    """The escrow chain length t must be at least 1."""


class IndexOutOfRangeError(TranslucentError):
    """Ciphertext index i outside [1, t]."""


class SessionKeyOutOfGroupError(TranslucentError):
    """Session key s outside [1, rho-1]."""


class NonceOutOfRangeError(TranslucentError):
    """Encryption nonce k outside [1, rho-2]."""


# --- adversary ---

class InconsistentEvidenceError(TranslucentError):
    """Disclosed records name two different decrypted indices."""


class NoEvasionPossibleError(TranslucentError):
    """With t = 1 there is no alternative index to evade to."""


# --- simulation ---

class ConfigInvalidError(TranslucentError):
    """Simulation configuration violates its constraints."""


# --- serialization ---

class ParseError(TranslucentError):
    """Record text is not well-formed."""


class ValidationError(TranslucentError):
    """Record text parsed but violates a type invariant."""


class VersionError(TranslucentError):
    """Record carries an unsupported format version."""
