"""Exception types shared by all modules."""


class InputError(ValueError):
    """Malformed input: bad element, unknown name, unparsable file."""


class PreconditionError(ValueError):
    """An operation was called on a structure outside its stated domain."""


class VerificationError(RuntimeError):
    """An internal consistency check that should hold by theorem failed."""
