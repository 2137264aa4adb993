"""Exception hierarchy for kszforms.

The CLI maps these onto exit codes: ArgumentError, DomainError and SchemaError are
usage errors (2), CapabilityError is 3 and RecordIOError is 4.
"""


class KszFormsError(Exception):
    """Base class for every error raised by kszforms."""


class ArgumentError(KszFormsError, ValueError):
    """An argument has the wrong shape, length or range."""


class DomainError(KszFormsError, ValueError):
    """A formula was evaluated outside the p-regime where it is asserted."""


class CapabilityError(KszFormsError):
    """An oracle does not apply to the instance or an enumeration cap was exceeded."""


class SchemaError(KszFormsError, ValueError):
    """A tensor or run-record file does not match its documented format."""


class SchemaVersionError(SchemaError):
    """A run record was written with a different schema version."""


class RecordIOError(KszFormsError, OSError):
    """A record or tensor path could not be read or written."""
