"""Exception hierarchy shared by the library and the command line."""


class UsageError(ValueError):
    """Invalid argument or precondition violation."""


class ModeError(UsageError, TypeError):
    """Exact and floating-point scalars were mixed in one operation."""


class ParseError(UsageError):
    """A channel specification could not be parsed."""

    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field:
            where.append(f"field {field!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


class AsymmetricChannelError(UsageError):
    """A symmetric channel was required but the profile is not mirror-symmetric."""


class ResourceError(RuntimeError):
    """A computation would exceed its configured size budget."""
