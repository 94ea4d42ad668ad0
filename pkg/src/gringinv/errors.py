"""Exception hierarchy shared by the library and the CLI exit-code mapping."""


class InputError(ValueError):
    """Malformed or unsupported input (CLI exit code 2)."""


class InvalidGroupError(InputError):
    pass


class UnsupportedGroupError(InputError):
    """Group outside the supported class (even order, not a p-group, too large)."""


class InvalidDatumError(InputError):
    """Structurally inconsistent ramification datum."""


class PrecisionExhausted(RuntimeError):
    """The DT quotient did not stabilise below the precision cap (CLI exit code 3)."""

    def __init__(self, message: str, orders: list[int] | None = None):
        super().__init__(message)
        self.orders = orders or []
