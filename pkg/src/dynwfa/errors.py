"""Exception hierarchy shared by every dynwfa layer."""


class DynwfaError(Exception):
    """Base class for everything this package raises on purpose."""


class ParseError(DynwfaError):
    """Malformed textual input; carries the byte offset of the failure."""

    def __init__(self, message, position=None):
        if position is not None:
            message = "%s at position %d" % (message, position)
        super().__init__(message)
        self.position = position


class UnsupportedOperation(DynwfaError):
    """The value set does not provide the requested operation."""


class NotStarrable(DynwfaError):
    """star() was asked for a weight whose iteration does not converge."""

    def __init__(self, weightset, printed):
        super().__init__("not starrable: %s (in %s)" % (printed, weightset))
        self.printed = printed


class JoinError(DynwfaError):
    """No common supertype exists for the two value sets."""


class ConversionError(DynwfaError):
    """No value conversion exists between the two value sets."""


class PreconditionError(DynwfaError):
    """An algorithm was called on inputs that violate its contract."""


class DynError(DynwfaError):
    """Dynamic-facade failure: bad tag, signature mismatch, unknown name."""


class StaticAssertionError(DynwfaError):
    """A compile-time check failed while generating or building a bridge."""


class InstantiationError(DynwfaError):
    """Runtime bridge generation failed; message carries the enriched block."""

    def __init__(self, message, log=None, command=None):
        super().__init__(message)
        self.log = log
        self.command = command


class PluginError(DynwfaError):
    """A compiled plugin could not be loaded or registered."""
