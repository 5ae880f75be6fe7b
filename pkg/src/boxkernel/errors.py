"""Exception taxonomy shared by the whole package.

Each class maps onto one CLI exit code (see :mod:`boxkernel.cli`), so library
code should raise the most specific one that applies.
"""


class BoxKernelError(Exception):
    """Base class for all package-specific errors."""


class InvalidInputError(BoxKernelError):
    """Malformed or contract-violating caller input (bad box, bad JSON, ...)."""


class ResourceLimitError(BoxKernelError):
    """A configured cap (cell count, live-box count, vertex count) was exceeded."""


class StateError(BoxKernelError):
    """An operation was invoked in a state where it is undefined (e.g. sampling
    from an index whose covered total is zero)."""


class AuditError(BoxKernelError):
    """An internal self-check failed; indicates a bug, never bad user input."""
