"""Exception types shared across the package.

The CLI maps these onto distinct exit codes, so library code should raise the
most specific one that applies instead of bare ValueError.
"""


class KrylovflowError(Exception):
    """Base class for all package errors."""


class InvalidParameter(KrylovflowError):
    """A function argument violates its documented precondition."""


class DomainError(KrylovflowError):
    """Inputs are structurally valid but outside a regime of validity
    (e.g. past a closed-form pole, or a deformation a closed form does not cover)."""


class ResourceLimit(KrylovflowError):
    """The request exceeds a hard size/time cap (e.g. brute-force enumeration
    beyond the supported site count)."""


class ConfigError(KrylovflowError):
    """An experiment config file failed parsing or schema validation."""


class SchemaMismatch(KrylovflowError):
    """Two artifacts that should share a schema do not."""
