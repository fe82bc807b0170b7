"""Exception types raised by ortholog.

Every error carries a short machine-readable ``code`` which the command line
front end copies into its JSON error object.
"""


class OrthologError(Exception):
    code = "error"


class DimensionError(OrthologError, ValueError):
    code = "dimension"


class PreconditionError(OrthologError, ValueError):
    code = "precondition"


class DomainError(OrthologError, ValueError):
    code = "domain"


class EmptyDecompositionError(DomainError):
    code = "empty_decomposition"


class SingularityError(OrthologError, ArithmeticError):
    code = "singular"


class NotSupportedError(DomainError):
    code = "not_supported"
