"""Exception hierarchy shared by all modules."""


class CoverToolError(Exception):
    """Base class; the CLI maps subclasses to exit codes."""


class MalformedInput(CoverToolError, ValueError):
    """Input that is not even syntactically valid (bad permutation, bad JSON)."""


class DomainError(CoverToolError):
    """Well-formed input that violates a mathematical precondition."""


class BudgetExceeded(DomainError):
    """A size or enumeration budget was hit."""


class NotAutomorphism(DomainError):
    pass


class NotLiftable(DomainError):
    pass


class NotConnected(DomainError):
    pass


class CycleGraphError(DomainError):
    """Cycles are s-arc-transitive for every s, so no unique s exists."""


class NotTransitive(DomainError):
    pass
