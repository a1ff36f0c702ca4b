"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: hypothesis violations exit 1, input
problems exit 2.  Everything else is an ordinary crash.
"""


class LsgenusError(Exception):
    """Base class for all package-specific errors."""


class InputError(LsgenusError):
    """Malformed or inconsistent user input (files, identifiers, shapes)."""


class OwnerMismatch(LsgenusError):
    """An operation combined objects that live on different complexes."""


class EmptyUpSet(LsgenusError):
    """An operation that needs a nonempty up-set received an empty one."""


class HypothesisViolation(LsgenusError):
    """A stated precondition of a theorem-backed routine does not hold."""


class AxiomViolation(LsgenusError):
    """A supplied category function broke one of its axioms mid-run."""


class NonFreeAction(LsgenusError):
    """The involution fixes a simplex, so the action is not free."""


class NonRegularAction(LsgenusError):
    """The orbit family is not a simplicial complex; subdivide first."""


class TractabilityLimit(LsgenusError):
    """A brute-force routine refused an input above its size bound."""


class InvariantViolation(LsgenusError):
    """An internal soundness check failed; indicates a bug, not bad input."""
