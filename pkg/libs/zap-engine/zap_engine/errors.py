"""
Exception hierarchy for zap-engine.

Every error raised by the engine derives from ZapError, which is a ValueError
so callers that already guard with ``except ValueError`` keep working.
"""

from typing import Optional


class ZapError(ValueError):
    """Base class for all engine errors."""


class NotResolvable(ZapError):
    """Two clauses do not clash on exactly one literal."""


class TautologyError(ZapError):
    """A clause would contain both a literal and its negation."""


class ParseError(ZapError):
    """Malformed textual input (cycles, DIMACS, zap files)."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(f"{prefix}{message}")


class WnConflict(ZapError):
    """An explicit image contradicts sign-respect (l -> m forces -l -> -m)."""


class NotBijective(ZapError):
    """A permutation repeats a point or leaves the image incomplete."""


class NoLift(ZapError):
    """No group element restricts to the requested partial map."""


class InstanceCountMismatch(ZapError):
    """A shrunken group lost instances of its clause."""


class TooManyInstances(ZapError):
    """Instance enumeration exceeded its cap."""


class NotAnInstance(ZapError):
    """The clause is not an image of the base clause under the group."""


class TooLarge(ZapError):
    """A brute-force enumeration or encoding is beyond its size cap."""


class BudgetExceeded(ZapError):
    """An oracle or solver budget was exhausted."""


class BadThreshold(ZapError):
    """Cardinality threshold outside 1..m."""


class DomainTooSmall(ZapError):
    """A quantified variable has an empty domain."""


class BadSize(ZapError):
    """Problem-family parameters out of range."""


class NoBranchAvailable(ZapError):
    """Branching was requested on a total assignment."""


class InconsistentAssignment(ZapError):
    """A literal (or its negation) is already valued by the assignment."""


class NotASubgroup(ZapError):
    """A resolvent witness group is not contained in its clause's group."""
