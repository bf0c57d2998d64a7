"""
Exception hierarchy of the nbcube toolkit.

Library code raises these; only the command-line entry point turns them into
exit codes.
"""


class NbcubeError(Exception):
    """Base class of all toolkit errors"""


class PreconditionError(NbcubeError, ValueError):
    """An input violates the documented contract of an operation"""


class NoPathError(NbcubeError):
    """Two vertices lie in different components of the host graph"""


class FanInfeasibleError(NbcubeError):
    """Fewer disjoint paths than fan targets exist"""


class InfeasibleError(NbcubeError):
    """Fewer pairwise disjoint set-to-set paths exist than requested"""


class NotInverseClosedError(PreconditionError):
    """A generator set misses the inverse of one of its elements"""


class ContainsIdentityError(PreconditionError):
    """A generator set contains the identity element"""


class DoesNotGenerateError(PreconditionError):
    """A generator set does not generate the whole group"""


class InvalidOrderingError(PreconditionError):
    """A generator ordering violates the pair condition"""


class NoValidOrderingError(PreconditionError):
    """No ordering of the generators satisfies the pair condition"""


class BudgetExhaustedError(NbcubeError):
    """The exact search found no witness within its size budget"""

    def __init__(self, budget: int) -> None:
        super().__init__(f"no qualifying fault set of size <= {budget}")
        self.budget = budget


class ConstructionFailedError(NbcubeError, RuntimeError):
    """A path builder could not complete a stage it is guaranteed to complete"""


class MalformedCertificateError(NbcubeError, ValueError):
    """A certificate document cannot be decoded"""
