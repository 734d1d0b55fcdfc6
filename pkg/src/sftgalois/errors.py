"""Exception hierarchy.

Domain errors (a computation ran and the mathematical answer is "no") derive
from :class:`DomainError`; malformed input derives from :class:`LoadError`.
The CLI maps the first family to exit code 1 and the second to exit code 2.
"""


class SftgError(Exception):
    """Base class for every error raised by this package."""


class LoadError(SftgError):
    """Input could not be parsed or failed validation."""


class DomainError(SftgError):
    """A well-formed input does not have the requested property."""


class InternalError(SftgError):
    """A theoretical guarantee failed to hold; indicates a bug."""


class BudgetExceededError(SftgError):
    def __init__(self, what, attempted, budget):
        self.what = what
        self.attempted = attempted
        self.budget = budget
        super().__init__(f"{what}: search size {attempted} exceeds budget {budget}")


class DegenerateInputError(DomainError):
    pass


class InvalidCodeError(LoadError):
    pass


class DomainMismatchError(DomainError):
    pass


class WordNotInDomainError(DomainError):
    pass


class InfiniteFiberError(DomainError):
    pass


class NotOntoError(DomainError):
    pass


class NotClosingError(DomainError):
    def __init__(self, side, witness):
        self.side = side
        self.witness = witness
        super().__init__(f"code is not {side}-closing; witness pair path {witness}")


class NotConstantToOneError(DomainError):
    def __init__(self, orbit_a, count_a, orbit_b, count_b):
        self.orbits = ((orbit_a, count_a), (orbit_b, count_b))
        super().__init__(
            f"fiber sizes differ: {count_a} over {orbit_a} but {count_b} over {orbit_b}"
        )


class NotGaloisError(DomainError):
    def __init__(self, deck_order, degree):
        self.deck_order = deck_order
        self.degree = degree
        super().__init__(f"not Galois: |deck| = {deck_order} < deg = {degree}")


class CrossEdgeAnomalyError(DomainError):
    pass


class BasePairNotFoundError(DomainError):
    pass


class TowerMismatchError(DomainError):
    pass


class FreeActionNotAchievedError(DomainError):
    pass


class NotAnAutomorphismError(DomainError):
    pass
