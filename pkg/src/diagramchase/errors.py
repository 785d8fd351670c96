"""Exception taxonomy.

Two families matter to callers: bad input (hypotheses or formats violated,
CLI exit code 2) and theorem violations (a verified claim failed to hold,
CLI exit code 1, which on valid inputs always indicates a bug).
"""


class ChaseError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ChaseError):
    """The caller's data violates a precondition or format."""


class DimensionMismatch(InputError):
    """Operands have incompatible dimensions."""


class NotInduced(InputError):
    """A map does not carry the given subspace into the target subspace.

    Attributes:
        index: position of the offending basis vector of the source subspace.
        vector: its image, which lies outside the target subspace.
    """

    def __init__(self, message, index, vector):
        super().__init__(message)
        self.index = index
        self.vector = vector


class NotAComplex(InputError):
    """Consecutive maps do not compose to zero.

    Attributes:
        index: first i with maps[i+1] o maps[i] != 0.
    """

    def __init__(self, message, index):
        super().__init__(message)
        self.index = index


class HypothesisFailure(InputError):
    """An exactness/commutativity/shape hypothesis fails.

    Attributes:
        location: human-readable name of the failing square or position.
    """

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class RegionMissing(InputError):
    """The grid lacks cells needed to compare homology at a position.

    Attributes:
        position: the requested comparison position (1-based).
        missing_cells: 1-based (row, col) lattice cells that would be needed.
    """

    def __init__(self, message, position, missing_cells):
        super().__init__(message)
        self.position = position
        self.missing_cells = list(missing_cells)


class FormatError(InputError):
    """A JSON instance file is malformed."""


class TheoremViolation(ChaseError):
    """A claim that must hold on valid inputs failed numerically."""
