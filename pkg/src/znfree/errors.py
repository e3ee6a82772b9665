"""Exception hierarchy for the package.

Every domain error raised anywhere in the library derives from ZnFreeError,
so callers (and the CLI) can map "domain failure" to a single except clause.
"""


class ZnFreeError(Exception):
    """Base class for all domain errors."""


class RankMismatch(ZnFreeError):
    """Vectors of different ranks were combined."""


class HalfError(ZnFreeError):
    """A vector with an odd coordinate cannot be halved; signals an (L4)-type defect."""


class SchemaError(ZnFreeError):
    """Malformed tower or blueprint data; the message carries the location."""


class DuplicateGenerator(SchemaError):
    """A generator name is declared twice."""


class UnknownGenerator(SchemaError):
    """A word references an undeclared generator."""


class LengthMismatch(ZnFreeError):
    """An associated pair has unequal lengths on the two sides (condition on phi)."""

    def __init__(self, level, pair_index, message=""):
        self.level = level
        self.pair_index = pair_index
        super().__init__(message or f"level {level}, pair {pair_index}: unequal lengths")


class HeightOrderViolation(ZnFreeError):
    """Associated generator heights fail to strictly increase, or image heights differ."""


class StableHeightViolation(ZnFreeError):
    """A stable letter's height does not exceed all of its associated generators'."""


class IndexOutOfRange(ZnFreeError):
    """Tower prefix index outside [0, number of levels]."""


class LevelOutOfRange(ZnFreeError):
    """Level index outside the tower's levels."""


class IdentityInput(ZnFreeError):
    """The operation is undefined on the identity element."""


class RegularityViolation(ZnFreeError):
    """No prefix certifies the common beginning; the tower data is not regular."""


class ReductionCapExceeded(ZnFreeError):
    """Length-reduction iteration guard tripped."""


class Infeasible(ZnFreeError):
    """The weight constraint system has no strictly positive solution."""


class BallExceeded(ZnFreeError):
    """The target element was not reached inside the requested ball."""

    def __init__(self, radius, message=""):
        self.radius = radius
        super().__init__(message or f"element not reached within radius {radius}")


class OracleBallExceeded(BallExceeded):
    """Cross-check requested for an element outside the oracle ball."""


class WeightMismatch(ZnFreeError):
    """Attaching paths of a torus gluing have different weights."""

    def __init__(self, level, circle_index, message=""):
        self.level = level
        self.circle_index = circle_index
        super().__init__(message or f"level {level}, circle {circle_index}: attach path weights differ")


class UnknownFormat(ZnFreeError):
    """Unsupported emit format."""


class HeightMismatch(ZnFreeError):
    """combine_equal_height requires both inputs to have the same height."""


class NonCommuting(ZnFreeError):
    """combine_equal_height requires commuting inputs."""


class NonCommutingInput(ZnFreeError):
    """reduce_basis requires pairwise commuting inputs."""


class ConjugatorMismatch(ZnFreeError):
    """Inputs cannot be cyclically reduced by a common conjugator."""
