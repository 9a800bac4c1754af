"""Exception types shared across the package."""


class CrystalFramesError(Exception):
    """Base class for all library errors."""


# -- graph construction / parsing ------------------------------------------

class GraphError(CrystalFramesError):
    pass


class DisconnectedGraphError(GraphError):
    pass


class DegreeTooLowError(GraphError):
    def __init__(self, vertex: int, degree: int):
        super().__init__(f"vertex {vertex} has degree {degree} < 3")
        self.vertex = vertex
        self.degree = degree


class DuplicateEdgeIdError(GraphError):
    pass


class GraphParseError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        where = f" (line {line})" if line is not None else ""
        super().__init__(message + where)
        self.line = line


class DimensionMismatchError(CrystalFramesError):
    pass


# -- lattices ---------------------------------------------------------------

class LatticeError(CrystalFramesError):
    pass


class NotFullColumnRankError(LatticeError):
    pass


class NotASummandError(LatticeError):
    pass


class RankMismatchError(LatticeError):
    pass


class BoundTooLargeError(LatticeError):
    pass


class InputTooLargeError(CrystalFramesError):
    pass


# -- frames -----------------------------------------------------------------

class FrameError(CrystalFramesError):
    pass


class NotAFrameError(FrameError):
    pass


class NotCrystallographicError(FrameError):
    pass


class SizeTooLargeError(FrameError):
    pass


class BadParametersError(FrameError):
    pass


# -- nets -------------------------------------------------------------------

class NetError(CrystalFramesError):
    pass


class ForceNotBalancedError(NetError):
    pass


class ClassKillsWrongSubgroupError(NetError):
    pass


class DegeneratePeriodLatticeError(NetError):
    pass


class NotTwoDimensionalError(NetError):
    pass


# -- arithmetic -------------------------------------------------------------

class ArithmeticDomainError(CrystalFramesError):
    pass


class NotSquareFreeError(ArithmeticDomainError):
    pass


class NotPrimitiveError(ArithmeticDomainError):
    pass


class NotPythagoreanError(ArithmeticDomainError):
    pass


class SingularIplusXError(ArithmeticDomainError):
    pass


class NotInLieAlgebraError(ArithmeticDomainError):
    pass


class BadVertexError(CrystalFramesError):
    pass


class UnknownSuiteError(CrystalFramesError):
    pass
