"""Exception hierarchy.

Exit-code classes (used by the CLI):
  2  invalid input        -- InvalidInputError subtree
  3  hypothesis violation -- HypothesisViolation subtree
  4  internal inconsistency -- InternalInconsistency subtree

FieldExtensionNeeded and its subclasses are control-flow signals: the
pipeline driver catches them, enlarges the working field and retries.
They only surface as exit code 4 if retries are exhausted.
"""


class HopfusionError(Exception):
    """Base class for all package errors."""


class InvalidInputError(HopfusionError):
    """The presented data is not what it claims to be (exit code 2)."""


class PresentationError(InvalidInputError):
    """Malformed presentation file."""


class NotAGroup(InvalidInputError):
    """Cayley table fails a group axiom; carries a witness."""

    def __init__(self, reason, witness=None):
        super().__init__(f"not a group: {reason} (witness={witness})")
        self.reason = reason
        self.witness = witness


class InvalidHopfData(InvalidInputError):
    """Structure constants violate a Hopf axiom; carries the failing check."""

    def __init__(self, axiom, witness=None):
        super().__init__(f"Hopf axiom failed: {axiom} (witness={witness})")
        self.axiom = axiom
        self.witness = witness


class DegenerateIntegralSpace(InvalidInputError):
    """The integral space is not 1-dimensional."""


class NonSquareBlockDim(InvalidInputError):
    """dim(H e_i) is not a perfect square."""


class HypothesisViolation(HopfusionError):
    """A standing hypothesis fails on this input (exit code 3)."""


class NotSemisimple(HypothesisViolation):
    """eps(Lambda) = 0, or lambda cannot be normalized."""


class InternalInconsistency(HopfusionError):
    """Derived data contradicts itself; indicates a bug or corrupt input
    that slipped past validation (exit code 4)."""


class NonIntegralCoefficient(InternalInconsistency):
    """A fusion coefficient is not in the prime field."""


class NonInvertibleU(InternalInconsistency):
    """The element u is singular."""


class RepresentationSplitFailure(InternalInconsistency):
    """Could not isolate a primitive idempotent inside a block."""


class FieldExtensionNeeded(HopfusionError):
    """Control-flow signal: the working field is too small.

    `factor` is the extra extension degree the driver should multiply in.
    """

    def __init__(self, factor, why=""):
        super().__init__(f"need extension of degree {factor}: {why}")
        self.factor = int(factor)


class SplittingFieldTooSmall(FieldExtensionNeeded):
    """A minimal polynomial has an irreducible factor of degree > 1."""


class NonResidue(FieldExtensionNeeded):
    """A required square root does not exist in the working field."""

    def __init__(self, why=""):
        super().__init__(2, why or "nonresidue")
