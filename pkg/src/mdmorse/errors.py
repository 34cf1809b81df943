"""Exception hierarchy.

Every error raised on purpose by the library derives from ``MdmError`` so
callers (and the CLI) can tell domain failures from bugs.
"""

from __future__ import annotations


class MdmError(Exception):
    """Base class for domain errors."""


class ParseError(MdmError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MissingFace(MdmError):
    def __init__(self, simplex, face):
        self.simplex = simplex
        self.face = face
        super().__init__(f"{face} is a face of {simplex} but is not in the set")


class InvalidSimplex(MdmError):
    pass


class NotFreeFace(MdmError):
    pass


class NotCofacet(MdmError):
    pass


class NotInjective(MdmError):
    pass


class CoverageGap(MdmError):
    pass


class Overlap(MdmError):
    pass


class ArityMismatch(MdmError):
    pass


class NotValidated(MdmError):
    """The function does not satisfy the mdm conditions."""

    def __init__(self, violations):
        self.violations = list(violations)
        first = self.violations[0] if self.violations else None
        super().__init__(f"not a multidimensional discrete Morse function: {first}")


class CyclicField(MdmError):
    def __init__(self, cycle):
        self.cycle = cycle
        super().__init__(f"closed V-path {cycle}")


class NotInvariant(MdmError):
    pass


class NotIsolatedInvariant(MdmError):
    pass


class CycleDetected(MdmError):
    def __init__(self, witness, message=None):
        self.witness = witness
        super().__init__(message or f"cycle {witness}")


class FCycle(CycleDetected):
    """The component graph of an mdm function has a directed cycle."""


class InvalidPartition(MdmError):
    pass


class NotDivisible(MdmError):
    pass


class NotClosed(MdmError):
    pass


class NotNested(MdmError):
    pass


class NotSubcomplex(MdmError):
    pass


class NotCompatible(MdmError):
    pass


class FixedPointOutside(MdmError):
    def __init__(self, simplex):
        self.simplex = simplex
        super().__init__(f"fixed point {simplex} lies outside the target")


class OrderViolation(MdmError):
    pass


class NotCancellable(MdmError):
    pass
