"""Exception hierarchy shared by every module in the package.

Validation failures carry the offending indices/names as attributes so tests
and the CLI can report them precisely. ``VerificationFailedError`` is reserved
for internal defects: a constructed witness that fails its own re-check.
"""
from __future__ import annotations


class UmtkError(Exception):
    """Base class for all library errors."""


class FormatError(UmtkError):
    """Malformed JSON document or rational literal."""


class SpaceValidationError(UmtkError):
    """Base class for semimetric axiom violations."""


class EmptySpaceError(SpaceValidationError):
    def __init__(self) -> None:
        super().__init__("a space needs at least one point")


class DuplicatePointNameError(SpaceValidationError):
    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"duplicate point name {name!r}")


class MatrixShapeError(SpaceValidationError):
    pass


class NonSymmetricError(SpaceValidationError):
    def __init__(self, i: int, j: int) -> None:
        self.i, self.j = i, j
        super().__init__(f"d[{i}][{j}] != d[{j}][{i}]")


class NonZeroDiagonalError(SpaceValidationError):
    def __init__(self, i: int) -> None:
        self.i = i
        super().__init__(f"d[{i}][{i}] != 0")


class ZeroOffDiagonalError(SpaceValidationError):
    def __init__(self, i: int, j: int) -> None:
        self.i, self.j = i, j
        super().__init__(f"d[{i}][{j}] == 0 for distinct points")


class NegativeDistanceError(SpaceValidationError):
    def __init__(self, i: int, j: int) -> None:
        self.i, self.j = i, j
        super().__init__(f"d[{i}][{j}] < 0")


class SpectrumSizeMismatchError(UmtkError):
    def __init__(self, have: int, want: int) -> None:
        self.have, self.want = have, want
        super().__init__(f"spectrum has {have} values, target has {want}")


class TargetNotStartingAtZeroError(UmtkError):
    def __init__(self) -> None:
        super().__init__("relabeling target must start at 0")


class TargetNotIncreasingError(UmtkError):
    def __init__(self) -> None:
        super().__init__("relabeling target must be strictly increasing")


class SpaceTooSmallError(UmtkError):
    def __init__(self, n: int) -> None:
        self.n = n
        super().__init__(f"operation needs at least 2 points, got {n}")


class NotMultipartiteError(UmtkError):
    """The diametrical graph is not complete multipartite."""


class NotUltrametricError(UmtkError):
    """Carries a violating triple (x, y, z) with d(x,y) > max(d(x,z), d(z,y))."""

    def __init__(self, violation: tuple[str, str, str]) -> None:
        self.violation = violation
        x, y, z = violation
        super().__init__(f"d({x},{y}) > max(d({x},{z}), d({z},{y}))")


class UnknownPointError(UmtkError):
    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"unknown point {name!r}")


class InvalidTreeError(UmtkError):
    """A node breaks the labeled-tree invariants (labels, arity, leaf points)."""


class NotIsomorphicError(UmtkError):
    """Rooted trees do not admit the requested isomorphism."""


class NotABijectionError(UmtkError):
    """A point mapping is not a bijection between the two point sets."""


class TooLargeError(UmtkError):
    """Instance exceeds the hard size guard of a brute-force oracle."""


class InfeasibleConstraintsError(UmtkError):
    """No instance satisfies the requested generator constraints."""


class InapplicableError(UmtkError):
    """Operation precondition not met (e.g. no same-level inner pair exists)."""


class VerificationFailedError(UmtkError):
    """Internal defect: a produced witness failed its own verification."""
