#!/usr/bin/env python3

"""Error types raised by the differential positivity toolkit.

Every error derives from LieDiffPosError, itself a ValueError, so callers can
either handle a specific failure or treat any of them as invalid input.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from indisoluble.lie_diffpos.dynamics.trajectory import Trajectory


class LieDiffPosError(ValueError):
    """Base class of all toolkit errors."""


class BadParamsError(LieDiffPosError):
    """Model or coupling parameters are invalid."""


class ConeViolationError(LieDiffPosError):
    """A Perron-Frobenius subspace check against the cone failed."""


class CutLocusError(LieDiffPosError):
    """A logarithm was requested at the boundary of the injectivity domain."""


class DegenerateDirectionError(LieDiffPosError):
    """A vector has no component along the dominant subspace."""


class DependentBasisError(LieDiffPosError):
    """Basis vectors of a distribution are linearly dependent."""


class DimensionMismatchError(LieDiffPosError):
    """Vector or matrix sizes do not match the cone or group dimension."""


class DomainViolationError(LieDiffPosError):
    """A state left the domain of a coupling function."""


class EmptyBoundaryError(LieDiffPosError):
    """The cone boundary holds no nonzero vector to sample."""


class FieldBlowUpError(LieDiffPosError):
    """The vector field exceeded the blow-up guard during integration."""

    @property
    def trajectory(self) -> Trajectory | None:
        """Get the partial trajectory computed before the blow-up."""
        return self._trajectory

    @property
    def time(self) -> float:
        """Get the time at which the guard triggered."""
        return self._time

    @property
    def detail(self) -> Any:
        """Get the offending edge or field norm."""
        return self._detail

    def __init__(
        self,
        message: str,
        *,
        time: float = float("nan"),
        detail: Any = None,
        trajectory: Trajectory | None = None,
    ) -> None:
        super().__init__(message)
        self._time = time
        self._detail = detail
        self._trajectory = trajectory

    def with_trajectory(self, trajectory: Trajectory) -> FieldBlowUpError:
        """Return a copy of this error carrying the given partial trajectory."""
        return FieldBlowUpError(
            str(self), time=self._time, detail=self._detail, trajectory=trajectory
        )


class GapDegenerateError(LieDiffPosError):
    """Eigenvalue moduli do not separate at the cone rank."""


class GroupMismatchError(LieDiffPosError):
    """Operands belong to different groups."""


class InvalidWeightsError(LieDiffPosError):
    """Digraph weights are negative or violate the delta bound."""


class MissingLinearizationError(LieDiffPosError):
    """No analytic linearization is available and finite differences are disabled."""


class MuOutOfRangeError(LieDiffPosError):
    """The synchronization cone opening parameter is out of range."""


class NonPositiveError(LieDiffPosError):
    """A strictly positive vector was required."""


class NotQuadraticError(LieDiffPosError):
    """A quadratic cone was required."""


class NotRotationError(LieDiffPosError):
    """A matrix cannot be projected onto SO(3)."""


class NotSkewError(LieDiffPosError):
    """A matrix is not skew-symmetric."""


class OutOfDomainError(LieDiffPosError):
    """An argument lies outside the domain of a closed-form expression."""


class SingularConeError(LieDiffPosError):
    """The quadratic form of a cone is singular."""


class UnsupportedCombinationError(LieDiffPosError):
    """The requested test mode does not support the cone variant."""


class WindowTooShortError(LieDiffPosError):
    """A diagnostic window covers too few trajectory samples."""
