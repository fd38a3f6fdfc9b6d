""" Structure matrices, basis changes and tolerances. """

import math
from typing import Any, Tuple

import numpy as np
from pydantic import NonNegativeInt, PositiveFloat, field_validator, model_validator

from .base_model import BaseModel

Matrix = Tuple[Tuple[float, ...], ...]
Vector = Tuple[float, ...]

SUPPORTED_DIMENSIONS: Tuple[int, ...] = (2, 3)


def to_matrix(value: Any) -> Matrix:
    """
    Coerces nested sequences or arrays into an immutable tuple-of-tuples matrix.

    Raises
    ------
    ValueError
        When the value is not a rectangular two-dimensional array of numbers.
    """

    try:
        array: np.ndarray = np.asarray(value, dtype=float)
    except (TypeError, ValueError) as error:
        raise ValueError(f"matrix entries must be real numbers: {error}") from error
    if array.ndim != 2:
        raise ValueError(f"matrix must be two-dimensional, got shape {array.shape}")
    return tuple(tuple(float(entry) for entry in row) for row in array)


def _check_square_finite(matrix: Matrix, side: int) -> None:
    if len(matrix) != side or any(len(row) != side for row in matrix):
        raise ValueError(f"dimension mismatch: expected a {side}x{side} matrix")
    if not all(math.isfinite(entry) for row in matrix for entry in row):
        raise ValueError("matrix has a non-finite entry")


class EvolutionAlgebra(BaseModel):
    """
    An evolution algebra given by its structure matrix in a natural basis.

    Attributes
    ----------
    dim: int
        The dimension, 2 or 3.
    matrix: Matrix
        Entry (i, k) is the coefficient of e_k in e_i * e_i.
    """

    dim: int
    matrix: Matrix

    @field_validator("matrix", mode="before")
    @classmethod
    def _coerce_matrix(cls, value: Any) -> Matrix:
        return to_matrix(value)

    @model_validator(mode="after")
    def _check_shape(self) -> "EvolutionAlgebra":
        if self.dim not in SUPPORTED_DIMENSIONS:
            raise ValueError(f"dimension must be one of {SUPPORTED_DIMENSIONS}, got {self.dim}")
        _check_square_finite(self.matrix, self.dim)
        return self

    @property
    def array(self) -> np.ndarray:
        """A fresh float array copy of the structure matrix."""
        return np.array(self.matrix, dtype=float)

    @classmethod
    def from_array(cls, matrix: Any) -> "EvolutionAlgebra":
        square: Matrix = to_matrix(matrix)
        return cls(dim=len(square), matrix=square)


class BasisChange(BaseModel):
    """
    A change of natural basis.

    Row p holds the old-basis coordinates of the new basis element f_p.
    """

    rows: Matrix

    @field_validator("rows", mode="before")
    @classmethod
    def _coerce_rows(cls, value: Any) -> Matrix:
        return to_matrix(value)

    @model_validator(mode="after")
    def _check_shape(self) -> "BasisChange":
        _check_square_finite(self.rows, len(self.rows))
        return self

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.rows, dtype=float)

    @classmethod
    def from_array(cls, rows: Any) -> "BasisChange":
        return cls(rows=rows)

    @classmethod
    def identity(cls, dim: int) -> "BasisChange":
        return cls(rows=np.eye(dim))


class Tolerances(BaseModel):
    """
    Numerical tolerances.

    Attributes
    ----------
    eps_rank: float
        Relative singular value cutoff for ranks.
    eps_residual: float
        Scaled bound for naturality and structure-matrix residuals.
    eps_det: float
        Determinant magnitude below which a basis change counts as singular.
    eps_sign: float
        Relative dead-band for the zero and sign predicates of the 3D case tree.
    """

    eps_rank: PositiveFloat = 1e-9
    eps_residual: PositiveFloat = 1e-8
    eps_det: PositiveFloat = 1e-12
    eps_sign: PositiveFloat = 1e-9


class StructuralInvariants(BaseModel):
    """Integer isomorphism invariants of an evolution algebra."""

    derived_dim: NonNegativeInt
    annihilator_dim: NonNegativeInt
    derived_square_dim: NonNegativeInt
    derived_annihilator_dim: NonNegativeInt
