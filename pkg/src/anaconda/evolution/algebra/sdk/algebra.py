""" Products, ranks and natural basis changes of evolution algebras. """

import logging
from typing import Any, Sequence, Union

import numpy as np
from pydantic import ValidationError

from .contracts import BasisChange, EvolutionAlgebra, StructuralInvariants, Tolerances
from .contracts.errors import InvalidInputError, NotNaturalError, SingularChangeError

logger = logging.getLogger(__name__)

ArrayLike = Union[Sequence[float], np.ndarray]

DEFAULT_TOLERANCES = Tolerances()


def make_algebra(dim: int, matrix: Any) -> EvolutionAlgebra:
    """
    Validates and builds an evolution algebra.

    Parameters
    ----------
    dim: int
        The dimension, 2 or 3.
    matrix: Any
        A dim x dim nested sequence or array of finite reals.

    Returns
    -------
    algebra: EvolutionAlgebra
        The immutable algebra.

    Raises
    ------
    InvalidInputError
        On a dimension mismatch, an unsupported dimension or a non-finite entry.
    """

    try:
        return EvolutionAlgebra(dim=dim, matrix=matrix)
    except ValidationError as error:
        raise InvalidInputError(f"invalid evolution algebra: {error.errors()[0]['msg']}") from error


def as_vector(algebra: EvolutionAlgebra, value: ArrayLike) -> np.ndarray:
    vector: np.ndarray = np.asarray(value, dtype=float)
    if vector.shape != (algebra.dim,):
        raise InvalidInputError(f"expected a vector of length {algebra.dim}, got shape {vector.shape}")
    if not np.all(np.isfinite(vector)):
        raise InvalidInputError("vector has a non-finite entry")
    return vector


def multiply(algebra: EvolutionAlgebra, x: ArrayLike, y: ArrayLike) -> np.ndarray:
    """
    The product x * y, whose k-th coordinate is sum_i a_ik x_i y_i.
    """

    return (as_vector(algebra, x) * as_vector(algebra, y)) @ algebra.array


def square(algebra: EvolutionAlgebra, x: ArrayLike) -> np.ndarray:
    return multiply(algebra, x, x)


def _rank(matrix: np.ndarray, reference: float, tolerances: Tolerances) -> int:
    if reference <= 0.0 or matrix.size == 0:
        return 0
    singular_values: np.ndarray = np.linalg.svd(matrix, compute_uv=False)
    return int(np.sum(singular_values > tolerances.eps_rank * reference))


def derived_dim(algebra: EvolutionAlgebra, tolerances: Tolerances = DEFAULT_TOLERANCES) -> int:
    """
    Dimension of the derived subalgebra E^2, the numerical rank of the structure matrix.

    Singular values at or below eps_rank times the largest one count as zero.
    """

    matrix: np.ndarray = algebra.array
    reference: float = float(np.linalg.norm(matrix, 2)) if np.any(matrix) else 0.0
    return _rank(matrix, reference, tolerances)


def _pair_products(matrix: np.ndarray, rows: np.ndarray) -> np.ndarray:
    # products[p, r, k]: coefficient of e_k in f_p * f_r
    return np.einsum("ik,pi,ri->prk", matrix, rows, rows)


def naturality_residual(algebra: EvolutionAlgebra, change: BasisChange) -> float:
    """Largest coefficient of a product f_p * f_r with p != r."""
    _check_dims(algebra, change)
    products: np.ndarray = _pair_products(algebra.array, change.array)
    off_diagonal: np.ndarray = ~np.eye(algebra.dim, dtype=bool)
    return float(np.max(np.abs(products[off_diagonal])))


def naturality_scale(algebra: EvolutionAlgebra, change: BasisChange) -> float:
    return max(1.0, float(np.max(np.abs(algebra.array))) * float(np.max(np.abs(change.array))) ** 2)


def is_natural_change(
    algebra: EvolutionAlgebra, change: BasisChange, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> bool:
    """
    Tests whether the new basis is again natural, that is f_p * f_r = 0 for every p != r.

    Parameters
    ----------
    algebra: EvolutionAlgebra
        The algebra in its current basis.
    change: BasisChange
        The candidate basis change.
    tolerances: Tolerances
        eps_residual bounds the scaled off-diagonal products.

    Returns
    -------
    natural: bool
    """

    residual: float = naturality_residual(algebra, change)
    return residual <= tolerances.eps_residual * naturality_scale(algebra, change)


def _check_dims(algebra: EvolutionAlgebra, change: BasisChange) -> None:
    if change.dim != algebra.dim:
        raise InvalidInputError(f"basis change of size {change.dim} does not fit a {algebra.dim}-dimensional algebra")


def restructure(matrix: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """
    Structure matrix in the new basis, (P o P) M P^-1 with o the entrywise product.

    Raises
    ------
    numpy.linalg.LinAlgError
        When rows is exactly singular.
    """

    lifted: np.ndarray = (rows * rows) @ matrix
    # X = lifted P^-1  <=>  P^T X^T = lifted^T
    return np.linalg.solve(rows.T, lifted.T).T


def is_singular(rows: np.ndarray, tolerances: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """Singularity relative to the size of P: |det P| <= eps_det max|P_ij|^n."""
    size: float = float(np.max(np.abs(rows))) if rows.size else 0.0
    return size == 0.0 or abs(float(np.linalg.det(rows))) <= tolerances.eps_det * size ** rows.shape[0]


def transform(
    algebra: EvolutionAlgebra, change: BasisChange, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> EvolutionAlgebra:
    """
    Re-expresses an algebra in a new natural basis.

    Parameters
    ----------
    algebra: EvolutionAlgebra
        The algebra to transform.
    change: BasisChange
        Row p holds the coordinates of f_p.
    tolerances: Tolerances
        eps_det and eps_residual govern the singularity and naturality checks.

    Returns
    -------
    algebra: EvolutionAlgebra
        The algebra in the basis (f_p).

    Raises
    ------
    SingularChangeError
        If |det P| <= eps_det max|P_ij|^n.
    NotNaturalError
        If the new basis is not natural.
    """

    _check_dims(algebra, change)
    rows: np.ndarray = change.array
    if is_singular(rows, tolerances):
        raise SingularChangeError(f"basis change is singular (det={float(np.linalg.det(rows)):.3e})")
    if not is_natural_change(algebra, change, tolerances):
        raise NotNaturalError(
            f"basis change is not natural (off-diagonal residual {naturality_residual(algebra, change):.3e})"
        )
    return EvolutionAlgebra.from_array(restructure(algebra.array, rows))


def compose_changes(second: BasisChange, first: BasisChange) -> BasisChange:
    """
    The single change equivalent to applying first and then second.

    transform(transform(A, first), second) equals transform(A, compose_changes(second, first)).
    """

    if second.dim != first.dim:
        raise InvalidInputError(f"cannot compose basis changes of sizes {second.dim} and {first.dim}")
    return BasisChange.from_array(second.array @ first.array)


def structure_residual(first: EvolutionAlgebra, second: EvolutionAlgebra) -> float:
    return float(np.max(np.abs(first.array - second.array)))


def structure_scale(first: EvolutionAlgebra, second: EvolutionAlgebra) -> float:
    return max(1.0, float(np.max(np.abs(first.array))), float(np.max(np.abs(second.array))))


def algebras_equal(
    first: EvolutionAlgebra, second: EvolutionAlgebra, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> bool:
    """Entrywise equality of structure matrices up to eps_residual times their scale."""
    if first.dim != second.dim:
        return False
    return structure_residual(first, second) <= tolerances.eps_residual * structure_scale(first, second)


def structural_invariants(
    algebra: EvolutionAlgebra, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> StructuralInvariants:
    """
    Integer invariants that any isomorphism preserves.

    The annihilator of a natural basis is spanned by the basis elements with zero square, so its dimension
    counts zero rows. The derived subalgebra is the row space of the structure matrix.

    Returns
    -------
    invariants: StructuralInvariants
        dim E^2, dim Ann(E), dim (E^2)^2 and dim (E^2 intersected with Ann(E)).
    """

    matrix: np.ndarray = algebra.array
    scale: float = float(np.max(np.abs(matrix)))
    if scale == 0.0:
        return StructuralInvariants(
            derived_dim=0, annihilator_dim=algebra.dim, derived_square_dim=0, derived_annihilator_dim=0
        )

    zero_rows: np.ndarray = np.max(np.abs(matrix), axis=1) <= tolerances.eps_rank * scale
    _, singular_values, right = np.linalg.svd(matrix)
    rank: int = int(np.sum(singular_values > tolerances.eps_rank * singular_values[0]))
    derived_basis: np.ndarray = right[:rank]

    products: np.ndarray = np.array(
        [multiply(algebra, left, other) for left in derived_basis for other in derived_basis]
    )
    annihilator_basis: np.ndarray = np.eye(algebra.dim)[zero_rows]
    joint_rank: int = _rank(np.vstack([derived_basis, annihilator_basis]), 1.0, tolerances)

    return StructuralInvariants(
        derived_dim=rank,
        annihilator_dim=int(np.sum(zero_rows)),
        derived_square_dim=_rank(products, scale, tolerances),
        derived_annihilator_dim=rank + int(np.sum(zero_rows)) - joint_rank,
    )
