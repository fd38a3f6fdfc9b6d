""" Isomorphism search between evolution algebras of equal dimension. """

import itertools
import logging
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import least_squares

from .algebra import (
    DEFAULT_TOLERANCES,
    is_singular,
    naturality_residual,
    naturality_scale,
    restructure,
    structural_invariants,
    structure_scale,
)
from .contracts import BasisChange, EvolutionAlgebra, IsoOptions, IsoReason, IsoResult, Tolerances
from .contracts.errors import InvalidInputError, SingularChangeError

logger = logging.getLogger(__name__)

DEFAULT_ISO_OPTIONS = IsoOptions()

START_BOX: float = 3.0
SINGULAR_PENALTY: float = 1e6


def verify_iso(
    source: EvolutionAlgebra,
    target: EvolutionAlgebra,
    change: BasisChange,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> Tuple[bool, float]:
    """
    Checks a witness from scratch.

    Parameters
    ----------
    source: EvolutionAlgebra
        The algebra the witness is applied to.
    target: EvolutionAlgebra
        The algebra it should produce.
    change: BasisChange
        The candidate witness.
    tolerances: Tolerances
        eps_det and eps_residual.

    Returns
    -------
    verdict: Tuple[bool, float]
        Whether the change is natural for source and maps it onto target, and the larger of the two residuals.

    Raises
    ------
    SingularChangeError
        If |det P| <= eps_det max|P_ij|^n.
    """

    if not source.dim == target.dim == change.dim:
        raise InvalidInputError("algebras and witness must share one dimension")
    rows: np.ndarray = change.array
    if is_singular(rows, tolerances):
        raise SingularChangeError(f"witness is singular (det={float(np.linalg.det(rows)):.3e})")

    natural: float = naturality_residual(source, change)
    mapped: np.ndarray = restructure(source.array, rows)
    structure: float = float(np.max(np.abs(mapped - target.array)))
    passed: bool = (
        natural <= tolerances.eps_residual * naturality_scale(source, change)
        and structure <= tolerances.eps_residual * max(structure_scale(source, target), float(np.max(np.abs(mapped))))
    )
    return passed, max(natural, structure)


def _exact_family(
    source: EvolutionAlgebra, target: EvolutionAlgebra, options: IsoOptions, tolerances: Tolerances
) -> Optional[Tuple[BasisChange, float]]:
    """
    Solves for witnesses of the form diag(d) times a permutation.

    With N the permuted source matrix, the witness maps N_pq to d_p^2 N_pq / d_q, so every non-zero target
    entry fixes sign(d_q) and gives one linear equation 2 u_p - u_q = log|B_pq / N_pq| in u = log|d|.
    """

    dim: int = source.dim
    matrix: np.ndarray = source.array
    goal: np.ndarray = target.array
    goal_support: np.ndarray = np.abs(goal) > tolerances.eps_rank * float(np.max(np.abs(goal)))
    support_entries = np.argwhere(goal_support)

    for order in itertools.permutations(range(dim)):
        permutation: np.ndarray = np.eye(dim)[list(order)]
        permuted: np.ndarray = permutation @ matrix @ permutation.T
        support: np.ndarray = np.abs(permuted) > tolerances.eps_rank * float(np.max(np.abs(permuted)))
        if not np.array_equal(support, goal_support):
            continue
        ratios: np.ndarray = goal[goal_support] / permuted[goal_support]

        logarithms: np.ndarray = np.zeros(dim)
        if len(support_entries):
            system: np.ndarray = np.zeros((len(support_entries), dim))
            for row, (p, q) in enumerate(support_entries):
                system[row, p] += 2.0
                system[row, q] -= 1.0
            logarithms, *_ = np.linalg.lstsq(system, np.log(np.abs(ratios)), rcond=None)

        for signs in itertools.product((1.0, -1.0), repeat=dim):
            if any(np.sign(ratio) != signs[q] for ratio, (_, q) in zip(ratios, support_entries)):
                continue
            candidate = BasisChange.from_array(np.diag(np.array(signs) * np.exp(logarithms)) @ permutation)
            if np.linalg.cond(candidate.array) > options.max_condition:
                continue
            try:
                passed, residual = verify_iso(source, target, candidate, tolerances)
            except SingularChangeError:
                continue
            if passed:
                return candidate, residual
    return None


def _stacked_residual(flat: np.ndarray, source: np.ndarray, target: np.ndarray, dim: int) -> np.ndarray:
    rows: np.ndarray = flat.reshape(dim, dim)
    products: np.ndarray = np.einsum("ik,pi,ri->prk", source, rows, rows)
    upper = np.triu_indices(dim, k=1)
    natural: np.ndarray = products[upper].ravel()
    try:
        structure: np.ndarray = (restructure(source, rows) - target).ravel()
    except np.linalg.LinAlgError:
        structure = np.full(dim * dim, SINGULAR_PENALTY)
    return np.concatenate([natural, structure])


def _least_squares(
    source: EvolutionAlgebra, target: EvolutionAlgebra, options: IsoOptions, tolerances: Tolerances
) -> Tuple[Optional[Tuple[BasisChange, float]], Optional[float]]:
    dim: int = source.dim
    generator = np.random.default_rng(options.seed)
    best: Optional[float] = None
    for _ in range(options.restarts):
        start: np.ndarray = generator.uniform(-START_BOX, START_BOX, dim * dim)
        if is_singular(start.reshape(dim, dim), tolerances):
            continue
        try:
            solution = least_squares(
                _stacked_residual,
                start,
                method="lm",
                max_nfev=options.max_iter * (dim * dim + 1),
                args=(source.array, target.array, dim),
            )
        except (ValueError, np.linalg.LinAlgError):
            continue
        rows: np.ndarray = solution.x.reshape(dim, dim)
        if not np.all(np.isfinite(rows)) or is_singular(rows, tolerances):
            continue
        if np.linalg.cond(rows) > options.max_condition:
            continue
        candidate = BasisChange.from_array(rows)
        passed, residual = verify_iso(source, target, candidate, tolerances)
        best = residual if best is None else min(best, residual)
        if passed:
            return (candidate, residual), best
    return None, best


def iso_search(
    source: EvolutionAlgebra,
    target: EvolutionAlgebra,
    options: IsoOptions = DEFAULT_ISO_OPTIONS,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> IsoResult:
    """
    Looks for a natural basis change mapping source onto target.

    Algebras with different structural invariants are rejected without searching. Otherwise the
    permutation-times-diagonal family is solved exactly, then seeded Levenberg-Marquardt restarts over the
    full matrix minimise the naturality and structure residuals. Every candidate is re-verified with
    verify_iso before it is reported.

    Returns
    -------
    result: IsoResult
        found=False means the budget was exhausted, not that the algebras are non-isomorphic.
    """

    if source.dim != target.dim:
        raise InvalidInputError(f"cannot compare algebras of dimensions {source.dim} and {target.dim}")
    if structural_invariants(source, tolerances) != structural_invariants(target, tolerances):
        return IsoResult(found=False, reason=IsoReason.INVARIANTS_DIFFER)

    if options.include_exact_family:
        exact = _exact_family(source, target, options, tolerances)
        if exact is not None:
            witness, residual = exact
            return IsoResult(found=True, witness=witness, residual=residual, reason=IsoReason.EXACT_FAMILY)

    best: Optional[float] = None
    if options.include_least_squares:
        numeric, best = _least_squares(source, target, options, tolerances)
        if numeric is not None:
            witness, residual = numeric
            return IsoResult(found=True, witness=witness, residual=residual, reason=IsoReason.LEAST_SQUARES)

    logger.debug("no witness within %d restarts (best residual %s)", options.restarts, best)
    return IsoResult(found=False, residual=best, reason=IsoReason.BUDGET_EXHAUSTED)
