""" Classification of three-dimensional real evolution algebras with a one-dimensional derived subalgebra. """

import logging
import math
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .algebra import (
    DEFAULT_TOLERANCES,
    algebras_equal,
    compose_changes,
    derived_dim,
    is_natural_change,
    structural_invariants,
    structure_residual,
    transform,
)
from .canonical import COINCIDENT_LABELS, FORMS_3D, form_3d, same_class
from .contracts import (
    BasisChange,
    CaseParams,
    Classification3,
    EvolutionAlgebra,
    IsoOptions,
    Label3,
    StructuralInvariants,
    Tolerances,
)
from .contracts.errors import (
    ClassificationFailedError,
    InvalidInputError,
    NotNaturalError,
    RankNotOneError,
    SingularChangeError,
)
from .iso import iso_search

logger = logging.getLogger(__name__)

__all__ = [
    "COINCIDENT_LABELS",
    "canonical3",
    "classify3",
    "extract_case_params",
    "random_rank1_algebra",
    "same_class",
]

FALLBACK_ISO_OPTIONS = IsoOptions(restarts=32, max_iter=100)
MAX_REENTRIES: int = 3

SWAP_23 = ((1.0, 0.0, 0.0), (0.0, 0.0, 1.0), (0.0, 1.0, 0.0))
CYCLE_231 = ((0.0, 1.0, 0.0), (0.0, 0.0, 1.0), (1.0, 0.0, 0.0))
REVERSE_321 = ((0.0, 0.0, 1.0), (0.0, 1.0, 0.0), (1.0, 0.0, 0.0))

SQUARE_ZERO_CANDIDATES: Tuple[Label3, ...] = (Label3.E1, Label3.E2, Label3.E3)
GENERIC_CANDIDATES: Tuple[Label3, ...] = (Label3.E7, Label3.E8, Label3.E9, Label3.E10)
RADICAL_CANDIDATES: Tuple[Label3, ...] = (Label3.E11, Label3.E12, Label3.E13)

# Landing form of the two-stage reduction, keyed by the case label built from the signs of c1, c2, t and s.
GENERIC_TARGETS: Dict[str, Label3] = {
    "1.2.3": Label3.E7,
    "1.2.4.1": Label3.E8,
    "1.2.4.2": Label3.E9,
    "1.2.5.1.1": Label3.E10,
    "1.2.5.1.2": Label3.E7,
    "1.2.5.2.1": Label3.E8,
    "1.2.5.2.2": Label3.E9,
    "1.2.6.1.1": Label3.E9,
    "1.2.6.1.2": Label3.E8,
    "1.2.6.2.1": Label3.E7,
    "1.2.6.2.2": Label3.E10,
}


def canonical3(label: Label3) -> EvolutionAlgebra:
    return form_3d(Label3(label))


def extract_case_params(algebra: EvolutionAlgebra, tolerances: Tolerances = DEFAULT_TOLERANCES) -> CaseParams:
    """
    Reads off the pivot row and the row multipliers of a rank-one structure matrix.

    The first non-zero row is moved to the front by a transposition; a = (a1, a2, a3) is that row in the
    permuted basis and c1, c2 are the least-squares multipliers of the remaining rows against it.

    Raises
    ------
    RankNotOneError
        If the derived subalgebra is not one-dimensional or the rows are not proportional within tolerance.
    """

    if algebra.dim != 3:
        raise InvalidInputError(f"expected a three-dimensional algebra, got dimension {algebra.dim}")
    rank: int = derived_dim(algebra, tolerances)
    if rank != 1:
        raise RankNotOneError(f"dim E^2 = {rank}, expected 1")

    matrix: np.ndarray = algebra.array
    row_sizes: np.ndarray = np.max(np.abs(matrix), axis=1)
    pivot: int = int(np.argmax(row_sizes > tolerances.eps_rank * float(np.max(row_sizes))))
    order: List[int] = [0, 1, 2]
    order[0], order[pivot] = order[pivot], order[0]
    permutation: np.ndarray = np.eye(3)[order]
    permuted: np.ndarray = permutation @ matrix @ permutation.T

    row: np.ndarray = permuted[0]
    c1: float = float(permuted[1] @ row / (row @ row))
    c2: float = float(permuted[2] @ row / (row @ row))
    mismatch: float = max(float(np.max(np.abs(permuted[1] - c1 * row))), float(np.max(np.abs(permuted[2] - c2 * row))))
    if mismatch > tolerances.eps_residual * float(np.max(np.abs(matrix))):
        raise RankNotOneError(f"rows are not proportional to the pivot row (residual {mismatch:.3e})")

    return CaseParams(
        a1=float(row[0]),
        a2=float(row[1]),
        a3=float(row[2]),
        c1=c1,
        c2=c2,
        pivot_perm=tuple(order),
        pivot_row=tuple(float(entry) for entry in matrix[pivot]),
    )


class _BranchRejected(Exception):
    def __init__(self, case: str, candidates: Sequence[Label3]):
        super().__init__(case)
        self.case = case
        self.candidates = tuple(candidates)


class _CaseTreeWalker:
    """
    Walks the reduction tree for one input, composing every basis change into a single witness.

    Each prescribed change is checked for naturality before it is applied and each landing form is compared
    with the canonical matrix and its structural invariants; a failed check hands over to a witness search
    from the current basis.
    """

    def __init__(self, algebra: EvolutionAlgebra, tolerances: Tolerances, iso_options: IsoOptions):
        self.current: EvolutionAlgebra = algebra
        self.invariants: StructuralInvariants = structural_invariants(algebra, tolerances)
        self.witness: BasisChange = BasisChange.identity(3)
        self.trace: List[str] = []
        self.reentries: int = 0
        self.case: str = "start"
        self.tolerances = tolerances
        self.iso_options = iso_options

    # predicates

    def zero(self, value: float, scale: float) -> bool:
        return abs(value) <= self.tolerances.eps_sign * scale

    def zero_entry(self, params: CaseParams, value: float) -> bool:
        """An entry of the pivot row, measured against the whole row."""
        return self.zero(value, max(abs(params.a1), abs(params.a2), abs(params.a3)))

    def zero_multiplier(self, params: CaseParams, value: float) -> bool:
        """A row multiplier, measured against the largest row of the current matrix."""
        return self.zero(value, max(1.0, abs(params.c1), abs(params.c2)))

    def enter(self, case: str) -> None:
        self.case = case
        self.trace.append(case)

    # basis changes

    def step(self, rows, candidates: Sequence[Label3]) -> CaseParams:
        array: np.ndarray = np.asarray(rows, dtype=float)
        if not np.all(np.isfinite(array)):
            raise _BranchRejected(self.case, candidates)
        change = BasisChange.from_array(array)
        if not is_natural_change(self.current, change, self.tolerances):
            raise _BranchRejected(self.case, candidates)
        try:
            mapped: EvolutionAlgebra = transform(self.current, change, self.tolerances)
            params: CaseParams = extract_case_params(mapped, self.tolerances)
        except (NotNaturalError, SingularChangeError, RankNotOneError) as error:
            raise _BranchRejected(self.case, candidates) from error
        self.current = mapped
        self.witness = compose_changes(change, self.witness)
        logger.debug("case %s: applied %s", self.case, change.rows)
        return params

    def land(self, label: Label3, candidates: Sequence[Label3]) -> Label3:
        target: EvolutionAlgebra = canonical3(label)
        if algebras_equal(self.current, target, self.tolerances) and self.invariants == structural_invariants(
            target, self.tolerances
        ):
            return label
        raise _BranchRejected(self.case, candidates)

    def reenter(self, params: CaseParams) -> Label3:
        self.reentries += 1
        if self.reentries > MAX_REENTRIES:
            raise ClassificationFailedError("too many permutation reductions", self.trace)
        return self.dispatch(params)

    # tree

    def walk(self) -> Label3:
        params: CaseParams = extract_case_params(self.current, self.tolerances)
        try:
            if params.pivot_perm != (0, 1, 2):
                self.enter("pivot")
                params = self.step(np.eye(3)[list(params.pivot_perm)], FORMS_3D)
            return self.dispatch(params)
        except _BranchRejected as rejection:
            self.trace.append(f"{rejection.case}:rejected")
            logger.warning(
                "case %s: prescribed basis change failed its check, searching %s",
                rejection.case,
                ", ".join(label.value for label in rejection.candidates),
            )
            return self.fallback(rejection.candidates)

    def dispatch(self, params: CaseParams) -> Label3:
        if self.zero_entry(params, params.a1):
            return self.case_2(params)
        return self.case_1(params)

    def case_1(self, params: CaseParams) -> Label3:
        self.enter("1")
        if abs(params.a1 - 1.0) > self.tolerances.eps_sign:
            params = self.step(np.diag([1.0 / params.a1, 1.0, 1.0]), FORMS_3D)
        a2, a3, c1, c2 = params.a2, params.a3, params.c1, params.c2
        s: float = 1.0 + a2**2 * c1 + a3**2 * c2
        if self.zero(s, max(1.0, a2**2 * abs(c1), a3**2 * abs(c2))):
            return self.case_1_1(params)
        return self.case_1_2(params, s)

    def case_1_1(self, params: CaseParams) -> Label3:
        self.enter("1.1")
        a2, a3, c1, c2 = params.a2, params.a3, params.c1, params.c2
        if not self.zero(1.0 + a3**2 * c2, max(1.0, a3**2 * abs(c2))):
            self.enter("1.1.1")
            if not self.zero_entry(params, a3):
                return self.case_1_1_1_1(params)
            return self.case_1_1_1_2(params)

        self.enter("1.1.2")
        if self.zero_multiplier(params, c1) and self.zero_entry(params, a2):
            self.enter("1.1.2.2")
            self.step(((1.0, 0.0, 0.0), (0.0, 0.0, a3), (0.0, 1.0, 0.0)), SQUARE_ZERO_CANDIDATES)
            return self.land(Label3.E1, SQUARE_ZERO_CANDIDATES)
        self.enter("1.1.2.3" if self.zero_multiplier(params, c1) else "1.1.2.1")
        return self.reenter(self.step(SWAP_23, SQUARE_ZERO_CANDIDATES))

    def case_1_1_1_1(self, params: CaseParams) -> Label3:
        self.enter("1.1.1.1")
        params = self.step(np.diag([1.0, params.a2, params.a3]), SQUARE_ZERO_CANDIDATES)
        u: float = params.c2
        if self.zero_multiplier(params, u):
            self.step(((1.0, 0.0, 1.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)), SQUARE_ZERO_CANDIDATES)
            return self.land(Label3.E1, SQUARE_ZERO_CANDIDATES)
        if self.zero(1.0 + u, max(1.0, abs(u))):
            raise _BranchRejected(self.case, SQUARE_ZERO_CANDIDATES)
        d: float = u**3 + 2.0 * u**2 + u
        alpha: float = (1.0 + d) / (2.0 * (1.0 + u))
        beta: float = (-1.0 + d) / (2.0 * (1.0 + u))
        self.step(((alpha, beta, alpha), (beta, alpha, beta), (-u, 0.0, 1.0)), SQUARE_ZERO_CANDIDATES)
        return self.land(Label3.E2, SQUARE_ZERO_CANDIDATES)

    def case_1_1_1_2(self, params: CaseParams) -> Label3:
        self.enter("1.1.1.2")
        c2: float = params.c2
        if self.zero_multiplier(params, c2):
            scale, target = 1.0, Label3.E1
        else:
            scale, target = 1.0 / math.sqrt(abs(c2)), (Label3.E2 if c2 > 0 else Label3.E3)
        self.step(np.diag([1.0, params.a2, scale]), SQUARE_ZERO_CANDIDATES)
        return self.land(target, SQUARE_ZERO_CANDIDATES)

    def case_1_2(self, params: CaseParams, s: float) -> Label3:
        self.enter("1.2")
        a1, a2, a3, c1, c2 = params.a1, params.a2, params.a3, params.c1, params.c2
        c1_zero, c2_zero = self.zero_multiplier(params, c1), self.zero_multiplier(params, c2)
        if c1_zero and c2_zero:
            self.enter("1.2.1")
            self.step(((a1, a2, a3), (0.0, 1.0, 1.0), (0.0, 2.0, 1.0)), (Label3.E4,))
            return self.land(Label3.E4, (Label3.E4,))
        if c1_zero:
            return self.case_1_2_2(params)
        if c2_zero:
            self.enter("1.2.8")
            return self.reenter(self.step(SWAP_23, FORMS_3D))
        t: float = 1.0 + a2**2 * c1
        if self.zero(t, max(1.0, a2**2 * abs(c1))):
            return self.case_1_2_7(params, s)
        return self.case_1_2_generic(params, s, t)

    def case_1_2_2(self, params: CaseParams) -> Label3:
        self.enter("1.2.2")
        candidates = (Label3.E5, Label3.E6)
        a2, a3, c2 = params.a2, params.a3, params.c2
        staged: CaseParams = self.step(((1.0, a2, a3), (0.0, 1.0, 0.0), (-a3 * c2, 1.0, 1.0)), candidates)
        s, c2 = staged.a1, staged.c2
        if self.zero_entry(staged, s) or self.zero_multiplier(staged, c2):
            raise _BranchRejected(self.case, candidates)
        self.step(np.diag([1.0 / s, 1.0, 1.0 / (math.sqrt(abs(c2)) * s)]), candidates)
        return self.land(Label3.E5 if c2 > 0 else Label3.E6, candidates)

    def case_1_2_7(self, params: CaseParams, s: float) -> Label3:
        """
        Here u = e1^2 is orthogonal to v = e1 + a2 e2 for the form q(x) = x1^2 + c1 x2^2 + c2 x3^2, so
        u^perp is a hyperbolic plane spanned by v and h = -a3 c2 e1 + e3; f2 and f3 are its normalised
        isotropic combinations with q(f2) = 1 and q(f3) = -1.
        """

        self.enter("1.2.7")
        candidates = (Label3.E8, Label3.E10)
        a1, a2, a3, c1, c2 = params.a1, params.a2, params.a3, params.c1, params.c2
        weights: np.ndarray = np.array([1.0, c1, c2])
        v: np.ndarray = np.array([1.0, a2, 0.0])
        h: np.ndarray = np.array([-a3 * c2 / a1, 0.0, 1.0])
        pairing: float = float(np.sum(weights * v * h))
        if self.zero(pairing, max(1.0, abs(a3 * c2))) or self.zero(s, 1.0):
            raise _BranchRejected(self.case, candidates)
        shift: float = -float(np.sum(weights * h * h)) / pairing
        f2: np.ndarray = h + (shift / 2.0 + 1.0 / (2.0 * pairing)) * v
        f3: np.ndarray = h + (shift / 2.0 - 1.0 / (2.0 * pairing)) * v
        if s < 0:
            f2, f3 = f3, f2
        self.step(np.vstack([[a1, a2, a3], f2, f3]), candidates)
        scale: float = 1.0 / math.sqrt(abs(s))
        self.step(np.diag([1.0 / s, scale, scale]), candidates)
        return self.land(Label3.E8, candidates)

    def case_1_2_generic(self, params: CaseParams, s: float, t: float) -> Label3:
        a2, a3, c1, c2 = params.a2, params.a3, params.c1, params.c2
        if c1 > 0 and c2 > 0:
            case = "1.2.3"
        elif c1 > 0:
            case = f"1.2.4.{1 if s > 0 else 2}"
        else:
            case = f"1.2.{5 if c2 > 0 else 6}.{1 if t > 0 else 2}.{1 if s > 0 else 2}"
        self.enter(case)
        self.step(
            ((1.0, a2, a3), (-a2 * c1, 1.0, 0.0), (-a3 * c2 / t, -a3 * a2 * c2 / t, 1.0)),
            GENERIC_CANDIDATES,
        )
        self.step(
            np.diag([1.0 / s, 1.0 / math.sqrt(abs(c1 * t * s)), math.sqrt(abs(t)) / (math.sqrt(abs(c2)) * s)]),
            GENERIC_CANDIDATES,
        )
        return self.land(GENERIC_TARGETS[case], GENERIC_CANDIDATES)

    def case_2(self, params: CaseParams) -> Label3:
        self.enter("2")
        if self.zero_entry(params, params.a2):
            params = self.step(SWAP_23, RADICAL_CANDIDATES)
        a2, a3, c1, c2 = params.a2, params.a3, params.c1, params.c2
        if not self.zero_multiplier(params, c1):
            self.enter("2.1")
            return self.reenter(self.step(CYCLE_231, FORMS_3D))
        self.enter("2.2")
        if not self.zero_multiplier(params, c2) and not self.zero_entry(params, a3):
            self.enter("2.2.1")
            return self.reenter(self.step(REVERSE_321, FORMS_3D))
        if self.zero_multiplier(params, c2):
            self.enter("2.2.2.1")
            self.step(((0.0, a2, a3), (0.0, 0.0, 1.0 / a2), (1.0, 0.0, 0.0)), RADICAL_CANDIDATES)
            return self.land(Label3.E11, RADICAL_CANDIDATES)
        self.enter("2.2.2.2" if c2 > 0 else "2.2.2.3")
        self.step(((0.0, a2, 0.0), (1.0, 0.0, 0.0), (0.0, 0.0, 1.0 / math.sqrt(abs(c2)))), RADICAL_CANDIDATES)
        return self.land(Label3.E12 if c2 > 0 else Label3.E13, RADICAL_CANDIDATES)

    # recovery

    def fallback(self, candidates: Sequence[Label3]) -> Label3:
        exact_only: IsoOptions = self.iso_options.model_copy(update={"include_least_squares": False})
        remaining: Tuple[Label3, ...] = tuple(label for label in FORMS_3D if label not in candidates)
        for labels, marker in ((tuple(candidates), "fallback"), (remaining, "fallback-any")):
            for options in (exact_only, self.iso_options):
                for label in labels:
                    result = iso_search(self.current, canonical3(label), options, self.tolerances)
                    if not result.found:
                        continue
                    self.current = transform(self.current, result.witness, self.tolerances)
                    self.witness = compose_changes(result.witness, self.witness)
                    self.trace.append(f"{marker}:{label.value}")
                    return label
        raise ClassificationFailedError("no canonical form admitted a verified witness", self.trace)


def classify3(
    algebra: EvolutionAlgebra,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    iso_options: IsoOptions = FALLBACK_ISO_OPTIONS,
) -> Classification3:
    """
    Reduces a three-dimensional algebra with dim E^2 = 1 to one of the thirteen canonical forms.

    The walk starts from the matrix divided by its largest entry, which the change diag(1/max|a_ik|) produces;
    that change is the first factor of the reported witness, so inputs differing by a positive factor take
    the same branches.

    Parameters
    ----------
    algebra: EvolutionAlgebra
        The algebra to classify.
    tolerances: Tolerances
        eps_sign sets the dead-band of the branch predicates, eps_residual the verification bound.
    iso_options: IsoOptions
        Budget of the witness search used when a prescribed basis change fails its check.

    Returns
    -------
    classification: Classification3
        The label, the composed witness and the visited case labels.

    Raises
    ------
    RankNotOneError
        If dim E^2 != 1.
    ClassificationFailedError
        If neither the reduction nor the fallback search yields a verified witness.
    """

    extract_case_params(algebra, tolerances)
    size: float = float(np.max(np.abs(algebra.array)))
    prescale: BasisChange = BasisChange.identity(3) if size == 1.0 else BasisChange.from_array(np.eye(3) / size)
    normalised: EvolutionAlgebra = EvolutionAlgebra.from_array(algebra.array / size)
    for label, matrix in FORMS_3D.items():
        if algebras_equal(normalised, EvolutionAlgebra(dim=3, matrix=matrix), tolerances):
            return Classification3(
                label=label,
                witness=prescale,
                residual=structure_residual(normalised, canonical3(label)),
                verified=True,
                trace=("already-canonical",),
            )

    walker = _CaseTreeWalker(normalised, tolerances, iso_options)
    label: Label3 = walker.walk()
    witness: BasisChange = compose_changes(walker.witness, prescale)
    try:
        mapped: EvolutionAlgebra = transform(algebra, witness, tolerances)
    except (NotNaturalError, SingularChangeError) as error:
        raise ClassificationFailedError(f"composed witness failed re-verification: {error}", walker.trace) from error
    target: EvolutionAlgebra = canonical3(label)
    if not algebras_equal(mapped, target, tolerances):
        raise ClassificationFailedError(f"composed witness does not reach {label.value}", walker.trace)
    if structural_invariants(algebra, tolerances) != structural_invariants(target, tolerances):
        raise ClassificationFailedError(f"structural invariants differ from {label.value}", walker.trace)
    logger.debug("classified as %s via %s", label.value, " > ".join(walker.trace))
    return Classification3(
        label=label,
        witness=witness,
        residual=structure_residual(mapped, target),
        verified=True,
        trace=tuple(walker.trace),
    )


def random_rank1_algebra(seed: int, scale: float = 3.0) -> EvolutionAlgebra:
    """
    A random structure matrix with rows (r, c1 r, c2 r).

    Entries of r and the multipliers c1, c2 are uniform in [-scale, scale] and each is zero with probability
    1/4, so degenerate branches are reached; r always keeps at least one non-zero entry.
    """

    if not scale > 0:
        raise InvalidInputError(f"scale must be positive, got {scale}")
    generator = np.random.default_rng(seed)

    def draw(size: int) -> np.ndarray:
        values: np.ndarray = generator.uniform(-scale, scale, size)
        kept: np.ndarray = generator.uniform(size=size) >= 0.25
        return values * kept

    row: np.ndarray = draw(3)
    if not np.any(row):
        row[generator.integers(3)] = scale
    multipliers: np.ndarray = draw(2)
    return EvolutionAlgebra.from_array(np.vstack([row, multipliers[0] * row, multipliers[1] * row]))
