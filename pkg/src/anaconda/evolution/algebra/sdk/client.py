""" This module provides an interface for evolution algebra analysis. """

from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .algebra import ArrayLike, as_vector
from .canonical import FORMS_3D
from .classify2d import canonical2, classify2, make_class2, table2d
from .classify3d import canonical3, classify3
from .contracts import (
    BaseModel,
    BasisChange,
    Class2,
    Classification2,
    Classification3,
    EvolutionAlgebra,
    FixedPointReport,
    IsoOptions,
    IsoResult,
    Label3,
    SolverOptions,
    TableEntry,
    TableRow,
    Tolerances,
)
from .contracts.errors import InvalidInputError
from .dynamics import fixed_points, jacobian_algebra
from .iso import iso_search, verify_iso

# Every non-zero fixed point of the 3D canonical forms linearises to this class.
PREDICTED_3D_LINEARIZATION: Label3 = Label3.E4


class EvolutionAlgebraClient(BaseModel):
    """
    This class provides a single entry point to classification, dynamics and isomorphism search.

    Attributes
    ----------
    tolerances: Tolerances
        Numerical tolerances shared by every operation.
    solver_options: SolverOptions
        Multistart Newton settings.
    iso_options: IsoOptions
        Isomorphism search budget.
    """

    tolerances: Tolerances = Tolerances()
    solver_options: SolverOptions = SolverOptions()
    iso_options: IsoOptions = IsoOptions()

    def classify(self, algebra: EvolutionAlgebra) -> Union[Classification2, Classification3]:
        """
        Classifies an algebra of dimension 2 or 3.

        Returns
        -------
        classification: Union[Classification2, Classification3]
            The canonical class and a verified witness.
        """

        if algebra.dim == 2:
            return classify2(algebra, self.tolerances, self.iso_options)
        return classify3(algebra, self.tolerances, self.iso_options)

    def canonical(self, dim: int, label: str, params: Optional[Sequence[float]] = None) -> EvolutionAlgebra:
        if dim == 2:
            return canonical2(make_class2(label, params))
        if dim != 3:
            raise InvalidInputError(f"dimension must be 2 or 3, got {dim}")
        if params:
            raise InvalidInputError("three-dimensional canonical forms take no parameters")
        try:
            return canonical3(Label3(label))
        except ValueError as error:
            raise InvalidInputError(f"unknown three-dimensional label {label}") from error

    def fixed_points(self, algebra: EvolutionAlgebra) -> FixedPointReport:
        return fixed_points(algebra, self.solver_options, self.tolerances)

    def linearize(
        self, algebra: EvolutionAlgebra, point: Optional[ArrayLike] = None
    ) -> List[Tuple[Tuple[float, ...], EvolutionAlgebra]]:
        """
        Jacobian algebras at one point, or at every non-zero fixed point when no point is given.

        Returns
        -------
        linearizations: list[Tuple[Tuple[float, ...], EvolutionAlgebra]]
            Pairs of point and Jacobian algebra.
        """

        if point is not None:
            vector: np.ndarray = as_vector(algebra, point)
            return [(tuple(float(x) for x in vector), jacobian_algebra(algebra, vector))]
        report: FixedPointReport = self.fixed_points(algebra)
        return [(point, jacobian_algebra(algebra, point)) for point in report.points]

    def iso(self, source: EvolutionAlgebra, target: EvolutionAlgebra) -> IsoResult:
        return iso_search(source, target, self.iso_options, self.tolerances)

    def verify(self, source: EvolutionAlgebra, target: EvolutionAlgebra, witness: BasisChange) -> Tuple[bool, float]:
        return verify_iso(source, target, witness, self.tolerances)

    def table2d(self, klass: Class2) -> TableRow:
        return table2d(klass, self.solver_options, self.tolerances, self.iso_options)

    def table3d(self) -> Tuple[TableRow, ...]:
        """
        Fixed points of the thirteen 3D canonical forms and the classes of their Jacobian algebras.

        Returns
        -------
        rows: Tuple[TableRow, ...]
            One row per canonical form in label order.
        """

        rows: List[TableRow] = []
        for label in FORMS_3D:
            algebra: EvolutionAlgebra = canonical3(label)
            report: FixedPointReport = self.fixed_points(algebra)
            entries: List[TableEntry] = []
            for point in report.points:
                linear: EvolutionAlgebra = jacobian_algebra(algebra, point)
                classified: Label3 = classify3(linear, self.tolerances, self.iso_options).label
                entries.append(
                    TableEntry(
                        fixed_point=point,
                        jacobian_matrix=linear.matrix,
                        classified_as=classified.value,
                        predicted=PREDICTED_3D_LINEARIZATION.value,
                        matches_prediction=classified == PREDICTED_3D_LINEARIZATION,
                    )
                )
            rows.append(TableRow(klass=label.value, rows=tuple(entries), annotations=report.annotations))
        return tuple(rows)
