""" Structure matrices of the canonical forms in dimensions 2 and 3. """

from typing import Dict, FrozenSet, Optional, Tuple

import numpy as np

from .contracts import Class2, EvolutionAlgebra, Label2, Label3, Matrix

FIXED_FORMS_2D: Dict[Label2, Matrix] = {
    Label2.ZERO: ((0.0, 0.0), (0.0, 0.0)),
    Label2.E1: ((1.0, 0.0), (0.0, 0.0)),
    Label2.E2: ((1.0, 0.0), (1.0, 0.0)),
    Label2.E3: ((1.0, 1.0), (-1.0, -1.0)),
    Label2.E4: ((0.0, 1.0), (0.0, 0.0)),
    Label2.E5: ((0.0, 1.0), (0.0, -1.0)),
}

FORMS_3D: Dict[Label3, Matrix] = {
    Label3.E1: ((1.0, 1.0, 0.0), (-1.0, -1.0, 0.0), (0.0, 0.0, 0.0)),
    Label3.E2: ((1.0, 1.0, 0.0), (-1.0, -1.0, 0.0), (1.0, 1.0, 0.0)),
    Label3.E3: ((1.0, 1.0, 0.0), (-1.0, -1.0, 0.0), (-1.0, -1.0, 0.0)),
    Label3.E4: ((1.0, 0.0, 0.0), (0.0, 0.0, 0.0), (0.0, 0.0, 0.0)),
    Label3.E5: ((1.0, 0.0, 0.0), (0.0, 0.0, 0.0), (1.0, 0.0, 0.0)),
    Label3.E6: ((1.0, 0.0, 0.0), (0.0, 0.0, 0.0), (-1.0, 0.0, 0.0)),
    Label3.E7: ((1.0, 0.0, 0.0), (1.0, 0.0, 0.0), (1.0, 0.0, 0.0)),
    Label3.E8: ((1.0, 0.0, 0.0), (1.0, 0.0, 0.0), (-1.0, 0.0, 0.0)),
    Label3.E9: ((1.0, 0.0, 0.0), (-1.0, 0.0, 0.0), (-1.0, 0.0, 0.0)),
    Label3.E10: ((1.0, 0.0, 0.0), (-1.0, 0.0, 0.0), (1.0, 0.0, 0.0)),
    Label3.E11: ((0.0, 0.0, 0.0), (0.0, 0.0, 0.0), (1.0, 0.0, 0.0)),
    Label3.E12: ((0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (1.0, 0.0, 0.0)),
    Label3.E13: ((0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (-1.0, 0.0, 0.0)),
}

# Pairs of listed forms that are isomorphic to each other.
COINCIDENT_LABELS: Tuple[FrozenSet[Label3], ...] = (
    frozenset({Label3.E2, Label3.E3}),
    frozenset({Label3.E8, Label3.E10}),
)


def form_2d(klass: Class2) -> EvolutionAlgebra:
    matrix: Optional[Matrix] = FIXED_FORMS_2D.get(klass.label)
    if matrix is not None:
        return EvolutionAlgebra(dim=2, matrix=matrix)
    if klass.label == Label2.E6:
        a2, a3 = klass.params
        return EvolutionAlgebra(dim=2, matrix=np.array([[1.0, a2], [a3, 1.0]]))
    (a4,) = klass.params
    return EvolutionAlgebra(dim=2, matrix=np.array([[0.0, 1.0], [1.0, a4]]))


def form_3d(label: Label3) -> EvolutionAlgebra:
    return EvolutionAlgebra(dim=3, matrix=FORMS_3D[label])


def same_class(first: Label3, second: Label3) -> bool:
    """True when both labels name the same isomorphism class."""
    if first == second:
        return True
    return any({first, second} <= pair for pair in COINCIDENT_LABELS)
