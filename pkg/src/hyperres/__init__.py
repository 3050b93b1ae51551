"""Exact combinatorics and residues for central hyperplane arrangements."""

__version__ = "0.1.0"

from .arrangement import (
    Arrangement,
    ArrangementError,
    completion,
    enumerate_irreducibles,
    irreducible_components,
    is_complete,
    is_irreducible,
    type_a_preset,
    validate,
)
from .jk import OrientationContext, jk_oracle_laplace, jk_residue
from .nested import enumerate_maximal_nested, enumerate_nbc, enumerate_proper_mns, eta
from .polynomial import Polynomial
from .residue import RationalTopForm, form_of_basis, pairing_matrix, project, residue
