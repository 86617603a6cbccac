"""Quiver Hecke superalgebras, their cyclotomic quotients, and exact checks
of the categorification of integrable highest weight modules."""
from .foundations import (CartanDatum, QParams, RootElt, SuperScalar, Weight, build_q_matrix,
                          pairing, preset, super_quantum_factorial)
from .qhsalg import QuiverHeckeSuperalgebra, ScaleGuardError, graded_dim_series
from .cyclotomic import build_cyclotomic, engine
from .oracle import brute_force_graded_dim, weight_multiplicity

__all__ = ["CartanDatum", "QParams", "RootElt", "SuperScalar", "Weight", "build_q_matrix",
           "pairing", "preset", "super_quantum_factorial", "QuiverHeckeSuperalgebra",
           "ScaleGuardError", "graded_dim_series", "build_cyclotomic", "engine",
           "brute_force_graded_dim", "weight_multiplicity"]
