"""Finite topological spaces and monoids: separation reflections, quotients, products and cellularity."""

from .errors import FintopError
from .finspace import (
    FiniteSpace,
    Partition,
    SpaceMap,
    cellularity,
    closure,
    discrete_space,
    indiscrete_space,
    interior,
    make_space,
    product,
    quotient_space,
    semiregularization,
    separation_profile,
    sierpinski,
)
from .instances import parse_instance, serialize
from .laws import LAWS, Verdict, run_law, run_suite
from .reflections import SeparationAxiom, certify_universal, reflect, reflect_monoid, reflect_space
from .semigroup import CayleyTable, Congruence, congruence_closure, make_table
from .topmonoid import TopMonoid, assemble, closed_congruence_closure, gamma_retopologize

__version__ = "0.1.0"

__all__ = [
    "CayleyTable",
    "Congruence",
    "FiniteSpace",
    "FintopError",
    "LAWS",
    "Partition",
    "SeparationAxiom",
    "SpaceMap",
    "TopMonoid",
    "Verdict",
    "assemble",
    "cellularity",
    "certify_universal",
    "closed_congruence_closure",
    "closure",
    "congruence_closure",
    "discrete_space",
    "gamma_retopologize",
    "indiscrete_space",
    "interior",
    "make_space",
    "make_table",
    "parse_instance",
    "product",
    "quotient_space",
    "reflect",
    "reflect_monoid",
    "reflect_space",
    "run_law",
    "run_suite",
    "semiregularization",
    "separation_profile",
    "serialize",
    "sierpinski",
]
