"""Pontryagin rings from graded presentations: normal forms, exact dimensions, duals and series."""

from .algebra import Element, FieldTag, GeneratorTable, graded_commutator, parse_element
from .hopf import HopfStructure, coproduct, cup, dual, pair, standard_hopf
from .identities import series_of
from .oracle import ideal_contains, quotient_dimension, verify_basis
from .presentations import Presentation, glambda, preset
from .rewrite import RewriteSystem, compile_presentation, normal_form
from .series import PowerSeries, james_series, rational_series

__all__ = [
    "Element", "FieldTag", "GeneratorTable", "HopfStructure", "PowerSeries", "Presentation",
    "RewriteSystem", "compile_presentation", "coproduct", "cup", "dual", "glambda",
    "graded_commutator", "ideal_contains", "james_series", "normal_form", "pair", "parse_element",
    "preset", "quotient_dimension", "rational_series", "series_of", "standard_hopf", "verify_basis",
]
