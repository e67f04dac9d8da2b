"""Exact harmonic theory of invariant forms for the differentials d, d^c and d^Lambda
on Lie group quotients with an invariant compatible triple (J, omega, g)."""

__version__ = "0.1.0"

from .catalog import CatalogEntry, get, run_regressions
from .coframe import AlgebraError, CoframeAlgebra, check_integrability_d, invariant_betti
from .diamonds import TopologicalData, aeppli_diamond, bc_diamond, ddc_totals, hodge_diamond
from .exterior import Form, format_form, parse_form, wedge
from .harmonic import (FAMILIES, HarmonicSpace, Verdict, dimension_table, duality_report, harmonic_space,
                       verify_ddc_decomposition, verify_ddlambda_decomposition, verify_inclusion_theorems)
from .identities import identity_suite
from .modelfile import ModelParseError, dump_model, load_model, parse_model
from .operators import GradedOperator, build
from .scalars import Scalar
from .triple import CompatibleTriple, TripleError, make_triple, predicates, standard_j, weil_star_check

__all__ = [
    "AlgebraError", "CatalogEntry", "CoframeAlgebra", "CompatibleTriple", "FAMILIES", "Form",
    "GradedOperator", "HarmonicSpace", "ModelParseError", "Scalar", "TopologicalData", "TripleError",
    "Verdict", "aeppli_diamond", "bc_diamond", "build", "check_integrability_d", "ddc_totals",
    "dimension_table", "dump_model", "duality_report", "format_form", "get", "harmonic_space",
    "hodge_diamond", "identity_suite", "invariant_betti", "load_model", "make_triple", "parse_form",
    "parse_model", "predicates", "run_regressions", "standard_j", "verify_ddc_decomposition",
    "verify_ddlambda_decomposition", "verify_inclusion_theorems", "weil_star_check", "wedge",
]
