"""Exact symbolic engine for residue computations of perturbed
Hodge-de Rham operators on 4- and 6-dimensional manifolds with boundary.

The pipeline: Clifford trace calculus (Wick contractions, oracle-checked
against the exterior-algebra matrix model), rational functions of the
normal covariable with poles at +-i (pi^+ projection, residue integration),
exact sphere moments, pseudodifferential symbol composition and inverse
recursions at the boundary point, and the interior Lichnerowicz trace data.
"""
from .scalars import GaussianRational, ScalarExpr, canonicalize
from .extmatrix import (CliffMatrix, ExtBasis, build_generators, matrix_trace,
                        word_matrix, word_trace)
from .wick import (PerturbationSpec, adjoint_word, basis_sum, parse_perturbation,
                   trace_identity, wick_trace)
from .xirational import XiRational
from .moments import integrate_sphere, omega_value
from .symbols import (BoundaryData, CliffordElem, OperatorSymbol, boundary_data,
                      inverse_symbol, sigma_order)
from .boundary import (BoundaryReport, CaseSpec, boundary_total, enumerate_cases,
                       evaluate_case)
from .interior import (InteriorReport, interior_integrand, interior_prefactor)
from .manifest import (VerificationReport, assemble_theorem, run_manifest)
from .cli import cli_main

__all__ = [
    "GaussianRational", "ScalarExpr", "canonicalize",
    "CliffMatrix", "ExtBasis", "build_generators", "matrix_trace",
    "word_matrix", "word_trace",
    "PerturbationSpec", "adjoint_word", "basis_sum", "parse_perturbation",
    "trace_identity", "wick_trace",
    "XiRational", "integrate_sphere", "omega_value",
    "BoundaryData", "CliffordElem", "OperatorSymbol", "boundary_data",
    "inverse_symbol", "sigma_order",
    "BoundaryReport", "CaseSpec", "boundary_total", "enumerate_cases",
    "evaluate_case",
    "InteriorReport", "interior_integrand", "interior_prefactor",
    "VerificationReport", "assemble_theorem", "run_manifest",
    "cli_main",
]
