"""Exact computation with Capelli-type central elements of U(gl_N), U(o_N) and U(sp_N)."""

from __future__ import annotations

from .coeff import U, UnivPoly, format_poly, parse_poly
from .elements import ELEMENTS, IDENTITIES, build, build_element, eig_formula
from .matrices import NCMatrix, column_det, column_per, det_k, generator_matrix, hafnian, per_k, pfaffian, sym_det, sym_per
from .pbw import EnvElement, Weight, eigenvalue, env_commutator, env_mul, hc_project, render, weight_from_partition
from .realizations import (
    LieRealization,
    general_realization,
    gl_realization,
    make_realization,
    o_identity_realization,
    o_split_realization,
    sp_split_realization,
)
from .verify import CheckReport, CheckSpec, run_spec
from .weyl import ExtElement, SpCalculus, bracket, fischer_pair, transform

__version__ = "0.1.0"

__all__ = [
    "U",
    "UnivPoly",
    "format_poly",
    "parse_poly",
    "ELEMENTS",
    "IDENTITIES",
    "build",
    "build_element",
    "eig_formula",
    "NCMatrix",
    "column_det",
    "column_per",
    "det_k",
    "generator_matrix",
    "hafnian",
    "per_k",
    "pfaffian",
    "sym_det",
    "sym_per",
    "EnvElement",
    "Weight",
    "eigenvalue",
    "env_commutator",
    "env_mul",
    "hc_project",
    "render",
    "weight_from_partition",
    "LieRealization",
    "general_realization",
    "gl_realization",
    "make_realization",
    "o_identity_realization",
    "o_split_realization",
    "sp_split_realization",
    "CheckReport",
    "CheckSpec",
    "run_spec",
    "ExtElement",
    "SpCalculus",
    "bracket",
    "fischer_pair",
    "transform",
]
