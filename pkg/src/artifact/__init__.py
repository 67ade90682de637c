"""Exact invariants of extensions of C*-algebras built from K-theory with coefficients."""

from .fgab import FgAbGroup, GroupHom, cyclic, hom
from .sixterm import CKInput, SixTerm, SixTermHom, check_exact, ck_ktheory, ck_model
from .coeffs import CoeffHom, CoeffInvariant, build_invariant, induce_hom, verify_invariant
from .homsolver import aut_lambda_red, hom_lambda_red, hom_six, kernel_of_delta
from .resolution import build_resolution, hom_sequence_report, kernel_on_H

__all__ = [
    "FgAbGroup", "GroupHom", "cyclic", "hom",
    "CKInput", "SixTerm", "SixTermHom", "check_exact", "ck_ktheory", "ck_model",
    "CoeffHom", "CoeffInvariant", "build_invariant", "induce_hom", "verify_invariant",
    "aut_lambda_red", "hom_lambda_red", "hom_six", "kernel_of_delta",
    "build_resolution", "hom_sequence_report", "kernel_on_H",
]

__version__ = "0.1.0"
