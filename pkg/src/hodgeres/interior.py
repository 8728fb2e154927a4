"""Interior integrand of the residue pairings from the Lichnerowicz trace data.

Without boundary the residue reduces to the heat-coefficient form

    prefactor(n) * int_M tr(s/6 + E) dVol,

whose trace assembles, per variant, into

    SQ    (D_A^2, n = 4):    tr(-s/12 +   A^2 - 1/2 sum_j A c_j A c_j)
    STAR  (D_A* D_A, n = 4): tr(-s/12 +   A*A - 1/4 sum A c A c
                                 - 1/4 sum A* c A* c
                                 + 1/2 sum nabla(A*) c - 1/2 sum c nabla(A))
    SQ4   (n = 6):           tr(-s/12 + 2 A^2 - 1/2 sum A c A c)
    STAR4 (n = 6):           tr(-s/12 + 2 A*A - 1/4 ... ) as STAR

with prefactor(n) = (n-2)(4 pi)^(n/2) / (n/2 - 1)!. The curvature term of
the Lichnerowicz formula dies under the fiber trace (delta-shaped against an
antisymmetric tensor) and is certified, not assumed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .scalars import GaussianRational, PI, SCURV, ScalarExpr, TR_ID
from .wick import (PerturbationSpec, curvature_contraction,
                   curvature_term_vanishes, trace_identity)

VARIANTS = ("SQ", "STAR", "SQ4", "STAR4")


@dataclass
class InteriorReport:
    n: int
    variant: str
    prefactor: ScalarExpr
    integrand: ScalarExpr   # tr(...) with TR_ID symbolic

    def specialized(self) -> ScalarExpr:
        """prefactor * integrand with tr[id] = 2^n, as printed in results."""
        return (self.prefactor * self.integrand).substitute_token(TR_ID, 1 << self.n)


def interior_prefactor(n: int) -> ScalarExpr:
    """(n-2)(4 pi)^(n/2) / (n/2 - 1)! as an exact pi-token expression."""
    if n not in (4, 6):
        raise ValueError(f"unsupported dimension {n} (need even n in {{4, 6}})")
    half = n // 2
    coef = Fraction((n - 2) * 4 ** half, factorial(half - 1))
    out = ScalarExpr.const(coef)
    for _ in range(half):
        out = out * ScalarExpr.tok(PI)
    return out


def interior_integrand(n: int, variant: str, a: PerturbationSpec) -> InteriorReport:
    """Assemble the variant's trace combination from the identity catalog."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if (variant in ("SQ", "STAR")) != (n == 4):
        raise ValueError(f"variant {variant} does not match dimension {n}")
    s_term = ScalarExpr.tok(SCURV, GaussianRational(Fraction(-1, 12))) * ScalarExpr.tok(TR_ID)
    quad_coef = Fraction(n // 2 - 1)
    out = s_term
    if variant in ("SQ", "SQ4"):
        out = out + trace_identity("TR_A_SQ", a, n) * quad_coef
        out = out - trace_identity("SUM_AC_AC", a, n) * Fraction(1, 2)
    else:
        out = out + trace_identity("TR_ASTAR_A", a, n) * quad_coef
        out = out - trace_identity("SUM_AC_AC", a, n) * Fraction(1, 4)
        out = out - trace_identity("SUM_ASTARC_ASTARC", a, n) * Fraction(1, 4)
        out = out + trace_identity("SUM_NABLA_ASTAR_C", a, n) * Fraction(1, 2)
        out = out - trace_identity("SUM_C_NABLA_A", a, n) * Fraction(1, 2)
    return InteriorReport(n, variant, interior_prefactor(n), out)


def curvature_term_artifact(n: int) -> ScalarExpr:
    """The contraction datum behind the vanishing of the curvature term:
    tr[cbar_i cbar_j c_k c_l] = -tr[id] delta_ij delta_kl (representative
    value at i=j, k=l), certified delta-shaped by curvature_term_vanishes."""
    if not curvature_term_vanishes(n):
        raise AssertionError("curvature trace is not delta-shaped")
    return curvature_contraction(n)
