"""Interior engine: prefactors, variant assembly, corollary values."""
from fractions import Fraction

import pytest

from hodgeres.exprgrammar import parse_expected
from hodgeres.interior import (curvature_term_artifact, interior_integrand,
                               interior_prefactor)
from hodgeres.scalars import PI, ScalarExpr, TR_ID
from hodgeres.wick import parse_perturbation


def test_prefactors():
    pi2 = ScalarExpr.tok(PI) * ScalarExpr.tok(PI)
    assert interior_prefactor(4) == pi2 * 32
    assert interior_prefactor(6) == pi2 * ScalarExpr.tok(PI) * 128
    with pytest.raises(ValueError):
        interior_prefactor(2)
    with pytest.raises(ValueError):
        interior_prefactor(5)


def _check(n, variant, a_text, expected_text):
    a = parse_perturbation(a_text)
    rep = interior_integrand(n, variant, a)
    want = parse_expected(expected_text, a, n).substitute_token(TR_ID, 1 << n)
    assert rep.specialized() == want, f"{variant} {a_text}"


def test_star_family_corollaries():
    _check(4, "STAR", "c(X)", "512*pi^2*(-1/12*s + 2*g(X,X) + div(X))")
    _check(4, "STAR", "cb(X)", "512*pi^2*(-1/12*s - g(X,X))")
    _check(4, "STAR", "c(X) c(Y)", "512*pi^2*(-1/12*s + g(X,X)*g(Y,Y) + 2*g(X,Y)^2)")
    _check(4, "STAR", "c(X) cb(Y)", "512*pi^2*(-1/12*s + 2*g(X,X)*g(Y,Y))")
    _check(4, "STAR", "cb(X) cb(Y)", "512*pi^2*(-1/12*s - g(X,X)*g(Y,Y) + 4*g(X,Y)^2)")
    _check(4, "STAR", "cb(X) c(Y) c(Z)",
           "512*pi^2*(-1/12*s + g(X,X)*g(Y,Y)*g(Z,Z) - 2*g(X,X)*g(Y,Z)^2)")
    _check(4, "STAR", "cb(X) cb(Y) cb(Z)",
           "512*pi^2*(-1/12*s + 3*g(X,X)*g(Y,Y)*g(Z,Z) - 4*g(X,X)*g(Y,Z)^2"
           " - 4*g(Y,Y)*g(X,Z)^2 - 4*g(Z,Z)*g(X,Y)^2 + 8*g(X,Y)*g(X,Z)*g(Y,Z))")


def test_star4_family_corollaries():
    _check(6, "STAR4", "c(X)", "8192*pi^3*(-1/12*s + 4*g(X,X) + div(X))")
    _check(6, "STAR4", "cb(X)", "8192*pi^3*(-1/12*s - g(X,X))")
    _check(6, "STAR4", "c(X) c(Y)", "8192*pi^3*(-1/12*s + g(X,X)*g(Y,Y) + 4*g(X,Y)^2)")
    _check(6, "STAR4", "c(X) cb(Y)", "8192*pi^3*(-1/12*s + 4*g(X,X)*g(Y,Y))")
    _check(6, "STAR4", "cb(X) cb(Y)", "8192*pi^3*(-1/12*s - g(X,X)*g(Y,Y) + 6*g(X,Y)^2)")


def test_sq_family_values():
    """The engine's D_A^2 values (several disagree with the printed
    corollaries that reused the D_A* D_A patterns; the manifest flags those
    as findings, oracle-backed)."""
    _check(4, "SQ", "c(X)", "512*pi^2*(-1/12*s)")
    _check(4, "SQ", "cb(X)", "512*pi^2*(-1/12*s - g(X,X))")
    _check(4, "SQ", "c(X) cb(Y)", "512*pi^2*(-1/12*s + 2*g(X,X)*g(Y,Y))")
    _check(4, "SQ", "cb(X) cb(Y) c(Z)", "512*pi^2*(-1/12*s)")
    _check(6, "SQ4", "c(X)", "8192*pi^3*(-1/12*s)")
    _check(6, "SQ4", "cb(X)", "8192*pi^3*(-1/12*s - g(X,X))")


def test_s_coefficient_universal():
    """s-coefficient is -1/12 tr[id] in every variant."""
    a = parse_perturbation("c(X) c(Y)")
    for n, variant in ((4, "SQ"), (4, "STAR"), (6, "SQ4"), (6, "STAR4")):
        rep = interior_integrand(n, variant, a)
        from hodgeres.scalars import SCURV, GaussianRational
        got = rep.integrand.coefficient((SCURV, TR_ID))
        assert got == GaussianRational(Fraction(-1, 12))


def test_a_zero_baseline():
    a0 = parse_perturbation("0")
    for n, variant in ((4, "SQ"), (4, "STAR"), (6, "SQ4"), (6, "STAR4")):
        rep = interior_integrand(n, variant, a0)
        want = parse_expected("-1/12*s*tr_id", None, n)
        assert rep.integrand == want


def test_star_equals_sq_for_selfadjoint_a():
    """A = c(X) cb(Y) is self-adjoint, so the two n=4 pairings coincide."""
    a = parse_perturbation("c(X) cb(Y)")
    star = interior_integrand(4, "STAR", a)
    sq = interior_integrand(4, "SQ", a)
    assert star.integrand == sq.integrand
    a6 = parse_perturbation("cb(X)")
    assert (interior_integrand(6, "STAR4", a6).integrand
            == interior_integrand(6, "SQ4", a6).integrand)


def test_relabeling_equivariance():
    """Swapping X and Y in A permutes the pairing tokens consistently."""
    a_xy = interior_integrand(4, "STAR", parse_perturbation("c(X) c(Y)"))
    a_yx = interior_integrand(4, "STAR", parse_perturbation("c(Y) c(X)"))
    assert a_xy.integrand == a_yx.integrand  # symmetric in this case
    b_xyz = interior_integrand(4, "STAR", parse_perturbation("cb(X) c(Y) c(Z)"))
    b_xzy = interior_integrand(4, "STAR", parse_perturbation("cb(X) c(Z) c(Y)"))

    def swap(t):
        if t[0] in ("pair", "sdiv", "snab"):
            repl = {"Y": "Z", "Z": "Y"}
            args = tuple(repl.get(x, x) for x in t[1])
            if t[0] == "pair":
                args = tuple(sorted(args))
            return (t[0], args)
        return t

    assert b_xyz.integrand.map_tokens(swap) == b_xzy.integrand


def test_variant_dimension_guard():
    with pytest.raises(ValueError):
        interior_integrand(6, "SQ", parse_perturbation("0"))
    with pytest.raises(ValueError):
        interior_integrand(4, "STAR4", parse_perturbation("0"))
    with pytest.raises(ValueError):
        interior_integrand(4, "NOPE", parse_perturbation("0"))


def test_curvature_artifact():
    got = curvature_term_artifact(4)
    assert got == -ScalarExpr.tok(TR_ID)
