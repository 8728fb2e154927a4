"""Exact moments of polynomials over the unit sphere {|xi'| = 1} in R^m.

Monomials in the tangential components xi_i and in pairings g(V, xi') are
integrated by the standard even-moment rule: odd total degree vanishes, and

    int xi'^(pairs) = Omega / (m (m+2) ... (m + 2d - 2)) * sum over pairings,

where a pairing of two component slots i, j contributes delta_ij, a pairing
of a component slot with a vector V contributes the tangential component of
V, and a pairing of vectors V, W contributes g(V_tan, W_tan)
= g(V, W) - g(V, dxn) g(W, dxn).
"""
from __future__ import annotations

from fractions import Fraction
from math import pi, gamma
from typing import List, Tuple

from .scalars import (GaussianRational, OMEGA, ScalarExpr, Token,
                      pair_token)

XI_MARK = "xi'"


def _slot_pair_value(u, v) -> ScalarExpr:
    """Contraction of two xi'-slots; slots are ints (component index) or
    strings (vector keys from PAIR(V, xi') tokens)."""
    if isinstance(u, int) and isinstance(v, int):
        return ScalarExpr.const(1) if u == v else ScalarExpr.zero()
    if isinstance(u, int):
        u, v = v, u
    if isinstance(v, int):
        # tangential component of the vector u at slot index v
        if u == "dxn":
            return ScalarExpr.zero()
        return ScalarExpr.tok(pair_token(u, f"e{v}"))
    # vector-vector: tangential inner product
    if u == "dxn" or v == "dxn":
        return ScalarExpr.zero()
    return (ScalarExpr.tok(pair_token(u, v))
            - ScalarExpr.tok(pair_token(u, "dxn")) * ScalarExpr.tok(pair_token(v, "dxn")))


def _pairings(slots: List) -> List[List[Tuple]]:
    if not slots:
        return [[]]
    out = []
    first, rest = slots[0], slots[1:]
    for k in range(len(rest)):
        for tail in _pairings(rest[:k] + rest[k + 1:]):
            out.append([(first, rest[k])] + tail)
    return out


def integrate_sphere(e: ScalarExpr, m: int) -> ScalarExpr:
    """Integrate over the unit sphere in R^m (m = n - 1 boundary components).

    The xi'-dependence must be polynomial: explicit xi_i tokens and
    PAIR(V, xi') tokens. Emits the symbolic Omega token."""
    out = ScalarExpr.zero()
    for mono, coef in e.terms.items():
        slots: List = []
        rest: List[Token] = []
        for t in mono:
            if t[0] == "xi":
                slots.append(t[1][0])
            elif t[0] == "pair" and XI_MARK in t[1]:
                a, b = t[1]
                if a == XI_MARK and b == XI_MARK:
                    # |xi'|^2 = 1 on the sphere
                    continue
                other = b if a == XI_MARK else a
                slots.append(other)
            else:
                rest.append(t)
        if len(slots) % 2 == 1:
            continue  # odd moment vanishes
        d = len(slots) // 2
        denom = Fraction(1)
        for k in range(d):
            denom *= (m + 2 * k)
        pair_sum = ScalarExpr.zero()
        for match in _pairings(slots):
            term = ScalarExpr.const(1)
            for (u, v) in match:
                term = term * _slot_pair_value(u, v)
                if term.is_zero():
                    break
            pair_sum = pair_sum + term
        base = ScalarExpr({tuple(rest): coef})
        out = out + base * pair_sum * ScalarExpr.tok(OMEGA, GaussianRational(Fraction(1) / denom))
    return out


def omega_value(n: int) -> float:
    """vol(S^(n-2)) = 2 pi^((n-1)/2) / Gamma((n-1)/2): numeric companion of
    the symbolic Omega token (n = manifold dimension, sphere in R^(n-1))."""
    if n not in (4, 6):
        raise ValueError(f"unsupported dimension {n}")
    m = n - 1
    return 2 * pi ** (m / 2) / gamma(m / 2)
