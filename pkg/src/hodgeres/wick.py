"""Symbolic fiber traces of words in the Clifford actions c(v), cbar(v).

The normalized trace of a generator word is a signed sum over perfect
matchings of the letters (Wick contraction), with bilinear pairings

    B(c(v), c(w))       = -g(v, w)
    B(cbar(v), cbar(w)) = +g(v, w)
    B(mixed)            = 0

and sign(-1)^(number of crossings of the matching). Words are kept free
(no rewriting); the 2^n-dimensional exterior-algebra representation realizes
exactly this contraction law, which the matrix oracle verifies.

Vectors may carry an abstract summation index j; after contraction, the
sum over the orthonormal frame is performed with

    sum_j g(V, e_j) g(W, e_j) = g(V, W),   sum_j g(e_j, e_j) = n,

producing divergence-type tokens for the one-step Leibniz derivatives.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from .scalars import (NDIM, ScalarExpr, TR_ID, pair_token, sdiv_token,
                      snab_token, xi_token)

C = "c"
CB = "cb"


@dataclass(frozen=True)
class VectorSym:
    """Symbolic vector argument of a Clifford letter.

    kind: "basis" (concrete e_i), "sumidx" (frame index being summed),
    "dxn" (normal direction), "xip" (unit tangential covector xi'),
    "field" (named vector field), "dfield" (nabla_{e_j} of a field, the
    index being the abstract summation index).
    """

    kind: str
    name: str = ""
    index: int = 0

    def key(self) -> str:
        if self.kind == "basis":
            return f"e{self.index}"
        if self.kind == "dxn":
            return "dxn"
        if self.kind == "xip":
            return "xi'"
        if self.kind == "field":
            return self.name
        if self.kind == "dfield":
            return f"nabla_j({self.name})"
        if self.kind == "sumidx":
            return "e_j"
        raise ValueError(self.kind)


def basis(i: int) -> VectorSym:
    return VectorSym("basis", index=i)


def sumidx() -> VectorSym:
    return VectorSym("sumidx")


DXN = VectorSym("dxn")
XIP = VectorSym("xip")


def field(name: str) -> VectorSym:
    return VectorSym("field", name=name)


def dfield(name: str) -> VectorSym:
    return VectorSym("dfield", name=name)


Letter = Tuple[str, VectorSym]
GenWord = Tuple[Letter, ...]


def cw(v: VectorSym) -> Letter:
    return (C, v)


def cbw(v: VectorSym) -> Letter:
    return (CB, v)


# ---------------------------------------------------------------------------
# pairings


def _pairing(u: VectorSym, v: VectorSym, n: Optional[int]):
    """Concrete inner product g(u, v) as a ScalarExpr, or a deferred marker
    for pairs involving the abstract frame index. Returns None for 0."""
    a, b = sorted((u, v), key=lambda w: w.kind)
    ka, kb = a.kind, b.kind

    if ka == "basis" and kb == "basis":
        return ScalarExpr.const(1) if a.index == b.index else None
    if {ka, kb} == {"basis", "dxn"}:
        bi = a if ka == "basis" else b
        return ScalarExpr.const(1) if (n is not None and bi.index == n) else None
    if {ka, kb} == {"basis", "xip"}:
        bi = a if ka == "basis" else b
        return ScalarExpr.tok(xi_token(bi.index))
    if {ka, kb} == {"basis", "field"}:
        return ScalarExpr.tok(pair_token(a.key(), b.key()))
    if ka == "dxn" and kb == "dxn":
        return ScalarExpr.const(1)
    if {ka, kb} == {"dxn", "xip"}:
        return None
    if {ka, kb} == {"dxn", "field"}:
        return ScalarExpr.tok(pair_token("dxn", (a if ka == "field" else b).key()))
    if ka == "xip" and kb == "xip":
        return ScalarExpr.const(1)  # restricted to the unit sphere
    if {ka, kb} == {"field", "xip"}:
        f = a if ka == "field" else b
        return ScalarExpr.tok(pair_token(f.key(), "xi'"))
    if ka == "field" and kb == "field":
        return ScalarExpr.tok(pair_token(a.name, b.name))
    # deferred: anything with sumidx / dfield
    if ka == "sumidx" or kb == "sumidx" or ka == "dfield" or kb == "dfield":
        return ("defer", u, v)
    raise ValueError(f"no pairing rule for {u} . {v}")


@lru_cache(maxsize=None)
def _matchings(m: int) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
    """All perfect matchings of {0..m-1} (m even)."""
    if m == 0:
        return ((),)
    idx = list(range(m))

    def rec(rest):
        if not rest:
            yield ()
            return
        a = rest[0]
        for k in range(1, len(rest)):
            b = rest[k]
            remaining = rest[1:k] + rest[k + 1:]
            for tail in rec(remaining):
                yield ((a, b),) + tail

    return tuple(rec(idx))


def _crossings(match: Sequence[Tuple[int, int]]) -> int:
    cnt = 0
    for x in range(len(match)):
        a, b = match[x]
        for y in range(x + 1, len(match)):
            c_, d = match[y]
            if (a < c_ < b < d) or (c_ < a < d < b):
                cnt += 1
    return cnt


def _contract_deferred(deferred: List[tuple], n: Optional[int]) -> Optional[ScalarExpr]:
    """Resolve the frame-index sum over the deferred pairings of one monomial.

    Each word contains exactly two j-slots (two c(e_j) letters, or one
    c(e_j) plus one nabla_j letter); the deferred pairings carry them.
    """
    ndim_expr = ScalarExpr.tok(NDIM) if n is None else ScalarExpr.const(n)
    if len(deferred) == 1:
        (_, u, v) = deferred[0]
        kinds = {u.kind, v.kind}
        if kinds == {"sumidx"}:
            return ndim_expr
        if kinds == {"sumidx", "dfield"}:
            base = u if u.kind == "dfield" else v
            return ScalarExpr.tok(sdiv_token(base.name))
        raise ValueError(f"unresolvable deferred pairing {u} {v}")
    if len(deferred) == 2:
        (_, u1, v1), (_, u2, v2) = deferred
        j1 = u1 if u1.kind in ("sumidx", "dfield") else v1
        o1 = v1 if j1 is u1 else u1
        j2 = u2 if u2.kind in ("sumidx", "dfield") else v2
        o2 = v2 if j2 is u2 else u2
        if j1.kind == "sumidx" and j2.kind == "sumidx":
            # sum_j g(o1, e_j) g(o2, e_j) = g(o1_tan, o2_tan) for frame sums;
            # the full frame sum reproduces g(o1, o2).
            p = _pairing(o1, o2, n)
            if isinstance(p, tuple):
                raise ValueError("nested deferred contraction")
            return p
        if {j1.kind, j2.kind} == {"sumidx", "dfield"}:
            dfl, dother = (j1, o1) if j1.kind == "dfield" else (j2, o2)
            jother = o2 if j1.kind == "dfield" else o1
            # sum_j g(nabla_j base, dother) g(e_j, jother)
            if dother.kind == "sumidx" or jother.kind == "sumidx":
                raise ValueError("nested deferred contraction")
            if dother.kind == "dfield" or jother.kind == "dfield":
                raise ValueError("two nabla letters in one pairing chain")
            return ScalarExpr.tok(snab_token(dfl.name, dother.key(), jother.key()))
        raise ValueError("unsupported deferred combination")
    raise ValueError(f"{len(deferred)} deferred pairings in one monomial")


def wick_trace(word: Sequence[Letter], n: Optional[int] = None) -> ScalarExpr:
    """Normalized-times-TR_ID trace of a generator word.

    Returns TR_ID * sum over matchings; the empty word gives TR_ID and odd
    words give 0. `n` concretizes frame-index sums (None keeps the symbolic
    dimension token).
    """
    word = tuple(word)
    m = len(word)
    if m % 2 == 1:
        return ScalarExpr.zero()
    total = ScalarExpr.zero()
    for match in _matchings(m):
        sign = -1 if _crossings(match) % 2 else 1
        coeff = ScalarExpr.const(sign)
        deferred: List[tuple] = []
        dead = False
        for (x, y) in match:
            (fx, vx), (fy, vy) = word[x], word[y]
            if fx != fy:
                dead = True
                break
            p = _pairing(vx, vy, n)
            if p is None:
                dead = True
                break
            flavor_sign = -1 if fx == C else 1
            if isinstance(p, tuple):
                deferred.append(p)
                if flavor_sign < 0:
                    coeff = coeff * (-1)
            else:
                coeff = coeff * p * flavor_sign
                if coeff.is_zero():
                    dead = True
                    break
        if dead:
            continue
        if deferred:
            contracted = _contract_deferred(deferred, n)
            if contracted is None:
                continue
            coeff = coeff * contracted
        total = total + coeff
    return total * ScalarExpr.tok(TR_ID)


# ---------------------------------------------------------------------------
# perturbations A and their mechanical adjoints


@dataclass(frozen=True)
class PerturbationSpec:
    """A word in c/cbar of named vector fields; word == () means A = 0."""

    word: GenWord

    @property
    def is_zero(self) -> bool:
        return len(self.word) == 0

    def adjoint(self) -> "PerturbationSpec":
        return PerturbationSpec(adjoint_word(self.word)[1])

    def adjoint_sign(self) -> int:
        return adjoint_word(self.word)[0]

    def field_names(self) -> Tuple[str, ...]:
        return tuple(v.name for _, v in self.word)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return " ".join(f"{f}({v.name})" for f, v in self.word)


def adjoint_word(word: GenWord) -> Tuple[int, GenWord]:
    """(sign, reversed word): each c factor contributes -1, cbar +1."""
    sign = 1
    out = []
    for f, v in reversed(word):
        if f == C:
            sign = -sign
        out.append((f, v))
    return sign, tuple(out)


_DSL_RE = re.compile(r"\s*(c|cb)\s*\(\s*([A-Za-z_][A-Za-z_0-9]*)\s*\)\s*")


def parse_perturbation(text: str) -> PerturbationSpec:
    """Parse the shared DSL: `word := factor+ ; factor := ("c"|"cb") "(" NAME ")"`.

    The literal `0` (or `A=0`) denotes the zero perturbation.
    """
    stripped = text.strip()
    if stripped in ("0", "A=0"):
        return PerturbationSpec(())
    pos = 0
    letters: List[Letter] = []
    while pos < len(stripped):
        m = _DSL_RE.match(stripped, pos)
        if not m:
            raise ValueError(f"perturbation parse error at position {pos}: {stripped[pos:pos+20]!r}")
        flavor, name = m.group(1), m.group(2)
        letters.append((C if flavor == "c" else CB, field(name)))
        pos = m.end()
    if not letters:
        raise ValueError("empty perturbation (use '0' for A = 0)")
    return PerturbationSpec(tuple(letters))


# ---------------------------------------------------------------------------
# frame-index sums and the named trace-identity catalog


def basis_sum(words: Sequence[Tuple[GenWord, ScalarExpr]], n: Optional[int] = None) -> ScalarExpr:
    """Trace of a linear combination of words containing the abstract frame
    index, summed over the orthonormal frame."""
    out = ScalarExpr.zero()
    for word, coef in words:
        out = out + coef * wick_trace(word, n)
    return out


def _leibniz(word: GenWord) -> List[GenWord]:
    """One-step Leibniz expansion: one letter's vector becomes nabla_j(field)."""
    out = []
    for i, (f, v) in enumerate(word):
        if v.kind != "field":
            raise ValueError("Leibniz expansion applies to field letters only")
        out.append(word[:i] + ((f, dfield(v.name)),) + word[i + 1:])
    return out


TRACE_IDENTITY_IDS = (
    "TR_ASTAR_A", "TR_A_SQ", "SUM_AC_AC", "SUM_ASTARC_ASTARC",
    "TR_A_CDXN", "TR_ASTAR_CDXN", "SUM_NABLA_ASTAR_C", "SUM_C_NABLA_A",
    "CURV_TERM",
)


def trace_identity(ident: str, a: PerturbationSpec, n: Optional[int] = None) -> ScalarExpr:
    """Named trace quantities used by the interior and boundary assemblies."""
    if ident not in TRACE_IDENTITY_IDS:
        raise ValueError(f"unknown trace identity {ident!r}")
    if ident == "CURV_TERM":
        return curvature_contraction(n if n is not None else 4)
    if a.is_zero:
        return ScalarExpr.zero()
    sgn, astar = adjoint_word(a.word)
    j = sumidx()
    if ident == "TR_ASTAR_A":
        return ScalarExpr.const(sgn) * wick_trace(astar + a.word, n)
    if ident == "TR_A_SQ":
        return wick_trace(a.word + a.word, n)
    if ident == "SUM_AC_AC":
        w = a.word + (cw(j),) + a.word + (cw(j),)
        return wick_trace(w, n)
    if ident == "SUM_ASTARC_ASTARC":
        w = astar + (cw(j),) + astar + (cw(j),)
        return wick_trace(w, n)  # the two adjoint signs square away
    if ident == "TR_A_CDXN":
        return wick_trace(a.word + (cw(DXN),), n)
    if ident == "TR_ASTAR_CDXN":
        return ScalarExpr.const(sgn) * wick_trace(astar + (cw(DXN),), n)
    if ident == "SUM_NABLA_ASTAR_C":
        out = ScalarExpr.zero()
        for w in _leibniz(astar):
            out = out + ScalarExpr.const(sgn) * wick_trace(w + (cw(j),), n)
        return out
    if ident == "SUM_C_NABLA_A":
        out = ScalarExpr.zero()
        for w in _leibniz(a.word):
            out = out + wick_trace((cw(j),) + w, n)
        return out
    raise AssertionError


def curvature_contraction(n: int) -> ScalarExpr:
    """The trace pattern tr[cbar(e_i)cbar(e_j)c(e_k)c(e_l)].

    Evaluates to -TR_ID * delta_ij * delta_kl (oracle-verified), which is
    symmetric in (i, j); contracted against any tensor antisymmetric in
    (i, j) -- such as the curvature -- it vanishes. Returns the value for
    the representative index pattern (i=j, k=l).
    """
    w = (cbw(basis(1)), cbw(basis(1)), cw(basis(2)), cw(basis(2)))
    return wick_trace(w, n)


def curvature_term_vanishes(n: int) -> bool:
    """Certify that sum_{ijkl} R_{ijkl} tr[cbar_i cbar_j c_k c_l] = 0 for any
    tensor antisymmetric in (i, j), by checking the trace is delta_ij-shaped."""
    for i in range(1, n + 1):
        for jj in range(1, n + 1):
            for k in range(1, n + 1):
                for l in range(1, n + 1):
                    t = wick_trace((cbw(basis(i)), cbw(basis(jj)), cw(basis(k)), cw(basis(l))), n)
                    expect = (ScalarExpr.const(-1) * ScalarExpr.tok(TR_ID)
                              if (i == jj and k == l) else ScalarExpr.zero())
                    if t != expect:
                        return False
    return True
