"""Parser for expected-result expressions in manifests.

The grammar mirrors how results are displayed: exact rational coefficients
times monomials in pi, Omega, h', s, tr_id, pairings g(.,.), divergence
sums div(X), nab(B;W;V) (= sum_j g(nabla_j B, W) g(e_j, V)), plus the named
trace functions of the entry's perturbation (tr_AstarA, tr_A_cdxn, ...),
so a manifest entry is visually checkable against the displayed formula.

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := atom ('^' INT)?
    atom   := INT | NAME | NAME '(' args ')' | '(' expr ')' | '-' factor
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Optional

from .scalars import (HPRIME, OMEGA, PI, SCURV, ScalarExpr, TR_ID,
                      pair_token, sdiv_token, snab_token)
from .wick import PerturbationSpec, trace_identity

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9']*)|(.))")

_CONSTANTS = {
    "pi": PI,
    "Omega": OMEGA,
    "hprime": HPRIME,
    "s": SCURV,
    "tr_id": TR_ID,
}

_TRACE_FUNCS = {
    "tr_AstarA": "TR_ASTAR_A",
    "tr_Asq": "TR_A_SQ",
    "tr_A_cdxn": "TR_A_CDXN",
    "tr_Astar_cdxn": "TR_ASTAR_CDXN",
    "sum_AcAc": "SUM_AC_AC",
    "sum_AstarcAstarc": "SUM_ASTARC_ASTARC",
    "sum_nablaAstar_c": "SUM_NABLA_ASTAR_C",
    "sum_c_nablaA": "SUM_C_NABLA_A",
}


class ExprError(ValueError):
    pass


class _Parser:
    def __init__(self, text: str, a: Optional[PerturbationSpec], n: Optional[int]):
        self.text = text
        self.pos = 0
        self.a = a
        self.n = n

    # tokenizer -----------------------------------------------------------
    def _peek(self) -> Optional[str]:
        m = _TOKEN_RE.match(self.text, self.pos)
        if not m or m.group(0).strip() == "":
            return None
        return m.group(1) or m.group(2) or m.group(3)

    def _next(self) -> Optional[str]:
        m = _TOKEN_RE.match(self.text, self.pos)
        if not m or m.group(0).strip() == "":
            self.pos = len(self.text)
            return None
        self.pos = m.end()
        return m.group(1) or m.group(2) or m.group(3)

    def _expect(self, tok: str):
        got = self._next()
        if got != tok:
            raise ExprError(f"expected {tok!r}, got {got!r} at {self.pos} in {self.text!r}")

    # grammar -------------------------------------------------------------
    def parse(self) -> ScalarExpr:
        out = self.expr()
        if self._peek() is not None:
            raise ExprError(f"trailing input at {self.pos} in {self.text!r}")
        return out

    def expr(self) -> ScalarExpr:
        out = self.term()
        while True:
            p = self._peek()
            if p == "+":
                self._next()
                out = out + self.term()
            elif p == "-":
                self._next()
                out = out - self.term()
            else:
                return out

    def term(self) -> ScalarExpr:
        out = self.factor()
        while True:
            p = self._peek()
            if p == "*":
                self._next()
                out = out * self.factor()
            elif p == "/":
                self._next()
                rhs = self.factor()
                if rhs.terms and set(rhs.terms) != {()}:
                    raise ExprError("can only divide by a number")
                out = out / rhs.coefficient(())
            else:
                return out

    def factor(self) -> ScalarExpr:
        base = self.atom()
        if self._peek() == "^":
            self._next()
            k = self._next()
            if k is None or not k.isdigit():
                raise ExprError(f"expected integer exponent in {self.text!r}")
            out = ScalarExpr.const(1)
            for _ in range(int(k)):
                out = out * base
            return out
        return base

    def atom(self) -> ScalarExpr:
        t = self._next()
        if t is None:
            raise ExprError(f"unexpected end of input in {self.text!r}")
        if t == "-":
            return -self.factor()
        if t == "(":
            out = self.expr()
            self._expect(")")
            return out
        if t.isdigit():
            return ScalarExpr.const(Fraction(int(t)))
        if t in _CONSTANTS:
            return ScalarExpr.tok(_CONSTANTS[t])
        if t in _TRACE_FUNCS:
            if self.a is None:
                raise ExprError(f"{t} needs a perturbation context")
            return trace_identity(_TRACE_FUNCS[t], self.a, self.n)
        if t == "g":
            args = self._args(2)
            return ScalarExpr.tok(pair_token(args[0], args[1]))
        if t == "div":
            args = self._args(1)
            return ScalarExpr.tok(sdiv_token(args[0]))
        if t == "nab":
            args = self._args(3)
            return ScalarExpr.tok(snab_token(*args))
        raise ExprError(f"unknown name {t!r} in {self.text!r}")

    def _args(self, count: int) -> List[str]:
        self._expect("(")
        out = []
        for k in range(count):
            name = self._next()
            if name is None or not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9']*", name):
                raise ExprError(f"expected name argument, got {name!r}")
            out.append(name)
            if k < count - 1:
                sep = self._next()
                if sep not in (",", ";"):
                    raise ExprError(f"expected separator, got {sep!r}")
        self._expect(")")
        return out


def parse_expected(text: str, a: Optional[PerturbationSpec] = None,
                   n: Optional[int] = None) -> ScalarExpr:
    """Parse an expected-result expression; trace functions are evaluated at
    the given perturbation with the symbolic dimension fixed to n."""
    return _Parser(text, a, n).parse()
