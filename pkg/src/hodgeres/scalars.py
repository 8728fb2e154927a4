"""Exact scalar arithmetic: Gaussian rationals and token polynomials.

A ScalarExpr is a multivariate polynomial over Gaussian rationals in formal
tokens (h'(0), pi, Omega, the scalar curvature s, pairings g(.,.), ...).
Canonical form: monomials are sorted tuples of tokens, zero coefficients are
dropped, so structural equality decides mathematical equality.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping


@dataclass(frozen=True)
class GaussianRational:
    """a + b*i with exact rational a, b."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def of(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        return GaussianRational(Fraction(x))

    def __add__(self, other) -> "GaussianRational":
        o = GaussianRational.of(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other) -> "GaussianRational":
        return self + (-GaussianRational.of(other))

    def __rsub__(self, other) -> "GaussianRational":
        return GaussianRational.of(other) + (-self)

    def __mul__(self, other) -> "GaussianRational":
        o = GaussianRational.of(other)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of 0")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other) -> "GaussianRational":
        return self * GaussianRational.of(other).inverse()

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __pow__(self, k: int) -> "GaussianRational":
        out = ONE_G
        base = self
        if k < 0:
            base, k = base.inverse(), -k
        for _ in range(k):
            out = out * base
        return out

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"

    __repr__ = __str__


ZERO_G = GaussianRational()
ONE_G = GaussianRational(Fraction(1))
I_G = GaussianRational(Fraction(0), Fraction(1))


# Tokens are (kind, args) pairs; args are strings or ints. Ordering is the
# natural tuple order, which makes reports deterministic and diffable.
Token = tuple

HPRIME: Token = ("hprime", ())
PI: Token = ("pi", ())
OMEGA: Token = ("omega", ())
SCURV: Token = ("s", ())
TR_ID: Token = ("tr_id", ())
NDIM: Token = ("n", ())
DXPRIME: Token = ("dxp", ())


def pair_token(a: str, b: str) -> Token:
    """g(a, b); symmetric, stored with sorted arguments."""
    return ("pair", tuple(sorted((a, b))))


def xi_token(i: int) -> Token:
    """Tangential component xi_i of the unit covector xi'."""
    return ("xi", (i,))


def sdiv_token(base: str) -> Token:
    """sum_j g(nabla_{e_j} base, e_j)."""
    return ("sdiv", (base,))


def snab_token(base: str, with_: str, anchor: str) -> Token:
    """sum_j g(nabla_{e_j} base, with) * g(e_j, anchor)."""
    return ("snab", (base, with_, anchor))


Monomial = tuple  # sorted tuple of tokens


class ScalarExpr:
    """Polynomial in tokens over GaussianRational, always canonical."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, GaussianRational] | None = None):
        clean = {}
        if terms:
            for mono, coef in terms.items():
                if coef:
                    key = tuple(sorted(mono))
                    acc = clean.get(key)
                    clean[key] = coef + acc if acc is not None else coef
                    if not clean[key]:
                        del clean[key]
        self.terms = clean

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero() -> "ScalarExpr":
        return ScalarExpr()

    @staticmethod
    def const(x) -> "ScalarExpr":
        g = GaussianRational.of(x) if not isinstance(x, GaussianRational) else x
        return ScalarExpr({(): g}) if g else ScalarExpr()

    @staticmethod
    def tok(token: Token, coef=ONE_G) -> "ScalarExpr":
        g = GaussianRational.of(coef)
        return ScalarExpr({(token,): g}) if g else ScalarExpr()

    @staticmethod
    def of(x) -> "ScalarExpr":
        if isinstance(x, ScalarExpr):
            return x
        return ScalarExpr.const(x)

    # -- ring operations ----------------------------------------------
    def __add__(self, other) -> "ScalarExpr":
        o = ScalarExpr.of(other)
        out = dict(self.terms)
        for mono, coef in o.terms.items():
            acc = out.get(mono)
            s = coef + acc if acc is not None else coef
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        res = ScalarExpr.__new__(ScalarExpr)
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self) -> "ScalarExpr":
        res = ScalarExpr.__new__(ScalarExpr)
        res.terms = {m: -c for m, c in self.terms.items()}
        return res

    def __sub__(self, other) -> "ScalarExpr":
        return self + (-ScalarExpr.of(other))

    def __rsub__(self, other) -> "ScalarExpr":
        return ScalarExpr.of(other) + (-self)

    def __mul__(self, other) -> "ScalarExpr":
        if isinstance(other, (int, Fraction, GaussianRational)):
            g = GaussianRational.of(other)
            if not g:
                return ScalarExpr()
            res = ScalarExpr.__new__(ScalarExpr)
            res.terms = {m: c * g for m, c in self.terms.items()}
            return res
        o = ScalarExpr.of(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                mono = tuple(sorted(m1 + m2))
                c = c1 * c2
                acc = out.get(mono)
                s = c + acc if acc is not None else c
                if s:
                    out[mono] = s
                else:
                    out.pop(mono, None)
        res = ScalarExpr.__new__(ScalarExpr)
        res.terms = out
        return res

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ScalarExpr":
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self * GaussianRational.of(other).inverse()
        raise TypeError("can only divide a ScalarExpr by a number")

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = ScalarExpr.const(other)
        return isinstance(other, ScalarExpr) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- queries and transforms ----------------------------------------
    def coefficient(self, mono: Iterable[Token]) -> GaussianRational:
        return self.terms.get(tuple(sorted(mono)), ZERO_G)

    def substitute_token(self, token: Token, value) -> "ScalarExpr":
        """Replace every occurrence of `token` by a scalar or ScalarExpr value."""
        val = ScalarExpr.of(value)
        out = ScalarExpr.zero()
        for mono, coef in self.terms.items():
            k = sum(1 for t in mono if t == token)
            rest = tuple(t for t in mono if t != token)
            term = ScalarExpr({rest: coef})
            for _ in range(k):
                term = term * val
            out = out + term
        return out

    def map_tokens(self, fn) -> "ScalarExpr":
        """Rebuild with every token t replaced by fn(t) (a token)."""
        out = ScalarExpr.zero()
        for mono, coef in self.terms.items():
            out = out + ScalarExpr({tuple(sorted(fn(t) for t in mono)): coef})
        return out

    def token_degree(self, kind: str) -> int:
        deg = 0
        for mono in self.terms:
            deg = max(deg, sum(1 for t in mono if t[0] == kind))
        return deg

    def eval_numeric(self, bindings: Mapping, tol: float = 1e-12) -> float:
        """Float evaluation; bindings map tokens (or their kinds) to numbers.

        The imaginary part must cancel below `tol`, otherwise the expression
        was not real and something upstream is broken.
        """
        total = 0j
        for mono, coef in self.terms.items():
            v = coef.to_complex()
            for t in mono:
                if t in bindings:
                    v *= bindings[t]
                elif t[0] in bindings:
                    v *= bindings[t[0]]
                else:
                    raise KeyError(f"unbound token {t}")
            total += v
        if abs(total.imag) > tol * max(1.0, abs(total.real)):
            raise ValueError(f"nonzero imaginary part {total.imag} in numeric evaluation")
        return total.real

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for mono, coef in sorted(self.terms.items()):
            factors = [_token_str(t) for t in mono]
            parts = [str(coef)] + factors if factors else [str(coef)]
            bits.append("*".join(parts))
        return " + ".join(bits).replace("+ -", "- ")

    __repr__ = __str__


def _token_str(t: Token) -> str:
    kind, args = t
    if not args:
        return {"hprime": "h'", "pi": "pi", "omega": "Omega", "s": "s",
                "tr_id": "tr[id]", "n": "n", "dxp": "dx'"}.get(kind, kind)
    if kind == "pair":
        return f"g({args[0]},{args[1]})"
    if kind == "xi":
        return f"xi{args[0]}"
    if kind == "sdiv":
        return f"div({args[0]})"
    if kind == "snab":
        return f"nab({args[0]};{args[1]};{args[2]})"
    return f"{kind}{args}"


def canonicalize(e: ScalarExpr) -> ScalarExpr:
    """Idempotent canonical form (construction already canonicalizes)."""
    return ScalarExpr(e.terms)


SCALAR_ZERO = ScalarExpr.zero()
SCALAR_ONE = ScalarExpr.const(1)
