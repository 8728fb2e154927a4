"""Rational functions of xi_n with poles only at +-i.

Values are num(xi_n) / ((xi_n - i)^a (xi_n + i)^b) where the numerator is a
polynomial with coefficients in any ring R supporting +, -, * (by ring
elements and by GaussianRational scalars) and is_zero(). In practice R is
CliffordElem while symbols are being manipulated and ScalarExpr after traces.

Everything the boundary calculus needs lives here: exact partial fractions,
the Hardy-space projection pi^+ (principal parts at +i; polynomial parts are
routed to pi^-), d/d xi_n, the x_n- and tangential derivatives at the
boundary point (metric tables baked in), and the real-line integral via the
residue at +i.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, List, Sequence, Tuple

from .scalars import GaussianRational, ONE_G, PI, ScalarExpr, I_G

NEG_I = GaussianRational(Fraction(0), Fraction(-1))


def _binom(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


class XiRational:
    """num / ((xi - i)^a (xi + i)^b); reduced so the numerator does not vanish
    at a pole of positive order."""

    __slots__ = ("num", "a", "b", "zero_elem")

    def __init__(self, num: Sequence, a: int, b: int, zero_elem, reduce: bool = True):
        self.num = list(num)
        self.a = a
        self.b = b
        self.zero_elem = zero_elem
        self._trim()
        if reduce:
            self._reduce()

    # -- helpers --------------------------------------------------------
    def _is0(self, x) -> bool:
        return x.is_zero() if hasattr(x, "is_zero") else not x

    def _trim(self):
        while self.num and self._is0(self.num[-1]):
            self.num.pop()

    def _eval_at(self, z: GaussianRational):
        """Horner evaluation of the numerator at a Gaussian rational point."""
        acc = self.zero_elem
        for c in reversed(self.num):
            acc = acc * z + c
        return acc

    def _divide_linear(self, z: GaussianRational) -> List:
        """num / (xi - z), assuming num(z) == 0 (synthetic division)."""
        out = [self.zero_elem] * (len(self.num) - 1)
        carry = self.zero_elem
        for k in range(len(self.num) - 1, 0, -1):
            carry = self.num[k] + carry * z if k < len(self.num) - 1 else self.num[k]
            out[k - 1] = carry
        return out

    def _reduce(self):
        changed = True
        while changed:
            changed = False
            if self.a > 0 and self.num and self._is0(self._eval_at(I_G)):
                self.num = self._divide_linear(I_G)
                self.a -= 1
                self._trim()
                changed = True
            if self.b > 0 and self.num and self._is0(self._eval_at(NEG_I)):
                self.num = self._divide_linear(NEG_I)
                self.b -= 1
                self._trim()
                changed = True
        if not self.num:
            self.a = self.b = 0

    # -- constructors ----------------------------------------------------
    @staticmethod
    def zero(zero_elem) -> "XiRational":
        return XiRational([], 0, 0, zero_elem)

    @staticmethod
    def poly(coeffs: Sequence, zero_elem) -> "XiRational":
        return XiRational(list(coeffs), 0, 0, zero_elem)

    def degree(self) -> int:
        return len(self.num) - 1

    def is_zero(self) -> bool:
        return not self.num

    def is_proper(self) -> bool:
        return self.is_zero() or self.degree() < self.a + self.b

    # -- arithmetic --------------------------------------------------------
    def _raised(self, a: int, b: int) -> List:
        """Numerator re-expressed over (xi-i)^a (xi+i)^b (a >= self.a etc.)."""
        num = list(self.num)
        for _ in range(a - self.a):
            num = _poly_mul_linear(num, I_G, self.zero_elem)
        for _ in range(b - self.b):
            num = _poly_mul_linear(num, NEG_I, self.zero_elem)
        return num

    def __add__(self, other: "XiRational") -> "XiRational":
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        a, b = max(self.a, other.a), max(self.b, other.b)
        n1, n2 = self._raised(a, b), other._raised(a, b)
        m = max(len(n1), len(n2))
        n1 += [self.zero_elem] * (m - len(n1))
        n2 += [self.zero_elem] * (m - len(n2))
        return XiRational([x + y for x, y in zip(n1, n2)], a, b, self.zero_elem)

    def __neg__(self) -> "XiRational":
        return XiRational([c * GaussianRational.of(-1) for c in self.num],
                          self.a, self.b, self.zero_elem, reduce=False)

    def __sub__(self, other: "XiRational") -> "XiRational":
        return self + (-other)

    def scale(self, s) -> "XiRational":
        return XiRational([c * s for c in self.num], self.a, self.b, self.zero_elem)

    def __mul__(self, other: "XiRational") -> "XiRational":
        """Product; numerator coefficients multiply in the given order
        (left factor coefficients on the left)."""
        if self.is_zero() or other.is_zero():
            return XiRational.zero(self.zero_elem)
        out = [self.zero_elem] * (len(self.num) + len(other.num) - 1)
        for i, x in enumerate(self.num):
            if self._is0(x):
                continue
            for j, y in enumerate(other.num):
                if other._is0(y):
                    continue
                out[i + j] = out[i + j] + x * y
        return XiRational(out, self.a + other.a, self.b + other.b, self.zero_elem)

    def map_coeffs(self, fn: Callable, zero_elem=None) -> "XiRational":
        z = zero_elem if zero_elem is not None else self.zero_elem
        return XiRational([fn(c) for c in self.num], self.a, self.b, z)

    def __eq__(self, other) -> bool:
        if not isinstance(other, XiRational):
            return NotImplemented
        d = self - other
        return d.is_zero()

    # -- calculus ---------------------------------------------------------
    def dxi(self, order: int = 1) -> "XiRational":
        """Exact d/d xi_n, `order` times."""
        f = self
        for _ in range(order):
            f = f._dxi_once()
        return f

    def _dxi_once(self) -> "XiRational":
        z = self.zero_elem
        dnum = [self.num[k] * GaussianRational.of(k) for k in range(1, len(self.num))]
        # f' = num'/(D) - num * (a/(xi-i) + b/(xi+i)) / D
        part1 = XiRational(_poly_mul_linear(_poly_mul_linear(dnum, I_G, z), NEG_I, z),
                           self.a + 1, self.b + 1, z, reduce=False)
        corr = []
        if self.a:
            corr.append(XiRational(_poly_mul_linear([c * GaussianRational.of(self.a) for c in self.num], NEG_I, z),
                                   self.a + 1, self.b + 1, z, reduce=False))
        if self.b:
            corr.append(XiRational(_poly_mul_linear([c * GaussianRational.of(self.b) for c in self.num], I_G, z),
                                   self.a + 1, self.b + 1, z, reduce=False))
        out = part1
        for c in corr:
            out = out - c
        return XiRational(out.num, out.a, out.b, z)

    def _principal_parts(self, at_plus: bool) -> List:
        """Coefficients [A_1 .. A_k] of the principal part at +i (or -i):
        f = sum_j A_j / (xi -+ i)^j + (regular near the pole).

        A_j is the coefficient of t^(k-j) in the Taylor series of
        num(pole + t) * (t + gap)^(-other_order), gap = pole - other_pole.
        """
        z = self.zero_elem
        k = self.a if at_plus else self.b
        if k == 0 or self.is_zero():
            return []
        pole = I_G if at_plus else NEG_I
        other_order = self.b if at_plus else self.a
        # Taylor shift: num(pole + t) = sum_r shifted[r] t^r
        shifted = [z] * len(self.num)
        for m, c in enumerate(self.num):
            if self._is0(c):
                continue
            pw = [ONE_G]
            for _ in range(m):
                pw.append(pw[-1] * pole)
            for r in range(m + 1):
                shifted[r] = shifted[r] + c * (GaussianRational.of(_binom(m, r)) * pw[m - r])
        # (t + gap)^(-other_order) = sum_m binom(-oo, m) gap^(-oo-m) t^m
        gap = pole + pole  # pole - (-pole) = 2*pole
        if other_order:
            ginv = gap.inverse()
            base = ginv ** other_order
            inv_series = [GaussianRational.of(_binom(other_order + m - 1, m) * (-1) ** m)
                          * (ginv ** m) * base for m in range(k)]
        else:
            inv_series = [ONE_G] + [GaussianRational(Fraction(0))] * (k - 1)
        parts = []
        for j in range(1, k + 1):
            target = k - j
            acc = z
            for r in range(target + 1):
                if r < len(shifted):
                    acc = acc + shifted[r] * inv_series[target - r]
            parts.append(acc)
        return parts

    def partial_fractions(self) -> Tuple[List, List, "XiRational"]:
        """(principal parts at +i, at -i, polynomial part).

        Principal parts are lists [A_1, ..., A_k]; recombination reproduces
        the function exactly (checked by the test suite).
        """
        z = self.zero_elem
        pp_plus = self._principal_parts(True)
        pp_minus = self._principal_parts(False)
        poly = self - _from_principal(pp_plus, True, z) - _from_principal(pp_minus, False, z)
        if not (poly.a == 0 and poly.b == 0):
            raise ArithmeticError("partial fraction residue left a pole behind")
        return pp_plus, pp_minus, poly

    def pi_plus(self) -> "XiRational":
        """Projection onto principal parts at +i (H^+); polynomial parts and
        the pole at -i belong to pi^-."""
        return _from_principal(self._principal_parts(True), True, self.zero_elem)

    def pi_minus(self) -> "XiRational":
        return self - self.pi_plus()

    def line_integral(self) -> ScalarExpr:
        """Integral over the real line: 2*pi*i * residue at +i.

        Requires ScalarExpr coefficients, no real poles (the representation
        admits only +-i), and decay at least like 1/xi^2 -- with a bare 1/xi
        tail the contour arc would contribute and the residue formula would
        not equal the symmetric-limit integral."""
        if self.is_zero():
            return ScalarExpr.zero()
        if self.degree() > self.a + self.b - 2:
            raise ArithmeticError("line_integral needs decay >= 1/xi^2 "
                                  f"(degree {self.degree()} vs pole order {self.a + self.b})")
        if not isinstance(self.num[0], ScalarExpr):
            raise TypeError("line_integral needs ScalarExpr coefficients (trace first)")
        if self.a == 0:
            return ScalarExpr.zero()
        res = self._principal_parts(True)[0]
        return res * ScalarExpr.tok(PI, GaussianRational(Fraction(0), Fraction(2)))


def _poly_mul_linear(num: List, root: GaussianRational, zero_elem) -> List:
    """num * (xi - root)."""
    if not num:
        return []
    out = [zero_elem] * (len(num) + 1)
    for k, c in enumerate(num):
        out[k + 1] = out[k + 1] + c
        out[k] = out[k] + c * (GaussianRational.of(-1) * root)
    return out


def _from_principal(parts: List, at_plus: bool, zero_elem) -> "XiRational":
    """Rebuild sum A_j / (xi -+ i)^j as a XiRational."""
    k = len(parts)
    if k == 0:
        return XiRational.zero(zero_elem)
    root = I_G if at_plus else NEG_I
    num = [zero_elem]
    # common denominator (xi - root)^k: A_j * (xi - root)^(k - j)
    for j, coef in enumerate(parts, start=1):
        term = [coef]
        for _ in range(k - j):
            term = _poly_mul_linear(term, root, zero_elem)
        m = max(len(num), len(term))
        num += [zero_elem] * (m - len(num))
        for idx in range(len(term)):
            num[idx] = num[idx] + term[idx]
    return XiRational(num, k if at_plus else 0, 0 if at_plus else k, zero_elem)
