"""Bridge between the symbolic layer and the exterior-algebra matrix model.

Symbolic words, CliffordElem values and XiRational symbols can be
materialized as exact matrices (entries in Q(i)) once every abstract vector
is assigned concrete rational components. Value equality of two free-word
expressions is then decidable by sampling: a matrix-valued polynomial in
xi_n of degree d vanishes iff it vanishes at d+1 rational points.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .extmatrix import CliffMatrix, word_matrix
from .scalars import GaussianRational, ScalarExpr
from .symbols import CliffordElem
from .wick import VectorSym
from .xirational import XiRational


class Env:
    """Concrete rational assignment for abstract vectors and tokens.

    fields: name -> components (length n)
    dfields: name -> per-frame-index components (list of n vectors), for
             the one-step Leibniz tokens
    xip: tangential unit covector components (length n, last = 0)
    hprime: rational value for h'(0)
    """

    def __init__(self, n: int, fields: Optional[Dict[str, Sequence]] = None,
                 xip: Optional[Sequence] = None, hprime=Fraction(1),
                 dfields: Optional[Dict[str, Sequence[Sequence]]] = None):
        self.n = n
        self.fields = {k: [Fraction(x) for x in v] for k, v in (fields or {}).items()}
        self.dfields = {k: [[Fraction(x) for x in vec] for vec in vlist]
                        for k, vlist in (dfields or {}).items()}
        if xip is None:
            xip = [1] + [0] * (n - 1)
        self.xip = [Fraction(x) for x in xip]
        if len(self.xip) == n - 1:
            self.xip = self.xip + [Fraction(0)]
        if sum(x * x for x in self.xip) != 1 or self.xip[n - 1] != 0:
            raise ValueError("xi' must be a unit tangential covector")
        self.hprime = Fraction(hprime)

    def components(self, v: VectorSym, frame_index: Optional[int] = None) -> List[Fraction]:
        n = self.n
        if v.kind == "basis":
            out = [Fraction(0)] * n
            out[v.index - 1] = Fraction(1)
            return out
        if v.kind == "dxn":
            out = [Fraction(0)] * n
            out[n - 1] = Fraction(1)
            return out
        if v.kind == "xip":
            return self.xip
        if v.kind == "field":
            return self.fields[v.name]
        if v.kind == "dfield":
            if frame_index is None:
                raise ValueError("dfield needs a frame index")
            return self.dfields[v.name][frame_index - 1]
        if v.kind == "sumidx":
            if frame_index is None:
                raise ValueError("sumidx needs a frame index")
            out = [Fraction(0)] * n
            out[frame_index - 1] = Fraction(1)
            return out
        raise ValueError(v.kind)

    def dot(self, u: Sequence[Fraction], w: Sequence[Fraction]) -> Fraction:
        return sum(a * b for a, b in zip(u, w))

    def token_value(self, token) -> GaussianRational:
        kind, args = token
        if kind == "hprime":
            return GaussianRational(self.hprime)
        if kind == "xi":
            return GaussianRational(self.xip[args[0] - 1])
        if kind == "pair":
            return GaussianRational(self.dot(self._key_components(args[0]),
                                             self._key_components(args[1])))
        raise KeyError(f"no exact binding for token {token}")

    def _key_components(self, key: str) -> List[Fraction]:
        n = self.n
        if key == "dxn":
            out = [Fraction(0)] * n
            out[n - 1] = Fraction(1)
            return out
        if key == "xi'":
            return self.xip
        if key.startswith("e") and key[1:].isdigit():
            out = [Fraction(0)] * n
            out[int(key[1:]) - 1] = Fraction(1)
            return out
        return self.fields[key]


def eval_scalar(e: ScalarExpr, env: Env) -> GaussianRational:
    """Exact evaluation of a ScalarExpr under the environment (tokens the
    environment cannot bind raise KeyError)."""
    total = GaussianRational(Fraction(0))
    for mono, coef in e.terms.items():
        v = coef
        for t in mono:
            v = v * env.token_value(t)
        total = total + v
    return total


def materialize(ce: CliffordElem, env: Env) -> Tuple[CliffMatrix, CliffMatrix]:
    """CliffordElem -> (real part, imaginary part) exact matrices."""
    n = env.n
    re = CliffMatrix.zero(n)
    im = CliffMatrix.zero(n)
    for w, c in ce.terms.items():
        g = eval_scalar(c, env)
        m = word_matrix([("c" if f == "c" else "cb", env.components(v)) for f, v in w], n)
        if g.re:
            re = re + m.scale(g.re)
        if g.im:
            im = im + m.scale(g.im)
    return re, im


def xirational_value_equal(f: XiRational, g: XiRational, env: Env,
                           samples: Optional[Sequence[Fraction]] = None) -> bool:
    """Value equality of two CliffordElem-coefficient rational functions:
    the difference's numerator (a matrix-valued polynomial) must vanish at
    degree+1 sample points."""
    d = f - g
    if d.is_zero():
        return True
    deg = d.degree()
    if samples is None:
        samples = [Fraction(k) for k in range(deg + 1)]
    for s in samples[:deg + 1]:
        re = CliffMatrix.zero(env.n)
        im = CliffMatrix.zero(env.n)
        power = Fraction(1)
        for c in d.num:
            mre, mim = materialize(c, env)
            re = re + mre.scale(power)
            im = im + mim.scale(power)
            power *= s
        if not (re.is_zero() and im.is_zero()):
            return False
    return True
