"""Concrete matrix model of the Clifford actions on Lambda*(R^n).

Basis: subsets of {1..n} in graded lexicographic order. The exterior and
interior multiplications eps/iota carry the usual transposition sign; the
Clifford actions are c = eps - iota and cbar = eps + iota, realized as exact
2^n x 2^n matrices over Fraction.

This module is the brute-force oracle for the symbolic trace engine: traces
of generator words computed here settle every sign question.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple


@dataclass(frozen=True)
class ExtBasis:
    n: int

    @property
    def subsets(self) -> Tuple[frozenset, ...]:
        return _subsets(self.n)

    @property
    def dim(self) -> int:
        return 1 << self.n


_subset_cache: dict = {}


def _subsets(n: int) -> Tuple[frozenset, ...]:
    if n not in _subset_cache:
        out = []
        for k in range(n + 1):
            for combo in itertools.combinations(range(1, n + 1), k):
                out.append(frozenset(combo))
        _subset_cache[n] = tuple(out)
    return _subset_cache[n]


def _index(n: int) -> dict:
    return {s: i for i, s in enumerate(_subsets(n))}


class CliffMatrix:
    """Dense exact matrix; entries are Fractions (or ints)."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows: List[List[Fraction]]):
        self.n = n
        self.rows = rows

    @staticmethod
    def zero(n: int) -> "CliffMatrix":
        d = 1 << n
        return CliffMatrix(n, [[Fraction(0)] * d for _ in range(d)])

    @staticmethod
    def identity(n: int) -> "CliffMatrix":
        d = 1 << n
        rows = [[Fraction(0)] * d for _ in range(d)]
        for i in range(d):
            rows[i][i] = Fraction(1)
        return CliffMatrix(n, rows)

    def __add__(self, other: "CliffMatrix") -> "CliffMatrix":
        d = 1 << self.n
        return CliffMatrix(self.n, [[self.rows[i][j] + other.rows[i][j]
                                     for j in range(d)] for i in range(d)])

    def __sub__(self, other: "CliffMatrix") -> "CliffMatrix":
        d = 1 << self.n
        return CliffMatrix(self.n, [[self.rows[i][j] - other.rows[i][j]
                                     for j in range(d)] for i in range(d)])

    def __neg__(self) -> "CliffMatrix":
        d = 1 << self.n
        return CliffMatrix(self.n, [[-self.rows[i][j] for j in range(d)] for i in range(d)])

    def scale(self, s) -> "CliffMatrix":
        d = 1 << self.n
        return CliffMatrix(self.n, [[self.rows[i][j] * s for j in range(d)] for i in range(d)])

    def __matmul__(self, other: "CliffMatrix") -> "CliffMatrix":
        d = 1 << self.n
        out = [[Fraction(0)] * d for _ in range(d)]
        orows = other.rows
        for i in range(d):
            ri = self.rows[i]
            oi = out[i]
            for k in range(d):
                a = ri[k]
                if a:
                    rk = orows[k]
                    for j in range(d):
                        if rk[j]:
                            oi[j] += a * rk[j]
        return CliffMatrix(self.n, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, CliffMatrix) and self.n == other.n and self.rows == other.rows

    def transpose(self) -> "CliffMatrix":
        d = 1 << self.n
        return CliffMatrix(self.n, [[self.rows[j][i] for j in range(d)] for i in range(d)])

    def is_zero(self) -> bool:
        return all(all(x == 0 for x in r) for r in self.rows)


def _eps_iota(n: int, j: int) -> Tuple[CliffMatrix, CliffMatrix]:
    idx = _index(n)
    eps = CliffMatrix.zero(n)
    iota = CliffMatrix.zero(n)
    for s in _subsets(n):
        sign = (-1) ** sum(1 for x in s if x < j)
        if j not in s:
            eps.rows[idx[s | {j}]][idx[s]] = Fraction(sign)
        else:
            iota.rows[idx[s - {j}]][idx[s]] = Fraction(sign)
    return eps, iota


_gen_cache: dict = {}


def build_generators(n: int) -> Tuple[List[CliffMatrix], List[CliffMatrix]]:
    """(c(e_1..e_n), cbar(e_1..e_n)) as exact matrices; 1 <= n <= 8."""
    if not 1 <= n <= 8:
        raise ValueError(f"dimension {n} out of supported range 1..8")
    if n not in _gen_cache:
        cs, cbs = [], []
        for j in range(1, n + 1):
            eps, iota = _eps_iota(n, j)
            cs.append(eps - iota)
            cbs.append(eps + iota)
        _gen_cache[n] = (cs, cbs)
    return _gen_cache[n]


def vector_matrix(flavor: str, comps: Sequence, n: int) -> CliffMatrix:
    """c(v) or cbar(v) for v given by n rational components."""
    if len(comps) != n:
        raise ValueError(f"expected {n} components, got {len(comps)}")
    cs, cbs = build_generators(n)
    gens = cs if flavor == "c" else cbs
    out = CliffMatrix.zero(n)
    for i, x in enumerate(comps):
        x = Fraction(x)
        if x:
            out = out + gens[i].scale(x)
    return out


def word_matrix(word: Sequence[Tuple[str, Sequence]], n: int) -> CliffMatrix:
    """Product of generator matrices contracted with components, left to right.

    word: sequence of (flavor, components), flavor in {"c", "cb"}.
    Empty word gives the identity.
    """
    out = CliffMatrix.identity(n)
    for flavor, comps in word:
        out = out @ vector_matrix("c" if flavor == "c" else "cb", comps, n)
    return out


def matrix_trace(m: CliffMatrix) -> Fraction:
    return sum(m.rows[i][i] for i in range(1 << m.n))


_colmap_cache: dict = {}


def _column_maps(n: int):
    """Per generator: column -> (row, sign). Generators are signed permutations."""
    if n not in _colmap_cache:
        idx = _index(n)
        d = 1 << n
        cmap, cbmap = [], []
        for j in range(1, n + 1):
            cm = [None] * d
            cbm = [None] * d
            for s in _subsets(n):
                sign = (-1) ** sum(1 for x in s if x < j)
                if j not in s:
                    cm[idx[s]] = (idx[s | {j}], sign)
                    cbm[idx[s]] = (idx[s | {j}], sign)
                else:
                    cm[idx[s]] = (idx[s - {j}], -sign)
                    cbm[idx[s]] = (idx[s - {j}], sign)
            cmap.append(cm)
            cbmap.append(cbm)
        _colmap_cache[n] = (cmap, cbmap)
    return _colmap_cache[n]


def word_trace(word: Sequence[Tuple[str, Sequence]], n: int) -> Fraction:
    """Trace of a generator word without materializing the product matrix.

    Applies the word to each basis vector as a sparse column; much faster
    than full matrix products for long words.
    """
    cmap, cbmap = _column_maps(n)
    letters = []
    for flavor, comps in word:
        maps = cmap if flavor == "c" else cbmap
        comps = [Fraction(x) for x in comps]
        letters.append([(maps[i], x) for i, x in enumerate(comps) if x])
    d = 1 << n
    total = Fraction(0)
    for start in range(d):
        vec = {start: Fraction(1)}
        for letter in reversed(letters):
            nxt: dict = {}
            for col, val in vec.items():
                for gmap, x in letter:
                    row, sign = gmap[col]
                    nxt[row] = nxt.get(row, Fraction(0)) + sign * x * val
            vec = {k: v for k, v in nxt.items() if v}
            if not vec:
                break
        total += vec.get(start, Fraction(0))
    return total
