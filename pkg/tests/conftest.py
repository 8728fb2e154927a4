"""Shared helpers: random words, oracle environments, exact evaluation."""
import random
from fractions import Fraction

import pytest

from hodgeres.oracle import Env, eval_scalar
from hodgeres.scalars import GaussianRational, ScalarExpr, TR_ID
from hodgeres.wick import C, CB, field


def random_rational(rng, lo=-4, hi=4, den=3):
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def random_vector(rng, n):
    return [random_rational(rng) for _ in range(n)]


def random_word(rng, n, max_len=8, names="XYZWUV"):
    """(symbolic word, field assignment) with repeated letters allowed."""
    length = rng.randint(0, max_len)
    letters = []
    env_fields = {}
    for _ in range(length):
        name = rng.choice(names)
        flavor = rng.choice((C, CB))
        letters.append((flavor, field(name)))
        if name not in env_fields:
            env_fields[name] = random_vector(rng, n)
    return tuple(letters), env_fields


def word_for_matrix(word, env: Env):
    return [("c" if f == C else "cb", env.components(v)) for f, v in word]


def eval_with_trid(e: ScalarExpr, env: Env) -> GaussianRational:
    return eval_scalar(e.substitute_token(TR_ID, 1 << env.n), env)


@pytest.fixture
def rng():
    return random.Random(20240817)
