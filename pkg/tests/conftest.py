import math
import random
from fractions import Fraction

import pytest

from moebius import validate_antipodal, validate_metric

LOG2 = math.log(2.0)
LOG3 = math.log(3.0)


def star_float():
    """Hub-and-legs space: one point at weight 0 against everyone, legs at
    rho = 1/3 pairwise."""
    a = -2 * LOG3
    return validate_antipodal(
        [[0.0, 0.0, 0.0, 0.0],
         [0.0, 0.0, a, a],
         [0.0, a, 0.0, a],
         [0.0, a, a, 0.0]],
        mode="float", domain="log")


def square_float():
    b, c = -4 * LOG2, -2 * LOG2
    return validate_antipodal(
        [[0.0, 0.0, 0.0, 0.0],
         [0.0, 0.0, b, b],
         [0.0, b, 0.0, c],
         [0.0, b, c, 0.0]],
        mode="float", domain="log")


def star_exact():
    return validate_antipodal(
        [[0, 0, 0, 0], [0, 0, -2, -2], [0, -2, 0, -2], [0, -2, -2, 0]],
        mode="exact", domain="log")


def square_exact():
    return validate_antipodal(
        [[0, 0, 0, 0], [0, 0, -4, -4], [0, -4, 0, -2], [0, -4, -2, 0]],
        mode="exact", domain="log")


def segment_exact():
    """One tied dominant pair: the bounded part of the member space is a
    single edge."""
    return validate_antipodal(
        [[0, 0, 0, 0], [0, 0, -2, 0], [0, -2, 0, 0], [0, 0, 0, 0]],
        mode="exact", domain="log")


def tripod_metric():
    return validate_metric([[0, 2, 2], [2, 0, 2], [2, 2, 0]])


def random_log_space(rng: random.Random, n: int, mode: str = "exact"):
    """Random antipodal log-weights; every row is forced to attain 0."""
    if mode == "exact":
        a = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                a[i][j] = a[j][i] = Fraction(-rng.randint(1, 300), 100)
    else:
        a = [[0.0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                a[i][j] = a[j][i] = -rng.uniform(0.01, 3.0)
    for i in range(n):
        if all(a[i][j] != 0 for j in range(n) if j != i):
            j = rng.choice([k for k in range(n) if k != i])
            a[i][j] = a[j][i] = 0 * a[i][j]
    return validate_antipodal(tuple(tuple(r) for r in a), mode=mode,
                              domain="log")


def random_metric(rng: random.Random, m: int):
    """Random integer/2 metric, re-drawn until the triangle inequalities
    hold."""
    while True:
        d = [[Fraction(0)] * m for _ in range(m)]
        for i in range(m):
            for j in range(i + 1, m):
                d[i][j] = d[j][i] = Fraction(rng.randint(2, 12), 2)
        try:
            return validate_metric(d)
        except Exception:
            continue


def random_simplex_weights(rng: random.Random, m: int):
    k = 1 + m * (m - 3) // 2
    w = [rng.randint(1, 60) for _ in range(k)]
    s = sum(w)
    return tuple(Fraction(v, s) for v in w)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
