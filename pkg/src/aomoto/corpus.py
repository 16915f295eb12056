"""Built-in arrangements and a seeded random generator."""

from __future__ import annotations

import random

from .arrangement import Arrangement, ArrangementError, is_essential

BUILTIN_ROWS = {
    # three generic lines
    "E1": (2, [[1, 0, 0], [0, 1, 0], [1, 1, 1]]),
    # coordinate axes
    "E3": (2, [[1, 0, 0], [0, 1, 0]]),
    # two parallel lines and a transversal
    "E4": (2, [[1, 0, 0], [1, 0, 1], [0, 1, 0]]),
    # two crossing lines and three parallels meeting them
    "FIG1": (2, [[1, -2, 0], [1, 2, 3], [1, 0, -1], [1, 0, 0], [1, 0, 1]]),
}

DEFAULT_SEED = 42
RANDOM_COUNT = 25


def builtin(name: str) -> Arrangement:
    key = name.upper()
    if key not in BUILTIN_ROWS:
        raise KeyError(f"unknown built-in arrangement {name!r}; known: {sorted(BUILTIN_ROWS)}")
    dim, rows = BUILTIN_ROWS[key]
    return Arrangement.from_equations(dim, rows)


def builtin_corpus() -> list[tuple[str, Arrangement]]:
    return [(name, builtin(name)) for name in BUILTIN_ROWS]


def random_arrangement(rng: random.Random, max_n: int = 7) -> Arrangement:
    """An essential arrangement in dimension 2 or 3 with small integer data."""
    while True:
        ell = rng.choice((2, 3))
        n = rng.randint(ell + 1, max_n if ell == 2 else max_n - 1)
        rows = []
        for _ in range(n):
            a = [rng.randint(-2, 2) for _ in range(ell)]
            if not any(a):
                continue
            rows.append(a + [rng.randint(-3, 3)])
        try:
            A = Arrangement.from_equations(ell, rows)
        except ArrangementError:
            continue
        if A.n >= ell and is_essential(A):
            return A


def random_corpus(seed: int = DEFAULT_SEED, count: int = RANDOM_COUNT, max_n: int = 7) -> list[tuple[str, Arrangement]]:
    rng = random.Random(seed)
    return [(f"random-{seed}-{j:02d}", random_arrangement(rng, max_n)) for j in range(count)]


def full_corpus(seed: int = DEFAULT_SEED, count: int = RANDOM_COUNT) -> list[tuple[str, Arrangement]]:
    return builtin_corpus() + random_corpus(seed, count)
