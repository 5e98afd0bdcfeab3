"""Slow reference implementations the fast kernels are checked against.

Everything here is written with explicit Python loops, exact rationals,
or brute-force search, deliberately sharing no code with the numpy
kernels under test.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations, product

import numpy as np

from gradefactor import GradedMatrix, Scale


def value_tnorm(scale: Scale, a: int, b: int) -> int:
    """The t-norm computed in value space with Fractions."""
    n = scale.max_level
    x, y = Fraction(a, n), Fraction(b, n)
    if scale.tnorm_kind == "lukasiewicz":
        v = max(Fraction(0), x + y - 1) * n
        assert v.denominator == 1
        return int(v)
    if scale.tnorm_kind == "godel":
        return min(a, b)
    # rounded goguen: nearest level to the true product, ties up
    return math.floor(x * y * n + Fraction(1, 2))


def brute_residuum(scale: Scale, a: int, b: int) -> int:
    """Largest c with tnorm(a, c) <= b, found by scanning the chain."""
    return max(c for c in range(scale.levels) if int(scale.tnorm(a, c)) <= b)


def loop_up(context: GradedMatrix, extent) -> list[int]:
    scale, entries = context.scale, context.entries
    return [
        min(int(scale.residuum(int(extent[i]), int(entries[i, j])))
            for i in range(context.n_rows))
        for j in range(context.n_cols)
    ]


def loop_down(context: GradedMatrix, intent) -> list[int]:
    scale, entries = context.scale, context.entries
    return [
        min(int(scale.residuum(int(intent[j]), int(entries[i, j])))
            for j in range(context.n_cols))
        for i in range(context.n_rows)
    ]


def loop_compose(a: GradedMatrix, b: GradedMatrix) -> list[list[int]]:
    """Triple-loop sup-t-norm product."""
    scale = a.scale
    return [
        [
            max(
                (int(scale.tnorm(int(a.entries[i, l]), int(b.entries[l, j])))
                 for l in range(a.n_cols)),
                default=0,
            )
            for j in range(b.n_cols)
        ]
        for i in range(a.n_rows)
    ]


def bool_compose(a: GradedMatrix, b: GradedMatrix) -> np.ndarray:
    """Ordinary Boolean matrix product."""
    return (a.entries.astype(bool) @ b.entries.astype(bool)).astype(int)


def sweep_concepts(context: GradedMatrix) -> set[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Every concept as an (intent, extent) pair, found by closing every
    possible intent.  Exponential in the column count; tiny inputs only."""
    found = {}
    for intent in product(range(context.scale.levels), repeat=context.n_cols):
        extent = loop_down(context, intent)
        closed = tuple(loop_up(context, extent))
        if closed not in found:
            found[closed] = tuple(loop_down(context, closed))
    return {(intent, extent) for intent, extent in found.items()}


def min_cover_size(context: GradedMatrix, concepts) -> int:
    """Smallest number of concepts whose rectangles cover every nonzero
    cell, by trying all subsets in increasing size."""
    scale, entries = context.scale, context.entries
    cells = [
        (i, j)
        for i in range(context.n_rows)
        for j in range(context.n_cols)
        if entries[i, j]
    ]
    if not cells:
        return 0
    hit_sets = []
    for c in concepts:
        hits = frozenset(
            (i, j) for i, j in cells
            if int(scale.tnorm(int(c.extent.membership[i]), int(c.intent.membership[j])))
            == int(entries[i, j])
        )
        hit_sets.append(hits)
    universe = frozenset(cells)
    for k in range(1, len(concepts) + 1):
        for combo in combinations(hit_sets, k):
            if frozenset().union(*combo) == universe:
                return k
    raise AssertionError("the full concept set always covers the context")
