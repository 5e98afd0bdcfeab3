"""Greedy and exact decomposition of a graded matrix into concept factors.

`find_factors` grows one concept at a time: it repeatedly extends a
candidate intent by the attribute-grade pair whose generated concept covers
the most still-uncovered nonzero cells, closes the intent, and stops growing
when no extension strictly improves the count.  The factors it emits
reproduce the input exactly under sup-t-norm composition.

`optimal_factorization` is the small-instance oracle: it enumerates every
formal concept and searches subsets in lexicographic index order for a
minimum exact cover.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .concepts import (
    BudgetExceededError,
    FormalConcept,
    _down_levels,
    _require_context,
    _up_levels,
    enumerate_concepts,
)
from .matrix import LEVEL_DTYPE, FuzzySet, GradedMatrix, _require_same_scale
from .scale import Scale

# A tie-break policy maps (attribute index, grade level) to a sort key;
# among equal-gain candidates the one with the largest key wins.  Both
# built-in policies prefer lower grades: a lower grade constrains the
# intent less, so the strictly-improving inner loop keeps more room to
# extend the candidate before it stalls.
TieBreakKey = Callable[[int, int], tuple]

TIE_BREAK_POLICIES: dict[str, TieBreakKey] = {
    # prefer the lower grade, then the earlier attribute
    "grade-then-index": lambda j, a: (-a, -j),
    # prefer the earlier attribute, then the lower grade
    "index-then-grade": lambda j, a: (-j, -a),
}

DEFAULT_TIE_BREAK = "grade-then-index"


def resolve_tie_break(policy) -> TieBreakKey:
    if callable(policy):
        return policy
    try:
        return TIE_BREAK_POLICIES[policy]
    except KeyError:
        raise ValueError(
            f"unknown tie-break policy {policy!r}, expected one of: "
            f"{', '.join(TIE_BREAK_POLICIES)} or a callable"
        ) from None


class CoverUniverse:
    """The nonzero cells of a context still awaiting coverage."""

    __slots__ = ("mask",)

    def __init__(self, mask: np.ndarray) -> None:
        arr = np.array(mask, dtype=bool)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-d cell mask, got shape {arr.shape}")
        self.mask = arr

    @classmethod
    def from_context(cls, context: GradedMatrix) -> "CoverUniverse":
        return cls(context.entries != 0)

    def __len__(self) -> int:
        return int(self.mask.sum())

    @property
    def is_empty(self) -> bool:
        return not self.mask.any()

    def pairs(self) -> list[tuple[int, int]]:
        """Uncovered (row, col) pairs in row-major order."""
        rows, cols = np.nonzero(self.mask)
        return [(int(i), int(j)) for i, j in zip(rows, cols)]

    def copy(self) -> "CoverUniverse":
        return CoverUniverse(self.mask)

    def remove_covered(self, concept: FormalConcept, context: GradedMatrix) -> int:
        """Drop every cell the concept covers; returns how many were dropped."""
        scale = context.scale
        rect = scale.tnorm(
            concept.extent.membership[:, None], concept.intent.membership[None, :]
        )
        hit = self.mask & (rect >= context.entries)
        self.mask &= ~hit
        return int(hit.sum())


@dataclass(frozen=True)
class FactorSet:
    """An ordered list of concept factors for one context.

    `uncovered_counts`, when present, traces the greedy run: entry l is the
    number of nonzero cells still uncovered after the first l factors, so it
    starts at the full count and ends at 0 for a complete run.
    """

    factors: tuple[FormalConcept, ...]
    context_shape: tuple[int, int]
    scale: Scale
    complete: bool = True
    uncovered_counts: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        n, m = self.context_shape
        for concept in self.factors:
            if concept.extent.size != n or concept.intent.size != m:
                raise ValueError(
                    f"factor shaped {concept.extent.size}x{concept.intent.size} "
                    f"does not fit a {n}x{m} context"
                )
            if concept.extent.scale != self.scale or concept.intent.scale != self.scale:
                raise ValueError("factor scale differs from the factor set scale")
        if self.uncovered_counts is not None and len(self.uncovered_counts) != len(self.factors) + 1:
            raise ValueError("uncovered_counts must hold one entry per prefix, including the empty one")

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def covered_nonzero_curve(self) -> list[Fraction]:
        """Fraction of initially nonzero cells covered after each factor."""
        if self.uncovered_counts is None:
            raise ValueError("this factor set carries no coverage trace")
        initial = self.uncovered_counts[0]
        if initial == 0:
            return [Fraction(1)] * len(self.factors)
        return [Fraction(initial - u, initial) for u in self.uncovered_counts[1:]]


def _covered_count(scale: Scale, entries: np.ndarray, mask: np.ndarray,
                   extent: np.ndarray, intent: np.ndarray) -> int:
    rect = scale.tnorm(extent[:, None], intent[None, :])
    return int(np.count_nonzero(mask & (rect >= entries)))


def _candidate_closure(scale: Scale, entries: np.ndarray, intent: np.ndarray,
                       j: int, a: int) -> tuple[np.ndarray, np.ndarray]:
    grown = intent.copy()
    if a > grown[j]:
        grown[j] = a
    extent = _down_levels(scale, entries, grown)
    closed = _up_levels(scale, entries, extent)
    return extent, closed


def gain(context: GradedMatrix, universe: CoverUniverse, intent: FuzzySet,
         j: int, a: int) -> int:
    """Cells of the universe covered by the concept generated from the intent
    extended with grade `a` at attribute `j`.

    The count is taken against the whole universe, not just newly covered
    cells, which is what makes the greedy inner loop's improvement test
    meaningful.
    """
    _require_context(context)
    _require_same_scale(context.scale, intent.scale)
    if intent.size != context.n_cols:
        raise ValueError(f"intent size {intent.size} does not match {context.n_cols} columns")
    if universe.mask.shape != context.shape:
        raise ValueError(f"universe shape {universe.mask.shape} does not match {context.shape}")
    if not 0 <= j < context.n_cols:
        raise ValueError(f"attribute index {j} outside {context.n_cols} columns")
    a = context.scale.check_level(a)
    if a == 0:
        raise ValueError("a zero grade cannot extend an intent")
    extent, closed = _candidate_closure(
        context.scale, context.entries, intent.membership, j, a
    )
    return _covered_count(context.scale, context.entries, universe.mask, extent, closed)


def _select_candidate(scale: Scale, entries: np.ndarray, mask: np.ndarray,
                      intent: np.ndarray, key: TieBreakKey, skip_dominated: bool):
    """Best (gain, j, a) over all candidate extensions, with closure arrays.

    Candidates with a <= intent[j] leave the intent unchanged, so their gain
    equals the current concept's own cover count; skipping them cannot alter
    which strictly-improving candidate wins.
    """
    top = scale.max_level
    best = None
    for j in range(entries.shape[1]):
        start = int(intent[j]) + 1 if skip_dominated else 1
        for a in range(start, top + 1):
            extent, closed = _candidate_closure(scale, entries, intent, j, a)
            g = _covered_count(scale, entries, mask, extent, closed)
            rank = (g, key(j, a))
            if best is None or rank > best[0]:
                best = (rank, j, a, extent, closed)
    if best is None:
        return None
    rank, j, a, extent, closed = best
    return rank[0], j, a, extent, closed


def find_factors(context: GradedMatrix, tie_break=DEFAULT_TIE_BREAK, *,
                 max_factors: int | None = None,
                 skip_dominated: bool = True) -> FactorSet:
    """Greedy exact decomposition of a context into concept factors.

    Each round grows an intent from empty: among all attribute-grade pairs
    it picks the one whose generated concept covers the most uncovered
    nonzero cells (ties resolved by `tie_break`), closes the extended
    intent, and repeats while the best cover count strictly improves.  The
    finished concept is appended and the cells it covers are retired.

    A `max_factors` bound truncates the run; the result is then marked
    incomplete instead of pretending the decomposition is exact.
    `skip_dominated=False` evaluates redundant candidates too; it exists to
    demonstrate the skip changes nothing.
    """
    _require_context(context)
    key = resolve_tie_break(tie_break)
    if max_factors is not None and max_factors < 0:
        raise ValueError(f"max_factors must be nonnegative, got {max_factors}")
    scale, entries = context.scale, context.entries
    n_rows, n_cols = entries.shape
    mask = entries != 0
    uncovered = [int(mask.sum())]
    factors: list[FormalConcept] = []
    complete = True

    while mask.any():
        if max_factors is not None and len(factors) >= max_factors:
            complete = False
            break
        intent = np.zeros(n_cols, dtype=LEVEL_DTYPE)
        extent = _down_levels(scale, entries, intent)
        best_so_far = 0
        selected = _select_candidate(scale, entries, mask, intent, key, skip_dominated)
        while selected is not None and selected[0] > best_so_far:
            best_so_far, _, _, extent, intent = selected
            selected = _select_candidate(scale, entries, mask, intent, key, skip_dominated)
        concept = FormalConcept(FuzzySet(scale, extent), FuzzySet(scale, intent))
        factors.append(concept)
        rect = scale.tnorm(extent[:, None], intent[None, :])
        mask &= ~(rect >= entries)
        uncovered.append(int(mask.sum()))

    return FactorSet(
        factors=tuple(factors),
        context_shape=(n_rows, n_cols),
        scale=scale,
        complete=complete,
        uncovered_counts=tuple(uncovered),
    )


def factor_matrices(factor_set: FactorSet) -> tuple[GradedMatrix, GradedMatrix]:
    """The object-factor and factor-attribute matrices of a factor set.

    Column l of the first matrix is the l-th extent; row l of the second is
    the l-th intent.  Composing the two reproduces the superposition of the
    factor rectangles.
    """
    n, m = factor_set.context_shape
    k = len(factor_set.factors)
    a = np.zeros((n, k), dtype=LEVEL_DTYPE)
    b = np.zeros((k, m), dtype=LEVEL_DTYPE)
    for l, concept in enumerate(factor_set.factors):
        a[:, l] = concept.extent.membership
        b[l, :] = concept.intent.membership
    return GradedMatrix(factor_set.scale, a), GradedMatrix(factor_set.scale, b)


def coverage_curve(factor_set: FactorSet, context: GradedMatrix) -> list[Fraction]:
    """Exact fraction of matching cells after each successive factor.

    Entry l compares the superposition of the first l + 1 rectangles with
    the context, so a complete decomposition ends the curve at 1.
    """
    _require_context(context)
    _require_same_scale(factor_set.scale, context.scale)
    if factor_set.context_shape != context.shape:
        raise ValueError(
            f"factor set shaped {factor_set.context_shape} does not fit context {context.shape}"
        )
    entries = context.entries
    scale = context.scale
    acc = np.zeros_like(entries)
    curve = []
    for concept in factor_set.factors:
        rect = scale.tnorm(
            concept.extent.membership[:, None], concept.intent.membership[None, :]
        )
        np.maximum(acc, rect, out=acc)
        curve.append(Fraction(int(np.count_nonzero(acc == entries)), entries.size))
    return curve


def optimal_factorization(context: GradedMatrix, *, budget: int = 10**6) -> FactorSet:
    """Minimum-size exact concept decomposition, by exhaustive search.

    Enumerates all formal concepts, then looks for the smallest subset
    covering every nonzero cell, trying subset sizes 1, 2, ... and indices
    in lexicographic order, so the result is deterministic: the minimum size
    first, the lexicographically least concept-index set second.  `budget`
    caps both the closure count of the enumeration and the number of search
    nodes.  Intended for small instances only.
    """
    _require_context(context)
    concepts = enumerate_concepts(context, budget=budget)
    scale, entries = context.scale, context.entries
    rows, cols = np.nonzero(entries)
    cells = list(zip(rows.tolist(), cols.tolist()))
    if not cells:
        return FactorSet((), context.shape, scale, complete=True, uncovered_counts=(0,))

    # Bitmask of covered cells per concept; concepts covering nothing can
    # never appear in a minimal cover.
    masks = []
    for concept in concepts:
        rect = scale.tnorm(
            concept.extent.membership[:, None], concept.intent.membership[None, :]
        )
        hits = rect >= entries
        masks.append(sum(1 << b for b, (i, j) in enumerate(cells) if hits[i, j]))
    candidates = [(idx, m) for idx, m in enumerate(masks) if m]

    count = len(candidates)
    suffix_union = [0] * (count + 1)
    suffix_max_pop = [0] * (count + 1)
    for p in range(count - 1, -1, -1):
        suffix_union[p] = suffix_union[p + 1] | candidates[p][1]
        suffix_max_pop[p] = max(suffix_max_pop[p + 1], candidates[p][1].bit_count())

    full = (1 << len(cells)) - 1
    nodes = 0
    # (position, uncovered) -> deepest remaining depth already known to fail
    failed: dict[tuple[int, int], int] = {}
    chosen: list[int] = []

    def search(pos: int, uncovered: int, depth_left: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceededError(
                f"cover search exceeded the budget of {budget} nodes"
            )
        if uncovered == 0:
            return True
        if depth_left == 0:
            return False
        if uncovered.bit_count() > depth_left * suffix_max_pop[pos]:
            return False
        memo_key = (pos, uncovered)
        if failed.get(memo_key, -1) >= depth_left:
            return False
        for p in range(pos, count):
            if suffix_union[p] & uncovered != uncovered:
                break
            idx, mask = candidates[p]
            remaining = uncovered & ~mask
            if remaining == uncovered:
                continue
            chosen.append(idx)
            if search(p + 1, remaining, depth_left - 1):
                return True
            chosen.pop()
        if failed.get(memo_key, -1) < depth_left:
            failed[memo_key] = depth_left
        return False

    for size in range(1, count + 1):
        if search(0, full, size):
            break
    else:
        raise RuntimeError("no concept cover found; this should be impossible")

    picked = tuple(concepts[idx] for idx in chosen)
    uncovered_counts = [len(cells)]
    remaining = full
    for idx in chosen:
        remaining &= ~masks[idx]
        uncovered_counts.append(remaining.bit_count())
    return FactorSet(
        factors=picked,
        context_shape=context.shape,
        scale=scale,
        complete=True,
        uncovered_counts=tuple(uncovered_counts),
    )
