"""Reading, writing, discretizing, and generating graded matrices.

CSV cells carry either decimals in [0, 1] or explicit levels written as
``L<k>``; transaction files use the whitespace-separated item-id format
common for frequent-itemset benchmarks and always land on the two-grade
chain.  Raw tables of measurements are kept as exact rationals until they
are discretized onto a scale.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .matrix import LEVEL_DTYPE, GradedMatrix, compose
from .scale import Scale

MODES = ("strict", "lenient")


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}, expected one of: {', '.join(MODES)}")


@dataclass(frozen=True)
class RawTable:
    """A labeled rectangular table of exact rational measurements."""

    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    values: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if not self.row_labels or not self.col_labels:
            raise ValueError("a raw table needs at least one row and one column")
        if len(self.values) != len(self.row_labels):
            raise ValueError("one row of values per row label required")
        for row in self.values:
            if len(row) != len(self.col_labels):
                raise ValueError("raw table rows must all have the full set of columns")

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.row_labels), len(self.col_labels))


@dataclass(frozen=True)
class ColumnRange:
    """Per-column scaling bounds used to normalize a raw table."""

    lows: tuple[Fraction, ...]
    highs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.lows) != len(self.highs):
            raise ValueError("one low and one high per column required")
        if not self.lows:
            raise ValueError("a column range needs at least one column")
        for c, (lo, hi) in enumerate(zip(self.lows, self.highs)):
            if lo >= hi:
                raise ValueError(
                    f"column {c} has an empty or constant range [{lo}, {hi}]"
                )

    @classmethod
    def from_table(cls, table: RawTable) -> "ColumnRange":
        """Observed minimum and maximum per column."""
        cols = list(zip(*table.values))
        return cls(tuple(min(c) for c in cols), tuple(max(c) for c in cols))


def discretize(table: RawTable, ranges: ColumnRange, scale: Scale, *,
               mode: str = "strict") -> GradedMatrix:
    """Normalize each column to [0, 1] and snap to the nearest grade.

    Ties round half-up.  Strict mode rejects values outside the declared
    range; lenient mode clamps them to the endpoints.  The mapping is
    monotone within every column either way.
    """
    _check_mode(mode)
    n_cols = len(table.col_labels)
    if len(ranges.lows) != n_cols:
        raise ValueError(
            f"{len(ranges.lows)} column ranges for a table with {n_cols} columns"
        )
    n = scale.max_level
    half = Fraction(1, 2)
    rows = []
    for r, row in enumerate(table.values):
        out = []
        for c, x in enumerate(row):
            lo, hi = ranges.lows[c], ranges.highs[c]
            ratio = (x - lo) / (hi - lo)
            if ratio < 0 or ratio > 1:
                if mode == "strict":
                    raise ValueError(
                        f"{table.row_labels[r]!r} has {x} in column "
                        f"{table.col_labels[c]!r}, outside [{lo}, {hi}]"
                    )
                ratio = min(max(ratio, Fraction(0)), Fraction(1))
            out.append(math.floor(ratio * n + half))
        rows.append(out)
    return GradedMatrix(scale, rows)


# ----------------------------------------------------------------------
# CSV
# ----------------------------------------------------------------------


def _read_rows(path) -> list[list[str]]:
    with open(path, newline="", encoding="utf-8") as handle:
        rows = [row for row in csv.reader(handle)]
    rows = [[cell.strip() for cell in row] for row in rows if row]
    if not rows:
        raise ValueError(f"{path}: empty file")
    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise ValueError(f"{path}: row {i + 1} has {len(row)} cells, expected {width}")
    return rows


def _parse_fraction(text: str) -> Fraction:
    return Fraction(text)


def _is_fraction(text: str) -> bool:
    try:
        Fraction(text)
    except (ValueError, ZeroDivisionError):
        return False
    return True


def _parse_grade_cell(scale: Scale, text: str, *, strict: bool) -> int:
    if text.startswith("L"):
        body = text[1:]
        if not body.isdigit():
            raise ValueError(f"bad level syntax {text!r}")
        return scale.check_level(int(body))
    return scale.level_from_value(Fraction(text), strict=strict)


def _is_grade_cell(scale: Scale, text: str) -> bool:
    try:
        _parse_grade_cell(scale, text, strict=False)
    except (ValueError, ZeroDivisionError):
        return False
    return True


def read_csv(path, scale: Scale, *, mode: str = "strict",
             labeled: bool | None = None) -> GradedMatrix:
    """Read a matrix of grades from CSV.

    Cells are decimals in [0, 1] or levels written ``L<k>``.  With
    ``labeled=None`` a header row and a label column are auto-detected (any
    cell that fails to parse as a grade marks its row or column as labels)
    and stripped; pass True or False to force the layout.
    """
    _check_mode(mode)
    strict = mode == "strict"
    rows = _read_rows(path)

    if labeled is None:
        has_header = not all(_is_grade_cell(scale, c) for c in rows[0])
        body = rows[1:] if has_header else rows
        if not body:
            raise ValueError(f"{path}: no data rows")
        has_labels = not all(_is_grade_cell(scale, r[0]) for r in body)
    else:
        has_header = has_labels = labeled
        body = rows[1:] if has_header else rows
        if not body:
            raise ValueError(f"{path}: no data rows")

    levels = []
    for r, row in enumerate(body):
        cells = row[1:] if has_labels else row
        if not cells:
            raise ValueError(f"{path}: no data columns")
        parsed = []
        for c, cell in enumerate(cells):
            try:
                parsed.append(_parse_grade_cell(scale, cell, strict=strict))
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"{path}: bad grade at row {r + 1}, column {c + 1}: {exc}") from exc
        levels.append(parsed)
    return GradedMatrix(scale, levels)


def write_csv(matrix: GradedMatrix, path) -> None:
    """Write a grade matrix as plain CSV, one canonical cell per grade."""
    scale = matrix.scale
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        for row in matrix.entries:
            writer.writerow([scale.format_level(v) for v in row])


def read_raw_csv(path, *, labeled: bool | None = None) -> RawTable:
    """Read a labeled table of rational measurements from CSV.

    Layout detection mirrors read_csv: non-numeric cells in the first row
    or column mark them as labels; missing labels are synthesized from
    positions.
    """
    rows = _read_rows(path)
    if labeled is None:
        has_header = not all(_is_fraction(c) for c in rows[0])
        body = rows[1:] if has_header else rows
        if not body:
            raise ValueError(f"{path}: no data rows")
        has_labels = not all(_is_fraction(r[0]) for r in body)
    else:
        has_header = has_labels = labeled
        body = rows[1:] if has_header else rows
        if not body:
            raise ValueError(f"{path}: no data rows")

    col_labels = (rows[0][1:] if has_labels else rows[0]) if has_header else None
    row_labels = []
    values = []
    for r, row in enumerate(body):
        cells = row[1:] if has_labels else row
        row_labels.append(row[0] if has_labels else str(r))
        try:
            values.append(tuple(_parse_fraction(c) for c in cells))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"{path}: bad number in row {r + 1}: {exc}") from exc
    if col_labels is None:
        col_labels = [str(c) for c in range(len(values[0]))] if values else []
    return RawTable(tuple(row_labels), tuple(col_labels), tuple(values))


def read_ranges_csv(path) -> ColumnRange:
    """Read per-column low and high bounds: a two-row table, lows first."""
    table = read_raw_csv(path)
    if len(table.values) != 2:
        raise ValueError(f"{path}: expected exactly two rows (lows, highs), got {len(table.values)}")
    return ColumnRange(table.values[0], table.values[1])


# ----------------------------------------------------------------------
# transaction (itemset) files
# ----------------------------------------------------------------------


def read_fimi(path, num_items: int | None = None, *,
              scale: Scale | None = None) -> GradedMatrix:
    """Read a transaction file onto the two-grade chain.

    Each line lists the item ids of one transaction, whitespace separated;
    an empty line is an empty transaction.  With `num_items` given, ids
    index columns directly and must stay below it.  Without it, the
    distinct ids that occur are mapped onto columns in sorted order, so
    datasets whose ids start at 1 do not drag along an unused column.
    """
    if scale is None:
        scale = Scale.boolean()
    elif scale.levels != 2:
        raise ValueError(f"transaction data is Boolean, got a {scale.levels}-level scale")
    if num_items is not None and num_items < 1:
        raise ValueError(f"num_items must be positive, got {num_items}")
    transactions: list[list[int]] = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            items = []
            for token in line.split():
                try:
                    item = int(token)
                except ValueError:
                    raise ValueError(f"{path}: bad item id {token!r} on line {lineno}") from None
                if item < 0:
                    raise ValueError(f"{path}: negative item id {item} on line {lineno}")
                if num_items is not None and item >= num_items:
                    raise ValueError(
                        f"{path}: item id {item} on line {lineno} exceeds num_items={num_items}"
                    )
                items.append(item)
            transactions.append(items)
    if not transactions:
        raise ValueError(f"{path}: empty file")

    if num_items is None:
        distinct = sorted({i for t in transactions for i in t})
        if not distinct:
            raise ValueError(f"{path}: no items in any transaction")
        column = {item: c for c, item in enumerate(distinct)}
        width = len(distinct)
    else:
        column = None
        width = num_items

    grid = np.zeros((len(transactions), width), dtype=LEVEL_DTYPE)
    for r, items in enumerate(transactions):
        for item in items:
            grid[r, item if column is None else column[item]] = 1
    return GradedMatrix(scale, grid)


# ----------------------------------------------------------------------
# random instances
# ----------------------------------------------------------------------


def random_factorizable(n_rows: int, n_cols: int, k: int, scale: Scale,
                        grade_distribution=None, seed=0) -> GradedMatrix:
    """Compose two i.i.d. random factor matrices into an n x m product.

    The result decomposes into at most k concept factors by construction.
    `grade_distribution` weights the levels 0..n uniformly when omitted;
    `seed` may be an int, a seed sequence, or a numpy Generator.
    """
    if n_rows < 1 or n_cols < 1:
        raise ValueError(f"matrix dimensions must be positive, got {n_rows}x{n_cols}")
    if k < 1:
        raise ValueError(f"inner dimension must be positive, got {k}")
    if grade_distribution is None:
        p = np.full(scale.levels, 1.0 / scale.levels)
    else:
        p = np.asarray(grade_distribution, dtype=float)
        if p.shape != (scale.levels,):
            raise ValueError(
                f"distribution needs one weight per grade ({scale.levels}), got shape {p.shape}"
            )
        if (p < 0).any() or not math.isclose(p.sum(), 1.0, abs_tol=1e-9):
            raise ValueError("distribution weights must be nonnegative and sum to 1")
        p = p / p.sum()
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    levels = np.arange(scale.levels)
    left = GradedMatrix(scale, rng.choice(levels, size=(n_rows, k), p=p))
    right = GradedMatrix(scale, rng.choice(levels, size=(k, n_cols), p=p))
    return compose(left, right)
