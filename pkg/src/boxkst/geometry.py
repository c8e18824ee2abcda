"""Exact primitives for axis-parallel boxes and the coordinatewise dominance order.

Coordinates are kept exact: ``int`` or :class:`fractions.Fraction`.  Floats are
accepted on input but converted through their decimal string, so ``0.5`` becomes
``Fraction(1, 2)`` and ``0.1`` becomes ``Fraction(1, 10)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Tuple, Union

import numpy as np

Number = Union[int, Fraction]
Point = Tuple[Number, ...]


class DimensionMismatch(ValueError):
    pass


def exact(x) -> Number:
    """Convert ``x`` to an exact number (``int`` when integral)."""
    if isinstance(x, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(x, int):
        return x
    if isinstance(x, Rational):
        q = Fraction(x)
    elif isinstance(x, float):
        q = Fraction(repr(x))
    elif isinstance(x, str):
        q = Fraction(x.strip())
    else:
        q = Fraction(x)
    return q.numerator if q.denominator == 1 else q


def point(coords: Iterable) -> Point:
    p = tuple(exact(c) for c in coords)
    if not p:
        raise ValueError("a point needs at least one coordinate")
    return p


def _check_dims(x: Sequence, y: Sequence) -> None:
    if len(x) != len(y):
        raise DimensionMismatch(f"dimension {len(x)} vs {len(y)}")


@dataclass(frozen=True)
class Box:
    """Closed axis-parallel box ``[lo_1, hi_1] x ... x [lo_d, hi_d]``."""

    lo: Point
    hi: Point

    def __post_init__(self):
        lo, hi = point(self.lo), point(self.hi)
        _check_dims(lo, hi)
        if any(a > b for a, b in zip(lo, hi)):
            raise ValueError(f"lo {lo} exceeds hi {hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def dim(self) -> int:
        return len(self.lo)

    def contains(self, p: Sequence) -> bool:
        _check_dims(self.lo, p)
        return all(a <= c <= b for a, c, b in zip(self.lo, p, self.hi))

    def contains_box(self, other: "Box") -> bool:
        _check_dims(self.lo, other.lo)
        return all(
            a <= c and d <= b
            for a, b, c, d in zip(self.lo, self.hi, other.lo, other.hi)
        )

    def interior_contains(self, p: Sequence) -> bool:
        _check_dims(self.lo, p)
        return all(a < c < b for a, c, b in zip(self.lo, p, self.hi))

    def to_json(self) -> dict:
        return {"lo": [to_json_number(c) for c in self.lo],
                "hi": [to_json_number(c) for c in self.hi]}

    @classmethod
    def from_json(cls, obj: dict) -> "Box":
        return cls(point(parse_json_number(c) for c in obj["lo"]),
                   point(parse_json_number(c) for c in obj["hi"]))


class Dominance(enum.Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def spanned_box(x: Sequence, y: Sequence) -> Box:
    """The smallest closed box containing both ``x`` and ``y``."""
    _check_dims(x, y)
    return Box(tuple(min(a, b) for a, b in zip(x, y)),
               tuple(max(a, b) for a, b in zip(x, y)))


def boxes_intersect(a: Box, b: Box) -> bool:
    _check_dims(a.lo, b.lo)
    return all(
        alo <= bhi and blo <= ahi
        for alo, ahi, blo, bhi in zip(a.lo, a.hi, b.lo, b.hi)
    )


def common_intersection(boxes: Sequence[Box]) -> Box | None:
    """Intersection of all ``boxes`` (max of lows against min of highs), or None."""
    if not boxes:
        raise ValueError("empty family")
    d = boxes[0].dim
    lo = tuple(max(b.lo[i] for b in boxes) for i in range(d))
    hi = tuple(min(b.hi[i] for b in boxes) for i in range(d))
    if any(a > b for a, b in zip(lo, hi)):
        return None
    return Box(lo, hi)


def dominance(x: Sequence, y: Sequence) -> Dominance:
    _check_dims(x, y)
    if all(a < b for a, b in zip(x, y)):
        return Dominance.LESS
    if all(a > b for a, b in zip(x, y)):
        return Dominance.GREATER
    if all(a == b for a, b in zip(x, y)):
        return Dominance.EQUAL
    return Dominance.INCOMPARABLE


def strictly_below(x: Sequence, y: Sequence) -> bool:
    return dominance(x, y) is Dominance.LESS


def in_general_position(points: Sequence[Sequence]) -> bool:
    """True when no two points share a coordinate on any axis."""
    if not points:
        return True
    d = len(points[0])
    return all(len({p[i] for p in points}) == len(points) for i in range(d))


def min_gap(values: Iterable[Number]) -> Number | None:
    """Smallest positive difference between distinct values, or None."""
    vs = sorted(set(values))
    if len(vs) < 2:
        return None
    return min(b - a for a, b in zip(vs, vs[1:]))


def rank_columns(columns: Sequence[Sequence[Number]]) -> np.ndarray:
    """Replace each value by its rank among the *union* of all given columns.

    Equal values get equal ranks, so every ``<``/``<=`` comparison between any
    two entries is preserved exactly.  Returns an ``int64`` array with one row
    per column.
    """
    flat = sorted({v for col in columns for v in col})
    index = {v: i for i, v in enumerate(flat)}
    return np.array([[index[v] for v in col] for col in columns], dtype=np.int64)


def to_json_number(x: Number):
    x = exact(x)
    if isinstance(x, int):
        return x
    return f"{x.numerator}/{x.denominator}"


def parse_json_number(x) -> Number:
    return exact(x)
