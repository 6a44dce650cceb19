"""Arc model of the 2n-gon.

Vertices are ``0 .. 2n-1`` counterclockwise.  The indecomposable objects are
the 180 degree rotation orbits of non-diameter arcs (``PairArc``) and the
coloured diameters (``Diameter``).  Every object gets a fixed index inside its
``PolygonContext`` and sets of objects are stored as integer bit masks, so an
``ArcSet`` is rotation invariant by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Union

import numpy as np

GREEN = "green"
RED = "red"
COLORS = (GREEN, RED)


class GeometryError(ValueError):
    pass


class NeighbourOrEqual(GeometryError):
    pass


class MissingColor(GeometryError):
    pass


class SpuriousColor(GeometryError):
    pass


@dataclass(frozen=True, order=True)
class PairArc:
    """Orbit {{i, j}, {i+n, j+n}}, stored by its lexicographically least member."""

    i: int
    j: int

    def __str__(self) -> str:
        return f"P({self.i},{self.j})"


@dataclass(frozen=True, order=True)
class Diameter:
    i: int
    color: str

    def __str__(self) -> str:
        return f"D({self.i},{self.color[0]})"


ArcObject = Union[PairArc, Diameter]


def flip(color: str) -> str:
    return RED if color == GREEN else GREEN


def interleaved(a: int, b: int, c: int, d: int, size: int) -> bool:
    """True iff chords {a,b} and {c,d} of a ``size``-gon cross in the interior."""
    if len({a % size, b % size, c % size, d % size}) < 4:
        return False
    span = (b - a) % size
    return (0 < (c - a) % size < span) != (0 < (d - a) % size < span)


class PolygonContext:
    """Canonical objects of the 2n-gon, their index order and the crossing table.

    Index order: pair orbits in lexicographic order of their representatives,
    then green diameters ``0..n-1``, then red diameters ``0..n-1``.
    """

    def __init__(self, n: int):
        if n < 1:
            raise ValueError(f"n must be positive, got {n}")
        self.n = n
        self.size = 2 * n
        pairs = sorted({_canonical_pair(n, a, b)
                        for a in range(2 * n) for b in range(a + 2, 2 * n)
                        if (b - a) % (2 * n) not in (1, n, 2 * n - 1)})
        objects: list[ArcObject] = [PairArc(a, b) for a, b in pairs]
        objects += [Diameter(i, GREEN) for i in range(n)]
        objects += [Diameter(i, RED) for i in range(n)]
        self.objects: tuple[ArcObject, ...] = tuple(objects)
        self.index = {obj: k for k, obj in enumerate(self.objects)}
        self.num_objects = len(self.objects)
        self.full = (1 << self.num_objects) - 1
        self.num_pairs = len(pairs)

        m = self.num_objects
        table = np.zeros((m, m), dtype=bool)
        for p in range(m):
            for q in range(p + 1, m):
                table[p, q] = table[q, p] = _crosses(n, self.objects[p], self.objects[q])
        table.flags.writeable = False
        self.crossing = table
        self.cross_mask = tuple(
            sum(1 << int(q) for q in np.flatnonzero(table[p])) for p in range(m))

    def __repr__(self) -> str:
        return f"PolygonContext(n={self.n})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PolygonContext) and other.n == self.n

    def __hash__(self) -> int:
        return hash(("PolygonContext", self.n))

    def members(self, obj: ArcObject) -> list[tuple[int, int]]:
        """Geometric arcs (vertex pairs) making up ``obj``."""
        if isinstance(obj, Diameter):
            return [(obj.i, obj.i + self.n)]
        n2 = self.size
        return [(obj.i, obj.j), ((obj.i + self.n) % n2, (obj.j + self.n) % n2)]

    def arcset(self, objects: Iterable[ArcObject] = ()) -> "ArcSet":
        bits = 0
        for obj in objects:
            bits |= 1 << self.index[obj]
        return ArcSet(self.n, bits)

    def objects_of(self, X: "ArcSet") -> list[ArcObject]:
        return [self.objects[k] for k in X.indices()]

    def everything(self) -> "ArcSet":
        return ArcSet(self.n, self.full)

    def empty(self) -> "ArcSet":
        return ArcSet(self.n, 0)


@lru_cache(maxsize=None)
def context(n: int) -> PolygonContext:
    """Shared, immutable context for the 2n-gon."""
    return PolygonContext(n)


@dataclass(frozen=True)
class ArcSet:
    """A set of canonical objects of the 2n-gon as a bit vector."""

    n: int
    bits: int

    def __contains__(self, index: int) -> bool:
        return bool(self.bits >> index & 1)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices())

    def indices(self) -> list[int]:
        out = []
        bits = self.bits
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1)
            bits ^= low
        return out

    def __or__(self, other: "ArcSet") -> "ArcSet":
        return ArcSet(self.n, self.bits | other.bits)

    def __and__(self, other: "ArcSet") -> "ArcSet":
        return ArcSet(self.n, self.bits & other.bits)

    def __sub__(self, other: "ArcSet") -> "ArcSet":
        return ArcSet(self.n, self.bits & ~other.bits)

    def issubset(self, other: "ArcSet") -> bool:
        return self.bits & ~other.bits == 0


def _canonical_pair(n: int, a: int, b: int) -> tuple[int, int]:
    n2 = 2 * n
    first = tuple(sorted((a % n2, b % n2)))
    second = tuple(sorted(((a + n) % n2, (b + n) % n2)))
    return min(first, second)


def _crosses(n: int, a: ArcObject, b: ArcObject) -> bool:
    if isinstance(a, Diameter) and isinstance(b, Diameter):
        return a.color != b.color and a.i != b.i
    n2 = 2 * n
    arcs_a = [(a.i, a.i + n)] if isinstance(a, Diameter) else \
        [(a.i, a.j), (a.i + n, a.j + n)]
    arcs_b = [(b.i, b.i + n)] if isinstance(b, Diameter) else \
        [(b.i, b.j), (b.i + n, b.j + n)]
    return any(interleaved(p, q, r, s, n2) for p, q in arcs_a for r, s in arcs_b)


def make_arc(ctx: PolygonContext, i: int, j: int, color: Optional[str] = None) -> ArcObject:
    """Canonical object for the arc {i, j} (a coloured diameter if opposite)."""
    n, n2 = ctx.n, ctx.size
    diff = (j - i) % n2
    # opposite first: in the 2-gon the diameter joins neighbours
    if diff == n:
        if color is None:
            raise MissingColor(f"diameter {{{i},{j}}} needs a colour")
        if color not in COLORS:
            raise GeometryError(f"unknown colour {color!r}")
        return Diameter(i % n, color)
    if diff in (0, 1, n2 - 1):
        raise NeighbourOrEqual(f"{{{i},{j}}} is not an arc of the {n2}-gon")
    if color is not None:
        raise SpuriousColor(f"{{{i},{j}}} is not a diameter, colour {color!r} given")
    return PairArc(*_canonical_pair(n, i, j))


def all_arcs(ctx: PolygonContext) -> tuple[ArcObject, ...]:
    return ctx.objects


def crosses(ctx: PolygonContext, a: ArcObject, b: ArcObject) -> bool:
    return bool(ctx.crossing[ctx.index[a], ctx.index[b]])


def nc(ctx: PolygonContext, X: ArcSet) -> ArcSet:
    """All objects crossing no object of X."""
    return ArcSet(ctx.n, nc_bits(ctx, X.bits))


def nc_bits(ctx: PolygonContext, bits: int) -> int:
    crossed = 0
    cross_mask = ctx.cross_mask
    while bits:
        low = bits & -bits
        crossed |= cross_mask[low.bit_length() - 1]
        bits ^= low
    return ctx.full & ~crossed


def rotate180(ctx: PolygonContext, a: ArcObject) -> ArcObject:
    """180 degree rotation; every canonical object is fixed."""
    if isinstance(a, Diameter):
        return a
    n = ctx.n
    return make_arc(ctx, a.i + n, a.j + n)


def ar_shift(ctx: PolygonContext, a: ArcObject, k: int) -> ArcObject:
    """Apply the inverse AR translation ``k`` times (rotation by ``k`` vertices).

    Diameters change colour on odd shifts, following the alternating
    green/red assignment to the exceptional vertices.
    """
    if isinstance(a, Diameter):
        color = flip(a.color) if k % 2 else a.color
        return Diameter((a.i + k) % ctx.n, color)
    return make_arc(ctx, a.i + k, a.j + k)
