"""AR-quiver coordinates of the cluster category of type D_n and a Hom oracle.

Non-exceptional vertices are ``(i, i+d)`` with ``2 <= d <= n-1``; the
exceptional vertices are ``(i, i+n)^{+/-}``.  Coordinates are reduced to
``0 <= i < n``; for odd n every reduction by n swaps the two exceptional
vertices.

Two Hom oracles are provided.  ``hom_nonzero`` goes through the arc model
(shift the source back by one and test for crossings).  ``hom_nonzero_hammock``
tests membership in the hexagonal region of the universal cover directly and
is used to cross-check the first.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Union

from .geometry import (
    GREEN,
    RED,
    ArcObject,
    ArcSet,
    Diameter,
    ar_shift,
    context,
    crosses,
    make_arc,
)


class UnsupportedBase(ValueError):
    pass


@dataclass(frozen=True, order=True)
class NonExc:
    i: int
    d: int

    def __str__(self) -> str:
        return f"({self.i},{self.i + self.d})"


@dataclass(frozen=True, order=True)
class Exc:
    i: int
    sign: int

    def __str__(self) -> str:
        return f"({self.i},{self.i}+n)^{'+' if self.sign > 0 else '-'}"


IndCoord = Union[NonExc, Exc]


def canonical(n: int, x: IndCoord) -> IndCoord:
    q, r = divmod(x.i, n)
    if isinstance(x, NonExc):
        return NonExc(r, x.d)
    sign = -x.sign if (n % 2 and q % 2) else x.sign
    return Exc(r, sign)


class CategoryContext:
    def __init__(self, n: int):
        if n < 4:
            raise ValueError(f"the cluster category D_n needs n >= 4, got {n}")
        self.n = n
        self.geometry = context(n)
        coords: list[IndCoord] = [NonExc(i, d) for i in range(n) for d in range(2, n)]
        coords += [Exc(i, +1) for i in range(n)] + [Exc(i, -1) for i in range(n)]
        self.coords = tuple(coords)
        self.index = {x: k for k, x in enumerate(self.coords)}
        self.full = (1 << len(coords)) - 1
        self._arc = {x: _arc_of(self, x) for x in self.coords}
        self._coord = {a: x for x, a in self._arc.items()}
        if len(self._coord) != len(self.coords):
            raise AssertionError("coordinate to arc map is not injective")
        self.hom_out = tuple(
            sum(1 << k for k, y in enumerate(self.coords) if hom_nonzero(self, x, y))
            for x in self.coords)
        self.hom_in = tuple(
            sum(1 << k for k, x in enumerate(self.coords) if self.hom_out[k] >> j & 1)
            for j, _ in enumerate(self.coords))

    def __repr__(self) -> str:
        return f"CategoryContext(n={self.n})"

    def bits(self, X: Iterable[IndCoord]) -> int:
        out = 0
        for x in X:
            out |= 1 << self.index[canonical(self.n, x)]
        return out


@lru_cache(maxsize=None)
def category(n: int) -> CategoryContext:
    return CategoryContext(n)


def _arc_of(cctx: CategoryContext, x: IndCoord) -> ArcObject:
    n = cctx.n
    if isinstance(x, NonExc):
        return make_arc(cctx.geometry, x.i, x.i + x.d)
    # (0,n)^+ is green, then the colours alternate along the exceptional row
    green = (x.sign > 0) != (x.i % 2 == 1)
    return Diameter(x.i % n, GREEN if green else RED)


def to_arc(cctx: CategoryContext, x: IndCoord) -> ArcObject:
    return cctx._arc[canonical(cctx.n, x)]


def from_arc(cctx: CategoryContext, a: ArcObject) -> IndCoord:
    return cctx._coord[a]


def coords_to_arcset(cctx: CategoryContext, X: Iterable[IndCoord]) -> ArcSet:
    return cctx.geometry.arcset(to_arc(cctx, x) for x in X)


def tau_inv(cctx: CategoryContext, x: IndCoord) -> IndCoord:
    if isinstance(x, NonExc):
        return canonical(cctx.n, NonExc(x.i + 1, x.d))
    return canonical(cctx.n, Exc(x.i + 1, x.sign))


def sigma(cctx: CategoryContext, x: IndCoord) -> IndCoord:
    n = cctx.n
    if isinstance(x, NonExc):
        return canonical(n, NonExc(x.i + n - 1, x.d))
    sign = -x.sign if n % 2 else x.sign
    return canonical(n, Exc(x.i + n - 1, sign))


def hom_nonzero(cctx: CategoryContext, x: IndCoord, y: IndCoord) -> bool:
    """Hom(x, y) != 0 iff the arc of y crosses the arc of tau(x)."""
    g = cctx.geometry
    shifted = ar_shift(g, to_arc(cctx, x), -1)
    return crosses(g, to_arc(cctx, y), shifted)


def _in_hexagon(i: int, j: int, n: int, k: int, l: int) -> bool:
    # the upper boundary from (i, i+n) to (j-2, j+n-2) runs along the exceptional row
    return (i <= k <= j - 2 and j <= l <= k + n) or \
        (j - 2 <= k <= i + n - 2 and i + n <= l <= j + n - 2)


def hom_nonzero_hammock(cctx: CategoryContext, x: IndCoord, y: IndCoord) -> bool:
    """Membership of y in the hammock H^+(x), read in the universal cover."""
    n = cctx.n
    x, y = canonical(n, x), canonical(n, y)
    if isinstance(x, Exc):
        raise UnsupportedBase("the hexagon oracle needs a non-exceptional base")
    i, j = x.i, x.i + x.d
    width = n if isinstance(y, Exc) else y.d
    # exceptional y: both signs lie in the region when x is non-exceptional
    return any(_in_hexagon(i, j, n, y.i + t * n, y.i + width + t * n) for t in range(-1, 3))


def ext1_nonzero(cctx: CategoryContext, x: IndCoord, y: IndCoord) -> bool:
    g = cctx.geometry
    return crosses(g, to_arc(cctx, x), to_arc(cctx, y))


def right_perp_bits(cctx: CategoryContext, bits: int) -> int:
    hit = 0
    while bits:
        low = bits & -bits
        hit |= cctx.hom_out[low.bit_length() - 1]
        bits ^= low
    return cctx.full & ~hit


def left_perp_bits(cctx: CategoryContext, bits: int) -> int:
    hit = 0
    while bits:
        low = bits & -bits
        hit |= cctx.hom_in[low.bit_length() - 1]
        bits ^= low
    return cctx.full & ~hit


def is_torsion_bits(cctx: CategoryContext, bits: int) -> bool:
    return left_perp_bits(cctx, right_perp_bits(cctx, bits)) == bits


def is_torsion_categorical(cctx: CategoryContext, X: Iterable[IndCoord]) -> bool:
    """X = left-perp(right-perp(X)) with perpendiculars taken for Hom."""
    return is_torsion_bits(cctx, cctx.bits(X))

