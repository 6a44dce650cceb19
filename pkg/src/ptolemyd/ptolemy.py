"""Ptolemy diagrams of types D and A, and the torsion test via nc.

``pt_violations`` reads the three forcing conditions off crossing pairs
literally.  The same forcing data is also compiled into a per-context rule
table of bit masks; the fast recognizer and the closure use that table.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .geometry import (
    COLORS,
    ArcObject,
    ArcSet,
    Diameter,
    PairArc,
    PolygonContext,
    context,
    interleaved,
    make_arc,
    nc_bits,
)

PT1, PT2, PT3 = "Pt1", "Pt2", "Pt3"


@dataclass(frozen=True)
class Violation:
    condition: str
    witnesses: tuple[ArcObject, ArcObject]
    missing: tuple[ArcObject, ...]


def _arc_or_none(ctx: PolygonContext, u: int, v: int) -> list[ArcObject]:
    """Objects for the vertex pair {u, v}: nothing for edges, both colours for diameters."""
    diff = (v - u) % ctx.size
    if diff in (0, 1, ctx.size - 1):
        return []
    if diff == ctx.n:
        return [Diameter(u % ctx.n, c) for c in COLORS]
    return [make_arc(ctx, u, v)]


def forced_objects(ctx: PolygonContext, alpha: ArcObject, beta: ArcObject,
                   pt3_colour: bool = True) -> tuple[str, list[ArcObject]]:
    """Condition name and the objects forced by the crossing pair (alpha, beta).

    ``pt3_colour=False`` drops the coloured-diameter clause of Pt3; it exists
    only to build a deliberately broken recognizer for negative controls.
    """
    n = ctx.n
    forced: list[ArcObject] = []
    if isinstance(alpha, PairArc) and isinstance(beta, Diameter):
        alpha, beta = beta, alpha

    if isinstance(alpha, PairArc):
        condition = PT1
        for i, j in ctx.members(alpha):
            for k, l in ctx.members(beta):
                if not interleaved(i, j, k, l, ctx.size):
                    continue
                for u, v in ((i, k), (i, l), (j, k), (j, l)):
                    forced += _arc_or_none(ctx, u, v)
    elif isinstance(beta, Diameter):
        condition = PT2
        i, k = alpha.i, beta.i
        for u, v in ((i, k), (i, k + n), (i + n, k), (i + n, k + n)):
            forced += _arc_or_none(ctx, u, v)
    else:
        condition = PT3
        i, j = alpha.i, alpha.i + n
        for k, l in ctx.members(beta):
            if not interleaved(i, j, k, l, ctx.size):
                continue
            for u, v in ((i, k), (i, l), (j, k), (j, l)):
                if not interleaved(u, v, k + n, l + n, ctx.size):
                    forced += _arc_or_none(ctx, u, v)
            if pt3_colour:
                forced += [Diameter(k % n, alpha.color), Diameter(l % n, alpha.color)]
    return condition, list(dict.fromkeys(forced))


def pt_violations(ctx: PolygonContext, X: ArcSet) -> list[Violation]:
    """Every crossing pair of X whose forced objects are not all in X."""
    out = []
    present = set(X.indices())
    for p, q in combinations(sorted(present), 2):
        if not ctx.crossing[p, q]:
            continue
        alpha, beta = ctx.objects[p], ctx.objects[q]
        condition, forced = forced_objects(ctx, alpha, beta)
        missing = tuple(f for f in forced if ctx.index[f] not in present)
        if missing:
            out.append(Violation(condition, (alpha, beta), missing))
    return out


@lru_cache(maxsize=None)
def rule_table(n: int, pt3_colour: bool = True) -> tuple[tuple[tuple[int, int], ...], ...]:
    """For each object a: the pairs (b, forced mask) over all objects b crossing a."""
    ctx = context(n)
    table = []
    for p, alpha in enumerate(ctx.objects):
        rules = []
        for q, beta in enumerate(ctx.objects):
            if not ctx.crossing[p, q]:
                continue
            _, forced = forced_objects(ctx, alpha, beta, pt3_colour)
            mask = 0
            for f in forced:
                mask |= 1 << ctx.index[f]
            rules.append((q, mask))
        table.append(tuple(rules))
    return tuple(table)


def is_ptolemy_bits(ctx: PolygonContext, bits: int, rules=None) -> bool:
    if ctx.n == 1:
        return bits == ctx.full
    if rules is None:
        rules = rule_table(ctx.n)
    rest = bits
    while rest:
        low = rest & -rest
        rest ^= low
        for q, mask in rules[low.bit_length() - 1]:
            if bits >> q & 1 and mask & ~bits:
                return False
    return True


def is_ptolemy_d(ctx: PolygonContext, X: ArcSet) -> bool:
    """Ptolemy diagram of type D_n; for n = 1 only the pair of diameters qualifies."""
    return is_ptolemy_bits(ctx, X.bits)


def closure_bits(ctx: PolygonContext, bits: int, start: Iterable[int] | None = None,
                 rules=None) -> int:
    """Least Ptolemy superset of ``bits``.

    ``start`` limits the initial work list; pass the newly added indices when
    ``bits`` is a Ptolemy diagram plus a few extra objects.
    """
    if rules is None:
        rules = rule_table(ctx.n)
    X = bits
    if start is None:
        queue = ArcSet(ctx.n, bits).indices()
    else:
        queue = list(start)
    while queue:
        p = queue.pop()
        for q, mask in rules[p]:
            if X >> q & 1:
                new = mask & ~X
                if new:
                    X |= new
                    while new:
                        low = new & -new
                        queue.append(low.bit_length() - 1)
                        new ^= low
    return X


def ptolemy_closure(ctx: PolygonContext, X: ArcSet) -> ArcSet:
    if ctx.n < 2:
        raise ValueError("closure is defined for n >= 2")
    return ArcSet(ctx.n, closure_bits(ctx, X.bits))


def is_torsion_arcset(ctx: PolygonContext, X: ArcSet) -> bool:
    """X is the torsion half of a torsion pair iff X = nc(nc(X))."""
    return nc_bits(ctx, nc_bits(ctx, X.bits)) == X.bits


# -- type A -------------------------------------------------------------------


@dataclass(frozen=True)
class TypeADiagram:
    """Arcs of an m-gon (vertices 0..m-1); edge e joins e and e+1 mod m.

    The base edge is carried for gluing only; it defaults to edge m-1, the
    edge {m-1, 0}.
    """

    m: int
    arcs: frozenset = field(default_factory=frozenset)
    base_edge: int | None = None

    def __post_init__(self):
        if self.m < 2:
            raise ValueError(f"type A polygon needs m >= 2, got {self.m}")
        norm = frozenset(tuple(sorted(a)) for a in self.arcs)
        for p, q in norm:
            if not (0 <= p < q < self.m) or (q - p) in (1, self.m - 1):
                raise ValueError(f"{(p, q)} is not an arc of the {self.m}-gon")
        object.__setattr__(self, "arcs", norm)
        if self.base_edge is None:
            object.__setattr__(self, "base_edge", self.m - 1)

    @property
    def degenerate(self) -> bool:
        return self.m == 2


def type_a_arcs(m: int) -> list[tuple[int, int]]:
    return [(p, q) for p in range(m) for q in range(p + 2, m) if q - p != m - 1]


def type_a_forced(m: int, a: tuple[int, int], b: tuple[int, int]) -> list[tuple[int, int]]:
    (i, j), (k, l) = a, b
    out = []
    for u, v in ((i, k), (i, l), (j, k), (j, l)):
        u, v = sorted((u, v))
        if v - u not in (0, 1, m - 1):
            out.append((u, v))
    return out


def is_ptolemy_a(d: TypeADiagram) -> bool:
    arcs = sorted(d.arcs)
    for a, b in combinations(arcs, 2):
        if interleaved(*a, *b, d.m) and not all(f in d.arcs for f in type_a_forced(d.m, a, b)):
            return False
    return True
