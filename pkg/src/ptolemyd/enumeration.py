"""Counting and structural decomposition of Ptolemy diagrams.

Two independent counting engines are provided for type D: an exhaustive
sweep over all bit patterns testing ``X == nc(nc(X))`` (vectorised with
numpy lookup tables), and a Close-by-One search over the closed sets of the
Ptolemy forcing rules.  Type A counts, the word model for the second kind of
central region, central regions themselves and the decompose/recompose pair
live here as well.
"""

from __future__ import annotations

import os
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .geometry import (
    COLORS,
    GREEN,
    RED,
    ArcSet,
    Diameter,
    PairArc,
    PolygonContext,
    context,
    interleaved,
    make_arc,
    nc_bits,
)
from .ptolemy import (
    TypeADiagram,
    is_ptolemy_bits,
    rule_table,
    type_a_arcs,
    type_a_forced,
)

EXHAUSTIVE_MAX_N = 5
PRUNED_MAX_N = 6
TYPE_A_EXHAUSTIVE_MAX_M = 9
TYPE_A_PRUNED_MAX_M = 12
WORDS_MAX_LEN = 14
CENTRAL_MAX_K = 8

KIND_I, KIND_II, KIND_III = "I", "II", "III"
KINDS = (KIND_I, KIND_II, KIND_III)


class BudgetExceeded(RuntimeError):
    pass


class NotPtolemy(ValueError):
    pass


class MalformedGluing(ValueError):
    pass


class AmbiguousCentralRegion(RuntimeError):
    pass


def default_workers() -> int:
    env = os.environ.get("PTD_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


# -- exhaustive sweep -------------------------------------------------------------


def _or_table(masks: Sequence[int]) -> np.ndarray:
    """t[s] = OR of masks[b] over the bits b of s."""
    t = np.zeros(1 << len(masks), dtype=np.int64)
    for b, m in enumerate(masks):
        t[1 << b: 2 << b] = t[:1 << b] | m
    return t


class _Sweep:
    """Split-table evaluation of nc on blocks of consecutive bit patterns."""

    def __init__(self, ctx: PolygonContext):
        total = ctx.num_objects
        self.low_bits = (total + 1) // 2
        self.high_count = 1 << (total - self.low_bits)
        self.low_mask = (1 << self.low_bits) - 1
        self.full = ctx.full
        masks = ctx.cross_mask
        self.cross_low = _or_table(masks[:self.low_bits])
        self.cross_high = _or_table(masks[self.low_bits:])
        self.low = np.arange(1 << self.low_bits, dtype=np.int64)

    def nc(self, X: np.ndarray) -> np.ndarray:
        crossed = self.cross_low[X & self.low_mask] | self.cross_high[X >> self.low_bits]
        return self.full & ~crossed

    def block(self, h0: int, h1: int) -> tuple[np.ndarray, np.ndarray]:
        """All patterns whose high part lies in [h0, h1), and their torsion flags."""
        highs = np.arange(h0, h1, dtype=np.int64)
        X = ((highs[:, None] << self.low_bits) | self.low[None, :]).ravel()
        crossed = (self.cross_low[None, :] | self.cross_high[highs][:, None]).ravel()
        Y = self.full & ~crossed
        return X, self.nc(Y) == X


def _blocks(sweep: _Sweep, target: int = 1 << 20) -> list[tuple[int, int]]:
    step = max(1, target >> sweep.low_bits)
    return [(h, min(h + step, sweep.high_count)) for h in range(0, sweep.high_count, step)]


def _check_exhaustive(n: int) -> None:
    if n < 1:
        raise ValueError("n must be positive")
    if n > EXHAUSTIVE_MAX_N:
        raise BudgetExceeded(
            f"exhaustive sweep over 2^{n * n} subsets exceeds the budget (n <= {EXHAUSTIVE_MAX_N})")


def torsion_sets_exhaustive(n: int, workers: int | None = None) -> list[int]:
    """Bit patterns X with X == nc(nc(X)), found by sweeping all 2^(n^2) subsets."""
    _check_exhaustive(n)
    sweep = _Sweep(context(n))

    def run(block):
        X, ok = sweep.block(*block)
        return X[ok]

    with ThreadPoolExecutor(max_workers=workers or default_workers()) as pool:
        parts = list(pool.map(run, _blocks(sweep)))
    return sorted(int(x) for part in parts for x in part)


def count_torsion_exhaustive(n: int, workers: int | None = None) -> int:
    _check_exhaustive(n)
    sweep = _Sweep(context(n))

    def run(block):
        return int(np.count_nonzero(sweep.block(*block)[1]))

    with ThreadPoolExecutor(max_workers=workers or default_workers()) as pool:
        return sum(pool.map(run, _blocks(sweep)))


def _pair_rules(rules) -> list[tuple[int, int, int]]:
    """Crossing pairs p < q with the union of what either orientation forces."""
    out = {}
    for p, row in enumerate(rules):
        for q, mask in row:
            key = (min(p, q), max(p, q))
            out[key] = out.get(key, 0) | mask
    return [(p, q, m) for (p, q), m in sorted(out.items())]


def _horn_ok(X: np.ndarray, pairs) -> np.ndarray:
    ok = np.ones(X.shape, dtype=bool)
    for p, q, mask in pairs:
        both = ((X >> p) & (X >> q) & 1).astype(bool)
        ok &= ~(both & ((X & mask) != mask))
    return ok


def exhaustive_verdicts(n: int, pt3_colour: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """(torsion, ptolemy) flags for every subset at small n, indexed by bit pattern."""
    if n > 4:
        raise BudgetExceeded("per-subset verdict arrays are limited to n <= 4")
    ctx = context(n)
    sweep = _Sweep(ctx)
    X, torsion = sweep.block(0, sweep.high_count)
    order = np.argsort(X)
    X, torsion = X[order], torsion[order]
    if n == 1:
        ptolemy = X == ctx.full
    else:
        ptolemy = _horn_ok(X, _pair_rules(rule_table(n, pt3_colour)))
    return torsion, ptolemy


# -- Close-by-One over the forcing rules ------------------------------------------


def _close(bits: int, start: int, rules) -> int:
    X = bits
    queue = [start]
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


def closed_sets(num_atoms: int, rules) -> Iterator[int]:
    """Every set closed under pairwise Horn rules, each produced exactly once.

    ``rules[p]`` lists ``(q, mask)``: if p and q are present, so is mask.
    The empty set is closed because every rule needs two premises.
    """
    stack = [(0, 0)]
    while stack:
        Y, start = stack.pop()
        yield Y
        for i in range(num_atoms - 1, start - 1, -1):
            if Y >> i & 1:
                continue
            Z = _close(Y | (1 << i), i, rules)
            # canonicity: nothing new below i
            if (Z & ~Y) & ((1 << i) - 1) == 0:
                stack.append((Z, i + 1))


def iter_ptolemy_d(n: int) -> Iterator[int]:
    """Ptolemy diagrams of type D_n as bit patterns (pruned search)."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > PRUNED_MAX_N:
        raise BudgetExceeded(f"pruned search is limited to n <= {PRUNED_MAX_N}")
    ctx = context(n)
    if n == 1:
        yield ctx.full
        return
    yield from closed_sets(ctx.num_objects, rule_table(n))


def count_type_d(n: int, strategy: str = "exhaustive", workers: int | None = None) -> int:
    if strategy == "exhaustive":
        return count_torsion_exhaustive(n, workers)
    if strategy == "pruned":
        return sum(1 for _ in iter_ptolemy_d(n))
    raise ValueError(f"unknown strategy {strategy!r}")


# -- type A -----------------------------------------------------------------------


@lru_cache(maxsize=None)
def _type_a_rules(m: int):
    arcs = type_a_arcs(m)
    index = {a: k for k, a in enumerate(arcs)}
    rules = []
    for a in arcs:
        row = []
        for b in arcs:
            if interleaved(*a, *b, m):
                mask = 0
                for f in type_a_forced(m, a, b):
                    mask |= 1 << index[f]
                row.append((index[b], mask))
        rules.append(tuple(row))
    return arcs, tuple(rules)


def iter_ptolemy_a(m: int) -> Iterator[TypeADiagram]:
    if m < 2:
        raise ValueError("m must be at least 2")
    if m > TYPE_A_PRUNED_MAX_M:
        raise BudgetExceeded(f"type A search is limited to m <= {TYPE_A_PRUNED_MAX_M}")
    arcs, rules = _type_a_rules(m)
    for bits in closed_sets(len(arcs), rules):
        yield TypeADiagram(m, frozenset(a for k, a in enumerate(arcs) if bits >> k & 1))


def count_type_a(m: int, strategy: str = "exhaustive") -> int:
    """Ptolemy diagrams of type A on the m-gon."""
    if m < 2:
        raise ValueError("m must be at least 2")
    if strategy == "pruned":
        return sum(1 for _ in iter_ptolemy_a(m))
    if strategy != "exhaustive":
        raise ValueError(f"unknown strategy {strategy!r}")
    if m > TYPE_A_EXHAUSTIVE_MAX_M:
        raise BudgetExceeded(f"exhaustive type A count is limited to m <= {TYPE_A_EXHAUSTIVE_MAX_M}")
    arcs, rules = _type_a_rules(m)
    pairs = _pair_rules(rules)
    total = 0
    chunk = 1 << 20
    for lo in range(0, 1 << len(arcs), chunk):
        X = np.arange(lo, min(lo + chunk, 1 << len(arcs)), dtype=np.int64)
        total += int(np.count_nonzero(_horn_ok(X, pairs)))
    return total


# -- words for the second kind ----------------------------------------------------

O, L, X_ = 0, 1, 2
LETTERS = "olx"


def _word_mask(length: int) -> np.ndarray:
    codes = np.arange(3 ** length, dtype=np.int64)
    digits = [(codes // 3 ** p) % 3 for p in range(length)]
    ok = sum((d == L).astype(np.int64) for d in digits) >= 2
    for p in range(length):
        a, b = digits[p], digits[(p + 1) % length]
        ok &= ~(((a == O) & (b == X_)) | ((a == X_) & (b == O)))
    return ok


def count_words_type_ii(length: int) -> int:
    """Cyclic words over {o, l, x} with no o next to x and at least two l."""
    if length < 0:
        raise ValueError("length must be non-negative")
    if length > WORDS_MAX_LEN:
        raise BudgetExceeded(f"word enumeration is limited to length <= {WORDS_MAX_LEN}")
    if length < 2:
        return 0
    return int(np.count_nonzero(_word_mask(length)))


def words_type_ii(length: int) -> list[str]:
    if length < 2:
        return []
    ok = _word_mask(length)
    out = []
    for code in np.flatnonzero(ok):
        code = int(code)
        out.append("".join(LETTERS[(code // 3 ** p) % 3] for p in range(length)))
    return out


# -- central regions by construction ----------------------------------------------


def _pair_bits(ctx: PolygonContext, vertices: Sequence[int]) -> int:
    bits = 0
    for a in vertices:
        for b in vertices:
            d = (b - a) % ctx.size
            if 2 <= d <= ctx.size - 2 and d != ctx.n:
                bits |= 1 << ctx.index[make_arc(ctx, a, b)]
    return bits


def word_region(K: int, word: str, color: str) -> int:
    """Central region of the second kind on the 2K-gon encoded by ``word``."""
    ctx = context(K)
    bits = 0
    for p, letter in enumerate(word):
        if letter in "lx":
            bits |= 1 << ctx.index[Diameter(p, color)]
    p = 0
    while p < K:
        if word[p] != "x" or word[p - 1] == "x":
            p += 1
            continue
        q = p
        while word[(q + 1) % K] == "x":
            q += 1
        bits |= _pair_bits(ctx, range(p - 1, q + 2))
        p = q + 1
    return bits


def _build_central(k: int, kind: str) -> list[int]:
    K = k + 1
    ctx = context(K)
    out: set[int] = set()
    if kind == KIND_I:
        out.add(ctx.full)
        if k >= 1:
            out.add(0)
    elif kind == KIND_II:
        if k >= 1:
            for word in words_type_ii(K):
                for color in COLORS:
                    out.add(word_region(K, word, color))
    elif kind == KIND_III:
        if k >= 1:
            for color in COLORS:
                for p in range(K):
                    single = 1 << ctx.index[Diameter(p, color)]
                    out.add(single)
                    out.add(nc_bits(ctx, single))
        if k == 1:
            for c in COLORS:
                other = RED if c == GREEN else GREEN
                out.add((1 << ctx.index[Diameter(0, c)]) | (1 << ctx.index[Diameter(1, other)]))
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return sorted(out)


def central_regions(k: int, kind: str) -> list[ArcSet]:
    """Central regions with 2k+2 bounding edges of the given kind, as diagrams of the (2k+2)-gon."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k > CENTRAL_MAX_K:
        raise BudgetExceeded(f"central region construction is limited to k <= {CENTRAL_MAX_K}")
    return [ArcSet(k + 1, b) for b in _build_central(k, kind)]


def count_central_regions(k: int, kind: str) -> int:
    return len(central_regions(k, kind))


# -- kinds ------------------------------------------------------------------------


def classify_bits(ctx: PolygonContext, bits: int) -> str:
    colours: dict[int, set[str]] = {}
    for obj in ctx.objects_of(ArcSet(ctx.n, bits)):
        if isinstance(obj, Diameter):
            colours.setdefault(obj.i, set()).add(obj.color)
    if all(len(c) == 2 for c in colours.values()):
        return KIND_I
    used = set().union(*colours.values())
    if len(colours) >= 2 and len(used) == 1:
        return KIND_II
    return KIND_III


def classify_kind(ctx: PolygonContext, X: ArcSet) -> str:
    """Kind I: all diameters paired; II: at least two, all one colour; III: the rest."""
    if not is_ptolemy_bits(ctx, X.bits):
        raise NotPtolemy("classification needs a Ptolemy diagram")
    return classify_bits(ctx, X.bits)


# -- decomposition ----------------------------------------------------------------


@dataclass(frozen=True)
class CentralRegion:
    n: int
    boundary: tuple[int, ...]
    arcs: ArcSet
    k: int
    kind: str

    @property
    def size(self) -> int:
        return 2 * self.k + 2


@dataclass(frozen=True)
class Decomposition:
    central: CentralRegion
    glued: tuple[TypeADiagram, ...]
    marked_edge: int


def _members(ctx: PolygonContext, bits: int) -> list[tuple[object, list[tuple[int, int]]]]:
    return [(obj, ctx.members(obj)) for obj in ctx.objects_of(ArcSet(ctx.n, bits))]


def _adjacency(ctx: PolygonContext, bits: int) -> list[list[int]]:
    n2 = ctx.size
    adj = [{(v - 1) % n2, (v + 1) % n2} for v in range(n2)]
    for obj, members in _members(ctx, bits):
        if isinstance(obj, PairArc):
            for a, b in members:
                adj[a].add(b)
                adj[b].add(a)
    return [sorted(s) for s in adj]


def _shortest_vertex_sets(adj, start: int, target: int, positions: Sequence[int],
                          n: int) -> tuple[int, set[frozenset]]:
    """Length and vertex sets of all shortest start -> target walks covering every position."""
    slot = {p: s for s, p in enumerate(positions)}
    need = (1 << len(positions)) - 1

    def cover(v, c):
        s = slot.get(v % n)
        return c | (1 << s) if s is not None else c

    first = (start, cover(start, 0))
    dist = {first: 0}
    preds: dict = {first: []}
    queue = deque([first])
    goal = None
    while queue:
        state = queue.popleft()
        if goal is not None and dist[state] >= dist[goal]:
            break
        v, c = state
        for w in adj[v]:
            nxt = (w, cover(w, c))
            if nxt not in dist:
                dist[nxt] = dist[state] + 1
                preds[nxt] = [state]
                queue.append(nxt)
                if w == target and nxt[1] == need:
                    goal = nxt
            elif dist[nxt] == dist[state] + 1:
                preds[nxt].append(state)
    if goal is None:
        return -1, set()

    memo: dict = {}

    def sets(state):
        if state in memo:
            return memo[state]
        if not preds[state]:
            res = {frozenset([state[0]])}
        else:
            res = {s | {state[0]} for p in preds[state] for s in sets(p)}
        memo[state] = res
        return res

    return dist[goal], sets(goal)


def central_vertices(ctx: PolygonContext, bits: int) -> tuple[int, ...]:
    """Sorted vertices of the central region: the shortest sequence and its rotation."""
    n, n2 = ctx.n, ctx.size
    diam: dict[int, set[str]] = {}
    for obj in ctx.objects_of(ArcSet(n, bits)):
        if isinstance(obj, Diameter):
            diam.setdefault(obj.i, set()).add(obj.color)
    if len(diam) == 1:
        (p, cols), = diam.items()
        if len(cols) == 2:
            return (p, p + n)
    if diam:
        starts = sorted(diam)
        positions = starts
    else:
        chords = [m for obj, ms in _members(ctx, bits) for m in ms]
        starts = [i for i in range(n)
                  if not any(interleaved(i, i + n, a, b, n2) for a, b in chords)]
        positions = []
        if not starts:
            raise NotPtolemy("no uncrossed diameter; the input is not a Ptolemy diagram")
    adj = _adjacency(ctx, bits)
    best, found = None, set()
    for i in starts:
        length, sets = _shortest_vertex_sets(adj, i, i + n, positions, n)
        if length < 0:
            continue
        if best is None or length < best:
            best, found = length, set()
        if length == best:
            found |= {frozenset(vs) | frozenset((v + n) % n2 for v in vs) for vs in sets}
    if not found:
        raise NotPtolemy("no admissible vertex sequence for the central region")
    if len(found) > 1:
        raise AmbiguousCentralRegion(
            f"{len(found)} different central regions of equal length: {sorted(map(sorted, found))}")
    return tuple(sorted(found.pop()))


def _in_interval(v: int, lo: int, gap: int, n2: int) -> bool:
    return (v - lo) % n2 <= gap


def decompose(ctx: PolygonContext, X: ArcSet) -> Decomposition:
    """Split a Ptolemy diagram into its central region and the type A diagrams glued onto it."""
    n, n2 = ctx.n, ctx.size
    if not is_ptolemy_bits(ctx, X.bits):
        raise NotPtolemy("decompose needs a Ptolemy diagram")
    V = central_vertices(ctx, X.bits)
    K = len(V) // 2
    # c_0 opens the gap that contains the edge {0, 1}
    t0 = 0 if V[0] == 0 else len(V) - 1
    c = [V[(t0 + s) % len(V)] for s in range(len(V))]
    gaps = [(c[(s + 1) % len(c)] - c[s]) % n2 for s in range(len(c))]
    position = {v: s for s, v in enumerate(c)}

    bounding = [(c[s], c[(s + 1) % len(c)]) for s in range(len(c)) if gaps[s] >= 2]
    central = context(K)
    central_bits = 0
    pieces: dict[int, set[tuple[int, int]]] = {s: set() for s in range(len(c))}
    for obj, members in _members(ctx, X.bits):
        for a, b in members:
            for u, v in bounding:
                if interleaved(a, b, u, v, n2):
                    raise AssertionError(f"{obj} crosses the boundary arc {{{u},{v}}}")
        if isinstance(obj, Diameter):
            central_bits |= 1 << central.index[Diameter(position[obj.i] % K, obj.color)]
            continue
        a, b = members[0]
        if a in position and b in position:
            if K >= 2 and (position[b] - position[a]) % (2 * K) in (1, 2 * K - 1):
                continue  # bounding arc
            central_bits |= 1 << central.index[make_arc(central, position[a], position[b])]
            continue
        for a, b in members:
            for s in range(len(c)):
                if _in_interval(a, c[s], gaps[s], n2) and _in_interval(b, c[s], gaps[s], n2):
                    pa, pb = sorted(((a - c[s]) % n2, (b - c[s]) % n2))
                    if (pa, pb) != (0, gaps[s]):
                        pieces[s].add((pa, pb))

    glued = []
    for j in range(K):
        s = (-j) % len(c)
        glued.append(TypeADiagram(gaps[s] + 1, frozenset(pieces[s])))
    kind = classify_bits(central, central_bits)
    region = CentralRegion(n, tuple(c), ArcSet(K, central_bits), K - 1, kind)
    return Decomposition(region, tuple(glued), (0 - c[0]) % n2)


def recompose(d: Decomposition) -> ArcSet:
    """Glue the type A diagrams twice around the central region, clockwise."""
    central, glued = d.central, d.glued
    K = central.k + 1
    if central.arcs.n != K:
        raise MalformedGluing(f"central region lives on a {2 * central.arcs.n}-gon, expected {2 * K}")
    if len(glued) != K:
        raise MalformedGluing(f"{len(glued)} glued diagrams for {K} bounding edges")
    n = sum(g.m - 1 for g in glued)
    if n < 1 or (central.n and central.n != n):
        raise MalformedGluing(f"glued sizes give n = {n}, central region says {central.n}")
    m0 = glued[0].m
    if not 0 <= d.marked_edge <= max(0, m0 - 2):
        raise MalformedGluing(f"marked edge {d.marked_edge} is not available in a {m0}-gon")
    ctx = context(n)
    n2 = ctx.size
    pos = [(-d.marked_edge) % n2]
    for t in range(2 * K - 1):
        pos.append((pos[-1] + glued[(-t) % K].m - 1) % n2)

    bits = 0
    cctx = context(K)
    for obj in cctx.objects_of(central.arcs):
        if isinstance(obj, Diameter):
            target = Diameter(pos[obj.i] % n, obj.color)
        else:
            target = make_arc(ctx, pos[obj.i], pos[obj.j])
        bits |= 1 << ctx.index[target]
    for t in range(K):
        piece = glued[(-t) % K]
        base = pos[t]
        if K >= 2 and piece.m >= 3:
            bits |= 1 << ctx.index[make_arc(ctx, base, base + piece.m - 1)]
        for a, b in piece.arcs:
            bits |= 1 << ctx.index[make_arc(ctx, base + a, base + b)]
    return ArcSet(n, bits)


# -- counting via the decomposition -----------------------------------------------


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of ``parts`` positive integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def glue_count(n: int) -> int:
    """Type D count assembled from constructed central regions and type A counts."""
    total = 0
    for K in range(1, n + 1):
        regions = sum(count_central_regions(K - 1, kind) for kind in KINDS)
        if not regions:
            continue
        configs = 0
        for sizes in compositions(n, K):
            term = sizes[0]
            for s in sizes:
                term *= count_type_a(s + 1)
            configs += term
        total += regions * configs
    return total


def central_region_histogram(n: int) -> dict[tuple[int, str], int]:
    """How many Ptolemy diagrams of type D_n have a central region of each size and kind."""
    ctx = context(n)
    hist: dict[tuple[int, str], int] = {}
    for bits in iter_ptolemy_d(n):
        region = decompose(ctx, ArcSet(n, bits)).central
        key = (region.k, region.kind)
        hist[key] = hist.get(key, 0) + 1
    return hist
