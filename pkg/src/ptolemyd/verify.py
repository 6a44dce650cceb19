"""Cross-validation checks, shared by ``ptd verify`` and the acceptance tests."""

from __future__ import annotations

import random
import time
from dataclasses import asdict, dataclass
from typing import Any, Callable

import numpy as np

from . import series as S
from .cluster_cat import (
    NonExc,
    category,
    hom_nonzero,
    hom_nonzero_hammock,
    is_torsion_bits,
    to_arc,
)
from .enumeration import (
    KINDS,
    classify_bits,
    count_central_regions,
    count_torsion_exhaustive,
    count_type_a,
    count_words_type_ii,
    decompose,
    exhaustive_verdicts,
    recompose,
)
from .geometry import ArcSet, context, nc_bits

PASS, FAIL, DIAGNOSTIC = "pass", "fail", "diagnostic"

# known coefficients of the type D series, n = 1..6
PD_KNOWN = [1, 16, 82, 500, 3084, 19400]


@dataclass(frozen=True)
class ReportRecord:
    check: str
    expected: Any
    actual: Any
    status: str

    def to_obj(self) -> dict[str, Any]:
        return asdict(self)


def _record(check: str, expected, actual, ok: bool) -> ReportRecord:
    return ReportRecord(check, expected, actual, PASS if ok else FAIL)


def _timed(fn: Callable, *args):
    t = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t


# -- individual criteria -------------------------------------------------------------


def brute_force_counts(max_n: int = 5) -> list[ReportRecord]:
    out = []
    small = [n for n in range(1, min(max_n, 4) + 1)]
    counts, elapsed = _timed(lambda: [count_torsion_exhaustive(n) for n in small])
    expected = PD_KNOWN[:len(small)]
    out.append(_record(f"brute force counts n=1..{len(small)}", expected, counts,
                       counts == expected))
    out.append(_record("brute force n<=4 runtime below 5 s", "< 5 s", f"{elapsed:.2f} s",
                       elapsed < 5))
    if max_n >= 5:
        count, elapsed = _timed(count_torsion_exhaustive, 5)
        out.append(_record("brute force count n=5 (2^25 sweep)", 3084, count, count == 3084))
        out.append(_record("brute force n=5 runtime below 5 min", "< 300 s", f"{elapsed:.2f} s",
                           elapsed < 300))
    return out


def series_counts(order: int = 10) -> list[ReportRecord]:
    pd, elapsed = _timed(S.p_d, order)
    got = pd.coeffs[1:7]
    return [
        _record(f"P_D coefficients 1..6 at order {order}", PD_KNOWN, got, got == PD_KNOWN),
        _record("P_D pipeline runtime below 1 s", "< 1 s", f"{elapsed:.3f} s", elapsed < 1),
    ]


def theorem_equivalence(ns=(2, 3, 4), pt3_colour: bool = True) -> list[ReportRecord]:
    out = []
    for n in ns:
        torsion, ptolemy = exhaustive_verdicts(n, pt3_colour)
        bad = int(np.count_nonzero(torsion != ptolemy))
        out.append(_record(f"Ptolemy == ncnc fixed point over all 2^{n * n} subsets, n={n}",
                           0, bad, bad == 0))
    return out


def mutation_control(n: int = 3) -> list[ReportRecord]:
    torsion, ptolemy = exhaustive_verdicts(n, pt3_colour=False)
    bad = int(np.count_nonzero(torsion != ptolemy))
    return [_record(f"negative control: dropping the colour clause breaks equivalence at n={n}",
                    "> 0 discrepancies", bad, bad > 0)]


def nc_bijection(ns=(1, 2, 3, 4)) -> list[ReportRecord]:
    out = []
    for n in ns:
        ctx = context(n)
        _, ptolemy = exhaustive_verdicts(n)
        failures = 0
        diagrams = [int(x) for x in np.flatnonzero(ptolemy)]
        images = set()
        for X in diagrams:
            Y = nc_bits(ctx, X)
            images.add(Y)
            if not ptolemy[Y] or nc_bits(ctx, Y) != X:
                failures += 1
        if images != set(diagrams):
            failures += 1
        out.append(_record(f"nc is an involution on Ptolemy diagrams, n={n}", 0, failures,
                           failures == 0))
    return out


def _arc_to_cat(n: int) -> list[int]:
    cctx = category(n)
    ctx = context(n)
    perm = [0] * ctx.num_objects
    for k, x in enumerate(cctx.coords):
        perm[ctx.index[to_arc(cctx, x)]] = k
    return perm


def _convert(bits: int, perm: list[int]) -> int:
    out = 0
    while bits:
        low = bits & -bits
        out |= 1 << perm[low.bit_length() - 1]
        bits ^= low
    return out


def categorical_agreement(samples: int = 100_000, seed: int = 20240) -> list[ReportRecord]:
    out = []
    ctx, cctx, perm = context(4), category(4), _arc_to_cat(4)
    bad = sum(
        (nc_bits(ctx, nc_bits(ctx, X)) == X) != is_torsion_bits(cctx, _convert(X, perm))
        for X in range(1 << ctx.num_objects))
    out.append(_record("categorical torsion == ncnc test, all 2^16 subsets at n=4", 0, bad,
                       bad == 0))
    for n in (5, 6):
        ctx, cctx, perm = context(n), category(n), _arc_to_cat(n)
        rng = random.Random(seed + n)
        bad = 0
        for _ in range(samples):
            X = rng.getrandbits(ctx.num_objects)
            if (nc_bits(ctx, nc_bits(ctx, X)) == X) != is_torsion_bits(cctx, _convert(X, perm)):
                bad += 1
        out.append(_record(f"categorical torsion == ncnc test, {samples} random subsets at n={n}",
                           0, bad, bad == 0))
    return out


def hammock_agreement(ns=range(4, 9)) -> list[ReportRecord]:
    out = []
    for n in ns:
        cctx = category(n)
        bad = sum(hom_nonzero(cctx, x, y) != hom_nonzero_hammock(cctx, x, y)
                  for x in cctx.coords if isinstance(x, NonExc) for y in cctx.coords)
        out.append(_record(f"hexagon region == crossing oracle, n={n}", 0, bad, bad == 0))
    return out


def type_a_check(max_m: int = 8, order: int = 64) -> list[ReportRecord]:
    pa = S.solve_pa(max(order, max_m))
    counts = [count_type_a(m) for m in range(2, max_m + 1)]
    coeffs = pa.coeffs[1:max_m]
    residual = S.pa_residual(S.solve_pa(order))
    return [
        _record(f"type A brute force counts m=2..{max_m} == P_A coefficients", coeffs, counts,
                counts == coeffs),
        _record(f"P_A functional equation residual is zero to order {order}", 0,
                sum(1 for c in residual.coeffs if c), not any(residual.coeffs)),
    ]


def word_check(max_len: int = 12, order: int = 20) -> list[ReportRecord]:
    _, _, Wp, W = S.solve_w_system(max(order, max_len))
    counts = [count_words_type_ii(k) for k in range(max_len + 1)]
    coeffs = W.coeffs[:max_len + 1]
    return [
        _record(f"word counts len<={max_len} == W coefficients", coeffs, counts, counts == coeffs),
        _record(f"W' matches its closed form to order {order}", S.w_prime_closed(order).to_json(),
                Wp.truncate(order).to_json(), Wp.truncate(order) == S.w_prime_closed(order)),
        _record(f"W matches its closed form to order {order}", S.w_closed(order).to_json(),
                W.truncate(order).to_json(), W.truncate(order) == S.w_closed(order)),
    ]


def central_region_check(max_k: int = 8) -> list[ReportRecord]:
    out = []
    for kind in KINDS:
        built = [count_central_regions(k, kind) for k in range(max_k + 1)]
        expected = S.c_series(kind, max_k).coeffs
        out.append(_record(f"central regions of kind {kind}, k<={max_k}", expected, built,
                           built == expected))
    return out


def decomposition_check(ns=(1, 2, 3, 4)) -> list[ReportRecord]:
    out = []
    for n in ns:
        ctx = context(n)
        _, ptolemy = exhaustive_verdicts(n)
        failures, kind_breaks = 0, 0
        for X in (int(x) for x in np.flatnonzero(ptolemy)):
            try:
                ok = recompose(decompose(ctx, ArcSet(n, X))).bits == X
            except (AssertionError, ValueError, RuntimeError):
                ok = False
            failures += not ok
            if classify_bits(ctx, X) != classify_bits(ctx, nc_bits(ctx, X)):
                kind_breaks += 1
        out.append(_record(f"decompose/recompose round trip with uncrossed boundary, n={n}",
                           0, failures, failures == 0))
        out.append(_record(f"kind preserved by nc, n={n}", 0, kind_breaks, kind_breaks == 0))
    return out


def structural_identities(order: int = 20) -> list[ReportRecord]:
    total, closed = S.c_total(order), S.c_total_closed(order)
    a, b = S.p_d_routes(order)
    return [
        _record(f"C_I + C_II + C_III == closed form to order {order}", closed.to_json(),
                total.to_json(), total == closed),
        _record(f"both P_D assembly routes agree to order {order}", a.to_json(), b.to_json(),
                a == b),
    ]


def cubic_diagnostic(order: int = 10) -> list[ReportRecord]:
    out = []
    for variant in (S.CUBIC_VERBATIM, S.CUBIC_CORRECTED):
        residual = S.algebraic_residual(order, variant)
        holds = not any(residual.coeffs)
        out.append(ReportRecord(f"cubic relation residual ({variant}) to order {order}",
                                "recorded only", {"residual": residual.to_json(), "zero": holds},
                                DIAGNOSTIC))
    return out


# -- suites ------------------------------------------------------------------------

CRITERIA: dict[int, tuple[str, Callable[[], list[ReportRecord]]]] = {
    1: ("brute-force torsion-pair counts", brute_force_counts),
    2: ("generating-function counts", series_counts),
    3: ("Ptolemy/torsion equivalence", theorem_equivalence),
    4: ("nc bijection on Ptolemy diagrams", nc_bijection),
    5: ("categorical oracle agreement", categorical_agreement),
    6: ("hexagon oracle agreement", hammock_agreement),
    7: ("type A cross-check", type_a_check),
    8: ("word model", word_check),
    9: ("central region counts", central_region_check),
    10: ("decomposition round trip and kinds", decomposition_check),
    11: ("structural identities", structural_identities),
    12: ("cubic relation diagnostic", cubic_diagnostic),
}


def run_quick() -> list[ReportRecord]:
    records = []
    records += brute_force_counts(max_n=3)
    records += series_counts()
    records += theorem_equivalence(ns=(2, 3))
    records += nc_bijection(ns=(1, 2, 3))
    records += type_a_check(max_m=7, order=32)
    records += word_check(max_len=10)
    records += central_region_check(max_k=6)
    records += decomposition_check(ns=(1, 2, 3))
    records += structural_identities()
    records += cubic_diagnostic()
    return records


def run_full() -> list[ReportRecord]:
    records = []
    for _, fn in CRITERIA.values():
        records += fn()
    records += mutation_control()
    return records
