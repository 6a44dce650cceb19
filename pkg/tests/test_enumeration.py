import pytest

from ptolemyd import series as S
from ptolemyd.enumeration import (
    KIND_I,
    KIND_II,
    KIND_III,
    KINDS,
    BudgetExceeded,
    Decomposition,
    MalformedGluing,
    NotPtolemy,
    central_region_histogram,
    central_regions,
    classify_kind,
    compositions,
    count_central_regions,
    count_type_a,
    count_type_d,
    count_words_type_ii,
    decompose,
    glue_count,
    iter_ptolemy_a,
    iter_ptolemy_d,
    recompose,
    torsion_sets_exhaustive,
    words_type_ii,
)
from ptolemyd.geometry import GREEN, RED, ArcSet, Diameter, PairArc, context, interleaved
from ptolemyd.ptolemy import TypeADiagram, is_ptolemy_a, is_ptolemy_bits, ptolemy_closure


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 16), (3, 82), (4, 500)])
@pytest.mark.parametrize("strategy", ["exhaustive", "pruned"])
def test_count_type_d(n, expected, strategy):
    assert count_type_d(n, strategy) == expected


def test_count_type_d_n5_both_engines():
    assert count_type_d(5, "pruned") == 3084
    assert sorted(iter_ptolemy_d(5)) == torsion_sets_exhaustive(5)


def test_worker_count_does_not_change_result():
    assert count_type_d(4, workers=1) == count_type_d(4, workers=3) == 500


def test_budgets():
    with pytest.raises(BudgetExceeded):
        count_type_d(6, "exhaustive")
    with pytest.raises(BudgetExceeded):
        list(iter_ptolemy_d(7))
    with pytest.raises(BudgetExceeded):
        count_type_a(10)
    with pytest.raises(ValueError):
        count_type_d(2, "guess")


@pytest.mark.parametrize("m, expected", [(2, 1), (3, 1), (4, 4), (5, 17)])
def test_count_type_a(m, expected):
    assert count_type_a(m) == expected
    assert count_type_a(m, "pruned") == expected


def test_type_a_engines_agree_with_series():
    P = S.solve_pa(10)
    assert [count_type_a(m, "pruned") for m in range(2, 10)] == P.coeffs[1:9]


def test_iter_ptolemy_a_yields_valid_diagrams():
    ds = list(iter_ptolemy_a(6))
    assert len(ds) == 82 and len({d.arcs for d in ds}) == 82
    assert all(is_ptolemy_a(d) for d in ds)


@pytest.mark.parametrize("length, expected", [(0, 0), (1, 0), (2, 1), (3, 7), (4, 25)])
def test_count_words(length, expected):
    assert count_words_type_ii(length) == expected


def test_words_listing():
    words = words_type_ii(3)
    assert "lll" in words and "llx" in words and "lox" not in words
    assert len(words) == 7


@pytest.mark.parametrize("kind, expected", [
    (KIND_I, [1, 2, 2, 2]),
    (KIND_II, [0, 2, 14, 50]),
    (KIND_III, [0, 10, 12, 16]),
])
def test_count_central_regions(kind, expected):
    assert [count_central_regions(k, kind) for k in range(4)] == expected


@pytest.mark.parametrize("k", range(0, 5))
def test_central_regions_are_ptolemy_and_self_central(k):
    ctx = context(k + 1)
    for kind in KINDS:
        for R in central_regions(k, kind):
            assert is_ptolemy_bits(ctx, R.bits)
            d = decompose(ctx, R)
            assert d.central.k == k and d.central.kind == kind
            assert all(g.m == 2 for g in d.glued)


def test_decompose_empty_square():
    ctx = context(2)
    d = decompose(ctx, ctx.empty())
    assert d.central.kind == KIND_I and d.central.k == 1
    assert [g.m for g in d.glued] == [2, 2]
    assert recompose(d) == ctx.empty()


def test_decompose_all_diameters_square():
    ctx = context(2)
    d = decompose(ctx, ctx.everything())
    assert d.central.kind == KIND_I and d.central.k == 1
    assert all(g.degenerate for g in d.glued)
    assert recompose(d) == ctx.everything()


def test_decompose_d1():
    ctx = context(1)
    d = decompose(ctx, ctx.everything())
    assert d.central.k == 0 and d.central.kind == KIND_I
    assert [g.m for g in d.glued] == [2]
    assert recompose(d) == ctx.everything()


def test_decompose_rejects_non_ptolemy():
    ctx = context(4)
    with pytest.raises(NotPtolemy):
        decompose(ctx, ctx.arcset([PairArc(0, 2), PairArc(1, 3)]))
    with pytest.raises(NotPtolemy):
        classify_kind(ctx, ctx.arcset([PairArc(0, 2), PairArc(1, 3)]))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_round_trip_and_boundary(n):
    ctx = context(n)
    for bits in iter_ptolemy_d(n):
        X = ArcSet(n, bits)
        d = decompose(ctx, X)
        assert recompose(d) == X
        c = d.central.boundary
        chords = [m for obj in ctx.objects_of(X) for m in ctx.members(obj)]
        for s in range(len(c)):
            u, v = c[s], c[(s + 1) % len(c)]
            assert not any(interleaved(a, b, u, v, ctx.size) for a, b in chords)
        assert 0 <= d.marked_edge <= max(0, d.glued[0].m - 2)


def test_recompose_errors():
    ctx = context(2)
    d = decompose(ctx, ctx.empty())
    with pytest.raises(MalformedGluing):
        recompose(Decomposition(d.central, d.glued[:1], 0))
    with pytest.raises(MalformedGluing):
        recompose(Decomposition(d.central, d.glued, 5))
    bigger = (TypeADiagram(3), TypeADiagram(2))
    with pytest.raises(MalformedGluing):
        recompose(Decomposition(d.central, bigger, 0))


def test_classify_examples():
    ctx = context(3)
    assert classify_kind(ctx, ctx.empty()) == KIND_I
    two = ptolemy_closure(ctx, ctx.arcset([Diameter(0, GREEN), Diameter(1, GREEN)]))
    assert classify_kind(ctx, two) == KIND_II
    assert classify_kind(ctx, ctx.arcset([Diameter(2, RED)])) == KIND_III


def test_compositions():
    assert list(compositions(3, 2)) == [(1, 2), (2, 1)]
    assert list(compositions(2, 3)) == []


@pytest.mark.parametrize("n", range(1, 7))
def test_glue_count_matches_total(n):
    assert glue_count(n) == S.p_d(n)[n]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_histogram_product_structure(n):
    hist = central_region_histogram(n)
    for (k, kind), count in hist.items():
        configs = 0
        for sizes in compositions(n, k + 1):
            term = sizes[0]
            for s in sizes:
                term *= count_type_a(s + 1)
            configs += term
        assert count == count_central_regions(k, kind) * configs
