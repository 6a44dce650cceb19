import pytest
from hypothesis import given, settings, strategies as st

from ptolemyd.geometry import GREEN, RED, Diameter, PairArc, context
from ptolemyd.ptolemy import (
    PT1,
    PT2,
    TypeADiagram,
    closure_bits,
    is_ptolemy_a,
    is_ptolemy_bits,
    is_ptolemy_d,
    is_torsion_arcset,
    pt_violations,
    ptolemy_closure,
)

# Two diagrams in the 10-gon: the first breaks two forcing rules, the second is closed.
X1_OBJECTS = [PairArc(0, 2), PairArc(1, 3), Diameter(0, GREEN), Diameter(4, RED)]
X2_OBJECTS = [PairArc(0, 2), PairArc(0, 6), PairArc(0, 7),
              Diameter(0, GREEN), Diameter(1, GREEN), Diameter(2, GREEN), Diameter(0, RED)]


def test_x1_violates_pt1_and_pt2():
    ctx = context(5)
    X1 = ctx.arcset(X1_OBJECTS)
    conditions = {v.condition for v in pt_violations(ctx, X1)}
    assert {PT1, PT2} <= conditions
    assert not is_ptolemy_d(ctx, X1)
    assert not is_torsion_arcset(ctx, X1)


def test_x2_is_ptolemy():
    ctx = context(5)
    X2 = ctx.arcset(X2_OBJECTS)
    assert pt_violations(ctx, X2) == []
    assert is_ptolemy_d(ctx, X2) and is_torsion_arcset(ctx, X2)


def test_violation_reports_are_precise():
    ctx = context(5)
    for v in pt_violations(ctx, ctx.arcset(X1_OBJECTS)):
        assert v.missing
        assert not any(ctx.index[m] in ctx.arcset(X1_OBJECTS) for m in v.missing)


@pytest.mark.parametrize("n", range(2, 7))
def test_trivial_diagrams(n):
    ctx = context(n)
    assert pt_violations(ctx, ctx.empty()) == []
    assert pt_violations(ctx, ctx.everything()) == []


def test_type_d1():
    ctx = context(1)
    assert is_ptolemy_d(ctx, ctx.everything())
    assert not is_ptolemy_d(ctx, ctx.empty())
    assert not is_ptolemy_d(ctx, ctx.arcset([Diameter(0, GREEN)]))


def test_all_diameter_sets_in_square():
    ctx = context(2)
    assert all(is_ptolemy_bits(ctx, X) for X in range(16))


def test_closure_examples():
    ctx = context(4)
    X = ctx.arcset([PairArc(0, 2), PairArc(1, 3)])
    assert ptolemy_closure(ctx, X) == ctx.arcset([PairArc(0, 2), PairArc(1, 3), PairArc(0, 3)])
    sq = context(2)
    Y = sq.arcset([Diameter(0, GREEN), Diameter(1, RED)])
    assert ptolemy_closure(sq, Y) == Y
    with pytest.raises(ValueError):
        ptolemy_closure(context(1), context(1).empty())


@pytest.mark.parametrize("n", [2, 3])
def test_closure_properties_exhaustive(n):
    ctx = context(n)
    for X in range(1 << ctx.num_objects):
        C = closure_bits(ctx, X)
        assert X & ~C == 0
        assert closure_bits(ctx, C) == C
        assert is_ptolemy_bits(ctx, C)
        assert (C == X) == is_ptolemy_bits(ctx, X)


@given(st.integers(4, 5), st.data())
@settings(max_examples=40, deadline=None)
def test_closure_monotone(n, data):
    ctx = context(n)
    Y = data.draw(st.integers(0, ctx.full))
    X = Y & data.draw(st.integers(0, ctx.full))
    assert closure_bits(ctx, X) & ~closure_bits(ctx, Y) == 0


@given(st.integers(2, 6), st.data())
@settings(max_examples=100, deadline=None)
def test_ptolemy_iff_torsion_random(n, data):
    ctx = context(n)
    X = data.draw(st.integers(0, ctx.full))
    assert is_ptolemy_bits(ctx, X) == is_torsion_arcset(ctx, _arcset(n, X))
    C = closure_bits(ctx, X)
    assert is_torsion_arcset(ctx, _arcset(n, C))


def _arcset(n, bits):
    from ptolemyd.geometry import ArcSet
    return ArcSet(n, bits)


def test_torsion_examples():
    sq = context(2)
    assert is_torsion_arcset(sq, sq.arcset([Diameter(0, GREEN)]))
    for n in (2, 3):
        assert is_torsion_arcset(context(n), context(n).empty())
    assert not is_torsion_arcset(context(1), context(1).empty())


@pytest.mark.parametrize("m, arcs, expected", [
    (4, {(0, 2), (1, 3)}, True),
    (4, {(0, 2)}, True),
    (3, set(), True),
    (2, set(), True),
    (5, {(0, 2), (1, 3)}, False),
    (5, {(0, 2), (1, 3), (0, 3)}, True),
])
def test_is_ptolemy_a(m, arcs, expected):
    assert is_ptolemy_a(TypeADiagram(m, frozenset(arcs))) is expected


def test_type_a_validation():
    with pytest.raises(ValueError):
        TypeADiagram(5, frozenset({(0, 1)}))
    with pytest.raises(ValueError):
        TypeADiagram(1)
    d = TypeADiagram(4, frozenset({(2, 0)}))
    assert d.arcs == {(0, 2)} and d.base_edge == 3
    assert TypeADiagram(2).degenerate
