import math
import pickle

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import table_function
from ordconcave import (
    NEG_INF,
    GroundSet,
    SetFunction,
    contraction,
    dual,
    dual_convex,
    evaluate,
    is_finite,
    minor,
    neighborhood,
    reduction,
)
from ordconcave.errors import BadInterval, EmptyGround, GroundMismatch, InfiniteBase


def test_neg_inf_orders_below_reals():
    assert NEG_INF < -1e300
    assert not NEG_INF > 0
    assert NEG_INF == NEG_INF
    assert NEG_INF != -math.inf
    assert float(NEG_INF) == -math.inf
    assert max([NEG_INF, -5.0, NEG_INF]) == -5.0
    assert pickle.loads(pickle.dumps(NEG_INF)) is NEG_INF
    assert not is_finite(NEG_INF) and is_finite(0.0)


def test_ground_set_labels():
    g = GroundSet.of_size(4)
    assert g.labels == ("a", "b", "c", "d")
    assert g.full_mask == 15
    assert g.parse("a,c").bits == 0b101
    assert g.parse("{c, a}").bits == 0b101
    assert g.parse("").bits == 0
    with pytest.raises(Exception):
        GroundSet(["a", "a"])
    with pytest.raises(Exception):
        GroundSet([])


def test_subset_algebra(abc):
    X, Y = abc.parse("a,b"), abc.parse("b,c")
    assert (X | Y) == abc.full
    assert (X & Y).labels == ("b",)
    assert (X - Y).labels == ("a",)
    assert X.complement().labels == ("c",)
    assert X.exchange("a", "c") == Y
    assert X.exchange(None, None) == X
    assert len(X) == 2 and "a" in X and "c" not in X
    with pytest.raises(GroundMismatch):
        X | GroundSet(["x", "y"]).empty


def test_evaluate_examples(wonly, abc):
    assert evaluate(wonly, abc.parse("b,c")) == 6
    holed = SetFunction.from_mapping(abc, {abc.parse(s): 1.0 for s in ["", "a", "b", "a,b"]})
    assert evaluate(holed, abc.parse("c")) is NEG_INF
    with pytest.raises(GroundMismatch):
        evaluate(wonly, GroundSet(["x", "y", "z"]).parse("x"))


def test_reduction_examples(wonly, abc):
    r = reduction(wonly, abc.parse("a,b"))
    assert r.ground.labels == ("a", "b")
    assert r.table() == [0, 4, 3, 2]
    assert reduction(wonly, abc.full) == wonly
    with pytest.raises(EmptyGround):
        reduction(wonly, abc.empty)


def test_contraction_examples(wonly, abc):
    c = contraction(wonly, abc.parse("a"))
    assert c.ground.labels == ("b", "c")
    assert c.table() == [0, -2, 1, -4]
    assert contraction(wonly, abc.empty) == wonly
    with pytest.raises(EmptyGround):
        contraction(wonly, abc.full)
    holed = SetFunction(abc, [0, NEG_INF, 1, 1, 1, 1, 1, 1])
    with pytest.raises(InfiniteBase):
        contraction(holed, abc.parse("a"))


def test_minor_examples(wonly, abc):
    assert minor(wonly, abc.parse("a"), abc.full) == contraction(wonly, abc.parse("a"))
    assert minor(wonly, abc.empty, abc.parse("a,b")) == reduction(wonly, abc.parse("a,b"))
    with pytest.raises(BadInterval):
        minor(wonly, abc.parse("c"), abc.parse("a,b"))
    with pytest.raises(BadInterval):
        minor(wonly, abc.parse("a"), abc.parse("a"))


def test_dual_examples(wonly, abc):
    assert dual(wonly)(abc.parse("a")) == 6
    assert dual_convex(wonly)(abc.parse("a")) == -6
    holed = SetFunction(abc, [0, 1, 1, 1, 1, 1, 1, NEG_INF])
    with pytest.raises(InfiniteBase):
        dual_convex(holed)


def test_neighborhood_examples(abc):
    assert [X.labels for X in neighborhood(abc.empty)] == [(), ("a",), ("b",), ("c",)]
    got = {X.labels for X in neighborhood(abc.parse("a"))}
    assert got == {("a",), ("a", "b"), ("a", "c"), (), ("b",), ("c",)}
    assert len(neighborhood(abc.parse("a"))) == 6


tables = st.integers(1, 5).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(-5, 5), min_size=1 << n, max_size=1 << n))
)


@settings(max_examples=60, deadline=None)
@given(tables)
def test_dual_is_an_involution(data):
    n, values = data
    u = table_function(GroundSet.of_size(n).labels, values)
    assert dual(dual(u)) == u
    if values[0] == 0:
        assert dual_convex(dual_convex(u)) == u


@settings(max_examples=60, deadline=None)
@given(tables, st.data())
def test_minor_matches_definition(data, draw):
    n, values = data
    u = table_function(GroundSet.of_size(n).labels, values)
    Y = draw.draw(st.integers(1, (1 << n) - 1))
    X = draw.draw(st.sampled_from([m for m in range(1 << n) if m & ~Y == 0 and m != Y]))
    g = u.ground
    m = minor(u, g.from_bits(X), g.from_bits(Y))
    for Z in m.ground.all_subsets():
        full = g.subset(Z.labels) | g.from_bits(X)
        assert m(Z) == u(full) - u(g.from_bits(X))
    # reduce-then-contract equals contract-then-reduce
    if X:
        c = contraction(reduction(u, g.from_bits(Y)), reduction(u, g.from_bits(Y)).ground.subset(g.labels_of(X)))
        assert c == m


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.data())
def test_neighborhood_size(n, data):
    g = GroundSet.of_size(n)
    X = g.from_bits(data.draw(st.integers(0, (1 << n) - 1)))
    nbrs = neighborhood(X)
    assert len(nbrs) == len(set(nbrs)) == (len(X) + 1) * (n - len(X) + 1)
    assert all(len(X ^ Z) <= 2 for Z in nbrs)


def test_modular_and_constructors(abc):
    u = SetFunction.modular(abc, [4, 3, -1])
    assert u.table() == [0, 4, 3, 7, -1, 3, 2, 6]
    v = SetFunction.from_callable(abc, lambda X: min(len(X), 2))
    assert v(abc.full) == 2
    assert SetFunction.constant(abc, 3).distinct_values() == 1
    keys = SetFunction(abc, [0, NEG_INF, 1, 1, 1, 1, 1, 1]).keys
    assert keys[1] == -np.inf
