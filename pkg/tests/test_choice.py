import pytest

import oracles
from ordconcave import (
    NEG_INF,
    GroundSet,
    SetFunction,
    canonical_choice,
    check_dual_substitutability,
    check_path_independence,
    check_sen_alpha,
    check_substitutability,
    choice_correspondence,
    choice_sets,
    enclosure,
    interval_maximizers,
    is_proper_set,
    preimage,
)
from ordconcave.errors import BadInterval, EmptyChoiceDomain, NotAChoiceSet, NotUM


def labels(F):
    return [X.labels for X in F]


def test_choice_correspondence_examples(wonly, abc):
    assert labels(choice_correspondence(wonly, abc.parse("a,b"))) == [("a",)]
    assert labels(choice_correspondence(wonly, abc.full)) == [("b", "c")]
    assert labels(choice_correspondence(wonly, abc.empty)) == [()]


def test_interval_maximizers_examples(wonly, abc):
    assert labels(interval_maximizers(wonly, abc.parse("a"), abc.full)) == [("a", "c")]
    assert labels(interval_maximizers(wonly, abc.empty, abc.full)) == [("b", "c")]
    assert labels(interval_maximizers(wonly, abc.parse("b"), abc.parse("b"))) == [("b",)]
    with pytest.raises(BadInterval):
        interval_maximizers(wonly, abc.parse("a"), abc.parse("b"))
    holed = SetFunction(abc, [0, NEG_INF, 1, NEG_INF, 1, 1, 1, 1])
    with pytest.raises(EmptyChoiceDomain):
        interval_maximizers(holed, abc.parse("a"), abc.parse("a,b"))


def test_canonical_choice_examples(wonly, abc):
    assert canonical_choice(wonly, abc.parse("a,c")).labels == ("a", "c")
    assert canonical_choice(wonly, abc.full).labels == ("b", "c")
    assert canonical_choice(SetFunction.constant(abc), abc.parse("a,b")).labels == ()


def test_path_independence_wconcave_only(wonly, abc):
    for form in ("union", "disjoint", "both"):
        r = check_path_independence(wonly, form)
        assert not r.holds
        assert (r.witness.X.labels, r.witness.Xprime.labels) == (("a", "b"), ("c",))
    assert canonical_choice(wonly, abc.parse("a,c")).labels == ("a", "c")
    assert canonical_choice(wonly, abc.full).labels == ("b", "c")


def test_path_independence_trivial(abc):
    assert check_path_independence(SetFunction.from_callable(abc, lambda X: -len(X))).holds


def test_substitutability_wconcave_only(wonly):
    for d in ("I", "II"):
        r = check_substitutability(wonly, d)
        assert not r.holds
        assert (r.witness.X.labels, r.witness.Xprime.labels) == (("a", "b"), ("c",))


def test_choice_properties_on_concave_um(concave_um_corpus):
    for u in concave_um_corpus[::3]:
        assert check_path_independence(u, "both").holds
        assert check_substitutability(u, "I").holds
        assert check_substitutability(u, "II").holds
        assert check_dual_substitutability(u).holds
        assert check_sen_alpha(u).holds


def test_dual_substitutability_examples(abc):
    assert check_dual_substitutability(SetFunction.modular(abc, [4, 3, -1])).holds
    g1 = GroundSet.of_size(1)
    for vals in ([0, 1], [1, 0], [2, 2]):
        assert check_dual_substitutability(SetFunction(g1, vals)).holds
    with pytest.raises(EmptyChoiceDomain):
        check_dual_substitutability(SetFunction(abc, [0, 1, 1, 1, 1, 1, 1, NEG_INF]))


def test_path_independence_forms_agree_on_random_tables(random_corpus):
    for u in random_corpus:
        if not u.domain[0]:
            continue
        union = check_path_independence(u, "union").holds
        assert union == check_path_independence(u, "disjoint").holds
        assert union == check_path_independence(u, "both").holds


def test_sen_alpha_matches_brute_force(random_corpus):
    for u in random_corpus[:120]:
        if not u.domain[0]:
            continue
        v = oracles.table(u)
        menus = list(oracles.powerset(u.ground.labels))
        expect = all(
            Y in oracles.menu_argmax(v, Z)
            for X in menus
            for Y in oracles.menu_argmax(v, X)
            for Z in menus
            if Y <= Z <= X
        )
        assert check_sen_alpha(u).holds == expect


def test_preimage_examples(wonly, abc):
    assert labels(preimage(wonly, abc.parse("a"))) == [("a",), ("a", "b")]
    assert labels(preimage(wonly, abc.parse("b,c"))) == [("b", "c"), ("a", "b", "c")]
    assert len(preimage(wonly, abc.parse("a,b"))) == 0


def test_enclosure_examples(wonly, abc):
    r = enclosure(wonly, abc.parse("a"))
    assert (r.lower.labels, r.upper.labels) == (("a",), ("a", "b"))
    r = enclosure(wonly, abc.parse("c"))
    assert (r.lower.labels, r.upper.labels) == (("c",), ("c",))
    assert enclosure(wonly, abc.parse("b,c")).upper == abc.full
    assert abc.parse("a,b") in enclosure(wonly, abc.parse("a"))
    with pytest.raises(NotAChoiceSet):
        enclosure(wonly, abc.parse("a,b"))


def test_proper_set_examples(wonly, abc):
    assert not is_proper_set(wonly, abc.parse("a"))
    assert is_proper_set(wonly, abc.parse("a,c"))
    assert is_proper_set(wonly, abc.full)
    with pytest.raises(NotUM):
        is_proper_set(SetFunction.constant(abc), abc.empty)


def test_choice_sets_are_fixed_points(wonly):
    for U in choice_sets(wonly):
        assert canonical_choice(wonly, U) == U
