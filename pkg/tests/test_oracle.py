import itertools
import json
import math

import pytest
from hypothesis import given, settings, strategies as st

from gtmatroid.graph import LimitExceededError, Multigraph
from gtmatroid.matroid import GroundElement as E, transversal_matroid
from gtmatroid.oracle import (
    SetSystem,
    Verdict,
    check_basis_exchange,
    check_rank_axioms,
    corpus,
    corpus_graphs,
    cross_validate,
    enumerate_bases,
    is_partial_transversal,
    small_connected_graphs,
    transversal_rank,
)


def primal(g):
    m = transversal_matroid(g)
    return SetSystem(m.ground, m.primal_presentation().sets)


def test_partial_transversal_examples(k2):
    sys = SetSystem("ab", [{"a"}, {"a"}])
    assert is_partial_transversal(sys, [])
    assert is_partial_transversal(sys, ["a"])
    assert not is_partial_transversal(sys, ["a", "b"])
    assert not is_partial_transversal(primal(k2), [E(1, 1), E(2, 1)])


def test_partial_transversal_needs_reassignment():
    sys = SetSystem("abc", [{"a", "b"}, {"a"}, {"b", "c"}])
    assert is_partial_transversal(sys, "abc")
    assert transversal_rank(sys) == 3


def test_set_system_rejects_foreign_elements():
    with pytest.raises(ValueError):
        SetSystem("ab", [{"z"}])
    with pytest.raises(ValueError):
        is_partial_transversal(SetSystem("ab", [{"a"}]), ["z"])


def test_enumerate_bases_k4(k4):
    bases = enumerate_bases(primal(k4))
    assert len(bases) == 918
    assert math.comb(12, 6) == 924
    assert all(len(b) == 6 for b in bases)


def test_enumerate_bases_k2(k2):
    assert set(enumerate_bases(primal(k2))) == {frozenset({E(1, 1)}), frozenset({E(2, 1)})}


def test_enumerate_bases_k6_dual(k6):
    m = transversal_matroid(k6, {5, 6})
    assert len(enumerate_bases(SetSystem(m.ground, m.dual_presentation().sets))) == 36000


def test_enumerate_bases_limits():
    with pytest.raises(LimitExceededError):
        enumerate_bases(SetSystem(range(21), [set(range(21))]))
    # rank 10 on 20 elements is the largest sweep still allowed
    assert len(enumerate_bases(SetSystem(range(20), [set(range(20))] * 10))) == math.comb(20, 10)


def test_rank_axioms_examples(k2, loop, k3):
    for g in (k2, loop):
        m = transversal_matroid(g)
        v = check_rank_axioms(m.rank, m.ground)
        assert v.passed and v.details["subsets"] == 4
    assert [transversal_matroid(loop).rank(x) for x in ([], [E(1, 1)], [E(1, 2)], [E(1, 1), E(1, 2)])] == [0, 1, 1, 1]
    m = transversal_matroid(k3)
    v = check_rank_axioms(m.rank, m.ground)
    assert v.passed and v.details == {"subsets": 64, "pairs": 4096}


@pytest.mark.parametrize(
    "rank_fn, rule",
    [
        (lambda x: 1, "r(empty) = 0"),
        (lambda x: 2 * len(x), "0 <= r(X) <= |X|"),
        (lambda x: 1 if len(x) == 1 else 0, "X <= Y implies r(X) <= r(Y)"),
        (lambda x: 0 if len(x) < 2 else len(x), "r(X|Y) + r(X&Y) <= r(X) + r(Y)"),
    ],
)
def test_rank_axioms_report_counterexamples(rank_fn, rule):
    v = check_rank_axioms(rank_fn, "abc")
    assert not v.passed
    assert v.details["violated"] == rule
    assert v.witness is not None


def test_rank_axiom_size_limit():
    with pytest.raises(LimitExceededError):
        check_rank_axioms(len, range(11))


def test_basis_exchange(k2, k3):
    assert check_basis_exchange(enumerate_bases(primal(k2))).passed
    bases = enumerate_bases(primal(k3))
    assert len(bases) == 20
    assert check_basis_exchange(bases).passed
    # TM(K3) is uniform (all 20 triples), so dropping any one triple keeps
    # exchange intact; dropping two triples sharing a pair breaks it
    assert all(check_basis_exchange(bases[:i] + bases[i + 1:]).passed for i in range(20))
    gone = {frozenset({E(1, 1), E(1, 2), E(2, 1)}), frozenset({E(1, 1), E(1, 2), E(2, 2)})}
    broken = check_basis_exchange([b for b in bases if b not in gone])
    assert not broken.passed
    assert broken.witness == {"B1": ["1:1", "1:2", "3:1"], "B2": ["1:1", "2:1", "2:2"], "x": "3:1"}
    with pytest.raises(ValueError):
        check_basis_exchange([])
    assert not check_basis_exchange([{1}, {1, 2}]).passed


@pytest.mark.parametrize(
    "g, expected",
    [
        (Multigraph.from_edges(4, itertools.combinations(range(1, 5), 2)), "918"),
        (Multigraph.from_edges(2, [(1, 2)]), "2"),
        (Multigraph.from_edges(1, [(1, 1)]), "2"),
    ],
)
def test_cross_validate_examples(g, expected):
    v = cross_validate(g)
    assert v.passed
    d = v.details
    assert d["formula"] == d["dual_enumeration"] == d["direct_enumeration"] == expected
    assert d["self_dual"] is True


def test_verdict_json_shape(k2):
    d = cross_validate(k2, instance="K2").to_dict()
    assert list(d)[:3] == ["check", "instance", "pass"]
    assert "elapsed_ms" in d and "witness" not in d
    json.dumps(d)
    failing = Verdict("x", "y", False, {"subset": ["1:1"]}).to_dict()
    assert failing["witness"] == {"subset": ["1:1"]}


def test_connected_graph_census():
    # 1, 1, 2 and 6 connected simple graphs on 1..4 vertices
    sizes = [g.n for _, g in small_connected_graphs(4)]
    assert [sizes.count(n) for n in range(1, 5)] == [1, 1, 2, 6]


def test_corpus_shape():
    names = {name for name, _ in corpus_graphs()}
    assert {"K2_doubled", "loop", "double_loop", "K3_pendant"} <= names
    inst = corpus()
    assert any(i.name == "K6" and i.w == {5, 6} for i in inst)
    assert all(len(i.w) <= 2 for i in inst)
    assert len({i.label for i in inst}) == len(inst)
    assert any(g.loop_count for _, g in corpus_graphs() if _.startswith("random"))


@st.composite
def set_systems(draw):
    ground = list(range(draw(st.integers(1, 6))))
    family = draw(st.lists(st.sets(st.sampled_from(ground)), max_size=5))
    return SetSystem(ground, family)


@settings(max_examples=100)
@given(set_systems(), st.data())
def test_partial_transversals_closed_under_subsets(sys, data):
    x = data.draw(st.sets(st.sampled_from(sys.ground)))
    if is_partial_transversal(sys, x):
        for r in range(len(x)):
            for y in itertools.combinations(sorted(x), r):
                assert is_partial_transversal(sys, y)


@settings(max_examples=60)
@given(set_systems(), st.randoms())
def test_basis_count_ignores_family_order(sys, rnd):
    family = list(sys.family)
    rnd.shuffle(family)
    assert set(enumerate_bases(SetSystem(sys.ground, family))) == set(enumerate_bases(sys))


@settings(max_examples=60)
@given(set_systems())
def test_transversal_bases_satisfy_exchange(sys):
    assert check_basis_exchange(enumerate_bases(sys)).passed


@settings(max_examples=40)
@given(set_systems())
def test_transversal_rank_axioms(sys):
    def rank(x):
        return transversal_rank(SetSystem.restricted(x, sys.family))

    assert check_rank_axioms(rank, sys.ground).passed
