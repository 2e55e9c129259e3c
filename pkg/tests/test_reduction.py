import itertools
import random

import pytest
from helpers import random_graph, random_structural_set

from isoreduce import LAMBDA, Graph, parse_weight
from isoreduce.errors import DivisionByLambda, NotStructural
from isoreduce.graph import is_structural
from isoreduce.reduction import branch_reduce, eliminate, reduce_to, remove_vertex


def test_remove_4_gives_H(G, H):
    R = remove_vertex(G, "4")
    assert R == H
    changed = {k for k in R.weights if R.weights[k] != G.weights.get(k)}
    assert changed == {("1", "1")}
    assert G.weight("1", "1") == parse_weight("1/λ")
    assert R.weight("1", "1") == parse_weight("2/λ")


def test_remove_isolated_vertex():
    g = Graph(["a", "b", "c"], {("a", "b"): 3, ("b", "b"): parse_weight("1/λ")})
    r = remove_vertex(g, "c")
    assert r == Graph(["a", "b"], {("a", "b"): 3, ("b", "b"): parse_weight("1/λ")})


def test_remove_lambda_loop():
    g = Graph(["a", "v"], {("v", "v"): LAMBDA, ("a", "v"): 1, ("v", "a"): 1})
    with pytest.raises(DivisionByLambda) as exc:
        remove_vertex(g, "v")
    assert exc.value.vertex == "v"


def test_remove_general_loop_formula():
    # w(v,v) = c: new weight w(i,j) + w(i,v) w(v,j) / (λ - c)
    g = Graph(["i", "v"], {("i", "v"): 2, ("v", "i"): 3, ("v", "v"): 5, ("i", "i"): 1})
    assert remove_vertex(g, "v").weight("i", "i") == parse_weight("(λ+1)/(λ-5)")  # 1 + 6/(λ-5)


def test_cancellation_drops_edge():
    g = Graph(["a", "b", "v"], {("a", "b"): parse_weight("-1/λ"), ("a", "v"): 1, ("v", "b"): 1})
    r = remove_vertex(g, "v")
    assert not r.weights


def test_reduce_to_attractors(G, H, A1, A2):
    assert reduce_to(G, {"1", "2", "3"}) == A1
    assert reduce_to(H, {"2", "3"}) == A2
    assert reduce_to(G, set(G.labels)) == G


def test_reduce_to_prefix_in_error():
    # removing a makes the loop at b equal to λ
    g = Graph(["a", "b", "c"], {("a", "b"): 1, ("b", "a"): LAMBDA ** 2, ("c", "b"): 1})
    with pytest.raises(DivisionByLambda) as exc:
        reduce_to(g, {"c"}, order=["a", "b"])
    assert exc.value.vertex == "b" and exc.value.prefix == ("a",)


def test_reduce_to_rejects_empty():
    with pytest.raises(ValueError):
        reduce_to(Graph(["a"]), set())


def test_elimination_records_loops(G):
    e = eliminate(G, {"1", "2", "3"})
    assert e.order == ("4", "5", "6")
    assert all(w == 0 for _, w in e.removed)


def test_branch_reduce_examples(G, H, A1):
    assert branch_reduce(G, {"1", "2", "3", "5", "6"}) == H
    assert branch_reduce(G, {"1", "2", "3"}) == A1
    assert branch_reduce(G, set(G.labels)) == G


def test_branch_reduce_needs_structural(G):
    with pytest.raises(NotStructural):
        branch_reduce(G, {"1"})


def test_branch_reduce_long_branch():
    # chain a -> x -> y -> b with interior loops
    g = Graph(["a", "x", "y", "b"], {("a", "x"): 2, ("x", "y"): 3, ("y", "b"): 5, ("x", "x"): 1})
    r = branch_reduce(g, {"a", "b"})
    assert r.weight("a", "b") == parse_weight("30/(λ^2-λ)")
    assert r == reduce_to(g, {"a", "b"})


def test_commutativity_random():
    rng = random.Random(21)
    for _ in range(30):
        g = random_graph(rng, rng.randint(4, 7))
        drop = rng.sample(list(g.labels), 3)
        keep = set(g.labels) - set(drop)
        results = {reduce_to(g, keep, order) for order in itertools.permutations(drop)}
        assert len(results) == 1


def test_nested_reductions_compose():
    rng = random.Random(22)
    for _ in range(20):
        g = random_graph(rng, rng.randint(3, 7))
        labels = list(g.labels)
        S2 = set(rng.sample(labels, rng.randint(2, len(labels))))
        S1 = set(rng.sample(sorted(S2), rng.randint(1, len(S2))))
        assert reduce_to(reduce_to(g, S2), S1) == reduce_to(g, S1)


def test_branch_agrees_with_elimination_random():
    rng = random.Random(23)
    for _ in range(40):
        g = random_graph(rng, rng.randint(2, 7))
        S = random_structural_set(rng, g)
        assert branch_reduce(g, S) == reduce_to(g, S)


def test_vertex_count():
    rng = random.Random(24)
    for _ in range(20):
        g = random_graph(rng, rng.randint(1, 7))
        S = set(rng.sample(list(g.labels), rng.randint(1, g.n)))
        assert reduce_to(g, S).n == len(S)


def test_structural_persistence_constant_weights():
    rng = random.Random(25)
    for _ in range(40):
        g = random_graph(rng, rng.randint(3, 7), constant=True)
        S = random_structural_set(rng, g, max_size=g.n - 2)
        extra = [v for v in g.labels if v not in S]
        Sp = S | set(rng.sample(extra, rng.randint(1, len(extra) - 1)))
        assert is_structural(g, Sp)
        assert is_structural(reduce_to(g, Sp), S)


def test_reduction_preserves_proper_weights():
    rng = random.Random(26)
    for _ in range(20):
        g = random_graph(rng, rng.randint(2, 6))
        S = set(rng.sample(list(g.labels), rng.randint(1, g.n)))
        assert all(w.is_proper() for w in reduce_to(g, S).weights.values())
