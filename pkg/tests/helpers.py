"""Random graph generators and brute-force oracles shared by the tests."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from isoreduce import Graph, Polynomial, RatFunc
from isoreduce.algebra import normalize
from isoreduce.graph import is_structural


def random_constant(rng: random.Random) -> Fraction:
    num = rng.choice([-3, -2, -1, 1, 1, 1, 2, 3, 5])
    return Fraction(num, rng.choice([1, 1, 1, 2, 3]))


def random_proper(rng: random.Random) -> RatFunc:
    """Random weight with deg(num) <= deg(den), so no loop can become λ."""
    kind = rng.random()
    if kind < 0.5:
        return RatFunc.constant(random_constant(rng))
    if kind < 0.8:
        # a / (λ - b)
        return normalize(Polynomial([random_constant(rng)]), Polynomial([-rng.randint(-3, 3), 1]))
    # (a λ + b) / (λ^2 + c λ + d)
    num = Polynomial([random_constant(rng), random_constant(rng)])
    den = Polynomial([rng.randint(-4, 4), rng.randint(-2, 2), 1])
    return normalize(num, den)


def random_graph(rng: random.Random, n: int, density: float = 0.4, constant: bool = False,
                 loop_density: float = 0.4) -> Graph:
    labels = [str(i) for i in range(1, n + 1)]
    ws = {}
    for u in labels:
        for v in labels:
            p = loop_density if u == v else density
            if rng.random() < p:
                ws[(u, v)] = RatFunc.constant(random_constant(rng)) if constant else random_proper(rng)
    return Graph(labels, ws)


def random_structural_set(rng: random.Random, g: Graph, max_size: int | None = None) -> set:
    labels = list(g.labels)
    max_size = len(labels) - 1 if max_size is None else max_size
    for _ in range(50):
        k = rng.randint(1, max(1, max_size))
        S = set(rng.sample(labels, k))
        if is_structural(g, S):
            return S
    v = rng.choice(labels)
    return set(labels) - {v}


def leibniz_det(m):
    """Determinant by the permutation expansion (exact scalars)."""
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inv % 2 else 1
        for i in range(n):
            term = term * m[i][perm[i]]
            if not term:
                break
        total = total + term
    return total


def brute_betweenness(g: Graph, convention: str) -> dict:
    """Enumerate every simple path, keep the shortest per (s, t), count interiors."""
    adj = {v: set() for v in g.labels}
    for (u, v) in g.weights:
        if u != v:
            adj[u].add(v)
            if g.undirected:
                adj[v].add(u)

    def paths(s, t):
        out = []
        stack = [(s, [s])]
        while stack:
            v, path = stack.pop()
            for w in adj[v]:
                if w == t:
                    out.append(path + [w])
                elif w not in path:
                    stack.append((w, path + [w]))
        return out

    count = {v: 0 for v in g.labels}
    labels = list(g.labels)
    for s in labels:
        for t in labels:
            if s == t:
                continue
            if convention == "unordered" and g.undirected and labels.index(s) > labels.index(t):
                continue
            ps = paths(s, t)
            if not ps:
                continue
            shortest = min(len(p) for p in ps)
            for p in ps:
                if len(p) == shortest:
                    for v in p[1:-1]:
                        count[v] += 1
    return count
