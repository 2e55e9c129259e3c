"""Weighted isomorphism and spectral equivalence under a rule."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional

from .dynamics import Orbit, Rule, orbit, step
from .graph import Graph, degrees

__all__ = ["isomorphic", "strong_equiv", "weak_equiv", "same_attractor", "AttractorComparison"]


def _signature(g: Graph, v: str, deg) -> tuple:
    # isomorphism invariants of a vertex; weights compared as canonical text
    outs = Counter(str(w) for u, w in g.successors(v).items() if u != v)
    ins = Counter(str(w) for u, w in g.predecessors(v).items() if u != v)
    return (deg[v], str(g.loop(v)), tuple(sorted(outs.items())), tuple(sorted(ins.items())))


def isomorphic(g: Graph, h: Graph) -> Optional[dict]:
    """A weight-preserving bijection V(g) -> V(h), or None.

    Backtracking over candidates whose degree triple, loop weight and
    in/out weight multisets agree.
    """
    if g.n != h.n or len(g.weights) != len(h.weights):
        return None
    dg, dh = degrees(g), degrees(h)
    sig_g = {v: _signature(g, v, dg) for v in g.labels}
    sig_h = {v: _signature(h, v, dh) for v in h.labels}
    if Counter(sig_g.values()) != Counter(sig_h.values()):
        return None
    cands = {v: [u for u in h.labels if sig_h[u] == sig_g[v]] for v in g.labels}
    # most constrained first
    order = sorted(g.labels, key=lambda v: (len(cands[v]), g.labels.index(v)))
    mapping: dict = {}
    used: set = set()

    def consistent(v, u) -> bool:
        for x, y in mapping.items():
            if g.weight(v, x) != h.weight(u, y) or g.weight(x, v) != h.weight(y, u):
                return False
        return True

    def search(k: int) -> bool:
        if k == len(order):
            return True
        v = order[k]
        for u in cands[v]:
            if u in used or not consistent(v, u):
                continue
            mapping[v] = u
            used.add(u)
            if search(k + 1):
                return True
            del mapping[v]
            used.discard(u)
        return False

    if search(0):
        return {v: mapping[v] for v in g.labels}
    return None


def strong_equiv(rule: Rule, g: Graph, h: Graph) -> bool:
    """One-step reductions under the rule are isomorphic."""
    return isomorphic(step(rule, g), step(rule, h)) is not None


def weak_equiv(rule: Rule, g: Graph, h: Graph, bound: Optional[int] = None) -> Optional[tuple[int, int]]:
    """Least (m, k) in lexicographic order with the m-th orbit graph of g
    isomorphic to the k-th orbit graph of h; None if no such pair.

    Index 0 is the graph itself.  ``bound`` caps the orbit lengths and
    defaults to the larger vertex count.
    """
    if bound is None:
        bound = max(g.n, h.n)
    og = orbit(rule, g, bound).graphs
    oh = orbit(rule, h, bound).graphs
    for m, a in enumerate(og):
        for k, b in enumerate(oh):
            if isomorphic(a, b) is not None:
                return m, k
    return None


@dataclass(frozen=True)
class AttractorComparison:
    same: bool
    orbit_g: Orbit
    orbit_h: Orbit
    bijection: Optional[dict]

    def __bool__(self):
        return self.same

    @property
    def attractors(self) -> tuple[Graph, Graph]:
        return self.orbit_g.attractor, self.orbit_h.attractor


def same_attractor(rule: Rule, g: Graph, h: Graph) -> AttractorComparison:
    og, oh = orbit(rule, g), orbit(rule, h)
    b = isomorphic(og.attractor, oh.attractor)
    return AttractorComparison(b is not None, og, oh, b)
