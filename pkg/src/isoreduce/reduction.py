"""Isospectral reduction onto a vertex subset.

Two routes compute the same reduced graph:

* :func:`reduce_to` removes the complement one vertex at a time.  Each
  removal of v updates ``w(i, j) += w(i, v) w(v, j) / (λ - w(v, v))``.
  This is the normative route and works for any nonempty subset.
* :func:`branch_reduce` sums branch weights over all paths whose interior
  lies outside S.  It requires a structural S and serves as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .algebra import LAMBDA, RatFunc
from .errors import DivisionByLambda, NotStructural
from .graph import Graph, is_structural

__all__ = ["Elimination", "remove_vertex", "eliminate", "reduce_to", "branch_reduce"]


def _remove(g: Graph, v: str, prefix=()) -> tuple[Graph, RatFunc]:
    if v not in g:
        raise KeyError(f"vertex {v!r} not in graph")
    loop = g.loop(v)
    gap = LAMBDA - loop
    if not gap:
        raise DivisionByLambda(v, prefix)
    factor = gap.inverse()
    ws = {(a, b): w for (a, b), w in g.weights.items() if a != v and b != v}
    ins = [(i, w) for i, w in g.predecessors(v).items() if i != v]
    outs = [(j, w) for j, w in g.successors(v).items() if j != v]
    for i, w_iv in ins:
        scaled = w_iv * factor
        for j, w_vj in outs:
            new = ws.get((i, j), 0) + scaled * w_vj
            if new:
                ws[(i, j)] = new
            else:
                ws.pop((i, j), None)
    labels = tuple(x for x in g.labels if x != v)
    return Graph._build(labels, ws, g.undirected, g.name), loop


def remove_vertex(g: Graph, v) -> Graph:
    """Isospectrally remove one vertex.

    Raises DivisionByLambda when the loop weight at v is identically λ.
    """
    return _remove(g, str(v))[0]


@dataclass(frozen=True)
class Elimination:
    """A reduced graph plus the loop weight of each removed vertex at the
    moment it was removed, in removal order."""

    graph: Graph
    removed: tuple  # ((vertex, loop weight), ...)

    @property
    def order(self) -> tuple:
        return tuple(v for v, _ in self.removed)


def eliminate(g: Graph, S: Iterable, order: Optional[Sequence] = None) -> Elimination:
    """Reduce g onto S by sequential removal, recording removed loop weights.

    ``order`` fixes the removal order of V \\ S (default: label order).
    """
    keep = {str(v) for v in S}
    if not keep:
        raise ValueError("cannot reduce onto an empty vertex set")
    unknown = keep - set(g.labels)
    if unknown:
        raise KeyError(f"vertices not in graph: {sorted(unknown)}")
    drop = [v for v in g.labels if v not in keep]
    if order is not None:
        order = [str(v) for v in order]
        if sorted(order) != sorted(drop):
            raise ValueError("removal order must be a permutation of the complement of S")
        drop = order
    removed = []
    cur = g
    for v in drop:
        cur, loop = _remove(cur, v, [r for r, _ in removed])
        removed.append((v, loop))
    return Elimination(cur, tuple(removed))


def reduce_to(g: Graph, S: Iterable, order: Optional[Sequence] = None) -> Graph:
    """Isospectral reduction of g onto the vertex set S.

    The result does not depend on ``order`` whenever every removal is
    defined.
    """
    return eliminate(g, S, order).graph


def _branch_sums(g: Graph, S: set) -> dict:
    # factor 1/(λ - w(v, v)) for each interior vertex
    inv_gap = {v: (LAMBDA - g.loop(v)).inverse() for v in g.labels if v not in S}
    out: dict = {}

    def walk(start, v, acc, visited):
        for j, w in g.successors(v).items():
            if j in S:
                key = (start, j)
                out[key] = out.get(key, 0) + acc * w
            elif j not in visited and j != v:
                visited.add(j)
                walk(start, j, acc * w * inv_gap[j], visited)
                visited.discard(j)

    for i in g.labels:
        if i in S:
            for j, w in g.successors(i).items():
                if j in S:
                    out[(i, j)] = out.get((i, j), 0) + w
                else:
                    walk(i, j, w * inv_gap[j], {j})
    return out


def branch_reduce(g: Graph, S: Iterable) -> Graph:
    """Reduced graph from the branch-sum formula.

    Entry (i, j) is the sum over branches i -> ... -> j with distinct
    interior vertices outside S of
    ``w(i0, i1) * prod w(il, il+1) / (λ - w(il, il))``.
    """
    S = {str(v) for v in S}
    check = is_structural(g, S)
    if not check:
        raise NotStructural(f"not a structural set ({check.reason}: {check.witness})")
    sums = _branch_sums(g, S)
    ws = {k: w for k, w in sums.items() if w}
    labels = tuple(v for v in g.labels if v in S)
    return Graph._build(labels, ws, g.undirected, g.name)
