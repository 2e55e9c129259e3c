"""Weighted digraphs with rational-function weights and node characteristics."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple, Optional

from .algebra import LAMBDA, RatFunc, to_scalar

__all__ = [
    "Graph",
    "DegreeTriple",
    "CharacteristicVector",
    "StructuralCheck",
    "CHARACTERISTICS",
    "PAIR_CONVENTIONS",
    "DEFAULT_PAIR_CONVENTION",
    "degrees",
    "betweenness",
    "characteristic",
    "nonloop_cycle_avoiding",
    "is_structural",
]

CHARACTERISTICS = ("indegree", "outdegree", "degree", "betweenness")
PAIR_CONVENTIONS = ("ordered", "unordered")
# Calibrated against the 11-node degree-4 network: only the unordered sum
# reproduces 1/27/66 in absolute terms (ordered doubles every value).
DEFAULT_PAIR_CONVENTION = "unordered"

_ZERO_W = RatFunc.constant(0)


def _as_weight(w) -> RatFunc:
    if isinstance(w, RatFunc):
        return w
    if isinstance(w, str):
        from .weightlang import parse_weight

        return parse_weight(w)
    return RatFunc.constant(to_scalar(w))


class Graph:
    """Vertex-labelled digraph G = (V, E, w).

    ``weights`` maps ordered label pairs to nonzero :class:`RatFunc` values;
    an absent pair has weight 0.  ``undirected`` records the input
    convention: such graphs carry both arcs of every edge, traverse edges
    either way for shortest paths, and report neighbour counts as degrees.

    Equality compares the vertex set, the weight map and the undirected
    flag; label order and ``name`` are presentation only.
    """

    __slots__ = ("_labels", "_weights", "undirected", "name", "_out", "_in", "_hash")

    def __init__(
        self,
        labels: Iterable,
        weights: Mapping | None = None,
        undirected: bool = False,
        name: str = "",
    ):
        labels = tuple(str(v) for v in labels)
        if len(set(labels)) != len(labels):
            raise ValueError("vertex labels must be unique")
        known = set(labels)
        ws = {}
        for (u, v), w in (weights or {}).items():
            u, v = str(u), str(v)
            if u not in known or v not in known:
                raise KeyError(f"arc ({u}, {v}) references an unknown vertex")
            w = _as_weight(w)
            if w:
                ws[(u, v)] = w
        self._init(labels, ws, undirected, name)

    def _init(self, labels, ws, undirected, name):
        self._labels = labels
        self._weights = ws
        self.undirected = bool(undirected)
        self.name = name
        self._hash = None
        out = {v: {} for v in labels}
        inc = {v: {} for v in labels}
        for (u, v), w in ws.items():
            out[u][v] = w
            inc[v][u] = w
        self._out = out
        self._in = inc

    @classmethod
    def _build(cls, labels: tuple, ws: dict, undirected: bool, name: str = "") -> "Graph":
        # trusted constructor: labels unique, weights canonical and nonzero
        g = cls.__new__(cls)
        g._init(labels, ws, undirected, name)
        return g

    @classmethod
    def from_edges(
        cls,
        labels: Iterable,
        edges: Iterable[tuple],
        undirected: bool = False,
        name: str = "",
    ) -> "Graph":
        """Build from ``(u, v, weight)`` triples.

        In undirected mode each edge yields both arcs with equal weight.
        """
        ws = {}
        for u, v, w in edges:
            ws[(u, v)] = w
            if undirected:
                ws[(v, u)] = w
        return cls(labels, ws, undirected=undirected, name=name)

    # -- access --------------------------------------------------------------

    @property
    def labels(self) -> tuple:
        return self._labels

    @property
    def weights(self) -> Mapping:
        return MappingProxyType(self._weights)

    @property
    def n(self) -> int:
        return len(self._labels)

    def __len__(self):
        return len(self._labels)

    def __contains__(self, v):
        return v in self._out

    def weight(self, u, v) -> RatFunc:
        return self._weights.get((u, v), _ZERO_W)

    def loop(self, v) -> RatFunc:
        return self._weights.get((v, v), _ZERO_W)

    def successors(self, v) -> Mapping:
        return MappingProxyType(self._out[v])

    def predecessors(self, v) -> Mapping:
        return MappingProxyType(self._in[v])

    def arcs(self) -> list[tuple]:
        """``(u, v, w)`` in label order."""
        pos = {v: i for i, v in enumerate(self._labels)}
        items = sorted(self._weights.items(), key=lambda kv: (pos[kv[0][0]], pos[kv[0][1]]))
        return [(u, v, w) for (u, v), w in items]

    def matrix(self) -> list[list[RatFunc]]:
        """Weighted adjacency matrix in label order."""
        return [[self.weight(u, v) for v in self._labels] for u in self._labels]

    def is_symmetric(self) -> bool:
        return all(self._weights.get((v, u)) == w for (u, v), w in self._weights.items())

    def relabel(self, mapping: Mapping) -> "Graph":
        labels = tuple(str(mapping.get(v, v)) for v in self._labels)
        ws = {(str(mapping.get(u, u)), str(mapping.get(v, v))): w for (u, v), w in self._weights.items()}
        return Graph(labels, ws, undirected=self.undirected, name=self.name)

    def renamed(self, name: str) -> "Graph":
        return Graph._build(self._labels, self._weights, self.undirected, name)

    # -- comparison ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.undirected == other.undirected
            and set(self._labels) == set(other._labels)
            and self._weights == other._weights
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.undirected, frozenset(self._labels), frozenset(self._weights.items())))
        return self._hash

    def __repr__(self):
        name = f"{self.name!r}, " if self.name else ""
        kind = "undirected, " if self.undirected else ""
        return f"<Graph {name}{kind}{self.n} vertices, {len(self._weights)} arcs>"


# ---------------------------------------------------------------------------
# Degrees and betweenness
# ---------------------------------------------------------------------------

class DegreeTriple(NamedTuple):
    indeg: int
    outdeg: int
    total: int


def degrees(g: Graph) -> dict[str, DegreeTriple]:
    """Degree triple per vertex.

    Directed: a loop counts once towards indegree and once towards
    outdegree.  Undirected: all three fields equal the neighbour count, a
    loop counting once.
    """
    out = {}
    for v in g.labels:
        if g.undirected:
            k = len(set(g._out[v]) | set(g._in[v]))
            out[v] = DegreeTriple(k, k, k)
        else:
            i, o = len(g._in[v]), len(g._out[v])
            out[v] = DegreeTriple(i, o, i + o)
    return out


def _neighbours(g: Graph) -> dict[str, list[str]]:
    # loops never lie on a path with distinct vertices
    adj = {}
    for v in g.labels:
        nb = set(g._out[v])
        if g.undirected:
            nb |= set(g._in[v])
        nb.discard(v)
        adj[v] = sorted(nb, key=g.labels.index)
    return adj


def _bfs_counts(adj, s):
    dist = {s: 0}
    sigma = {s: 1}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                sigma[w] = 0
                queue.append(w)
            if dist[w] == dist[u] + 1:
                sigma[w] += sigma[u]
    return dist, sigma


def betweenness(g: Graph, convention: str = DEFAULT_PAIR_CONVENTION) -> dict[str, int]:
    """Raw shortest-path counts through each vertex.

    ``g(v)`` sums sigma_st(v), the number of hop-count shortest s->t paths
    with v as an interior vertex.  ``ordered`` sums over all ordered pairs
    (s, t).  ``unordered`` identifies a path with its reversal when the
    graph is undirected, halving the ordered sum; for directed graphs the
    two conventions coincide.
    """
    if convention not in PAIR_CONVENTIONS:
        raise ValueError(f"unknown pair convention {convention!r}")
    adj = _neighbours(g)
    info = {s: _bfs_counts(adj, s) for s in g.labels}
    total = {v: 0 for v in g.labels}
    for s in g.labels:
        dist_s, sigma_s = info[s]
        for t, d_st in dist_s.items():
            if t == s:
                continue
            for v in g.labels:
                if v == s or v == t or v not in dist_s:
                    continue
                dist_v, sigma_v = info[v]
                if t in dist_v and dist_s[v] + dist_v[t] == d_st:
                    total[v] += sigma_s[v] * sigma_v[t]
    if convention == "unordered" and g.undirected:
        total = {v: c // 2 for v, c in total.items()}
    return total


@dataclass(frozen=True)
class CharacteristicVector:
    name: str
    values: dict = field(compare=True)

    def maximum(self):
        return max(self.values.values())

    def is_uniform(self) -> bool:
        return len(set(self.values.values())) <= 1


def characteristic(g: Graph, name: str, convention: str = DEFAULT_PAIR_CONVENTION) -> CharacteristicVector:
    if name == "betweenness":
        vals = betweenness(g, convention)
    elif name in ("indegree", "outdegree", "degree"):
        idx = {"indegree": 0, "outdegree": 1, "degree": 2}[name]
        vals = {v: t[idx] for v, t in degrees(g).items()}
    else:
        raise ValueError(f"unknown characteristic {name!r}; expected one of {CHARACTERISTICS}")
    return CharacteristicVector(name, {v: Fraction(x) for v, x in vals.items()})


# ---------------------------------------------------------------------------
# Structural sets
# ---------------------------------------------------------------------------

def nonloop_cycle_avoiding(g: Graph, S: Iterable) -> Optional[tuple]:
    """A cycle of length >= 2 inside the subgraph induced on V \\ S.

    Returned as ``(v0, v1, ..., v0)``, or None when that subgraph has no
    such cycle.
    """
    S = {str(v) for v in S}
    rest = [v for v in g.labels if v not in S]
    keep = set(rest)
    adj = {v: [w for w in g._out[v] if w in keep and w != v] for v in rest}
    state = dict.fromkeys(rest, 0)  # 0 new, 1 on stack, 2 done
    for root in rest:
        if state[root]:
            continue
        stack = [(root, iter(adj[root]))]
        path = [root]
        state[root] = 1
        while stack:
            v, it = stack[-1]
            for w in it:
                if state[w] == 1:
                    i = path.index(w)
                    return tuple(path[i:]) + (w,)
                if state[w] == 0:
                    state[w] = 1
                    stack.append((w, iter(adj[w])))
                    path.append(w)
                    break
            else:
                state[v] = 2
                stack.pop()
                path.pop()
    return None


@dataclass(frozen=True)
class StructuralCheck:
    """Outcome of :func:`is_structural`; truthy iff the set is structural.

    ``reason`` is one of ``ok``, ``empty``, ``unknown-vertex``, ``cycle``,
    ``loop-lambda`` or ``loop-lambda0``; ``witness`` is the offending cycle,
    vertex or label.
    """

    ok: bool
    reason: str
    witness: object = None

    def __bool__(self):
        return self.ok


def is_structural(g: Graph, S: Iterable, lambda0=None) -> StructuralCheck:
    """Check that S is a structural set of g.

    With ``lambda0`` given, additionally require that no excluded vertex
    has loop weight equal to that constant.
    """
    S = {str(v) for v in S}
    if not S:
        return StructuralCheck(False, "empty")
    unknown = S - set(g.labels)
    if unknown:
        return StructuralCheck(False, "unknown-vertex", sorted(unknown)[0])
    cycle = nonloop_cycle_avoiding(g, S)
    if cycle is not None:
        return StructuralCheck(False, "cycle", cycle)
    c0 = None if lambda0 is None else RatFunc.constant(to_scalar(lambda0))
    for v in g.labels:
        if v in S:
            continue
        w = g.loop(v)
        if w == LAMBDA:
            return StructuralCheck(False, "loop-lambda", v)
        if c0 is not None and w == c0:
            return StructuralCheck(False, "loop-lambda0", v)
    return StructuralCheck(True, "ok")
