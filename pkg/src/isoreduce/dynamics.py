"""Rule-driven reduction as a dynamical system on graphs.

A :class:`Rule` selects the vertices whose characteristic value clears a
fraction of the graph-wide maximum.  :func:`step` reduces onto the
selection; :func:`orbit` iterates until the rule selects every vertex (a
fixed point) or one vertex remains.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import EmptySelection, StepCapExceeded
from .graph import (
    CHARACTERISTICS,
    DEFAULT_PAIR_CONVENTION,
    CharacteristicVector,
    Graph,
    characteristic,
)
from .reduction import reduce_to

__all__ = [
    "Rule",
    "TAU1",
    "TAU2",
    "TAU3",
    "BUILTIN_RULES",
    "parse_rule",
    "apply_rule",
    "step",
    "Orbit",
    "AttractorReport",
    "orbit",
    "is_attractor",
    "uniformity",
]


@dataclass(frozen=True)
class Rule:
    """Select v when ``value(v) > fraction * max`` (strict) or ``>=``."""

    name: str
    characteristic: str
    fraction: Fraction
    strict: bool
    convention: str = DEFAULT_PAIR_CONVENTION

    def __post_init__(self):
        if self.characteristic not in CHARACTERISTICS:
            raise ValueError(f"unknown characteristic {self.characteristic!r}")
        object.__setattr__(self, "fraction", Fraction(self.fraction))

    def values(self, g: Graph) -> CharacteristicVector:
        return characteristic(g, self.characteristic, self.convention)

    @property
    def spec(self) -> str:
        return f"{self.characteristic}:{self.fraction}:{'gt' if self.strict else 'ge'}"


TAU1 = Rule("tau1", "degree", Fraction(1, 2), strict=True)
TAU2 = Rule("tau2", "indegree", Fraction(1, 2), strict=False)
TAU3 = Rule("tau3", "indegree", Fraction(1, 4), strict=True)
BUILTIN_RULES = {"tau1": TAU1, "tau2": TAU2, "tau3": TAU3}
_ALIASES = {"τ1": "tau1", "τ2": "tau2", "τ3": "tau3", "t1": "tau1", "t2": "tau2", "t3": "tau3"}


def parse_rule(text: str) -> Rule:
    """``tau1``/``tau2``/``tau3`` or ``characteristic:fraction:gt|ge``."""
    key = text.strip().lower()
    key = _ALIASES.get(key, key)
    if key in BUILTIN_RULES:
        return BUILTIN_RULES[key]
    parts = key.split(":")
    if len(parts) != 3:
        raise ValueError(f"bad rule {text!r}; expected tau1|tau2|tau3 or char:frac:gt|ge")
    char, frac, cmp = parts
    if cmp not in ("gt", "ge"):
        raise ValueError(f"bad comparison {cmp!r}; expected gt or ge")
    try:
        fraction = Fraction(frac)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"bad fraction {frac!r}") from None
    return Rule(key, char, fraction, strict=(cmp == "gt"))


def _select(rule: Rule, vec: CharacteristicVector) -> frozenset:
    threshold = rule.fraction * vec.maximum()
    if rule.strict:
        return frozenset(v for v, x in vec.values.items() if x > threshold)
    return frozenset(v for v, x in vec.values.items() if x >= threshold)


def apply_rule(rule: Rule, g: Graph) -> frozenset:
    """Vertices of g selected by the rule; EmptySelection if none."""
    if g.n == 0:
        raise EmptySelection("graph has no vertices")
    sel = _select(rule, rule.values(g))
    if not sel:
        raise EmptySelection(f"rule {rule.name} selects no vertex of {g.name or 'graph'}")
    return sel


def step(rule: Rule, g: Graph) -> Graph:
    return reduce_to(g, apply_rule(rule, g))


@dataclass(frozen=True)
class AttractorReport:
    attractor: Graph
    steps: int
    uniform: bool
    values: CharacteristicVector


@dataclass(frozen=True)
class Orbit:
    """``graphs[k + 1]`` is the reduction of ``graphs[k]`` onto
    ``selections[k]``; the last selection is the fixed-point check."""

    rule: Rule
    graphs: tuple
    selections: tuple
    terminated: str  # fixed-point | single-vertex | step-cap | error
    report: Optional[AttractorReport] = None

    @property
    def steps(self) -> int:
        return len(self.graphs) - 1

    @property
    def attractor(self) -> Graph:
        return self.graphs[-1]


def orbit(rule: Rule, g: Graph, max_steps: Optional[int] = None) -> Orbit:
    """Iterate ``step`` from g to its attractor.

    The orbit needs at most |V(g)| steps since each non-terminal step
    removes a vertex.  ``max_steps`` defaults to that bound; hitting it
    raises StepCapExceeded carrying the partial orbit.  Errors from the rule
    or a removal propagate with the partial orbit attached as ``.orbit``.
    """
    if max_steps is None:
        max_steps = g.n
    graphs = [g]
    selections = []
    cur = g
    while True:
        if cur.n == 1:
            selections.append(frozenset(cur.labels))
            reason = "single-vertex"
            break
        try:
            sel = apply_rule(rule, cur)
        except Exception as exc:
            exc.orbit = Orbit(rule, tuple(graphs), tuple(selections), "error")
            raise
        selections.append(sel)
        if len(sel) == cur.n:
            reason = "fixed-point"
            break
        if len(graphs) - 1 >= max_steps:
            partial = Orbit(rule, tuple(graphs), tuple(selections), "step-cap")
            raise StepCapExceeded(
                f"orbit did not settle within {max_steps} steps from {g.n} vertices", partial
            )
        try:
            cur = reduce_to(cur, sel)
        except Exception as exc:
            exc.orbit = Orbit(rule, tuple(graphs), tuple(selections), "error")
            raise
        graphs.append(cur)
    vec = rule.values(cur)
    report = AttractorReport(cur, len(graphs) - 1, vec.is_uniform(), vec)
    return Orbit(rule, tuple(graphs), tuple(selections), reason, report)


def is_attractor(rule: Rule, g: Graph) -> bool:
    if g.n == 1:
        return True
    vec = rule.values(g)
    return len(_select(rule, vec)) == g.n


def uniformity(name: str, g: Graph, convention: str = DEFAULT_PAIR_CONVENTION) -> tuple[bool, CharacteristicVector]:
    """Whether every vertex shares the characteristic value, plus the values."""
    vec = characteristic(g, name, convention)
    return vec.is_uniform(), vec
