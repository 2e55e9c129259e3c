"""Isospectral graph reductions, their attractors, and spectral equivalence."""

from importlib import resources

from .algebra import LAMBDA, GaussianRational, Polynomial, RatFunc, Root, evaluate, normalize, roots
from .dynamics import TAU1, TAU2, TAU3, Orbit, Rule, apply_rule, is_attractor, orbit, parse_rule, step, uniformity
from .equivalence import isomorphic, same_attractor, strong_equiv, weak_equiv
from .errors import *  # noqa: F401,F403
from .graph import Graph, betweenness, degrees, is_structural, nonloop_cycle_avoiding
from .reduction import branch_reduce, eliminate, reduce_to, remove_vertex
from .spectra import char_det, spectrum, verify_reduction_identity
from .weightlang import parse_graph, parse_weight, print_weight, read_graph, serialize_graph

__version__ = "0.1.0"

FIXTURES = ("G", "H", "A1", "A2", "hub11", "empty2")


def fixture_path(name: str):
    """Path of a bundled example graph document (``G``, ``H``, ``A1``, ...)."""
    return resources.files(__name__).joinpath("data", f"{name}.net")


def load_fixture(name: str) -> Graph:
    return parse_graph(fixture_path(name).read_text(encoding="utf-8"))
