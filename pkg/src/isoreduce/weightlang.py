"""Text forms: weight expressions and graph documents.

Weight grammar (whitespace is ignored between tokens; ``lambda`` and ``L``
are synonyms for ``λ``)::

    expr  := sum | sum "/" sum
    sum   := ["-"|"+"] term (("+"|"-") term)*
    term  := coeff ("*"? var)? | var
    var   := ("λ" | "lambda" | "L") ("^" uint)?
    coeff := int ("/" uint)? "i"? | "(" sum ")"

A ``/`` directly followed by digits belongs to the coefficient, so
``1/2λ`` is half of lambda and ``λ+1/λ`` is ``(λ+1)/λ``.

Graph documents are line oriented::

    [graph]
    name = G
    undirected = false
    [vertices]
    1 2 3
    [edges]
    1 -> 2 : 1
    1 -> 1 : 1/λ

Undirected documents write edges as ``u -- v : expr``.  ``#`` starts a
comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import GaussianRational, Polynomial, RatFunc, normalize
from .errors import DuplicateEdge, LiteralZeroDenominator, ParseError, UnknownVertex
from .graph import Graph

__all__ = [
    "GraphDocument",
    "parse_weight",
    "print_weight",
    "parse_document",
    "parse_graph",
    "serialize_graph",
    "read_graph",
    "write_graph",
]

LAMBDA_CHAR = "λ"


class _WeightParser:
    def __init__(self, text: str, line: int | None = None, offset: int = 0):
        self.s = text
        self.i = 0
        self.line = line
        self.offset = offset

    def error(self, msg, pos=None, cls=ParseError):
        pos = self.i if pos is None else pos
        return cls(msg, column=pos + 1 + self.offset, line=self.line)

    def skip(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.skip()
        return self.s[self.i] if self.i < len(self.s) else ""

    def at_var(self) -> bool:
        self.skip()
        rest = self.s[self.i:]
        return rest[:1] in (LAMBDA_CHAR, "L") or rest.startswith("lambda")

    def uint(self) -> int:
        self.skip()
        m = re.compile(r"\d+").match(self.s, self.i)
        if not m:
            raise self.error("expected an unsigned integer")
        self.i = m.end()
        return int(m.group())

    def expr(self) -> RatFunc:
        num = self.sum()
        den = Polynomial.constant(1)
        den_pos = None
        if self.peek() == "/":
            self.i += 1
            self.skip()
            den_pos = self.i
            den = self.sum()
        if self.peek():
            raise self.error(f"unexpected {self.peek()!r}")
        if den.is_zero():
            raise self.error("denominator is identically zero", den_pos, LiteralZeroDenominator)
        return normalize(num, den)

    def sum(self) -> Polynomial:
        sign = 1
        c = self.peek()
        if c and c in "+-":
            sign = -1 if c == "-" else 1
            self.i += 1
        acc = self.term().scale(sign)
        while True:
            c = self.peek()
            if c == "+" or c == "-":
                self.i += 1
                t = self.term()
                acc = acc + t if c == "+" else acc - t
            else:
                return acc

    def term(self) -> Polynomial:
        if self.at_var():
            return self.var()
        coeff = self.coeff()
        if self.peek() == "*":
            self.i += 1
            if not self.at_var():
                raise self.error(f"expected {LAMBDA_CHAR} after '*'")
            return coeff * self.var()
        if self.at_var():
            return coeff * self.var()
        return coeff

    def var(self) -> Polynomial:
        self.skip()
        if self.s.startswith("lambda", self.i):
            self.i += len("lambda")
        else:
            self.i += 1
        power = 1
        if self.peek() == "^":
            self.i += 1
            power = self.uint()
        return Polynomial.monomial(power)

    def coeff(self) -> Polynomial:
        c = self.peek()
        if c == "(":
            self.i += 1
            inner = self.sum()
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.i += 1
            return inner
        if not c.isdigit():
            raise self.error(f"expected a coefficient or {LAMBDA_CHAR}" + (f", got {c!r}" if c else ""))
        value = Fraction(self.uint())
        save = self.i
        if self.peek() == "/":
            self.i += 1
            if self.peek().isdigit():
                den_pos = self.i
                den = self.uint()
                if den == 0:
                    raise self.error("zero denominator in coefficient", den_pos, LiteralZeroDenominator)
                value /= den
            else:
                self.i = save
        if self.peek() == "i":
            self.i += 1
            return Polynomial.constant(GaussianRational(0, value))
        return Polynomial.constant(value)


def parse_weight(text: str) -> RatFunc:
    """Parse a weight expression into a canonical :class:`RatFunc`."""
    return _WeightParser(text).expr()


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

def _fmt_real(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _fmt_gauss(c: GaussianRational) -> str:
    im = c.im
    im_body = "" if abs(im) == 1 else _fmt_real(abs(im))
    im_body = (im_body or "1") + "i"
    if c.re == 0:
        return ("-" if im < 0 else "") + im_body
    return f"{_fmt_real(c.re)}{'-' if im < 0 else '+'}{im_body}"


def _var(k: int) -> str:
    return LAMBDA_CHAR if k == 1 else f"{LAMBDA_CHAR}^{k}"


def _print_poly(p: Polynomial) -> tuple[str, int]:
    """Text of p and its number of terms."""
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        if isinstance(c, GaussianRational):
            sign = "+"
            body = f"({_fmt_gauss(c)})" + (_var(k) if k else "")
        else:
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = _fmt_real(a)
            elif a == 1:
                body = _var(k)
            elif a.denominator == 1:
                body = f"{a.numerator}{_var(k)}"
            else:
                body = f"({_fmt_real(a)}){_var(k)}"
        parts.append((sign, body))
    if not parts:
        return "0", 1
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += sign + body
    return out, len(parts)


def print_weight(f: RatFunc) -> str:
    """Canonical text of f; ``parse_weight(print_weight(f)) == f``."""
    num, nterms = _print_poly(f.num)
    if f.den.is_one():
        return num
    den, dterms = _print_poly(f.den)
    if nterms > 1 or "/" in num:
        num = f"({num})"
    if dterms > 1:
        den = f"({den})"
    return f"{num}/{den}"


# ---------------------------------------------------------------------------
# Graph documents
# ---------------------------------------------------------------------------

@dataclass
class GraphDocument:
    name: str = ""
    undirected: bool = False
    vertices: list = field(default_factory=list)
    # (from-label, to-label, weight text, line number)
    edges: list = field(default_factory=list)

    def to_graph(self) -> Graph:
        ws = {}
        for u, v, text, line in self.edges:
            w = _WeightParser(text, line=line).expr()
            ws[(u, v)] = w
            if self.undirected:
                ws[(v, u)] = w
        return Graph(self.vertices, ws, undirected=self.undirected, name=self.name)


_EDGE_RE = re.compile(r"^\s*([^\s:#,]+?)\s*(->|--)\s*([^\s:#,]+)\s*:(.*)$")
_KV_RE = re.compile(r"^\s*(\w+)\s*=\s*(.*?)\s*$")
_TRUE = {"true", "yes", "1", "on"}
_FALSE = {"false", "no", "0", "off"}


def parse_document(text: str) -> GraphDocument:
    doc = GraphDocument()
    section = None
    seen_sections = set()
    seen_pairs = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        if stripped.startswith("[") and stripped.endswith("]"):
            section = stripped[1:-1].strip().lower()
            if section not in ("graph", "vertices", "edges"):
                raise ParseError(f"unknown section [{section}]", line=lineno)
            if section in seen_sections:
                raise ParseError(f"section [{section}] repeated", line=lineno)
            seen_sections.add(section)
            continue
        if section is None:
            raise ParseError("content before the first section header", line=lineno)
        if section == "graph":
            m = _KV_RE.match(line)
            if not m:
                raise ParseError("expected 'key = value'", line=lineno)
            key, value = m.group(1).lower(), m.group(2)
            if key == "name":
                doc.name = value
            elif key == "undirected":
                if value.lower() in _TRUE:
                    doc.undirected = True
                elif value.lower() in _FALSE:
                    doc.undirected = False
                else:
                    raise ParseError(f"undirected must be true or false, got {value!r}", line=lineno)
            else:
                raise ParseError(f"unknown key {key!r}", line=lineno)
        elif section == "vertices":
            for label in re.split(r"[\s,]+", stripped):
                if not label:
                    continue
                if ":" in label:
                    raise ParseError(f"invalid vertex label {label!r}", line=lineno)
                if label in doc.vertices:
                    raise ParseError(f"duplicate vertex {label!r}", line=lineno)
                doc.vertices.append(label)
        else:
            m = _EDGE_RE.match(line)
            if not m:
                raise ParseError("expected 'u -> v : weight'", line=lineno)
            u, arrow, v, expr = m.groups()
            want = "--" if doc.undirected else "->"
            if arrow != want:
                raise ParseError(f"use '{want}' edges in a graph with undirected = {str(doc.undirected).lower()}", line=lineno)
            known = set(doc.vertices)
            for label in (u, v):
                if label not in known:
                    raise UnknownVertex(f"unknown vertex {label!r}", line=lineno)
            pairs = {(u, v), (v, u)} if doc.undirected else {(u, v)}
            if pairs & seen_pairs:
                raise DuplicateEdge(f"duplicate edge {u} {arrow} {v}", line=lineno)
            seen_pairs |= pairs
            doc.edges.append((u, v, expr, lineno))
    if not doc.vertices:
        raise ParseError("graph has no vertices")
    return doc


def parse_graph(text: str) -> Graph:
    """Parse a graph document; weights are canonicalised, zero weights dropped."""
    doc = parse_document(text)
    try:
        return doc.to_graph()
    except ParseError as exc:
        if exc.column is not None and exc.line is not None:
            # columns from the weight parser are relative to the expression
            raw = text.splitlines()[exc.line - 1]
            shift = raw.index(":") + 1
            exc.column += shift
            exc.args = (f"{exc.message} (line {exc.line}, column {exc.column})",)
        raise


def serialize_graph(g: Graph) -> str:
    """Document text of g; ``parse_graph(serialize_graph(g)) == g``."""
    if g.undirected and not g.is_symmetric():
        raise ValueError("undirected graph has asymmetric weights")
    lines = ["[graph]"]
    if g.name:
        lines.append(f"name = {g.name}")
    lines.append(f"undirected = {str(g.undirected).lower()}")
    lines.append("[vertices]")
    lines.append(" ".join(g.labels))
    lines.append("[edges]")
    pos = {v: i for i, v in enumerate(g.labels)}
    for u, v, w in g.arcs():
        if g.undirected:
            if pos[u] > pos[v]:
                continue
            lines.append(f"{u} -- {v} : {print_weight(w)}")
        else:
            lines.append(f"{u} -> {v} : {print_weight(w)}")
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def write_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_graph(g))
