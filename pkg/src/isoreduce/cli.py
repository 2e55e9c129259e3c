"""Command-line interface.

Exit codes: 0 ok, 1 parse or usage error, 2 reduction degeneracy (a loop
weight equal to λ), 3 empty rule selection, 4 identity verification
failure, 5 not equivalent.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .dynamics import Orbit, orbit, parse_rule, step
from .equivalence import isomorphic, same_attractor, weak_equiv
from .errors import DivisionByLambda, EmptySelection, IsoreduceError, ParseError, StepCapExceeded
from .graph import DEFAULT_PAIR_CONVENTION, PAIR_CONVENTIONS, Graph, betweenness, degrees
from .reduction import reduce_to
from .spectra import DEFAULT_TOL, spectrum, verify_reduction_identity
from .weightlang import parse_graph, print_weight, serialize_graph

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_DEGENERATE = 2
EXIT_EMPTY = 3
EXIT_VERIFY = 4
EXIT_NOT_EQUIV = 5

REPORT_FORMAT = "isoreduce-report/1"


class _Parser(argparse.ArgumentParser):
    # argparse's own exit code 2 would collide with the degeneracy code
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _load(path: str) -> tuple[Graph, dict]:
    data = Path(path).read_bytes()
    g = parse_graph(data.decode("utf-8"))
    if not g.name:
        g = g.renamed(Path(path).stem)
    return g, {"path": str(path), "sha256": hashlib.sha256(data).hexdigest()}


def _labels(text: str) -> list[str]:
    return [x for x in (p.strip() for p in text.split(",")) if x]


def _emit(text: str, out: str | None = None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _report(command: str, inputs: list, **results) -> str:
    doc = {"format": REPORT_FORMAT, "version": __version__, "command": command, "inputs": inputs}
    doc.update(results)
    return json.dumps(doc, indent=2, ensure_ascii=False, sort_keys=False) + "\n"


def _fmt_complex(z: complex, digits: int = 6) -> str:
    re = f"{z.real:.{digits}f}"
    if abs(z.imag) < 10 ** -digits:
        return re
    sign = "+" if z.imag >= 0 else "-"
    return f"{re}{sign}{abs(z.imag):.{digits}f}i"


def _table(g: Graph, convention: str) -> str:
    deg = degrees(g)
    btw = betweenness(g, convention)
    rows = [("node", "indegree", "outdegree", "degree", "betweenness")]
    rows += [(v, str(deg[v].indeg), str(deg[v].outdeg), str(deg[v].total), str(btw[v])) for v in g.labels]
    widths = [max(len(r[i]) for r in rows) for i in range(5)]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows) + "\n"


def _table_data(g: Graph, convention: str) -> list:
    deg = degrees(g)
    btw = betweenness(g, convention)
    return [
        {"node": v, "indegree": deg[v].indeg, "outdegree": deg[v].outdeg, "degree": deg[v].total, "betweenness": btw[v]}
        for v in g.labels
    ]


# -- dot ---------------------------------------------------------------------

def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: Graph) -> str:
    kind, arrow = ("graph", "--") if g.undirected else ("digraph", "->")
    lines = [f"{kind} {_q(g.name or 'G')} {{"]
    for v in g.labels:
        lines.append(f"  {_q(v)};")
    pos = {v: i for i, v in enumerate(g.labels)}
    for u, v, w in g.arcs():
        if g.undirected and pos[u] > pos[v]:
            continue
        lines.append(f"  {_q(u)} {arrow} {_q(v)} [label={_q(print_weight(w))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_export_dot(args) -> int:
    g, _ = _load(args.input)
    _emit(to_dot(g), args.out)
    return EXIT_OK


# -- reduce ------------------------------------------------------------------

def cmd_reduce(args) -> int:
    g, info = _load(args.input)
    if args.keep is not None:
        keep = _labels(args.keep)
    else:
        drop = set(_labels(args.drop))
        unknown = drop - set(g.labels)
        if unknown:
            raise ParseError(f"unknown vertices: {', '.join(sorted(unknown))}")
        keep = [v for v in g.labels if v not in drop]
    if not keep:
        raise ParseError("the set of kept vertices is empty")
    unknown = set(keep) - set(g.labels)
    if unknown:
        raise ParseError(f"unknown vertices: {', '.join(sorted(unknown))}")
    order = _labels(args.order) if args.order else None
    r = reduce_to(g, keep, order)
    _emit(serialize_graph(r), args.out)
    return EXIT_OK


# -- orbit -------------------------------------------------------------------

def _orbit_text(o: Orbit, convention: str) -> str:
    out = [f"rule {o.rule.name} ({o.rule.spec})"]
    for k, g in enumerate(o.graphs):
        out.append(f"\nstep {k}: {g.n} vertices")
        out.append(_table(g, convention).rstrip())
        if k < len(o.selections):
            out.append(f"selected: {{{', '.join(sorted(o.selections[k], key=g.labels.index))}}}")
    rep = o.report
    out.append(f"\nterminated: {o.terminated} after {o.steps} step(s)")
    out.append("attractor:")
    out.append(serialize_graph(o.attractor).rstrip())
    vals = ", ".join(f"{v}={rep.values.values[v]}" for v in o.attractor.labels)
    out.append(f"{rep.values.name} values: {vals}")
    out.append(f"uniform: {str(rep.uniform).lower()}")
    if not rep.uniform:
        out.append("note: attractor is a fixed point of the rule; its characteristic is not uniform")
    return "\n".join(out) + "\n"


def cmd_orbit(args) -> int:
    g, info = _load(args.input)
    rule = parse_rule(args.rule)
    if args.convention != rule.convention:
        rule = replace(rule, convention=args.convention)
    o = orbit(rule, g, args.bound)
    if args.format == "dot":
        _emit("".join(to_dot(x.renamed(f"{g.name}_step{k}")) for k, x in enumerate(o.graphs)))
    elif args.format == "report":
        rep = o.report
        _emit(
            _report(
                "orbit",
                [info],
                rule={"name": rule.name, "spec": rule.spec, "convention": rule.convention},
                steps=o.steps,
                terminated=o.terminated,
                orbit=[
                    {
                        "step": k,
                        "graph": serialize_graph(x),
                        "characteristics": _table_data(x, rule.convention),
                        "selection": sorted(o.selections[k], key=x.labels.index),
                    }
                    for k, x in enumerate(o.graphs)
                ],
                attractor={
                    "graph": serialize_graph(o.attractor),
                    "uniform": rep.uniform,
                    "characteristic": rep.values.name,
                    "values": {v: str(x) for v, x in rep.values.values.items()},
                },
            )
        )
    else:
        _emit(_orbit_text(o, rule.convention))
    return EXIT_OK


# -- spectrum ----------------------------------------------------------------

def cmd_spectrum(args) -> int:
    g, info = _load(args.input)
    rep = spectrum(g, args.tol)
    record = None
    if args.verify is not None:
        keep = _labels(args.verify)
        if not keep:
            raise ParseError("--verify needs at least one vertex")
        record = verify_reduction_identity(g, keep, args.samples, seed=args.seed, jobs=args.jobs)
    if args.format == "report":
        res = {
            "char_det": print_weight(rep.char_det),
            "eigenvalues": [{"value": _fmt_complex(r.value, 12), "multiplicity": r.multiplicity} for r in rep.eigenvalues],
            "poles": [{"value": _fmt_complex(r.value, 12), "multiplicity": r.multiplicity} for r in rep.pole_roots],
        }
        if record is not None:
            res["verification"] = {
                "interpretation": "det(M_G - λI) = det(R_S - λI) * prod(w_k - λ) over removed vertices",
                "keep": list(record.keep),
                "factors": [{"vertex": v, "loop": print_weight(w), "factor": print_weight(f)}
                            for (v, w), f in zip(record.factors, record.factor_functions())],
                "samples": [{"point": str(s.point), "equal": s.equal} for s in record.samples],
                "seed": args.seed,
                "verified": record.verified,
            }
        _emit(_report("spectrum", [info], **res))
    else:
        lines = [f"det(M(λ) - λI) = {print_weight(rep.char_det)}", "eigenvalues:"]
        lines += [f"  {_fmt_complex(r.value)}  x{r.multiplicity}" for r in rep.eigenvalues]
        if rep.pole_roots:
            lines.append("poles (excluded):")
            lines += [f"  {_fmt_complex(r.value)}  x{r.multiplicity}" for r in rep.pole_roots]
        if record is not None:
            fs = " * ".join(f"({print_weight(f)})" for f in record.factor_functions()) or "1"
            ok = sum(s.equal for s in record.samples)
            lines.append(f"reduction onto {{{', '.join(record.keep)}}}: removed {', '.join(v for v, _ in record.factors) or 'nothing'}")
            lines.append(f"factors: {fs}")
            lines.append(f"identity det(M_G - λI) = det(R_S - λI) * factors: "
                         f"{'verified' if record.verified else 'FAILED'} ({ok}/{len(record.samples)} samples, seed {args.seed})")
        _emit("\n".join(lines) + "\n")
    if record is not None and not record.verified:
        return EXIT_VERIFY
    return EXIT_OK


# -- equiv -------------------------------------------------------------------

def cmd_equiv(args) -> int:
    g, gi = _load(args.g)
    h, hi = _load(args.h)
    rule = parse_rule(args.rule)
    witness: object
    if args.mode == "strong":
        rg, rh = step(rule, g), step(rule, h)
        b = isomorphic(rg, rh)
        ok = b is not None
        witness = {"bijection": b}
    elif args.mode == "weak":
        mk = weak_equiv(rule, g, h, args.bound)
        ok = mk is not None
        witness = {"m": mk[0], "k": mk[1]} if ok else {}
    else:
        cmp = same_attractor(rule, g, h)
        ok = cmp.same
        a, b = cmp.attractors
        witness = {"attractors": [serialize_graph(a), serialize_graph(b)], "bijection": cmp.bijection}
    if args.format == "report":
        _emit(_report("equiv", [gi, hi], rule=rule.name, mode=args.mode, equivalent=ok, witness=witness))
    else:
        verdict = "equivalent" if ok else "not equivalent"
        lines = [f"{g.name} vs {h.name} under {rule.name} ({args.mode}): {verdict}"]
        if args.mode == "strong" and ok:
            lines.append("bijection: " + ", ".join(f"{k}->{v}" for k, v in witness["bijection"].items()))
        elif args.mode == "weak" and ok:
            lines.append(f"(m, k) = ({witness['m']}, {witness['k']})")
        elif args.mode == "attractor":
            lines.append("attractor of first:\n" + witness["attractors"][0].rstrip())
            lines.append("attractor of second:\n" + witness["attractors"][1].rstrip())
        _emit("\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_NOT_EQUIV


# -- entry point ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="isoreduce", description="Isospectral reductions of rational-weighted digraphs.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("reduce", help="reduce a graph onto a vertex subset")
    r.add_argument("--in", dest="input", required=True)
    grp = r.add_mutually_exclusive_group(required=True)
    grp.add_argument("--keep", help="comma-separated labels to keep")
    grp.add_argument("--drop", help="comma-separated labels to remove")
    r.add_argument("--order", help="comma-separated removal order")
    r.add_argument("--out")
    r.set_defaults(func=cmd_reduce)

    o = sub.add_parser("orbit", help="iterate a rule to its attractor")
    o.add_argument("--in", dest="input", required=True)
    o.add_argument("--rule", required=True, help="tau1|tau2|tau3 or char:frac:gt|ge")
    o.add_argument("--format", choices=("text", "report", "dot"), default="text")
    o.add_argument("--bound", type=int, default=None, help="step cap (default |V|)")
    o.add_argument("--convention", choices=PAIR_CONVENTIONS, default=DEFAULT_PAIR_CONVENTION)
    o.set_defaults(func=cmd_orbit)

    s = sub.add_parser("spectrum", help="characteristic determinant and eigenvalues")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--verify", metavar="KEEP", help="check the determinant identity for a reduction onto KEEP")
    s.add_argument("--samples", type=int, default=20)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--tol", type=float, default=DEFAULT_TOL)
    s.add_argument("--format", choices=("text", "report"), default="text")
    s.set_defaults(func=cmd_spectrum)

    e = sub.add_parser("equiv", help="spectral equivalence of two graphs under a rule")
    e.add_argument("g")
    e.add_argument("h")
    e.add_argument("--rule", required=True)
    e.add_argument("--mode", choices=("strong", "weak", "attractor"), default="strong")
    e.add_argument("--bound", type=int, default=None)
    e.add_argument("--format", choices=("text", "report"), default="text")
    e.set_defaults(func=cmd_equiv)

    d = sub.add_parser("dot", help="export a graph as DOT")
    d.add_argument("--in", dest="input", required=True)
    d.add_argument("--out")
    d.set_defaults(func=cmd_export_dot)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors, --help, --version
        return exc.code if isinstance(exc.code, int) else EXIT_PARSE
    try:
        return args.func(args)
    except DivisionByLambda as exc:
        print(f"error: {exc}; try a different removal order (--order)", file=sys.stderr)
        return EXIT_DEGENERATE
    except EmptySelection as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except StepCapExceeded as exc:
        print(f"error: {exc} (the step bound |V| should always suffice)", file=sys.stderr)
        return EXIT_PARSE
    except (ParseError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except IsoreduceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
