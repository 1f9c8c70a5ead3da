"""Command-line interface: ``ccfcanon check|tree|canon|iso|gen``.

Edge-list input format::

    # comment
    p 4 3        optional header: vertex count and edge count
    0 1
    1 2
    2 3

With a header, labels must lie in ``0..n-1`` and vertices without edges are
kept. Without one, the distinct labels are renumbered densely in ascending
order. Duplicate edges and self-loops are rejected.

Exit codes: 0 success, 1 domain-negative answer, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .canonizer import canonize, require_class
from .clique_tree import build_clique_tree, is_fork_clique, is_star_clique, root_at
from .errors import NotConnected, NotInClass, ParseError
from .graph_core import Graph, is_chordal, is_claw_free, is_connected
from .supplement import build_supplemented
from .testkit import GenerationError, path_intersection_graph

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INVALID = 2


@dataclass(frozen=True)
class EdgeListDocument:
    """A parsed edge list; ``labels[v]`` is the file label of dense vertex ``v``."""

    graph: Graph
    labels: tuple[int, ...]


def parse_edge_list(text: str) -> EdgeListDocument:
    header: Optional[tuple[int, int]] = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if header is not None or edges:
                raise ParseError("header must come first and only once", lineno)
            if len(fields) != 3:
                raise ParseError("header must be 'p <n> <m>'", lineno)
            header = (_non_negative(fields[1], lineno), _non_negative(fields[2], lineno))
            continue
        if len(fields) != 2:
            raise ParseError(f"expected two labels, got {len(fields)} fields", lineno)
        u, v = _non_negative(fields[0], lineno), _non_negative(fields[1], lineno)
        if u == v:
            raise ParseError(f"self-loop on {u}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {u} {v}", lineno)
        if header is not None and max(u, v) >= header[0]:
            raise ParseError(f"label {max(u, v)} out of range for n={header[0]}", lineno)
        seen.add(key)
        edges.append((u, v))
    if header is not None:
        n, m = header
        if m != len(edges):
            raise ParseError(f"header promises {m} edges, found {len(edges)}")
        return EdgeListDocument(Graph.from_edges(n, edges), tuple(range(n)))
    labels = tuple(sorted({x for e in edges for x in e}))
    index = {x: i for i, x in enumerate(labels)}
    graph = Graph.from_edges(len(labels), ((index[u], index[v]) for u, v in edges))
    return EdgeListDocument(graph, labels)


def _non_negative(token: str, lineno: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"not an integer: {token!r}", lineno) from None
    if value < 0:
        raise ParseError(f"negative label {value}", lineno)
    return value


def format_edge_list(g: Graph) -> str:
    lines = [f"p {g.n} {g.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_document(path: str) -> EdgeListDocument:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return parse_edge_list(text)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def cmd_check(args, out) -> int:
    g = read_document(args.path).graph
    chordal, _ = is_chordal(g)
    claw_free, claw = is_claw_free(g)
    print(f"chordal: {'yes' if chordal else 'no'}", file=out)
    if claw_free:
        print("claw-free: yes", file=out)
    else:
        print("claw-free: no, witness " + " ".join(map(str, claw)), file=out)
    return EXIT_OK if chordal and claw_free else EXIT_NEGATIVE


def cmd_tree(args, out) -> int:
    doc = read_document(args.path)
    g = doc.graph
    require_class(g)
    if g.n == 0 or not is_connected(g):
        raise NotConnected("tree needs a connected non-empty graph")
    tree = build_clique_tree(g)
    name = lambda c: " ".join(str(doc.labels[v]) for v in c)  # noqa: E731
    cliques = tree.cliques.cliques
    if not args.dot:
        for i, c in enumerate(cliques):
            print(f"clique {i}: {name(c)}", file=out)
        for a, b in sorted(tree.edges):
            print(f"edge {a} {b}", file=out)
        return EXIT_OK
    root = canonize(g).chosen_root
    supp = build_supplemented(root_at(tree, root), g.n)
    print("graph clique_tree {", file=out)
    for i, c in enumerate(cliques):
        kind = "fork" if is_fork_clique(tree, i) else "star" if is_star_clique(tree, i) else ""
        color = ",".join(map(str, supp.colors[i]))
        tags = " ".join(x for x in (kind, "root" if i == root else "") if x)
        label = f"B{i} {{{name(c)}}}\\n({color})" + (f" {tags}" if tags else "")
        print(f'  n{i} [label="{label}"];', file=out)
    for a, b in sorted(tree.edges):
        pa, pb = (b, a) if supp.rooted.parent[a] == b else (a, b)
        print(f"  n{pa} -- n{pb};", file=out)
    print("}", file=out)
    return EXIT_OK


def cmd_canon(args, out) -> int:
    doc = read_document(args.path)
    result = canonize(doc.graph)
    if not args.json:
        out.write(result.serialized.decode("ascii"))
        return EXIT_OK
    report = {
        "canon": result.serialized.decode("ascii"),
        "witness": {str(doc.labels[v]): k for v, k in enumerate(result.witness.h)},
        "roots": [[doc.labels[v] for v in r] for r in result.roots],
    }
    print(json.dumps(report, indent=2), file=out)
    return EXIT_OK


def cmd_iso(args, out) -> int:
    graphs = []
    for which, path in (("first", args.first), ("second", args.second)):
        g = read_document(path).graph
        try:
            require_class(g, which)
        except NotInClass as exc:
            raise NotInClass(f"{path}: {exc}", reason=exc.reason, witness=exc.witness, which=which)
        graphs.append(g)
    g, h = graphs
    same = g.n == h.n and g.edge_count == h.edge_count and (
        canonize(g).serialized == canonize(h).serialized
    )
    print("isomorphic" if same else "non-isomorphic", file=out)
    return EXIT_OK if same else EXIT_NEGATIVE


def cmd_gen(args, out) -> int:
    g = path_intersection_graph(args.tree_nodes, args.paths, args.seed, args.retries)
    out.write(format_edge_list(g))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ccfcanon", description="Canonical forms of chordal claw-free graphs."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="test chordality and claw-freeness")
    p.add_argument("path")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("tree", help="print the clique tree of a connected graph")
    p.add_argument("path")
    p.add_argument("--dot", action="store_true", help="emit a DOT description")
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("canon", help="print the canonical serialization")
    p.add_argument("path")
    p.add_argument("--json", action="store_true", help="include witness and roots")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("iso", help="decide isomorphism of two graphs")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("gen", help="generate a random in-class graph")
    p.add_argument("--tree-nodes", type=int, required=True)
    p.add_argument("--paths", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--retries", type=int, default=50)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (OSError, ValueError, GenerationError) as exc:
        print(f"error: {exc}", file=err)
    return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
