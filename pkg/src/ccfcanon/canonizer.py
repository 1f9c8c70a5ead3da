"""End-to-end canonization of chordal claw-free graphs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .clique_tree import (
    CliqueTree,
    build_clique_tree,
    enumerate_max_cliques,
    leaves,
    root_at,
)
from .errors import NotConnected, NotInClass, StructuralError
from .graph_core import (
    Graph,
    connected_components,
    is_chordal,
    is_claw_free,
    is_connected,
    twin_quotient,
)
from .reconstruct import (
    CliqueBuild,
    Mode,
    OrderedGraph,
    WitnessBijection,
    assemble_ordered_copy,
    build_cliques,
    build_witness,
)
from .supplement import SupplementedCliqueTree, build_supplemented
from .tree_canon import CanonColoredTree, canonize_tree

__all__ = [
    "CanonResult",
    "OrderedGraph",
    "canonize",
    "canonize_connected",
    "isomorphic",
    "require_class",
    "root_sweep",
    "verify_certificate",
]


@dataclass(frozen=True)
class CanonResult:
    """Canon of a graph plus the witness ``h`` mapping it onto the canon.

    ``roots`` holds the chosen root clique of every component, as a sorted
    tuple of input vertex ids, in the order the components appear in the
    canon. ``chosen_root`` is the root clique id when the input is connected.
    """

    canon: OrderedGraph
    witness: WitnessBijection
    roots: tuple[tuple[int, ...], ...]
    serialized: bytes
    chosen_root: Optional[int] = None


def require_class(g: Graph, which: Optional[str] = None) -> None:
    label = f"{which}: " if which else ""
    q, reps = twin_quotient(g)
    chordal, _ = is_chordal(q)
    if not chordal:
        raise NotInClass(f"{label}graph is not chordal", reason="chordal", which=which)
    claw_free, claw = is_claw_free(q)
    if not claw_free:
        claw = tuple(reps[v] for v in claw)
        raise NotInClass(
            f"{label}graph contains a claw {claw}", reason="claw-free", witness=claw, which=which
        )


@dataclass(frozen=True)
class _Candidate:
    root: int
    supplemented: SupplementedCliqueTree
    tree: CanonColoredTree
    build: CliqueBuild
    canon: OrderedGraph
    serialized: bytes


def _candidate(tree: CliqueTree, leaf: int, n: int, mode: Mode) -> _Candidate:
    supp = build_supplemented(root_at(tree, leaf), n)
    canon_tree = canonize_tree(supp)
    build = build_cliques(canon_tree, mode)
    ordered = assemble_ordered_copy(build.cliques, n)
    return _Candidate(leaf, supp, canon_tree, build, ordered, ordered.serialize())


def _finish(g: Graph, best: _Candidate) -> CanonResult:
    witness = build_witness(best.supplemented, best.tree, best.build.cliques)
    root_clique = best.supplemented.rooted.tree.cliques.cliques[best.root]
    result = CanonResult(best.canon, witness, (root_clique,), best.serialized, best.root)
    if not verify_certificate(g, result):
        raise StructuralError("pipeline produced an invalid certificate")
    return result


def _connected_tree(g: Graph, checked: bool = False) -> CliqueTree:
    if not checked:
        require_class(g)
    if g.n == 0:
        raise ValueError("empty graph has no clique tree")
    if not checked and not is_connected(g):
        raise NotConnected("graph is not connected")
    return build_clique_tree(g, enumerate_max_cliques(g))


def canonize_connected(g: Graph, mode: Mode = "memoized") -> CanonResult:
    """Try every leaf of the clique tree as root and keep the least canon.

    Leaves whose rooted colored trees share a code give identical canons,
    so each code is reconstructed once.
    """
    return _canonize_component(g, mode, checked=False)


def _canonize_component(g: Graph, mode: Mode, checked: bool) -> CanonResult:
    tree = _connected_tree(g, checked)
    best: Optional[_Candidate] = None
    seen: set[bytes] = set()
    for leaf in leaves(tree):
        supp = build_supplemented(root_at(tree, leaf), g.n)
        canon_tree = canonize_tree(supp)
        if canon_tree.code in seen:
            continue
        seen.add(canon_tree.code)
        build = build_cliques(canon_tree, mode)
        ordered = assemble_ordered_copy(build.cliques, g.n)
        serialized = ordered.serialize()
        if best is None or serialized < best.serialized:
            best = _Candidate(leaf, supp, canon_tree, build, ordered, serialized)
    assert best is not None
    return _finish(g, best)


def root_sweep(g: Graph, mode: Mode = "memoized") -> dict[int, CanonResult]:
    """Canon result for every leaf root of a connected in-class graph, keyed by clique id."""
    tree = _connected_tree(g)
    return {leaf: _finish(g, _candidate(tree, leaf, g.n, mode)) for leaf in leaves(tree)}


def canonize(g: Graph, mode: Mode = "memoized") -> CanonResult:
    """Canonize each component, sort by (size, canon bytes) and concatenate."""
    require_class(g)
    if g.n and is_connected(g):
        return _canonize_component(g, mode, checked=True)
    parts = []
    for sub, emb in connected_components(g):
        parts.append((_canonize_component(sub, mode, checked=True), emb))
    parts.sort(key=lambda p: (p[0].canon.n, p[0].serialized))
    h = [0] * g.n
    edges = []
    anc = {}
    roots = []
    offset = 0
    for res, emb in parts:
        for i, v in enumerate(emb):
            h[v] = res.witness.h[i] + offset
        edges.extend((u + offset, v + offset) for u, v in res.canon.edges)
        for (clique, v), k in res.witness.anc_counts.items():
            anc[(tuple(emb[x] for x in clique), emb[v])] = k
        roots.extend(tuple(emb[x] for x in r) for r in res.roots)
        offset += res.canon.n
    canon = OrderedGraph(g.n, tuple(edges))
    chosen = parts[0][0].chosen_root if len(parts) == 1 else None
    return CanonResult(
        canon, WitnessBijection(tuple(h), anc), tuple(roots), canon.serialize(), chosen
    )


def isomorphic(g: Graph, h: Graph) -> bool:
    require_class(g, "first")
    require_class(h, "second")
    if g.n != h.n or g.edge_count != h.edge_count:
        return False
    return canonize(g).serialized == canonize(h).serialized


def verify_certificate(g: Graph, r: CanonResult) -> bool:
    """Independent check that ``r.witness.h`` maps ``g`` isomorphically onto ``r.canon``."""
    canon = r.canon
    h = r.witness.h
    if canon.n != g.n or len(h) != g.n:
        return False
    if sorted(h) != list(range(1, g.n + 1)):
        return False
    if r.serialized != canon.serialize():
        return False
    if len(canon.edges) != g.edge_count:
        return False
    canon_edges = set(canon.edges)
    for u, v in g.edges():
        a, b = h[u], h[v]
        if (min(a, b), max(a, b)) not in canon_edges:
            return False
    return True
