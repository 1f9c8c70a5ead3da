"""Corpus generation, small-graph enumeration and the structural property suite."""

from __future__ import annotations

import json
import logging
import random
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Callable, Iterable, Optional, Sequence

from .canonizer import require_class
from .clique_tree import (
    CliqueTree,
    build_clique_tree,
    clique_path,
    enumerate_max_cliques,
    is_fork_clique,
    is_star_clique,
    leaves,
    root_at,
)
from .graph_core import (
    Graph,
    bits,
    brute_force_isomorphic,
    claw_through,
    connected_components,
    induced_subgraph,
    is_chordal,
    is_claw_free,
    is_connected,
)
from .supplement import build_supplemented
from .tree_canon import canonize_tree

log = logging.getLogger(__name__)


class GenerationError(RuntimeError):
    pass


# -- generators ---------------------------------------------------------------


def random_tree(k: int, rng: random.Random) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(k)]
    for v in range(1, k):
        u = rng.randrange(v)
        adj[u].append(v)
        adj[v].append(u)
    return adj


def _tree_path(adj: Sequence[Sequence[int]], a: int, b: int) -> list[int]:
    prev = {a: None}
    stack = [a]
    while stack:
        x = stack.pop()
        if x == b:
            break
        for y in adj[x]:
            if y not in prev:
                prev[y] = x
                stack.append(y)
    path = [b]
    while path[-1] != a:
        path.append(prev[path[-1]])
    return path


def path_intersection_graph(
    tree_nodes: int, paths: int, seed: int, retries: int = 50
) -> Graph:
    """Intersection graph of random paths in a random tree, kept claw-free.

    Paths are added one at a time; a path whose vertex would sit on an
    induced claw is redrawn up to ``retries`` times and dropped after that.
    The largest connected component is returned.
    """
    if tree_nodes < 1 or paths < 1:
        raise ValueError("tree_nodes and paths must be at least 1")
    rng = random.Random(seed)
    adj = random_tree(tree_nodes, rng)
    node_sets: list[int] = []
    masks: list[int] = []
    for _ in range(paths):
        for _ in range(retries):
            a, b = rng.randrange(tree_nodes), rng.randrange(tree_nodes)
            nodes = 0
            for x in _tree_path(adj, a, b):
                nodes |= 1 << x
            x = len(masks)
            nbrs = 0
            for i, other in enumerate(node_sets):
                if other & nodes:
                    nbrs |= 1 << i
            trial = [m | (1 << x) if (nbrs >> i) & 1 else m for i, m in enumerate(masks)]
            trial.append(nbrs)
            if not claw_through(trial, x):
                masks = trial
                node_sets.append(nodes)
                break
    if not masks:
        raise GenerationError(f"no path could be placed after {retries} retries")
    g = Graph.from_masks(masks)
    biggest = max(connected_components(g), key=lambda p: p[0].n)[0]
    if not (is_chordal(biggest)[0] and is_claw_free(biggest)[0]):
        raise GenerationError("generated graph left the class")
    return biggest


def random_permutation(n: int, rng: random.Random) -> list[int]:
    perm = list(range(n))
    rng.shuffle(perm)
    return perm


# -- small graphs -------------------------------------------------------------


def _cliques_of(g: Graph) -> Iterable[int]:
    """All non-empty cliques as bitmasks."""
    masks = g.masks

    def grow(current: int, cand: int):
        for v in bits(cand):
            nxt = current | (1 << v)
            yield nxt
            yield from grow(nxt, cand & masks[v] & ~((2 << v) - 1))

    yield from grow(0, (1 << g.n) - 1)


def _invariant(g: Graph) -> tuple:
    degs = [len(a) for a in g.adjacency]
    return (
        g.n,
        g.edge_count,
        tuple(sorted((degs[v], tuple(sorted(degs[u] for u in g.adjacency[v]))) for v in range(g.n))),
    )


def _dedupe(graphs: Iterable[Graph]) -> list[Graph]:
    buckets: dict[tuple, list[Graph]] = defaultdict(list)
    out = []
    for g in graphs:
        bucket = buckets[_invariant(g)]
        if any(brute_force_isomorphic(g, h) is not None for h in bucket):
            continue
        bucket.append(g)
        out.append(g)
    return out


def enumerate_small(n_max: int) -> list[Graph]:
    """All connected chordal claw-free graphs on 1..n_max vertices, one per class.

    Every such graph has a simplicial vertex whose removal keeps it in the
    class, so each level is generated by attaching a new vertex to a
    non-empty clique of a graph from the level below; survivors are
    filtered by the recognizers and deduplicated with the brute-force
    isomorphism oracle.
    """
    if n_max > 8:
        raise ValueError("n_max above 8 is not supported")
    if n_max < 1:
        return []
    level = [Graph(1, ((),))]
    out = list(level)
    for n in range(2, n_max + 1):
        grown = []
        for g in level:
            for clique in _cliques_of(g):
                masks = [m | (1 << (n - 1)) if (clique >> i) & 1 else m for i, m in enumerate(g.masks)]
                masks.append(clique)
                h = Graph.from_masks(masks)
                if is_chordal(h)[0] and is_claw_free(h)[0]:
                    grown.append(h)
        level = _dedupe(grown)
        out.extend(level)
    return out


def enumerate_small_labeled(n_max: int) -> list[Graph]:
    """Slow cross-check: every labeled graph, filtered and deduplicated (n_max <= 6)."""
    out = []
    for n in range(1, n_max + 1):
        pairs = list(combinations(range(n), 2))
        found = []
        for code in range(1 << len(pairs)):
            g = Graph.from_edges(n, (p for i, p in enumerate(pairs) if (code >> i) & 1))
            if is_connected(g) and is_chordal(g)[0] and is_claw_free(g)[0]:
                found.append(g)
        out.extend(_dedupe(found))
    return out


# -- corpus -------------------------------------------------------------------


@dataclass(frozen=True)
class Corpus:
    seed: int
    graphs: tuple[Graph, ...]
    provenance: tuple[dict, ...]

    def __post_init__(self) -> None:
        for g in self.graphs:
            require_class(g)

    def __len__(self) -> int:
        return len(self.graphs)


def generate_corpus(count: int, seed: int, max_n: int = 60) -> Corpus:
    """``count`` connected in-class graphs of at most ``max_n`` vertices."""
    rng = random.Random(seed)
    graphs, prov = [], []
    attempts = 0
    while len(graphs) < count:
        attempts += 1
        if attempts > 50 * count:
            raise GenerationError(f"only {len(graphs)} of {count} graphs after {attempts} attempts")
        k = rng.randint(1, 40)
        p = rng.randint(1, max_n)
        s = rng.randrange(2**32)
        g = path_intersection_graph(k, p, s)
        if g.n > max_n:
            continue
        graphs.append(g)
        prov.append({"generator": "path_intersection_graph", "tree_nodes": k, "paths": p, "seed": s})
    return Corpus(seed, tuple(graphs), tuple(prov))


def small_corpus(n_max: int) -> Corpus:
    graphs = enumerate_small(n_max)
    return Corpus(0, tuple(graphs), tuple({"generator": "enumerate_small", "n_max": n_max} for _ in graphs))


# -- structural properties ----------------------------------------------------


def _path_property(g: Graph, t: CliqueTree) -> bool:
    return all(clique_path(t, v) is not None for v in range(g.n))


def _clique_intersection(g: Graph, t: CliqueTree) -> bool:
    cm = t.cliques.masks
    for a in range(len(t)):
        # walk the tree from a; every clique on the way must contain a & target
        prev = {a: None}
        order = [a]
        for x in order:
            for y in t.neighbors[x]:
                if y not in prev:
                    prev[y] = x
                    order.append(y)
        for b in order:
            shared = cm[a] & cm[b]
            x = prev[b]
            while x is not None and x != a:
                if shared & ~cm[x]:
                    return False
                x = prev[x]
    return True


def _betweenness(g: Graph, t: CliqueTree) -> bool:
    cm = t.cliques.masks
    for v in range(g.n):
        path = clique_path(t, v)
        if path is None:
            return False
        pos = {a: i for i, a in enumerate(path)}
        for a1, a2, a3 in permutations(path, 3):
            between = min(pos[a1], pos[a3]) < pos[a2] < max(pos[a1], pos[a3])
            covered = not cm[a2] & ~(cm[a1] | cm[a3])
            if between != covered:
                return False
    return True


def _induced_connected(t: CliqueTree, ids: set[int]) -> bool:
    if not ids:
        return True
    start = next(iter(ids))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in t.neighbors[x]:
            if y in ids and y not in seen:
                seen.add(y)
                stack.append(y)
    return seen == ids


def _difference_connected(g: Graph, t: CliqueTree) -> bool:
    per = t.cliques.per_vertex
    for u in range(g.n):
        for w in range(g.n):
            if u != w and not _induced_connected(t, set(per[u]) - set(per[w])):
                return False
    return True


def _uniqueness(g: Graph, t: CliqueTree, rng: random.Random) -> bool:
    perm = random_permutation(g.n, rng)
    inv = [0] * g.n
    for v, p in enumerate(perm):
        inv[p] = v
    other = build_clique_tree(g.relabel(perm))
    back = [tuple(sorted(inv[x] for x in c)) for c in other.cliques.cliques]
    mine = {frozenset((t.cliques.cliques[a], t.cliques.cliques[b])) for a, b in t.edges}
    theirs = {frozenset((back[a], back[b])) for a, b in other.edges}
    return mine == theirs and set(back) == set(t.cliques.cliques)


def _star_or_fork(g: Graph, t: CliqueTree) -> bool:
    return all(
        is_star_clique(t, b) or is_fork_clique(t, b) for b in range(len(t)) if t.degree(b) >= 3
    )


def _fork_neighbors_star(g: Graph, t: CliqueTree) -> bool:
    return all(
        is_star_clique(t, a) for b in range(len(t)) if is_fork_clique(t, b) for a in t.neighbors[b]
    )


def _fork_triangle(g: Graph, t: CliqueTree) -> bool:
    per = t.cliques.per_vertex
    for b in range(len(t)):
        if not is_fork_clique(t, b):
            continue
        pairs = set()
        for v in range(g.n):
            mv = set(per[v])
            if len(mv) == 3 and b in mv and mv - {b} <= set(t.neighbors[b]):
                pairs.add(frozenset(mv - {b}))
        if len(pairs) != 3:
            return False
    return True


def _rooted_views(g: Graph, t: CliqueTree):
    for leaf in leaves(t):
        supp = build_supplemented(root_at(t, leaf), g.n)
        yield supp, canonize_tree(supp)


def _two_children_star_or_fork(g: Graph, t: CliqueTree) -> bool:
    for leaf in leaves(t):
        r = root_at(t, leaf)
        for a in range(len(t)):
            if len(r.children[a]) >= 2 and not (is_star_clique(t, a) or is_fork_clique(t, a)):
                return False
    return True


def _fork_color(g: Graph, t: CliqueTree) -> bool:
    for supp, _ in _rooted_views(g, t):
        for a in range(len(t)):
            if (supp.colors[a].in2children > 0) != is_fork_clique(t, a):
                return False
    return True


def _ancestors(rooted, a):
    out = set()
    x = rooted.parent[a]
    while x is not None:
        out.add(x)
        x = rooted.parent[x]
    return out


def _post_order_ancestry(g: Graph, t: CliqueTree) -> bool:
    for supp, canon in _rooted_views(g, t):
        seq = [canon.back_map[m] for m in canon.post_order]
        if sorted(seq) != list(range(len(t))):
            return False
        pos = {a: i for i, a in enumerate(seq)}
        for a in range(len(t)):
            if any(pos[a] >= pos[x] for x in _ancestors(supp.rooted, a)):
                return False
    return True


def _earlier_overlap_sources(g: Graph, t: CliqueTree, unique: bool) -> bool:
    cm = t.cliques.masks
    for supp, canon in _rooted_views(g, t):
        rooted = supp.rooted
        seq = [canon.back_map[m] for m in canon.post_order]

        def fork_pair(i: int, k: int) -> bool:
            p = rooted.parent[seq[k]]
            if p is None or rooted.parent[seq[i]] != p or not is_fork_clique(t, p):
                return False
            # transferred child order is the canon's order
            first, second = (canon.back_map[c] for c in canon.children[canon.back_map.index(p)])
            return seq[i] == first and seq[k] == second

        for k, ak in enumerate(seq):
            desc = set()
            stack = list(rooted.children[ak])
            while stack:
                x = stack.pop()
                desc.add(x)
                stack.extend(rooted.children[x])
            for v in bits(cm[ak]):
                earlier = [i for i in range(k) if (cm[seq[i]] >> v) & 1]
                if not unique:
                    # an earlier clique outside the subtree must be the fork sibling
                    for i in earlier:
                        if seq[i] not in desc and not fork_pair(i, k):
                            return False
                    continue
                if is_fork_clique(t, ak) or not earlier:
                    continue
                sources = [
                    i
                    for i in range(len(seq))
                    if (cm[seq[i]] >> v) & 1
                    and (seq[i] in rooted.children[ak] or fork_pair(i, k))
                ]
                if len(sources) != 1:
                    return False
    return True


PROPERTIES: dict[str, Callable] = {
    "clique_intersection": _clique_intersection,
    "path_property": _path_property,
    "betweenness": _betweenness,
    "difference_connected": _difference_connected,
    "uniqueness_under_relabeling": None,  # needs rng, dispatched below
    "degree3_star_or_fork": _star_or_fork,
    "fork_neighbors_are_stars": _fork_neighbors_star,
    "fork_triangle": _fork_triangle,
    "two_children_star_or_fork": _two_children_star_or_fork,
    "fork_iff_in2children": _fork_color,
    "post_order_ancestry": _post_order_ancestry,
    "earlier_overlap_is_fork_sibling": lambda g, t: _earlier_overlap_sources(g, t, unique=False),
    "unique_prior_intersection_source": lambda g, t: _earlier_overlap_sources(g, t, unique=True),
}


@dataclass
class LemmaReport:
    passed: dict[str, int] = field(default_factory=dict)
    failed: dict[str, int] = field(default_factory=dict)
    failures: list[tuple[str, str]] = field(default_factory=list)
    graphs: int = 0

    @property
    def ok(self) -> bool:
        return not any(self.failed.values())

    def to_text(self) -> str:
        lines = [f"graphs: {self.graphs}"]
        for name in self.passed:
            status = "PASS" if not self.failed[name] else "FAIL"
            lines.append(f"{status} {name}: {self.passed[name]} passed, {self.failed[name]} failed")
        for name, doc in self.failures:
            lines.append(f"failure {name}:\n{doc}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(
            {
                "graphs": self.graphs,
                "properties": {
                    k: {"passed": self.passed[k], "failed": self.failed[k]} for k in self.passed
                },
                "failures": [{"property": k, "graph": doc} for k, doc in self.failures],
            },
            indent=2,
        )


def _edge_list(g: Graph) -> str:
    lines = [f"p {g.n} {g.edge_count}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def run_lemma_suite(corpus: Corpus | Sequence[Graph], seed: int = 0) -> LemmaReport:
    """Check every structural property on every connected component of the corpus."""
    graphs = corpus.graphs if isinstance(corpus, Corpus) else tuple(corpus)
    for g in graphs:
        require_class(g)
    report = LemmaReport(graphs=len(graphs))
    for name in PROPERTIES:
        report.passed[name] = 0
        report.failed[name] = 0
    if not graphs:
        log.warning("empty corpus: lemma suite passes vacuously")
        return report
    rng = random.Random(seed)
    for g in graphs:
        for sub, _ in connected_components(g):
            t = build_clique_tree(sub, enumerate_max_cliques(sub))
            for name, check in PROPERTIES.items():
                ok = _uniqueness(sub, t, rng) if check is None else check(sub, t)
                if ok:
                    report.passed[name] += 1
                else:
                    report.failed[name] += 1
                    report.failures.append((name, _edge_list(g)))
    return report
