"""Maximal cliques via spanning triples and the unique clique tree.

Only connected chordal claw-free graphs are supported; on such graphs every
maximal clique is the unique maximal clique containing some vertex triple
(repetition allowed), and the clique tree is unique.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Optional, Sequence

from .errors import StructuralError
from .graph_core import Graph, VertexSet, _is_clique_mask, bits, induced_subgraph, mask_of

CliqueId = int


@dataclass(frozen=True)
class MaxCliqueSet:
    cliques: tuple[VertexSet, ...]
    per_vertex: tuple[tuple[CliqueId, ...], ...]

    @classmethod
    def from_cliques(cls, n: int, cliques) -> "MaxCliqueSet":
        ordered = tuple(sorted(tuple(sorted(c)) for c in cliques))
        per_vertex: list[list[int]] = [[] for _ in range(n)]
        for i, c in enumerate(ordered):
            for v in c:
                per_vertex[v].append(i)
        return cls(ordered, tuple(map(tuple, per_vertex)))

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(mask_of(c) for c in self.cliques)

    def __len__(self) -> int:
        return len(self.cliques)


@dataclass(frozen=True)
class CliqueTree:
    cliques: MaxCliqueSet
    edges: frozenset[tuple[CliqueId, CliqueId]]

    @cached_property
    def neighbors(self) -> tuple[tuple[CliqueId, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(len(self.cliques))]
        for a, b in self.edges:
            nbrs[a].append(b)
            nbrs[b].append(a)
        return tuple(tuple(sorted(x)) for x in nbrs)

    def degree(self, b: CliqueId) -> int:
        return len(self.neighbors[b])

    def __len__(self) -> int:
        return len(self.cliques)


@dataclass(frozen=True)
class RootedCliqueTree:
    tree: CliqueTree
    root: CliqueId
    parent: tuple[Optional[CliqueId], ...]
    children: tuple[tuple[CliqueId, ...], ...]

    def __len__(self) -> int:
        return len(self.tree)


def _common_neighbors(masks: Sequence[int], triple: Sequence[int]) -> int:
    common = -1
    for v in triple:
        common &= masks[v]
    return common & ~mask_of(triple)


def is_spanning_triple(g: Graph, t: Sequence[int]) -> bool:
    """True iff the triple lies in exactly one maximal clique.

    Checked locally: the triple's set is a clique and its common
    neighbors are pairwise adjacent.
    """
    masks = g.masks
    if not _is_clique_mask(masks, mask_of(t)):
        return False
    return _is_clique_mask(masks, _common_neighbors(masks, t))


def spanned_clique(g: Graph, t: Sequence[int]) -> VertexSet:
    if not is_spanning_triple(g, t):
        raise ValueError(f"{tuple(t)} is not a spanning triple")
    return tuple(bits(mask_of(t) | _common_neighbors(g.masks, t)))


def twin_classes(g: Graph) -> list[int]:
    """Classes of true twins (equal closed neighborhoods) as bitmasks, by least member."""
    classes: dict[int, int] = {}
    for v, m in enumerate(g.masks):
        key = m | (1 << v)
        classes[key] = classes.get(key, 0) | (1 << v)
    return sorted(classes.values(), key=lambda c: c & -c)


def enumerate_max_cliques(g: Graph) -> MaxCliqueSet:
    """Resolve every spanning triple to its clique and deduplicate.

    True twins lie in exactly the same maximal cliques, so the scan runs on
    one representative per twin class and the cliques are expanded after.
    """
    classes = twin_classes(g)
    if len(classes) == g.n:
        found = _spanned_cliques(g)
    else:
        reps = [(c & -c).bit_length() - 1 for c in classes]
        quotient, _ = induced_subgraph(g, reps)
        found = set()
        for m in _spanned_cliques(quotient):
            full = 0
            for i in bits(m):
                full |= classes[i]
            found.add(full)
    return MaxCliqueSet.from_cliques(g.n, (bits(m) for m in found))


def _spanned_cliques(g: Graph) -> set[int]:
    """Triples are scanned by their underlying vertex set (size 1, 2 or 3,
    ascending), which covers every ordered triple with repetition. Once a
    set spans a clique, its extensions by larger vertices span the same
    clique and are skipped.
    """
    masks = g.masks
    found: set[int] = set()
    for a in range(g.n):
        na = masks[a]
        if _is_clique_mask(masks, na):
            found.add(na | (1 << a))
            continue
        for b in bits(na & ~((2 << a) - 1)):
            nab = na & masks[b]
            if _is_clique_mask(masks, nab):
                found.add(nab | (1 << a) | (1 << b))
                continue
            for c in bits(nab & ~((2 << b) - 1)):
                nabc = nab & masks[c]
                if _is_clique_mask(masks, nabc):
                    found.add(nabc | (1 << a) | (1 << b) | (1 << c))
    return found


def build_clique_tree(g: Graph, m: Optional[MaxCliqueSet] = None) -> CliqueTree:
    """Connect ``A`` and ``B`` iff some shared vertex ``v`` sees no third
    clique ``C`` containing ``v`` with ``C`` inside ``A | B``.
    """
    if m is None:
        m = enumerate_max_cliques(g)
    cm = m.masks
    edges: set[tuple[int, int]] = set()
    for ids in m.per_vertex:
        for a, b in combinations(ids, 2):
            if (a, b) in edges:
                continue
            union = cm[a] | cm[b]
            if not any(c != a and c != b and not cm[c] & ~union for c in ids):
                edges.add((a, b))
    tree = CliqueTree(m, frozenset(edges))
    if len(m) and not _is_tree(tree):
        raise StructuralError(
            f"clique adjacency with {len(m)} cliques and {len(edges)} edges is not a tree"
        )
    return tree


def _is_tree(t: CliqueTree) -> bool:
    size = len(t)
    if len(t.edges) != size - 1:
        return False
    seen = {0}
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for b in t.neighbors[a]:
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return len(seen) == size


def clique_path(t: CliqueTree, v: int) -> Optional[list[CliqueId]]:
    """The cliques containing ``v`` in path order, or None if they do not induce a path."""
    ids = set(t.cliques.per_vertex[v])
    if not ids:
        return None
    deg = {a: sum(1 for b in t.neighbors[a] if b in ids) for a in ids}
    if any(d > 2 for d in deg.values()):
        return None
    ends = sorted(a for a, d in deg.items() if d <= 1)
    start = ends[0] if ends else min(ids)
    path = [start]
    prev = None
    while True:
        nxt = [b for b in t.neighbors[path[-1]] if b in ids and b != prev]
        if not nxt:
            break
        prev = path[-1]
        path.append(nxt[0])
        if len(path) > len(ids):
            return None
    return path if len(path) == len(ids) else None


def validate_clique_tree(g: Graph, t: CliqueTree) -> None:
    """Raise StructuralError unless ``t`` is a clique tree whose vertex-paths are paths."""
    if len(t) and not _is_tree(t):
        raise StructuralError("edge set is not a tree")
    for v in range(g.n):
        if clique_path(t, v) is None:
            raise StructuralError(f"cliques containing vertex {v} do not form a path")


def is_star_clique(t: CliqueTree, b: CliqueId) -> bool:
    cm = t.cliques.masks
    seen = 0
    for a in t.neighbors[b]:
        shared = cm[a] & cm[b]
        if shared & seen:
            return False
        seen |= shared
    return True


def is_fork_clique(t: CliqueTree, b: CliqueId) -> bool:
    if t.degree(b) != 3:
        return False
    nbrs = set(t.neighbors[b])
    covered = set()
    for v in t.cliques.cliques[b]:
        others = frozenset(t.cliques.per_vertex[v]) - {b}
        if len(others) != 2 or not others <= nbrs:
            return False
        covered.add(others)
    return len(covered) == 3


def leaves(t: CliqueTree) -> list[CliqueId]:
    if len(t) == 1:
        return [0]
    return [a for a in range(len(t)) if t.degree(a) == 1]


def root_at(t: CliqueTree, r: CliqueId) -> RootedCliqueTree:
    """Orient ``t`` away from the leaf ``r``; children in ascending id order."""
    if not 0 <= r < len(t):
        raise ValueError(f"no clique {r}")
    if len(t) > 1 and t.degree(r) != 1:
        raise ValueError(f"clique {r} is not a leaf")
    parent: list[Optional[int]] = [None] * len(t)
    children: list[list[int]] = [[] for _ in range(len(t))]
    seen = {r}
    queue = deque([r])
    while queue:
        a = queue.popleft()
        for b in t.neighbors[a]:
            if b not in seen:
                seen.add(b)
                parent[b] = a
                children[a].append(b)
                queue.append(b)
    return RootedCliqueTree(t, r, tuple(parent), tuple(tuple(sorted(c)) for c in children))
