"""Undirected graphs over dense vertex ids, class recognizers and test oracles.

Vertex sets are handled internally as Python ints used as bitmasks; the
public surface speaks in sorted tuples of vertex ids.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

VertexSet = tuple[int, ...]


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph on vertices ``0..n-1``."""

    n: int
    adjacency: tuple[VertexSet, ...]

    def __post_init__(self) -> None:
        if len(self.adjacency) != self.n:
            raise ValueError(f"expected {self.n} neighbor lists, got {len(self.adjacency)}")
        for v, nbrs in enumerate(self.adjacency):
            if list(nbrs) != sorted(set(nbrs)):
                raise ValueError(f"neighbors of {v} must be sorted and duplicate-free")
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise ValueError(f"neighbor {u} of {v} out of range")
                if u == v:
                    raise ValueError(f"self-loop at {v}")
        for v, nbrs in enumerate(self.adjacency):
            for u in nbrs:
                if not (self.masks[u] >> v) & 1:
                    raise ValueError(f"edge {v}-{u} is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} out of range for n={n}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> "Graph":
        return cls(len(masks), tuple(tuple(bits(m)) for m in masks))

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(mask_of(nbrs) for nbrs in self.adjacency)

    @cached_property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.masks[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def is_clique(self, vertices: Iterable[int]) -> bool:
        return _is_clique_mask(self.masks, mask_of(vertices))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm must be a permutation of range(n)")
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))


@dataclass(frozen=True)
class ComponentDecomposition:
    """Connected components, each with the map from its ids to the original ids."""

    components: tuple[tuple[Graph, VertexSet], ...]

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)


def _is_clique_mask(masks: Sequence[int], s: int) -> bool:
    for w in bits(s):
        if s & ~masks[w] & ~(1 << w):
            return False
    return True


def _independent_triple(masks: Sequence[int], cand: int) -> Optional[tuple[int, int, int]]:
    for a in bits(cand):
        rest_a = cand & ~masks[a] & ~((2 << a) - 1)
        for b in bits(rest_a):
            rest_b = rest_a & ~masks[b] & ~((2 << b) - 1)
            if rest_b:
                c = (rest_b & -rest_b).bit_length() - 1
                return a, b, c
    return None


def _independent_pair(masks: Sequence[int], cand: int) -> Optional[tuple[int, int]]:
    for a in bits(cand):
        rest = cand & ~masks[a] & ~((2 << a) - 1)
        if rest:
            return a, (rest & -rest).bit_length() - 1
    return None


def is_claw_free(g: Graph) -> tuple[bool, Optional[tuple[int, int, int, int]]]:
    """Scan every vertex as a potential claw center.

    Returns ``(True, None)`` or ``(False, (center, a, b, c))`` where
    ``a, b, c`` are pairwise non-adjacent neighbors of ``center``.
    """
    masks = g.masks
    for c in range(g.n):
        if len(g.adjacency[c]) < 3:
            continue
        triple = _independent_triple(masks, masks[c])
        if triple is not None:
            return False, (c, *triple)
    return True, None


def claw_through(masks: Sequence[int], x: int) -> bool:
    """True if some induced claw contains vertex ``x``."""
    nx_ = masks[x]
    if _independent_triple(masks, nx_) is not None:
        return True
    closed = nx_ | (1 << x)
    for c in bits(nx_):
        if _independent_pair(masks, masks[c] & ~closed) is not None:
            return True
    return False


def maximum_cardinality_search(g: Graph) -> list[int]:
    """Visit order of maximum-cardinality search (ties broken by smallest id)."""
    weight = [0] * g.n
    numbered = [False] * g.n
    order: list[int] = []
    for _ in range(g.n):
        best = -1
        for v in range(g.n):
            if not numbered[v] and (best < 0 or weight[v] > weight[best]):
                best = v
        numbered[best] = True
        order.append(best)
        for u in g.adjacency[best]:
            if not numbered[u]:
                weight[u] += 1
    return order


def is_perfect_elimination_ordering(g: Graph, order: Sequence[int]) -> bool:
    pos = {v: i for i, v in enumerate(order)}
    if len(pos) != g.n or set(pos) != set(range(g.n)):
        return False
    masks = g.masks
    for v in order:
        later = mask_of(u for u in g.adjacency[v] if pos[u] > pos[v])
        if not _is_clique_mask(masks, later):
            return False
    return True


def is_chordal(g: Graph) -> tuple[bool, Optional[list[int]]]:
    """Chordality via maximum-cardinality search.

    The reverse MCS order is a perfect elimination ordering iff ``g`` is
    chordal; the ordering is verified before it is returned.
    """
    peo = maximum_cardinality_search(g)[::-1]
    if is_perfect_elimination_ordering(g, peo):
        return True, peo
    return False, None


def component_vertices(g: Graph) -> list[list[int]]:
    """Vertex lists of the connected components, in order of least vertex."""
    seen = [False] * g.n
    parts = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for u in g.adjacency[v]:
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
                    queue.append(u)
        parts.append(comp)
    return parts


def connected_components(g: Graph) -> ComponentDecomposition:
    return ComponentDecomposition(tuple(induced_subgraph(g, c) for c in component_vertices(g)))


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(component_vertices(g)) == 1


def induced_subgraph(g: Graph, w: Iterable[int]) -> tuple[Graph, VertexSet]:
    """Induced subgraph on ``w``, re-indexed densely in ascending id order."""
    emb = tuple(sorted(set(w)))
    if not emb:
        raise ValueError("induced subgraph needs a non-empty vertex set")
    if emb[0] < 0 or emb[-1] >= g.n:
        raise ValueError("vertex set not contained in the graph")
    index = {v: i for i, v in enumerate(emb)}
    adjacency = tuple(
        tuple(sorted(index[u] for u in g.adjacency[v] if u in index)) for v in emb
    )
    return Graph(len(emb), adjacency), emb


def twin_quotient(g: Graph) -> tuple[Graph, VertexSet]:
    """Induced subgraph on one vertex per true-twin class (the least id).

    Chordality and claw-freeness are unchanged by adding or removing true
    twins, so the recognizers can run on the smaller graph.
    """
    reps: dict[int, int] = {}
    for v, m in enumerate(g.masks):
        reps.setdefault(m | (1 << v), v)
    if len(reps) == g.n or g.n == 0:
        return g, tuple(range(g.n))
    return induced_subgraph(g, reps.values())


def brute_force_isomorphic(g: Graph, h: Graph) -> Optional[tuple[int, ...]]:
    """Backtracking isomorphism search; ``result[v]`` is the image of ``v``.

    Test oracle only. Candidates are pruned by degree and by adjacency to
    the already-mapped vertices.
    """
    if g.n != h.n or g.edge_count != h.edge_count:
        return None
    if sorted(map(len, g.adjacency)) != sorted(map(len, h.adjacency)):
        return None
    n = g.n
    gm, hm = g.masks, h.masks
    # BFS order keeps each new vertex attached to mapped ones, pruning early
    order: list[int] = []
    seen = [False] * n
    for s in sorted(range(n), key=lambda v: -g.degree(v)):
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        while queue:
            v = queue.popleft()
            order.append(v)
            for u in g.adjacency[v]:
                if not seen[u]:
                    seen[u] = True
                    queue.append(u)
    image = [-1] * n
    used = 0

    def extend(i: int) -> bool:
        nonlocal used
        if i == n:
            return True
        v = order[i]
        dv = g.degree(v)
        for c in range(n):
            if (used >> c) & 1 or h.degree(c) != dv:
                continue
            ok = True
            for j in range(i):
                u = order[j]
                if ((gm[v] >> u) & 1) != ((hm[c] >> image[u]) & 1):
                    ok = False
                    break
            if not ok:
                continue
            image[v] = c
            used |= 1 << c
            if extend(i + 1):
                return True
            used &= ~(1 << c)
            image[v] = -1
        return False

    if extend(0):
        return tuple(image)
    return None


def brute_force_max_cliques(g: Graph) -> list[VertexSet]:
    """All maximal cliques by Bron-Kerbosch with pivoting; oracle only.

    The pivot (most neighbors in ``p``) keeps large cliques from blowing up
    the search; without it a clique on k vertices costs 2^k calls.
    """
    masks = g.masks
    out: list[VertexSet] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(tuple(bits(r)))
            return
        pivot = max(bits(p | x), key=lambda u: popcount(p & masks[u]))
        for v in bits(p & ~masks[pivot]):
            expand(r | (1 << v), p & masks[v], x & masks[v])
            p &= ~(1 << v)
            x |= 1 << v

    if g.n:
        expand(0, (1 << g.n) - 1, 0)
    return sorted(out)
