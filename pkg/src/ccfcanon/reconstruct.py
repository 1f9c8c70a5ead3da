"""Rebuild an ordered copy of the graph from a canonical colored clique tree.

Nodes are visited in post-order. Each node receives a clique of numbers in
``[1, n]``: numbers already issued to overlapping earlier cliques are
recovered as intervals ending at the ``count`` recorded after those
cliques, and vertices seen for the first time take the next unused numbers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Literal, Optional, Sequence

from .errors import StructuralError, WitnessError
from .supplement import SupplementedCliqueTree
from .tree_canon import CanonColoredTree, walk_post_order

Mode = Literal["memoized", "logspace"]
Interval = tuple[int, int]


@dataclass(frozen=True)
class NumberClique:
    """A set of numbers kept as maximal ascending disjoint intervals."""

    intervals: tuple[Interval, ...]

    @classmethod
    def from_parts(cls, parts: Iterable[Interval], n: Optional[int] = None) -> "NumberClique":
        """Union of closed intervals; empty parts are dropped, overlaps rejected."""
        spans = []
        for lo, hi in parts:
            if hi < lo - 1:
                raise StructuralError(f"interval [{lo},{hi}] has negative width")
            if hi < lo:
                continue
            if lo < 1 or (n is not None and hi > n):
                raise StructuralError(f"interval [{lo},{hi}] leaves [1,{n}]")
            spans.append((lo, hi))
        spans.sort()
        merged: list[list[int]] = []
        for lo, hi in spans:
            if merged and lo <= merged[-1][1]:
                raise StructuralError(f"interval [{lo},{hi}] overlaps an earlier part")
            if merged and lo == merged[-1][1] + 1:
                merged[-1][1] = hi
            else:
                merged.append([lo, hi])
        if not merged:
            raise StructuralError("clique came out empty")
        return cls(tuple((lo, hi) for lo, hi in merged))

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(x for lo, hi in self.intervals for x in range(lo, hi + 1))

    def __len__(self) -> int:
        return sum(hi - lo + 1 for lo, hi in self.intervals)

    def __contains__(self, x: int) -> bool:
        return any(lo <= x <= hi for lo, hi in self.intervals)

    def __str__(self) -> str:
        return "∪".join(f"[{lo},{hi}]" for lo, hi in self.intervals)


@dataclass(frozen=True)
class TraceStep:
    """One line of the per-node trace: case label, the child it concerns, and its intervals."""

    case: str
    about: Optional[int]
    intervals: tuple[Interval, ...]


@dataclass(frozen=True)
class CliqueBuild:
    cliques: tuple[NumberClique, ...]
    final_count: int
    counts: tuple[int, ...]
    trace: tuple[tuple[TraceStep, ...], ...]
    order: tuple[int, ...]


@dataclass
class ReconState:
    count: int = 0
    emitted: dict[int, NumberClique] = field(default_factory=dict)


def flags(t: CanonColoredTree, m: int) -> tuple[bool, bool]:
    """``(isforkclique, isforkchild2)`` read off the colors."""
    isfork = t.colors[m].in2children > 0
    p = t.parent[m]
    child2 = (
        p is not None
        and t.colors[p].in2children > 0
        and len(t.children[p]) > 1
        and t.children[p][1] == m
    )
    return isfork, child2


def _increment(t: CanonColoredTree, m: int) -> int:
    isfork, child2 = flags(t, m)
    if isfork:
        return 0
    if child2:
        return t.colors[m].in0children - t.colors[t.parent[m]].in2children
    return t.colors[m].in0children


def _count_table(t: CanonColoredTree) -> dict[int, int]:
    count = 0
    table = {}
    for m in t.post_order:
        count += _increment(t, m)
        table[m] = count
    return table


def _recount(t: CanonColoredTree, target: int) -> int:
    # fresh traversal; only the running total survives between nodes
    count = 0
    for m in walk_post_order(t):
        count += _increment(t, m)
        if m == target:
            return count
    raise ValueError(f"node {target} not reached")


def count_after(t: CanonColoredTree, m: int, mode: Mode = "memoized") -> int:
    """Value of ``count`` right after visiting ``m`` in post-order."""
    if mode == "memoized":
        return _count_table(t)[m]
    if mode == "logspace":
        return _recount(t, m)
    raise ValueError(f"unknown mode {mode!r}")


def build_cliques(t: CanonColoredTree, mode: Mode = "memoized") -> CliqueBuild:
    if mode not in ("memoized", "logspace"):
        raise ValueError(f"unknown mode {mode!r}")
    memo = mode == "memoized"
    state = ReconState()
    counts: dict[int, int] = {}
    colors = t.colors

    def count_of(x: int) -> int:
        return counts[x] if memo else _recount(t, x)

    def fork_children(x: int) -> tuple[int, int]:
        cs = t.children[x]
        if len(cs) != 2:
            raise StructuralError(f"fork node {x} has {len(cs)} children")
        return cs[0], cs[1]

    order: list[int] = []
    running: list[int] = []
    trace: list[tuple[TraceStep, ...]] = []
    for m in t.post_order if memo else walk_post_order(t):
        steps: list[TraceStep] = []
        isfork, child2 = flags(t, m)
        if isfork:
            first, second = fork_children(m)
            c1, c2 = count_of(first), count_of(second)
            steps.append(TraceStep("1", None, (
                (c1 - colors[first].inparent + 1, c1),
                (c2 - colors[second].inparent + colors[m].in2children + 1, c2),
            )))
        else:
            for c in t.children[m]:
                if flags(t, c)[0]:
                    g1, g2 = fork_children(c)
                    k1, k2 = count_of(g1), count_of(g2)
                    shift = colors[c].in2children
                    steps.append(TraceStep("2b", c, (
                        (k1 - colors[g1].inparent + shift + 1, k1),
                        (k2 - colors[g2].inparent + shift + 1, k2),
                    )))
                else:
                    k = count_of(c)
                    steps.append(TraceStep("2a", c, ((k - colors[c].inparent + 1, k),)))
            in0 = colors[m].in0children
            if not child2:
                state.count += in0
                steps.append(TraceStep("2c", None, ((state.count - in0 + 1, state.count),)))
            else:
                p = t.parent[m]
                sib = t.children[p][0]
                in2p = colors[p].in2children
                state.count += in0 - in2p
                k = count_of(sib)
                base = k - colors[sib].inparent
                steps.append(TraceStep("2d", sib, (
                    (base + 1, base + in2p),
                    (state.count - in0 + in2p + 1, state.count),
                )))
        if state.count > t.n:
            raise StructuralError(f"count {state.count} exceeds n={t.n}")
        parts = [iv for step in steps for iv in step.intervals]
        state.emitted[m] = NumberClique.from_parts(parts, t.n)
        if memo:
            counts[m] = state.count
        order.append(m)
        running.append(state.count)
        trace.append(tuple(steps))
    if state.count != t.n:
        raise StructuralError(f"final count {state.count} differs from n={t.n}")
    return CliqueBuild(
        cliques=tuple(state.emitted[m] for m in order),
        final_count=state.count,
        counts=tuple(running),
        trace=tuple(trace),
        order=tuple(order),
    )


@dataclass(frozen=True)
class OrderedGraph:
    """Graph on ``1..n`` with its natural order; edges stored as ``(u, v)``, ``u < v``."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        prev = (0, 0)
        for e in self.edges:
            u, v = e
            if not 1 <= u < v <= self.n:
                raise ValueError(f"bad edge ({u}, {v}) for n={self.n}")
            if e <= prev:
                raise ValueError("edges must be sorted and duplicate-free")
            prev = e

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "OrderedGraph":
        return cls(n, tuple(sorted({(min(e), max(e)) for e in edges})))

    def serialize(self) -> bytes:
        lines = [f"{self.n} {len(self.edges)}"]
        lines.extend(f"{u} {v}" for u, v in self.edges)
        return ("\n".join(lines) + "\n").encode("ascii")

    @classmethod
    def parse(cls, data: bytes) -> "OrderedGraph":
        rows = data.decode("ascii").split("\n")
        n, m = map(int, rows[0].split())
        edges = [tuple(map(int, r.split())) for r in rows[1 : 1 + m]]
        return cls(n, tuple(edges))

    def to_graph(self):
        from .graph_core import Graph

        return Graph.from_edges(self.n, ((u - 1, v - 1) for u, v in self.edges))


def assemble_ordered_copy(cliques: Sequence[NumberClique], n: int) -> OrderedGraph:
    edges: set[tuple[int, int]] = set()
    for b in cliques:
        edges.update(combinations(b.members, 2))
    return OrderedGraph(n, tuple(sorted(edges)))


@dataclass(frozen=True)
class WitnessBijection:
    """``h[v]`` is the number in ``[1, n]`` assigned to source vertex ``v``.

    ``anc_counts[(clique, v)]`` counts the cliques on the path from
    ``clique`` up to the root (inclusive) that contain ``v``; cliques are
    given as sorted vertex tuples.
    """

    h: tuple[int, ...]
    anc_counts: dict[tuple[tuple[int, ...], int], int] = field(default_factory=dict, compare=False)


def _anc_counts(s: SupplementedCliqueTree) -> dict[tuple[int, int], int]:
    rooted = s.rooted
    cm = rooted.tree.cliques.masks
    out = {}
    for a, clique in enumerate(rooted.tree.cliques.cliques):
        for v in clique:
            k = 0
            x: Optional[int] = a
            while x is not None:
                if (cm[x] >> v) & 1:
                    k += 1
                x = rooted.parent[x]
            out[(a, v)] = k
    return out


def build_witness(
    s: SupplementedCliqueTree, t: CanonColoredTree, cliques: Sequence[NumberClique]
) -> WitnessBijection:
    """Assign numbers to source vertices clique by clique along the post-order.

    Vertices met for the first time take the freshly issued numbers of the
    node's clique, in order of increasing ancestor count (ties by vertex
    id). Every property that makes the map an isomorphism is then checked.
    """
    source = s.rooted.tree.cliques.cliques
    anc = _anc_counts(s)
    table = _count_table(t)
    n = s.n
    h: dict[int, int] = {}
    prev = 0
    for m, b in zip(t.post_order, cliques):
        a = t.back_map[m]
        new = sorted((v for v in source[a] if v not in h), key=lambda v: (anc[(a, v)], v))
        fresh = [x for x in b.members if x > prev]
        if len(new) != len(fresh):
            raise WitnessError(
                f"clique {a}: {len(new)} new vertices but {len(fresh)} fresh numbers"
            )
        h.update(zip(new, fresh))
        prev = table[m]
    if sorted(h) != list(range(n)) or sorted(h.values()) != list(range(1, n + 1)):
        raise WitnessError("witness is not a bijection onto [1, n]")
    _check_witness(s, t, cliques, h, anc, table)
    return WitnessBijection(
        tuple(h[v] for v in range(n)),
        {(source[a], v): k for (a, v), k in anc.items()},
    )


def _check_witness(s, t, cliques, h, anc, table) -> None:
    source = s.rooted.tree.cliques.cliques
    colors = t.colors
    for m, b in zip(t.post_order, cliques):
        a = t.back_map[m]
        if sorted(h[v] for v in source[a]) != list(b.members):
            raise WitnessError(f"h(A) != B for node {m}")
        isfork, child2 = flags(t, m)
        c = table[m]
        if not isfork and not child2:
            by_number = sorted(source[a], key=h.__getitem__)
            ranks = [anc[(a, v)] for v in by_number]
            if ranks != sorted(ranks):
                raise WitnessError(f"ancestor counts not monotone in h on node {m}")
            s1 = sorted(h[v] for v in source[a] if anc[(a, v)] > 1)
            if s1 != list(range(c - colors[m].inparent + 1, c + 1)):
                raise WitnessError(f"parent overlap of node {m} not at the top of its range")
        if child2:
            in2p = colors[t.parent[m]].in2children
            s2 = sorted(h[v] for v in source[a] if anc[(a, v)] > 2)
            if s2 != list(range(c - colors[m].inparent + in2p + 1, c + 1)):
                raise WitnessError(f"grandparent overlap of node {m} misplaced")
