"""Per-clique color triples on a leaf-rooted clique tree."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .clique_tree import CliqueId, RootedCliqueTree
from .errors import StructuralError
from .graph_core import popcount


class ColorTriple(NamedTuple):
    """Counts attached to one clique; tuples compare lexicographically.

    in0children: vertices of the clique in no child clique.
    inparent: vertices shared with the parent clique (0 at the root).
    in2children: vertices lying in at least two child cliques; positive
        exactly on fork cliques.
    """

    in0children: int
    inparent: int
    in2children: int


@dataclass(frozen=True)
class SupplementedCliqueTree:
    rooted: RootedCliqueTree
    colors: tuple[ColorTriple, ...]
    n: int

    def is_fork(self, a: CliqueId) -> bool:
        return self.colors[a].in2children > 0


def color_of(r: RootedCliqueTree, a: CliqueId) -> ColorTriple:
    cm = r.tree.cliques.masks
    clique = cm[a]
    once = twice = thrice = 0
    for c in r.children[a]:
        shared = cm[c] & clique
        thrice |= twice & shared
        twice |= once & shared
        once |= shared
    if thrice:
        raise StructuralError(f"a vertex of clique {a} lies in three children")
    p = r.parent[a]
    return ColorTriple(
        popcount(clique & ~once),
        0 if p is None else popcount(clique & cm[p]),
        popcount(twice),
    )


def build_supplemented(r: RootedCliqueTree, n: int) -> SupplementedCliqueTree:
    return SupplementedCliqueTree(r, tuple(color_of(r, a) for a in range(len(r))), n)
