"""Small named graphs and the seven-node reconstruction tree used across tests."""

from ccfcanon.graph_core import Graph
from ccfcanon.tree_canon import CanonColoredTree

K1 = Graph(1, ((),))
K3 = Graph.from_edges(3, [(0, 1), (0, 2), (1, 2)])
P3 = Graph.from_edges(3, [(0, 1), (1, 2)])
C4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
CLAW = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])

# triangle u v w with one private vertex on each of its three edges
U, V, W, A1, A2, A3 = range(6)
FORK = Graph.from_edges(
    6,
    [(U, V), (V, W), (U, W), (A1, U), (A1, W), (A2, U), (A2, V), (A3, V), (A3, W)],
)
FORK_CLIQUES = sorted(
    tuple(sorted(c)) for c in [(U, V, W), (A1, U, W), (A2, U, V), (A3, V, W)]
)


def disjoint_union(*graphs: Graph) -> Graph:
    edges, offset = [], 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return Graph.from_edges(offset, edges)


# Reconstruction tree: root r -> fork f -> (c1, c5); c5 -> (c2, c3, c4).
R, F, C1, C5, C2, C3, C4_ = range(7)
TREE_COLORS = {
    R: (3, 0, 0),
    F: (0, 3, 1),
    C1: (6, 3, 0),
    C5: (4, 2, 0),
    C2: (3, 1, 0),
    C3: (2, 1, 0),
    C4_: (5, 3, 0),
}
TREE_CHILDREN = [[F], [C1, C5], [], [C2, C3, C4_], [], [], []]
TREE_POST_ORDER = [C1, C2, C3, C4_, C5, F, R]
TREE_B = [
    ((1, 6),),
    ((7, 9),),
    ((10, 11),),
    ((12, 16),),
    ((4, 4), (9, 9), (11, 11), (14, 19)),
    ((4, 6), (19, 19)),
    ((5, 6), (19, 22)),
]
TREE_B_TEXT = [
    "[1,6]",
    "[7,9]",
    "[10,11]",
    "[12,16]",
    "[4,4]∪[9,9]∪[11,11]∪[14,19]",
    "[4,6]∪[19,19]",
    "[5,6]∪[19,22]",
]
TREE_COUNTS = [6, 9, 11, 16, 19, 19, 22]


def seven_node_tree() -> CanonColoredTree:
    return CanonColoredTree.from_structure(
        TREE_CHILDREN, [TREE_COLORS[m] for m in range(7)], n=22
    )


def edge_list_text(g: Graph) -> str:
    lines = [f"p {g.n} {g.edge_count}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"
