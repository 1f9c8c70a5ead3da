"""Canonical forms of colored rooted trees and post-order traversal.

The code of a node is its color followed by the sorted codes of its
children, bracketed so that plain byte comparison equals the recursive
lexicographic comparison of ``(color, sorted child codes)``::

    code(m) = 0x01 | u32be(in0) u32be(inparent) u32be(in2) | code(c1) ... code(ck) | 0x00

Codes are prefix-free, hence comparing concatenations of child codes
compares the child-code sequences element by element.
"""

from __future__ import annotations

import enum
import struct
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .supplement import ColorTriple, SupplementedCliqueTree

_COLOR = struct.Struct(">III")
_OPEN = b"\x01"
_CLOSE = b"\x00"


def encode_code(color: Sequence[int], child_codes: Sequence[bytes]) -> bytes:
    return b"".join((_OPEN, _COLOR.pack(*color), *child_codes, _CLOSE))


def _codes(children: Sequence[Sequence[int]], colors: Sequence[ColorTriple], root: int) -> list[bytes]:
    order = [root]
    for m in order:
        order.extend(children[m])
    codes: list[bytes] = [b""] * len(children)
    for m in reversed(order):
        codes[m] = encode_code(colors[m], sorted(codes[c] for c in children[m]))
    return codes


def canonical_code(s: SupplementedCliqueTree, node: int) -> bytes:
    """Code of the colored subtree below ``node``; equal iff isomorphic."""
    return _codes(s.rooted.children, s.colors, node)[node]


@dataclass(frozen=True)
class CanonColoredTree:
    """Colored rooted tree with a fixed child order.

    ``back_map[m]`` is the source clique id of node ``m``; ``n`` is the
    vertex count of the source graph (the top basic color element).
    """

    n: int
    parent: tuple[Optional[int], ...]
    children: tuple[tuple[int, ...], ...]
    colors: tuple[ColorTriple, ...]
    post_order: tuple[int, ...]
    back_map: tuple[int, ...]
    code: bytes = field(default=b"", compare=False)

    @classmethod
    def from_structure(cls, children, colors, n: int, back_map=None) -> "CanonColoredTree":
        """Build an ordered colored tree as given, without reordering children."""
        size = len(children)
        parent: list[Optional[int]] = [None] * size
        for p, cs in enumerate(children):
            for c in cs:
                if parent[c] is not None:
                    raise ValueError(f"node {c} has two parents")
                parent[c] = p
        roots = [m for m in range(size) if parent[m] is None]
        if len(roots) != 1:
            raise ValueError("expected exactly one root")
        children = tuple(tuple(cs) for cs in children)
        colors = tuple(ColorTriple(*c) for c in colors)
        return cls(
            n=n,
            parent=tuple(parent),
            children=children,
            colors=colors,
            post_order=tuple(_post_order(children, roots[0])),
            back_map=tuple(range(size)) if back_map is None else tuple(back_map),
            code=_codes(children, colors, roots[0])[roots[0]],
        )

    @property
    def root(self) -> int:
        return self.parent.index(None)

    def __len__(self) -> int:
        return len(self.children)

    def is_canonically_ordered(self) -> bool:
        codes = _codes(self.children, self.colors, self.root)
        return all(
            [codes[c] for c in cs] == sorted(codes[c] for c in cs) for cs in self.children
        )


def _post_order(children: Sequence[Sequence[int]], root: int) -> list[int]:
    out: list[int] = []
    stack = [(root, False)]
    while stack:
        m, expanded = stack.pop()
        if expanded:
            out.append(m)
        else:
            stack.append((m, True))
            stack.extend((c, False) for c in reversed(children[m]))
    return out


def canonize_tree(s: SupplementedCliqueTree) -> CanonColoredTree:
    """Sort children by code and number nodes in preorder."""
    rooted = s.rooted
    codes = _codes(rooted.children, s.colors, rooted.root)
    # stable sort: equal-code siblings keep provisional order
    ordered = [sorted(cs, key=codes.__getitem__) for cs in rooted.children]
    back_map: list[int] = []
    stack = [rooted.root]
    while stack:
        a = stack.pop()
        back_map.append(a)
        stack.extend(reversed(ordered[a]))
    index = {a: i for i, a in enumerate(back_map)}
    children = tuple(tuple(index[c] for c in ordered[a]) for a in back_map)
    parent = tuple(
        None if rooted.parent[a] is None else index[rooted.parent[a]] for a in back_map
    )
    return CanonColoredTree(
        n=s.n,
        parent=parent,
        children=children,
        colors=tuple(s.colors[a] for a in back_map),
        post_order=tuple(_post_order(children, 0)),
        back_map=tuple(back_map),
        code=codes[rooted.root],
    )


class Move(enum.Enum):
    DOWN = "down"
    OVER = "over"
    UP = "up"


@dataclass
class TraversalState:
    current: int
    last_move: Optional[Move] = None
    count: int = 0


def first_child(t: CanonColoredTree, m: int) -> Optional[int]:
    cs = t.children[m]
    return cs[0] if cs else None


def next_sibling(t: CanonColoredTree, m: int) -> Optional[int]:
    p = t.parent[m]
    if p is None:
        return None
    sibs = t.children[p]
    i = sibs.index(m)
    return sibs[i + 1] if i + 1 < len(sibs) else None


def _step(t: CanonColoredTree, state: TraversalState) -> Optional[Move]:
    """Choose and perform the next move; return None when the walk is over."""
    if state.last_move is Move.UP:
        candidates = (Move.OVER, Move.UP)
    else:
        candidates = (Move.DOWN, Move.OVER, Move.UP)
    for move in candidates:
        if move is Move.DOWN:
            target = first_child(t, state.current)
        elif move is Move.OVER:
            target = next_sibling(t, state.current)
        else:
            target = t.parent[state.current]
        if target is not None:
            state.current = target
            state.last_move = move
            return move
    return None


def walk_post_order(t: CanonColoredTree) -> Iterator[int]:
    """Depth-first walk remembering only the current node and last move.

    A node is emitted when the move leaving it is not ``down``, i.e. on
    its last visit.
    """
    state = TraversalState(t.root)
    while True:
        here = state.current
        move = _step(t, state)
        if move is not Move.DOWN:
            yield here
        if move is None:
            return


def post_order_logspace(t: CanonColoredTree) -> list[int]:
    return list(walk_post_order(t))
