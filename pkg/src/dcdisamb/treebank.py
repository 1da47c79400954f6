"""Bracketed constituency trees and the syntactic neighbourhood of token spans.

Trees are read from the usual Penn/French Treebank bracketed notation::

    (S (NP (N Jean)) (VN (V dort)) (PONCT .))

Preterminal children are the surface tokens.  Functional decorations on
labels (``NP-SBJ``, ``PP=2``) are stripped and ``-NONE-`` empty elements are
removed before token indices are assigned.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Optional

__all__ = [
    "Node",
    "ParseTree",
    "SyntacticContext",
    "TreeParseError",
    "parse_bracketed_tree",
    "read_trees",
    "node_context",
    "strip_label",
]

EMPTY_ELEMENT = "-NONE-"

_TOKEN_RE = re.compile(r"\(|\)|[^\s()]+")


class TreeParseError(ValueError):
    """Malformed bracketed input; ``offset`` is the character position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


@dataclass(frozen=True)
class Node:
    label: str
    children: tuple[Node, ...] = ()
    start: int = 0
    end: int = 0

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)

    def subtrees(self) -> Iterator[Node]:
        """Pre-order traversal (ancestors before descendants)."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def to_bracketed(self) -> str:
        if self.is_leaf:
            return self.label
        return "(%s %s)" % (self.label, " ".join(c.to_bracketed() for c in self.children))


@dataclass(frozen=True)
class ParseTree:
    root: Node
    tokens: tuple[str, ...] = field(default=())

    def __post_init__(self):
        leaves = tuple(n.label for n in self.root.subtrees() if n.is_leaf)
        if not self.tokens:
            object.__setattr__(self, "tokens", leaves)
        elif tuple(self.tokens) != leaves:
            raise ValueError("tokens do not match the tree leaves")
        else:
            object.__setattr__(self, "tokens", tuple(self.tokens))

    def __len__(self):
        return len(self.tokens)

    def to_bracketed(self) -> str:
        return self.root.to_bracketed()

    def nodes(self) -> Iterator[Node]:
        return self.root.subtrees()


@dataclass(frozen=True)
class SyntacticContext:
    """Category of the covering constituent plus its parent and siblings.

    ``None`` stands for a missing parent or sibling.
    """

    self_cat: str
    parent: Optional[str]
    left_sibling: Optional[str]
    right_sibling: Optional[str]
    exact_cover: bool


def strip_label(label: str) -> str:
    """Drop functional tags: ``NP-SBJ`` -> ``NP``, ``PP=2`` -> ``PP``.

    Labels that begin with a dash (``-LRB-``, ``-NONE-``) are kept as is.
    """
    if label.startswith("-"):
        return label
    cut = re.split(r"[-=]", label, maxsplit=1)[0]
    return cut or label


# Raw parse results before empty-element removal and span assignment:
# (label, children) for constituents, str for tokens.
def _scan(text: str, pos: int):
    """Parse one bracketed expression starting at or after ``pos``.

    Returns ``(raw_tree, end_offset)``, or ``(None, len(text))`` at end of
    input.
    """
    it = _TOKEN_RE.finditer(text, pos)
    stack: list[tuple[str, list, int]] = []
    expect_label = False
    for m in it:
        tok = m.group()
        if expect_label:
            if tok in "()":
                raise TreeParseError("empty label", m.start())
            stack[-1] = (tok, stack[-1][1], stack[-1][2])
            expect_label = False
        elif tok == "(":
            stack.append(("", [], m.start()))
            expect_label = True
        elif tok == ")":
            if not stack:
                raise TreeParseError("unbalanced ')'", m.start())
            label, children, opened = stack.pop()
            if not children:
                raise TreeParseError(f"constituent {label!r} has no children", m.start())
            raw = (label, children)
            if not stack:
                return raw, m.end()
            stack[-1][1].append(raw)
        else:
            if not stack:
                raise TreeParseError(f"token {tok!r} outside brackets", m.start())
            stack[-1][1].append(tok)
    if stack:
        raise TreeParseError("unbalanced '(' (unexpected end of input)", len(text))
    return None, len(text)


def _build(raw, strip_tags: bool) -> Optional[Node]:
    """Turn a raw parse into Nodes with spans, dropping empty elements."""
    counter = 0

    def build(item) -> Optional[Node]:
        nonlocal counter
        if isinstance(item, str):
            node = Node(item, (), counter, counter + 1)
            counter += 1
            return node
        label, kids = item
        if label == EMPTY_ELEMENT:
            return None
        start = counter
        children = tuple(c for c in (build(k) for k in kids) if c is not None)
        if not children:
            return None
        return Node(strip_label(label) if strip_tags else label, children, start, counter)

    return build(raw)


def parse_bracketed_tree(text: str, strip_tags: bool = True) -> ParseTree:
    """Parse exactly one bracketed tree.

    >>> parse_bracketed_tree("(S (ADV ainsi))").tokens
    ('ainsi',)
    """
    raw, end = _scan(text, 0)
    if raw is None:
        raise TreeParseError("empty tree", len(text))
    rest = text[end:]
    if rest.strip():
        raise TreeParseError("trailing material after tree", end + len(rest) - len(rest.lstrip()))
    root = _build(raw, strip_tags)
    if root is None:
        raise TreeParseError("tree contains only empty elements", 0)
    return ParseTree(root)


def read_trees(text: str, strip_tags: bool = True) -> Iterator[ParseTree]:
    """Yield every tree in ``text``; layout between tokens is irrelevant."""
    pos = 0
    while True:
        raw, pos = _scan(text, pos)
        if raw is None:
            return
        root = _build(raw, strip_tags)
        if root is not None:
            yield ParseTree(root)


def node_context(tree: ParseTree, span: tuple[int, int]) -> SyntacticContext:
    """Locate the constituent covering ``span`` and read off its neighbours.

    The chosen node is the highest constituent whose yield is exactly the
    span.  When no constituent matches, the lowest constituent containing
    the span is used and ``exact_cover`` is False.  Bare tokens never count
    as constituents.
    """
    start, end = span
    if not (0 <= start < end <= len(tree.tokens)):
        raise ValueError(f"span {span!r} out of bounds for {len(tree.tokens)} tokens")

    path = [tree.root]
    exact = tree.root.span == (start, end)
    while not exact:
        node = path[-1]
        nxt = None
        for child in node.children:
            if child.start <= start and end <= child.end:
                nxt = child
                break
        if nxt is None or nxt.is_leaf:
            break
        path.append(nxt)
        exact = nxt.span == (start, end)

    target = path[-1]
    if len(path) == 1:
        return SyntacticContext(target.label, None, None, None, exact)
    parent = path[-2]
    i = next(j for j, c in enumerate(parent.children) if c is target)
    left = parent.children[i - 1].label if i > 0 else None
    right = parent.children[i + 1].label if i + 1 < len(parent.children) else None
    return SyntacticContext(target.label, parent.label, left, right, exact)
