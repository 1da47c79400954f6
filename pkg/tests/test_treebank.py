import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dcdisamb.treebank import (
    TreeParseError,
    node_context,
    parse_bracketed_tree,
    read_trees,
    strip_label,
)
from helpers import AINSI, WORKED_EXAMPLE_TOKENS, WORKED_EXAMPLE_TREE, brute_force_context, enumerate_nodes, random_bracketed


def test_single_leaf_tree():
    tree = parse_bracketed_tree("(S (ADV ainsi))")
    assert tree.root.label == "S"
    assert [c.label for c in tree.root.children] == ["ADV"]
    assert tree.tokens == ("ainsi",)
    assert tree.root.span == (0, 1)
    assert tree.root.children[0].children[0].is_leaf


def test_worked_example_top_level():
    tree = parse_bracketed_tree(WORKED_EXAMPLE_TREE)
    assert [c.label for c in tree.root.children] == ["NP", "VN", "ADV", "PP"]
    assert list(tree.tokens) == WORKED_EXAMPLE_TOKENS


def test_spans_are_contiguous_unions():
    tree = parse_bracketed_tree(WORKED_EXAMPLE_TREE)
    for node in tree.nodes():
        if node.children:
            assert node.start == node.children[0].start
            assert node.end == node.children[-1].end
            for a, b in zip(node.children, node.children[1:]):
                assert a.end == b.start
        else:
            assert node.end - node.start == 1


@pytest.mark.parametrize(
    "text, offset",
    [
        ("(S (NP", 6),
        ("", 0),
        ("   ", 3),
        ("(S (NP a)))", 10),
        ("(S ( (A a)))", 5),
        ("( (S (A a)))", 2),
        ("(S)", 2),
        ("a", 0),
        ("(S a) (S b)", 6),
    ],
)
def test_parse_errors_carry_offset(text, offset):
    with pytest.raises(TreeParseError) as err:
        parse_bracketed_tree(text)
    assert err.value.offset == offset
    assert f"offset {offset}" in str(err.value)


def test_multiline_and_multiple_trees():
    text = "(S\n  (NP (N a))\n  (VP (V b)))\n\n(S (ADV c))\n"
    trees = list(read_trees(text))
    assert [t.tokens for t in trees] == [("a", "b"), ("c",)]


def test_functional_tags_and_empty_elements():
    tree = parse_bracketed_tree("(S (NP-SBJ (-NONE- *T*-1)) (NP-SBJ=2 (NN x)) (VP (-LRB- -LRB-) (VB y)))")
    assert tree.tokens == ("x", "-LRB-", "y")
    assert [c.label for c in tree.root.children] == ["NP", "VP"]
    assert tree.root.children[1].children[0].label == "-LRB-"
    assert tree.root.children[0].span == (0, 1)


def test_strip_label():
    assert strip_label("NP-SBJ") == "NP"
    assert strip_label("PP=3") == "PP"
    assert strip_label("-NONE-") == "-NONE-"
    assert strip_label("S") == "S"


def test_context_worked_example():
    tree = parse_bracketed_tree(WORKED_EXAMPLE_TREE)
    ctx = node_context(tree, (AINSI, AINSI + 1))
    assert (ctx.self_cat, ctx.parent, ctx.left_sibling, ctx.right_sibling, ctx.exact_cover) == (
        "ADV", "S", "VN", "PP", True,
    )


def test_context_unary_chain_takes_top():
    ctx = node_context(parse_bracketed_tree("(S (ADV ainsi))"), (0, 1))
    assert (ctx.self_cat, ctx.parent, ctx.left_sibling, ctx.right_sibling, ctx.exact_cover) == ("S", None, None, None, True)


def test_context_no_exact_cover_falls_back_to_lca():
    # right-branching over 5 leaves; leaves 1-2 are not a constituent
    tree = parse_bracketed_tree("(A (X w0) (B (X w1) (C (X w2) (D (X w3) (X w4)))))")
    ctx = node_context(tree, (1, 3))
    assert brute_force_context(tree, (1, 3)) == ("B", "A", "X", None, False)
    assert (ctx.self_cat, ctx.parent, ctx.left_sibling, ctx.right_sibling, ctx.exact_cover) == ("B", "A", "X", None, False)


def test_bare_token_is_not_a_constituent():
    tree = parse_bracketed_tree("(S (NP la Lituanie) (V dort))")
    ctx = node_context(tree, (1, 2))
    assert ctx.self_cat == "NP" and not ctx.exact_cover


@pytest.mark.parametrize("span", [(0, 0), (-1, 1), (0, 3), (2, 1)])
def test_context_bad_span(span):
    with pytest.raises(ValueError):
        node_context(parse_bracketed_tree("(S (A a) (B b))"), span)


tree_strings = st.builds(
    lambda seed, bare: random_bracketed(random.Random(seed), 12, bare),
    st.integers(0, 2**32 - 1),
    st.booleans(),
)


@given(tree_strings)
def test_round_trip(text):
    tree = parse_bracketed_tree(text)
    again = parse_bracketed_tree(tree.to_bracketed())
    assert again == tree
    assert again.to_bracketed() == tree.to_bracketed()


@given(tree_strings)
@settings(max_examples=200)
def test_context_matches_brute_force_on_all_spans(text):
    tree = parse_bracketed_tree(text)
    n = len(tree.tokens)
    for s in range(n):
        for e in range(s + 1, n + 1):
            ctx = node_context(tree, (s, e))
            got = (ctx.self_cat, ctx.parent, ctx.left_sibling, ctx.right_sibling, ctx.exact_cover)
            assert got == brute_force_context(tree, (s, e))


@given(tree_strings)
def test_exact_cover_is_maximal(text):
    tree = parse_bracketed_tree(text)
    recs = enumerate_nodes(tree)
    for node, depth, parent_idx, _ in recs:
        if not node.children:
            continue
        ctx = node_context(tree, node.span)
        assert ctx.exact_cover
        # the chosen node has the span and no ancestor shares it
        chosen = [r for r in recs if r[0].children and r[0].span == node.span]
        top = min(chosen, key=lambda r: r[1])
        assert ctx.self_cat == top[0].label
        if top[2] is not None:
            assert recs[top[2]][0].span != node.span
