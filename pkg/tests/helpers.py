"""Random fixtures and brute-force oracles shared by the test modules.

The oracles deliberately avoid the library code paths they check.
"""

import math
import random

LABELS = ("S", "NP", "VP", "PP", "ADV", "X", "AP")

WORKED_EXAMPLE_TREE = (
    "(S (NP (NPP La) (NPP Lituanie) (PONCT ,) (DET la) (NPP Lettonie) (CC et) (DET l') (NPP Estonie))"
    " (VN (CL s') (V ouvrent)) (ADV ainsi) (PP (P au) (NP (NC multipartisme) (PONCT .))))"
)
WORKED_EXAMPLE_TOKENS = "La Lituanie , la Lettonie et l' Estonie s' ouvrent ainsi au multipartisme .".split()
AINSI = WORKED_EXAMPLE_TOKENS.index("ainsi")


def random_bracketed(rng: random.Random, max_leaves: int = 12, bare_leaves: bool = False) -> str:
    """Random tree string over ``w0 w1 ...``; includes unary chains.

    With ``bare_leaves`` some tokens hang directly off phrasal nodes instead
    of under a preterminal.
    """
    n = rng.randint(1, max_leaves)
    words = [f"w{i}" for i in range(n)]

    def build(lo, hi, depth):
        if hi - lo == 1:
            s = words[lo]
            if not bare_leaves or rng.random() < 0.7 or depth == 0:
                s = f"({rng.choice(LABELS)} {s})"
        else:
            k = rng.randint(2, min(4, hi - lo))
            cuts = sorted(rng.sample(range(lo + 1, hi), k - 1))
            bounds = [lo] + cuts + [hi]
            kids = [build(a, b, depth + 1) for a, b in zip(bounds, bounds[1:])]
            s = f"({rng.choice(LABELS)} {' '.join(kids)})"
        while rng.random() < 0.2:
            s = f"({rng.choice(LABELS)} {s})"
        return s

    return build(0, n, 0)


def enumerate_nodes(tree):
    """Every node as a record ``(node, depth, parent_record_index, child_position)``."""
    out = []

    def walk(node, depth, parent, pos):
        idx = len(out)
        out.append((node, depth, parent, pos))
        for i, c in enumerate(node.children):
            walk(c, depth + 1, idx, i)

    walk(tree.root, 0, None, 0)
    return out


def brute_force_context(tree, span):
    """Exhaustive scan over all constituents.

    Returns ``(self_cat, parent, left, right, exact)`` with None for missing
    neighbours.
    """
    recs = enumerate_nodes(tree)
    internal = [(i, r) for i, r in enumerate(recs) if r[0].children]
    exact = [(i, r) for i, r in internal if (r[0].start, r[0].end) == tuple(span)]
    if exact:
        i, rec = min(exact, key=lambda ir: ir[1][1])
        is_exact = True
    else:
        covering = [(i, r) for i, r in internal if r[0].start <= span[0] and span[1] <= r[0].end]
        i, rec = max(covering, key=lambda ir: ir[1][1])
        is_exact = False
    node, depth, parent_idx, pos = rec
    if parent_idx is None:
        return node.label, None, None, None, is_exact
    parent = recs[parent_idx][0]
    left = parent.children[pos - 1].label if pos > 0 else None
    right = parent.children[pos + 1].label if pos + 1 < len(parent.children) else None
    return node.label, parent.label, left, right, is_exact


def brute_force_matches(tokens, forms):
    """All (start, form) occurrences, resolved leftmost-first then longest-first."""
    folded = [t.casefold() for t in tokens]
    occ = []
    for start in range(len(folded)):
        for form in forms:
            if tuple(folded[start:start + len(form)]) == tuple(form):
                occ.append((start, start + len(form)))
    occ.sort(key=lambda se: (se[0], -(se[1] - se[0])))
    taken = []
    for s, e in occ:
        if all(e <= s2 or s >= e2 for s2, e2 in taken):
            taken.append((s, e))
    return sorted(taken)


def entropy_bits(counts):
    n = sum(counts)
    return -sum(c / n * math.log2(c / n) for c in counts if c)
