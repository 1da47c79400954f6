"""Small generated French-like corpora with known labelling rules.

Half of the connectives (``et``, ``ainsi``, ``alors``, ``sinon``) are
discourse-usage or not depending only on their syntactic position; the
other half (``mais``, ``car``, ``à``, ``alors que``, ``puis``) depend only on
the connective itself.  Used by the tests and for trying the CLI without
licensed treebanks.
"""

from __future__ import annotations

import argparse
import random
from pathlib import Path

from .corpus import Document, Sentence
from .treebank import Node, ParseTree

__all__ = ["LEXICON_FORMS", "SYNTACTIC_CONNECTIVES", "LEXICAL_CONNECTIVES", "generate_corpus", "write_synthetic"]

SYNTACTIC_CONNECTIVES = ("et", "ainsi", "alors", "sinon")
LEXICAL_CONNECTIVES = ("mais", "car", "à", "alors que", "puis")
LEXICON_FORMS = SYNTACTIC_CONNECTIVES + LEXICAL_CONNECTIVES + ("donc", "en effet")

# P(discourse) for the lexically determined connectives
_LEXICAL_RATE = {"mais": 0.95, "car": 0.97, "à": 0.0, "alors que": 0.9, "puis": 0.75}

_DETS = ("le", "la", "un", "une", "ce")
_NOUNS = ("gouvernement", "ministre", "projet", "pays", "syndicat", "banque", "marché", "réforme", "conseil", "ville")
_VERBS = ("refuse", "accepte", "annonce", "prépare", "soutient", "critique", "examine", "arrive")
_ADJS = ("nommé", "prévu", "connu", "important")


class _Conn:
    """Marks the leaves of one connective occurrence while building a tree."""

    def __init__(self, tokens, discourse):
        self.tokens = tokens
        self.discourse = discourse


def _np(r):
    return ("NP", [("D", [r.choice(_DETS)]), ("N", [r.choice(_NOUNS)])])


def _vn(r):
    return ("VN", [("V", [r.choice(_VERBS)])])


def _clause(r):
    kids = [_np(r), _vn(r)]
    if r.random() < 0.4:
        kids.append(("PP", [("P", ["de"]), _np(r)]))
    return ("S", kids)


def _punct():
    return ("PONCT", ["."])


def _leaf(conn, i=0):
    return conn if i == 0 else ("@cont", conn, i)


def _sentence(r, conn):
    """One tree (raw nested form) containing the connective ``conn``."""
    if conn == "et":
        if r.random() < 0.5:
            c = _Conn(["et"], True)
            return ("S", [_clause(r), ("CC", [c]), _clause(r), _punct()]), c
        c = _Conn(["et"], False)
        coord = ("NP", [_np(r), ("CC", [c]), _np(r)])
        return ("S", [coord, _vn(r), _punct()]), c
    if conn == "ainsi":
        if r.random() < 0.5:
            c = _Conn(["ainsi"], True)
            return ("S", [_np(r), _vn(r), ("ADV", [c]), ("PP", [("P", ["de"]), _np(r)]), _punct()]), c
        c = _Conn(["ainsi"], False)
        subj = ("NP", [("D", [r.choice(_DETS)]), ("N", [r.choice(_NOUNS)]), ("AP", [("ADV", [c]), ("A", [r.choice(_ADJS)])])])
        return ("S", [subj, _vn(r), _punct()]), c
    if conn == "alors":
        if r.random() < 0.5:
            c = _Conn(["alors"], True)
            return ("S", [("ADV", [c]), ("PONCT", [","]), _np(r), _vn(r), _punct()]), c
        c = _Conn(["alors"], False)
        return ("S", [_np(r), ("VN", [("V", [r.choice(_VERBS)]), ("ADV", [c])]), _np(r), _punct()]), c
    if conn == "sinon":
        if r.random() < 0.5:
            c = _Conn(["sinon"], True)
            return ("S", [_clause(r), ("PONCT", [","]), ("ADV", [c]), _clause(r), _punct()]), c
        c = _Conn(["sinon"], False)
        return ("S", [("NP", [("ADV", [c]), _np(r)]), _vn(r), _punct()]), c

    discourse = r.random() < _LEXICAL_RATE[conn]
    if conn == "mais":
        c = _Conn(["mais"], discourse)
        return ("S", [_clause(r), ("CC", [c]), _clause(r), _punct()]), c
    if conn == "car":
        c = _Conn(["car"], discourse)
        return ("S", [_clause(r), ("CC", [c]), _clause(r), _punct()]), c
    if conn == "puis":
        c = _Conn(["puis"], discourse)
        return ("S", [_clause(r), ("ADV", [c]), _clause(r), _punct()]), c
    if conn == "à":
        c = _Conn(["à"], discourse)
        return ("S", [_np(r), _vn(r), ("PP", [("P", [c]), _np(r)]), _punct()]), c
    if conn == "alors que":
        c = _Conn(["alors", "que"], discourse)
        sub = ("Ssub", [("CS", [("ADV", [c]), ("C", [_leaf(c, 1)])]), _np(r), _vn(r)])
        return ("S", [_clause(r), ("PONCT", [","]), sub, _punct()]), c
    raise ValueError(f"no template for {conn!r}")


def _realize(raw):
    """Build a ParseTree from the raw form and return connective spans."""
    tokens = []
    spans = {}

    def build(item):
        if isinstance(item, _Conn):
            spans[id(item)] = [len(tokens), len(tokens) + 1, item]
            tokens.append(item.tokens[0])
            return Node(item.tokens[0], (), len(tokens) - 1, len(tokens))
        if isinstance(item, tuple) and item[0] == "@cont":
            _, c, i = item
            spans[id(c)][1] = len(tokens) + 1
            tokens.append(c.tokens[i])
            return Node(c.tokens[i], (), len(tokens) - 1, len(tokens))
        if isinstance(item, str):
            tokens.append(item)
            return Node(item, (), len(tokens) - 1, len(tokens))
        label, kids = item
        start = len(tokens)
        children = tuple(build(k) for k in kids)
        return Node(label, children, start, len(tokens))

    root = build(raw)
    return ParseTree(root), [(s, e, c) for s, e, c in spans.values()]


def generate_corpus(n_sentences: int = 240, seed: int = 0, noise: float = 0.02, doc_size: int = 12) -> list[Document]:
    """Generate ``n_sentences`` sentences, one connective occurrence each.

    ``noise`` is the probability of flipping a gold label.  Connectives are
    drawn uniformly from the nine generated forms.
    """
    r = random.Random(seed)
    forms = SYNTACTIC_CONNECTIVES + LEXICAL_CONNECTIVES
    sentences = []
    for _ in range(n_sentences):
        raw, _c = _sentence(r, r.choice(forms))
        tree, conns = _realize(raw)
        gold = []
        for s, e, c in conns:
            label = c.discourse
            if r.random() < noise:
                label = not label
            if label:
                gold.append((s, e))
        sentences.append(Sentence(tree.tokens, tree, tuple(sorted(gold))))
    docs = []
    for d, i in enumerate(range(0, len(sentences), doc_size)):
        docs.append(Document(f"synth{d:03d}", tuple(sentences[i:i + doc_size])))
    return docs


def write_synthetic(out_dir, n_sentences: int = 240, seed: int = 0, noise: float = 0.02):
    """Write ``corpus.txt`` and ``lexicon.txt`` into ``out_dir``."""
    from .corpus import write_corpus

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    docs = generate_corpus(n_sentences, seed, noise)
    with open(out / "corpus.txt", "w", encoding="utf-8") as fh:
        write_corpus(docs, fh)
    (out / "lexicon.txt").write_text(
        "# synthetic connective lexicon\n" + "\n".join(LEXICON_FORMS) + "\n", encoding="utf-8"
    )
    return out / "corpus.txt", out / "lexicon.txt"


def main(argv=None):
    ap = argparse.ArgumentParser(description="write a synthetic corpus and lexicon")
    ap.add_argument("out_dir")
    ap.add_argument("--sentences", type=int, default=240)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--noise", type=float, default=0.02)
    args = ap.parse_args(argv)
    corpus, lexicon = write_synthetic(args.out_dir, args.sentences, args.seed, args.noise)
    print(corpus)
    print(lexicon)


if __name__ == "__main__":
    main()
