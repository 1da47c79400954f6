"""The six categorical features describing a candidate connective."""

from __future__ import annotations

from dataclasses import astuple, dataclass
from typing import Iterable, Sequence, TextIO

from .corpus import Document, Instance, Sentence
from .lexicon import fold
from .treebank import node_context

__all__ = [
    "AT_BEGINNING",
    "NOT_AT_BEGINNING",
    "NONE",
    "FEATURES",
    "FEATURE_TITLES",
    "FeatureVector",
    "extract_features",
    "featurize",
    "write_feature_dump",
]

AT_BEGINNING = "at-the-beginning"
NOT_AT_BEGINNING = "not-at-the-beginning"
NONE = "NONE"

FEATURES = (
    "conn",
    "pos",
    "self_cat",
    "self_cat_parent",
    "self_cat_left_sibling",
    "self_cat_right_sibling",
)

FEATURE_TITLES = {
    "conn": "Conn",
    "pos": "Pos",
    "self_cat": "SelfCat",
    "self_cat_parent": "SelfCatParent",
    "self_cat_left_sibling": "SelfCatLeftSibling",
    "self_cat_right_sibling": "SelfCatRightSibling",
}


@dataclass(frozen=True)
class FeatureVector:
    conn: str
    pos: str
    self_cat: str
    self_cat_parent: str
    self_cat_left_sibling: str
    self_cat_right_sibling: str

    def get(self, name: str) -> str:
        return getattr(self, name)

    def values(self) -> tuple[str, ...]:
        return astuple(self)


def extract_features(instance: Instance, sentence: Sentence) -> FeatureVector:
    start, end = instance.span
    ctx = node_context(sentence.tree, (start, end))
    return FeatureVector(
        conn=" ".join(fold(t) for t in sentence.tokens[start:end]),
        pos=AT_BEGINNING if start == 0 else NOT_AT_BEGINNING,
        self_cat=ctx.self_cat,
        self_cat_parent=ctx.parent or NONE,
        self_cat_left_sibling=ctx.left_sibling or NONE,
        self_cat_right_sibling=ctx.right_sibling or NONE,
    )


def featurize(instances: Iterable[Instance], corpus: Sequence[Document]) -> list[FeatureVector]:
    docs = {d.doc_id: d for d in corpus}
    return [extract_features(i, docs[i.doc_id].sentences[i.sentence]) for i in instances]


def write_feature_dump(instances: Sequence[Instance], vectors: Sequence[FeatureVector], out: TextIO):
    """One tab-separated line per instance:
    ``doc sent start end label conn pos self_cat parent left right``."""
    for inst, vec in zip(instances, vectors):
        row = (inst.doc_id, inst.sentence, inst.start, inst.end, inst.label.value) + vec.values()
        out.write("\t".join(map(str, row)) + "\n")
