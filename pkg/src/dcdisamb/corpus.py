"""Annotated corpus reading/writing and labelled instance construction.

Corpus files are UTF-8 and hold one record per sentence::

    DOC <doc_id> SENT <n>
    <token>\\t<token>\\t...
    <bracketed tree>
    CONN <start> <end> [<probability>]
    ...
    <blank line>

``CONN`` lines mark discourse-usage connective spans (token offsets, end
exclusive); a record may have none.  A trailing probability is written by
``predict`` and ignored on reading.  A directory is read as the sorted
concatenation of its non-hidden regular files.

Mapping from the CoNLL-2015 shared task release (``parses.json`` +
``relations.json``): each ``sentences[i]`` of a document gives the tokens
(``words[j][0]``) and the tree (``parsetree``, drop the outer ``( ... )``
wrapper); every relation with ``Type == "Explicit"`` contributes the token
offsets of ``Connective.TokenList`` (sentence-relative index, 5th element),
grouped per sentence and written as ``CONN`` lines.  Discontinuous
connectives become one ``CONN`` line per contiguous part.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence, TextIO

from .lexicon import Lexicon, fold, match_connectives
from .treebank import ParseTree, TreeParseError, parse_bracketed_tree

__all__ = [
    "CorpusFormatError",
    "Document",
    "Instance",
    "Label",
    "Sentence",
    "build_instances",
    "load_corpus",
    "parse_corpus",
    "write_corpus",
]


class CorpusFormatError(ValueError):
    pass


class Label(str, enum.Enum):
    DISCOURSE = "DISCOURSE"
    NON_DISCOURSE = "NON_DISCOURSE"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[str, ...]
    tree: ParseTree
    gold_spans: tuple[tuple[int, int], ...] = ()

    def validate(self):
        if tuple(self.tokens) != self.tree.tokens:
            raise CorpusFormatError("tokens do not match tree leaves")
        ordered = sorted(self.gold_spans)
        for s, e in ordered:
            if not (0 <= s < e <= len(self.tokens)):
                raise CorpusFormatError(f"gold span [{s},{e}) out of range for {len(self.tokens)} tokens")
        for (s1, e1), (s2, e2) in zip(ordered, ordered[1:]):
            if s2 < e1:
                raise CorpusFormatError(f"gold spans [{s1},{e1}) and [{s2},{e2}) overlap")


@dataclass(frozen=True)
class Document:
    doc_id: str
    sentences: tuple[Sentence, ...]


@dataclass(frozen=True)
class Instance:
    doc_id: str
    sentence: int
    span: tuple[int, int]
    connective: str
    label: Label
    gold_only: bool = False

    @property
    def start(self) -> int:
        return self.span[0]

    @property
    def end(self) -> int:
        return self.span[1]


@dataclass
class _Record:
    doc_id: str
    index: int
    line: int
    tokens: tuple[str, ...] = ()
    tree_text: str = ""
    spans: list = field(default_factory=list)


def _records(lines: Sequence[str], origin: str) -> Iterable[_Record]:
    i = 0
    n = len(lines)
    while i < n:
        if not lines[i].strip():
            i += 1
            continue
        head = lines[i].split()
        if len(head) != 4 or head[0] != "DOC" or head[2] != "SENT":
            raise CorpusFormatError(f"{origin}:{i + 1}: expected 'DOC <id> SENT <n>', got {lines[i]!r}")
        try:
            index = int(head[3])
        except ValueError:
            raise CorpusFormatError(f"{origin}:{i + 1}: bad sentence number {head[3]!r}") from None
        if i + 2 >= n:
            raise CorpusFormatError(f"{origin}:{i + 1}: truncated record")
        rec = _Record(head[1], index, i + 1)
        rec.tokens = tuple(t for t in lines[i + 1].split("\t") if t != "")
        rec.tree_text = lines[i + 2]
        i += 3
        while i < n and lines[i].strip():
            parts = lines[i].split()
            if parts[0] != "CONN" or len(parts) not in (3, 4):
                raise CorpusFormatError(f"{origin}:{i + 1}: expected 'CONN <start> <end>', got {lines[i]!r}")
            try:
                rec.spans.append((int(parts[1]), int(parts[2])))
            except ValueError:
                raise CorpusFormatError(f"{origin}:{i + 1}: non-integer span") from None
            i += 1
        yield rec


def _sentence(rec: _Record, origin: str) -> Sentence:
    where = f"{origin}:{rec.line}: doc {rec.doc_id} sentence {rec.index}"
    try:
        tree = parse_bracketed_tree(rec.tree_text)
    except TreeParseError as exc:
        raise CorpusFormatError(f"{where}: {exc}") from None
    sent = Sentence(rec.tokens, tree, tuple(rec.spans))
    try:
        sent.validate()
    except CorpusFormatError as exc:
        raise CorpusFormatError(f"{where}: {exc}") from None
    return sent


def parse_corpus(
    text: str,
    origin: str = "<string>",
    on_error: Optional[Callable[[CorpusFormatError], None]] = None,
) -> list[Document]:
    """Parse corpus text.

    Without ``on_error`` the first bad sentence raises.  With it, sentences
    whose tree or spans are invalid are passed to the callback and skipped
    (the record structure itself must still be readable).
    """
    docs: dict[str, list[Sentence]] = {}
    seen_order: list[str] = []
    last = None
    for rec in _records(text.splitlines(), origin):
        if rec.doc_id != last and rec.doc_id in docs:
            raise CorpusFormatError(f"{origin}:{rec.line}: document {rec.doc_id!r} is not contiguous")
        if rec.doc_id not in docs:
            docs[rec.doc_id] = []
            seen_order.append(rec.doc_id)
        last = rec.doc_id
        try:
            sent = _sentence(rec, origin)
        except CorpusFormatError as exc:
            if on_error is None:
                raise
            on_error(exc)
            continue
        docs[rec.doc_id].append(sent)
    return [Document(d, tuple(docs[d])) for d in seen_order]


def _corpus_files(path: Path) -> list[Path]:
    if path.is_dir():
        return sorted(p for p in path.iterdir() if p.is_file() and not p.name.startswith("."))
    return [path]


def load_corpus(path, on_error=None) -> list[Document]:
    """Load a corpus file, or every file of a directory in name order."""
    path = Path(path)
    if not path.exists():
        raise CorpusFormatError(f"corpus path {path} does not exist")
    docs: list[Document] = []
    ids: set[str] = set()
    for f in _corpus_files(path):
        try:
            text = f.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise CorpusFormatError(f"cannot read {f}: {exc}") from exc
        for doc in parse_corpus(text, str(f), on_error):
            if doc.doc_id in ids:
                raise CorpusFormatError(f"{f}: duplicate document id {doc.doc_id!r}")
            ids.add(doc.doc_id)
            docs.append(doc)
    return docs


def write_corpus(
    docs: Sequence[Document],
    out: TextIO,
    spans: Optional[dict] = None,
):
    """Serialize ``docs``.

    ``spans`` optionally maps ``(doc_id, sentence_index)`` to a list of
    ``(start, end, probability)`` triples written instead of the gold spans.
    """
    for doc in docs:
        for i, sent in enumerate(doc.sentences):
            out.write(f"DOC {doc.doc_id} SENT {i}\n")
            out.write("\t".join(sent.tokens) + "\n")
            out.write(sent.tree.to_bracketed() + "\n")
            if spans is None:
                for s, e in sent.gold_spans:
                    out.write(f"CONN {s} {e}\n")
            else:
                for s, e, p in spans.get((doc.doc_id, i), ()):
                    out.write(f"CONN {s} {e} {p:.6f}\n")
            out.write("\n")


def build_instances(corpus: Sequence[Document], lexicon: Lexicon) -> list[Instance]:
    """Label every lexicon match and every gold span of the corpus.

    A candidate is DISCOURSE iff its span equals a gold span.  Gold spans the
    matcher did not produce are added with ``gold_only=True``.
    """
    out = []
    for doc in corpus:
        for si, sent in enumerate(doc.sentences):
            gold = set(sent.gold_spans)
            found = {}
            for m in match_connectives(sent.tokens, lexicon):
                found[m.span] = (" ".join(m.form), False)
            for span in gold:
                if span not in found:
                    s, e = span
                    found[span] = (" ".join(fold(t) for t in sent.tokens[s:e]), True)
            for span in sorted(found):
                conn, gold_only = found[span]
                label = Label.DISCOURSE if span in gold else Label.NON_DISCOURSE
                out.append(Instance(doc.doc_id, si, span, conn, label, gold_only))
    return out
