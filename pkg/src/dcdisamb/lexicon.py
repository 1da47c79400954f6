"""Connective lexicon loading and longest-match candidate search."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

__all__ = ["CandidateMatch", "Lexicon", "LexiconError", "load_lexicon", "match_connectives", "fold"]


class LexiconError(ValueError):
    pass


def fold(token: str) -> str:
    return token.casefold()


@dataclass(frozen=True)
class Lexicon:
    """A set of connective forms, each a tuple of case-folded tokens."""

    entries: frozenset[tuple[str, ...]]

    def __post_init__(self):
        for form in self.entries:
            if not form or not all(form):
                raise LexiconError(f"invalid lexicon form {form!r}")

    @classmethod
    def from_forms(cls, forms: Iterable[str | Sequence[str]]) -> Lexicon:
        entries = set()
        for form in forms:
            toks = form.split() if isinstance(form, str) else form
            entries.add(tuple(fold(t) for t in toks))
        return cls(frozenset(entries))

    @property
    def max_length(self) -> int:
        return max((len(f) for f in self.entries), default=0)

    def __contains__(self, form) -> bool:
        return tuple(form) in self.entries

    def __len__(self):
        return len(self.entries)

    def sorted_forms(self) -> list[str]:
        return sorted(" ".join(f) for f in self.entries)


@dataclass(frozen=True)
class CandidateMatch:
    form: tuple[str, ...]
    span: tuple[int, int]
    surface: tuple[str, ...]


def load_lexicon(source: str | Path) -> Lexicon:
    """Read one space-separated form per line; ``#`` starts a comment line."""
    try:
        text = Path(source).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise LexiconError(f"cannot read lexicon {source}: {exc}") from exc
    forms = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        forms.append(line.split())
    if not forms:
        raise LexiconError(f"lexicon {source}: no entries")
    return Lexicon.from_forms(forms)


def match_connectives(tokens: Sequence[str], lexicon: Lexicon) -> list[CandidateMatch]:
    """Greedy left-to-right scan emitting the longest form at each position."""
    folded = [fold(t) for t in tokens]
    longest = lexicon.max_length
    out = []
    i = 0
    while i < len(folded):
        for n in range(min(longest, len(folded) - i), 0, -1):
            form = tuple(folded[i:i + n])
            if form in lexicon.entries:
                out.append(CandidateMatch(form, (i, i + n), tuple(tokens[i:i + n])))
                i += n
                break
        else:
            i += 1
    return out
