"""Plain-text report made of named sections, with per-section TSV export.

Layout::

    [section]
    key = value
    @table
    col<TAB>col
    val<TAB>val
    @end

Sections are separated by a blank line.  Everything is deterministic: no
timestamps, fixed float formatting.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Optional, Sequence

__all__ = ["Section", "pct", "num", "render", "parse_report", "write_tables"]


def pct(x: float) -> str:
    """Fraction -> percentage with 2 decimals, rounded half-up."""
    return str(Decimal(repr(x * 100)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def num(x: float, places: int = 4) -> str:
    if x != x or x in (float("inf"), float("-inf")):
        return str(x)
    return str(Decimal(repr(x)).quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP))


@dataclass
class Section:
    name: str
    items: list = field(default_factory=list)
    header: Optional[Sequence[str]] = None
    rows: list = field(default_factory=list)

    def add(self, key, value):
        self.items.append((key, value))
        return self

    def table(self, header, rows):
        self.header = tuple(header)
        self.rows = [tuple(map(str, r)) for r in rows]
        return self

    def render(self) -> str:
        lines = [f"[{self.name}]"]
        lines += [f"{k} = {v}" for k, v in self.items]
        if self.header is not None:
            lines.append("@table")
            lines.append("\t".join(self.header))
            lines += ["\t".join(r) for r in self.rows]
            lines.append("@end")
        return "\n".join(lines) + "\n"


def render(sections: Sequence[Section], title: str, notes: Sequence[str] = ()) -> str:
    head = [f"# {title}"] + [f"# {n}" for n in notes]
    return "\n".join(head) + "\n\n" + "\n".join(s.render() for s in sections)


def parse_report(text: str) -> dict:
    """Read a rendered report back into ``{name: {"items": {...}, "header": [...], "rows": [...]}}``."""
    out = {}
    cur = None
    in_table = False
    for line in text.splitlines():
        if in_table:
            if line == "@end":
                in_table = False
            elif cur["header"] is None:
                cur["header"] = line.split("\t")
            else:
                cur["rows"].append(line.split("\t"))
        elif line.startswith("[") and line.endswith("]"):
            cur = out.setdefault(line[1:-1], {"items": {}, "header": None, "rows": []})
        elif line == "@table":
            in_table = True
        elif cur is not None and " = " in line:
            k, v = line.split(" = ", 1)
            cur["items"][k] = v
    return out


def write_tables(sections: Sequence[Section], out_dir) -> list[Path]:
    """Export each tabular section as ``<name>.tsv``; key/value sections as two columns."""
    out_dir = Path(out_dir)
    written = []
    for s in sections:
        path = out_dir / f"{s.name}.tsv"
        with open(path, "w", encoding="utf-8") as fh:
            if s.header is not None:
                fh.write("\t".join(s.header) + "\n")
                for r in s.rows:
                    fh.write("\t".join(r) + "\n")
            else:
                fh.write("key\tvalue\n")
                for k, v in s.items:
                    fh.write(f"{k}\t{v}\n")
        written.append(path)
    return written
