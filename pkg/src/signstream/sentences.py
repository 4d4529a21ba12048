"""Order-invariant keyword-set to sentence generation.

Keyword sequences collapse to a canonical key (lowercased, deduplicated,
sorted, joined with "|"), so every permutation of one keyword set maps to
the same sentence. Lookup is the bundled deterministic generator; the
generator protocol admits a learned backend later.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Protocol

KEY_SEPARATOR = "|"
FALLBACK_PREFIX = "I want to say: "


class EmptyKeywordsError(ValueError):
    """Sentence generation needs at least one keyword."""


class TableFormatError(ValueError):
    """Sentence-table row that cannot be parsed; message carries the line."""


class TableConflictError(ValueError):
    """Two rows map one canonical keyword set to different sentences."""


def canonical_key(keywords: Iterable[str]) -> str:
    """Lowercase, deduplicate, sort, and join a keyword sequence."""
    words = [str(w).strip().lower() for w in keywords]
    if not words:
        raise EmptyKeywordsError("keyword sequence is empty")
    if any(not w for w in words):
        raise ValueError(f"empty keyword in {list(keywords)!r}")
    if any(KEY_SEPARATOR in w for w in words):
        raise ValueError(f"keyword may not contain {KEY_SEPARATOR!r}")
    return KEY_SEPARATOR.join(sorted(set(words)))


@dataclass(frozen=True)
class GeneratedSentence:
    text: str
    matched: bool


class SentenceTable:
    """Canonical-key to sentence mapping."""

    def __init__(self, entries: dict[str, str] | None = None):
        self.entries = dict(entries or {})

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, key: str) -> bool:
        return key in self.entries

    @property
    def keywords(self) -> set[str]:
        """Every word appearing in some entry key."""
        words: set[str] = set()
        for key in self.entries:
            words.update(key.split(KEY_SEPARATOR))
        return words


def generate(table: SentenceTable, keywords: Iterable[str]) -> GeneratedSentence:
    """Sentence for a keyword sequence; falls back to listing the keywords.

    Total for any non-empty sequence, and invariant under permutation of the
    keywords (the fallback lists them in detection order).
    """
    keywords = list(keywords)
    key = canonical_key(keywords)
    sentence = table.entries.get(key)
    if sentence is not None:
        return GeneratedSentence(sentence, True)
    return GeneratedSentence(FALLBACK_PREFIX + ", ".join(keywords), False)


class SentenceGenerator(Protocol):
    def generate(self, keywords: Iterable[str]) -> GeneratedSentence: ...


class TableGenerator:
    """Lookup-backed generator over a fixed table."""

    def __init__(self, table: SentenceTable | None = None):
        self.table = table if table is not None else bundled_table()

    def generate(self, keywords: Iterable[str]) -> GeneratedSentence:
        return generate(self.table, keywords)


def parse_sentence_table(text: str, source: str = "<string>") -> SentenceTable:
    """Parse "k1, k2 -> sentence" rows; '#' starts a comment line.

    Both "->" and the arrow character are accepted. Rows whose canonical
    keys collide with a different sentence are conflicts and rejected.
    """
    entries: dict[str, str] = {}
    first_row: dict[str, tuple[int, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        for arrow in ("→", "->"):
            if arrow in line:
                left, _, right = line.partition(arrow)
                break
        else:
            raise TableFormatError(f"{source}:{lineno}: missing '->' in {raw!r}")
        sentence = right.strip()
        if not sentence:
            raise TableFormatError(f"{source}:{lineno}: empty sentence in {raw!r}")
        words = [w.strip() for w in left.split(",")]
        try:
            key = canonical_key(words)
        except ValueError as exc:
            raise TableFormatError(f"{source}:{lineno}: {exc}") from None
        if key in entries and entries[key] != sentence:
            prev_line, prev_raw = first_row[key]
            raise TableConflictError(
                f"{source}:{lineno}: {raw!r} conflicts with line {prev_line}: {prev_raw!r} "
                f"(same keywords, different sentence)"
            )
        if key not in entries:
            entries[key] = sentence
            first_row[key] = (lineno, raw)
    return SentenceTable(entries)


def load_sentence_table(path) -> SentenceTable:
    path = Path(path)
    return parse_sentence_table(path.read_text(encoding="utf-8"), source=str(path))


def bundled_table() -> SentenceTable:
    """The sentence table shipped with the package."""
    text = resources.files("signstream").joinpath("data/sentences.txt").read_text("utf-8")
    return parse_sentence_table(text, source="signstream/data/sentences.txt")
