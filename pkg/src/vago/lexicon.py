"""Typed vagueness lexicon: loading, validation, and longest-match lookup.

Entries are keyed by (surface, language) and indexed by first token so that
multi-word expressions ("at least") can be found by a left-to-right
longest-match scan.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .errors import LexiconFormatError

MAX_SURFACE_TOKENS = 5


class VaguenessCategory(enum.Enum):
    """The four-way typology of vague expressions."""

    APPROXIMATION = "VA"
    GENERALITY = "VG"
    DEGREE = "VD"
    COMBINATORIAL = "VC"

    @property
    def subjective(self) -> bool:
        """Degree and combinatorial vagueness convey subjectivity."""
        return self in (VaguenessCategory.DEGREE, VaguenessCategory.COMBINATORIAL)

    @property
    def factual(self) -> bool:
        return not self.subjective

    @property
    def label(self) -> str:
        """Human-readable tag, e.g. ``V_A``."""
        return f"V_{self.value[1]}"


class Language(enum.Enum):
    EN = "EN"
    FR = "FR"


@dataclass(frozen=True)
class LexiconEntry:
    surface: tuple[str, ...]  # lowercase tokens, 1..MAX_SURFACE_TOKENS
    category: VaguenessCategory
    language: Language
    part_of_speech: Optional[str] = None

    @property
    def surface_text(self) -> str:
        return " ".join(self.surface)

    def __post_init__(self):
        if not self.surface:
            raise LexiconFormatError("empty surface")
        if len(self.surface) > MAX_SURFACE_TOKENS:
            raise LexiconFormatError(
                f"surface {' '.join(self.surface)!r} exceeds "
                f"{MAX_SURFACE_TOKENS} tokens"
            )
        for tok in self.surface:
            if not tok or any(ch.isspace() for ch in tok):
                raise LexiconFormatError(f"bad surface token {tok!r}")


class Lexicon:
    """Immutable after construction; safe for concurrent reads."""

    def __init__(self, language: Language, entries: Iterable[LexiconEntry]):
        self.language = language
        self._by_surface: dict[tuple[str, ...], LexiconEntry] = {}
        # first token -> entries starting with it, longest surface first
        self._by_first: dict[str, list[LexiconEntry]] = {}
        for entry in entries:
            if entry.language is not language:
                raise LexiconFormatError(
                    f"entry {entry.surface_text!r} has language "
                    f"{entry.language.value}, lexicon is {language.value}"
                )
            if entry.surface in self._by_surface:
                raise LexiconFormatError(
                    f"duplicate entry {entry.surface_text!r}"
                )
            self._by_surface[entry.surface] = entry
            self._by_first.setdefault(entry.surface[0], []).append(entry)
        for bucket in self._by_first.values():
            bucket.sort(key=lambda e: (-len(e.surface), e.surface))

    def __len__(self) -> int:
        return len(self._by_surface)

    def __contains__(self, surface) -> bool:
        if isinstance(surface, str):
            surface = tuple(surface.lower().split())
        return tuple(surface) in self._by_surface

    def __eq__(self, other) -> bool:
        if not isinstance(other, Lexicon):
            return NotImplemented
        return (
            self.language is other.language
            and self._by_surface == other._by_surface
        )

    @property
    def entries(self) -> list[LexiconEntry]:
        return sorted(self._by_surface.values(), key=lambda e: e.surface)

    def get(self, surface: str) -> Optional[LexiconEntry]:
        return self._by_surface.get(tuple(surface.lower().split()))

    def category_counts(self) -> dict[VaguenessCategory, int]:
        counts = {cat: 0 for cat in VaguenessCategory}
        for entry in self._by_surface.values():
            counts[entry.category] += 1
        return counts

    def lookup_longest(
        self, tokens: Sequence[str], position: int
    ) -> Optional[tuple[LexiconEntry, int]]:
        """Longest entry matching ``tokens`` at ``position`` (case-insensitive).

        Returns ``(entry, match_length)`` or ``None``.
        """
        if position >= len(tokens):
            raise IndexError(f"position {position} out of range")
        first = tokens[position].lower()
        for entry in self._by_first.get(first, ()):
            n = len(entry.surface)
            if position + n > len(tokens):
                continue
            window = tuple(t.lower() for t in tokens[position : position + n])
            if window == entry.surface:
                return entry, n
        return None

    def dumps(self) -> str:
        """Serialize to the TSV exchange format (entries sorted by surface)."""
        lines = []
        for entry in self.entries:
            fields = [entry.surface_text, entry.category.value]
            if entry.part_of_speech:
                fields.append(entry.part_of_speech)
            lines.append("\t".join(fields))
        return "\n".join(lines) + "\n"


def parse_lexicon(source: str, language: Language) -> Lexicon:
    """Parse lexicon TSV content: ``surface<TAB>category<TAB>[pos]``.

    ``#``-prefixed lines and blank lines are ignored. Surfaces are lowercased;
    duplicates, unknown category tags, and malformed lines raise
    LexiconFormatError with the offending line number.
    """
    entries = []
    seen: dict[tuple[str, ...], int] = {}
    for line_no, raw in enumerate(source.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) not in (2, 3):
            raise LexiconFormatError(
                f"expected 2 or 3 tab-separated fields, got {len(fields)}",
                line_no,
            )
        surface_text = fields[0].strip().lower()
        tokens = tuple(surface_text.split())
        if not tokens:
            raise LexiconFormatError("empty surface", line_no)
        if len(tokens) > MAX_SURFACE_TOKENS:
            raise LexiconFormatError(
                f"surface has {len(tokens)} tokens (max {MAX_SURFACE_TOKENS})",
                line_no,
            )
        tag = fields[1].strip().upper()
        try:
            category = VaguenessCategory(tag)
        except ValueError:
            raise LexiconFormatError(f"unknown category tag {tag!r}", line_no)
        pos = fields[2].strip() if len(fields) == 3 and fields[2].strip() else None
        if tokens in seen:
            raise LexiconFormatError(
                f"duplicate entry {surface_text!r} (first at line {seen[tokens]})",
                line_no,
            )
        seen[tokens] = line_no
        entries.append(LexiconEntry(tokens, category, language, pos))
    return Lexicon(language, entries)


# Alias matching the operation name used throughout docs.
load_lexicon = parse_lexicon


def language_from_filename(path: str | Path) -> Language:
    """Infer the language from a ``*.en.tsv`` / ``*.fr.tsv`` filename."""
    suffixes = Path(path).suffixes
    if len(suffixes) >= 2:
        tag = suffixes[-2].lstrip(".").upper()
        try:
            return Language(tag)
        except ValueError:
            pass
    raise LexiconFormatError(
        f"cannot infer language from filename {Path(path).name!r} "
        "(expected *.en.tsv or *.fr.tsv)"
    )


def load_lexicon_file(path: str | Path) -> Lexicon:
    path = Path(path)
    language = language_from_filename(path)
    return parse_lexicon(path.read_text(encoding="utf-8"), language)


def builtin_lexicon_path(language: Language) -> Path:
    return Path(__file__).parent / "data" / f"lexicon.{language.value.lower()}.tsv"


def load_builtin_lexicon(language: Language) -> Lexicon:
    """The seed lexicon distributed with the package."""
    return load_lexicon_file(builtin_lexicon_path(language))


def category_counts(lexicon: Lexicon) -> dict[VaguenessCategory, int]:
    return lexicon.category_counts()


def lookup_longest(lexicon: Lexicon, tokens: Sequence[str], position: int):
    return lexicon.lookup_longest(tokens, position)
