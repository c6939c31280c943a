"""Deterministic text processing: sentence segmentation, tokenization, normalization.

Everything here is a pure function of its inputs, so running the same bytes
through the pipeline always yields byte-identical results.  The normalizer is
a small fixed suffix-stripper (plural -s/-es, -ing, -ed with doubling repair),
not a full lemmatizer; it exists so that document-frequency counting groups
obvious inflectional variants together, reproducibly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from .errors import InputError

# A token is a maximal run of letters/digits/apostrophes; any other
# non-whitespace character is emitted as a single-character token.
_TOKEN_RE = re.compile(r"(?:[^\W_]|['’])+|\S")

_VOWELS = frozenset("aeiouy")

_SENTENCE_TERMINATORS = frozenset(".!?")

#: Lowercased abbreviations (final period stripped) that suppress a sentence
#: boundary after ".".  Overridable via :func:`load_abbreviations`.
DEFAULT_ABBREVIATIONS = frozenset(
    {
        "mr", "mrs", "ms", "dr", "prof", "rev", "hon", "gen", "col", "sgt",
        "st", "jr", "sr", "vs", "etc", "e.g", "i.e", "cf", "al", "ca",
        "inc", "ltd", "co", "corp", "dept", "univ", "assn", "bros",
        "no", "nos", "vol", "vols", "fig", "figs", "ch", "sec", "pp", "p",
        "jan", "feb", "mar", "apr", "jun", "jul", "aug", "sep", "sept",
        "oct", "nov", "dec", "mon", "tue", "wed", "thu", "fri", "sat", "sun",
        "u.s", "u.k", "u.n",
    }
)


@dataclass(frozen=True, slots=True)
class Token:
    """One surface token plus its normalized form.

    ``is_word`` is True when the surface contains at least one letter or
    digit; punctuation tokens (and degenerate all-apostrophe runs) are not
    words and are excluded from rate denominators downstream.
    """

    surface: str
    normalized: str
    is_word: bool


@dataclass(frozen=True, slots=True)
class Sentence:
    """An ordered token sequence; char_count sums the token surface lengths
    (inter-token whitespace is excluded by definition)."""

    tokens: tuple[Token, ...]
    char_count: int


def _has_vowel(word: str) -> bool:
    return any(c in _VOWELS for c in word)


def _undouble(stem: str) -> str:
    # Doubling repair after -ing/-ed removal: runn -> run, patt -> pat,
    # but keep ll/ss/zz (fall -> fall, miss -> miss).
    if (
        len(stem) >= 2
        and stem[-1] == stem[-2]
        and stem[-1] not in _VOWELS
        and stem[-1] not in "lsz"
    ):
        return stem[:-1]
    return stem


def _strip_once(w: str) -> str:
    """Apply at most one suffix rule.  Returns w unchanged when none applies."""
    if len(w) >= 5 and w.endswith("ing"):
        stem = w[:-3]
        if len(stem) >= 2 and _has_vowel(stem):
            return _undouble(stem)
    if len(w) >= 5 and w.endswith("ied"):
        return w[:-3] + "y"
    if len(w) >= 4 and w.endswith("ed") and not w.endswith("eed"):
        stem = w[:-2]
        if len(stem) >= 2 and _has_vowel(stem):
            return _undouble(stem)
    if len(w) >= 5 and w.endswith("sses"):
        return w[:-2]
    if len(w) >= 5 and w.endswith("ies"):
        return w[:-3] + "y"
    if w.endswith(("ss", "is", "us")):
        return w
    if len(w) >= 4 and w.endswith("es") and (w[-3] in "xz" or w.endswith(("ches", "shes", "ses"))):
        return w[:-2]
    if len(w) >= 3 and w.endswith("s"):
        return w[:-1]
    return w


@lru_cache(maxsize=262144)
def normalize(surface: str) -> str:
    """Lowercase and strip inflectional suffixes until a fixpoint is reached.

    Iterating to a fixpoint makes the function idempotent by construction
    ("meetings" -> "meeting" -> "meet").  Tokens containing anything other
    than letters (digits, apostrophes, punctuation) are only lowercased.
    """
    word = surface.lower()
    if not word.isalpha():
        return word
    prev = None
    while word != prev:
        prev = word
        word = _strip_once(word)
    return word


def tokenize(sentence_text: str) -> list[Token]:
    """Split text into tokens: word runs stay whole, punctuation splits off.

    "Don't stop" -> [Don't, stop]; "end." -> [end, .].
    """
    tokens = []
    for m in _TOKEN_RE.finditer(sentence_text):
        surface = m.group()
        tokens.append(
            Token(
                surface=surface,
                normalized=normalize(surface),
                is_word=any(c.isalnum() for c in surface),
            )
        )
    return tokens


def _word_before(text: str, index: int) -> str:
    """Non-whitespace run immediately before ``index``, leading punctuation
    stripped (so '("Dr' yields 'Dr', and 'e.g' keeps its internal dot)."""
    start = index
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    run = text[start:index]
    while run and not run[0].isalnum():
        run = run[1:]
    return run


def _is_boundary(text: str, i: int, abbreviations: frozenset[str]) -> bool:
    j = i + 1
    if j >= len(text) or not text[j].isspace():
        return False
    k = j
    while k < len(text) and text[k].isspace():
        k += 1
    if k >= len(text) or not text[k].isupper():
        return False
    if text[i] == ".":
        word = _word_before(text, i)
        if word and (word.lower() in abbreviations or (len(word) == 1 and word.isalpha())):
            # Known abbreviation or a single initial ("J. Smith").
            return False
    return True


def segment_spans(
    text: str, abbreviations: frozenset[str] | None = None
) -> list[tuple[int, int]]:
    """Sentence spans as (start, end) character offsets.

    A boundary is sentence-final punctuation (. ! ?) followed by whitespace
    and a capital, unless the preceding word is a guarded abbreviation.
    Spans are ordered, non-overlapping, and jointly cover every
    non-whitespace character; empty text yields an empty list.
    """
    abbr = DEFAULT_ABBREVIATIONS if abbreviations is None else abbreviations
    spans: list[tuple[int, int]] = []
    start: int | None = None
    for i, ch in enumerate(text):
        if start is None:
            if not ch.isspace():
                start = i
            continue
        if ch in _SENTENCE_TERMINATORS and _is_boundary(text, i, abbr):
            spans.append((start, i + 1))
            start = None
    if start is not None:
        end = len(text)
        while end > start and text[end - 1].isspace():
            end -= 1
        spans.append((start, end))
    return spans


def sentences(
    text: str, abbreviations: frozenset[str] | None = None
) -> list[Sentence]:
    """Segment and tokenize text into Sentence objects, in document order."""
    result = []
    for a, b in segment_spans(text, abbreviations):
        tokens = tuple(tokenize(text[a:b]))
        result.append(
            Sentence(tokens=tokens, char_count=sum(len(t.surface) for t in tokens))
        )
    return result


def load_abbreviations(path: str | Path) -> frozenset[str]:
    """Read an abbreviation guard list: one entry per line, '#' comments.

    Entries are lowercased and a single trailing period is dropped, so
    "Dr." and "dr" are equivalent.
    """
    path = Path(path)
    if not path.is_file():
        raise InputError(f"abbreviation list not found: {path}")
    entries = set()
    for line in path.read_text(encoding="utf-8").splitlines():
        entry = line.strip()
        if not entry or entry.startswith("#"):
            continue
        entry = entry.lower()
        if entry.endswith("."):
            entry = entry[:-1]
        if entry:
            entries.add(entry)
    return frozenset(entries)
