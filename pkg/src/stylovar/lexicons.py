"""Marker-word lexicons and their built-in defaults.

A lexicon is a named set of match forms plus a match mode.  Closed-class
lists (pronouns, demonstratives, clause markers) match on the lowercased
surface form so that suffix stripping cannot collapse unrelated words onto
them.  Open-class lists (verbs, evaluative and connective vocabulary) match
on the normalized form so inflectional variants count.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import InputError
from .textproc import Token, normalize

MATCH_MODES = ("normalized", "surface")

PERSONAL_PRONOUNS = "personal_pronouns"
DEMONSTRATIVES = "demonstratives"
UTTERANCE_PRIVATE_VERBS = "utterance_private_verbs"
OPINION_ARGUMENT = "opinion_argument"
CLAUSE_MARKERS = "clause_markers"

MARKER_FAMILIES = (
    PERSONAL_PRONOUNS,
    DEMONSTRATIVES,
    UTTERANCE_PRIVATE_VERBS,
    OPINION_ARGUMENT,
)


@dataclass(frozen=True, slots=True)
class MarkerLexicon:
    name: str
    entries: frozenset[str]
    match_mode: str

    def __post_init__(self) -> None:
        if not self.entries:
            raise ValueError(f"lexicon {self.name!r} has no entries")
        if self.match_mode not in MATCH_MODES:
            raise ValueError(f"lexicon {self.name!r}: bad match_mode {self.match_mode!r}")

    def matches(self, token: Token) -> bool:
        if self.match_mode == "surface":
            return token.surface.lower() in self.entries
        return token.normalized in self.entries

    def count_hits(self, tokens: tuple[Token, ...] | list[Token]) -> int:
        return sum(1 for token in tokens if self.matches(token))


def make_lexicon(name: str, words, match_mode: str) -> MarkerLexicon:
    """Build a lexicon, canonicalizing entries for the chosen match mode."""
    if match_mode == "normalized":
        entries = frozenset(normalize(word) for word in words)
    else:
        entries = frozenset(word.lower() for word in words)
    return MarkerLexicon(name=name, entries=entries, match_mode=match_mode)


_PERSONAL_PRONOUN_WORDS = (
    "i me my mine myself we us our ours ourselves "
    "you your yours yourself yourselves "
    "he him his himself she her hers herself it its itself "
    "they them their theirs themselves one oneself"
).split()

_DEMONSTRATIVE_WORDS = "this that these those".split()

# Speech-act and cognition verbs.  Irregular pasts (said, knew) and the -ed
# forms of e-final stems (believed) are listed explicitly: the normalizer
# strips regular suffixes only, so those variants reduce to keys ("said",
# "believ") that the base form alone would not cover.
_UTTERANCE_PRIVATE_VERB_WORDS = (
    "accept admit agree agreed announce announced answer anticipate "
    "anticipated argue argued ask assert assume assumed believe believed "
    "claim conclude concluded consider decide decided declare declared deny "
    "doubt expect explain fear feel felt forget forgot guess hear heard hope "
    "hoped imagine imagined insist know knew known learn mean meant mention "
    "notice noticed perceive perceived realise realised realize realized "
    "recognise recognised recognize recognized remark remember reply report "
    "said saw say see seen speak spoke spoken state stated suggest suppose "
    "supposed talk tell think thought told understand understood want wish "
    "wonder worry"
).split()

# Evaluative vocabulary plus connectives that mark argumentative moves.
_OPINION_ARGUMENT_WORDS = (
    "almost apparently bad best certainly clearly consequently definitely "
    "else excellent fortunately good great hence however if important indeed "
    "interesting moreover nevertheless obvious obviously offend perhaps poor "
    "possibly probably remarkable significant specious surely terrible "
    "therefore then thus unfortunately wonderful worst wrong"
).split()

# Clause-boundary cues: semicolon, subordinators, relative pronouns, and the
# clause-level coordinators.  "and"/"or" are omitted: they coordinate phrases
# far more often than clauses and would saturate the bit.
_CLAUSE_MARKER_WORDS = (
    "; although because before but if nor once since so that though unless "
    "until when whenever whereas whether which while who whom whose yet"
).split()

BUILTIN_LEXICONS: dict[str, MarkerLexicon] = {
    PERSONAL_PRONOUNS: make_lexicon(PERSONAL_PRONOUNS, _PERSONAL_PRONOUN_WORDS, "surface"),
    DEMONSTRATIVES: make_lexicon(DEMONSTRATIVES, _DEMONSTRATIVE_WORDS, "surface"),
    UTTERANCE_PRIVATE_VERBS: make_lexicon(
        UTTERANCE_PRIVATE_VERBS, _UTTERANCE_PRIVATE_VERB_WORDS, "normalized"
    ),
    OPINION_ARGUMENT: make_lexicon(OPINION_ARGUMENT, _OPINION_ARGUMENT_WORDS, "normalized"),
    CLAUSE_MARKERS: make_lexicon(CLAUSE_MARKERS, _CLAUSE_MARKER_WORDS, "surface"),
}

_DEFAULT_MODES = {name: lex.match_mode for name, lex in BUILTIN_LEXICONS.items()}


def load_lexicon(path: str | Path, name: str, match_mode: str | None = None) -> MarkerLexicon:
    """Read a one-entry-per-line lexicon file.

    Blank lines and '#' comments are skipped.  When ``match_mode`` is None
    the built-in default for ``name`` applies (normalized for unknown names).
    """
    path = Path(path)
    if match_mode is None:
        match_mode = _DEFAULT_MODES.get(name, "normalized")
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read lexicon file {path}: {exc}") from exc
    words = []
    for line in raw.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        words.append(line)
    if not words:
        raise InputError(f"lexicon file {path} has no usable entries")
    return make_lexicon(name, words, match_mode)


def dump_lexicon(lexicon: MarkerLexicon, path: str | Path) -> None:
    """Write a lexicon in the same format load_lexicon reads."""
    lines = [f"# {lexicon.name} (match_mode={lexicon.match_mode})"]
    lines.extend(sorted(lexicon.entries))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
