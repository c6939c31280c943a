"""Document-level style measurements.

Three feature families live here: marker rates per thousand word tokens,
the per-sentence multi-clause bit with its document track, and per-category
typical words ranked by document-frequency chi-squared.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable

from .corpus import Corpus, Document
from .errors import DegeneratePartitionError, UndefinedMeasureError
from .lexicons import (
    DEMONSTRATIVES,
    MARKER_FAMILIES,
    OPINION_ARGUMENT,
    PERSONAL_PRONOUNS,
    UTTERANCE_PRIVATE_VERBS,
    MarkerLexicon,
)
from .stats import Contingency2x2, chi_squared_2x2
from .textproc import Sentence, sentences, tokenize

DEFAULT_CLAUSE_THRESHOLD = 2

FeatureFunction = Callable[[Sentence], int]


@dataclass(frozen=True, slots=True)
class MarkerVector:
    personal_pronoun_rate: float
    demonstrative_rate: float
    utterance_private_verb_rate: float
    opinion_argument_rate: float
    chars_per_word: float

    def by_family(self) -> dict[str, float]:
        return {
            PERSONAL_PRONOUNS: self.personal_pronoun_rate,
            DEMONSTRATIVES: self.demonstrative_rate,
            UTTERANCE_PRIVATE_VERBS: self.utterance_private_verb_rate,
            OPINION_ARGUMENT: self.opinion_argument_rate,
            "chars_per_word": self.chars_per_word,
        }


@dataclass(frozen=True, slots=True)
class TypicalWordRow:
    word: str
    chi_squared: float
    direction: str
    df_in: int
    df_out: int


@dataclass(frozen=True, slots=True)
class SentenceFeatureTrack:
    bits: tuple[int, ...]
    doc_id: str

    def __len__(self) -> int:
        return len(self.bits)


def _index_lexicons(lexicons) -> dict[str, MarkerLexicon]:
    by_name = {lexicon.name: lexicon for lexicon in lexicons}
    missing = [name for name in MARKER_FAMILIES if name not in by_name]
    if missing:
        raise ValueError(f"missing marker lexicons: {', '.join(missing)}")
    return by_name


def measure_markers(doc: Document, lexicons) -> MarkerVector:
    """Per-1000-word-token rates for the four marker families, plus mean
    characters per word token.  Punctuation tokens are excluded throughout.
    """
    by_name = _index_lexicons(lexicons)
    word_tokens = [token for token in tokenize(doc.text) if token.is_word]
    if not word_tokens:
        raise UndefinedMeasureError(f"document {doc.id!r} has no word tokens")
    scale = 1000.0 / len(word_tokens)

    def rate(name: str) -> float:
        return scale * by_name[name].count_hits(word_tokens)

    total_chars = sum(len(token.surface) for token in word_tokens)
    return MarkerVector(
        personal_pronoun_rate=rate(PERSONAL_PRONOUNS),
        demonstrative_rate=rate(DEMONSTRATIVES),
        utterance_private_verb_rate=rate(UTTERANCE_PRIVATE_VERBS),
        opinion_argument_rate=rate(OPINION_ARGUMENT),
        chars_per_word=total_chars / len(word_tokens),
    )


def multi_clause_bit(
    sentence: Sentence,
    clause_markers: MarkerLexicon,
    threshold: int = DEFAULT_CLAUSE_THRESHOLD,
) -> int:
    """1 when the estimated clause count reaches ``threshold``, else 0.

    The clause count is estimated as 1 + the number of clause-boundary
    marker tokens, so adding markers can only raise the bit.
    """
    estimated_clauses = 1 + clause_markers.count_hits(sentence.tokens)
    return 1 if estimated_clauses >= threshold else 0


def make_clause_feature(
    clause_markers: MarkerLexicon,
    threshold: int = DEFAULT_CLAUSE_THRESHOLD,
) -> FeatureFunction:
    return lambda sentence: multi_clause_bit(sentence, clause_markers, threshold)


def sentence_feature_track(
    doc: Document,
    feature: FeatureFunction,
    abbreviations: frozenset[str] | None = None,
) -> SentenceFeatureTrack:
    """One bit per sentence, in document order; empty document gives an
    empty track."""
    bits = tuple(feature(sentence) for sentence in sentences(doc.text, abbreviations))
    return SentenceFeatureTrack(bits=bits, doc_id=doc.id)


def _doc_word_set(doc: Document) -> frozenset[str]:
    return frozenset(
        token.normalized for token in tokenize(doc.text) if token.is_word
    )


def typical_words(
    corpus: Corpus,
    partition: str,
    category: str,
    min_df: int = 1,
    top_k: int = 10,
) -> list[TypicalWordRow]:
    """Words over-represented in a category by document frequency.

    For each normalized word with total document frequency >= ``min_df``, a
    2x2 table (in/out of category x with/without the word) is scored with
    chi-squared.  Only over-represented words are returned, ranked by
    descending score with lexicographic tie-break.
    """
    if min_df < 1:
        raise ValueError("min_df must be >= 1")
    groups = corpus.partition(partition)
    in_docs = groups.get(category, ())
    out_docs = tuple(
        doc for label, docs in groups.items() if label != category for doc in docs
    )
    if not in_docs:
        raise DegeneratePartitionError(f"category {category!r} has no documents")
    if not out_docs:
        raise DegeneratePartitionError(f"category {category!r} has an empty complement")

    df_in: Counter[str] = Counter()
    df_out: Counter[str] = Counter()
    for doc in in_docs:
        df_in.update(_doc_word_set(doc))
    for doc in out_docs:
        df_out.update(_doc_word_set(doc))

    n_in, n_out = len(in_docs), len(out_docs)
    total_docs = n_in + n_out
    rows = []
    for word in set(df_in) | set(df_out):
        a, c = df_in[word], df_out[word]
        if a + c < min_df:
            continue
        # Over-representation means a/n_in > (a+c)/total strictly; a word in
        # every document fails this and would also zero a chi-squared margin.
        if a * total_docs <= n_in * (a + c):
            continue
        table = Contingency2x2(a=a, b=n_in - a, c=c, d=n_out - c)
        rows.append(
            TypicalWordRow(
                word=word,
                chi_squared=chi_squared_2x2(table),
                direction="over",
                df_in=a,
                df_out=c,
            )
        )
    rows.sort(key=lambda row: (-row.chi_squared, row.word))
    return rows[:top_k]
