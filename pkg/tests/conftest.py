"""Shared fixtures: corpus writers and synthetic text generators.

The Markov generator produces authors whose multi-clause bit follows a
two-state chain with a common stationary rate but author-specific
transition probabilities, which is the regime where sequence-aware windows
separate authors that pointwise rates cannot.
"""

from __future__ import annotations

import json
import random
from pathlib import Path

# One sentence with a single clause-boundary marker ("because"), one with
# none; neither contains any other word from the built-in clause-marker
# list, so the multi-clause bit equals the generator's intended bit.
MULTI_CLAUSE_SENTENCE = "We stayed inside because the storm kept on."
SINGLE_CLAUSE_SENTENCE = "The evening train arrived at the empty station."

STATIONARY_ONE_RATE = 0.1


def write_jsonl_corpus(path: Path, docs: list[dict]) -> Path:
    path.write_text(
        "\n".join(json.dumps(doc) for doc in docs) + "\n", encoding="utf-8"
    )
    return path


def bits_to_text(bits, one=MULTI_CLAUSE_SENTENCE, zero=SINGLE_CLAUSE_SENTENCE) -> str:
    return " ".join(one if bit else zero for bit in bits)


def markov_bits(
    rng: random.Random,
    length: int,
    p10: float,
    stationary_one: float = STATIONARY_ONE_RATE,
) -> list[int]:
    """Two-state chain with P(1->0) = p10 and stationary P(1) fixed.

    Choosing P(0->1) = p10 * pi1 / (1 - pi1) pins the stationary marginal at
    pi1 regardless of p10, so chains differ only in transition structure.
    """
    p01 = p10 * stationary_one / (1.0 - stationary_one)
    bit = 1 if rng.random() < stationary_one else 0
    bits = [bit]
    for _ in range(length - 1):
        flip = rng.random() < (p10 if bit else p01)
        if flip:
            bit = 1 - bit
        bits.append(bit)
    return bits


def author_p10(author_index: int, n_authors: int) -> float:
    """Author-specific 1->0 transition probability, spread over [0.2, 0.95]."""
    if n_authors == 1:
        return 0.2
    return 0.2 + 0.75 * author_index / (n_authors - 1)


def markov_author_docs(
    seed: int,
    n_authors: int = 20,
    docs_per_author: int = 5,
    sentences_per_doc: int = 40,
    n_genres: int = 4,
    identical_processes: bool = False,
) -> list[dict]:
    """Documents for authors with distinct transition structure and a shared
    stationary multi-clause rate; genre labels assigned at random."""
    rng = random.Random(seed)
    docs = []
    for author_index in range(n_authors):
        p10 = 0.5 if identical_processes else author_p10(author_index, n_authors)
        for doc_index in range(docs_per_author):
            bits = markov_bits(rng, sentences_per_doc, p10)
            docs.append(
                {
                    "id": f"a{author_index:03d}_d{doc_index:03d}",
                    "text": bits_to_text(bits),
                    "genre": f"genre{rng.randrange(n_genres)}",
                    "author": f"author{author_index:03d}",
                }
            )
    return docs


def planted_keyword_docs(
    n_categories: int = 4,
    docs_per_category: int = 50,
    planted_per_category: int = 5,
    seed: int = 99,
) -> tuple[list[dict], dict[str, list[str]]]:
    """Corpus where each category has words that occur in every one of its
    documents and nowhere else; everything else is drawn from a shared pool."""
    rng = random.Random(seed)
    shared_pool = [f"filler{i:02d}" for i in range(40)]
    docs = []
    planted: dict[str, list[str]] = {}
    for category_index in range(n_categories):
        category = f"cat{category_index}"
        words = [f"planted{category_index}x{k}" for k in range(planted_per_category)]
        planted[category] = words
        for doc_index in range(docs_per_category):
            noise = rng.sample(shared_pool, 12)
            tokens = noise[:6] + words + noise[6:]
            sentences = [
                " ".join(tokens[i : i + 6]).capitalize() + "."
                for i in range(0, len(tokens), 6)
            ]
            docs.append(
                {
                    "id": f"{category}_d{doc_index:03d}",
                    "text": " ".join(sentences),
                    "genre": category,
                }
            )
    return docs, planted
