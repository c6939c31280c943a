"""Labeled corpus ingestion and category partitions.

Two on-disk formats are supported:

* JSONL: one object per line with required ``id`` and ``text`` fields and
  optional ``genre`` / ``author`` string fields.
* Directory: ``*.txt`` files (searched recursively, id = relative path) with
  an optional ``metadata.tsv`` sidecar (tab-separated, header row required,
  ``path`` column plus optional ``genre`` / ``author`` columns).

Labels are trimmed on ingest; a label that is empty after trimming counts as
absent, so such documents are simply untagged for that partition.  Untagged
documents stay in the corpus but are excluded from labeled analyses.
"""

from __future__ import annotations

import csv
import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DuplicateIdError, InputError, MalformedRecordError

PARTITION_KINDS = ("genre", "author")


@dataclass(frozen=True, slots=True)
class Document:
    id: str
    text: str
    genre: str | None = None
    author: str | None = None

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("document id must be non-empty")
        for kind in PARTITION_KINDS:
            label = getattr(self, kind)
            if label is not None and not label.strip():
                raise ValueError(f"document {self.id!r}: empty {kind} label")

    def label(self, kind: str) -> str | None:
        if kind not in PARTITION_KINDS:
            raise ValueError(f"unknown partition kind {kind!r}")
        return getattr(self, kind)


@dataclass(frozen=True)
class Corpus:
    """An ordered, read-only document collection with provenance."""

    documents: tuple[Document, ...]
    source: str = "memory"
    format: str = "memory"
    _index: dict[str, Document] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        index: dict[str, Document] = {}
        for doc in self.documents:
            if doc.id in index:
                raise DuplicateIdError(f"duplicate document id {doc.id!r}")
            index[doc.id] = doc
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.documents)

    def __getitem__(self, doc_id: str) -> Document:
        return self._index[doc_id]

    def partition(self, kind: str) -> dict[str, tuple[Document, ...]]:
        """Documents grouped by label, in first-appearance order.

        Covers exactly the documents carrying that label; untagged documents
        are excluded.
        """
        groups: dict[str, list[Document]] = {}
        for doc in self.documents:
            label = doc.label(kind)
            if label is not None:
                groups.setdefault(label, []).append(doc)
        return {label: tuple(docs) for label, docs in groups.items()}

    def labels(self, kind: str) -> list[str]:
        """Sorted distinct labels for one partition kind."""
        return sorted(self.partition(kind))

    def label_counts(self, kind: str) -> Counter[str]:
        counts: Counter[str] = Counter()
        for doc in self.documents:
            label = doc.label(kind)
            if label is not None:
                counts[label] += 1
        return counts

    def tagged_count(self, kind: str) -> int:
        return sum(1 for doc in self.documents if doc.label(kind) is not None)


def _clean_label(value: object, doc_ref: str, kind: str) -> str | None:
    if value is None:
        return None
    if not isinstance(value, str):
        raise MalformedRecordError(f"{doc_ref}: {kind} must be a string")
    value = value.strip()
    return value or None


def _ingest_jsonl(path: Path, allow_empty_text: bool) -> list[Document]:
    documents: list[Document] = []
    seen: set[str] = set()
    with path.open(encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            ref = f"{path}:{lineno}"
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedRecordError(f"{ref}: invalid JSON ({exc.msg})") from exc
            if not isinstance(record, dict):
                raise MalformedRecordError(f"{ref}: record is not an object")
            doc_id = record.get("id")
            text = record.get("text")
            if not isinstance(doc_id, str) or not doc_id:
                raise MalformedRecordError(f"{ref}: missing or invalid 'id'")
            if not isinstance(text, str):
                raise MalformedRecordError(f"{ref}: missing or invalid 'text'")
            if doc_id in seen:
                raise DuplicateIdError(f"{ref}: duplicate document id {doc_id!r}")
            seen.add(doc_id)
            if not text.strip() and not allow_empty_text:
                raise InputError(f"{ref}: document {doc_id!r} has empty text")
            documents.append(
                Document(
                    id=doc_id,
                    text=text,
                    genre=_clean_label(record.get("genre"), ref, "genre"),
                    author=_clean_label(record.get("author"), ref, "author"),
                )
            )
    return documents


def _read_sidecar(path: Path) -> dict[str, tuple[str | None, str | None]]:
    """Parse metadata.tsv into {relative path: (genre, author)}."""
    with path.open(encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle, delimiter="\t")
        if reader.fieldnames is None or "path" not in reader.fieldnames:
            raise MalformedRecordError(
                f"{path}: header row with a 'path' column is required"
            )
        rows: dict[str, tuple[str | None, str | None]] = {}
        for lineno, row in enumerate(reader, start=2):
            ref = f"{path}:{lineno}"
            rel = (row.get("path") or "").strip()
            if not rel:
                raise MalformedRecordError(f"{ref}: empty 'path' cell")
            if rel in rows:
                raise MalformedRecordError(f"{ref}: duplicate metadata for {rel!r}")
            rows[rel] = (
                _clean_label(row.get("genre"), ref, "genre"),
                _clean_label(row.get("author"), ref, "author"),
            )
    return rows


def _ingest_directory(path: Path, allow_empty_text: bool) -> list[Document]:
    files = sorted(p for p in path.rglob("*.txt"))
    sidecar_path = path / "metadata.tsv"
    metadata = _read_sidecar(sidecar_path) if sidecar_path.is_file() else {}
    known = {p.relative_to(path).as_posix() for p in files}
    for rel in metadata:
        if rel not in known:
            raise InputError(f"{sidecar_path}: metadata references missing file {rel!r}")
    documents = []
    for file_path in files:
        rel = file_path.relative_to(path).as_posix()
        text = file_path.read_text(encoding="utf-8")
        if not text.strip() and not allow_empty_text:
            raise InputError(f"{file_path}: document has empty text")
        genre, author = metadata.get(rel, (None, None))
        documents.append(Document(id=rel, text=text, genre=genre, author=author))
    return documents


def ingest_corpus(
    path: str | Path,
    format: str = "auto",
    *,
    allow_empty_text: bool = False,
) -> Corpus:
    """Load a corpus from disk.

    ``format`` is "jsonl", "directory", or "auto" (file -> jsonl,
    directory -> directory).  Empty text is rejected unless
    ``allow_empty_text`` is set.
    """
    path = Path(path)
    if not path.exists():
        raise InputError(f"corpus path does not exist: {path}")
    if format == "auto":
        format = "directory" if path.is_dir() else "jsonl"
    if format == "jsonl":
        if not path.is_file():
            raise InputError(f"jsonl corpus must be a file: {path}")
        documents = _ingest_jsonl(path, allow_empty_text)
    elif format == "directory":
        if not path.is_dir():
            raise InputError(f"directory corpus must be a directory: {path}")
        documents = _ingest_directory(path, allow_empty_text)
    else:
        raise ValueError(f"unknown corpus format {format!r}")
    if not documents:
        raise InputError(f"no documents found in {path}")
    return Corpus(documents=tuple(documents), source=str(path), format=format)
