"""Parsing of term-definition corpora and classroom Q&A logs.

Both inputs are reduced to the same shape: a *transaction*, i.e. an ordered
list of prerequisite terms plus the term they describe.  Definition corpora
arrive as a JSON array of ``{"term": ..., "keywords": [...]}`` objects; QA
logs arrive as JSON Lines with one ``{"question": ..., "answer_keywords":
[...]}`` object per line.

All term strings are normalized (lowercased, whitespace collapsed) before
they enter any downstream structure.  Matching is exact after normalization;
there is no stemming, so corpora are expected to use one canonical
(singular) form per term.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from .errors import CorpusParseError, DuplicateDefinitionError, InvalidTermError

_WS_RUN = re.compile(r"\s+")


class TransactionKind(str, Enum):
    DEFINITION = "definition"
    QA = "qa"


def normalize_term(raw: str) -> str:
    """Return the canonical form of a term: lowercase, single-spaced.

    Raises InvalidTermError if nothing is left after trimming.
    """
    term = _WS_RUN.sub(" ", raw.strip()).lower()
    if not term:
        raise InvalidTermError(f"term is empty after normalization: {raw!r}")
    return term


@dataclass(frozen=True)
class TermDefinition:
    """One dictionary entry: a term plus its emphasized prerequisite keywords."""

    term: str
    body_keywords: tuple[str, ...]

    def __post_init__(self):
        if self.term in self.body_keywords:
            raise InvalidTermError(f"definition of {self.term!r} lists itself as a keyword")
        if len(set(self.body_keywords)) != len(self.body_keywords):
            raise InvalidTermError(f"definition of {self.term!r} has duplicate keywords")


@dataclass(frozen=True)
class Transaction:
    """An ordered prerequisite list paired with the term it explains."""

    target: str
    prerequisites: tuple[str, ...]
    kind: TransactionKind = TransactionKind.DEFINITION

    def __post_init__(self):
        if self.target in self.prerequisites:
            raise InvalidTermError(f"transaction for {self.target!r} lists itself")
        if len(set(self.prerequisites)) != len(self.prerequisites):
            raise InvalidTermError(f"transaction for {self.target!r} has duplicates")


@dataclass(frozen=True)
class Vocabulary:
    """The set of all terms seen across a corpus (targets and prerequisites)."""

    terms: frozenset[str] = field(default_factory=frozenset)

    @classmethod
    def of(cls, transactions: Iterable[Transaction]) -> "Vocabulary":
        terms: set[str] = set()
        for txn in transactions:
            terms.add(txn.target)
            terms.update(txn.prerequisites)
        return cls(frozenset(terms))

    def __contains__(self, term: str) -> bool:
        return term in self.terms

    def __len__(self) -> int:
        return len(self.terms)


def _dedupe_keywords(target: str, raw_keywords: Iterable[str]) -> tuple[str, ...]:
    # Keep first occurrence; drop self-references so the invariant holds
    # for real-world entries that restate their own headword.
    seen: list[str] = []
    for raw in raw_keywords:
        kw = normalize_term(raw)
        if kw != target and kw not in seen:
            seen.append(kw)
    return tuple(seen)


def parse_definitions(text: str) -> list[TermDefinition]:
    """Parse a definitions file (JSON array of term/keywords objects)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorpusParseError(f"invalid JSON: {exc.msg}", location=exc.lineno) from exc
    if not isinstance(doc, list):
        raise CorpusParseError("definitions file must be a JSON array", location=1)

    out: list[TermDefinition] = []
    seen: set[str] = set()
    for idx, entry in enumerate(doc):
        if not isinstance(entry, dict) or "term" not in entry or "keywords" not in entry:
            raise CorpusParseError("entry must be an object with 'term' and 'keywords'", location=idx)
        if not isinstance(entry["term"], str) or not isinstance(entry["keywords"], list):
            raise CorpusParseError("'term' must be a string and 'keywords' a list", location=idx)
        if not all(isinstance(k, str) for k in entry["keywords"]):
            raise CorpusParseError("'keywords' must contain only strings", location=idx)
        try:
            term = normalize_term(entry["term"])
            keywords = _dedupe_keywords(term, entry["keywords"])
        except InvalidTermError as exc:
            raise CorpusParseError(str(exc), location=idx) from exc
        if term in seen:
            raise DuplicateDefinitionError(f"duplicate definition for {term!r}", location=idx)
        seen.add(term)
        out.append(TermDefinition(term=term, body_keywords=keywords))
    return out


def serialize_definitions(definitions: Iterable[TermDefinition]) -> str:
    doc = [{"term": d.term, "keywords": list(d.body_keywords)} for d in definitions]
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def to_transaction(defn: TermDefinition) -> Transaction:
    """Turn one definition into a branch-insertable transaction."""
    return Transaction(
        target=defn.term,
        prerequisites=defn.body_keywords,
        kind=TransactionKind.DEFINITION,
    )


def parse_qa_log(text: str) -> list[Transaction]:
    """Parse a QA log (JSON Lines; one question/answer_keywords object per line)."""
    out: list[Transaction] = []
    record_idx = 0
    for line in text.splitlines():
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusParseError(f"invalid JSON record: {exc.msg}", location=record_idx) from exc
        if (
            not isinstance(record, dict)
            or not isinstance(record.get("question"), str)
            or not isinstance(record.get("answer_keywords"), list)
            or not all(isinstance(k, str) for k in record["answer_keywords"])
        ):
            raise CorpusParseError(
                "record must be {'question': str, 'answer_keywords': [str, ...]}",
                location=record_idx,
            )
        try:
            target = normalize_term(record["question"])
            keywords = _dedupe_keywords(target, record["answer_keywords"])
        except InvalidTermError as exc:
            raise CorpusParseError(str(exc), location=record_idx) from exc
        out.append(Transaction(target=target, prerequisites=keywords, kind=TransactionKind.QA))
        record_idx += 1
    return out


def serialize_qa_log(transactions: Iterable[Transaction]) -> str:
    lines = [
        json.dumps({"question": t.target, "answer_keywords": list(t.prerequisites)})
        for t in transactions
    ]
    return "\n".join(lines) + ("\n" if lines else "")
