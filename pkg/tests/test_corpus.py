from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from antpath.corpus import (
    TermDefinition,
    Transaction,
    TransactionKind,
    Vocabulary,
    normalize_term,
    parse_definitions,
    parse_qa_log,
    serialize_definitions,
    serialize_qa_log,
    to_transaction,
)
from antpath.errors import (
    CorpusParseError,
    DuplicateDefinitionError,
    InvalidTermError,
)


class TestNormalizeTerm:
    def test_collapses_whitespace_and_lowercases(self):
        assert normalize_term("  Nucleic   Acid ") == "nucleic acid"

    def test_identity(self):
        assert normalize_term("cell") == "cell"

    def test_lowercase(self):
        assert normalize_term("DNA") == "dna"

    def test_empty_rejected(self):
        with pytest.raises(InvalidTermError):
            normalize_term("   ")

    @given(st.text(min_size=1))
    def test_idempotent(self, raw):
        try:
            once = normalize_term(raw)
        except InvalidTermError:
            return
        assert normalize_term(once) == once


class TestParseDefinitions:
    def test_basic_entry(self):
        text = '[{"term": "DNA", "keywords": ["Nucleic acid", "Cell"]}]'
        (defn,) = parse_definitions(text)
        assert defn == TermDefinition("dna", ("nucleic acid", "cell"))

    def test_entry_without_keywords(self):
        (defn,) = parse_definitions('[{"term": "Cell", "keywords": []}]')
        assert defn == TermDefinition("cell", ())

    def test_empty_file(self):
        assert parse_definitions("[]") == []

    def test_duplicate_keywords_collapse_to_first(self):
        (defn,) = parse_definitions('[{"term": "x", "keywords": ["a", "b", "A", "a"]}]')
        assert defn.body_keywords == ("a", "b")

    def test_self_reference_dropped(self):
        (defn,) = parse_definitions('[{"term": "x", "keywords": ["a", "X"]}]')
        assert defn.body_keywords == ("a",)

    def test_duplicate_term_entries_rejected(self):
        text = '[{"term": "x", "keywords": []}, {"term": " X ", "keywords": ["y"]}]'
        with pytest.raises(DuplicateDefinitionError):
            parse_definitions(text)

    def test_malformed_json_reports_line(self):
        with pytest.raises(CorpusParseError) as exc:
            parse_definitions('[{"term": "x",\n "keywords": }]')
        assert exc.value.location == 2

    def test_malformed_entry_reports_index(self):
        with pytest.raises(CorpusParseError) as exc:
            parse_definitions('[{"term": "x", "keywords": []}, {"nope": 1}]')
        assert exc.value.location == 1

    def test_non_array_rejected(self):
        with pytest.raises(CorpusParseError):
            parse_definitions('{"term": "x"}')


class TestToTransaction:
    def test_keywords_become_prerequisites(self):
        defn = TermDefinition("mitochondria", ("cell", "eukaryotic", "organelle"))
        txn = to_transaction(defn)
        assert txn == Transaction(
            "mitochondria", ("cell", "eukaryotic", "organelle"), TransactionKind.DEFINITION
        )

    def test_empty_keywords(self):
        txn = to_transaction(TermDefinition("cell", ()))
        assert txn.prerequisites == ()
        assert txn.kind is TransactionKind.DEFINITION

    def test_order_preserved(self):
        txn = to_transaction(TermDefinition("nucleotide", ("dna", "rna")))
        assert txn.prerequisites == ("dna", "rna")


class TestParseQaLog:
    def test_record(self):
        (txn,) = parse_qa_log('{"question": "t1", "answer_keywords": ["t2", "t3", "t4"]}\n')
        assert txn == Transaction("t1", ("t2", "t3", "t4"), TransactionKind.QA)

    def test_empty_log(self):
        assert parse_qa_log("") == []
        assert parse_qa_log("\n\n") == []

    def test_repeated_keyword_collapsed(self):
        (txn,) = parse_qa_log('{"question": "q", "answer_keywords": ["a", "b", "a"]}')
        assert txn.prerequisites == ("a", "b")

    def test_malformed_record_reports_index(self):
        text = '{"question": "q", "answer_keywords": []}\n{"question": 3}\n'
        with pytest.raises(CorpusParseError) as exc:
            parse_qa_log(text)
        assert exc.value.location == 1


class TestRoundTrip:
    terms = st.text(
        alphabet=st.sampled_from("abcdefghij "), min_size=1, max_size=12
    ).map(lambda s: s.strip()).filter(bool)

    @given(
        st.lists(
            st.tuples(terms, st.lists(terms, max_size=4, unique=True)),
            max_size=6,
        )
    )
    def test_definitions_round_trip(self, raw_entries):
        seen = set()
        defs = []
        for term, keywords in raw_entries:
            term = normalize_term(term)
            if term in seen:
                continue
            seen.add(term)
            kws = []
            for kw in keywords:
                kw = normalize_term(kw)
                if kw != term and kw not in kws:
                    kws.append(kw)
            defs.append(TermDefinition(term, tuple(kws)))
        assert parse_definitions(serialize_definitions(defs)) == defs

    def test_qa_round_trip(self):
        txns = [
            Transaction("q1", ("a", "b"), TransactionKind.QA),
            Transaction("q2", (), TransactionKind.QA),
        ]
        assert parse_qa_log(serialize_qa_log(txns)) == txns


class TestInvariants:
    def test_transaction_rejects_self_target(self):
        with pytest.raises(InvalidTermError):
            Transaction("a", ("b", "a"))

    def test_transaction_rejects_duplicates(self):
        with pytest.raises(InvalidTermError):
            Transaction("a", ("b", "b"))

    def test_definition_rejects_self_keyword(self):
        with pytest.raises(InvalidTermError):
            TermDefinition("a", ("a",))

    def test_parsed_transactions_satisfy_invariants(self):
        text = "\n".join(
            '{"question": "q%d", "answer_keywords": ["x", "y", "q%d", "x"]}' % (i, i)
            for i in range(5)
        )
        for txn in parse_qa_log(text):
            assert txn.target not in txn.prerequisites
            assert len(set(txn.prerequisites)) == len(txn.prerequisites)

    def test_vocabulary_collects_targets_and_prerequisites(self):
        txns = [Transaction("a", ("b", "c")), Transaction("d", ())]
        vocab = Vocabulary.of(txns)
        assert vocab.terms == frozenset({"a", "b", "c", "d"})
        assert "a" in vocab and len(vocab) == 4
