import json

import pytest
from hypothesis import given

from drsmatch import (
    corpus_to_json,
    form_to_json_obj,
    parse_corpus,
    parse_document,
    serialize_corpus,
    serialize_form,
)
from drsmatch.errors import DuplicateDocId, ParseError

from .genforms import forms


class TestParseDocument:
    def test_negated_possibility_doc(self):
        text = (
            "k0 NOT b2\n"
            "b2 REF x1\n"
            "b2 person n.01 x1\n"
            "b2 POS b3\n"
            "b3 Agent e1 x1\n"
            "b3 REF e1\n"
            "b3 resist v.02 e1\n"
        )
        form = parse_document(text)
        assert len(form.clauses) == 7
        assert set(form.variables) == {"k0", "b2", "b3", "x1", "e1"}

    def test_empty(self):
        assert len(parse_document("").clauses) == 0

    def test_too_many_tokens(self):
        with pytest.raises(ParseError) as err:
            parse_document("b1 REF x1 x2 x3")
        assert err.value.line == 1

    def test_comments_and_whitespace(self):
        form = parse_document("  b1 REF x1   % introduces x1\n% full comment line\n\nb1  cat\tn.01  x1  \n")
        assert len(form.clauses) == 2

    def test_quote_inside_constant(self):
        form = parse_document('b1 Name x1 "New York"')
        assert form.clauses[0].args[1].is_const
        assert form.clauses[0].args[1].text == "New York"

    def test_unbalanced_quote(self):
        with pytest.raises(ParseError):
            parse_document('b1 Name x1 "australia')

    def test_stray_quote(self):
        with pytest.raises(ParseError):
            parse_document('b1 Name x1 au"stralia')

    def test_percent_inside_constant_is_not_comment(self):
        form = parse_document('b1 Name x1 "50%"')
        assert form.clauses[0].args[1].text == "50%"

    def test_duplicate_lines_collapse(self):
        form = parse_document("b1 REF x1\nb1 REF x1\n")
        assert len(form.clauses) == 1
        assert len(form.duplicates_removed) == 1


class TestParseCorpus:
    def test_two_documents(self, fixtures):
        text = (fixtures / "he_smiled.clf").read_text() + "\n" + (fixtures / "she_fled.clf").read_text()
        docs = parse_corpus(text)
        assert [d.doc_id for d in docs] == ["01/3445", "00/3514"]
        assert [len(d.form.clauses) for d in docs] == [9, 13]
        assert all(d.explicit_id for d in docs)

    def test_comments_only(self):
        assert parse_corpus("% nothing here\n\n% still nothing\n") == []

    def test_duplicate_ids(self):
        text = "% id: 00/3514\nb1 REF x1\n\n% id: 00/3514\nb1 REF x1\n"
        with pytest.raises(DuplicateDocId):
            parse_corpus(text)

    def test_positional_ids(self):
        docs = parse_corpus("b1 REF x1\n\n\nb2 REF x2\n")
        assert [d.doc_id for d in docs] == ["1", "2"]
        assert not any(d.explicit_id for d in docs)

    def test_error_carries_line_number_and_doc_index(self):
        with pytest.raises(ParseError) as err:
            parse_corpus("b1 REF x1\n\nb2 REF\n")
        assert err.value.line == 3
        assert "document 2" in str(err.value)

    def test_source_lines_span(self):
        docs = parse_corpus("\n% id: a\nb1 REF x1\nb1 cat n.01 x1\n\nb2 REF x2\n")
        assert docs[0].source_lines == (3, 4)
        assert docs[1].source_lines == (6, 6)

    def test_three_document_fixture(self, sample_docs):
        assert [d.doc_id for d in sample_docs] == ["24/3221", "00/2302", "00/3008"]
        assert [len(d.form.clauses) for d in sample_docs] == [7, 10, 24]


class TestSerialize:
    def test_empty(self):
        assert serialize_form(parse_document("")) == ""

    def test_constant_requoted(self):
        text = 'b4 EQU t1 "now"\n'
        assert serialize_form(parse_document(text)) == text

    def test_corpus_round_trip(self, fixtures):
        text = (fixtures / "sample_corpus.clf").read_text()
        docs = parse_corpus(text)
        again = parse_corpus(serialize_corpus(docs))
        assert [d.doc_id for d in again] == [d.doc_id for d in docs]
        assert [d.form for d in again] == [d.form for d in docs]

    def test_fifteen_clause_conversion_fixture_round_trips(self, fixtures):
        text = (fixtures / "remove_dishes_drs.clf").read_text()
        form = parse_corpus(text)[0].form
        assert len(form.clauses) == 15
        assert parse_document(serialize_form(form)) == form


def test_json_emission(fixtures):
    form = parse_corpus((fixtures / "he_smiled.clf").read_text())[0].form
    obj = form_to_json_obj(form)
    assert obj["doc_id"] == "01/3445"
    assert obj["clauses"][3] == ["b3", "TPR", "t1", '"now"']
    json.dumps(obj)  # must be serializable as-is


def test_corpus_json_emission(fixtures):
    docs = parse_corpus((fixtures / "sample_corpus.clf").read_text())
    payload = json.loads(corpus_to_json(docs))
    assert [d["doc_id"] for d in payload] == ["24/3221", "00/2302", "00/3008"]
    assert payload[0]["clauses"][0] == ["k0", "NOT", "b2"]


@given(forms())
def test_round_trip_random_forms(form):
    assert parse_document(serialize_form(form)) == form
