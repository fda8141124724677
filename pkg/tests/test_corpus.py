import json

import pytest

from labelloop.corpus import (
    DatasetDescriptor,
    Document,
    LabelSchema,
    builtin_descriptors,
    descriptor,
    load_dataset,
    save_csv,
    scan_labels,
    split,
)
from labelloop.errors import (
    ConfigError,
    DatasetFormatError,
    DuplicateId,
    EmptyText,
    MissingGold,
    SchemaTooSmall,
    UnknownLabel,
)


def write_csv(path, rows, header="id,text,label"):
    path.write_text(header + "\n" + "\n".join(rows) + "\n", encoding="utf-8")


class TestLoadCsv:
    def test_three_rows_two_labels(self, tmp_path):
        p = tmp_path / "d.csv"
        write_csv(p, ["1,Claim your prize,spam", "2,See you at noon,not spam", "3,Win big now,spam"])
        docs, schema = load_dataset(p, "csv", "infer")
        assert len(docs) == 3
        assert schema.n_labels == 2
        assert schema.labels == ("not spam", "spam")  # inferred schemas sort
        assert docs[0] == Document("1", "Claim your prize", schema.index_of("spam"))

    def test_row_order_preserved(self, tmp_path):
        p = tmp_path / "d.csv"
        write_csv(p, [f"{i},text {i},a" if i % 2 else f"{i},text {i},b" for i in range(10)])
        docs, _ = load_dataset(p, "csv", "infer")
        assert [d.doc_id for d in docs] == [str(i) for i in range(10)]

    def test_duplicate_id(self, tmp_path):
        p = tmp_path / "d.csv"
        write_csv(p, ["1,foo,a", "1,bar,b"])
        with pytest.raises(DuplicateId):
            load_dataset(p, "csv", "infer")

    def test_empty_text(self, tmp_path):
        p = tmp_path / "d.csv"
        write_csv(p, ["1,foo,a", '2,"   ",b'])
        with pytest.raises(EmptyText) as exc:
            load_dataset(p, "csv", "infer")
        assert exc.value.row == 3

    def test_unknown_label_against_schema(self, tmp_path):
        p = tmp_path / "d.csv"
        write_csv(p, ["1,foo,a", "2,bar,zzz"])
        with pytest.raises(UnknownLabel):
            load_dataset(p, "csv", LabelSchema(("a", "b")))

    def test_infer_needs_two_labels(self, tmp_path):
        p = tmp_path / "d.csv"
        write_csv(p, ["1,foo,a", "2,bar,a", "3,baz,"])
        with pytest.raises(SchemaTooSmall):
            load_dataset(p, "csv", "infer")

    def test_unlabeled_rows_allowed_with_schema(self, tmp_path):
        p = tmp_path / "d.csv"
        write_csv(p, ["1,foo,", "2,bar,b"])
        docs, _ = load_dataset(p, "csv", LabelSchema(("a", "b")))
        assert docs[0].gold_label is None
        assert docs[1].gold_label == 1

    def test_bad_header_rejected(self, tmp_path):
        p = tmp_path / "d.csv"
        write_csv(p, ["1,foo,a"], header="ident,body,tag")
        with pytest.raises(DatasetFormatError):
            load_dataset(p, "csv", "infer")

    def test_quoted_commas_round_trip(self, tmp_path):
        p = tmp_path / "d.csv"
        docs_in = [
            Document("1", 'Hello, "world", and more', 0),
            Document("2", "line with, commas", 1),
        ]
        schema = LabelSchema(("x", "y"))
        save_csv(p, docs_in, schema)
        docs, _ = load_dataset(p, "csv", schema)
        assert [d.text for d in docs] == [d.text for d in docs_in]

    def test_label_whitespace_trimmed_not_folded(self, tmp_path):
        p = tmp_path / "d.csv"
        write_csv(p, ["1,foo, LOC ", "2,bar,loc"])
        docs, schema = load_dataset(p, "csv", "infer")
        assert schema.labels == ("LOC", "loc")


class TestLoadJsonl:
    def test_basic(self, tmp_path):
        p = tmp_path / "d.jsonl"
        rows = [
            {"id": "a", "text": "one", "label": "x"},
            {"id": "b", "text": "two", "label": "y"},
            {"id": "c", "text": "three"},
        ]
        p.write_text("\n".join(json.dumps(r) for r in rows) + "\n", encoding="utf-8")
        docs, schema = load_dataset(p, "jsonl", "infer")
        assert schema.labels == ("x", "y")
        assert docs[2].gold_label is None

    def test_invalid_json_line(self, tmp_path):
        p = tmp_path / "d.jsonl"
        p.write_text('{"id": "a", "text": "one", "label": "x"}\n{oops\n', encoding="utf-8")
        with pytest.raises(DatasetFormatError):
            load_dataset(p, "jsonl", "infer")

    def test_scan_labels(self, tmp_path):
        p = tmp_path / "d.jsonl"
        p.write_text(json.dumps({"id": "a", "text": "one", "label": "x"}) + "\n", encoding="utf-8")
        assert scan_labels(p, "jsonl") == {"x"}


class TestSplit:
    def make_docs(self, n):
        return [Document(f"d{i}", f"text {i}", gold_label=i % 2) for i in range(n)]

    def test_partition_sizes_and_determinism(self):
        docs = self.make_docs(10)
        pool, eval_docs = split(docs, 0.2, seed=7)
        assert len(pool) == 8 and len(eval_docs) == 2
        pool2, eval2 = split(docs, 0.2, seed=7)
        assert [d.doc_id for d in pool] == [d.doc_id for d in pool2]
        assert [d.doc_id for d in eval_docs] == [d.doc_id for d in eval2]

    def test_is_partition_for_many_seeds(self):
        docs = self.make_docs(23)
        all_ids = {d.doc_id for d in docs}
        for seed in range(20):
            pool, eval_docs = split(docs, 0.37, seed)
            pool_ids = {d.doc_id for d in pool}
            eval_ids = {d.doc_id for d in eval_docs}
            assert pool_ids | eval_ids == all_ids
            assert pool_ids & eval_ids == set()

    def test_phrasebank_sized_half_split(self):
        docs = self.make_docs(4850)
        _, eval_docs = split(docs, 0.5, seed=0)
        assert len(eval_docs) == 2425

    def test_missing_gold(self):
        docs = self.make_docs(4) + [Document("u", "unlabeled", None)]
        with pytest.raises(MissingGold):
            split(docs, 0.5, seed=0)

    def test_bad_fraction(self):
        with pytest.raises(ConfigError):
            split(self.make_docs(4), 1.0, seed=0)


class TestDescriptors:
    def test_all_six_present(self):
        names = {d.name for d in builtin_descriptors()}
        assert names == {
            "amazon", "banking", "craigslist", "financial-phrasebank",
            "trec-coarse", "trec-fine",
        }

    def test_reported_shapes(self):
        assert descriptor("trec-coarse").expected_train_rows == 5452
        assert descriptor("trec-coarse").expected_test_rows == 500
        assert descriptor("banking").label_count == 77
        assert descriptor("banking").expected_train_rows == 200
        assert descriptor("craigslist").expected_test_rows == 1001
        assert descriptor("amazon").expected_train_rows == 6001
        assert descriptor("amazon").label_names == ("Excellent", "Very Good", "Neutral", "Good", "Bad")
        assert descriptor("financial-phrasebank").label_names == ("positive", "negative", "neutral")

    def test_row_count_drift_warns_not_raises(self):
        d = descriptor("banking")
        with pytest.warns(UserWarning):
            d.validate_rows(n_train=199)
        d.validate_rows(n_train=200, n_test=2000)  # exact counts stay silent

    def test_bad_counts_rejected(self):
        with pytest.raises(ConfigError):
            DatasetDescriptor(name="x", expected_train_rows=0, expected_test_rows=1, label_count=2)


class TestSchema:
    def test_bijection(self):
        schema = LabelSchema(("a", "b", "c"))
        for i, name in enumerate(schema.labels):
            assert schema.index_of(name) == i
            assert schema.name_of(i) == name

    def test_duplicate_names_rejected(self):
        with pytest.raises(ConfigError):
            LabelSchema(("a", "a"))

    def test_too_few(self):
        with pytest.raises(SchemaTooSmall):
            LabelSchema(("only",))
