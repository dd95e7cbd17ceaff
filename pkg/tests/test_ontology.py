from pathlib import Path

import pytest

from geomid import ontology

GOLDEN = Path(__file__).parent / "data" / "ontology_golden.tsv"


def golden():
    rows = [line.split("\t") for line in GOLDEN.read_text(encoding="utf-8").splitlines()]
    return [(i, q) for i, q in rows]


def test_schema_matches_golden():
    schema = ontology.builtin_schema()
    assert [(a.id, a.question) for a in schema] == golden()


def test_counts_and_order():
    ids = [a.id for a in ontology.builtin_schema()]
    assert len(ids) == 36 and len(set(ids)) == 36
    assert ids[:11] == [f"D{i}" for i in range(1, 12)]
    assert ids[11:30] == [f"S{i}" for i in range(1, 20)]
    assert ids[30:] == [f"R{i}" for i in range(1, 7)]


def test_lookup():
    schema = ontology.builtin_schema()
    assert ontology.lookup(schema, "D9").category == "data set/transformation"
    assert ontology.lookup(schema, "S15").category == "software/source-code"
    assert ontology.lookup(schema, "Z1") is None


def test_validate():
    schema = ontology.builtin_schema()
    gcn = ontology.ReproRecord("GCN", frozenset({"D9", "S1", "S6", "R2", "R5"}))
    assert ontology.validate_record(gcn, schema) == []
    assert ontology.validate_record(ontology.ReproRecord("x", frozenset({"D12"})), schema) == ["D12"]
    assert ontology.validate_record(ontology.ReproRecord("x"), schema) == []


def test_bundled_records_valid():
    schema = ontology.builtin_schema()
    recs = ontology.bundled_records()
    assert [r.label for r in recs] == ["GCN", "R-GCN", "GraphSAGE", "DiffPool", "SGC", "SAGN+SLE"]
    assert all(ontology.validate_record(r, schema) == [] for r in recs)


def test_parse_records():
    recs = ontology.parse_records("# c\nA: D1, S2\n\nB:\n")
    assert recs == [ontology.ReproRecord("A", frozenset({"D1", "S2"})), ontology.ReproRecord("B")]
    with pytest.raises(ValueError):
        ontology.parse_records("no colon here")


def test_cxt_bytes():
    ctx = ontology.FormalContext(["P"], ["A1", "A2"], [[True, False]])
    assert ontology.export_cxt(ctx) == b"B\n\n1\n2\n\nP\nA1\nA2\nX.\n"


def test_cxt_empty():
    ctx = ontology.FormalContext([], ["A1"], [])
    blob = ontology.export_cxt(ctx)
    assert blob == b"B\n\n0\n1\n\nA1\n"
    assert ontology.parse_cxt(blob) == ctx


def test_cxt_roundtrip_bundled():
    ctx = ontology.build_context(ontology.bundled_records(), ontology.builtin_schema())
    assert ontology.parse_cxt(ontology.export_cxt(ctx)) == ctx
    assert ctx.as_dict()["SGC"] == ["D9"]


def test_cxt_rejects_newlines():
    with pytest.raises(ValueError):
        ontology.export_cxt(ontology.FormalContext(["a\nb"], [], [[]]))


def test_build_context_unknown():
    with pytest.raises(ValueError):
        ontology.build_context([ontology.ReproRecord("x", frozenset({"Q"}))],
                               ontology.builtin_schema())


@pytest.mark.parametrize("blob", [b"", b"A\n\n0\n0\n\n", b"B\n\n1\n1\n\nP\nA\nXX\n", b"B\n\nx\n1\n\n"])
def test_parse_cxt_errors(blob):
    with pytest.raises(ValueError):
        ontology.parse_cxt(blob)
