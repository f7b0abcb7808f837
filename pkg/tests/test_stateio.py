"""Round-trip and format tests for state persistence."""

import json

import pytest

from sdpc.construction import Config, apply_step, initial_state, plan_step, run, verify
from sdpc.stateio import (
    STATE_SCHEMA,
    STATE_VERSION,
    doc_to_state,
    dumps_state,
    load_state,
    loads_state,
    save_state,
    state_to_doc,
)


def small_state():
    st = initial_state(Config(p_limit=5))
    return apply_step(st, plan_step(st, 7), 25)


def test_roundtrip_is_byte_identical():
    st = small_state()
    text = dumps_state(st)
    again = dumps_state(loads_state(text))
    assert text == again


def test_roundtrip_preserves_state_fields():
    st = small_state()
    back = loads_state(dumps_state(st))
    assert back.n == st.n
    assert back.a == st.a and back.b == st.b
    assert back.represented == st.represented
    assert back.config == st.config
    assert back.rng_draws == st.rng_draws
    assert sorted(back.pairs) == sorted(st.pairs)
    for p in st.pairs:
        assert back.pairs[p].u.mask == st.pairs[p].u.mask
        assert back.pairs[p].v.mask == st.pairs[p].v.mask
        assert back.pairs[p].reserved == st.pairs[p].reserved
        assert back.pairs[p].assigned == st.pairs[p].assigned
    assert verify(back).ok


def test_reserve_assignment_survives_roundtrip():
    st = initial_state(Config(p_limit=7))
    st = apply_step(st, plan_step(st, 7), 625)
    doc = state_to_doc(st)
    entry = next(e for e in doc["pairs"] if e["p"] == 7)
    assert entry["assigned"] == {"+": 2}
    back = doc_to_state(doc)
    assert back.pairs[7].assigned == st.pairs[7].assigned


def test_document_shape():
    doc = state_to_doc(small_state())
    assert doc["schema"] == STATE_SCHEMA
    assert doc["version"] == STATE_VERSION
    # big values are decimal strings, residues stay native
    assert doc["a"] == ["1", "11", "25"]
    assert doc["b"] == ["6", "18"]
    assert all(isinstance(row["r"], str) for row in doc["represented"])
    assert [row["r"] for row in doc["represented"]] == ["-5", "5", "-7", "7", "-17", "19"]
    assert all(isinstance(u, int) for e in doc["pairs"] for u in e["u"])
    text = dumps_state(small_state())
    assert text.endswith("\n")
    assert json.loads(text) == doc


def test_schema_and_version_rejection():
    doc = state_to_doc(small_state())
    wrong = dict(doc, schema="something-else")
    with pytest.raises(ValueError, match="schema"):
        doc_to_state(wrong)
    wrong = dict(doc, version=99)
    with pytest.raises(ValueError, match="version"):
        doc_to_state(wrong)
    with pytest.raises(ValueError):
        doc_to_state(["not", "an", "object"])


def test_inconsistent_ledger_row_is_rejected():
    doc = state_to_doc(small_state())
    doc["represented"][0]["a"] = "999"
    with pytest.raises(ValueError, match="ledger"):
        doc_to_state(doc)


def test_file_roundtrip(tmp_path):
    path = tmp_path / "state.json"
    res = run(initial_state(Config(p_limit=5)), 4)
    save_state(res.state, path)
    back = load_state(path)
    assert dumps_state(back) == path.read_text(encoding="utf-8")
    assert verify(back).ok
