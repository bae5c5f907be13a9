"""Smoke tests for the Python surface of the pipeline."""

import json
import math
import os
from pathlib import Path

import pytest

import kerap

FIXTURES = Path(os.environ.get("KERAP_FIXTURES_DIR", Path(__file__).parents[2] / "fixtures"))


def test_classify_polarity_paper_labels():
    assert kerap.classify_polarity("Not treats") == "negative"
    assert kerap.classify_polarity("Relates with") == "positive"
    assert kerap.classify_polarity("NOT_ASSOCIATES") == "negative"
    assert kerap.classify_polarity("noted in", overrides={"noted in": "positive"}) == "positive"


def test_cosine_hand_value():
    assert kerap.cosine([1.0, 2.0, 2.0], [2.0, 1.0, 2.0]) == pytest.approx(8.0 / 9.0, abs=1e-9)
    assert kerap.cosine([1.0, 0.0], [-1.0, 0.0]) == 0.0  # clamped
    with pytest.raises(Exception):
        kerap.cosine([1.0, 0.0], [1.0, 0.0, 0.0])


def test_hash_embed_deterministic():
    a1 = kerap.hash_embed("a")
    assert a1 == kerap.hash_embed("a")
    assert a1 != kerap.hash_embed("b")
    assert len(a1) == 768


def test_top_candidates_match_python_oracle():
    entities = [(f"id{i}", f"name {i}") for i in range(30)]
    got = kerap.top_candidates(entities, "some mention", candidate_count=5, seed=3, dimension=64)

    def cos(a, b):
        dot = sum(x * y for x, y in zip(a, b))
        na = math.sqrt(sum(x * x for x in a))
        nb = math.sqrt(sum(x * x for x in b))
        return max(0.0, min(1.0, dot / (na * nb)))

    query = kerap.hash_embed("some mention", seed=3, dimension=64)
    scored = sorted(
        ((eid, cos(query, kerap.hash_embed(name, seed=3, dimension=64))) for eid, name in entities),
        key=lambda item: (-item[1], item[0]),
    )[:5]
    assert [eid for eid, _ in got] == [eid for eid, _ in scored]
    for (_, got_score), (_, want_score) in zip(got, scored):
        assert got_score == pytest.approx(want_score, abs=1e-9)


def test_parse_verdict():
    assert kerap.parse_verdict("YES") == "YES"
    assert kerap.parse_verdict("Prediction: NO. Reasoning: none.") == "NO"
    assert kerap.parse_verdict("The risk is uncertain.") is None


def test_score_hand_example():
    result = kerap.score([True, True, False, False], [True, True, True, True])
    assert result["accuracy"] == 0.5
    assert result["f1_weighted"] == pytest.approx(1.0 / 3.0, abs=1e-15)
    assert (result["tp"], result["fp"], result["tn"], result["fn"]) == (2, 2, 0, 0)


def test_format_mean_std():
    assert kerap.format_mean_std(0.724415, 0.0071) == "72.44±0.71"


def test_synth_cohort_exact_positives():
    visits = kerap.synth_cohort(7, 40, 0.25, ["a", "b", "c", "d"], "CKD")
    assert len(visits) == 40
    assert sum(1 for v in visits if v["label"]) == 10
    assert visits == kerap.synth_cohort(7, 40, 0.25, ["a", "b", "c", "d"], "CKD")


def test_fingerprint_sensitivity():
    base = kerap.fingerprint("m", [("system", "s"), ("user", "u")])
    assert base == kerap.fingerprint("m", [("system", "s"), ("user", "u")])
    assert base != kerap.fingerprint("m", [("system", "s"), ("user", "u!")])
    assert base != kerap.fingerprint("m", [("system", "s"), ("user", "u")], temperature=0.5)


def test_stage1_prompt_blocks():
    prompt = kerap.stage1_prompt("kerap", ["a", "b"], "CKD", "POS_TEXT", "NEG_TEXT")
    assert "EHR Data: a; b." in prompt
    assert 'Will the patient develop "CKD" at the next visit?' in prompt
    assert "POS_TEXT" in prompt
    assert "NEG_TEXT" not in prompt


@pytest.mark.skipif(not FIXTURES.exists(), reason="fixtures not present")
def test_kg_store_over_fixtures():
    store = kerap.KgStore.ingest(
        str(FIXTURES / "kg_entities.tsv"), str(FIXTURES / "kg_triples.tsv")
    )
    assert store.entity_count > 30
    assert store.triple_count > 30
    assert store.dangling_dropped == 0
    hood = store.neighborhood("D001")
    heads = {h for h, _, _ in hood["negative"]}
    assert "C003" in heads  # the exhibited negative relation
    assert all(t not in hood["positive"] for t in hood["negative"])


@pytest.mark.skipif(not FIXTURES.exists(), reason="fixtures not present")
def test_replay_evaluate_deterministic():
    config = str(FIXTURES / "config_replay.json")
    cohort = str(FIXTURES / "cohort_case_b.jsonl")
    first = kerap.replay_evaluate(config, cohort, ["direct", "kerap"], runs=2)
    second = kerap.replay_evaluate(config, cohort, ["direct", "kerap"], runs=2)
    assert first == second
    doc = json.loads(first)
    assert {s["strategy"] for s in doc["strategies"]} == {"direct", "kerap"}
    for strategy in doc["strategies"]:
        assert strategy["accuracy"]["std"] == 0.0
