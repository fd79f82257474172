import json

import pytest
from fastapi.testclient import TestClient

from golden import ABSORPTION_TABLE, GAME_LENGTHS, RESPONSE_PAIRS
from penney.service.app import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def frac(node):
    return (node["num"], node["den"])


class TestAnalyzeEndpoint:
    def test_published_game(self, client):
        response = client.post("/analyze", json={"s1": "HTH", "s2": "HHT"})
        assert response.status_code == 200
        doc = response.json()
        assert doc["schema"] == "penney/1"
        assert doc["command"] == "analyze"
        payload = doc["payload"]
        assert frac(payload["win_s1"]) == (1, 3)
        assert frac(payload["win_s2"]) == (2, 3)
        assert frac(payload["expected_flips"]) == (6, 1)
        times = [frac(t["expected_steps"]) for t in payload["absorption_times"]]
        assert times == [(2, 1), (0, 1), (0, 1), (6, 1), (2, 1), (4, 1), (4, 1), (6, 1)]

    def test_approx_fields_render_exact_values(self, client):
        doc = client.post("/analyze", json={"s1": "HTH", "s2": "HHT", "digits": 4}).json()
        assert doc["payload"]["win_s2"]["approx"] == "0.6667"

    def test_biased_game(self, client):
        doc = client.post(
            "/analyze", json={"s1": "HH", "s2": "TT", "bias": "0.4"}
        ).json()
        assert frac(doc["payload"]["bias"]) == (2, 5)
        win1 = doc["payload"]["win_s1"]
        win2 = doc["payload"]["win_s2"]
        total = win1["num"] * win2["den"] + win2["num"] * win1["den"]
        assert total == win1["den"] * win2["den"]  # exact complementarity

    def test_equal_patterns_rejected(self, client):
        response = client.post("/analyze", json={"s1": "HHT", "s2": "HHT"})
        assert response.status_code == 400
        assert "differ" in response.json()["detail"]

    def test_bad_pattern_rejected(self, client):
        response = client.post("/analyze", json={"s1": "HXT", "s2": "HHT"})
        assert response.status_code == 400

    def test_missing_field_rejected(self, client):
        response = client.post("/analyze", json={"s1": "HHT"})
        assert response.status_code == 422


class TestTablesEndpoints:
    def test_absorption_table_matches_golden(self, client):
        doc = client.get("/tables/absorption").json()
        payload = doc["payload"]
        assert payload["columns"] == [p1 for p1, _ in RESPONSE_PAIRS]
        for row in payload["rows"]:
            expected = ABSORPTION_TABLE[(row["s1"], row["s2"])]
            got = [frac(t) for t in row["times"]]
            assert got == [(e.numerator, e.denominator) for e in map(_to_fraction, expected)]

    def test_game_length_table_matches_golden(self, client):
        doc = client.get("/tables/game-length").json()
        entries = doc["payload"]["entries"]
        assert [(e["s1"], e["s2"]) for e in entries] == RESPONSE_PAIRS
        assert [frac(e["expected_flips"]) for e in entries] == [
            (v.numerator, v.denominator) for v in GAME_LENGTHS
        ]


def _to_fraction(value):
    from fractions import Fraction

    return Fraction(value)


class TestRespondEndpoint:
    def test_known_response(self, client):
        doc = client.post("/respond", json={"pattern": "HHH"}).json()
        payload = doc["payload"]
        assert payload["penney_response"] == "THH"
        assert payload["best_response"] == "THH"
        assert frac(payload["win_probability"]) == (7, 8)

    def test_wrong_length_rejected(self, client):
        assert client.post("/respond", json={"pattern": "HT"}).status_code == 400


class TestVerifyEndpoint:
    def test_all_suites_pass(self, client):
        doc = client.post("/verify", json={"suite": "all", "horizon": 40}).json()
        payload = doc["payload"]
        assert payload["passed"]
        assert payload["optimality"]["passed"]
        assert payload["nontransitivity"]["passed"]
        assert payload["oracle"]["passed"]

    def test_single_suite_sections(self, client):
        doc = client.post("/verify", json={"suite": "optimality"}).json()
        payload = doc["payload"]
        assert payload["optimality"] is not None
        assert payload["nontransitivity"] is None
        assert payload["oracle"] is None

    def test_unknown_suite_rejected(self, client):
        assert client.post("/verify", json={"suite": "nope"}).status_code == 422


class TestSimulateEndpoint:
    def test_deterministic(self, client):
        body = {"s1": "HHT", "s2": "THH", "trials": 20_000, "seed": 9}
        first = client.post("/simulate", json=body).json()
        second = client.post("/simulate", json=body).json()
        assert first == second

    def test_reports_analytic_values(self, client):
        body = {"s1": "HHH", "s2": "THH", "trials": 20_000, "seed": 42}
        payload = client.post("/simulate", json=body).json()["payload"]
        assert frac(payload["analytic_win_s1"]) == (1, 8)
        assert frac(payload["analytic_expected_flips"]) == (7, 1)
        assert payload["wins_s1"] + payload["wins_s2"] + payload["truncated"] == 20_000
        assert abs(payload["z_win_s1"]) <= 4

    def test_flip_budget_below_pattern_length_rejected(self, client):
        body = {"s1": "HHH", "s2": "THH", "trials": 10, "seed": 1, "max_flips": 2}
        response = client.post("/simulate", json=body)
        assert response.status_code == 400
        assert "pattern length" in response.json()["detail"]


class TestOverallEndpoint:
    def test_value_and_digits(self, client):
        doc = client.get("/overall", params={"digits": 4}).json()
        assert frac(doc["payload"]["expected_flips"]) == (149, 24)
        assert doc["payload"]["expected_flips"]["approx"] == "6.2083"


class TestDocumentContract:
    def test_canonical_json_round_trip(self, client):
        doc = client.post("/analyze", json={"s1": "HTH", "s2": "HHT"}).json()
        rendered = json.dumps(doc, indent=2, sort_keys=True)
        assert json.dumps(json.loads(rendered), indent=2, sort_keys=True) == rendered

    def test_health(self, client):
        assert client.get("/healthz").json()["status"] == "ok"
