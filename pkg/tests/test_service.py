"""Tests of the HTTP service layer."""

import pytest
from fastapi.testclient import TestClient

from artifact.service import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


class TestCount:
    def test_basic(self, client):
        res = client.post("/count", json={"patterns": "1342,2143,2314",
                                          "n": 5})
        assert res.status_code == 200
        doc = res.json()
        assert doc["counts"]["5"] == "74"
        assert doc["patterns"] == "1342,2143,2314"

    def test_filtered(self, client):
        res = client.post("/count", json={"patterns": "123", "n": 4,
                                          "filter": "lr_max_count==1"})
        assert res.status_code == 200
        assert res.json()["filter"] == "lr_max_count==1"

    def test_bad_patterns(self, client):
        res = client.post("/count", json={"patterns": "1142"})
        assert res.status_code == 422

    def test_bad_filter(self, client):
        res = client.post("/count", json={"patterns": "123",
                                          "filter": "junk"})
        assert res.status_code == 422

    def test_n_out_of_bounds(self, client):
        res = client.post("/count", json={"patterns": "123", "n": 99})
        assert res.status_code == 422


class TestVerify:
    def test_plain_case(self, client):
        res = client.post("/verify", json={"case_id": 133, "n": 6})
        assert res.status_code == 200
        assert res.json()["verdict"] == "pass"

    def test_engine_case(self, client):
        res = client.post("/verify", json={"case_id": 242, "n": 6})
        assert res.status_code == 200
        assert res.json()["engines"] == {"case242": "pass"}

    def test_unknown_case(self, client):
        res = client.post("/verify", json={"case_id": 9999})
        assert res.status_code == 404


class TestSeries:
    def test_basic(self, client):
        res = client.get("/series/133", params={"terms": 6})
        assert res.status_code == 200
        assert res.json()["coefficients"] == ["1", "1", "2", "6", "21", "74"]

    def test_unknown_case(self, client):
        assert client.get("/series/1").status_code == 404

    def test_bad_terms(self, client):
        assert client.get("/series/133",
                          params={"terms": 0}).status_code == 422


class TestSymmetry:
    def test_orbit(self, client):
        res = client.get("/symmetry", params={"patterns": "1342"})
        assert res.status_code == 200
        doc = res.json()
        assert doc["orbit_size"] == 8 and len(doc["orbit"]) == 8

    def test_bad_patterns(self, client):
        assert client.get("/symmetry",
                          params={"patterns": "xyz"}).status_code == 422


def test_cases_listing(client):
    res = client.get("/cases")
    assert res.status_code == 200
    doc = res.json()
    assert len(doc) == 35
    assert doc["133"] == "1342,2143,2314"
