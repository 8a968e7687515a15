from __future__ import annotations

import json

import pytest
from fastapi.testclient import TestClient

from conftest import fixture_bytes
from ranklabel.service import create_app

RANKING_REQUEST = {
    "weights": {"PubCount": 1.0, "GRE": 0.3},
    "normalization": "minmax",
    "sensitive_attribute": "DeptSizeBin",
    "diversity_attributes": ["Region"],
    "k": 10,
    "alpha": 0.05,
}


@pytest.fixture()
def client(tmp_path):
    app = create_app(tmp_path / "data", preload_fixtures=False)
    with TestClient(app) as c:
        yield c


@pytest.fixture()
def cs_id(client) -> str:
    response = client.post(
        "/api/v1/datasets?name=cs", content=fixture_bytes("cs_departments")
    )
    assert response.status_code == 200
    return response.json()["dataset_id"]


class TestDatasets:
    def test_upload_returns_descriptor(self, client):
        response = client.post("/api/v1/datasets", content=fixture_bytes("cs_departments"))
        body = response.json()
        assert response.status_code == 200
        assert body["row_count"] == 51
        kinds = {c["name"]: c["kind"] for c in body["columns"]}
        assert kinds["PubCount"] == "numeric"
        assert kinds["DeptSizeBin"] == "categorical"
        binary = [c for c in body["columns"] if c["name"] == "DeptSizeBin"][0]
        assert binary["distinct"] == 2

    def test_reupload_same_bytes_same_id(self, client):
        data = fixture_bytes("cs_departments")
        first = client.post("/api/v1/datasets", content=data).json()["dataset_id"]
        second = client.post("/api/v1/datasets", content=data).json()["dataset_id"]
        assert first == second

    def test_invalid_csv_rejected_with_error_shape(self, client):
        response = client.post("/api/v1/datasets", content=b"")
        assert response.status_code == 400
        body = response.json()
        assert body["error"] == "invalid_dataset"
        assert "message" in body

    def test_upload_cap(self, tmp_path):
        app = create_app(tmp_path / "cap", max_upload_bytes=100, preload_fixtures=False)
        with TestClient(app) as small:
            response = small.post("/api/v1/datasets", content=b"a\n" + b"1\n" * 200)
            assert response.status_code == 413
            assert response.json()["error"] == "too_large"

    def test_get_descriptor_and_404(self, client, cs_id):
        ok = client.get(f"/api/v1/datasets/{cs_id}")
        assert ok.status_code == 200
        assert ok.json()["name"] == "cs"
        missing = client.get("/api/v1/datasets/ffffffffffffffff")
        assert missing.status_code == 404
        assert missing.json()["error"] == "not_found"

    def test_listing(self, client, cs_id):
        listing = client.get("/api/v1/datasets").json()
        assert [d["dataset_id"] for d in listing] == [cs_id]

    def test_fixtures_preloaded(self, tmp_path):
        app = create_app(tmp_path / "pre", preload_fixtures=True)
        with TestClient(app) as c:
            names = {d["name"] for d in c.get("/api/v1/datasets").json()}
            assert {"cs_departments", "german_credit", "compas"} <= names


class TestHistogram:
    def test_histogram_counts(self, client, cs_id):
        response = client.get(
            f"/api/v1/datasets/{cs_id}/histogram",
            params={"attribute": "GRE", "bins": 5},
        )
        body = response.json()
        assert response.status_code == 200
        assert len(body["counts"]) == 5
        assert len(body["bin_edges"]) == 6
        assert sum(body["counts"]) == 51

    def test_unknown_attribute(self, client, cs_id):
        response = client.get(
            f"/api/v1/datasets/{cs_id}/histogram", params={"attribute": "Nope"}
        )
        assert response.status_code == 400
        assert response.json()["error"] == "unknown_attribute"

    def test_categorical_attribute(self, client, cs_id):
        response = client.get(
            f"/api/v1/datasets/{cs_id}/histogram", params={"attribute": "Region"}
        )
        assert response.status_code == 400
        assert response.json()["error"] == "type_mismatch"


class TestRankings:
    def test_create_and_fetch_label(self, client, cs_id):
        response = client.post(f"/api/v1/datasets/{cs_id}/rankings", json=RANKING_REQUEST)
        assert response.status_code == 200
        body = response.json()
        assert len(body["preview"]) == 10
        assert body["preview"][0]["rank"] == 1
        scores = [row["score"] for row in body["preview"]]
        assert scores == sorted(scores, reverse=True)

        label = client.get(f"/api/v1/rankings/{body['ranking_id']}/label")
        assert label.status_code == 200
        doc = label.json()
        assert doc["label_schema"] == "1.0"
        assert doc["metadata"]["dataset_digest"]

        html = client.get(f"/api/v1/rankings/{body['ranking_id']}/label.html")
        assert html.status_code == 200
        assert html.text.count("<section class=\"widget\"") == 6

    def test_idempotent_ranking_id_and_label_bytes(self, client, cs_id):
        first = client.post(f"/api/v1/datasets/{cs_id}/rankings", json=RANKING_REQUEST).json()
        second = client.post(f"/api/v1/datasets/{cs_id}/rankings", json=RANKING_REQUEST).json()
        assert first["ranking_id"] == second["ranking_id"]
        label_a = client.get(f"/api/v1/rankings/{first['ranking_id']}/label").content
        label_b = client.get(f"/api/v1/rankings/{second['ranking_id']}/label").content
        assert label_a == label_b

    def test_validation_fields(self, client, cs_id):
        bad = dict(RANKING_REQUEST, weights={"Nope": 1.0}, sensitive_attribute="Region")
        response = client.post(f"/api/v1/datasets/{cs_id}/rankings", json=bad)
        assert response.status_code == 400
        body = response.json()
        assert body["error"] == "validation_error"
        assert "unknown attribute" in body["fields"]["weights"]
        assert "expected 2" in body["fields"]["sensitive_attribute"]

    def test_malformed_body_shape(self, client, cs_id):
        response = client.post(f"/api/v1/datasets/{cs_id}/rankings", json={"weights": {}})
        assert response.status_code == 400
        body = response.json()
        assert body["error"] == "validation_error"
        assert any("weights" in k or "sensitive" in k for k in body["fields"])

    def test_unknown_ranking_404(self, client):
        response = client.get("/api/v1/rankings/ffffffffffffffff/label")
        assert response.status_code == 404
        assert response.json() == {
            "error": "not_found",
            "message": "unknown ranking id 'ffffffffffffffff'",
        }

    def test_unknown_dataset_404(self, client):
        response = client.post(
            "/api/v1/datasets/ffffffffffffffff/rankings", json=RANKING_REQUEST
        )
        assert response.status_code == 404


class TestPersistence:
    def test_store_survives_restart(self, tmp_path):
        data_dir = tmp_path / "persist"
        app = create_app(data_dir, preload_fixtures=False)
        with TestClient(app) as c:
            dataset_id = c.post(
                "/api/v1/datasets?name=cs", content=fixture_bytes("cs_departments")
            ).json()["dataset_id"]
            rid = c.post(f"/api/v1/datasets/{dataset_id}/rankings", json=RANKING_REQUEST).json()[
                "ranking_id"
            ]
            label_before = c.get(f"/api/v1/rankings/{rid}/label").content

        fresh = create_app(data_dir, preload_fixtures=False)
        with TestClient(fresh) as c:
            assert c.get(f"/api/v1/datasets/{dataset_id}").status_code == 200
            label_after = c.get(f"/api/v1/rankings/{rid}/label").content
            assert label_after == label_before

    def test_restart_recomputation_is_byte_identical(self, tmp_path):
        # same request against a fresh store recomputes the same label bytes
        labels = []
        for run in range(2):
            app = create_app(tmp_path / f"run-{run}", preload_fixtures=False)
            with TestClient(app) as c:
                dataset_id = c.post(
                    "/api/v1/datasets", content=fixture_bytes("cs_departments")
                ).json()["dataset_id"]
                rid = c.post(
                    f"/api/v1/datasets/{dataset_id}/rankings", json=RANKING_REQUEST
                ).json()["ranking_id"]
                labels.append(c.get(f"/api/v1/rankings/{rid}/label").content)
        assert labels[0] == labels[1]


class TestRoot:
    def test_placeholder_index(self, client):
        response = client.get("/")
        assert response.status_code == 200
        assert "ranklabel" in response.text

    def test_health(self, client):
        assert client.get("/api/v1/health").json() == {"status": "ok"}
