import concurrent.futures
import json

import pytest
from fastapi.testclient import TestClient

from arianna.scorer import report_to_dict, score, score_strict
from arianna.service import create_app
from arianna.session import import_session
from conftest import DEMO_TEXT


@pytest.fixture
def app(tmp_path):
    return create_app(tmp_path)


@pytest.fixture
def client(app):
    with TestClient(app) as c:
        yield c


@pytest.fixture
def je_id(client, jane_text):
    response = client.post(
        "/v1/models", json={"name": "je", "kind": "internal", "text": jane_text}
    )
    assert response.status_code == 201
    return response.json()["id"]


@pytest.fixture
def demo_session_id(client, je_id):
    response = client.post("/v1/sessions", json={"text": DEMO_TEXT, "model_id": je_id})
    assert response.status_code == 201
    return response.json()["id"]


class TestModels:
    def test_create_returns_summary(self, client, jane_text, jane_model):
        response = client.post(
            "/v1/models", json={"name": "je", "kind": "internal", "text": jane_text}
        )
        assert response.status_code == 201
        body = response.json()
        assert body["id"] == "je"
        assert body["entry_counts"] == {"5": 0, "4": 0, "3": 1}
        assert body["checksum"] == jane_model.meta.checksum
        assert body["token_count"] == 62

    def test_duplicate_name_rejected(self, client, jane_text, je_id):
        response = client.post(
            "/v1/models", json={"name": "je", "kind": "internal", "text": jane_text}
        )
        assert response.status_code == 400

    def test_invalid_name_rejected(self, client):
        response = client.post("/v1/models", json={"name": "../evil", "text": "a b c"})
        assert response.status_code == 400

    def test_invalid_orders_rejected(self, client):
        response = client.post(
            "/v1/models", json={"name": "m", "text": "a b c", "orders": [2, 3]}
        )
        assert response.status_code == 400

    def test_invalid_min_frequency_rejected(self, client):
        response = client.post(
            "/v1/models", json={"name": "m", "text": "a b c", "min_frequency": 0}
        )
        assert response.status_code == 400

    def test_list_and_detail(self, client, je_id):
        listed = client.get("/v1/models").json()["models"]
        assert [m["id"] for m in listed] == ["je"]
        detail = client.get(f"/v1/models/{je_id}").json()
        assert detail["entries"] == [
            {"order": 3, "context": "there_was", "expected_word": "no", "frequency": 2}
        ]

    def test_entries_withheld_above_cap(self, tmp_path, jane_text):
        app = create_app(tmp_path / "capped", entry_cap=0)
        with TestClient(app) as client:
            client.post("/v1/models", json={"name": "je", "kind": "internal", "text": jane_text})
            detail = client.get("/v1/models/je").json()
            assert detail["entries"] is None
            assert detail["entry_cap"] == 0
            assert detail["entries_total"] == 1

    def test_expected_word_query(self, client, je_id):
        response = client.get(f"/v1/models/{je_id}", params={"context": "there_was", "order": 3})
        assert response.json()["expected"] == [{"word": "no", "frequency": 2}]
        missing = client.get(f"/v1/models/{je_id}", params={"context": "was_na", "order": 3})
        assert missing.json()["expected"] == []

    def test_expected_word_query_needs_both_params(self, client, je_id):
        assert client.get(f"/v1/models/{je_id}", params={"context": "x"}).status_code == 400

    def test_unknown_model_404(self, client):
        assert client.get("/v1/models/nope").status_code == 404

    def test_error_body_shape(self, client):
        body = client.get("/v1/models/nope").json()
        assert set(body) == {"code", "message", "detail"}
        assert body["code"] == 404

    def test_oversized_text_rejected(self, tmp_path):
        app = create_app(tmp_path / "small", max_text_bytes=10)
        with TestClient(app) as client:
            response = client.post("/v1/models", json={"name": "m", "text": "a" * 100})
            assert response.status_code == 413


class TestScore:
    def test_matches_library_exactly(self, client, je_id, jane_model):
        response = client.post("/v1/score", json={"text": DEMO_TEXT, "model_id": je_id})
        assert response.status_code == 200
        assert response.json() == report_to_dict(score(DEMO_TEXT, jane_model))

    def test_clean_text(self, client, je_id):
        response = client.post("/v1/score", json={"text": "there was no", "model_id": je_id})
        assert response.json()["consistency"] == 1.0

    def test_strict_mode(self, client, je_id, jane_model):
        response = client.post(
            "/v1/score", json={"text": DEMO_TEXT, "model_id": je_id, "mode": "strict"}
        )
        assert response.json() == report_to_dict(score_strict(DEMO_TEXT, jane_model))

    def test_unknown_model(self, client):
        response = client.post("/v1/score", json={"text": "a b c", "model_id": "nope"})
        assert response.status_code == 404

    def test_empty_text(self, client, je_id):
        response = client.post("/v1/score", json={"text": "   ", "model_id": je_id})
        assert response.status_code == 400

    def test_missing_params(self, client):
        assert client.post("/v1/score", json={"text": "a"}).status_code == 400


class TestSessions:
    def test_create_reports_initial_score(self, client, je_id):
        response = client.post("/v1/sessions", json={"text": DEMO_TEXT, "model_id": je_id})
        body = response.json()
        assert body["seq"] == 0
        assert body["report"]["consistency"] == 0.8
        assert body["history"] == [{"seq": 0, "consistency": 0.8}]
        assert body["tokens"] == DEMO_TEXT.split()

    def test_edit_accepts_current_seq(self, client, demo_session_id):
        response = client.post(
            f"/v1/sessions/{demo_session_id}/edits",
            json={"position": 3, "new_word": "no", "source": "accepted-candidate", "expected_seq": 0},
        )
        assert response.status_code == 200
        body = response.json()
        assert body["seq"] == 1
        assert body["report"]["consistency"] == 1.0
        assert body["history_point"] == {"seq": 1, "consistency": 1.0}

    def test_stale_seq_conflicts(self, client, demo_session_id):
        first = {"position": 3, "new_word": "no", "expected_seq": 0}
        assert client.post(f"/v1/sessions/{demo_session_id}/edits", json=first).status_code == 200
        stale = {"position": 3, "new_word": "na", "expected_seq": 0}
        assert client.post(f"/v1/sessions/{demo_session_id}/edits", json=stale).status_code == 409

    def test_invalid_edit_is_422(self, client, demo_session_id):
        response = client.post(
            f"/v1/sessions/{demo_session_id}/edits",
            json={"position": 99, "new_word": "no", "expected_seq": 0},
        )
        assert response.status_code == 422
        response = client.post(
            f"/v1/sessions/{demo_session_id}/edits",
            json={"position": 3, "new_word": "two words", "expected_seq": 0},
        )
        assert response.status_code == 422

    def test_undo_restores(self, client, demo_session_id):
        client.post(
            f"/v1/sessions/{demo_session_id}/edits",
            json={"position": 3, "new_word": "no", "expected_seq": 0},
        )
        response = client.post(f"/v1/sessions/{demo_session_id}/undo", json={"expected_seq": 1})
        assert response.status_code == 200
        assert response.json()["report"]["consistency"] == 0.8

    def test_undo_with_nothing_to_undo(self, client, demo_session_id):
        response = client.post(f"/v1/sessions/{demo_session_id}/undo", json={})
        assert response.status_code == 422

    def test_undo_stale_seq(self, client, demo_session_id):
        response = client.post(f"/v1/sessions/{demo_session_id}/undo", json={"expected_seq": 5})
        assert response.status_code == 409

    def test_get_session_state(self, client, demo_session_id):
        client.post(
            f"/v1/sessions/{demo_session_id}/edits",
            json={"position": 3, "new_word": "no", "expected_seq": 0},
        )
        body = client.get(f"/v1/sessions/{demo_session_id}").json()
        assert body["seq"] == 1
        assert body["tokens"][3] == "no"
        assert body["history"] == [
            {"seq": 0, "consistency": 0.8},
            {"seq": 1, "consistency": 1.0},
        ]

    def test_unknown_session_404(self, client):
        assert client.get("/v1/sessions/nope").status_code == 404
        assert (
            client.post(
                "/v1/sessions/nope/edits",
                json={"position": 0, "new_word": "x", "expected_seq": 0},
            ).status_code
            == 404
        )

    def test_export_is_importable(self, client, demo_session_id, jane_model):
        client.post(
            f"/v1/sessions/{demo_session_id}/edits",
            json={"position": 3, "new_word": "no", "expected_seq": 0},
        )
        doc = client.get(f"/v1/sessions/{demo_session_id}/export").json()
        session = import_session(doc, jane_model)
        assert session.latest_report.consistency == 1.0


class TestPersistence:
    def test_models_and_sessions_survive_restart(self, tmp_path, jane_text):
        root = tmp_path / "store"
        with TestClient(create_app(root)) as client:
            client.post("/v1/models", json={"name": "je", "kind": "internal", "text": jane_text})
            session_id = client.post(
                "/v1/sessions", json={"text": DEMO_TEXT, "model_id": "je"}
            ).json()["id"]
            client.post(
                f"/v1/sessions/{session_id}/edits",
                json={"position": 3, "new_word": "no", "expected_seq": 0},
            )
        with TestClient(create_app(root)) as fresh:
            assert fresh.get("/v1/models/je").status_code == 200
            body = fresh.get(f"/v1/sessions/{session_id}").json()
            assert body["seq"] == 1
            assert body["report"]["consistency"] == 1.0
            response = fresh.post(
                f"/v1/sessions/{session_id}/edits",
                json={"position": 3, "new_word": "na", "expected_seq": 1},
            )
            assert response.status_code == 200


class TestEditRaces:
    def test_concurrent_same_seq_edits_one_wins(self, app, client, demo_session_id):
        url = f"/v1/sessions/{demo_session_id}/edits"
        seq = 0
        with TestClient(app) as second_client:
            clients = [client, second_client]
            with concurrent.futures.ThreadPoolExecutor(max_workers=2) as pool:
                for trial in range(10):
                    word = f"w{trial}"
                    payload = {"position": 3, "new_word": word, "expected_seq": seq}
                    futures = [pool.submit(c.post, url, json=payload) for c in clients]
                    statuses = sorted(f.result().status_code for f in futures)
                    assert statuses == [200, 409]
                    seq += 1
