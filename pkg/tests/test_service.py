import pytest
from fastapi.testclient import TestClient

from machlog import corpus
from machlog.engine import enumerate_options, new_session, parse_proof
from machlog.programs import parse_program
from machlog.service import create_app

T1_PREMISES = "[Add([a,b],[c]), Mult([-1,b],[d])]"


@pytest.fixture
def client():
    app = create_app(corpus.load_bundled_store())
    return TestClient(app)


def make_session(client, premises=T1_PREMISES):
    r = client.post("/sessions", json={"premises": premises})
    assert r.status_code == 201
    return r.json()


def test_health(client):
    assert client.get("/health").json() == {"status": "ok"}


def test_axioms_endpoint(client):
    body = client.get("/axioms").json()
    assert len(body["entries"]) == 31
    kinds = {e["kind"] for e in body["entries"]}
    assert kinds == {"schema", "axiom"}
    a8 = next(e for e in body["entries"] if e["label"] == "A8")
    assert a8["premise"] == ["Add([a,b],[c])"]


def test_create_session_renders_lines_and_annotations(client):
    view = make_session(client)
    assert view["premise_count"] == 2
    assert [l["statement"] for l in view["lines"]] == \
        ["Add([a,b],[c])", "Mult([-1,b],[d])"]
    assert [l["annotation"] for l in view["lines"]] == ["c=(a+b)", "d=(-1*b)"]
    assert all(l["connection"] is None for l in view["lines"])


def test_create_session_rejects_bad_premises(client):
    r = client.post("/sessions", json={"premises": "[Add([a,b],[c]), Add([c,b],[a])]"})
    assert r.status_code == 400
    assert "statement" in r.json()["detail"]


def test_options_match_in_process_enumeration(client, bundled_store):
    view = make_session(client)
    body = client.get(f"/sessions/{view['id']}/options").json()
    local = enumerate_options(new_session(parse_program(T1_PREMISES)), bundled_store)
    assert len(body["options"]) == len(local)
    for remote, mine in zip(body["options"], local):
        assert remote["label"] == mine.label
        assert tuple(remote["refs"]) == mine.refs
        assert remote["conclusion"] == [st.render() for st in mine.conclusion]
    # determinism: a second fetch returns the identical body
    again = client.get(f"/sessions/{view['id']}/options").json()
    assert again == body


def test_apply_undo_cycle(client):
    view = make_session(client)
    sid = view["id"]
    options = client.get(f"/sessions/{sid}/options").json()
    k = next(o["index"] for o in options["options"]
             if o["label"] == "A15" and o["refs"] == [2])
    after = client.post(f"/sessions/{sid}/apply",
                        json={"option": k, "revision": options["revision"]}).json()
    assert after["lines"][2]["statement"] == "Add([b,d],[e])"
    assert after["lines"][2]["connection"] == "[A15,2]"
    assert after["lines"][2]["annotation"] == "e=(b+d)=(b+(-1*b))"
    back = client.post(f"/sessions/{sid}/undo").json()
    assert len(back["lines"]) == 2


def test_apply_with_stale_revision_conflicts(client):
    view = make_session(client)
    sid = view["id"]
    options = client.get(f"/sessions/{sid}/options").json()
    client.post(f"/sessions/{sid}/apply", json={"option": 0})
    r = client.post(f"/sessions/{sid}/apply",
                    json={"option": 1, "revision": options["revision"]})
    assert r.status_code == 409


def test_apply_bad_index(client):
    view = make_session(client)
    r = client.post(f"/sessions/{view['id']}/apply", json={"option": 10_000})
    assert r.status_code == 400


def test_undo_at_premises_conflicts(client):
    view = make_session(client)
    assert client.post(f"/sessions/{view['id']}/undo").status_code == 409


def test_unknown_session_is_404(client):
    assert client.get("/sessions/nope").status_code == 404
    assert client.post("/sessions/nope/undo").status_code == 404


def test_extract_requires_derivation(client):
    view = make_session(client)
    assert client.post(f"/sessions/{view['id']}/extract").status_code == 409


def drive_recorded_proof(client, label):
    """Apply a corpus proof's recorded derivations through the API."""
    parsed = parse_proof(corpus.proof_text(label))
    premises = "[" + ", ".join(s.render() for s in parsed.premises) + "]"
    sid = make_session(client, premises)["id"]
    view = None
    for st, conn in parsed.derived:
        options = client.get(f"/sessions/{sid}/options").json()
        k = next(o["index"] for o in options["options"]
                 if o["label"] == conn.label and tuple(o["refs"]) == conn.refs
                 and o["conclusion"] == [st.render()])
        view = client.post(f"/sessions/{sid}/apply", json={"option": k}).json()
    return sid, view


def test_drive_t1_and_extract(client):
    sid, view = drive_recorded_proof(client, "T1")
    assert [l["statement"] for l in view["lines"]] == \
        [l.split(None, 2)[1] for l in corpus.proof_text("T1")
         .split("Proof.\n", 1)[1].rstrip().splitlines()]
    body = client.post(f"/sessions/{sid}/extract").json()
    assert body["theorem"] == "[[Add([a,b],[c]), Mult([-1,b],[d])], Add([c,d],[m])]"
    assert body["used"] == [1, 2] and body["redundant"] == []


def test_sessions_are_isolated_and_deterministic(client):
    a = make_session(client)
    b = make_session(client)
    assert a["id"] != b["id"]
    for key in ("lines", "premise_count", "revision", "snapshot"):
        assert a[key] == b[key]
    oa = client.get(f"/sessions/{a['id']}/options").json()
    ob = client.get(f"/sessions/{b['id']}/options").json()
    assert oa == ob


def test_get_session_matches_create_view(client):
    view = make_session(client)
    fetched = client.get(f"/sessions/{view['id']}").json()
    assert fetched == view
