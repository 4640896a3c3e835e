"""Record real service traffic for the UI tests.

Drives the in-process machlog service through the same request pattern
the browser app uses (create session, then apply/refresh per recorded
derivation, then extract) and saves every request/response pair.  The
vitest suite replays these traces through a network-level fetch double,
so the UI tests exercise genuine service payloads without a server.

Run from the repository root after changing the service or corpus:

    python frontend/tools/record_fixtures.py
"""

import json
from pathlib import Path

from fastapi.testclient import TestClient

from machlog import corpus
from machlog.engine import parse_proof
from machlog.service import create_app

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


class Recorder:
    def __init__(self, client: TestClient):
        self.client = client
        self.trace = []

    def request(self, method: str, path: str, body=None):
        if method == "GET":
            response = self.client.get(path)
        else:
            response = self.client.post(path, json=body)
        self.trace.append({
            "method": method,
            "path": path,
            "body": body,
            "status": response.status_code,
            "response": response.json(),
        })
        response.raise_for_status()
        return response.json()


def record_walkthrough(premises_text, derived, listing):
    app = create_app(corpus.load_bundled_store())
    rec = Recorder(TestClient(app))

    view = rec.request("POST", "/sessions", {"premises": premises_text})
    sid = view["id"]
    options = rec.request("GET", f"/sessions/{sid}/options")
    steps = []
    for statement, connection in derived:
        refs = list(connection.refs)
        chosen = next(
            o for o in options["options"]
            if o["label"] == connection.label and o["refs"] == refs
            and o["conclusion"] == [statement.render()]
        )
        steps.append({
            "connection": connection.render(),
            "conclusion": chosen["preview"],
        })
        rec.request("POST", f"/sessions/{sid}/apply",
                    {"option": chosen["index"], "revision": options["revision"]})
        options = rec.request("GET", f"/sessions/{sid}/options")
    extract = rec.request("POST", f"/sessions/{sid}/extract")
    # the traces are replayed against a fresh Client whose session id is
    # whatever the recorded create response carried, so no rewriting
    return {
        "premises": premises_text,
        "steps": steps,
        "listing": listing,
        "theorem": extract["theorem"],
        "redundant": extract["redundant"],
        "trace": rec.trace,
    }


def t1_fixture():
    parsed = parse_proof(corpus.proof_text("T1"))
    premises = "[" + ", ".join(s.render() for s in parsed.premises) + "]"
    listing = corpus.proof_text("T1").split("Proof.\n", 1)[1].rstrip("\n")
    return record_walkthrough(premises, list(parsed.derived), listing)


def t6_variant_fixture():
    """T6's proof with an extra leading premise; its extraction flags
    that premise as redundant, which the UI must badge."""
    parsed = parse_proof(corpus.proof_text("T6"))
    premises = "[Int([a],[]), " + ", ".join(s.render() for s in parsed.premises) + "]"
    shifted = [
        (s, type(c)(c.label, tuple(r + 1 for r in c.refs)))
        for s, c in parsed.derived
    ]
    return record_walkthrough(premises, shifted, listing="")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    fixtures = {
        "t1_walkthrough.json": t1_fixture(),
        "t6_variant.json": t6_variant_fixture(),
    }
    for name, data in fixtures.items():
        path = OUT / name
        path.write_text(json.dumps(data, indent=1) + "\n")
        print(f"wrote {path} ({len(data['trace'])} recorded requests)")


if __name__ == "__main__":
    main()
