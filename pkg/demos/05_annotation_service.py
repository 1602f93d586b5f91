"""Human-in-the-loop annotation over HTTP, driven end to end in-process.

Starts the FastAPI gateway with an in-process test client, opens a
human-oracle session on a qubit pool, and plays the annotator: fetch the
next query, answer with the ground-truth label, repeat.  The same flow
works over the network via `alpool serve`.
"""

import tempfile

from fastapi.testclient import TestClient

from alpool import create_app

with tempfile.TemporaryDirectory() as tmp:
    client = TestClient(create_app(data_dir=tmp))

    r = client.post("/sessions", json={
        "mode": "human_oracle",
        "seed": 7,
        "dataset": {"kind": "qubit", "n_pool": 300, "n_test": 150},
        "strategy": "least_confidence",
        "init_labels": 3,
        "label_budget": 12,
        "eval_every": 3,
    })
    body = r.json()
    sid = body["session_id"]
    print(f"session {sid} open: {body['n_classes']} classes, "
          f"render hint {body['render_hint']!r}, "
          f"budget {body['budget_remaining']}\n")

    # the demo "human" reads the true label off the Bloch z-coordinate
    while True:
        q = client.get(f"/sessions/{sid}/query")
        if q.status_code == 409:
            print(f"\nbudget exhausted: {q.json()['message']}")
            break
        query = q.json()
        label = 0 if query["features"][2] >= 0 else 1
        a = client.post(f"/sessions/{sid}/label",
                        json={"sample_id": query["sample_id"], "label": label})
        ans = a.json()
        if ans["current_accuracy"] is not None and ans["labels_used"] % 3 == 0:
            print(f"  {ans['labels_used']:2d} labels -> "
                  f"accuracy {ans['current_accuracy']:.3f}")

    curve = client.get(f"/sessions/{sid}/curve").json()
    last = curve["points"][-1]
    print(f"\ncurve has {len(curve['points'])} points; "
          f"final accuracy {last[1]:.3f} at {last[0]} labels")
    csv_text = client.get(f"/sessions/{sid}/export", params={"format": "csv"}).text
    print(f"CSV export:\n{csv_text}")
