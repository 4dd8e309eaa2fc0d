"""Blinded judging over HTTP, end to end.

Starts the judging server in-process, walks an assessor through a topic
(documents arrive cleaned and stripped of any provenance), revises one
judgment, then exports the judgment file and runs the noise quality
control -- the planted noise document was judged relevant, so the
assessor gets flagged.
"""

import json
import tempfile
import urllib.request

from trelkit.judging import JudgingHTTPServer, JudgingService, ServiceConfig
from trelkit.types import CrawlManifest, Pool, PoolEntry

# a 6-document pool: 4 ranked, 1 search-engine, 1 noise probe
entries = {f"doc{i}": PoolEntry(f"doc{i}", "pooling_run", i + 1) for i in range(4)}
entries["gdoc"] = PoolEntry("gdoc", "search_engine", 1)
entries["ndoc"] = PoolEntry("ndoc", "noise", None)
pool = Pool(topic_id="001", entries=entries, depth=4)

documents = {
    d: (
        f"<html><head><title>{d}</title><script>tracker()</script></head>"
        f"<body><p>Readable text of {d}.</p><img src='banner.png'></body></html>"
    ).encode()
    for d in pool.doc_ids()
}
manifest = CrawlManifest(
    topic_docs={"001": frozenset(set(pool.doc_ids()) - {"ndoc"}), "021": frozenset({"ndoc"})},
    noise_topics=frozenset({"021"}),
)

with tempfile.TemporaryDirectory() as data_dir:
    service = JudgingService(data_dir, documents, seed=1, manifest=manifest)
    service.load_pool(pool)
    server = JudgingHTTPServer(ServiceConfig(port=0, data_dir=data_dir), service=service)
    server.serve_background()
    base = server.address

    def get(path):
        with urllib.request.urlopen(base + path) as resp:
            return json.loads(resp.read())

    def post(path, payload):
        req = urllib.request.Request(
            base + path, data=json.dumps(payload).encode(), method="POST"
        )
        with urllib.request.urlopen(req) as resp:
            return json.loads(resp.read())

    print(f"server at {base}")
    print("assessor overview:", get("/assignments/a1"))

    # judge the whole worklist; note the payload carries no provenance
    first_doc = None
    while True:
        nxt = get("/assignments/a1/001/next")
        if nxt.get("done"):
            break
        if first_doc is None:
            first_doc = nxt["doc_id"]
            print(f"\nfirst document payload keys: {sorted(nxt)}")
            print(f"cleaned body: {nxt['body']!r}")
        level = 2 if nxt["doc_id"] == "ndoc" else 1  # carelessly marks noise relevant
        post("/judgments", {"assessor_id": "a1", "topic_id": "001",
                            "doc_id": nxt["doc_id"], "level": level})

    # in-document search
    hits = get(f"/documents/{first_doc}/search?q=readable")
    print(f"\nsearch 'readable' in {first_doc}: {hits['matches']}")

    # the assessor reconsiders one (non-noise) document
    post("/judgments", {"assessor_id": "a1", "topic_id": "001",
                        "doc_id": "doc0", "level": 0})

    with urllib.request.urlopen(base + "/export") as resp:
        print("\nexported judgment file:")
        print(resp.read().decode())

    qc = get("/qc")
    print("noise QC:", qc["assessors"])
    server.shutdown()
    server.server_close()
