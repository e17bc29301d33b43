#!/usr/bin/env python3
"""Independent reference run of the whole search pipeline over a fixture corpus.

Reimplements tokenize -> stop words -> Porter (NLTK) -> URL dedup -> scoring ->
sort without sharing any code with the C++ library, and prints the expected
ranked item list as JSON. The acceptance suite freezes this output.

    python3 tests/oracle/pipeline_oracle.py "Barack Obama" web > tests/data/expected_barack_obama_web.json
"""
import json
import os
import re
import sys
from itertools import combinations
from urllib.parse import urlsplit

from nltk.stem.porter import PorterStemmer

ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
STEMMER = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)


def load_stops():
    with open(os.path.join(ROOT, "data", "stopwords.txt"), encoding="utf-8") as f:
        return {l.strip().lower() for l in f if l.strip() and not l.strip().startswith("#")}


STOPS = load_stops()


def stem(word):
    if not re.fullmatch(r"[a-z]+", word):
        return word
    return STEMMER.stem(word) or word


def conflate(text):
    tokens = re.findall(rb"[A-Za-z0-9\x80-\xff]+", text.encode("utf-8"))
    out = []
    for t in tokens:
        t = t.decode("utf-8").lower()
        if t in STOPS:
            continue
        s = stem(t)
        if s not in STOPS:
            out.append(s)
    return out


def canonical(url):
    parts = urlsplit(url)
    if not parts.scheme or not parts.netloc:
        return None
    scheme = parts.scheme.lower()
    host = parts.hostname or ""
    port = parts.port
    default = {"http": 80, "https": 443}.get(scheme)
    out = f"{scheme}://{host}"
    if port is not None and port != default:
        out += f":{port}"
    if parts.path != "/":
        out += parts.path
    if parts.query:
        out += "?" + parts.query
    return out


def brute_lcs(a, b):
    # Longest subsequence of `a` that is also a subsequence of `b`.
    def is_subseq(s, t):
        it = iter(t)
        return all(x in it for x in s)

    for n in range(min(len(a), len(b)), 0, -1):
        for idx in combinations(range(len(a)), n):
            if is_subseq([a[i] for i in idx], b):
                return n
    return 0


def lcs(a, b):
    if len(a) <= 14:
        return brute_lcs(a, b)
    table = [[0] * (len(b) + 1) for _ in range(len(a) + 1)]
    for i in range(1, len(a) + 1):
        for j in range(1, len(b) + 1):
            table[i][j] = table[i - 1][j - 1] + 1 if a[i - 1] == b[j - 1] else max(table[i - 1][j], table[i][j - 1])
    return table[-1][-1]


def main():
    query, vertical = sys.argv[1], sys.argv[2]
    fixtures = sys.argv[3] if len(sys.argv) > 3 else os.path.join(ROOT, "fixtures")
    with open(os.path.join(ROOT, "data", "seid.json"), encoding="utf-8") as f:
        seid = json.load(f)
    weights = {e["id"]: e["initial_weight"] for e in seid["engines"] if e.get("enabled", True)}
    supports = {e["id"]: e.get("supported_verticals", ["web", "image", "news"]) for e in seid["engines"]}

    q = conflate(query)
    groups = {}
    for engine in sorted(weights):
        if vertical not in supports[engine]:
            continue
        path = os.path.join(fixtures, engine, vertical + ".json")
        with open(path, encoding="utf-8") as f:
            doc = json.load(f)
        records = doc["results"] if isinstance(doc, dict) else doc
        for rank, rec in enumerate(records[:10], start=1):
            c = canonical(rec["url"])
            if c is None:
                continue
            groups.setdefault(c, []).append((engine, rank, rec))

    items = []
    for c, copies in groups.items():
        engine, rank, rec = sorted(copies, key=lambda x: (-weights[x[0]], x[1], x[0]))[0]
        kw = conflate(rec["snippet"])
        count = sum(1 for k in kw if k in q)
        seq = lcs(kw, q)
        items.append({
            "url": rec["url"],
            "canonical_url": c,
            "representative_engine": engine,
            "provenance": sorted([[e, r] for e, r, _ in copies]),
            "keyword_count": count,
            "sequence_score": seq,
            "tiebreak_score": weights[engine] / rank,
            "timestamp": rec.get("timestamp"),
        })
    items.sort(key=lambda i: (-i["keyword_count"], -i["sequence_score"], -i["tiebreak_score"], i["canonical_url"]))
    if vertical == "news":
        # Stable: rank order breaks timestamp ties.
        items.sort(key=lambda i: i["timestamp"], reverse=True)
    json.dump({"query_keywords": q, "items": items[:20]}, sys.stdout, indent=2)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
