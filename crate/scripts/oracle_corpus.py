#!/usr/bin/env python3
"""Independent reference computation for the synthetic corpus.

Re-implements tokenization (alphanumeric runs, lowercase, stopword
removal) and the vector-space and word-bigram measures from their textbook
formulas, then prints per-sub-corpus means and selected Pearson
coefficients as JSON. The Rust test suite freezes these numbers.

usage: oracle_corpus.py [CORPUS_DIR] [STOPWORD_FILE]
"""

import json
import math
import os
import sys
from collections import Counter

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
CORPUS = sys.argv[1] if len(sys.argv) > 1 else os.path.join(ROOT, "corpus", "synthetic")
STOPWORDS = sys.argv[2] if len(sys.argv) > 2 else os.path.join(
    ROOT, "crates", "core", "data", "stopwords-de.txt")

SUBCORPORA = [("basic", "basic"), ("complex", "complex"), ("unrelated", "control/unrelated")]


def load_stopwords(path):
    with open(path, encoding="utf-8") as f:
        return {w.strip().lower() for w in f if w.strip() and not w.lstrip().startswith("#")}


def tokens(text, stop):
    out, cur = [], []
    for ch in text:
        if ch.isalnum():
            cur.append(ch)
        elif cur:
            out.append("".join(cur))
            cur = []
    if cur:
        out.append("".join(cur))
    return [t.lower() for t in out if t.lower() not in stop]


def cosine(a, b):
    dot = sum(a[t] * b.get(t, 0) for t in a)
    na = math.sqrt(sum(v * v for v in a.values()))
    nb = math.sqrt(sum(v * v for v in b.values()))
    return dot / (na * nb)


def unit(a):
    n = math.sqrt(sum(v * v for v in a.values()))
    return {t: v / n for t, v in a.items()}


def euclidean(a, b):
    a, b = unit(a), unit(b)
    return math.sqrt(sum((a.get(t, 0) - b.get(t, 0)) ** 2 for t in sorted(set(a) | set(b))))


def manhattan(a, b):
    a, b = unit(a), unit(b)
    return sum(abs(a.get(t, 0) - b.get(t, 0)) for t in sorted(set(a) | set(b)))


def jaccard(a, b):
    return len(set(a) & set(b)) / len(set(a) | set(b))


def dice(a, b):
    return 2 * len(set(a) & set(b)) / (len(set(a)) + len(set(b)))


def rouge2(cand, ref):
    c = Counter(zip(cand, cand[1:]))
    r = Counter(zip(ref, ref[1:]))
    return sum(min(n, c[g]) for g, n in r.items()) / sum(r.values())


def pearson(x, y):
    mx, my = sum(x) / len(x), sum(y) / len(y)
    sxy = sum((a - mx) * (b - my) for a, b in zip(x, y))
    sxx = sum((a - mx) ** 2 for a in x)
    syy = sum((b - my) ** 2 for b in y)
    return sxy / math.sqrt(sxx * syy)


def read(path):
    with open(path, encoding="utf-8") as f:
        return f.read()


def main():
    stop = load_stopwords(STOPWORDS)
    src = tokens(read(os.path.join(CORPUS, "source.txt")), stop)
    sv = Counter(src)
    metrics = {
        "2grams": lambda t, v: rouge2(t, src),
        "cosine": lambda t, v: cosine(sv, v),
        "dice": lambda t, v: dice(sv, v),
        "euclidean": lambda t, v: euclidean(sv, v),
        "jaccard": lambda t, v: jaccard(sv, v),
        "manhattan": lambda t, v: manhattan(sv, v),
    }
    per_doc = {m: [] for m in metrics}
    means = {}
    for label, sub in SUBCORPORA:
        d = os.path.join(CORPUS, sub)
        cols = {m: [] for m in metrics}
        for name in sorted(os.listdir(d)):
            t = tokens(read(os.path.join(d, name)), stop)
            v = Counter(t)
            for m, f in metrics.items():
                cols[m].append(f(t, v))
        for m in metrics:
            means[f"{m}/{label}"] = sum(cols[m]) / len(cols[m])
            per_doc[m].extend(cols[m])
    pairs = [("jaccard", "dice"), ("cosine", "jaccard"), ("cosine", "euclidean"),
             ("cosine", "manhattan"), ("2grams", "cosine")]
    corr = {f"{a}~{b}": pearson(per_doc[a], per_doc[b]) for a, b in pairs}
    print(json.dumps({"means": means, "pearson": corr}, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
