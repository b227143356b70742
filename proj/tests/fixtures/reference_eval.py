#!/usr/bin/env python3
"""Reference evaluation for the fixture corpus.

Written from the written rules alone, without sharing code with the C++
library: tokenization, word and phrase networks, degree / strength /
neighborhood size, tf and tf-idf, top-k% thresholding and micro/macro
precision, recall and F1 by plain set arithmetic. Phrase edges are counted
pairwise over all occurrence pairs.

Usage:
    reference_eval.py CORPUS_DIR GOLD_JSONL STOPWORDS OUT_DIR

Writes OUT_DIR/report.csv, OUT_DIR/summary.csv and OUT_DIR/configs.txt
(the --configs argument that selects the same rankers in the CLI).
Input is expected to be ASCII.
"""

import json
import math
import os
import sys
from collections import Counter, defaultdict

KS = list(range(5, 101, 5))
CLOSERS = "\"')]}"
NETWORKS = [
    ("digraph", True, False),
    ("digraph_simplified", True, True),
    ("undigraph", False, False),
    ("undigraph_simplified", False, True),
]
MEASURES = ["degree", "strength", "neighborhood_size_order_1"]


def normalize(piece):
    return "".join(c.lower() for c in piece if c.isascii() and c.isalnum())


def is_numeric(token):
    return not any(c.isalpha() for c in token)


def tokenize(text):
    """Normalized tokens and sentence lengths."""
    tokens, lengths, start = [], [], 0
    for piece in text.split():
        tok = normalize(piece)
        if tok:
            tokens.append(tok)
        if piece.rstrip(CLOSERS)[-1:] in (".", "!", "?") and len(tokens) > start:
            lengths.append(len(tokens) - start)
            start = len(tokens)
    if len(tokens) > start:
        lengths.append(len(tokens) - start)
    return tokens, lengths


def content_words(tokens, stopwords):
    return [t for t in tokens if not is_numeric(t) and len(t) >= 3 and t not in stopwords]


def median_window(lengths):
    s = sorted(lengths)
    n = len(s)
    if n % 2:
        m = s[n // 2]
    else:
        m = (s[n // 2 - 1] + s[n // 2] + 1) // 2
    return max(m, 2)


class Network:
    """Nodes in first-seen order with term frequencies; arcs as a Counter."""

    def __init__(self):
        self.freq = {}
        self.arcs = Counter()

    def shaped(self, directed, simplified):
        out = Network()
        out.freq = dict(self.freq)
        for (u, v), w in self.arcs.items():
            if simplified and u == v:
                continue
            key = (u, v) if directed else tuple(sorted((u, v)))
            out.arcs[key] += w
        return out


def word_network(words):
    net = Network()
    for w in words:
        net.freq[w] = net.freq.get(w, 0) + 1
    for a, b in zip(words, words[1:]):
        net.arcs[(a, b)] += 1
    return net


def phrase_list(lines):
    seen, out = set(), []
    for line in lines:
        words = [w for w in (normalize(p) for p in line.split()) if w]
        if not words or len(words) > 5:
            continue
        label = " ".join(words)
        if label not in seen:
            seen.add(label)
            out.append(words)
    return out


def valid_phrase(words, stopwords):
    if any(len(w) < 3 for w in words):
        return False
    return not (len(words) == 1 and words[0] in stopwords)


def occurrences(tokens, phrases):
    occ = []
    for pos in range(len(tokens)):
        best = None
        for words in phrases:
            if tokens[pos:pos + len(words)] == words and (best is None or len(words) > len(best)):
                best = words
        if best is not None:
            occ.append((pos, " ".join(best)))
    return occ


def phrase_network(tokens, window, phrases, stopwords):
    valid = {" ".join(p) for p in phrases if valid_phrase(p, stopwords)}
    occ = [(pos, label) for pos, label in occurrences(tokens, phrases)]
    net = Network()
    for _, label in occ:
        if label in valid:
            net.freq[label] = net.freq.get(label, 0) + 1
    for i in range(len(occ)):
        for j in range(i + 1, len(occ)):
            (p, a), (q, b) = occ[i], occ[j]
            if q - p <= window and a in valid and b in valid:
                net.arcs[(a, b)] += 1
    return net


def centrality(net, measure, mode):
    score = {n: 0.0 for n in net.freq}
    neighbors = {n: set() for n in net.freq}
    for (u, v), w in net.arcs.items():
        if measure == "degree":
            add = 1.0
        else:
            add = float(w)
        if mode != "in":
            score[u] += add
            if u != v:
                neighbors[u].add(v)
        if mode != "out":
            score[v] += add
            if u != v:
                neighbors[v].add(u)
    if measure == "neighborhood_size_order_1":
        return {n: float(len(s)) for n, s in neighbors.items()}
    return score


def ranked(scores, freq):
    items = sorted(scores.items(), key=lambda kv: (-kv[1], -freq[kv[0]], kv[0]))
    return [term for term, _ in items]


def prf(tp, predicted, gold):
    p = tp / predicted if predicted > 0 else 0.0
    r = tp / gold if gold > 0 else 0.0
    f = 2.0 * p * r / (p + r) if p + r > 0 else 0.0
    return p, r, f


def summarize(fs):
    best, best_k = -1.0, 0
    for k, f in zip(KS, fs):
        if f > best:
            best, best_k = f, k
    total = 0.0
    for f in fs:
        total += f
    mean = total / len(fs)
    sq = 0.0
    for f in fs:
        sq += (f - mean) * (f - mean)
    return best, best_k, mean, math.sqrt(sq / len(fs))


def load(corpus_dir, gold_path, stop_path):
    with open(stop_path) as fh:
        stopwords = {l.rstrip("\r\n") for l in fh if l.strip() and not l.startswith("#")}
    docs = []
    for name in sorted(os.listdir(corpus_dir)):
        if not name.endswith(".txt"):
            continue
        doc_id = name[:-4]
        with open(os.path.join(corpus_dir, name)) as fh:
            text = fh.read()
        with open(os.path.join(corpus_dir, doc_id + ".phrases")) as fh:
            phrases = phrase_list(fh.read().splitlines())
        docs.append((doc_id, text, phrases))
    gold = {}
    with open(gold_path) as fh:
        for line in fh:
            if not line.strip():
                continue
            obj = json.loads(line)
            terms = set()
            for values in obj["sets"].values():
                for t in values:
                    norm = " ".join(w for w in (normalize(p) for p in t.split()) if w)
                    if norm:
                        terms.add(norm)
            gold[obj["doc_id"]] = terms
    return stopwords, docs, gold


def prepare(unit, docs, gold, stopwords):
    """Per document: (base network, term counts) plus its gold set."""
    prepared, skipped = [], []
    counts_all = []
    for doc_id, text, phrases in docs:
        tokens, lengths = tokenize(text)
        if unit == "word":
            net = word_network(content_words(tokens, stopwords))
        else:
            net = phrase_network(tokens, median_window(lengths), phrases, stopwords)
        counts_all.append(dict(net.freq))
        g = gold[doc_id]
        if unit == "word":
            g = {t for t in g if " " not in t}
        if not g:
            skipped.append(doc_id)
            continue
        prepared.append((net, dict(net.freq), g))
    df = Counter()
    for counts in counts_all:
        df.update(counts.keys())
    return prepared, len(counts_all), df


def rankers():
    out = []
    for name, directed, _ in NETWORKS:
        for measure in MEASURES:
            for mode in (["in", "out", "all"] if directed else ["all"]):
                out.append(("%s:%s_%s" % (name, mode, measure), (name, measure, mode)))
    out.append(("tf", None))
    out.append(("tfidf", None))
    return out


def main():
    corpus_dir, gold_path, stop_path, out_dir = sys.argv[1:5]
    stopwords, docs, gold = load(corpus_dir, gold_path, stop_path)
    shapes = {name: (d, s) for name, d, s in NETWORKS}
    report_rows, summary_rows = [], []
    for unit in ("word", "phrase"):
        prepared, n_docs, df = prepare(unit, docs, gold, stopwords)
        for ranker_id, spec in rankers():
            rankings = []
            for net, counts, _ in prepared:
                if ranker_id == "tf":
                    scores = {t: float(c) for t, c in counts.items()}
                elif ranker_id == "tfidf":
                    scores = {t: c * math.log(n_docs / df[t]) for t, c in counts.items()}
                else:
                    name, measure, mode = spec
                    scores = centrality(net.shaped(*shapes[name]), measure, mode)
                rankings.append(ranked(scores, counts))
            config = "%s:%s" % (unit, ranker_id)
            micro_f, macro_f = [], []
            for k in KS:
                tp = predicted = gold_total = 0
                macro = [0.0, 0.0, 0.0]
                for ranking, (_, _, g) in zip(rankings, prepared):
                    top = set(ranking[:-(-k * len(ranking) // 100)])
                    hits = len(top & g)
                    tp += hits
                    predicted += len(top)
                    gold_total += len(g)
                    for i, x in enumerate(prf(hits, len(top), len(g))):
                        macro[i] += x
                if prepared:
                    macro = [x / len(prepared) for x in macro]
                micro = prf(float(tp), float(predicted), float(gold_total))
                micro_f.append(micro[2])
                macro_f.append(macro[2])
                report_rows.append([config, str(k)] + ["%.6f" % x for x in micro + tuple(macro)])
            mb, mk, mm, ms = summarize(micro_f)
            ab, ak, am, as_ = summarize(macro_f)
            summary_rows.append([config, str(len(prepared)), "%.6f" % mb, str(mk), "%.6f" % mm,
                                 "%.6f" % ms, "%.6f" % ab, str(ak), "%.6f" % am, "%.6f" % as_])

    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "report.csv"), "w", newline="\n") as fh:
        fh.write("config,k,precision,recall,f1,macro_precision,macro_recall,macro_f1\n")
        for row in report_rows:
            fh.write(",".join(row) + "\n")
    with open(os.path.join(out_dir, "summary.csv"), "w", newline="\n") as fh:
        fh.write("config,documents,best_f,best_k,mean_f,std_f,macro_best_f,macro_best_k,"
                 "macro_mean_f,macro_std_f\n")
        for row in summary_rows:
            fh.write(",".join(row) + "\n")
    with open(os.path.join(out_dir, "configs.txt"), "w", newline="\n") as fh:
        fh.write(",".join(r for r, spec in rankers() if spec is not None) + "\n")


if __name__ == "__main__":
    main()
