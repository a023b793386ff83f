#!/usr/bin/env python3
"""Independent reference for the WSD fixture.

Re-derives predictions with naive loops (no shared code with the C++
library) and writes the golden prediction snapshot plus per-config noun
accuracies used by the tests.

    python3 wsd_oracle.py <fixture dir> --k 2 --measure lin --lesk extended
"""
import argparse
import json
import math
import pathlib
import sys

CONTENT = {"N": "N", "V": "V", "J": "Adj", "Adj": "Adj", "R": "Adv", "Adv": "Adv"}


def coarse(tag):
    best = None
    for prefix, code in CONTENT.items():
        if tag.startswith(prefix) and (best is None or len(prefix) > len(best[0])):
            best = (prefix, code)
    return best[1] if best else tag


def read_conll(path):
    sentences, cur, doc, idx = [], [], "d0", 0
    for line in pathlib.Path(path).read_text().splitlines():
        if line.startswith("# doc "):
            if cur:
                sentences.append((doc, idx, cur)); idx += 1; cur = []
            doc, idx = line[6:].strip(), 0
            continue
        if line.startswith("#"):
            continue
        if not line.strip():
            if cur:
                sentences.append((doc, idx, cur)); idx += 1; cur = []
            continue
        i, form, lemma, pos, head, rel = line.split("\t")
        cur.append({"i": int(i), "lemma": lemma.lower(), "pos": coarse(pos),
                    "head": int(head), "rel": rel})
    if cur:
        sentences.append((doc, idx, cur))
    return sentences


def key(tok):
    return f"{tok['lemma']}_{tok['pos']}"


def lin_table(sentences):
    feats = {}
    for _, _, toks in sentences:
        for t in toks:
            if t["head"] == 0:
                continue
            g = toks[t["head"] - 1]
            feats.setdefault(key(t), set()).add((t["rel"], "dep", key(g)))
            feats.setdefault(key(g), set()).add((t["rel"], "gov", key(t)))
    vocab = {}
    for w in feats:
        vocab.setdefault(w.rsplit("_", 1)[1], set()).add(w)

    def prob(f, pos):
        carriers = sum(1 for w in vocab.get(pos, ()) if f in feats[w])
        return carriers / len(vocab[pos])

    def info(fs, pos):
        return -sum(math.log(prob(f, pos)) for f in fs)

    def lin(a, b):
        pa, pb = a.rsplit("_", 1)[1], b.rsplit("_", 1)[1]
        if pa != pb:
            return None
        fa, fb = feats.get(a, set()), feats.get(b, set())
        den = info(fa, pa) + info(fb, pb)
        if den == 0:
            return 1.0 if fa and fa == fb else 0.0
        return 2 * info(fa & fb, pa) / den

    return lin


def read_vectors(path):
    lines = pathlib.Path(path).read_text().splitlines()
    out = {}
    for line in lines[1:]:
        parts = line.split()
        out[parts[0]] = [float(x) for x in parts[1:]]
    return out


def cosine(a, b):
    dot = sum(x * y for x, y in zip(a, b))
    return dot / (math.sqrt(sum(x * x for x in a)) * math.sqrt(sum(y * y for y in b)))


def read_inventory(path):
    senses = [json.loads(l) for l in pathlib.Path(path).read_text().splitlines() if l.strip()]
    by_id = {s["id"]: s for s in senses}
    by_word = {}
    for s in senses:
        if s.get("is_concept", True):
            for w in s["lemmas"]:
                by_word.setdefault(w.rsplit("_", 1)[0].lower() + "_" + w.rsplit("_", 1)[1], []).append(s)

    def bag(s):
        out = set()
        for item in s["gloss"].split():
            lemma, _, tag = item.rpartition("_")
            if lemma and coarse(tag) in ("N", "V", "Adj", "Adv"):
                out.add(lemma.lower())
        if not s["gloss"].strip():
            out = {x.lower() for x in s["synonyms"]}
        return out

    def expanded(s):
        out = set(bag(s))
        for r in s["relations"]:
            if r["target"] in by_id:
                out |= bag(by_id[r["target"]])
        return out

    return by_word, bag, expanded


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("fixture")
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--measure", default="lin")
    ap.add_argument("--strategy", default="dist")
    ap.add_argument("--lesk", default="extended")
    ap.add_argument("--accuracy", action="store_true",
                    help="print noun accuracy per k for linear and dist:lin instead")
    args = ap.parse_args()
    d = pathlib.Path(args.fixture)

    corpus = read_conll(d / "corpus.conll")
    lin = lin_table(read_conll(d / "background.conll"))
    vectors = read_vectors(d / "vectors.txt")
    by_word, bag, expanded = read_inventory(d / "inventory.jsonl")
    gold = {}
    for line in (d / "gold.tsv").read_text().splitlines():
        doc, s, t, ids = line.split("\t")[:4]
        gold[(doc, int(s), int(t))] = set(ids.split("|"))

    def sim(measure, a, b):
        if measure == "lin":
            return lin(a, b)
        if a not in vectors or b not in vectors:
            return None
        c = cosine(vectors[a], vectors[b])
        if measure == "w2v":
            return c
        l = lin(a, b)
        return None if l is None else (l + c) / 2

    def neighbors(toks, target, k, strategy, measure):
        cands = [t for t in toks if t["pos"] in ("N", "V", "Adj", "Adv") and t["i"] != target["i"]]
        linear = list(reversed(cands))[:k]
        if strategy == "linear":
            return linear
        scored = [(sim(measure, key(target), key(t)), t) for t in cands]
        scored = [(s, t) for s, t in scored if s is not None]
        if not scored:
            return linear
        order = sorted(range(len(scored)), key=lambda i: (-scored[i][0], i))
        return [scored[i][1] for i in order[:k]]

    def run(k, strategy, measure, lesk):
        rows = []
        score_fn = (lambda a, b: len(expanded(a) & expanded(b))) if lesk == "extended" else \
                   (lambda a, b: len(bag(a) & bag(b)))
        for doc, si, toks in corpus:
            for t in toks:
                if t["pos"] not in ("N", "V", "Adj", "Adv"):
                    continue
                cands = by_word.get(key(t), [])
                if len(cands) < 2:
                    continue
                nbs = neighbors(toks, t, k, strategy, measure)
                totals = []
                for s in cands:
                    total = 0
                    for n in nbs:
                        best = 0
                        for s2 in by_word.get(key(n), []):
                            best = max(best, score_fn(s, s2))
                        total += best
                    totals.append(total)
                top = max(totals)
                tied = [s for s, v in zip(cands, totals) if v == top]
                tied.sort(key=lambda s: (-s.get("connections", len(s["relations"])), s["id"]))
                rows.append((doc, si, t["i"], key(t), tied[0]["id"], top, len(tied) > 1,
                             [key(n) for n in nbs]))
        return rows

    if args.accuracy:
        for strategy in ("linear", "dist"):
            for k in range(1, 8):
                rows = run(k, strategy, "lin", args.lesk)
                nouns = [r for r in rows if r[3].endswith("_N")]
                correct = sum(1 for r in nouns if r[4] in gold.get(r[:3], ()))
                print(f"{strategy}\tk={k}\t{correct}/{len(nouns)}")
        return

    for doc, si, ti, word, chosen, score, tie, nbs in run(args.k, args.strategy, args.measure, args.lesk):
        sys.stdout.write(f"{doc}\t{si}\t{ti}\t{word}\t{chosen}\t{score}\t{int(tie)}\t{','.join(nbs)}\n")


if __name__ == "__main__":
    main()
