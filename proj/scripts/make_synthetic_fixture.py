#!/usr/bin/env python3
# Copyright 2026 The fgrain Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Builds the synthetic caption-selection fixtures under tests/data.

Every expected value written here is computed by the numpy oracle in this
script, independently of the C++ library:

  synth_{img,txt,units,pool}.fgrn   embedding stores (written byte by byte)
  synth50.cset / synth50.expected.json
      50 sets. Sentence vectors are tied within a set; the gold caption's
      nouns lie near the image; one distractor adds a far noun, the others
      substitute one.
  synth10.cset / synth10.expected.json
      10 sets; in three of them the gold caption names an off-image object,
      so F-CLIPScore picks gold in exactly 7.
  pairs.jsonl / pairs.expected.jsonl   manifest and oracle score records
  scores10.jsonl / scores10.expected.json   score records for filtering
"""

import argparse
import json
import os
import struct

import numpy as np

NOUNS = ["dog", "cat", "horse", "man", "woman", "boy", "girl", "table", "chair",
         "bench", "car", "bus", "truck", "train", "kite", "ball", "frisbee",
         "umbrella", "bag", "hat", "tree", "field", "street", "beach", "road",
         "plate", "pizza", "cake", "laptop", "phone", "book", "clock", "bed", "couch",
         "window", "boat", "bird", "sheep", "cow", "elephant", "giraffe", "zebra",
         "bike", "surfboard", "skateboard", "bowl", "cup", "bottle", "sink", "fence",
         "building", "park", "sign", "lamp", "mirror", "desk", "river", "lake", "hill",
         "blanket"]

TEMPLATES = [
    "A {0} sitting next to a {1} on the {2}{h}.",
    "A {0} and a {1} near a {2}{h}.",
    "The {0} is standing beside a {1} in the {2}{h}.",
    "A {0} with a {1} by the {2}{h}.",
    "Two {0}s resting under a {1} near the {2}{h}.",
]
PLURAL_OK = {"dog", "cat", "horse", "boy", "girl", "table", "chair", "car", "bird",
             "kite", "ball", "book", "cow", "elephant", "giraffe", "zebra", "bike",
             "boat", "bag", "hat", "tree", "lamp", "bottle", "cup", "bowl"}

DIM = 32
W = 2.5


def unit(v):
    return v / np.linalg.norm(v)


def clip(img, t, w=W):
    c = float(np.dot(img, t) / (np.linalg.norm(img) * np.linalg.norm(t)))
    return w * max(c, 0.0)


def fclip(img, sent, units, w=W):
    vals = [clip(img, sent, w)] + [clip(img, u, w) for u in units]
    return sum(vals) / len(vals)


def write_fgrn(path, ids, vecs, normalized=True):
    vecs = np.asarray(vecs, dtype="<f4")
    dim = vecs.shape[1] if len(ids) else 1
    header = b"FGRN" + struct.pack("<HHIQ", 1, 1 if normalized else 0, dim, len(ids))
    index_len = sum(2 + len(i.encode()) + 8 for i in ids)
    payload_start = len(header) + index_len
    index = b""
    for k, i in enumerate(ids):
        b = i.encode()
        index += struct.pack("<H", len(b)) + b + struct.pack("<Q", payload_start + k * dim * 4)
    with open(path, "wb") as f:
        f.write(header + index + vecs.tobytes())


class Builder:
    def __init__(self, seed):
        self.rng = np.random.default_rng(seed)
        self.noun_vec = {n: unit(self.rng.standard_normal(DIM)) for n in NOUNS}
        self.images = {}
        self.texts = {}

    def caption(self, template, nouns, extra=None):
        a, b, c = nouns
        h = " with a %s" % extra if extra else ""
        text = template.format(a, b, c, h=h)
        units = [a, b, c] + ([extra] if extra else [])
        return text, units

    def scene(self, key, gold_nouns):
        v = sum(self.noun_vec[n] for n in gold_nouns)
        while True:
            img = unit(v + 0.35 * self.rng.standard_normal(DIM))
            if min(np.dot(img, self.noun_vec[n]) for n in gold_nouns) > 0.25:
                break
        self.images[key] = img
        # Sentence vector with a moderate cosine to the image.
        noise = self.rng.standard_normal(DIM)
        noise -= np.dot(noise, img) * img
        sent = unit(0.35 * img + 0.94 * unit(noise))
        return img, sent

    def far_nouns(self, img, exclude, count):
        cands = [n for n in NOUNS if n not in exclude and np.dot(self.noun_vec[n], img) < 0.05]
        idx = self.rng.permutation(len(cands))[:count]
        assert len(idx) == count, "not enough far nouns"
        return [cands[i] for i in idx]

    def pick_nouns(self, template):
        while True:
            idx = self.rng.choice(len(NOUNS), 3, replace=False)
            nouns = [NOUNS[i] for i in idx]
            if "{0}s" in template and nouns[0] not in PLURAL_OK:
                continue
            return nouns

    def units_of(self, template, nouns):
        # The plural template mentions the first noun in plural form.
        out = list(nouns)
        if "{0}s" in template:
            out[0] = nouns[0] + "s"
        return out

    def candidate_set(self, tag, i, n_cand, gold_index, hard=False):
        template = TEMPLATES[i % len(TEMPLATES)]
        nouns = self.pick_nouns(template)
        img, sent = self.scene("img%s_%02d" % (tag, i), nouns)
        far = self.far_nouns(img, nouns, 3)
        cands = []
        if hard:
            # Gold mentions a real but off-image object; the distractor drops it.
            gold = self.caption(template, nouns, far[0])
            alts = [self.caption(template, nouns)]
            alts += [self.caption(template, [nouns[0], far[1], nouns[2]])]
            alts += [self.caption(template, [nouns[0], nouns[1], far[2]])]
        else:
            gold = self.caption(template, nouns)
            alts = [self.caption(template, nouns, far[0]),
                    self.caption(template, [nouns[0], far[1], nouns[2]]),
                    self.caption(template, [nouns[0], nouns[1], far[2]])]
        alts = alts[: n_cand - 1]
        order = alts[:gold_index] + [gold] + alts[gold_index:]
        for k, (text, _) in enumerate(order):
            cid = "cap%s_%02d_%d" % (tag, i, k)
            self.texts[cid] = sent
            cands.append({"captionId": cid, "text": text})
        unit_lists = []
        for text, us in order:
            fixed = [u + "s" if ("{0}s" in template and j == 0) else u for j, u in enumerate(us)]
            unit_lists.append(fixed)
        return {"imageId": "img%s_%02d" % (tag, i), "goldIndex": gold_index,
                "candidates": cands}, img, sent, unit_lists

    def unit_vector(self, surface):
        base = surface[:-1] if surface not in self.noun_vec and surface.endswith("s") else surface
        return self.noun_vec[base]


def argmax_lowest(xs):
    best = 0
    for i, x in enumerate(xs):
        if x > xs[best]:
            best = i
    return best


def evaluate(b, sets, meta):
    fc = cc = 0
    margins = []
    for s, (img, sent, unit_lists) in zip(sets, meta):
        f = [fclip(img, sent, [b.unit_vector(u) for u in us]) for us in unit_lists]
        c = [clip(img, sent) for _ in unit_lists]
        srt = sorted(f)
        margins.append(srt[-1] - srt[-2])
        fc += argmax_lowest(f) == s["goldIndex"]
        cc += argmax_lowest(c) == s["goldIndex"]
    assert min(margins) > 1e-4, "fixture has near-ties"
    return fc, cc


def write_corrupt_fixtures(out, rng):
    """Damaged files and the error each must raise, listed in corrupt.json."""
    ids = ["img_000", "img_001", "img_002"]
    vecs = [unit(rng.standard_normal(4)) for _ in ids]
    good = os.path.join(out, "good_3x4.fgrn")
    write_fgrn(good, ids, vecs)
    raw = open(good, "rb").read()
    cases = {}

    def put(name, data, error):
        with open(os.path.join(out, name), "wb") as f:
            f.write(data)
        cases[name] = error

    put("corrupt_magic.fgrn", b"FGRX" + raw[4:], "MalformedHeader")
    put("corrupt_version.fgrn", raw[:4] + struct.pack("<H", 2) + raw[6:], "MalformedHeader")
    put("corrupt_truncated.fgrn", raw[:-6], "DimensionMismatch")
    dup = os.path.join(out, "corrupt_duplicate.fgrn")
    write_fgrn(dup, ["img_001", "img_001", "img_002"], vecs)
    cases["corrupt_duplicate.fgrn"] = "DuplicateId"
    nonunit = os.path.join(out, "corrupt_not_unit.fgrn")
    write_fgrn(nonunit, ids, [2.0 * v for v in vecs], normalized=True)
    cases["corrupt_not_unit.fgrn"] = "InvariantViolation"
    put("corrupt_manifest_duplicate.jsonl",
        b'{"pairId":"p1","imageId":"i1","captionId":"c1","captionText":"a dog"}\n'
        b'{"pairId":"p1","imageId":"i2","captionId":"c2","captionText":"a cat"}\n',
        "DuplicateId")
    put("corrupt_manifest_syntax.jsonl",
        b'{"pairId":"p1","imageId":"i1","captionId":"c1","captionText":"a dog"}\n'
        b'{"pairId":"p2","imageId":\n', "ParseError")
    with open(os.path.join(out, "corrupt.json"), "w") as f:
        json.dump(cases, f, indent=1, sort_keys=True)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "tests", "data"))
    ap.add_argument("--seed", type=int, default=1234)
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    b = Builder(args.seed)

    sets50, meta50 = [], []
    for i in range(50):
        s, img, sent, ul = b.candidate_set("50", i, 4, i % 4)
        sets50.append(s)
        meta50.append((img, sent, ul))
    fc50, cc50 = evaluate(b, sets50, meta50)

    sets10, meta10 = [], []
    for i in range(10):
        s, img, sent, ul = b.candidate_set("10", i, 4, (i * 3) % 4, hard=(i in (2, 5, 8)))
        sets10.append(s)
        meta10.append((img, sent, ul))
    fc10, cc10 = evaluate(b, sets10, meta10)
    assert fc10 == 7, fc10

    unit_ids = sorted(set(NOUNS) | {n + "s" for n in PLURAL_OK})
    write_fgrn(os.path.join(args.out, "synth_units.fgrn"), unit_ids,
               [b.unit_vector(u) for u in unit_ids])
    img_ids = sorted(b.images)
    write_fgrn(os.path.join(args.out, "synth_img.fgrn"), img_ids, [b.images[i] for i in img_ids])
    txt_ids = sorted(b.texts)
    write_fgrn(os.path.join(args.out, "synth_txt.fgrn"), txt_ids, [b.texts[i] for i in txt_ids])
    pool = [unit(b.rng.standard_normal(DIM)) for _ in range(200)]
    write_fgrn(os.path.join(args.out, "synth_pool.fgrn"), ["pool_%03d" % i for i in range(200)], pool)

    def dump_sets(name, sets):
        with open(os.path.join(args.out, name), "w") as f:
            for s in sets:
                f.write(json.dumps(s, separators=(",", ":")) + "\n")

    dump_sets("synth50.cset", sets50)
    dump_sets("synth10.cset", sets10)
    with open(os.path.join(args.out, "synth50.expected.json"), "w") as f:
        json.dump({"sets": 50, "fclipCorrect": fc50, "clipCorrect": cc50,
                   "fclipAccuracyPct": 100.0 * fc50 / 50, "clipAccuracyPct": 100.0 * cc50 / 50},
                  f, indent=1)
    with open(os.path.join(args.out, "synth10.expected.json"), "w") as f:
        json.dump({"sets": 10, "fclipCorrect": fc10, "clipCorrect": cc10,
                   "fclipAccuracyPct": 100.0 * fc10 / 10, "clipAccuracyPct": 100.0 * cc10 / 10},
                  f, indent=1)

    # Pair manifest over the first candidate of 12 sets, with oracle scores.
    with open(os.path.join(args.out, "pairs.jsonl"), "w") as man, \
            open(os.path.join(args.out, "pairs.expected.jsonl"), "w") as exp:
        for i in range(12):
            s, (img, sent, ul) = sets50[i], meta50[i]
            for k in (0, 1):
                cand = s["candidates"][k]
                pid = "pair_%02d_%d" % (i, k)
                man.write(json.dumps({"pairId": pid, "imageId": s["imageId"],
                                      "captionId": cand["captionId"],
                                      "captionText": cand["text"]}) + "\n")
                units = [b.unit_vector(u) for u in ul[k]]
                exp.write(json.dumps({
                    "pairId": pid, "sentenceScore": clip(img, sent),
                    "fScore": fclip(img, sent, units),
                    "fScoreUnit": fclip(img, sent, units, w=1.0),
                    "units": ul[k]}) + "\n")

    # Ten score records; removing 30% drops the three lowest fScores.
    rng = np.random.default_rng(args.seed + 1)
    records = []
    for i in range(10):
        sent = float(rng.uniform(0.2, 0.8))
        us = [float(rng.uniform(0.0, 1.0)) for _ in range(int(rng.integers(0, 4)))]
        f = (sent + sum(us)) / (len(us) + 1)
        records.append({"pairId": "rec_%02d" % i, "sentenceScore": sent, "fScore": f,
                        "N": len(us),
                        "unitScores": [{"unit": "u%d" % j, "score": u} for j, u in enumerate(us)]})
    with open(os.path.join(args.out, "scores10.jsonl"), "w") as f:
        for r in records:
            f.write(json.dumps(r) + "\n")
    by_f = sorted(records, key=lambda r: (r["fScore"], r["pairId"]))
    by_c = sorted(records, key=lambda r: (r["sentenceScore"], r["pairId"]))
    with open(os.path.join(args.out, "scores10.expected.json"), "w") as f:
        json.dump({"rate": 30, "removedFclip": [r["pairId"] for r in by_f[:3]],
                   "removedClip": [r["pairId"] for r in by_c[:3]]}, f, indent=1)

    write_corrupt_fixtures(args.out, b.rng)

    print("synth50: fclip %d/50 clip %d/50; synth10: fclip %d/10 clip %d/10"
          % (fc50, cc50, fc10, cc10))


if __name__ == "__main__":
    main()
