#!/usr/bin/env python3
# Copyright 2026 The FactGraph Authors
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
"""Generates the shipped synthetic FEVER-format corpus under data/synthetic.

Layout: 30 person pages, 5 "(film)" disambiguation pages, 5 town pages
(40 documents) and 90 claims, 30 per label.  SUPPORTS claims restate one or
two gold sentences, REFUTES claims negate a gold sentence, NEI claims talk
about entities that no page covers.  Every third claim of each label goes to
the 30-claim held-out split.
"""

import argparse
import json
import os
import random

ONSETS = ["b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v", "z",
          "br", "dr", "kr", "tr", "th", "st", "gr", "sh"]
VOWELS = ["a", "e", "i", "o", "u", "ae", "io", "ou"]
CODAS = ["", "n", "r", "l", "s", "th", "x", "m"]

RESERVED = {"the", "and", "was", "born", "founded", "wrote", "film", "town",
            "book", "guild", "not", "never", "has", "written", "about"}


def make_namer(rng):
    used = set()

    def name(syllables):
        while True:
            parts = [rng.choice(ONSETS) + rng.choice(VOWELS) + rng.choice(CODAS)
                     for _ in range(syllables)]
            word = "".join(parts)
            if len(word) >= 4 and word not in used and word not in RESERVED:
                used.add(word)
                return word.capitalize()
    return name


def lines_field(sentences):
    return "\n".join(f"{i}\t{s}" for i, s in enumerate(sentences))


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "data", "synthetic"))
    parser.add_argument("--seed", type=int, default=20201)
    args = parser.parse_args()
    rng = random.Random(args.seed)
    name = make_namer(rng)

    people = []
    for _ in range(30):
        people.append({
            "name": name(2),
            "city": name(2),
            "year": rng.randint(1800, 1960),
            "org": name(2) + " Guild",
            "org_year": rng.randint(1830, 1990),
            "topic": name(3),
            "region": name(2),
        })

    pages = []
    for p in people:
        pages.append((p["name"], [
            f"{p['name']} was born in {p['city']} in {p['year']}.",
            f"{p['name']} founded the {p['org']} in {p['org_year']}.",
            f"{p['name']} wrote a book about {p['topic']}.",
            f"The family later moved to {p['region']}.",
            "It remains a popular story.",
        ]))
    for p in people[:5]:
        pages.append((f"{p['name']} (film)", [
            f"{p['name']} is a {rng.randint(1950, 2015)} drama film.",
            f"The film was directed by {name(2)} {name(2)}.",
            f"It was released in {name(2)} in {rng.randint(1950, 2015)}.",
        ]))
    for p in people[5:10]:
        pages.append((p["city"], [
            f"{p['city']} is a town in {name(2)}.",
            f"{p['city']} was founded in {rng.randint(1500, 1800)}.",
            "The town has a large harbour.",
        ]))
    assert len(pages) == 40

    claims = []
    next_id = 1

    def ev(*refs):
        return [[[900 + next_id, 1000 + next_id + k, page, idx] for k, (page, idx) in enumerate(refs)]]

    for i in range(30):
        p = people[i]
        kind = i % 4
        if kind == 0:
            text, gold = f"{p['name']} was born in {p['city']}.", ev((p["name"], 0))
        elif kind == 1:
            text, gold = f"{p['name']} founded the {p['org']}.", ev((p["name"], 1))
        elif kind == 2:
            text, gold = f"{p['name']} wrote a book about {p['topic']}.", ev((p["name"], 2))
        else:
            text = f"{p['name']} was born in {p['city']} and founded the {p['org']}."
            gold = ev((p["name"], 0), (p["name"], 1))
        claims.append({"id": next_id, "verifiable": "VERIFIABLE", "label": "SUPPORTS",
                       "claim": text, "evidence": gold})
        next_id += 1

    for i in range(30):
        p = people[(i + 11) % 30]
        kind = i % 3
        if kind == 0:
            text, gold = f"{p['name']} was not born in {p['city']}.", ev((p["name"], 0))
        elif kind == 1:
            text, gold = f"{p['name']} never founded the {p['org']}.", ev((p["name"], 1))
        else:
            text, gold = f"{p['name']} has never written a book about {p['topic']}.", ev((p["name"], 2))
        claims.append({"id": next_id, "verifiable": "VERIFIABLE", "label": "REFUTES",
                       "claim": text, "evidence": gold})
        next_id += 1

    for i in range(30):
        who, where = name(2), name(2)
        kind = i % 3
        if kind == 0:
            text = f"{who} was born in {where} in {rng.randint(1800, 1960)}."
        elif kind == 1:
            text = f"{who} founded the {where} Guild."
        else:
            text = f"{who} wrote a book about {where}."
        claims.append({"id": next_id, "verifiable": "NOT VERIFIABLE", "label": "NOT ENOUGH INFO",
                       "claim": text, "evidence": [[[900 + next_id, None, None, None]]]})
        next_id += 1

    train, test = [], []
    for label_block in range(3):
        for k in range(30):
            c = claims[label_block * 30 + k]
            (test if k % 3 == 2 else train).append(c)

    os.makedirs(args.out, exist_ok=True)
    with open(os.path.join(args.out, "wiki-pages.jsonl"), "w") as f:
        for title, sents in pages:
            f.write(json.dumps({"id": title, "text": " ".join(sents), "lines": lines_field(sents)}) + "\n")
    for fname, rows in (("claims.jsonl", claims), ("train.jsonl", train), ("test.jsonl", test)):
        with open(os.path.join(args.out, fname), "w") as f:
            for c in rows:
                f.write(json.dumps(c) + "\n")


if __name__ == "__main__":
    main()
