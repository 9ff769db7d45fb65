#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
# Copyright 2026 Sentiflow Contributors
"""Builds the replay corpus and its expected series for "travel ban".

Every post is drawn from a template whose label is known up front, so the
expected windows follow from the intended labels, a regex phrase matcher
and floor division. Nothing here calls the C++ code.
"""

import json
import pathlib
import random
import re

ROOT = pathlib.Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "data" / "fixtures"

KEYWORD = "travel ban"
T0 = 1488362400000  # 2017-03-01T10:00:00Z
WINDOW_MS = 15 * 60 * 1000
NUM_WINDOWS = 8
T1 = T0 + NUM_WINDOWS * WINDOW_MS
QUIET_WINDOW = 5  # no matching posts land here

POSITIVE = ["I love {t}", "{t} is amazing", "{t} was great", "best {t} ever",
            "so happy with {t}", "{t} is perfect"]
NEGATIVE = ["I hate {t}", "{t} is terrible", "{t} was awful", "worst {t} ever",
            "so disappointed with {t}", "{t} is a disaster"]
NEUTRAL = ["reading about {t}", "news on {t}", "{t} starts tomorrow",
           "live coverage of {t}", "details on {t} here", "just heard about {t}"]
MATCHING = ["travel ban", "the travel ban", "Travel Ban", "TRAVEL BAN",
            "the travel  ban", "travel-ban"]
NON_MATCHING = ["the travel plans", "my bandana", "#travelban", "the ban list",
                "travelban", "travel bans", "the traveling band"]

WORD = "a-z0-9_\u0080-\U0010FFFF"
PHRASE_RE = re.compile(rf"(?<![{WORD}])travel[^{WORD}]+ban(?![{WORD}])")


def matches(text):
    return PHRASE_RE.search(text.lower()) is not None


def build():
    rng = random.Random(20170301)
    posts = []
    serial = 0

    def add(text, label, lang, created_at):
        nonlocal serial
        serial += 1
        posts.append({"source_id": f"rp-{serial:05d}", "text": text, "lang": lang,
                      "created_at": created_at, "author": f"user{rng.randrange(500)}",
                      "_label": label})

    def random_post(topics, lang, created_at):
        label = rng.choice([1, -1, 0])
        pool = {1: POSITIVE, -1: NEGATIVE, 0: NEUTRAL}[label]
        add(rng.choice(pool).format(t=rng.choice(topics)), label, lang, created_at)

    lo, hi = T0 - 20 * 60 * 1000, T1 + 20 * 60 * 1000
    for _ in range(420):
        t = rng.randrange(lo, hi)
        in_quiet = T0 + QUIET_WINDOW * WINDOW_MS <= t < T0 + (QUIET_WINDOW + 1) * WINDOW_MS
        if in_quiet or rng.random() < 0.3:
            random_post(NON_MATCHING, "en", t)
        elif rng.random() < 0.1:
            random_post(MATCHING, "es", t)
        else:
            random_post(MATCHING, "en", t)
    # Boundaries: the interval start is in, the interval end is out.
    for t in (T0, T0 + WINDOW_MS - 1, T0 + WINDOW_MS, T1 - 1, T1):
        random_post(MATCHING, "en", t)

    rng.shuffle(posts)
    lines = []
    for p in posts:
        lines.append(p)
        if rng.random() < 0.2:
            lines.append(dict(p))  # redelivery with the same source id
    return posts, lines


def golden(posts):
    windows = {}
    for p in posts:
        if p["lang"] != "en" or not matches(p["text"]):
            continue
        if not T0 <= p["created_at"] < T1:
            continue
        w = T0 + (p["created_at"] - T0) // WINDOW_MS * WINDOW_MS
        acc = windows.setdefault(w, [0, 0, 0, 0])
        acc[0] += p["_label"]
        acc[1] += 1
        acc[2] += p["_label"] == 1
        acc[3] += p["_label"] == -1
    out = []
    for w in sorted(windows):
        s, m, pos, neg = windows[w]
        out.append({"window_start": w, "polarity_sum": s, "matches": m,
                    "positives": pos, "negatives": neg, "ap": (s / m + 1) / 2})
    return out


def main():
    posts, lines = build()
    FIXTURES.mkdir(parents=True, exist_ok=True)
    with open(FIXTURES / "replay_corpus.jsonl", "w", encoding="utf-8") as f:
        for p in lines:
            row = {k: v for k, v in p.items() if not k.startswith("_")}
            f.write(json.dumps(row, sort_keys=True) + "\n")
    expected = {
        "query": {"keyword": KEYWORD, "t_start": T0, "t_end": T1, "lang": "en",
                  "window_ms": WINDOW_MS},
        "unique_posts": len(posts),
        "lines": len(lines),
        "labels": {p["text"]: p["_label"] for p in posts},
        "windows": golden(posts),
    }
    with open(FIXTURES / "replay_golden.json", "w", encoding="utf-8") as f:
        json.dump(expected, f, indent=1, sort_keys=True)
        f.write("\n")


if __name__ == "__main__":
    main()
