#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
# Copyright 2026 Sentiflow Contributors
"""Regenerates the frozen test fixtures under data/fixtures.

The tokenizer and sentence splitter here are independent regex versions of
the rules the C++ code implements; their output is the golden data.
"""

import json
import pathlib
import random
import re

ROOT = pathlib.Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "data" / "fixtures"

SPACE = " \t\n\r\f\v"
WORD = "A-Za-z0-9_\u0080-\U0010FFFF"
TOKEN_RE = re.compile(
    rf"[{WORD}]+(?:(?:['-]|(?<=[0-9])[.,](?=[0-9]))[{WORD}]+)*|([^{SPACE}{WORD}])\1*")
TERMINATOR_RE = re.compile(rf"[.!?]+(?=[{SPACE}]|$)")


def tokenize(s):
    return [m.group(0) for m in TOKEN_RE.finditer(s)]


def split_sentences(text):
    out, start = [], 0
    for m in TERMINATOR_RE.finditer(text):
        piece = text[start:m.end()].strip(SPACE)
        if piece:
            out.append(piece)
        start = m.end()
    rest = text[start:].strip(SPACE)
    if rest:
        out.append(rest)
    if not out and text:
        out.append(text.strip(SPACE))
    return out


TOPICS = ["the coffee here", "this weather", "the game tonight", "my new phone",
          "the new movie", "this album", "the debate", "traffic downtown",
          "the concert", "my flight", "the pizza", "work today", "the update",
          "netflix", "monday", "the train", "the new season", "this hotel",
          "the keynote", "the match"]

POSITIVE = ["I love {t}", "{t} is amazing", "{t} was great", "best {t} ever",
            "so happy with {t}", "really enjoying {t}", "{t} made my day",
            "highly recommend {t}", "{t} is so good", "wow {t} is fantastic",
            "{t} was awesome", "can't wait for {t}, excited", "{t} is perfect",
            "thanks for {t}, brilliant work", "loving {t} right now"]
NEGATIVE = ["I hate {t}", "{t} is terrible", "worst {t} ever", "{t} was awful",
            "so disappointed with {t}", "{t} sucks", "{t} is broken again",
            "ugh {t} is a disaster", "{t} was boring", "never again, {t} is useless",
            "{t} is not good", "I don't like {t}", "{t} makes me so angry",
            "{t} is a mess", "sad about {t}"]
NEUTRAL = ["anyone know when {t} starts", "reading about {t}", "{t} is at 5pm",
           "just heard about {t}", "on my way to {t}", "what time is {t}",
           "the schedule for {t} is out", "thinking about {t}", "news on {t}",
           "{t} starts tomorrow", "checking {t} later", "who is going to {t}",
           "{t} moved to friday", "live coverage of {t}", "details on {t} here"]
EXTRAS_POS = [" :)", " <3", "!", "!!", " yay"]
EXTRAS_NEG = [" :(", "!", ". Not happy.", " ugh"]
EXTRAS_ANY = [" @friend", " http://t.co/abc", " #tbt", " lol", "."]


def labeled_corpus():
    rng = random.Random(20170301)
    counts = {0: 110, 1: 100, -1: 90}
    docs = []
    for label, n in counts.items():
        for _ in range(n):
            pool = {1: POSITIVE, -1: NEGATIVE, 0: NEUTRAL}[label]
            text = rng.choice(pool).format(t=rng.choice(TOPICS))
            text = text[0].upper() + text[1:]
            r = rng.random()
            if label == 1 and r < 0.4:
                text += rng.choice(EXTRAS_POS)
            elif label == -1 and r < 0.4:
                text += rng.choice(EXTRAS_NEG)
            if rng.random() < 0.3:
                text += rng.choice(EXTRAS_ANY)
            if rng.random() < 0.15:
                # Mixed cues make some documents hard.
                other = rng.choice([p for p in (POSITIVE, NEGATIVE, NEUTRAL) if p is not pool])
                text += ". " + rng.choice(other).format(t=rng.choice(TOPICS))
            if rng.random() < 0.08:
                label_out = rng.choice([l for l in (-1, 0, 1) if l != label])
            else:
                label_out = label
            docs.append((label_out, text))
    rng.shuffle(docs)
    return docs


EDGE_CASES = [
    "a b", "TAG_POS!", "Hi. Bye.", "A! B? C.", "no terminator here",
    "don't stop, we'll see", "o'clock rock'n'roll", "well-known re-entry",
    "pi is 3.14, e is 2,718", "3.x and x.3", "wait...what?!", "ok!!! fine???",
    "TAG_MENTION: TAG_URL (TAG_NEG)", "\"quoted\" text", "multi   space\ttab",
    "café naïve 日本", "don’t", "-leading and trailing-",
    "$5 or #tag or @ alone", "e.g. this. And that", "Santiago de Compostela is lovely.",
    "", "   ", "...", "end.", "Mr. Smith went home. He slept!",
    "a.b.c d!e f?g", "x - y -- z", "it's 5 o'clock: go", "100% sure :-)",
]


def main():
    FIXTURES.mkdir(parents=True, exist_ok=True)
    docs = labeled_corpus()
    with open(FIXTURES / "labeled_300.tsv", "w", encoding="utf-8") as f:
        f.write("# label\ttext\n")
        for label, text in docs:
            f.write(f"{label}\t{text}\n")
    inputs = EDGE_CASES + [text for _, text in docs[:50]]
    with open(FIXTURES / "tokenize_golden.jsonl", "w", encoding="utf-8") as f:
        for s in inputs:
            f.write(json.dumps({"text": s, "tokens": tokenize(s)}, ensure_ascii=False) + "\n")
    with open(FIXTURES / "sentences_golden.jsonl", "w", encoding="utf-8") as f:
        for s in inputs:
            f.write(json.dumps({"text": s, "sentences": split_sentences(s)},
                               ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main()
