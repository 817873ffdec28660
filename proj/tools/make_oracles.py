#!/usr/bin/env python3
"""Freeze reference outputs used by the test suites.

porter_vocabulary.tsv  word -> stem from NLTK's PorterStemmer in
                       MARTIN_EXTENSIONS mode (the reference C version).
segmentation.tsv       tag -> segmentation found by enumerating every
                       split point against data/lexicons/wordlist.txt.
"""
import itertools
import pathlib

import wordfreq
from english_words import get_english_words_set
from nltk.stem.porter import PorterStemmer

ROOT = pathlib.Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "data" / "fixtures"

SEGMENT_CASES = [
    "killthebill", "KillTheBill", "passit", "hcr", "xqzvbnm", "healthcarereform", "getcovered",
    "repealit", "thanksobama", "stopobamacare", "senatevote", "obama2012", "2012election",
    "hcr4all", "yeswecan", "nowornever", "fixitnow", "p2", "1776", "medicareforall",
]


def porter_vocabulary():
    words = set(w for w in wordfreq.top_n_list("en", 15000) if w.isascii() and w.isalpha())
    web2 = sorted(get_english_words_set(["web2"], lower=True))
    words.update(w for w in web2[::40] if w.isalpha())
    stemmer = PorterStemmer(mode=PorterStemmer.MARTIN_EXTENSIONS)
    rows = [f"{w}\t{stemmer.stem(w, to_lowercase=False)}" for w in sorted(words)]
    (FIXTURES / "porter_vocabulary.tsv").write_text("\n".join(rows) + "\n")
    return len(rows)


def brute_force_segment(tag, wordlist):
    s = tag.lower()
    if not s:
        return []
    best = None
    n = len(s)
    for mask in range(1 << (n - 1)):
        cuts = [i + 1 for i in range(n - 1) if mask >> i & 1]
        bounds = [0] + cuts + [n]
        segs = [s[a:b] for a, b in zip(bounds, bounds[1:])]
        if not all(seg in wordlist or seg.isdigit() for seg in segs):
            continue
        key = (len(segs), [-len(seg) for seg in segs])
        if best is None or key < best[0]:
            best = (key, segs)
    return best[1] if best else [s]


def segmentation():
    wordlist = set((ROOT / "data/lexicons/wordlist.txt").read_text().split())
    rows = []
    for tag in SEGMENT_CASES:
        rows.append(f"{tag}\t{' '.join(brute_force_segment(tag, wordlist))}")
    (FIXTURES / "segmentation.tsv").write_text(
        "# tag\texpected segments (space separated)\n" + "\n".join(rows) + "\n")
    return rows


if __name__ == "__main__":
    FIXTURES.mkdir(parents=True, exist_ok=True)
    print("porter words:", porter_vocabulary())
    for r in segmentation():
        print(r)
