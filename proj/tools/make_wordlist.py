#!/usr/bin/env python3
"""Regenerate data/lexicons/wordlist.txt from wordfreq's English list.

Keeps the most frequent purely alphabetic words. Single letters other than
"a" and "i" are dropped, as are two-letter words missing from a standard
dictionary, so hashtag segmentation is not flooded with fragments.
"""
import argparse
import pathlib

import wordfreq
from english_words import get_english_words_set

EXTRA = ["obamacare", "healthcare", "hcr", "tcot", "gop", "dems", "senate", "congress"]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--top", type=int, default=20000)
    ap.add_argument("--out", default=pathlib.Path(__file__).parent.parent / "data/lexicons/wordlist.txt")
    args = ap.parse_args()

    dictionary = get_english_words_set(["web2", "gcide"], lower=True)
    words = set()
    for w in wordfreq.top_n_list("en", args.top * 2):
        if len(words) >= args.top:
            break
        if not w.isascii() or not w.isalpha():
            continue
        if len(w) == 1 and w not in ("a", "i"):
            continue
        if len(w) == 2 and w not in dictionary:
            continue
        words.add(w)
    words.update(EXTRA)
    pathlib.Path(args.out).write_text("".join(w + "\n" for w in sorted(words)))


if __name__ == "__main__":
    main()
