#!/usr/bin/env python3
# Regenerates the end-to-end fixture. Every feature is made to weakly follow
# the order of COLORS below; the first eleven are the basic terms.
import random
from pathlib import Path

COLORS = ["white", "black", "red", "green", "yellow", "blue", "brown", "grey", "purple",
          "pink", "orange", "crimson", "beige", "turquoise", "magenta", "maroon", "lavender",
          "teal", "ochre", "indigo"]
BASIC = 11
LANGS = ["lga", "lgb", "lgc", "lgd", "lge", "lgf"]
STEM_GLOSS = ["milk", "coal", "blood", "leaf", "sun", "sky", "soil", "ash", "plum", "rose",
              "fruit"]
FILLER = ["house", "river", "stone", "tree", "dog", "fish", "hand", "eye", "mouth", "water",
          "fire", "night", "day", "road", "bird", "egg", "salt", "rope", "knife", "boat",
          "cloud", "rain", "wind", "star", "moon", "grass", "seed", "bone", "hair", "skin",
          "meat", "axe", "pot", "door", "roof", "field", "hill", "lake", "sand", "wolf"]
SUFFIX = "ka"

rng = random.Random(20190601)
CONS = "bdfghjlmnprstvz"
VOWELS = "aeiou"
used = {lang: set() for lang in LANGS}


def word(lang, length, avoid_suffix=True):
    while True:
        w = "".join(rng.choice(CONS) if i % 2 == 0 else rng.choice(VOWELS) for i in range(length))
        if avoid_suffix and w.endswith(SUFFIX):
            continue
        if w not in used[lang]:
            used[lang].add(w)
            return w


def length_of(i):
    return 4 + i // 3


here = Path(__file__).resolve().parent
lex = []
for lang in LANGS:
    for i, color in enumerate(COLORS):
        n = length_of(i)
        if lang == "lga" and i < BASIC:
            stem = word(lang, n - len(SUFFIX))
            w = stem + SUFFIX
            used[lang].add(w)
            lex.append((lang, w, color))
            lex.append((lang, stem, STEM_GLOSS[i]))
        else:
            lex.append((lang, word(lang, n), color))
    for g in FILLER:
        lex.append((lang, word(lang, rng.choice([4, 5, 6])), g))
(here / "lexicon.tsv").write_text("".join(f"{l}\t{w}\t{g}\n" for l, w, g in lex))

seeds = ["# basic terms carry a star"]
seeds += [c + (" *" if i < BASIC else "") for i, c in enumerate(COLORS)]
(here / "seeds.txt").write_text("\n".join(seeds) + "\n")

(here / "concreteness.tsv").write_text(
    "".join(f"{c}\t{1.5 + 0.15 * i:.2f}\n" for i, c in enumerate(COLORS)))

ngram = penn = ""
for i, c in enumerate(COLORS):
    total = 1_000_000 // (i + 1)
    adj, noun = 900 - 20 * i, 100 + 20 * i
    ngram += f"{c}\t{total}\t{adj}\t{noun}\n"
    penn += f"{c}\t{2000 - 50 * i}\t{90 - 2 * i}\t{10 + 2 * i}\n"
(here / "ngram.tsv").write_text(ngram)
(here / "penntb.tsv").write_text(penn)

ety = ""
for i, c in enumerate(COLORS):
    rows = {"inheritance": 10 - i // 4, "borrowing": i // 4, "cognate": 5 - i // 5,
            "derivation": 4 - i // 5, "suffix-derivation": 2 - i // 10}
    ety += "".join(f"{c}\t{p}\t{n}\t20\n" for p, n in rows.items())
(here / "etymology.tsv").write_text(ety)

# Two elicitation languages: inventories of 4 and 6 terms.
wcs = []
for lang, terms, speakers in [("w1", ["ta", "tb", "tc", "td"], 3),
                              ("w2", ["ua", "ub", "uc", "ud", "ue", "uf"], 4)]:
    for s in range(speakers):
        for chip in range(1, 13):
            term = terms[(chip + s) % len(terms)] if chip % 3 else terms[0]
            wcs.append(f"{lang}\ts{s + 1}\t{chip}\t{term}\n")
(here / "wcs.tsv").write_text("".join(wcs))
