#!/usr/bin/env python3
"""Regenerates the bundled toy dataset in data/toy/ (deterministic)."""

import pathlib
import random

OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "toy"

# (lemma_a, pos, lemma_b, relation, head, path, freq_a, freq_b, flags_a, flags_b)
LEXICON = [
    ("man", "NOUN", "woman", "ANT", "", "", 120, 110, "", ""),
    ("day", "NOUN", "night", "ANT", "", "", 90, 80, "", ""),
    ("war", "NOUN", "peace", "ANT", "", "", 40, 35, "", ""),
    ("friend", "NOUN", "enemy", "ANT", "", "", 30, 20, "", ""),
    ("question", "NOUN", "answer", "ANT", "", "", 25, 30, "", ""),
    ("strength", "NOUN", "weakness", "ANT", "", "", 12, 9, "", ""),
    ("dog", "NOUN", "animal", "HYP", "b", "1", 60, 80, "", ""),
    ("rose", "NOUN", "flower", "HYP", "b", "1", 14, 30, "", ""),
    ("car", "NOUN", "vehicle", "HYP", "b", "2", 50, 20, "", ""),
    ("oak", "NOUN", "tree", "HYP", "b", "1", 8, 70, "", ""),
    ("poodle", "NOUN", "animal", "HYP", "b", "3", 4, 80, "", ""),
    ("car", "NOUN", "wheel", "HOL", "a", "", 50, 25, "", ""),
    ("tree", "NOUN", "branch", "HOL", "a", "", 70, 18, "", ""),
    ("house", "NOUN", "roof", "HOL", "a", "", 85, 15, "", ""),
    ("hand", "NOUN", "finger", "HOL", "a", "", 75, 22, "", ""),
    ("car", "NOUN", "automobile", "SYN", "", "", 50, 6, "", ""),
    ("job", "NOUN", "occupation", "SYN", "", "", 45, 7, "", ""),
    ("kid", "NOUN", "child", "SYN", "", "", 20, 95, "", ""),
    ("usa", "NOUN", "america", "SYN", "", "", 20, 25, "ABBREV", ""),
    ("open", "VERB", "close", "ANT", "", "", 60, 40, "", ""),
    ("win", "VERB", "lose", "ANT", "", "", 35, 30, "", ""),
    ("buy", "VERB", "sell", "ANT", "", "", 40, 38, "", ""),
    ("take", "VERB", "give", "ANT", "", "", 300, 280, "", ""),
    ("walk", "VERB", "move", "HYP", "b", "1", 45, 70, "", ""),
    ("whisper", "VERB", "speak", "HYP", "b", "1", 8, 50, "", ""),
    ("begin", "VERB", "start", "SYN", "", "", 70, 65, "", ""),
    ("shout", "VERB", "yell", "SYN", "", "", 12, 6, "", ""),
    ("be", "VERB", "exist", "SYN", "", "", 900, 20, "", ""),
    ("close", "VERB", "shut", "SYN", "", "", 40, 20, "", ""),
    ("shut", "VERB", "close", "HYP", "b", "1", 20, 40, "", ""),
    ("kick_the_bucket", "VERB", "die", "SYN", "", "", 3, 30, "MWE", ""),
    ("absquatulate", "VERB", "leave", "SYN", "", "", 0, 55, "", ""),
    ("hot", "ADJ", "cold", "ANT", "", "", 40, 35, "", ""),
    ("strong", "ADJ", "weak", "ANT", "", "", 38, 22, "", ""),
    ("good", "ADJ", "bad", "ANT", "", "", 200, 120, "", ""),
    ("big", "ADJ", "small", "ANT", "", "", 80, 85, "", ""),
    ("happy", "ADJ", "sad", "ANT", "", "", 30, 20, "", ""),
    ("quick", "ADJ", "slow", "ANT", "", "", 25, 28, "", ""),
    ("big", "ADJ", "large", "SYN", "", "", 80, 70, "", ""),
    ("quick", "ADJ", "fast", "SYN", "", "", 25, 30, "", ""),
    ("happy", "ADJ", "glad", "SYN", "", "", 30, 10, "", ""),
    ("strongly", "ADV", "weakly", "ANT", "", "", 15, 4, "", ""),
    ("quickly", "ADV", "slowly", "ANT", "", "", 20, 18, "", ""),
    ("happily", "ADV", "sadly", "ANT", "", "", 9, 8, "", ""),
    ("quickly", "ADV", "rapidly", "SYN", "", "", 20, 10, "", ""),
]

DERIVATIONS = [
    ("strong", "ADJ", "strongly", "ADV"),
    ("weak", "ADJ", "weakly", "ADV"),
    ("quick", "ADJ", "quickly", "ADV"),
    ("slow", "ADJ", "slowly", "ADV"),
    ("happy", "ADJ", "happily", "ADV"),
    ("sad", "ADJ", "sadly", "ADV"),
    ("strong", "ADJ", "strength", "NOUN"),
    ("weak", "ADJ", "weakness", "NOUN"),
]

FILLERS = {
    "NOUN": ["street", "city", "people", "time", "year", "morning", "table", "book", "letter", "river",
             "road", "water", "music", "school", "teacher", "window", "garden", "story", "village", "door"],
    "VERB": ["see", "know", "think", "run", "write", "read", "eat", "play", "sleep", "find", "want", "watch"],
    "ADJ": ["old", "new", "young", "red", "green", "quiet", "warm", "dark", "bright", "tall"],
    "ADV": ["often", "always", "never", "here", "really", "almost", "soon", "together"],
}

TAGS = {"NOUN": "NN1", "VERB": "VV0", "ADJ": "JJ", "ADV": "RR"}
FUNCTION = [(w, w, t) for w, t in [("the", "AT"), ("a", "AT1"), ("of", "IO"), ("and", "CC"), ("in", "II"),
                                    ("to", "TO"), ("she", "PPHS1"), ("they", "PPHS2"), ("it", "PPH1"),
                                    ("with", "IW")]]


def token(lemma, pos, rng):
    tag = TAGS[pos]
    surface = lemma
    if pos == "NOUN" and rng.random() < 0.3:
        tag, surface = "NN2", lemma + "s"
    elif pos == "VERB" and rng.random() < 0.3:
        tag, surface = "VVD", lemma + "ed"
    return (surface, lemma, tag)


def filler(rng):
    pos = rng.choice(list(FILLERS))
    return token(rng.choice(FILLERS[pos]), pos, rng)


def sentence(rng, related):
    length = rng.randint(5, 12) if rng.random() > 0.1 else rng.randint(2, 4)
    toks = [filler(rng) for _ in range(length)]
    roll = rng.random()
    entry = None
    if roll < 0.45:
        entry = rng.choice([e for e in related if e[3] == "ANT"])
    elif roll < 0.75:
        entry = rng.choice([e for e in related if e[3] != "ANT"])
    if entry:
        a, pos, b = entry[0], entry[1], entry[2]
        first, second = (a, b) if (entry[3] != "ANT" or rng.random() < 0.8) else (b, a)
        i = rng.randint(0, len(toks))
        toks.insert(i, token(first, pos, rng))
        if entry[3] == "ANT":
            j = i + 1 + rng.randint(0, 2)
            toks.insert(min(j, len(toks)), token(second, pos, rng))
            if rng.random() < 0.5:
                toks.insert(i + 1, ("and", "and", "CC"))
        else:
            toks.insert(rng.randint(0, len(toks)), token(second, pos, rng))
    out = []
    for t in toks:
        if rng.random() < 0.3:
            out.append(rng.choice(FUNCTION))
        out.append(t)
        if rng.random() < 0.08:
            out.append((",", ",", ","))
    out.append((".", ".", "." if rng.random() < 0.5 else "y"))
    s, l, t = out[0]
    out[0] = (s[:1].upper() + s[1:], l, t)
    return out


def main():
    rng = random.Random(20240607)
    OUT.mkdir(parents=True, exist_ok=True)
    usable = [e for e in LEXICON if not e[8] and not e[9] and e[6] > 1 and e[7] > 1 and e[0] not in ("be", "take")]
    with open(OUT / "corpus.vrt", "w") as f:
        f.write("# toy corpus: surface, lemma, CLAWS tag\n")
        for n in range(220):
            if n % 50 == 0:
                f.write(f"# part {n // 50 + 1}\n")
            for s, l, t in sentence(rng, usable):
                f.write(f"{s}\t{l}\t{t}\n")
            f.write("\n")
    with open(OUT / "lexicon.tsv", "w") as f:
        f.write("lemma_a\tpos\tlemma_b\trelation\tdirected_head\tpath_length\twn_freq_a\twn_freq_b\tflags_a\tflags_b\n")
        for e in LEXICON:
            f.write("\t".join(str(x) for x in e) + "\n")
    with open(OUT / "derivations.tsv", "w") as f:
        f.write("lemma\tpos\tderived_lemma\tderived_pos\n")
        for d in DERIVATIONS:
            f.write("\t".join(d) + "\n")
    with open(OUT / "lemmas.tsv", "w") as f:
        f.write("lemma\tpos\twn_freq\tflags\n")
        for pos, words in FILLERS.items():
            for w in words:
                f.write(f"{w}\t{pos}\t5\t\n")


if __name__ == "__main__":
    main()
