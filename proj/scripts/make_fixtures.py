#!/usr/bin/env python3
"""Regenerates the lexical fixtures under data/.

Produces a small WordNet-3.0-format database (index/data files for noun,
verb, adj), a word-vector file covering the database vocabulary plus common
filler words, and the cue/connective/stopword resource lists.
"""

import os
import random

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, "..", "data")

HEADER = (
    "  1 This file is part of the bundled miniature lexical database.\n"
    "  2 It follows the WordNet 3.0 database file format.\n"
)

# family head -> hyponym lemmas (nouns)
NOUN_FAMILIES = {
    "cake": ["pancake", "cheesecake", "gingerbread", "doughnut", "honey_cake",
             "brownie", "fruitcake", "sponge_cake"],
    "beverage": ["coffee", "tea", "juice", "milk", "cocoa", "lemonade"],
    "vehicle": ["car", "truck", "bicycle", "bus", "train", "motorcycle"],
    "animal": ["dog", "cat", "horse", "rabbit", "sheep", "goat"],
    "building": ["house", "school", "hospital", "library", "church", "hotel"],
    "clothing": ["dress", "shirt", "coat", "hat", "sweater", "scarf"],
    "fruit": ["apple", "banana", "orange", "cherry", "peach", "grape"],
    "instrument": ["guitar", "piano", "violin", "drum", "flute", "trumpet"],
    "furniture": ["table", "chair", "bed", "desk", "sofa", "shelf"],
    "meal": ["breakfast", "lunch", "dinner", "supper", "brunch"],
    "weekday": ["monday", "tuesday", "wednesday", "thursday", "friday"],
    "flower": ["rose", "tulip", "daisy", "lily", "orchid"],
    "tool": ["hammer", "saw", "drill", "wrench", "screwdriver"],
    "book": ["novel", "dictionary", "atlas", "cookbook", "textbook"],
    "game": ["chess", "tennis", "football", "golf", "baseball"],
    "race": ["run", "sprint", "marathon", "dash"],
}

VERB_FAMILIES = {
    "move": ["walk", "run", "jump", "crawl", "slide", "hop"],
    "communicate": ["talk", "speak", "whisper", "shout", "chat"],
    "consume": ["eat", "drink", "swallow", "taste", "devour"],
    "create": ["build", "cook", "bake", "paint", "draw"],
    "perceive": ["see", "hear", "watch", "listen", "observe"],
    "desire": ["want", "need", "prefer", "enjoy", "crave"],
}

# each cluster is a group of mutually similar adjectives
ADJ_CLUSTERS = [
    ["big", "large", "huge", "enormous"],
    ["small", "little", "tiny", "compact"],
    ["happy", "glad", "cheerful", "joyful"],
    ["fast", "quick", "rapid", "speedy"],
    ["cold", "chilly", "frosty", "icy"],
    ["new", "fresh", "recent", "modern"],
    ["pretty", "beautiful", "lovely", "gorgeous"],
]

FILLERS = """i would like to for your the a an we you they he she it can could
will my our their this that is are was were on in at with thank help meet buy
one do later please today tomorrow very really some every always often never me
us him her them there here about think know good nice want from of by may might
should must have has had been being what where why how who come came go went get
got make made take took give gave find found tell told ask asked feel felt keep
kept let put say said work play live visit start stop open close read write""".split()

STOPWORDS = """a about above after again against all am an and any are aren't as
at be because been before being below between both but by can't cannot could
couldn't did didn't do does doesn't doing don't down during each few for from
further had hadn't has hasn't have haven't having he he'd he'll he's her here
here's hers herself him himself his how how's i i'd i'll i'm i've if in into is
isn't it it's its itself let's me more most mustn't my myself no nor not of off
on once only or other ought our ours ourselves out over own same shan't she
she'd she'll she's should shouldn't so some such than that that's the their
theirs them themselves then there there's these they they'd they'll they're
they've this those through to too under until up very was wasn't we we'd we'll
we're we've were weren't what what's when when's where where's which while who
who's whom why why's with won't would wouldn't you you'd you'll you're you've
your yours yourself yourselves shall upon also yet just still even ever own
many much such rather quite per via among amongst beside besides within without
along across behind beyond near toward towards unless whether either neither
anybody anyone anything everybody everyone everything somebody someone something
nobody none nothing whose whatever whenever wherever whichever whoever""".split()

CUES = ["no", "sorry", "wait", "oops", "I mean", "I meant to say", "well",
        "actually", "okay", "you know", "rather"]

CONNECTIVES = {
    "additive": ["and", "also", "moreover", "furthermore", "plus", "as well"],
    "causal": ["because", "if", "since", "so", "therefore", "thus"],
    "adversative": ["but", "however", "although", "though", "yet", "whereas"],
    "temporal": ["after", "before", "then", "when", "while", "until", "once"],
}


def build_taxonomy(families, pos_char, lexfile, top):
    """Assign offsets and emit data/index lines for a two-level taxonomy."""
    offsets = {}
    off = 1000
    synsets = [top] + list(families) + [w for ws in families.values() for w in ws]
    for lemma in synsets:
        if lemma not in offsets:
            offsets[lemma] = off
            off += 150 + len(lemma)

    data_lines = []
    index = {}

    def ptr(sym, lemma):
        return f"{sym} {offsets[lemma]:08d} {pos_char} 0000"

    # top synset: hyponyms are the family heads
    ptrs = [ptr("~", head) for head in families]
    data_lines.append(
        f"{offsets[top]:08d} {lexfile:02d} {pos_char} 01 {top} 0 "
        f"{len(ptrs):03d} {' '.join(ptrs)} | top-level category")
    index.setdefault(top, []).append(offsets[top])

    for head, members in families.items():
        ptrs = [ptr("@", top)] + [ptr("~", m) for m in members]
        data_lines.append(
            f"{offsets[head]:08d} {lexfile:02d} {pos_char} 01 {head} 0 "
            f"{len(ptrs):03d} {' '.join(ptrs)} | category of {head}")
        index.setdefault(head, []).append(offsets[head])
        for m in members:
            p = ptr("@", head)
            data_lines.append(
                f"{offsets[m]:08d} {lexfile:02d} {pos_char} 01 {m} 0 "
                f"001 {p} | a kind of {head}")
            index.setdefault(m, []).append(offsets[m])
    return data_lines, index


def build_adj(clusters, lexfile=0):
    offsets = {}
    off = 1000
    for cluster in clusters:
        for lemma in cluster:
            offsets[lemma] = off
            off += 150 + len(lemma)
    data_lines = []
    index = {}
    for cluster in clusters:
        for lemma in cluster:
            ptrs = [f"& {offsets[m]:08d} a 0000" for m in cluster if m != lemma]
            data_lines.append(
                f"{offsets[lemma]:08d} {lexfile:02d} a 01 {lemma} 0 "
                f"{len(ptrs):03d} {' '.join(ptrs)} | similar in degree")
            index.setdefault(lemma, []).append(offsets[lemma])
    return data_lines, index


def write_pos(name, pos_char, data_lines, index, ptr_symbol):
    with open(os.path.join(DATA, "wordnet-mini", f"data.{name}"), "w") as f:
        f.write(HEADER)
        for line in sorted(data_lines, key=lambda l: int(l.split()[0])):
            f.write(line + "\n")
    with open(os.path.join(DATA, "wordnet-mini", f"index.{name}"), "w") as f:
        f.write(HEADER)
        for lemma in sorted(index):
            offs = index[lemma]
            f.write(f"{lemma} {pos_char} {len(offs)} 1 {ptr_symbol} "
                    f"{len(offs)} 0 {' '.join(f'{o:08d}' for o in offs)}\n")


def write_vectors(dim=16):
    vocab = set(FILLERS)
    for head, members in NOUN_FAMILIES.items():
        vocab.update(head.split("_"))
        for m in members:
            vocab.update(m.split("_"))
            vocab.add(m.replace("_", "") + "s" if "_" not in m else m)
    for head, members in VERB_FAMILIES.items():
        vocab.add(head)
        vocab.update(members)
    for cluster in ADJ_CLUSTERS:
        vocab.update(cluster)
    # inflected forms used by the test corpora
    vocab.update(["pancakes", "doughnuts", "apples", "dogs", "cats", "books",
                  "tables", "houses", "dresses", "eats", "runs", "walks",
                  "wants", "needs", "cooked", "baked", "painted", "watched"])

    rng = random.Random(271828)
    vecs = {}
    for w in sorted(vocab):
        vecs[w] = [rng.uniform(-1.0, 1.0) for _ in range(dim)]
    # keep "cheesecake" the nearest cake-family neighbour of "pancake(s)"
    base = vecs["pancake"]
    vecs["pancakes"] = list(base)
    vecs["cheesecake"] = [b + rng.uniform(-0.05, 0.05) for b in base]

    with open(os.path.join(DATA, "vectors-mini.txt"), "w") as f:
        f.write(f"{len(vecs)} {dim}\n")
        for w in sorted(vecs):
            f.write(w + " " + " ".join(f"{x:.6f}" for x in vecs[w]) + "\n")


def main():
    os.makedirs(os.path.join(DATA, "wordnet-mini"), exist_ok=True)

    noun_data, noun_index = build_taxonomy(NOUN_FAMILIES, "n", 3, "entity")
    write_pos("noun", "n", noun_data, noun_index, "@")
    verb_data, verb_index = build_taxonomy(VERB_FAMILIES, "v", 30, "act")
    write_pos("verb", "v", verb_data, verb_index, "@")
    adj_data, adj_index = build_adj(ADJ_CLUSTERS)
    write_pos("adj", "a", adj_data, adj_index, "&")

    write_vectors()

    with open(os.path.join(DATA, "cues.txt"), "w") as f:
        f.write("# repair cues used to fill interregnums (no filled pauses)\n")
        for c in CUES:
            f.write(c + "\n")
    with open(os.path.join(DATA, "connectives.txt"), "w") as f:
        f.write("# words that would make a restart junction read as fluent\n")
        for cls, words in CONNECTIVES.items():
            for w in words:
                f.write(f"{cls}: {w}\n")
    with open(os.path.join(DATA, "stopwords.txt"), "w") as f:
        f.write("# frequent function words excluded from repair-candidate selection\n")
        for w in sorted(set(STOPWORDS)):
            f.write(w + "\n")
    print("fixtures written to", os.path.normpath(DATA))


if __name__ == "__main__":
    main()
