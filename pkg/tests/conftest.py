import json
import os
import random

import numpy as np
import pytest

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def token(index, text, pos="NN", stop=False, lemma=None):
    return {"index": index, "text": text, "lemma": lemma or text.lower(),
            "pos": pos, "stop": stop}


def sentence(*words):
    """Each word: text or (text, pos) or (text, pos, stop) or full dict."""
    out = []
    for index, word in enumerate(words):
        if isinstance(word, dict):
            word = dict(word, index=index)
            out.append(word)
        elif isinstance(word, tuple):
            out.append(token(index, *word))
        else:
            out.append(token(index, word))
    return out


def mention(mid, sent_index, start, end, head, ne=None, wiki=None, senses=(),
            dep=None, struct=None, gold=None):
    if struct is None:
        struct = list(range(start, end + 1))
    if dep is None:
        dep = [[head, i, "dep"] for i in struct if i != head]
    return {"id": mid, "sent": sent_index, "start": start, "end": end,
            "head": head, "ne": ne, "wiki": wiki,
            "senses": [list(s) for s in senses],
            "dep": [list(e) for e in dep], "struct": list(struct), "gold": gold}


def doc(doc_id, sentences, mentions=(), chains=()):
    return {"doc_id": doc_id, "sentences": sentences,
            "mentions": list(mentions), "chains": list(chains)}


def write_corpus(path, docs):
    with open(path, "w", encoding="utf-8") as handle:
        for record in docs:
            handle.write(json.dumps(record))
            handle.write("\n")
    return str(path)


def write_vectors(path, entries, header=False):
    with open(path, "w", encoding="utf-8") as handle:
        if header:
            dim = len(next(iter(entries.values())))
            handle.write("%d %d\n" % (len(entries), dim))
        for tok_text, components in entries.items():
            handle.write(tok_text + " " + " ".join("%g" % c for c in components))
            handle.write("\n")
    return str(path)


@pytest.fixture
def rng():
    return random.Random(20240817)


@pytest.fixture
def np_rng():
    return np.random.default_rng(20240817)


NE_POOL = (None, None, None, "PERSON", "ORG", "GPE")
POS_POOL = ("NN", "NN", "NNS", "NNP", "JJ", "VBD")
REL_POOL = ("compound", "amod", "appos", "nmod", "det", "dep")
SENSE_POOL = ("noun.person", "noun.group", "noun.location",
              "noun.communication", "noun.artifact", "verb.motion")
WIKI_POOL = ("Alpha Page", "Beta Page", "Gamma Page", "Delta Page")


def random_corpus(rng, max_mentions=40, vocab_size=30, n_docs=None):
    """Random schema-valid documents plus a matching vector table.

    Returns (docs, vector entries); a share of the vocabulary is left out of
    the table on purpose so lookups also exercise the out-of-vocabulary path.
    """
    words = ["w%d" % i for i in range(vocab_size)]
    n_docs = n_docs or rng.randint(1, 3)
    quota = rng.randint(2, max_mentions)
    docs = []
    made = 0
    for d in range(n_docs):
        sentences = []
        mentions = []
        share = quota // n_docs if d < n_docs - 1 else quota - made
        while len(mentions) < share:
            length = rng.randint(4, 9)
            sent_tokens = []
            for i in range(length):
                pos = rng.choice(POS_POOL)
                text = rng.choice(words)
                if pos == "NNP":
                    text = text.capitalize()
                sent_tokens.append(token(i, text, pos=pos,
                                         stop=rng.random() < 0.15))
            s = len(sentences)
            sentences.append(sent_tokens)
            cursor = 0
            while cursor < length and len(mentions) < share:
                width = rng.randint(1, min(3, length - cursor))
                if rng.random() < 0.6:
                    start, end = cursor, cursor + width - 1
                    head = rng.randint(start, end)
                    struct = list(range(start, end + 1))
                    dep = [[head, i, rng.choice(REL_POOL)]
                           for i in struct if i != head]
                    senses = []
                    for cat in rng.sample(SENSE_POOL, rng.randint(1, 2)):
                        senses.append([cat, rng.randint(1, 3)])
                    mentions.append(mention(
                        "m_%d_%d" % (d, len(mentions)), s, start, end, head,
                        ne=rng.choice(NE_POOL),
                        wiki=(rng.choice(WIKI_POOL)
                              if rng.random() < 0.25 else None),
                        senses=senses, dep=dep, struct=struct,
                        gold=("G%d" % rng.randint(0, 5)
                              if rng.random() < 0.7 else None)))
                cursor += width + rng.randint(0, 2)
        chains = []
        loose = [m["id"] for m in mentions]
        rng.shuffle(loose)
        while len(loose) >= 2 and rng.random() < 0.5:
            size = rng.randint(2, min(4, len(loose)))
            chains.append({"id": "c_%d_%d" % (d, len(chains)),
                           "mentions": sorted(loose[:size]), "wiki": None})
            loose = loose[size:]
        made += len(mentions)
        docs.append(doc("doc%d" % d, sentences, mentions, chains))
    dim = rng.randint(4, 8)
    entries = {w: [rng.gauss(0, 1) for _ in range(dim)]
               for w in words if rng.random() < 0.8}
    if not entries:
        entries = {words[0]: [rng.gauss(0, 1) for _ in range(dim)]}
    return docs, entries


def random_partition(rng, items):
    """Random partition of the item list into non-empty blocks."""
    items = list(items)
    rng.shuffle(items)
    blocks = []
    while items:
        size = rng.randint(1, max(1, len(items) // 2 + 1))
        blocks.append(items[:size])
        items = items[size:]
    return blocks
