"""Chain hygiene and per-mention feature derivation.

Covers wiki-title chain splitting, structure-subtree capping, head modifier
extraction from the dependency subtree, and representative phrase sets.
"""
from dataclasses import dataclass

from .corpus import MAX_SUBTREE_TOKENS, Chain

COMPOUND_RELS = frozenset({"compound"})
APPOS_RELS = frozenset({"appos"})
ADJ_RELS = frozenset({"amod"})
NOUN_RELS = frozenset({"nmod", "nn"})


@dataclass(frozen=True)
class Modifiers:
    compounds: tuple = ()
    appositions: tuple = ()
    adjectival: tuple = ()
    noun_mods: tuple = ()


def split_chains_by_wiki(chains, mentions):
    """Partition each chain into sub-chains grouped by mention wiki title.

    Untitled mentions follow the largest titled group of their original
    chain; a chain with no titles at all stays intact.  The resulting chains
    carry their group's title.
    """
    out = []
    for chain in chains:
        groups = {}
        untitled = []
        for mid in sorted(chain.mention_ids):
            title = mentions[mid].wiki_title
            if title is None:
                untitled.append(mid)
            else:
                groups.setdefault(title, []).append(mid)
        if not groups:
            out.append(replace_chain(chain, chain.mention_ids, chain.wiki_title))
            continue
        ordered = sorted(groups.items(), key=lambda item: (-len(item[1]), item[0]))
        ordered[0][1].extend(untitled)
        if len(ordered) == 1:
            out.append(replace_chain(chain, set(ordered[0][1]), ordered[0][0]))
            continue
        for index, (title, members) in enumerate(ordered):
            out.append(Chain(
                id="%s_w%d" % (chain.id, index),
                mention_ids=set(members),
                origin=chain.origin,
                wiki_title=title,
            ))
    return out


def replace_chain(chain, mention_ids, wiki_title):
    return Chain(id=chain.id, mention_ids=set(mention_ids),
                 origin=chain.origin, wiki_title=wiki_title)


def cap_structure_subtree(constituents, head_index):
    """Token set of the largest constituent containing the head, capped at
    20 tokens; falls back to the head alone."""
    best = None
    for start, end in constituents:
        size = end - start + 1
        if start <= head_index <= end and size <= MAX_SUBTREE_TOKENS:
            if best is None or size > best[1] or (size == best[1] and start < best[0]):
                best = (start, size)
    if best is None:
        return [head_index]
    return list(range(best[0], best[0] + best[1]))


def extract_modifiers(mention):
    """Partition the head's direct dependents by relation label."""
    buckets = {"compounds": [], "appositions": [], "adjectival": [], "noun_mods": []}
    for gov, dep, rel in mention.dep_subtree:
        if gov != mention.head_index:
            continue
        if rel in COMPOUND_RELS:
            buckets["compounds"].append(dep)
        elif rel in APPOS_RELS:
            buckets["appositions"].append(dep)
        elif rel in ADJ_RELS:
            buckets["adjectival"].append(dep)
        elif rel in NOUN_RELS:
            buckets["noun_mods"].append(dep)
    return Modifiers(**{key: tuple(sorted(val)) for key, val in buckets.items()})


def _texts(bundle, mention, indices):
    sent = bundle.sentence(mention.doc_id, mention.sent_index)
    return [sent[i].text for i in indices]


def representative_phrase(chain, bundle):
    """Lowercased head + direct-modifier + apposition texts over the chain.

    Appositions contribute their own direct modifiers too, so an appositive
    like "the prime minister" yields both "prime" and "minister".
    """
    phrase = set()
    for mid in chain.mention_ids:
        mention = bundle.mentions[mid]
        mods = extract_modifiers(mention)
        phrase.add(bundle.head_token(mention).text.lower())
        indices = set(mods.adjectival + mods.noun_mods + mods.compounds
                      + mods.appositions)
        for gov, dep, rel in mention.dep_subtree:
            if gov in mods.appositions and rel in (
                    COMPOUND_RELS | ADJ_RELS | NOUN_RELS):
                indices.add(dep)
        phrase.update(t.lower()
                      for t in _texts(bundle, mention, sorted(indices)))
    return phrase


def merge_modifier_texts(chain, bundle):
    """m(..): compound and apposition modifier texts, lowercased."""
    texts = set()
    for mid in chain.mention_ids:
        mention = bundle.mentions[mid]
        mods = extract_modifiers(mention)
        texts.update(t.lower() for t in
                     _texts(bundle, mention, mods.compounds + mods.appositions))
    return texts
