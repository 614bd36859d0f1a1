"""The five-sieve resolution pipeline.

Sieves run easy-first over an evolving ChainState: NE chains with identity
relations first (shared entity-link titles, then head/compound matches, then
non-NE anaphora onto NE chains), followed by the looser relations (groups of
persons via core-detection clustering, then events and abstract entities via
hierarchical clustering).  Every merge is recorded as a TraceEvent with the
participants' types at merge time, and the chains must partition the mention
set after every sieve.
"""
from dataclasses import dataclass, replace

from . import prep
from .clustering import core_cluster, hac_average_cosine
from .corpus import Chain, Origin, chain_partition_check
from .errors import PartitionError
from .typesys import Base, assign_type, score_types
from .vectors import cosine, phrase_mean, weighted_phrase_vector

ARTICLES = frozenset({"a", "an", "the"})


@dataclass
class TraceEvent:
    sieve_id: int
    winner: str
    absorbed: str
    rule: str
    score: float | None = None
    winner_type: str | None = None
    absorbed_type: str | None = None

    def to_record(self):
        return {
            "sieve": self.sieve_id,
            "winner": self.winner,
            "absorbed": self.absorbed,
            "rule": self.rule,
            "score": self.score,
            "winner_type": self.winner_type,
            "absorbed_type": self.absorbed_type,
        }


class ChainState:
    """Chains, their types, and the merge trace for one topic."""

    def __init__(self, bundle, config):
        self.bundle = bundle
        self.config = config
        self.chains = {}
        self.types = {}
        self.trace = []
        self._vec_cache = {}

    def add_chain(self, chain):
        self.chains[chain.id] = chain
        self.retype(chain.id)

    def retype(self, cid):
        chain = self.chains[cid]
        score = score_types(chain, self.bundle.mentions)
        self.types[cid] = assign_type(
            score, chain, self.bundle.mentions, self.config.category_map)
        self._vec_cache.pop(cid, None)

    def drop_chain(self, cid):
        del self.chains[cid]
        del self.types[cid]
        self._vec_cache.pop(cid, None)

    def merge(self, sieve_id, winner, absorbed, rule, score=None,
              winner_type=None, absorbed_type=None):
        event = TraceEvent(
            sieve_id=sieve_id, winner=winner, absorbed=absorbed, rule=rule,
            score=score,
            winner_type=winner_type or self.types[winner].name,
            absorbed_type=absorbed_type or self.types[absorbed].name,
        )
        target = self.chains[winner]
        target.mention_ids |= self.chains[absorbed].mention_ids
        if target.wiki_title is None:
            target.wiki_title = self.chains[absorbed].wiki_title
        self.drop_chain(absorbed)
        self.retype(winner)
        self.trace.append(event)

    def is_ne_chain(self, cid):
        return any(self.bundle.mentions[m].is_ne for m in self.chains[cid].mention_ids)

    def chain_mentions(self, cid):
        return [self.bundle.mentions[m] for m in sorted(self.chains[cid].mention_ids)]

    def chain_tokens(self, cid):
        tokens = []
        for mention in self.chain_mentions(cid):
            tokens.extend(self.bundle.mention_tokens(mention))
        return tokens

    def chain_vector(self, cid, store):
        if cid not in self._vec_cache:
            self._vec_cache[cid] = phrase_mean(store, self.chain_tokens(cid))
        return self._vec_cache[cid]

    def check_partition(self, sieve_id):
        if not chain_partition_check(self.chains.values(), self.bundle.mentions.values()):
            raise PartitionError(
                "chains stopped partitioning the mentions after sieve %d" % sieve_id)

    def fresh_id(self, prefix):
        index = 0
        while "%s%d" % (prefix, index) in self.chains:
            index += 1
        return "%s%d" % (prefix, index)


def prepare_state(bundle, config):
    """Wiki-based chain splitting plus initial type assignment."""
    state = ChainState(bundle, config)
    for chain in prep.split_chains_by_wiki(bundle.chains, bundle.mentions):
        state.add_chain(Chain(id=chain.id, mention_ids=set(chain.mention_ids),
                              origin=chain.origin, wiki_title=chain.wiki_title))
    return state


def _by_size_then_id(state, cid):
    return (-len(state.chains[cid].mention_ids), cid)


def sieve1_nel(state, store=None):
    """Winner-takes-all merge of chains sharing an entity-link title."""
    by_title = {}
    for cid in sorted(state.chains):
        title = state.chains[cid].wiki_title
        if title is not None:
            by_title.setdefault(title, []).append(cid)
    cm = state.config.matrices[1]
    for title in sorted(by_title):
        group = sorted(by_title[title], key=lambda c: _by_size_then_id(state, c))
        winner = group[0]
        for cid in group[1:]:
            if cm.comparable(state.types[winner], state.types[cid]):
                state.merge(1, winner, cid, "identical_wiki_title")


def _ne_heads(state, cid):
    return {state.bundle.head_token(m).text.lower()
            for m in state.chain_mentions(cid) if m.is_ne}


def _ne_compounds(state, cid):
    texts = set()
    for mention in state.chain_mentions(cid):
        if not mention.is_ne:
            continue
        mods = prep.extract_modifiers(mention)
        sent = state.bundle.sentence(mention.doc_id, mention.sent_index)
        texts.update(sent[i].text.lower() for i in mods.compounds)
    return texts


def sieve2_ne_heads(state, store=None):
    """Merge NE chains on identical NE heads or head/compound cross-overlap,
    smallest chain first, until fixpoint."""
    cm = state.config.matrices[2]
    changed = True
    while changed:
        changed = False
        ne_chains = [cid for cid in state.chains if state.is_ne_chain(cid)]
        for small in sorted(ne_chains, key=lambda c: (len(state.chains[c].mention_ids), c)):
            if small not in state.chains:
                continue
            heads_s = _ne_heads(state, small)
            compounds_s = _ne_compounds(state, small)
            best = None
            for target in ne_chains:
                if target == small or target not in state.chains:
                    continue
                if len(state.chains[target].mention_ids) < len(state.chains[small].mention_ids):
                    continue
                if not cm.comparable(state.types[small], state.types[target]):
                    continue
                heads_t = _ne_heads(state, target)
                if heads_s & heads_t:
                    rule = "identical_ne_head"
                elif (heads_s & _ne_compounds(state, target)) or (compounds_s & heads_t):
                    rule = "ne_head_compound_overlap"
                else:
                    continue
                key = (_by_size_then_id(state, target), rule)
                if best is None or key < best[0]:
                    best = (key, target, rule)
            if best is not None:
                state.merge(2, best[1], small, best[2])
                changed = True
                break


def _chain_token_texts(state, cid):
    return {token.text.lower() for token in state.chain_tokens(cid)}


def _chain_head_texts(state, cid):
    return {state.bundle.head_token(m).text.lower() for m in state.chain_mentions(cid)}


def sieve3_non_ne(state, store):
    """Attach non-NE chains to NE chains by representative-phrase containment,
    token-overlap with shared heads, or phrase-vector cosine."""
    cm = state.config.matrices[3]
    t_nn = state.config.t_nn
    changed = True
    while changed:
        changed = False
        non_ne = sorted(
            (cid for cid in state.chains if not state.is_ne_chain(cid)),
            key=lambda c: (len(state.chains[c].mention_ids), c))
        ne_chains = sorted(cid for cid in state.chains if state.is_ne_chain(cid))
        for c_nn in non_ne:
            r_nn = prep.representative_phrase(state.chains[c_nn], state.bundle)
            m_nn = prep.merge_modifier_texts(state.chains[c_nn], state.bundle)
            tokens_nn = _chain_token_texts(state, c_nn)
            heads_nn = _chain_head_texts(state, c_nn)
            best = None
            for c_ne in ne_chains:
                if not cm.comparable(state.types[c_nn], state.types[c_ne]):
                    continue
                r_ne = prep.representative_phrase(state.chains[c_ne], state.bundle)
                if r_nn < r_ne and m_nn <= (r_nn & r_ne):
                    key = (1, 0.0, c_ne)
                    rule, score = "representative_containment", None
                else:
                    inter = tokens_nn & _chain_token_texts(state, c_ne)
                    if len(inter) >= 2 and (heads_nn & inter) \
                            and (_chain_head_texts(state, c_ne) & inter):
                        key = (2, 0.0, c_ne)
                        rule, score = "token_overlap_heads", None
                    else:
                        sim = cosine(state.chain_vector(c_ne, store),
                                     state.chain_vector(c_nn, store))
                        if sim >= t_nn:
                            key = (3, -sim, c_ne)
                            rule, score = "phrase_cosine", sim
                        else:
                            continue
                if best is None or key < best[0]:
                    best = (key, c_ne, rule, score)
            if best is not None:
                state.merge(3, best[1], c_nn, best[2], score=best[3])
                changed = True
                break


def _ne_like(token):
    return token.pos.startswith("NNP") or (
        token.pos.startswith("JJ") and token.text[:1].isupper())


def _group_modifier_tokens(state, cid):
    """NE-looking compound and adjectival modifier tokens of a group chain."""
    picked = []
    for mention in state.chain_mentions(cid):
        mods = prep.extract_modifiers(mention)
        sent = state.bundle.sentence(mention.doc_id, mention.sent_index)
        for index in mods.compounds + mods.adjectival:
            if _ne_like(sent[index]):
                picked.append(sent[index])
    return picked


def sieve4_groups(state, store):
    """Re-cluster group-of-person mentions around semantic cores, then merge
    country chains with the groups that modify toward them."""
    config = state.config
    cm = config.matrices[4]

    touched_ne = {event.winner for event in state.trace if event.sieve_id in (1, 2)}
    pooled = [cid for cid in sorted(state.chains)
              if state.types[cid].base is Base.GROUP and cid not in touched_ne]
    pool = []  # (mention_id, source chain id)
    for cid in pooled:
        for mid in sorted(state.chains[cid].mention_ids):
            pool.append((mid, cid))

    if len(pool) >= 2:
        vectors = [phrase_mean(store, state.bundle.mention_tokens(state.bundle.mentions[mid]))
                   for mid, _ in pool]
        clusters, unassigned = core_cluster(
            vectors, config.s_core, config.d_min, config.s_assign)
        old_types = {cid: state.types[cid].name for cid in pooled}
        for cid in pooled:
            state.drop_chain(cid)
        for cluster in sorted(clusters, key=lambda c: pool[min(c)][0]):
            members = {pool[i][0] for i in cluster}
            contributors = {}
            for i in cluster:
                contributors[pool[i][1]] = contributors.get(pool[i][1], 0) + 1
            primary = min(contributors, key=lambda c: (-contributors[c], c))
            new_id = state.fresh_id("s4c")
            state.add_chain(Chain(id=new_id, mention_ids=members, origin=Origin.MERGED))
            for cid in sorted(contributors):
                if cid != primary:
                    state.trace.append(TraceEvent(
                        sieve_id=4, winner=new_id, absorbed=cid,
                        rule="group_recluster",
                        winner_type=old_types[primary],
                        absorbed_type=old_types[cid]))
        for i in unassigned:
            state.add_chain(Chain(
                id="s4sg_%s" % pool[i][0], mention_ids={pool[i][0]},
                origin=Origin.SINGLETON))

    # country <-> group merges on NE-modifier similarity
    t_gr = config.t_gr
    group_chains = [cid for cid in sorted(state.chains)
                    if state.types[cid].base is Base.GROUP]
    for c_gr in group_chains:
        if c_gr not in state.chains:
            continue
        modifier_tokens = _group_modifier_tokens(state, c_gr)
        if not modifier_tokens:
            continue
        v_mod = phrase_mean(store, modifier_tokens)
        best = None
        for c_ne in sorted(state.chains):
            kind = state.types[c_ne]
            if c_ne == c_gr or kind.base is not Base.COUNTRY or not kind.is_ne:
                continue
            if not cm.comparable(state.types[c_gr], kind):
                continue
            heads = [state.bundle.head_token(m) for m in state.chain_mentions(c_ne)]
            sim = cosine(phrase_mean(store, heads), v_mod)
            if sim >= t_gr and (best is None or (-sim, c_ne) < best[0]):
                best = ((-sim, c_ne), c_ne, sim)
        if best is not None:
            state.merge(4, best[1], c_gr, "country_group", score=best[2])


def sieve5_abstract(state, store):
    """Cluster abstract/non-NE mentions hierarchically; clusters union with
    the chains they touch, never splitting an existing chain."""
    config = state.config
    cm = config.matrices[5]
    participating = [cid for cid in sorted(state.chains)
                     if cm.comparable(state.types[cid], state.types[cid])]
    items = []  # (chain id, vector)
    for cid in participating:
        seen = set()
        for mention in state.chain_mentions(cid):
            tokens = state.bundle.mention_tokens(mention)
            filtered = [t for t in tokens if t.text.lower() not in ARTICLES]
            if not filtered:
                filtered = tokens
            lemmas = tuple(t.lemma.lower() for t in filtered)
            if lemmas in seen:
                continue
            seen.add(lemmas)
            lemma_tokens = [replace(t, text=t.lemma) for t in filtered]
            head_index = mention.head_index
            if all(t.index != head_index for t in lemma_tokens):
                head_index = lemma_tokens[0].index
            items.append((cid, weighted_phrase_vector(
                store, lemma_tokens, head_index, config.k)))
    if len(items) < 2:
        return
    labels = hac_average_cosine([vector for _, vector in items], config.t_cl)
    groups = {}
    for (cid, _vector), label in zip(items, labels):
        groups.setdefault(int(label), set()).add(cid)
    edges = sorted({tuple(sorted(pair))
                    for members in groups.values() if len(members) > 1
                    for pair in _pairs(sorted(members))})
    alias = {}

    def find(cid):
        while cid in alias:
            cid = alias[cid]
        return cid

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            continue
        if not cm.comparable(state.types[ra], state.types[rb]):
            continue
        winner, absorbed = sorted((ra, rb), key=lambda c: _by_size_then_id(state, c))
        state.merge(5, winner, absorbed, "abstract_hac")
        alias[absorbed] = winner


def _pairs(items):
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            yield (items[i], items[j])


SIEVES = (
    (1, sieve1_nel),
    (2, sieve2_ne_heads),
    (3, sieve3_non_ne),
    (4, sieve4_groups),
    (5, sieve5_abstract),
)


def chain_key_sets(state):
    """Final chains as lists of mention keys, deterministically ordered."""
    out = []
    for cid in sorted(state.chains):
        keys = sorted(state.bundle.mentions[m].key
                      for m in state.chains[cid].mention_ids)
        out.append((cid, keys))
    return out


def run_pipeline(bundle, config, store, upto=5):
    """Run preprocessing and sieves S1..upto; returns the final ChainState."""
    state = prepare_state(bundle, config)
    state.check_partition(0)
    for sieve_id, sieve in SIEVES:
        if sieve_id > upto:
            break
        sieve(state, store)
        state.check_partition(sieve_id)
    return state
