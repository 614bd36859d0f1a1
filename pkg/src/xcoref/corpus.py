"""Corpus data model and its JSONL interchange format.

One topic per file, one document object per line.  Every downstream module
consumes the types defined here; the loader validates both the schema (field
presence and types, reported with line numbers) and cross-record integrity
(span bounds, subtree shape, chain membership).
"""
import json
import os
from dataclasses import dataclass, field
from enum import Enum

from .errors import IntegrityError, SchemaError

MAX_SUBTREE_TOKENS = 20


@dataclass(frozen=True)
class Token:
    index: int
    text: str
    lemma: str
    pos: str
    stopword: bool


@dataclass(frozen=True)
class Mention:
    id: str
    doc_id: str
    sent_index: int
    span: tuple  # (start, end), inclusive token indices
    head_index: int
    ne_type: str | None = None
    wiki_title: str | None = None
    sense_ranks: tuple = ()  # ((category, rank), ...)
    dep_subtree: tuple = ()  # ((gov, dep, relation), ...)
    struct_subtree: tuple = ()  # (token_index, ...)
    gold_concept: str | None = None

    @property
    def key(self):
        return (self.doc_id, self.sent_index, self.span[0], self.span[1])

    @property
    def is_ne(self):
        return self.ne_type is not None


class Origin(str, Enum):
    WITHIN_DOC_CR = "WITHIN_DOC_CR"
    SINGLETON = "SINGLETON"
    MERGED = "MERGED"


@dataclass
class Chain:
    id: str
    mention_ids: set
    origin: Origin
    wiki_title: str | None = None


@dataclass
class CorpusBundle:
    """Immutable after load; safe to share read-only across workers."""

    topic_id: str
    documents: dict  # doc_id -> list of sentences, each a list of Token
    mentions: dict = field(default_factory=dict)  # mention id -> Mention
    chains: list = field(default_factory=list)

    def sentence(self, doc_id, sent_index):
        return self.documents[doc_id][sent_index]

    def mention_tokens(self, mention):
        sent = self.sentence(mention.doc_id, mention.sent_index)
        return sent[mention.span[0]:mention.span[1] + 1]

    def head_token(self, mention):
        return self.sentence(mention.doc_id, mention.sent_index)[mention.head_index]

    def subtree_tokens(self, mention):
        sent = self.sentence(mention.doc_id, mention.sent_index)
        return [sent[i] for i in mention.struct_subtree]

    def mention_text(self, mention):
        return " ".join(t.text for t in self.mention_tokens(mention))


def _require(obj, name, kinds, line, where):
    if name not in obj:
        raise SchemaError("%s: missing field '%s'" % (where, name), line)
    value = obj[name]
    if not isinstance(value, kinds) or (kinds is int and isinstance(value, bool)):
        raise SchemaError(
            "%s: field '%s' has wrong type %s" % (where, name, type(value).__name__),
            line,
        )
    return value


def _optional_str(obj, name, line, where):
    value = obj.get(name)
    if value is not None and not isinstance(value, str):
        raise SchemaError("%s: field '%s' must be a string or null" % (where, name), line)
    return value


def _parse_token(raw, line, where):
    if not isinstance(raw, dict):
        raise SchemaError("%s: token must be an object" % where, line)
    index = _require(raw, "index", int, line, where)
    text = _require(raw, "text", str, line, where)
    if not text:
        raise SchemaError("%s: empty token text" % where, line)
    return Token(
        index=index,
        text=text,
        lemma=_require(raw, "lemma", str, line, where),
        pos=_require(raw, "pos", str, line, where),
        stopword=bool(_require(raw, "stop", (bool, int), line, where)),
    )


def _parse_mention(raw, doc_id, line):
    if not isinstance(raw, dict):
        raise SchemaError("mention must be an object", line)
    mid = _require(raw, "id", str, line, "mention")
    where = "mention %s" % mid
    sent = _require(raw, "sent", int, line, where)
    start = _require(raw, "start", int, line, where)
    end = _require(raw, "end", int, line, where)
    head = _require(raw, "head", int, line, where)
    senses = []
    for pair in _require(raw, "senses", list, line, where):
        if not isinstance(pair, list) or len(pair) != 2 \
                or not isinstance(pair[0], str) or not isinstance(pair[1], int):
            raise SchemaError("%s: sense entries must be [category, rank]" % where, line)
        senses.append((pair[0], pair[1]))
    dep = []
    for edge in _require(raw, "dep", list, line, where):
        if not isinstance(edge, list) or len(edge) != 3 \
                or not isinstance(edge[0], int) or not isinstance(edge[1], int) \
                or not isinstance(edge[2], str):
            raise SchemaError("%s: dep entries must be [gov, dep, rel]" % where, line)
        dep.append((edge[0], edge[1], edge[2]))
    struct = _require(raw, "struct", list, line, where)
    if not all(isinstance(i, int) for i in struct):
        raise SchemaError("%s: struct entries must be token indices" % where, line)
    return Mention(
        id=mid,
        doc_id=doc_id,
        sent_index=sent,
        span=(start, end),
        head_index=head,
        ne_type=_optional_str(raw, "ne", line, where),
        wiki_title=_optional_str(raw, "wiki", line, where),
        sense_ranks=tuple(senses),
        dep_subtree=tuple(dep),
        struct_subtree=tuple(struct),
        gold_concept=_optional_str(raw, "gold", line, where),
    )


def _check_mention(mention, sentences, line):
    where = "mention %s" % mention.id
    if mention.sent_index < 0 or mention.sent_index >= len(sentences):
        raise IntegrityError("%s: sentence index out of range" % where, line)
    sent = sentences[mention.sent_index]
    start, end = mention.span
    if start > end:
        raise IntegrityError("%s: span start %d > end %d" % (where, start, end), line)
    if start < 0 or end >= len(sent):
        raise IntegrityError("%s: span out of range for sentence" % where, line)
    if not start <= mention.head_index <= end:
        raise IntegrityError("%s: head index outside span" % where, line)
    struct = set(mention.struct_subtree)
    if len(mention.struct_subtree) > MAX_SUBTREE_TOKENS:
        raise IntegrityError(
            "%s: structure subtree larger than %d tokens" % (where, MAX_SUBTREE_TOKENS),
            line,
        )
    if mention.head_index not in struct:
        raise IntegrityError("%s: structure subtree misses the head" % where, line)
    if any(i < 0 or i >= len(sent) for i in struct):
        raise IntegrityError("%s: structure subtree index out of range" % where, line)
    dep_tokens = {mention.head_index}
    for gov, dpt, _rel in mention.dep_subtree:
        dep_tokens.add(gov)
        dep_tokens.add(dpt)
    if dep_tokens != struct:
        raise IntegrityError(
            "%s: dependency subtree token set differs from structure subtree" % where,
            line,
        )
    seen = set()
    for cat, rank in mention.sense_ranks:
        if rank < 1:
            raise IntegrityError("%s: sense rank %d < 1" % (where, rank), line)
        if (cat, rank) in seen:
            raise IntegrityError("%s: duplicate sense (%s, %d)" % (where, cat, rank), line)
        seen.add((cat, rank))


def load_corpus(path):
    """Load a topic file into a validated CorpusBundle.

    Mentions not covered by a within-document chain are wrapped as singleton
    chains so that the sieves can operate uniformly on chains.
    """
    topic_id = os.path.splitext(os.path.basename(path))[0]
    documents = {}
    mentions = {}
    mention_order = []
    chains = []
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise SchemaError("invalid JSON: %s" % exc, line_no) from exc
            if not isinstance(record, dict):
                raise SchemaError("document record must be an object", line_no)
            doc_id = _require(record, "doc_id", str, line_no, "document")
            if doc_id in documents:
                raise IntegrityError("duplicate doc_id %s" % doc_id, line_no)
            sentences = []
            for s_i, raw_sent in enumerate(_require(record, "sentences", list, line_no, doc_id)):
                if not isinstance(raw_sent, list):
                    raise SchemaError("%s: sentence %d must be a list" % (doc_id, s_i), line_no)
                tokens = [_parse_token(t, line_no, "%s sentence %d" % (doc_id, s_i))
                          for t in raw_sent]
                indices = [t.index for t in tokens]
                if indices != list(range(len(tokens))):
                    raise IntegrityError(
                        "%s: sentence %d token indices not contiguous" % (doc_id, s_i),
                        line_no,
                    )
                sentences.append(tokens)
            documents[doc_id] = sentences
            for raw in _require(record, "mentions", list, line_no, doc_id):
                mention = _parse_mention(raw, doc_id, line_no)
                if mention.id in mentions:
                    raise IntegrityError("duplicate mention id %s" % mention.id, line_no)
                _check_mention(mention, sentences, line_no)
                mentions[mention.id] = mention
                mention_order.append(mention.id)
            for raw in _require(record, "chains", list, line_no, doc_id):
                if not isinstance(raw, dict):
                    raise SchemaError("chain must be an object", line_no)
                cid = _require(raw, "id", str, line_no, "chain")
                members = _require(raw, "mentions", list, line_no, "chain %s" % cid)
                if not members or not all(isinstance(m, str) for m in members):
                    raise SchemaError(
                        "chain %s: 'mentions' must be a non-empty list of ids" % cid,
                        line_no,
                    )
                chains.append((line_no, Chain(
                    id=cid,
                    mention_ids=set(members),
                    origin=Origin.WITHIN_DOC_CR,
                    wiki_title=_optional_str(raw, "wiki", line_no, "chain %s" % cid),
                )))

    covered = set()
    seen_chain_ids = set()
    final_chains = []
    for line_no, chain in chains:
        if chain.id in seen_chain_ids:
            raise IntegrityError("duplicate chain id %s" % chain.id, line_no)
        seen_chain_ids.add(chain.id)
        for mid in chain.mention_ids:
            if mid not in mentions:
                raise IntegrityError(
                    "chain %s: dangling mention id %s" % (chain.id, mid), line_no)
            if mid in covered:
                raise IntegrityError(
                    "chain %s: mention %s already in another chain" % (chain.id, mid),
                    line_no,
                )
            covered.add(mid)
        final_chains.append(chain)
    for mid in mention_order:
        if mid not in covered:
            final_chains.append(Chain(
                id="sg_%s" % mid,
                mention_ids={mid},
                origin=Origin.SINGLETON,
                wiki_title=mentions[mid].wiki_title,
            ))
    return CorpusBundle(
        topic_id=topic_id,
        documents=documents,
        mentions=mentions,
        chains=final_chains,
    )


def chain_partition_check(chains, mentions):
    """True iff the chains form a partition of the mention id set."""
    seen = set()
    for chain in chains:
        for mid in chain.mention_ids:
            if mid in seen:
                return False
            seen.add(mid)
    ids = {getattr(m, "id", m) for m in mentions}
    return seen == ids


def serialize(bundle):
    """Yield JSONL lines for the bundle; inverse of load_corpus.

    Singleton chains created at load time are not written back: reloading
    recreates them, so load_corpus(serialize(b)) is the identity.
    """
    per_doc_mentions = {doc_id: [] for doc_id in bundle.documents}
    for mid, mention in bundle.mentions.items():
        per_doc_mentions[mention.doc_id].append(mention)
    per_doc_chains = {doc_id: [] for doc_id in bundle.documents}
    for chain in bundle.chains:
        if chain.origin is Origin.SINGLETON:
            continue
        anchor = min(chain.mention_ids)
        per_doc_chains[bundle.mentions[anchor].doc_id].append(chain)
    for doc_id, sentences in bundle.documents.items():
        record = {
            "doc_id": doc_id,
            "sentences": [
                [{"index": t.index, "text": t.text, "lemma": t.lemma,
                  "pos": t.pos, "stop": t.stopword} for t in sent]
                for sent in sentences
            ],
            "mentions": [
                {
                    "id": m.id, "sent": m.sent_index,
                    "start": m.span[0], "end": m.span[1], "head": m.head_index,
                    "ne": m.ne_type, "wiki": m.wiki_title,
                    "senses": [[c, r] for c, r in m.sense_ranks],
                    "dep": [[g, d, r] for g, d, r in m.dep_subtree],
                    "struct": list(m.struct_subtree),
                    "gold": m.gold_concept,
                }
                for m in per_doc_mentions[doc_id]
            ],
            "chains": [
                {"id": c.id, "mentions": sorted(c.mention_ids), "wiki": c.wiki_title}
                for c in per_doc_chains[doc_id]
            ],
        }
        yield json.dumps(record, ensure_ascii=False, sort_keys=True)
