"""CoNLL-2012 skeleton writer and reader for cross-checking scores.

The writer emits one ``#begin document (<doc_id>); part 000`` block per
document with one token per line and the coreference column last, which is
what the official scorer consumes.  The reader parses the same format back
into a ChainSet so round-trips can be verified.
"""
import re

from .errors import FormatError
from .scoring import ChainSet

_BEGIN = re.compile(r"#begin document \((?P<doc>[^)]*)\); part (?P<part>\d+)")


def write_conll(chain_set, doc_shapes, handle):
    """Write a ChainSet over documents described by doc_shapes, a mapping
    doc_id -> list of sentence lengths."""
    chain_index = {chain: i for i, chain in enumerate(chain_set.chains)}
    starts = {}
    ends = {}
    for chain in chain_set.chains:
        cid = chain_index[chain]
        for doc_id, sent, start, end in chain:
            if start == end:
                starts.setdefault((doc_id, sent, start), []).append((cid, True))
            else:
                starts.setdefault((doc_id, sent, start), []).append((cid, False))
                ends.setdefault((doc_id, sent, end), []).append(cid)
    for doc_id in sorted(doc_shapes):
        handle.write("#begin document (%s); part 000\n" % doc_id)
        for sent, length in enumerate(doc_shapes[doc_id]):
            for index in range(length):
                marks = []
                for cid, whole in sorted(starts.get((doc_id, sent, index), [])):
                    marks.append("(%d)" % cid if whole else "(%d" % cid)
                for cid in sorted(ends.get((doc_id, sent, index), []), reverse=True):
                    marks.append("%d)" % cid)
                coref = "|".join(marks) if marks else "-"
                handle.write("%s\t0\t%d\t_\t%s\n" % (doc_id, index, coref))
            handle.write("\n")
        handle.write("#end document\n")


def read_conll(handle):
    """Parse the skeleton format; returns (ChainSet, doc_shapes)."""
    chains = {}
    doc_shapes = {}
    doc_id = None
    sent = 0
    index = 0
    open_spans = {}
    in_sentence = False
    for line_no, line in enumerate(handle, start=1):
        line = line.rstrip("\n")
        if line.startswith("#begin document"):
            match = _BEGIN.match(line)
            if not match:
                raise FormatError("line %d: malformed #begin" % line_no)
            doc_id = match.group("doc")
            doc_shapes[doc_id] = []
            sent = 0
            index = 0
            in_sentence = False
            continue
        if line.startswith("#end document"):
            if open_spans:
                raise FormatError("line %d: unclosed span" % line_no)
            if in_sentence:
                doc_shapes[doc_id].append(index)
            doc_id = None
            continue
        if not line.strip():
            if in_sentence:
                doc_shapes[doc_id].append(index)
                sent += 1
                index = 0
                in_sentence = False
            continue
        if doc_id is None:
            raise FormatError("line %d: token outside a document block" % line_no)
        in_sentence = True
        coref = line.split()[-1]
        if coref != "-":
            for mark in coref.split("|"):
                whole = re.fullmatch(r"\((\d+)\)", mark)
                opening = re.fullmatch(r"\((\d+)", mark)
                closing = re.fullmatch(r"(\d+)\)", mark)
                if whole:
                    cid = int(whole.group(1))
                    chains.setdefault(cid, []).append((doc_id, sent, index, index))
                elif opening:
                    cid = int(opening.group(1))
                    open_spans.setdefault(cid, []).append((sent, index))
                elif closing:
                    cid = int(closing.group(1))
                    if not open_spans.get(cid):
                        raise FormatError("line %d: close without open" % line_no)
                    start_sent, start = open_spans[cid].pop()
                    if not open_spans[cid]:
                        del open_spans[cid]
                    if start_sent != sent:
                        raise FormatError("line %d: span crosses sentences" % line_no)
                    chains.setdefault(cid, []).append((doc_id, sent, start, index))
                else:
                    raise FormatError("line %d: bad coref mark %r" % (line_no, mark))
        index += 1
    return ChainSet(list(chains.values())), doc_shapes
