"""CoNLL coreference metrics: MUC, B-cubed, CEAF_e, and their average F1.

Mentions are identified by exact keys (doc_id, sentence index, span), the
same universe the reference scorer uses.  A side with nothing scorable (no
links for MUC, no mentions otherwise) contributes 0 for that component.
Singletons stay in the B-cubed and CEAF universes.
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import DuplicateMention


@dataclass(frozen=True)
class MetricResult:
    recall: float
    precision: float
    f1: float

    @classmethod
    def from_rp(cls, recall, precision):
        if recall + precision > 0:
            f1 = 2 * recall * precision / (recall + precision)
        else:
            f1 = 0.0
        return cls(recall, precision, f1)


class ChainSet:
    """A list of pairwise-disjoint sets of mention keys."""

    def __init__(self, chains):
        # canonical chain order makes every metric's float summation order a
        # function of the partition alone, so equal partitions score equal
        self.chains = sorted((frozenset(chain) for chain in chains if chain),
                             key=sorted)
        seen = set()
        for chain in self.chains:
            for key in chain:
                if key in seen:
                    raise DuplicateMention("mention key %r in two chains" % (key,))
                seen.add(key)
        self.mentions = seen

    def chain_of(self):
        mapping = {}
        for chain in self.chains:
            for key in chain:
                mapping[key] = chain
        return mapping


def align(gold, system):
    """Validate both sides share the exact-key universe convention.

    System mentions absent from gold stay in place; the metrics penalize
    them the way the reference scorer does.  Duplicates within one side were
    already rejected by ChainSet, so this re-checks and returns both sides.
    """
    for side in (gold, system):
        flat = [key for chain in side.chains for key in chain]
        if len(flat) != len(set(flat)):
            raise DuplicateMention("duplicate mention key within one side")
    return gold, system


def muc(gold, system):
    """Link-based Vilain metric."""

    def half(truth, response):
        response_of = response.chain_of()
        numerator = 0
        denominator = 0
        for chain in truth.chains:
            partitions = set()
            missing = 0
            for key in chain:
                block = response_of.get(key)
                if block is None:
                    missing += 1  # each missing mention is its own block
                else:
                    partitions.add(block)
            denominator += len(chain) - 1
            numerator += len(chain) - (len(partitions) + missing)
        return numerator / denominator if denominator > 0 else 0.0

    return MetricResult.from_rp(half(gold, system), half(system, gold))


def b_cubed(gold, system):
    """Per-mention chain-overlap metric."""

    def half(truth, response):
        response_of = response.chain_of()
        if not truth.mentions:
            return 0.0
        total = 0.0
        for chain in truth.chains:
            # sorted keys: set iteration order varies with construction
            # history, the summation order must not
            for key in sorted(chain):
                block = response_of.get(key, frozenset())
                total += len(chain & block) / len(chain)
        return total / len(truth.mentions)

    return MetricResult.from_rp(half(gold, system), half(system, gold))


def phi4(a, b):
    return 2.0 * len(a & b) / (len(a) + len(b))


def ceaf_e(gold, system):
    """Entity-based metric over the optimal one-to-one chain alignment."""
    if not gold.chains or not system.chains:
        return MetricResult.from_rp(0.0, 0.0)
    sim = np.zeros((len(gold.chains), len(system.chains)))
    for gi, gchain in enumerate(gold.chains):
        for si, schain in enumerate(system.chains):
            sim[gi, si] = phi4(gchain, schain)
    rows, cols = linear_sum_assignment(sim, maximize=True)
    # exactly-rounded sum: the total is independent of assignment order
    total = math.fsum(sim[rows, cols])
    return MetricResult.from_rp(total / len(gold.chains), total / len(system.chains))


def conll_f1(results):
    """Arithmetic mean of the MUC, B-cubed and CEAF_e F1 values."""
    return sum(r.f1 for r in results) / len(results)


def score_all(gold, system):
    gold, system = align(gold, system)
    results = (muc(gold, system), b_cubed(gold, system), ceaf_e(gold, system))
    return results, conll_f1(results)


def gold_chain_set(bundle):
    """Gold partition from per-mention labels; unlabeled mentions score as
    singletons."""
    by_label = {}
    singles = []
    for mention in bundle.mentions.values():
        if mention.gold_concept is None:
            singles.append([mention.key])
        else:
            by_label.setdefault(mention.gold_concept, []).append(mention.key)
    return ChainSet(list(by_label.values()) + singles)
