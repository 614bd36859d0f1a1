"""Lemma baseline: one chain per distinct head lemma."""


def lemma_baseline(bundle):
    """Group mentions by case-insensitive head-lemma equality.

    Returns (chain_id, [mention keys]) pairs, deterministically ordered.
    """
    groups = {}
    for mid in sorted(bundle.mentions):
        mention = bundle.mentions[mid]
        lemma = bundle.head_token(mention).lemma.lower()
        groups.setdefault(lemma, []).append(mention.key)
    return [("lemma_%d" % i, sorted(groups[lemma]))
            for i, lemma in enumerate(sorted(groups))]
