"""Concept typing: rank-weighted sense scoring and comparison matrices.

A chain's base type comes from the arg-max lexicographer category of its
heads' senses, each sense weighted by 1/rank so frequent meanings dominate.
The NE flag holds when at least half of the chain's mentions carry an NE
label.  Per-sieve comparison matrices (editable text files) gate which type
pairs a sieve may compare.
"""
from dataclasses import dataclass
from enum import Enum
from importlib import resources

from .errors import FormatError, MissingEntry

COUNTRY_NE_LABELS = frozenset({"GPE", "COUNTRY", "LOC", "LOCATION", "NORP"})


class Base(str, Enum):
    PERSON = "PERSON"
    GROUP = "GROUP"
    COUNTRY = "COUNTRY"
    MISC = "MISC"


@dataclass(frozen=True)
class ConceptType:
    base: Base
    is_ne: bool

    @property
    def name(self):
        return "%s_%s" % (self.base.value, "NE" if self.is_ne else "NON")

    @classmethod
    def from_name(cls, name):
        base, _, ne = name.rpartition("_")
        return cls(Base(base), ne == "NE")


ALL_TYPES = tuple(
    ConceptType(base, is_ne) for base in Base for is_ne in (True, False))


class CategoryMap:
    """Lexicographer category -> base type, with a fixed tie-break order.

    The file lists ``category base`` lines; earlier lines win category ties.
    """

    def __init__(self, ordered_pairs):
        self.order = [cat for cat, _ in ordered_pairs]
        self.base_of = dict(ordered_pairs)

    @classmethod
    def from_file(cls, path):
        pairs = []
        with open(path, encoding="utf-8") as handle:
            for line_no, line in enumerate(handle, start=1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                parts = line.split()
                if len(parts) != 2:
                    raise FormatError(
                        "%s line %d: expected 'category base'" % (path, line_no))
                try:
                    base = Base(parts[1].upper())
                except ValueError as exc:
                    raise FormatError(
                        "%s line %d: unknown base type %s" % (path, line_no, parts[1])
                    ) from exc
                pairs.append((parts[0], base))
        return cls(pairs)

    def rank(self, category):
        try:
            return self.order.index(category)
        except ValueError:
            return len(self.order)


class ComparisonMatrix:
    """Symmetric 0/1 matrix over concept type names for one sieve."""

    def __init__(self, sieve_id, entries):
        self.sieve_id = sieve_id
        self.entries = entries

    @classmethod
    def from_file(cls, path, sieve_id):
        rows = []
        with open(path, encoding="utf-8") as handle:
            for line in handle:
                line = line.strip()
                if line and not line.startswith("#"):
                    rows.append(line.split())
        if not rows:
            raise FormatError("empty matrix file: %s" % path)
        header = rows[0][1:]
        entries = {}
        for row in rows[1:]:
            if len(row) != len(header) + 1:
                raise FormatError("%s: ragged matrix row %r" % (path, row[0]))
            for name, cell in zip(header, row[1:]):
                if cell not in ("0", "1"):
                    raise FormatError("%s: cell %r is not 0/1" % (path, cell))
                entries[(row[0], name)] = int(cell)
        matrix = cls(sieve_id, entries)
        for (x, y), value in entries.items():
            if entries.get((y, x)) != value:
                raise FormatError("%s: matrix not symmetric at (%s, %s)" % (path, x, y))
        return matrix

    def comparable(self, x, y):
        key = (x.name, y.name)
        if key not in self.entries:
            raise MissingEntry(
                "matrix for sieve %d has no entry for %s/%s" % (self.sieve_id, *key))
        return self.entries[key] == 1


def default_matrix(sieve_id):
    with resources.as_file(
            resources.files("xcoref.data") / ("cm%d.txt" % sieve_id)) as path:
        return ComparisonMatrix.from_file(path, sieve_id)


def default_category_map():
    with resources.as_file(resources.files("xcoref.data") / "categories.txt") as path:
        return CategoryMap.from_file(path)


def score_types(chain, mentions):
    """Sum w(rank) = 1/rank per lexicographer category over the chain's heads."""
    weights = {}
    for mid in sorted(chain.mention_ids):
        for category, rank in mentions[mid].sense_ranks:
            weights[category] = weights.get(category, 0.0) + 1.0 / rank
    return weights


def assign_type(score, chain, mentions, category_map):
    """Arg-max category mapped to a base type; ties break by category order.

    COUNTRY needs corroborating NE evidence on the chain (a GPE-like label on
    some mention); without it a location-dominant chain falls back to MISC.
    """
    chain_mentions = [mentions[mid] for mid in chain.mention_ids]
    ne_count = sum(1 for m in chain_mentions if m.is_ne)
    is_ne = bool(chain_mentions) and ne_count * 2 >= len(chain_mentions)
    if not score:
        return ConceptType(Base.MISC, is_ne)
    best = max(score.items(), key=lambda item: (item[1], -category_map.rank(item[0])))
    base = category_map.base_of.get(best[0], Base.MISC)
    if base is Base.COUNTRY:
        has_country_ne = any(
            m.ne_type in COUNTRY_NE_LABELS for m in chain_mentions if m.is_ne)
        if not has_country_ne:
            base = Base.MISC
    return ConceptType(base, is_ne)
