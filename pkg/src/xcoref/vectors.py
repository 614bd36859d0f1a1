"""Word vector store with deterministic OOV handling and phrase vectorizers.

The store reads GloVe-style text files (``token c1 ... cd`` per line, an
optional ``N d`` header is skipped).  Out-of-vocabulary tokens map to a
pseudo-random unit vector derived from hashing (token, oov_seed), so runs are
reproducible regardless of the embedding file used.
"""
import hashlib

import numpy as np

from .errors import DimensionMismatch, EmptyInput, FormatError


class VectorStore:
    """Immutable token -> vector map; lookups are pure and thread-safe."""

    def __init__(self, dimension, entries, oov_seed=0):
        self.dimension = dimension
        self.entries = entries
        self.oov_seed = oov_seed

    def __len__(self):
        return len(self.entries)

    def __contains__(self, token):
        return token in self.entries

    def lookup(self, token):
        vector, _source = self.resolve(token)
        return vector

    def resolve(self, token):
        """Return (vector, source) where source is exact/lower/oov."""
        if token in self.entries:
            return self.entries[token], "exact"
        lowered = token.lower()
        if lowered in self.entries:
            return self.entries[lowered], "lower"
        return self._oov_vector(token), "oov"

    def _oov_vector(self, token):
        digest = hashlib.sha256(
            ("%d:%s" % (self.oov_seed, token)).encode("utf-8")).digest()
        rng = np.random.default_rng(int.from_bytes(digest[:8], "big"))
        vector = rng.standard_normal(self.dimension)
        return vector / np.linalg.norm(vector)


def load_vectors(path, limit=None, oov_seed=0):
    entries = {}
    dimension = None
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            parts = line.rstrip("\n").split()
            if not parts:
                continue
            if line_no == 1 and len(parts) == 2:
                try:
                    int(parts[0]), int(parts[1])
                    continue  # vocab-size / dimension header
                except ValueError:
                    pass
            token = parts[0]
            try:
                components = np.array([float(x) for x in parts[1:]], dtype=np.float64)
            except ValueError as exc:
                raise FormatError(
                    "line %d: non-numeric vector component" % line_no) from exc
            if components.size == 0:
                raise FormatError("line %d: token without components" % line_no)
            if dimension is None:
                dimension = components.size
            elif components.size != dimension:
                raise FormatError(
                    "line %d: dimension %d != %d" % (line_no, components.size, dimension))
            if limit is not None and len(entries) >= limit:
                break
            entries.setdefault(token, components)
    if dimension is None:
        raise FormatError("empty vector file: %s" % path)
    return VectorStore(dimension, entries, oov_seed=oov_seed)


def cosine(a, b):
    """Cosine similarity; a zero vector against anything is defined as 0."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionMismatch("cosine over %s vs %s" % (a.shape, b.shape))
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.dot(a, b) / (na * nb))


def _contributing(tokens):
    """Unique non-stopword texts in order; all unique texts if all stop."""
    picked = []
    seen = set()
    for token in tokens:
        key = token.text.lower()
        if token.stopword or key in seen:
            continue
        seen.add(key)
        picked.append(token.text)
    if picked:
        return picked
    seen = set()
    for token in tokens:
        key = token.text.lower()
        if key not in seen:
            seen.add(key)
            picked.append(token.text)
    return picked


def phrase_mean(store, tokens):
    """Mean vector over the unique non-stopword token texts."""
    if not tokens:
        raise EmptyInput("phrase_mean over no tokens")
    texts = _contributing(tokens)
    total = np.zeros(store.dimension)
    for text in texts:
        total += store.lookup(text)
    return total / len(texts)


def weighted_phrase_vector(store, tokens, head_index, k):
    """Mean vector with the head scaled by k; the head counts once in the
    denominator so k=1 reduces exactly to phrase_mean."""
    if not tokens:
        raise EmptyInput("weighted_phrase_vector over no tokens")
    head = next((t for t in tokens if t.index == head_index), None)
    if head is None:
        raise EmptyInput("head index %r not among tokens" % head_index)
    texts = _contributing(tokens)
    head_key = head.text.lower()
    total = np.zeros(store.dimension)
    for text in texts:
        vector = store.lookup(text)
        if text.lower() == head_key:
            vector = vector * k
        total += vector
    return total / len(texts)
