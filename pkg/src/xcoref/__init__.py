"""Cross-document coreference resolution with a five-sieve pipeline and
CoNLL metric scoring."""

__version__ = "0.1.0"
