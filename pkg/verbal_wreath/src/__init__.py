"""Exact verification of verbal wreath embeddings of Lie algebra representations."""

__version__ = "0.1.0"
