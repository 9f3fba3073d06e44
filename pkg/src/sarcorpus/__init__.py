"""Sarcasm corpus toolkit: pattern learning, weak classification, cue
retrieval, annotation aggregation and a supervised baseline."""

__version__ = "0.1.0"
