"""Unsupervised extractive single-document summarization.

Greedy tf-idf selection with length normalization, exact 0/1 ILP
summarizers, title-driven document reduction and a self-contained ROUGE
evaluator.
"""

__version__ = "0.1.0"
