"""Greedy sentence selection under a word budget."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyDocument
from .scoring import ScoringParams, r_normalize, term_weights
from .textproc import Document, TermSentenceMatrix, count_words, is_punctuation

STOP_MODES = ("overrun", "exact")


@dataclass(frozen=True)
class Summary:
    doc_id: str
    selected: tuple
    text: str
    word_count: int
    method_tag: str = ""

    def sentence_lengths(self, doc: Document) -> list:
        return [doc.sentences[i].word_count for i in self.selected]


def truncate_to_words(summary_text: str, limit: int | None) -> str:
    """Keep the first `limit` surface words; punctuation-only chunks are free."""
    chunks = summary_text.split()
    if limit is None:
        return " ".join(chunks)
    if limit < 1:
        raise ValueError("limit must be >= 1")
    kept, words = [], 0
    for chunk in chunks:
        if not is_punctuation(chunk):
            if words == limit:
                break
            words += 1
        elif words == limit:
            break
        kept.append(chunk)
    return " ".join(kept)


def make_summary(doc: Document, order, limit: int | None, method_tag: str = "") -> Summary:
    """Join the sentences at `order` (in that order) and truncate."""
    order = tuple(int(i) for i in order)
    text = truncate_to_words(" ".join(doc.sentences[i].raw_text for i in order), limit)
    return Summary(doc.doc_id, order, text, count_words(text), method_tag)


def greedy_order(doc: Document, matrix: TermSentenceMatrix, params: ScoringParams,
                 budget_words: int | None, stop_mode: str = "overrun") -> list:
    """Sentence indices in the order the greedy loop picks them."""
    if stop_mode not in STOP_MODES:
        raise ValueError(f"unknown stop_mode {stop_mode!r}")
    weights = term_weights(matrix, params)
    w = np.array(weights.values, dtype=float)
    lengths = np.array([doc.sentence_length(i) for i in range(doc.n)])
    available = matrix.eligible.copy()
    counts = matrix.presence if params.distinct else matrix.counts
    picked, total = [], 0

    while available.any():
        wm = w if w.ndim == 2 else w[:, None]
        scores = r_normalize((counts * wm).sum(axis=0), lengths, params.r)
        cand = np.where(available, scores, -np.inf)
        if params.update_on_fly and not (cand[available] > 0).any():
            break
        i = int(np.argmax(cand))  # first maximum, so ties go to the earlier sentence
        wc = doc.sentences[i].word_count
        if budget_words is not None and stop_mode == "exact" and total + wc > budget_words:
            break
        picked.append(i)
        available[i] = False
        total += wc
        if params.update_on_fly:
            w[matrix.counts[:, i] > 0] = 0.0
        if budget_words is not None and total >= budget_words:
            break
    return picked


def greedy_summarize(doc: Document, matrix: TermSentenceMatrix, params: ScoringParams = ScoringParams(),
                     budget_words: int | None = 100, stop_mode: str = "overrun",
                     method_tag: str = "greedy") -> Summary:
    if doc.n == 0:
        raise EmptyDocument(doc.doc_id)
    picked = greedy_order(doc, matrix, params, budget_words, stop_mode)
    return make_summary(doc, sorted(picked), budget_words, method_tag)

