"""Title-driven reduction: group sentences by how they chain back to the title."""
from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import EmptyDocument
from .greedy import Summary, make_summary
from .textproc import Document


@dataclass(frozen=True)
class LevelTree:
    """``levels[i]`` lists (in document order) the sentences reached at step i."""

    levels: tuple
    uncovered: tuple
    title_terms_used: tuple

    @property
    def covered(self) -> list:
        return sorted(i for level in self.levels for i in level)

    def to_jsonl(self) -> str:
        lines = [json.dumps({"level": k, "sentences": list(level)}) for k, level in enumerate(self.levels)]
        lines.append(json.dumps({"level": None, "uncovered": list(self.uncovered)}))
        return "\n".join(lines) + "\n"


def title_reduction(doc: Document, title_terms) -> LevelTree:
    """Level 0 holds sentences sharing a term with the title; level i+1 holds
    the remaining sentences sharing a term with the words level i added.
    Stops when a pass adds no new words or no sentence is left.
    """
    if doc.n == 0:
        raise EmptyDocument(doc.doc_id)
    remaining = [(s.index, set(s.terms)) for s in doc.sentences if s.terms]
    working = set(title_terms)
    levels = []
    while remaining:
        level, new_words, rest = [], set(), []
        for idx, words in remaining:
            if working & words:
                level.append(idx)
                new_words |= words - working
            else:
                rest.append((idx, words))
        if level:
            levels.append(tuple(level))
        remaining = rest
        if not new_words:
            break
        working = new_words
    return LevelTree(tuple(levels), tuple(i for i, _ in remaining), tuple(title_terms))


def bfs_order(tree: LevelTree) -> list:
    return [i for level in tree.levels for i in level]


def depth_summary(tree: LevelTree, doc: Document, depth: int = 1, word_limit: int = 100) -> Summary:
    """Sentences of the first `depth` levels, level by level, truncated."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    order = [i for level in tree.levels[:depth] for i in level]
    return make_summary(doc, order, word_limit, f"title_depth{depth}")


def bfs_summary(tree: LevelTree, doc: Document, word_limit: int = 100) -> Summary:
    return make_summary(doc, bfs_order(tree), word_limit, "title_bfs")


def title_filter(doc: Document, tree: LevelTree) -> Document:
    """The covered sentences only, in BFS order and re-indexed from 0."""
    return doc.subset(bfs_order(tree))
