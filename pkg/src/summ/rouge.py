"""ROUGE-N and ROUGE-L with stemming, word-limit truncation, multiple
references and bootstrap confidence intervals.
"""
from __future__ import annotations

import csv
import io
import re
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyReference, MissingReference
from .greedy import Summary, truncate_to_words
from .textproc import stem

_NON_ALNUM = re.compile(r"[^a-z0-9]+")


@dataclass(frozen=True)
class RougeConfig:
    n_max: int = 4
    use_stemming: bool = True
    word_limit: int | None = 100
    bootstrap_samples: int = 1000
    confidence: float = 95.0
    compute_lcs: bool = True
    multi_ref: str = "average"
    seed: int = 0

    def __post_init__(self):
        if not 1 <= self.n_max <= 4:
            raise ValueError("n_max must be in 1..4")
        if self.word_limit is not None and self.word_limit < 1:
            raise ValueError("word_limit must be >= 1")
        if self.multi_ref not in ("average", "best"):
            raise ValueError(f"unknown multi_ref {self.multi_ref!r}")

    @property
    def metrics(self) -> list:
        names = [f"ROUGE-{n}" for n in range(1, self.n_max + 1)]
        return names + (["ROUGE-L"] if self.compute_lcs else [])


@dataclass(frozen=True)
class RougeScore:
    recall: float
    precision: float
    f1: float

    @classmethod
    def from_pr(cls, recall: float, precision: float) -> "RougeScore":
        f = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
        return cls(recall, precision, f)


@dataclass
class RougeReport:
    per_doc: dict
    corpus_mean: dict
    intervals: dict = field(default_factory=dict)
    confidence: float = 95.0

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["doc_id", "metric", "recall", "precision", "f1"])
        for doc_id in sorted(self.per_doc):
            for metric, s in self.per_doc[doc_id].items():
                w.writerow([doc_id, metric, _fmt(s.recall), _fmt(s.precision), _fmt(s.f1)])
        for metric, s in self.corpus_mean.items():
            w.writerow(["MEAN", metric, _fmt(s.recall), _fmt(s.precision), _fmt(s.f1)])
        tag = f"ci{self.confidence:g}"
        for metric, iv in self.intervals.items():
            w.writerow([f"{tag}_low", metric] + [_fmt(iv[k][0]) for k in ("recall", "precision", "f1")])
            w.writerow([f"{tag}_high", metric] + [_fmt(iv[k][1]) for k in ("recall", "precision", "f1")])
        return buf.getvalue()


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def rouge_tokens(text: str, config: RougeConfig = RougeConfig(), truncate: bool = False) -> list:
    """Lowercased alphanumeric tokens, optionally stemmed and truncated."""
    if truncate and config.word_limit is not None:
        text = truncate_to_words(text, config.word_limit)
    toks = _NON_ALNUM.split(text.lower())
    toks = [t for t in toks if t]
    if config.use_stemming:
        toks = [stem(t) for t in toks]
    return toks


def _ngrams(tokens, n) -> Counter:
    return Counter(tuple(tokens[k:k + n]) for k in range(len(tokens) - n + 1))


def _combine(scores, mode) -> RougeScore:
    if mode == "best":
        return max(scores, key=lambda s: s.f1)
    r = float(np.mean([s.recall for s in scores]))
    p = float(np.mean([s.precision for s in scores]))
    return RougeScore.from_pr(r, p)


def _prepare(candidate, references, config):
    if isinstance(references, str):
        references = [references]
    refs = [rouge_tokens(r, config) for r in references]
    refs = [r for r in refs if r]
    if not refs:
        raise EmptyReference("no non-empty reference summary")
    return rouge_tokens(candidate, config, truncate=True), refs


def ngram_score(cand_tokens, ref_tokens, n: int) -> RougeScore:
    c, r = _ngrams(cand_tokens, n), _ngrams(ref_tokens, n)
    overlap = sum(min(v, r[g]) for g, v in c.items())
    rc, cc = sum(r.values()), sum(c.values())
    return RougeScore.from_pr(overlap / rc if rc else 0.0, overlap / cc if cc else 0.0)


def lcs_length(a, b) -> int:
    if len(a) < len(b):
        a, b = b, a
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b):
            cur.append(prev[j] + 1 if x == y else max(prev[j + 1], cur[j]))
        prev = cur
    return prev[-1]


def lcs_score(cand_tokens, ref_tokens) -> RougeScore:
    ell = lcs_length(cand_tokens, ref_tokens)
    return RougeScore.from_pr(ell / len(ref_tokens) if ref_tokens else 0.0,
                              ell / len(cand_tokens) if cand_tokens else 0.0)


def rouge_n(candidate: str, references, n: int = 1, config: RougeConfig = RougeConfig()) -> RougeScore:
    if not 1 <= n <= config.n_max:
        raise ValueError(f"n must be in 1..{config.n_max}")
    cand, refs = _prepare(candidate, references, config)
    return _combine([ngram_score(cand, r, n) for r in refs], config.multi_ref)


def rouge_l(candidate: str, references, config: RougeConfig = RougeConfig()) -> RougeScore:
    cand, refs = _prepare(candidate, references, config)
    return _combine([lcs_score(cand, r) for r in refs], config.multi_ref)


def score_document(candidate: str, references, config: RougeConfig = RougeConfig()) -> dict:
    """All configured metrics for one candidate (tokenizes once)."""
    cand, refs = _prepare(candidate, references, config)
    out = {}
    for n in range(1, config.n_max + 1):
        out[f"ROUGE-{n}"] = _combine([ngram_score(cand, r, n) for r in refs], config.multi_ref)
    if config.compute_lcs:
        out["ROUGE-L"] = _combine([lcs_score(cand, r) for r in refs], config.multi_ref)
    return out


def bootstrap_ci(per_doc_values, samples: int = 1000, confidence: float = 95.0, seed: int = 0) -> tuple:
    """Percentile interval of the mean from `samples` resamples with replacement."""
    v = np.asarray(per_doc_values, dtype=float)
    if v.size == 0:
        raise ValueError("need at least one value")
    rng = np.random.default_rng(seed)
    means = v[rng.integers(0, v.size, size=(samples, v.size))].mean(axis=1)
    tail = (100.0 - confidence) / 2
    lo, hi = np.percentile(means, [tail, 100.0 - tail])
    return float(lo), float(hi)


def _references_of(dataset):
    return dataset.references if hasattr(dataset, "references") else dataset


def aggregate(per_doc: dict, config: RougeConfig) -> RougeReport:
    ids = sorted(per_doc)
    mean, intervals = {}, {}
    for metric in config.metrics:
        cols = {k: [getattr(per_doc[d][metric], k) for d in ids] for k in ("recall", "precision", "f1")}
        mean[metric] = RougeScore(*(float(np.mean(cols[k])) for k in ("recall", "precision", "f1")))
        if config.bootstrap_samples > 0:
            intervals[metric] = {
                k: bootstrap_ci(cols[k], config.bootstrap_samples, config.confidence, config.seed)
                for k in cols
            }
    return RougeReport(per_doc, mean, intervals, config.confidence)


def evaluate_texts(candidates: dict, references, config: RougeConfig = RougeConfig()) -> RougeReport:
    """Score ``doc_id -> candidate text`` against ``doc_id -> [reference texts]``."""
    refs = _references_of(references)
    per_doc = {}
    for doc_id in sorted(candidates):
        if not refs.get(doc_id):
            raise MissingReference(doc_id)
        per_doc[doc_id] = score_document(candidates[doc_id], refs[doc_id], config)
    if not per_doc:
        raise ValueError("nothing to evaluate")
    return aggregate(per_doc, config)


def evaluate_corpus(summaries, dataset, config: RougeConfig = RougeConfig()) -> RougeReport:
    texts = {}
    for s in summaries:
        texts[s.doc_id if isinstance(s, Summary) else s[0]] = s.text if isinstance(s, Summary) else s[1]
    return evaluate_texts(texts, dataset, config)
