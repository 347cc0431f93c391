"""Parameter sweeps, corpus-level statistics and result tables."""
from __future__ import annotations

import csv
import io
import itertools
import logging
import math
import re
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields, replace

import numpy as np

from .corpus import Dataset, prepare_document
from .errors import DataError, DegenerateVariance
from .greedy import Summary, greedy_summarize
from .ilp import ilp_summarize
from .rouge import RougeConfig, RougeReport, evaluate_corpus, evaluate_texts
from .scoring import ScoringParams
from .textproc import Document, PreprocessOptions, build_term_matrix
from .titled import bfs_summary, depth_summary, title_filter, title_reduction

log = logging.getLogger(__name__)

METHODS = ("greedy", "ilp_set_cover", "ilp_budget", "ilp_score",
           "title_depth", "title_bfs", "title_filter_ilp")
FLAG_LETTERS = "SWDU"


def frange(rng) -> list:
    """Inclusive ``(start, stop, step)`` range, rounded to kill float drift."""
    start, stop, step = (float(v) for v in rng)
    if not all(math.isfinite(v) for v in (start, stop, step)):
        raise ValueError("range bounds must be finite")
    if step <= 0:
        raise ValueError("step must be > 0")
    if stop < start:
        raise ValueError("empty range: stop < start")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + k * step, 10) + 0.0 for k in range(count)]


def parse_range(text: str) -> tuple:
    """``"a:b:step"``, ``"a:b"`` (step 1) or a single value."""
    parts = [float(p) for p in text.split(":")]
    if len(parts) == 1:
        return (parts[0], parts[0], 1.0)
    if len(parts) == 2:
        return (parts[0], parts[1], 1.0)
    if len(parts) == 3:
        return tuple(parts)
    raise ValueError(f"bad range {text!r}")


def normalize_flags(flags: str) -> str:
    flags = flags.upper()
    bad = set(flags) - set(FLAG_LETTERS)
    if bad:
        raise ValueError(f"unknown flags {''.join(sorted(bad))}")
    return "".join(c for c in FLAG_LETTERS if c in flags)


def flag_subsets(letters: str = FLAG_LETTERS) -> list:
    """Every subset of `letters`, smallest first."""
    letters = normalize_flags(letters)
    out = []
    for k in range(len(letters) + 1):
        out.extend("".join(c) for c in itertools.combinations(letters, k))
    return out


@dataclass(frozen=True)
class SweepSpec:
    method: str = "greedy"
    flag_grid: tuple = ("",)
    r_range: tuple = (0.0, 0.0, 1.0)
    alpha_range: tuple = (1.0, 1.0, 1.0)
    beta_range: tuple = (1.0, 1.0, 1.0)
    threshold_range: tuple = (100.0, 100.0, 10.0)
    word_limit: int = 100
    metric: str = "tfidf"
    depth: int = 1
    norm_scope: str = "sentence"
    lp_backend: str = "simplex"
    node_limit: int = 200_000
    headline_metric: str = "ROUGE-1"

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if not self.flag_grid:
            raise ValueError("flag_grid is empty")
        object.__setattr__(self, "flag_grid", tuple(dict.fromkeys(normalize_flags(f) for f in self.flag_grid)))
        for name in ("r_range", "alpha_range", "beta_range", "threshold_range"):
            frange(getattr(self, name))
        if self.word_limit < 1:
            raise ValueError("word_limit must be >= 1")
        if self.method in ("ilp_budget", "ilp_score", "title_filter_ilp") and \
                self.threshold_range[0] < self.word_limit:
            raise ValueError("threshold must be >= word_limit")

    def grid(self) -> list:
        """Grid points ``(flags, r, alpha, beta, threshold)`` in sweep order."""
        thresholds = [int(round(t)) for t in frange(self.threshold_range)]
        return list(itertools.product(self.flag_grid, frange(self.r_range), frange(self.alpha_range),
                                      frange(self.beta_range), thresholds))


@dataclass(frozen=True)
class ResultRow:
    method: str
    flags: str
    r: float
    alpha: float
    beta: float
    threshold: int
    metric: str
    recall: float
    precision: float
    f1: float
    avg_summary_len: float
    std_summary_len: float
    avg_sentence_len: float
    best: bool = False


def summarize_document(doc: Document, spec: SweepSpec, params: ScoringParams, threshold: int) -> tuple:
    """One summary plus the word counts of its selected sentences."""
    m, limit = spec.method, spec.word_limit
    if m in ("title_depth", "title_bfs", "title_filter_ilp"):
        tree = title_reduction(doc, doc.title_terms)
        if m == "title_depth":
            s = depth_summary(tree, doc, spec.depth, limit)
        elif m == "title_bfs":
            s = bfs_summary(tree, doc, limit)
        else:
            # an empty tree leaves nothing to filter to; fall back to the whole text
            reduced = title_filter(doc, tree) if tree.levels else doc
            s = ilp_summarize(reduced, build_term_matrix(reduced), "score", params, threshold, limit,
                              spec.node_limit, spec.norm_scope, spec.lp_backend)
            s = replace(s, method_tag="title_filter_ilp")
            return s, s.sentence_lengths(reduced)
        return s, s.sentence_lengths(doc)
    matrix = build_term_matrix(doc)
    if m == "greedy":
        s = greedy_summarize(doc, matrix, params, limit)
    else:
        s = ilp_summarize(doc, matrix, m[len("ilp_"):], params, threshold, limit,
                          spec.node_limit, spec.norm_scope, spec.lp_backend)
    return s, s.sentence_lengths(doc)


# worker state, set once per process
_STATE = {}


def _init_worker(dataset, rouge_config, stopwords):
    _STATE.clear()
    _STATE.update(dataset=dataset, config=rouge_config, stopwords=stopwords, docs={})


def _documents(flags: str) -> list:
    cache = _STATE["docs"]
    if flags not in cache:
        opts = PreprocessOptions.from_flags(flags)
        cache[flags] = [prepare_document(a, opts, _STATE["stopwords"]) for a in _STATE["dataset"].articles]
    return cache[flags]


def _run_point(spec: SweepSpec, point) -> list:
    flags, r, alpha, beta, threshold = point
    params = ScoringParams(spec.metric, alpha, beta, r, "D" in flags, "U" in flags)
    summaries, sent_lens = [], []
    for doc in _documents(flags):
        try:
            s, lens = summarize_document(doc, spec, params, threshold)
        except Exception:
            log.error("configuration %s aborted on document %s", point, doc.doc_id)
            raise
        summaries.append(s)
        sent_lens.extend(lens)
    report = evaluate_corpus(summaries, _STATE["dataset"], replace(_STATE["config"], bootstrap_samples=0))
    stats = length_stats(summaries)
    avg_sent = float(np.mean(sent_lens)) if sent_lens else 0.0
    return [ResultRow(spec.method, flags, r, alpha, beta, threshold, metric, sc.recall, sc.precision, sc.f1,
                      stats["avg"], stats["std"], avg_sent)
            for metric, sc in report.corpus_mean.items()]


def annotate_best(rows: list, headline_metric: str = "ROUGE-1", tol: float = 1e-12) -> list:
    """Mark every configuration whose headline F-1 ties the maximum within
    its (method, flags, threshold) group; ties are all reported.
    """
    key = lambda row: (row.method, row.flags, row.threshold)
    best = {}
    for row in rows:
        if row.metric == headline_metric:
            best[key(row)] = max(best.get(key(row), -math.inf), row.f1)
    winners = {(key(row), row.r, row.alpha, row.beta) for row in rows
               if row.metric == headline_metric and row.f1 >= best[key(row)] - tol}
    return [replace(row, best=(key(row), row.r, row.alpha, row.beta) in winners) for row in rows]


def run_sweep(spec: SweepSpec, dataset: Dataset, config: RougeConfig = RougeConfig(),
              workers: int = 1, stopwords=None) -> list:
    """Summarize and score every document at every grid point.

    Rows come back in grid order whatever the worker count.
    """
    if not dataset.references:
        raise DataError("dataset has no reference summaries")
    if spec.headline_metric not in config.metrics:
        raise ValueError(f"headline metric {spec.headline_metric} is not computed")
    points = spec.grid()
    if workers <= 1 or len(points) == 1:
        _init_worker(dataset, config, stopwords)
        chunks = [_run_point(spec, p) for p in points]
    else:
        with ProcessPoolExecutor(workers, initializer=_init_worker,
                                 initargs=(dataset, config, stopwords)) as pool:
            chunks = list(pool.map(_run_point, itertools.repeat(spec), points))
    rows = [row for chunk in chunks for row in chunk]
    return annotate_best(rows, spec.headline_metric)


def _cell(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def results_to_csv(rows: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    names = [f.name for f in fields(ResultRow)]
    w.writerow(names)
    for row in rows:
        w.writerow([_cell(getattr(row, n)) for n in names])
    return buf.getvalue()


def docs_as_summaries(dataset: Dataset, config: RougeConfig = RougeConfig(), title_filtered: bool = False,
                      options: PreprocessOptions = PreprocessOptions(), stopwords=None) -> RougeReport:
    """Score each whole document (or its title-reduced text) as a summary."""
    texts = {}
    for art in dataset.articles:
        if title_filtered:
            doc = prepare_document(art, options, stopwords)
            tree = title_reduction(doc, doc.title_terms)
            texts[art.doc_id] = title_filter(doc, tree).text() if tree.levels else ""
        else:
            texts[art.doc_id] = art.body_text
    return evaluate_texts(texts, dataset, replace(config, word_limit=None))


def pearson(x, y) -> float:
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    if x.shape != y.shape or x.size < 2:
        raise ValueError("need two aligned series of length >= 2")
    dx, dy = x - x.mean(), y - y.mean()
    sx, sy = math.sqrt(float(dx @ dx)), math.sqrt(float(dy @ dy))
    if sx == 0 or sy == 0:
        raise DegenerateVariance("correlation undefined for a constant series")
    return float(np.clip((dx @ dy) / (sx * sy), -1.0, 1.0))


def length_stats(summaries, scores=None) -> dict:
    """Mean and population std of summary word counts; with `scores`, also
    their Pearson correlation with those counts.
    """
    lengths = [s.word_count if isinstance(s, Summary) else float(s) for s in summaries]
    if not lengths:
        raise ValueError("no summaries")
    out = {"avg": float(np.mean(lengths)), "std": float(np.std(lengths))}
    if scores is not None:
        out["pearson"] = pearson(lengths, scores)
    return out


def sweep_correlation(rows: list, metric: str = "ROUGE-1", length_column: str = "avg_sentence_len") -> float:
    """Pearson correlation of a length column against f1 across configurations."""
    sel = [r for r in rows if r.metric == metric]
    return pearson([getattr(r, length_column) for r in sel], [r.f1 for r in sel])


_EDGE = re.compile(r"^[^0-9a-z]+|[^0-9a-z]+$")


def _words(doc) -> list:
    out = []
    for s in doc.sentences:
        for tok in s.surface_tokens:
            w = _EDGE.sub("", tok.lower())
            if w:
                out.append(w)
    return out


def export_frequencies(docs, top_n: int = 100, subtract=None) -> list:
    """``(word, count)`` pairs, count descending then word ascending."""
    if top_n < 1:
        raise ValueError("top_n must be >= 1")
    counts = Counter(w for d in docs for w in _words(d))
    if subtract:
        for w in {w for d in subtract for w in _words(d)}:
            counts.pop(w, None)
    return sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:top_n]
