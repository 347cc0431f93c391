"""Term weights (tf^alpha * idf^beta and friends) and sentence scores."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .textproc import TermSentenceMatrix

log = logging.getLogger(__name__)

METRICS = ("tfidf", "stfidf", "tf")


@dataclass(frozen=True)
class ScoringParams:
    metric: str = "tfidf"
    alpha: float = 1.0
    beta: float = 1.0
    r: float = 0.0
    distinct: bool = False
    update_on_fly: bool = False

    def __post_init__(self):
        if self.metric not in METRICS:
            raise ValueError(f"unknown metric {self.metric!r}")
        for name in ("alpha", "beta", "r"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")


@dataclass(frozen=True, eq=False)
class TermWeights:
    """Weights aligned with ``matrix.terms``.

    ``values`` has shape (m,) for document scope and (m, n) for
    per-sentence scope.
    """

    values: np.ndarray
    scope: str = "document"

    def as_dict(self, terms) -> dict:
        if self.scope != "document":
            raise ValueError("per-sentence weights have no single value per term")
        return dict(zip(terms, self.values.tolist()))


def inverse_document_frequency(matrix: TermSentenceMatrix, log_fn=np.log) -> TermWeights:
    df = (matrix.counts > 0).sum(axis=1)
    return TermWeights(log_fn(matrix.n / df))


def term_frequency(matrix: TermSentenceMatrix, scope: str = "document") -> TermWeights:
    if scope == "document":
        return TermWeights(matrix.counts.sum(axis=1).astype(float))
    if scope == "per_sentence":
        return TermWeights(matrix.counts.astype(float), "per_sentence")
    raise ValueError(f"unknown scope {scope!r}")


def _power(base: np.ndarray, exponent: float) -> np.ndarray:
    # 0**0 == 1 in numpy, which is the convention we want
    with np.errstate(divide="ignore"):
        return np.power(base, exponent)


def combined_score(tf: TermWeights, idf: TermWeights, params: ScoringParams) -> TermWeights:
    """tf^alpha * idf^beta, elementwise (idf broadcast over sentences)."""
    tfv = np.asarray(tf.values, dtype=float)
    idfv = np.asarray(idf.values, dtype=float)
    present = tfv > 0
    if tf.scope == "document" and params.alpha < 0 and not present.all():
        raise DomainError("negative alpha with a zero term frequency")

    if tf.scope == "per_sentence":
        # absent (term, sentence) pairs stay 0 whatever alpha is
        tf_part = np.where(present, _power(np.where(present, tfv, 1.0), params.alpha), 0.0)
    else:
        tf_part = _power(tfv, params.alpha)

    if params.metric == "tf":
        return TermWeights(tf_part, tf.scope)

    zero_idf = idfv == 0
    if params.beta < 0 and zero_idf.any():
        log.warning("%d terms with idf=0 under negative beta scored 0", int(zero_idf.sum()))
        idf_part = np.where(zero_idf, 0.0, _power(np.where(zero_idf, 1.0, idfv), params.beta))
    else:
        idf_part = _power(idfv, params.beta)
    if tf.scope == "per_sentence":
        idf_part = idf_part[:, None]
    return TermWeights(tf_part * idf_part, tf.scope)


def term_weights(matrix: TermSentenceMatrix, params: ScoringParams) -> TermWeights:
    """Weights for `params.metric` computed on `matrix`."""
    scope = "per_sentence" if params.metric == "stfidf" else "document"
    return combined_score(term_frequency(matrix, scope), inverse_document_frequency(matrix), params)


def _weight_matrix(matrix: TermSentenceMatrix, weights: TermWeights, distinct: bool) -> np.ndarray:
    mult = matrix.presence if distinct else matrix.counts
    w = weights.values if weights.scope == "per_sentence" else weights.values[:, None]
    return mult * w


def sentence_raw_score(i: int, matrix: TermSentenceMatrix, weights: TermWeights, distinct: bool = False) -> float:
    col = matrix.presence[:, i] if distinct else matrix.counts[:, i]
    w = weights.values[:, i] if weights.scope == "per_sentence" else weights.values
    return float(col @ w)


def sentence_raw_scores(matrix: TermSentenceMatrix, weights: TermWeights, distinct: bool = False) -> np.ndarray:
    """Raw scores of all sentences at once."""
    return _weight_matrix(matrix, weights, distinct).sum(axis=0)


def occurrence_weights(matrix: TermSentenceMatrix, weights: TermWeights, distinct: bool = False) -> np.ndarray:
    """Per (term, sentence) contributions whose column sums are the raw scores."""
    return _weight_matrix(matrix, weights, distinct)


def r_normalize(raw, length, r: float):
    """raw / length**r. Works elementwise on arrays."""
    if np.any(np.asarray(length) < 1):
        raise DomainError("sentence length must be >= 1")
    if r == 0:
        return raw
    if isinstance(length, np.ndarray):
        return raw / np.power(length.astype(float), r)
    return raw / float(length) ** r
