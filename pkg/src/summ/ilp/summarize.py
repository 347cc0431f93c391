"""ILP-backed summarizers: solve with a (slack) budget, then truncate."""
from __future__ import annotations

import logging

import numpy as np

from ..errors import SolverError
from ..greedy import Summary, make_summary
from ..scoring import ScoringParams, occurrence_weights, term_weights
from ..textproc import Document, TermSentenceMatrix
from .bnb import solve_binary_program
from .models import build_budget_model, build_score_model, build_set_cover_model

log = logging.getLogger(__name__)

FORMULATIONS = ("set_cover", "budget", "score")
NORM_SCOPES = ("sentence", "none")


def score_weights(doc: Document, matrix: TermSentenceMatrix, params: ScoringParams,
                  norm_scope: str = "sentence") -> np.ndarray:
    """(m, n) occurrence scores for the score program.

    Each occurrence carries its term's combined score; a sentence's whole
    column is divided by |s|^r so normalization acts on the sentence sum.
    """
    if norm_scope not in NORM_SCOPES:
        raise ValueError(f"unknown norm_scope {norm_scope!r}")
    W = occurrence_weights(matrix, term_weights(matrix, params), params.distinct)
    if norm_scope == "sentence" and params.r != 0:
        lengths = np.array([doc.sentence_length(i) for i in range(doc.n)], dtype=float)
        W = W / np.power(lengths, params.r)[None, :]
    return W


def ilp_summarize(doc: Document, matrix: TermSentenceMatrix, formulation: str = "score",
                  params: ScoringParams = ScoringParams(), threshold: int = 100,
                  final_limit: int = 100, node_limit: int = 200_000,
                  norm_scope: str = "sentence", lp_backend: str = "simplex") -> Summary:
    if formulation not in FORMULATIONS:
        raise ValueError(f"unknown formulation {formulation!r}")
    if formulation != "set_cover" and threshold < final_limit:
        raise ValueError("threshold must be >= final_limit")
    costs = np.array([s.word_count for s in doc.sentences], dtype=float)
    if formulation == "set_cover":
        model = build_set_cover_model(matrix)
    elif formulation == "budget":
        model = build_budget_model(matrix, costs, threshold, aggregate=True)
    else:
        model = build_score_model(matrix, score_weights(doc, matrix, params, norm_scope), costs, threshold)

    sol = solve_binary_program(model, node_limit=node_limit, lp_backend=lp_backend)
    if sol.status == "infeasible":
        raise SolverError(f"{formulation} program infeasible for {doc.doc_id}")
    if sol.assignment is None:
        raise SolverError(f"node limit hit without a feasible solution for {doc.doc_id}")
    if not sol.optimal:
        log.warning("%s: using incumbent after node limit", doc.doc_id)
    eligible = matrix.eligible
    chosen = [i for i in range(doc.n) if sol.assignment[i] > 0.5 and eligible[i]]
    tag = f"ilp_{formulation}"
    return make_summary(doc, chosen, final_limit, tag)
