"""The three summarization programs: set cover, budgeted coverage, score."""
from __future__ import annotations

import numpy as np

from ..textproc import TermSentenceMatrix
from .program import BinaryProgram, Solution
from .simplex import EQ, GE, LE


def _x_names(n):
    return tuple(f"x{i}" for i in range(n))


def build_set_cover_model(matrix: TermSentenceMatrix) -> BinaryProgram:
    """Fewest sentences such that every term occurs in one of them."""
    P = matrix.presence
    cons = [(P[j], GE, 1.0) for j in range(matrix.m)]
    return BinaryProgram("minimize", np.ones(matrix.n), cons, _x_names(matrix.n))


def build_budget_model(matrix: TermSentenceMatrix, costs, budget: int,
                       aggregate: bool = False) -> BinaryProgram:
    """Maximize covered terms with total sentence cost at most `budget`.

    Variables are x0..x{n-1} (sentences) then z0..z{m-1} (terms). A term
    counts as covered only if some selected sentence contains it.

    ``aggregate=True`` builds an equivalent smaller program: terms with the
    same set of sentences share one weighted variable, and terms found in a
    single sentence become objective weight on that sentence's variable.
    The optimum value and the optimal sentence sets are unchanged.
    """
    n, m = matrix.n, matrix.m
    costs = np.asarray(costs, dtype=float)
    if costs.shape != (n,):
        raise ValueError("need one cost per sentence")
    P = matrix.presence
    if aggregate:
        return _aggregated_budget_model(P, costs, budget)
    obj = np.concatenate([np.zeros(n), np.ones(m)])
    cons = []
    for j in range(m):
        row = np.zeros(n + m)
        row[:n] = P[j]
        row[n + j] = -1.0
        cons.append((row, GE, 0.0))
    cons.append((np.concatenate([costs, np.zeros(m)]), LE, float(budget)))
    names = _x_names(n) + tuple(f"z{j}" for j in range(m))
    return BinaryProgram("maximize", obj, cons, names)


def _aggregated_budget_model(P, costs, budget):
    m, n = P.shape
    groups = {}
    for j in range(m):
        groups.setdefault(P[j].tobytes(), []).append(j)
    x_obj = np.zeros(n)
    shared = []
    for key in sorted(groups, key=lambda k: groups[k][0]):
        row = P[groups[key][0]]
        if row.sum() == 1:
            x_obj[int(np.argmax(row))] += len(groups[key])
        else:
            shared.append((row, len(groups[key]), groups[key][0]))
    g = len(shared)
    obj = np.concatenate([x_obj, [w for _, w, _ in shared]])
    cons = []
    for k, (row, _, _) in enumerate(shared):
        r = np.zeros(n + g)
        r[:n] = row
        r[n + k] = -1.0
        cons.append((r, GE, 0.0))
    cons.append((np.concatenate([costs, np.zeros(g)]), LE, float(budget)))
    names = _x_names(n) + tuple(f"z{first}" for _, _, first in shared)
    return BinaryProgram("maximize", obj, cons, names)


def sentence_values(occurrence_weights: np.ndarray) -> np.ndarray:
    return np.asarray(occurrence_weights, dtype=float).sum(axis=0)


def build_score_model(matrix: TermSentenceMatrix, weights, costs, budget: int,
                      compact: bool = True) -> BinaryProgram:
    """Maximize summed (term, sentence) scores of selected sentences under a budget.

    `weights` is an (m, n) array of occurrence scores. Because every
    occurrence variable must equal its sentence variable, the compact form
    scores each sentence by its column sum; ``compact=False`` builds the
    explicit occurrence-variable program (useful only for checking).
    """
    n = matrix.n
    W = np.asarray(weights, dtype=float)
    costs = np.asarray(costs, dtype=float)
    if W.shape != (matrix.m, n) or costs.shape != (n,):
        raise ValueError("weights must be (m, n) and costs (n,)")
    if compact:
        return BinaryProgram("maximize", sentence_values(W), [(costs, LE, float(budget))], _x_names(n))

    pairs = [(j, i) for j, i in zip(*np.nonzero(matrix.counts > 0))]
    V = n + len(pairs)
    obj = np.zeros(V)
    cons = []
    for k, (j, i) in enumerate(pairs):
        obj[n + k] = W[j, i]
        row = np.zeros(V)
        row[n + k] = 1.0
        row[i] = -1.0
        cons.append((row, EQ, 0.0))
    cons.append((np.concatenate([costs, np.zeros(len(pairs))]), LE, float(budget)))
    names = _x_names(n) + tuple(f"a{j}_{i}" for j, i in pairs)
    return BinaryProgram("maximize", obj, cons, names)


def occurrence_assignment(matrix: TermSentenceMatrix, solution: Solution) -> np.ndarray:
    """Recover the (m, n) 0/1 occurrence selection from a compact score solution."""
    x = np.asarray(solution.assignment[:matrix.n], dtype=np.int64)
    return (matrix.counts > 0).astype(np.int64) * x[None, :]
