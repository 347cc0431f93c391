"""Depth-first branch-and-bound for 0/1 programs."""
from __future__ import annotations

import logging

import numpy as np

from .program import BinaryProgram, Solution
from .simplex import EQ, GE, LE, solve_lp

log = logging.getLogger(__name__)

TOL = 1e-9


def _violated(rel, slack):
    """Whether ``0 rel slack`` fails, i.e. a row with no free variables left is broken."""
    return (rel == LE and slack < -TOL) or (rel == GE and slack > TOL) or (rel == EQ and abs(slack) > TOL)


def _highs_lp(c, A, rels, b):
    from scipy.optimize import linprog

    ub_rows = [k for k, r in enumerate(rels) if r != EQ]
    eq_rows = [k for k, r in enumerate(rels) if r == EQ]
    sgn = np.array([1.0 if rels[k] == LE else -1.0 for k in ub_rows])
    res = linprog(
        -c,
        A_ub=A[ub_rows] * sgn[:, None] if ub_rows else None,
        b_ub=b[ub_rows] * sgn if ub_rows else None,
        A_eq=A[eq_rows] if eq_rows else None,
        b_eq=b[eq_rows] if eq_rows else None,
        bounds=(0, 1),
        method="highs",
    )
    if res.status == 2:
        return "infeasible", None, None
    if res.status != 0:
        return "error", None, None
    return "optimal", -res.fun, res.x


def _lp_bound(c, A, rels, b, fixed, backend="simplex"):
    """LP relaxation with the variables in `fixed` pinned to their value.

    Returns (status, objective, full x).
    """
    V = c.size
    free = np.array([k not in fixed for k in range(V)])
    xf = np.zeros(V)
    for k, v in fixed.items():
        xf[k] = v
    base = float(c @ xf)
    rhs = b - A @ xf
    Af = A[:, free]
    # rows with no free variable left are checked directly instead of handed to the LP
    live = np.abs(Af).sum(axis=1) > 0
    if any(_violated(rels[k], rhs[k]) for k in np.nonzero(~live)[0]):
        return "infeasible", None, None
    if not free.any():
        return "optimal", base, xf
    live_rels = [rels[k] for k in np.nonzero(live)[0]]
    if backend == "highs":
        status, obj, xs = _highs_lp(c[free], Af[live], live_rels, rhs[live])
    else:
        lp = solve_lp(c[free], Af[live], live_rels, rhs[live], upper=1.0, tol=TOL)
        status, obj, xs = lp.status, lp.objective, lp.x
    if status != "optimal":
        return status, None, None
    x = xf.copy()
    x[free] = xs
    return "optimal", base + obj, x


def solve_binary_program(model: BinaryProgram, node_limit: int = 200_000,
                         lp_backend: str = "simplex") -> Solution:
    """Exact optimum of `model` by LP-bounded depth-first branch-and-bound.

    Branches on the most fractional variable (lowest index on ties) and
    explores the child nearest the LP value first, so the search order is
    fully deterministic. ``lp_backend="highs"`` bounds nodes with scipy's
    HiGHS instead of the built-in simplex; it is much faster on large
    budget programs.
    """
    if lp_backend not in ("simplex", "highs"):
        raise ValueError(f"unknown lp_backend {lp_backend!r}")
    if model.V < 1:
        raise ValueError("program has no variables")
    sign = 1.0 if model.sense == "maximize" else -1.0
    c = sign * model.objective
    A, rels, b = model.matrix_form()

    # with integer coefficients every objective value is an integer, so bounds round down
    integral = bool(np.all(np.abs(c - np.round(c)) <= TOL))

    best_val, best_x = -np.inf, None
    nodes = 0
    stack = [{}]
    limited = False
    while stack:
        if nodes >= node_limit:
            limited = True
            break
        fixed = stack.pop()
        nodes += 1
        status, bound, x = _lp_bound(c, A, rels, b, fixed, lp_backend)
        if status != "optimal":
            continue
        if integral:
            bound = np.floor(bound + 1e-6)
        if best_x is not None and bound <= best_val + TOL * max(1.0, abs(best_val)):
            continue
        frac = np.abs(x - np.round(x))
        if frac.max() <= 1e-7:
            xi = np.round(x)
            if model.is_feasible(xi):
                val = float(c @ xi)
                if best_x is None or val > best_val + TOL * max(1.0, abs(best_val)):
                    best_val, best_x = val, xi
                continue
            # numerically integral but infeasible: branch on the first free variable
            free = [k for k in range(model.V) if k not in fixed]
            if not free:
                continue
            k = free[0]
            first = int(xi[k])
        else:
            # cheap primal heuristic: rounding all fractional values down, then up
            for xr in (np.floor(x + 1e-7), np.ceil(x - 1e-7)):
                if model.is_feasible(xr):
                    val = float(c @ xr)
                    if best_x is None or val > best_val + TOL * max(1.0, abs(best_val)):
                        best_val, best_x = val, xr
            if bound <= best_val + TOL * max(1.0, abs(best_val)):
                continue
            dist = np.abs(x - 0.5)
            k = int(np.argmin(dist))
            first = 1 if x[k] >= 0.5 else 0
        # push the preferred child last so it is popped first
        stack.append({**fixed, k: 1 - first})
        stack.append({**fixed, k: first})

    if best_x is None:
        status = "budget_exceeded_nodes" if limited else "infeasible"
        return Solution(status, None, float("nan"), nodes)
    if limited:
        log.warning("node limit %d reached; returning incumbent", node_limit)
    return Solution("budget_exceeded_nodes" if limited else "optimal",
                    best_x.astype(np.int64), model.value(best_x), nodes)
