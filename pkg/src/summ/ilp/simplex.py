"""Bounded-variable two-phase tableau simplex.

Variable bounds ``0 <= x <= u`` are handled by bound flips instead of
extra rows. Pricing is Bland's rule, or Dantzig's largest-coefficient rule
that drops back to Bland after a degenerate pivot so termination is still
guaranteed.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

LE, GE, EQ = "<=", ">=", "="


@dataclass
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded" | "iteration_limit"
    x: np.ndarray | None
    objective: float
    iterations: int


class _Tableau:
    def __init__(self, T, xb, basis, upper, at_upper):
        self.T = T            # R x N, B^-1 A
        self.xb = xb          # values of basic variables
        self.basis = basis
        self.upper = upper    # per-column upper bound (inf allowed)
        self.at_upper = at_upper

    def pivot(self, p, q):
        T = self.T
        T[p] /= T[p, q]
        col = T[:, q].copy()
        col[p] = 0.0
        T -= np.outer(col, T[p])

    def run(self, d, allowed, tol, max_iter, rule):
        """Maximize; `d` holds reduced costs and is updated in place."""
        T, xb, basis, upper, at_upper = self.T, self.xb, self.basis, self.upper, self.at_upper
        R = T.shape[0]
        it = 0
        bland = rule == "bland"
        while it < max_iter:
            improving = allowed & (((d > tol) & ~at_upper) | ((d < -tol) & at_upper))
            cand = np.nonzero(improving)[0]
            if cand.size == 0:
                return "optimal", it
            q = int(cand[0]) if bland else int(cand[np.argmax(np.abs(d[cand]))])
            delta = -1.0 if at_upper[q] else 1.0
            alpha = delta * T[:, q]
            t_best, p = upper[q], -1
            if R:
                ub_b = upper[basis]
                with np.errstate(divide="ignore", invalid="ignore"):
                    ratio = np.full(R, np.inf)
                    dec = alpha > tol
                    ratio[dec] = xb[dec] / alpha[dec]
                    inc = (alpha < -tol) & np.isfinite(ub_b)
                    ratio[inc] = (ub_b[inc] - xb[inc]) / (-alpha[inc])
                ratio = np.maximum(ratio, 0.0)
                rmin = ratio.min()
                if np.isfinite(rmin) and rmin < t_best - tol * max(1.0, abs(rmin)):
                    tied = np.nonzero(ratio <= rmin + tol * max(1.0, abs(rmin)))[0]
                    p = int(min(tied, key=lambda i: basis[i]))
                    t_best = ratio[p]
            if not np.isfinite(t_best):
                return "unbounded", it
            step = t_best * alpha
            xb -= step
            if p < 0:
                at_upper[q] = not at_upper[q]
            else:
                leaving = basis[p]
                at_upper[leaving] = alpha[p] < 0
                entering_val = (upper[q] if at_upper[q] else 0.0) + delta * t_best
                at_upper[q] = False
                self.pivot(p, q)
                d -= d[q] * T[p]
                basis[p] = q
                xb[p] = entering_val
            # degenerate step: switch to Bland until progress resumes
            bland = rule == "bland" or t_best <= tol
            it += 1
        return "iteration_limit", it

    def values(self, n_total):
        x = np.where(self.at_upper, self.upper, 0.0)
        x = np.where(np.isfinite(x), x, 0.0)
        x[self.basis] = self.xb
        return x[:n_total]


def solve_lp(c, A=None, senses=(), b=(), upper=None, tol: float = 1e-9,
             max_iter: int = 100_000, rule: str = "dantzig") -> LPResult:
    """Maximize ``c @ x`` subject to ``A x (senses) b`` and ``0 <= x <= upper``."""
    if rule not in ("bland", "dantzig"):
        raise ValueError(f"unknown pricing rule {rule!r}")
    c = np.asarray(c, dtype=float)
    n = c.size
    A = np.zeros((0, n)) if A is None else np.array(A, dtype=float).reshape(-1, n)
    b = np.array(b, dtype=float).reshape(-1)
    ub = np.full(n, np.inf) if upper is None else np.broadcast_to(np.asarray(upper, dtype=float), (n,)).copy()

    # rows flipped to make b >= 0; a ">= 0" row also flips, to "<= 0", so its slack starts feasible
    neg = (b < 0) | ((b == 0) & np.array([s == GE for s in senses], dtype=bool).reshape(-1))
    A[neg] *= -1
    b[neg] *= -1
    flip = {LE: GE, GE: LE, EQ: EQ}
    senses = [flip[s] if ng else s for s, ng in zip(senses, neg)]

    R = A.shape[0]
    n_slack = sum(s != EQ for s in senses)
    n_art = sum(s != LE for s in senses)
    N = n + n_slack + n_art
    T = np.zeros((R, N))
    T[:, :n] = A
    basis = np.empty(R, dtype=int)
    k_s, k_a = n, n + n_slack
    for i, s in enumerate(senses):
        if s == LE:
            T[i, k_s] = 1.0
            basis[i] = k_s
            k_s += 1
        else:
            if s == GE:
                T[i, k_s] = -1.0
                k_s += 1
            T[i, k_a] = 1.0
            basis[i] = k_a
            k_a += 1
    upper_all = np.concatenate([ub, np.full(n_slack + n_art, np.inf)])
    tab = _Tableau(T, b.copy(), basis, upper_all, np.zeros(N, dtype=bool))
    scale = max(1.0, float(np.abs(b).max(initial=0.0)))
    total = 0

    if n_art:
        art = np.arange(n + n_slack, N)
        cost1 = np.zeros(N)
        cost1[art] = -1.0
        d = cost1 - cost1[basis] @ T
        status, it = tab.run(d, np.ones(N, dtype=bool), tol, max_iter, rule)
        total += it
        if status == "iteration_limit":
            return LPResult(status, None, float("nan"), total)
        infeas = tab.xb[basis >= n + n_slack].sum()
        if infeas > tol * scale * 10:
            return LPResult("infeasible", None, float("nan"), total)
        keep = np.ones(R, dtype=bool)
        for i in range(R):
            if tab.basis[i] >= n + n_slack:
                nz = np.nonzero(np.abs(tab.T[i, :n + n_slack]) > tol)[0]
                if nz.size:
                    q = int(nz[0])
                    val = tab.upper[q] if tab.at_upper[q] else 0.0
                    tab.at_upper[q] = False
                    tab.pivot(i, q)
                    tab.basis[i] = q
                    tab.xb[i] = val
                else:
                    keep[i] = False
        N = n + n_slack
        tab = _Tableau(tab.T[keep][:, :N].copy(), tab.xb[keep].copy(), tab.basis[keep].copy(),
                       upper_all[:N], tab.at_upper[:N].copy())

    cost = np.zeros(N)
    cost[:n] = c
    d = cost - cost[tab.basis] @ tab.T
    status, it = tab.run(d, np.ones(N, dtype=bool), tol, max_iter, rule)
    total += it
    if status != "optimal":
        return LPResult(status, None, float("nan"), total)
    x = tab.values(n)
    return LPResult("optimal", x, float(c @ x), total)
