"""0/1 linear programs, their solutions, and LP-format export."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .simplex import EQ, GE, LE

RELATIONS = (LE, GE, EQ)


@dataclass(frozen=True, eq=False)
class BinaryProgram:
    """``sense`` objective over binary variables subject to linear rows.

    ``constraints`` is a list of ``(coeffs, relation, rhs)`` triples.
    """

    sense: str
    objective: np.ndarray
    constraints: list = field(default_factory=list)
    variable_names: tuple = ()

    def __post_init__(self):
        if self.sense not in ("minimize", "maximize"):
            raise ValueError(f"unknown sense {self.sense!r}")
        obj = np.asarray(self.objective, dtype=float)
        object.__setattr__(self, "objective", obj)
        V = obj.size
        if not self.variable_names:
            object.__setattr__(self, "variable_names", tuple(f"v{k}" for k in range(V)))
        if len(self.variable_names) != V:
            raise ValueError("variable_names length differs from objective")
        rows = []
        for coeffs, rel, rhs in self.constraints:
            coeffs = np.asarray(coeffs, dtype=float)
            if coeffs.shape != (V,):
                raise ValueError("constraint length differs from variable count")
            if rel not in RELATIONS:
                raise ValueError(f"unknown relation {rel!r}")
            if not (np.isfinite(coeffs).all() and np.isfinite(rhs)):
                raise ValueError("non-finite coefficient")
            rows.append((coeffs, rel, float(rhs)))
        object.__setattr__(self, "constraints", rows)
        if not np.isfinite(obj).all():
            raise ValueError("non-finite objective coefficient")

    @property
    def V(self) -> int:
        return self.objective.size

    def matrix_form(self):
        """(A, relations, rhs) with one row per constraint."""
        if not self.constraints:
            return np.zeros((0, self.V)), [], np.zeros(0)
        A = np.vstack([c for c, _, _ in self.constraints])
        return A, [r for _, r, _ in self.constraints], np.array([b for _, _, b in self.constraints])

    def is_feasible(self, x, tol: float = 1e-9) -> bool:
        x = np.asarray(x, dtype=float)
        for coeffs, rel, rhs in self.constraints:
            lhs = float(coeffs @ x)
            if rel == LE and lhs > rhs + tol:
                return False
            if rel == GE and lhs < rhs - tol:
                return False
            if rel == EQ and abs(lhs - rhs) > tol:
                return False
        return True

    def value(self, x) -> float:
        return float(self.objective @ np.asarray(x, dtype=float))


@dataclass(frozen=True, eq=False)
class Solution:
    status: str  # "optimal" | "infeasible" | "budget_exceeded_nodes"
    assignment: np.ndarray | None
    objective_value: float
    nodes_explored: int

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"

    def selected(self, names=None) -> list:
        """Indices (or names) of variables set to 1."""
        if self.assignment is None:
            return []
        idx = [int(k) for k in np.nonzero(self.assignment > 0.5)[0]]
        return [names[k] for k in idx] if names is not None else idx


def _lp_expr(coeffs, names) -> str:
    parts = []
    for a, name in zip(coeffs, names):
        if a == 0:
            continue
        sign = "-" if a < 0 else "+"
        mag = abs(a)
        term = name if mag == 1 else f"{mag:.12g} {name}"
        parts.append(f"{sign} {term}")
    if not parts:
        return "0 " + names[0] if names else "0"
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else s


def to_lp_format(model: BinaryProgram) -> str:
    """CPLEX LP text for cross-checking with external solvers."""
    names = list(model.variable_names)
    lines = ["Minimize" if model.sense == "minimize" else "Maximize"]
    lines.append(" obj: " + _lp_expr(model.objective, names))
    lines.append("Subject To")
    for k, (coeffs, rel, rhs) in enumerate(model.constraints):
        lines.append(f" c{k}: {_lp_expr(coeffs, names)} {rel} {rhs:.12g}")
    lines.append("Binary")
    lines.extend(f" {n}" for n in names)
    lines.append("End")
    return "\n".join(lines) + "\n"


def write_lp(model: BinaryProgram, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(to_lp_format(model))


def read_solution(text: str, model: BinaryProgram) -> Solution:
    """Import an external solver's answer: ``name value`` per line.

    Missing variables default to 0; the objective is recomputed here so a
    foreign solution can be checked against ours.
    """
    pos = {n: k for k, n in enumerate(model.variable_names)}
    x = np.zeros(model.V)
    for line in text.splitlines():
        parts = line.split()
        if len(parts) >= 2 and parts[0] in pos:
            x[pos[parts[0]]] = round(float(parts[1]))
    status = "optimal" if model.is_feasible(x) else "infeasible"
    return Solution(status, x, model.value(x), 0)
