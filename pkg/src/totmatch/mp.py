"""Linear and integer programming layer used by every model in the toolkit.

ModelSpec is a plain row/column description that supports appending
variables (columns) and constraints (cuts) to an existing model. Solving
is delegated to HiGHS through scipy behind this contract; dual values are
reported in the convention d(objective)/d(rhs) of the problem as stated
(so a binding `x <= 1` in `max x` has dual +1).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import sparse
from scipy.optimize import Bounds, LinearConstraint, linprog, milp

from .errors import NodeLimitExceededError, SolverError

FEAS_TOL = 1e-6
INT_TOL = 1e-6

LE, EQ, GE = "<=", "=", ">="

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class _Constraint:
    coeffs: dict
    relation: str
    rhs: float
    name: str


class ModelSpec:
    """Mutable LP/MIP description: variables, one objective, rows."""

    def __init__(self, name="model", sense="min"):
        if sense not in ("min", "max"):
            raise ValueError("sense must be 'min' or 'max'")
        self.name = name
        self.sense = sense
        self.var_names = []
        self.lb = []
        self.ub = []
        self.integer = []
        self.obj = []
        self.constraints = []

    @property
    def num_vars(self):
        return len(self.var_names)

    @property
    def num_constraints(self):
        return len(self.constraints)

    def add_variable(self, name=None, lb=0.0, ub=None, integer=False, obj=0.0):
        """Append a variable; returns its column index."""
        u = np.inf if ub is None else float(ub)
        l = -np.inf if lb is None else float(lb)
        if l > u:
            raise ValueError(f"variable {name!r}: lower bound {l} > upper bound {u}")
        j = len(self.var_names)
        self.var_names.append(name if name is not None else f"x{j}")
        self.lb.append(l)
        self.ub.append(u)
        self.integer.append(bool(integer))
        self.obj.append(float(obj))
        return j

    def add_column(self, name=None, obj=0.0, entries=None, lb=0.0, ub=None,
                   integer=False):
        """Append a variable together with its coefficients in existing rows."""
        j = self.add_variable(name, lb=lb, ub=ub, integer=integer, obj=obj)
        for row, coef in (entries or {}).items():
            self.constraints[row].coeffs[j] = float(coef)
        return j

    def add_constraint(self, coeffs, relation, rhs, name=None):
        """Append a row; coeffs maps variable index -> coefficient."""
        if relation not in (LE, EQ, GE):
            raise ValueError(f"relation must be one of {LE!r}, {EQ!r}, {GE!r}")
        for j in coeffs:
            if not 0 <= j < self.num_vars:
                raise ValueError(f"constraint references undeclared variable {j}")
        i = len(self.constraints)
        self.constraints.append(
            _Constraint({int(j): float(c) for j, c in coeffs.items()}, relation,
                        float(rhs), name if name is not None else f"c{i}")
        )
        return i

    def _matrix(self):
        rows, cols, vals = [], [], []
        for i, con in enumerate(self.constraints):
            for j, c in con.coeffs.items():
                rows.append(i)
                cols.append(j)
                vals.append(c)
        return sparse.csc_matrix(
            (vals, (rows, cols)), shape=(self.num_constraints, self.num_vars)
        )


@dataclass
class Solution:
    """Solver output: status, objective, primal point, LP row duals."""

    status: str
    objective: float = float("nan")
    x: np.ndarray = None
    duals: np.ndarray = None
    # duals of active variable bounds, same sign convention as row duals;
    # kept so strong duality can be checked on models with finite bounds
    bound_duals_lower: np.ndarray = None
    bound_duals_upper: np.ndarray = None
    var_names: list = field(default_factory=list)

    def value(self, j):
        return float(self.x[j])

    def dual(self, i):
        return float(self.duals[i])


def _row_residuals(spec, x):
    A = spec._matrix()
    ax = A.dot(x)
    worst = 0.0
    for i, con in enumerate(spec.constraints):
        if con.relation == LE:
            worst = max(worst, ax[i] - con.rhs)
        elif con.relation == GE:
            worst = max(worst, con.rhs - ax[i])
        else:
            worst = max(worst, abs(ax[i] - con.rhs))
    return worst


def _empty_model_solution(spec):
    for con in spec.constraints:
        lhs = 0.0
        ok = (
            lhs <= con.rhs + FEAS_TOL
            if con.relation == LE
            else lhs >= con.rhs - FEAS_TOL
            if con.relation == GE
            else abs(lhs - con.rhs) <= FEAS_TOL
        )
        if not ok:
            return Solution(INFEASIBLE, var_names=[])
    return Solution(
        OPTIMAL,
        objective=0.0,
        x=np.zeros(0),
        duals=np.zeros(spec.num_constraints),
        bound_duals_lower=np.zeros(0),
        bound_duals_upper=np.zeros(0),
        var_names=[],
    )


def solve_lp(spec: ModelSpec) -> Solution:
    """Solve the LP relaxation (integrality flags ignored) with duals."""
    if spec.num_vars == 0:
        return _empty_model_solution(spec)
    nv = spec.num_vars
    c = np.array(spec.obj, dtype=float)
    sign = 1.0 if spec.sense == "min" else -1.0
    A = spec._matrix()
    ub_rows, eq_rows = [], []
    for i, con in enumerate(spec.constraints):
        (eq_rows if con.relation == EQ else ub_rows).append(i)
    A_ub = b_ub = A_eq = b_eq = None
    ub_sign = {}
    if ub_rows:
        blocks, rhs = [], []
        for i in ub_rows:
            s = 1.0 if spec.constraints[i].relation == LE else -1.0
            ub_sign[i] = s
            blocks.append(s * A[i])
            rhs.append(s * spec.constraints[i].rhs)
        A_ub = sparse.vstack(blocks, format="csc")
        b_ub = np.array(rhs)
    if eq_rows:
        A_eq = sparse.vstack([A[i] for i in eq_rows], format="csc")
        b_eq = np.array([spec.constraints[i].rhs for i in eq_rows])
    res = linprog(
        c=sign * c,
        A_ub=A_ub,
        b_ub=b_ub,
        A_eq=A_eq,
        b_eq=b_eq,
        bounds=list(zip(spec.lb, spec.ub)),
        method="highs",
    )
    if res.status == 2:
        return Solution(INFEASIBLE, var_names=list(spec.var_names))
    if res.status == 3:
        return Solution(UNBOUNDED, var_names=list(spec.var_names))
    if res.status != 0:
        raise SolverError(f"LP solve failed: {res.message}")
    x = np.asarray(res.x, dtype=float)
    worst = _row_residuals(spec, x)
    if worst > FEAS_TOL * max(1.0, np.abs(x).max(initial=0.0)):
        raise SolverError(f"LP solution violates feasibility tolerance ({worst:.2e})")
    duals = np.zeros(spec.num_constraints)
    if ub_rows:
        marg = np.asarray(res.ineqlin.marginals, dtype=float)
        for k, i in enumerate(ub_rows):
            # scipy marginal is d(min obj)/d(converted rhs); undo both the
            # row sign flip and the max->min objective flip
            duals[i] = sign * ub_sign[i] * marg[k]
    if eq_rows:
        marg = np.asarray(res.eqlin.marginals, dtype=float)
        for k, i in enumerate(eq_rows):
            duals[i] = sign * marg[k]
    lower = sign * np.asarray(res.lower.marginals, dtype=float) if nv else np.zeros(0)
    upper = sign * np.asarray(res.upper.marginals, dtype=float) if nv else np.zeros(0)
    return Solution(
        OPTIMAL,
        objective=float(c @ x),
        x=x,
        duals=duals,
        bound_duals_lower=lower,
        bound_duals_upper=upper,
        var_names=list(spec.var_names),
    )


def solve_mip(spec: ModelSpec, node_limit=None, time_limit=None) -> Solution:
    """Solve to proven integer optimality (relative gap pinned to 0)."""
    if spec.num_vars == 0:
        return _empty_model_solution(spec)
    nv = spec.num_vars
    c = np.array(spec.obj, dtype=float)
    sign = 1.0 if spec.sense == "min" else -1.0
    constraints = []
    if spec.num_constraints:
        lo, hi = [], []
        for con in spec.constraints:
            if con.relation == LE:
                lo.append(-np.inf)
                hi.append(con.rhs)
            elif con.relation == GE:
                lo.append(con.rhs)
                hi.append(np.inf)
            else:
                lo.append(con.rhs)
                hi.append(con.rhs)
        constraints = LinearConstraint(spec._matrix(), lo, hi)
    options = {"mip_rel_gap": 0.0}
    if node_limit is not None:
        options["node_limit"] = int(node_limit)
    if time_limit is not None:
        options["time_limit"] = float(time_limit)
    res = milp(
        c=sign * c,
        constraints=constraints,
        integrality=np.array(spec.integer, dtype=np.uint8),
        bounds=Bounds(np.array(spec.lb), np.array(spec.ub)),
        options=options,
    )
    if res.status == 2:
        return Solution(INFEASIBLE, var_names=list(spec.var_names))
    if res.status == 3:
        return Solution(UNBOUNDED, var_names=list(spec.var_names))
    hit_limit = res.status == 1 or (
        res.status == 4 and "limit" in str(res.message).lower()
    )
    if hit_limit:
        bound = None
        if getattr(res, "mip_dual_bound", None) is not None:
            bound = sign * res.mip_dual_bound
        raise NodeLimitExceededError(
            f"MIP stopped at its node/time limit: {res.message}",
            incumbent=res.x,
            bound=bound,
        )
    if res.status != 0 or res.x is None:
        raise SolverError(f"MIP solve failed: {res.message}")
    x = np.asarray(res.x, dtype=float)
    for j in range(nv):
        if spec.integer[j]:
            r = round(x[j])
            if abs(x[j] - r) > 1e-5:
                raise SolverError(f"integer variable {spec.var_names[j]} at {x[j]}")
            x[j] = r
    worst = _row_residuals(spec, x)
    if worst > 1e-5 * max(1.0, np.abs(x).max(initial=0.0)):
        raise SolverError(f"MIP solution violates feasibility tolerance ({worst:.2e})")
    return Solution(
        OPTIMAL, objective=float(c @ x), x=x, var_names=list(spec.var_names)
    )


def dual_objective(spec: ModelSpec, sol: Solution) -> float:
    """Dual objective value of an optimal LP Solution, bound terms included."""
    val = sum(sol.duals[i] * con.rhs for i, con in enumerate(spec.constraints))
    for j in range(spec.num_vars):
        if np.isfinite(spec.lb[j]):
            val += sol.bound_duals_lower[j] * spec.lb[j]
        if np.isfinite(spec.ub[j]):
            val += sol.bound_duals_upper[j] * spec.ub[j]
    return float(val)


def write_lp_file(spec: ModelSpec, path: str):
    """Human-readable LP-format dump of a model, for debugging."""

    def term(c, name, first):
        s = "" if first else (" + " if c >= 0 else " - ")
        if not first:
            c = abs(c)
        return f"{s}{c:g} {name}"

    with open(path, "w") as f:
        f.write("\\ model: %s\n" % spec.name)
        f.write("Minimize\n" if spec.sense == "min" else "Maximize\n")
        parts = [
            term(c, spec.var_names[j], not j)
            for j, c in enumerate(spec.obj)
            if c or not j
        ]
        f.write(" obj: " + ("".join(parts) if parts else "0") + "\n")
        f.write("Subject To\n")
        for con in spec.constraints:
            body = ""
            for k, (j, c) in enumerate(sorted(con.coeffs.items())):
                body += term(c, spec.var_names[j], not k)
            f.write(f" {con.name}: {body} {con.relation} {con.rhs:g}\n")
        f.write("Bounds\n")
        for j in range(spec.num_vars):
            lo = "-inf" if not np.isfinite(spec.lb[j]) else f"{spec.lb[j]:g}"
            hi = "+inf" if not np.isfinite(spec.ub[j]) else f"{spec.ub[j]:g}"
            f.write(f" {lo} <= {spec.var_names[j]} <= {hi}\n")
        ints = [spec.var_names[j] for j in range(spec.num_vars) if spec.integer[j]]
        if ints:
            f.write("General\n " + " ".join(ints) + "\n")
        f.write("End\n")
