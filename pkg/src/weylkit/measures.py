"""Incomparability measures: operational, distansal, algebraic.

Three ways to price the failure of two spectra to be comparable:

* operational -- the minimal entropy production of a coarse-graining that
  lands one spectrum below the other.  All reachable posteriors of r form
  its lower cone, so the optimum over the intersection of the two lower
  cones is attained at the lattice meet and the measure collapses to
  S(meet) - max(S(r), S(s)).
* distansal -- the norm distance from r to the nearest spectrum above (or
  below) s in the majorization order, minimized over the four
  argument/direction combinations.  The feasible sets are convex chamber
  polytopes cut by prefix-sum constraints; Euclidean projections are solved
  by a primal active-set method, l1 projections by linear programming.
* algebraic -- one minus the best single-shot conversion probability in
  either direction, built from the classic suffix-sum ratio.

All three are nonnegative, symmetric, and vanish exactly on comparable
pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy.optimize import linprog

from .errors import MuOutOfRange, SolverDidNotConverge
from .spectra import EPS, Spectrum, _common, make_spectrum, meet, tail_sums
from .entropies import shannon

#: KKT/feasibility tolerance for the projection solvers.
SOLVER_TOL = 1e-9
SOLVER_MAX_ITER = 100_000


@dataclass(frozen=True)
class MeasureReport:
    """Value of a measure plus the spectrum achieving it.

    ``direction`` records which argument/direction attained a minimum when
    several were compared; ``method`` names the solver used.
    """

    measure: str
    value: float
    optimizer: Optional[Spectrum]
    direction: Optional[str]
    method: str

    def to_jsonable(self) -> dict:
        return {
            "measure": self.measure,
            "value": str(self.value) if isinstance(self.value, Fraction) else self.value,
            "optimizer": self.optimizer.to_jsonable() if self.optimizer else None,
            "direction": self.direction,
            "method": self.method,
        }


def _clamp_small(x: float) -> float:
    return 0.0 if abs(x) <= EPS else x


def majorization_cost(r: Spectrum, s: Spectrum) -> MeasureReport:
    """Minimal entropy increase that takes r below s in majorization order.

    The reachable posteriors of r are exactly its lower cone; intersecting
    with the lower cone of s and minimizing entropy lands on the meet by
    Schur-concavity, giving S(meet(r, s)) - S(r).
    """
    r, s = _common(r, s)
    best = meet(r, s)
    value = _clamp_small(shannon(best) - shannon(r))
    return MeasureReport("M", value, best, "r|s", "meet-closed-form")


def operational_incomparability(r: Spectrum, s: Spectrum) -> MeasureReport:
    """Symmetric entropy cost: S(meet) - max(S(r), S(s))."""
    r, s = _common(r, s)
    best = meet(r, s)
    s_r, s_s = shannon(r), shannon(s)
    value = _clamp_small(shannon(best) - max(s_r, s_s))
    direction = "r|s" if s_r >= s_s else "s|r"
    return MeasureReport("I_O", value, best, direction, "meet-closed-form")


# ---------------------------------------------------------------------------
# Distance measures: projection onto majorization cones inside the chamber.


def _cone_constraints(s: Spectrum, direction: str) -> tuple[np.ndarray, np.ndarray]:
    """Rows (G, h) with G x <= h describing the feasible set in R^d.

    Chamber rows: x_i >= x_{i+1}, x_d >= 0; cumulative rows pin the
    prefix sums against those of s -- from above for "descending"
    (s majorizes x), from below for "ascending" (x majorizes s).  The
    sum-to-one equality is handled separately.
    """
    d = s.d
    rows, rhs = [], []
    for i in range(d - 1):
        row = np.zeros(d)
        row[i + 1], row[i] = 1.0, -1.0
        rows.append(row)
        rhs.append(0.0)
    row = np.zeros(d)
    row[d - 1] = -1.0
    rows.append(row)
    rhs.append(0.0)
    cum = np.cumsum(s.as_floats())
    for j in range(d - 1):
        row = np.zeros(d)
        row[: j + 1] = 1.0
        if direction == "descending":
            rows.append(row)
            rhs.append(cum[j])
        else:
            rows.append(-row)
            rhs.append(-cum[j])
    return np.array(rows), np.array(rhs)


def _project_euclidean(y: np.ndarray, G: np.ndarray, h: np.ndarray, x0: np.ndarray) -> np.ndarray:
    """Euclidean projection of y onto {x : Gx <= h, sum x = 1}.

    Primal active-set method for the strictly convex projection QP.  The
    working set stays linearly independent automatically: a constraint in
    the row span of the current set has zero inner product with any step
    that preserves the set, so it can never block.
    """
    n = len(y)
    ones = np.ones((1, n))
    W: list[int] = []
    x = x0.copy()
    for _ in range(SOLVER_MAX_ITER):
        C = np.vstack([ones] + [G[i : i + 1] for i in W])
        target = np.concatenate([[1.0], h[W]])
        try:
            lam = np.linalg.solve(C @ C.T, C @ y - target)
        except np.linalg.LinAlgError as exc:
            raise SolverDidNotConverge(f"degenerate working set: {exc}") from exc
        x_new = y - C.T @ lam
        p = x_new - x
        if np.max(np.abs(p)) <= 1e-13:
            ineq_lams = lam[1:]
            if len(ineq_lams) == 0 or ineq_lams.min() >= -1e-12:
                return x_new
            W.pop(int(np.argmin(ineq_lams)))
            x = x_new
            continue
        alpha, blocker = 1.0, None
        gp = G @ p
        slack = h - G @ x
        for i in range(len(h)):
            if i in W or gp[i] <= 1e-13:
                continue
            step = slack[i] / gp[i]
            if step < alpha:
                alpha, blocker = max(step, 0.0), i
        x = x + alpha * p
        if blocker is not None:
            W.append(blocker)
        # alpha == 1 and no blocker: x == x_new, loop re-checks multipliers
    raise SolverDidNotConverge("active-set projection hit the iteration cap")


def _project_l1(y: np.ndarray, G: np.ndarray, h: np.ndarray) -> np.ndarray:
    """l1-optimal point of {x : Gx <= h, sum x = 1} nearest to y (LP)."""
    n = len(y)
    eye = np.eye(n)
    a_ub = np.block(
        [
            [eye, -eye],
            [-eye, -eye],
            [G, np.zeros_like(G)],
        ]
    )
    b_ub = np.concatenate([y, -y, h])
    a_eq = np.concatenate([np.ones(n), np.zeros(n)])[None, :]
    c = np.concatenate([np.zeros(n), np.ones(n)])
    bounds = [(None, None)] * n + [(0, None)] * n
    res = linprog(c, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=[1.0], bounds=bounds, method="highs")
    if not res.success:
        raise SolverDidNotConverge(f"l1 projection LP failed: {res.message}")
    return res.x[:n]


def _check_solution(x: np.ndarray, G: np.ndarray, h: np.ndarray) -> None:
    violation = float(np.max(G @ x - h, initial=0.0))
    drift = abs(float(x.sum()) - 1.0)
    if violation > SOLVER_TOL or drift > SOLVER_TOL:
        raise SolverDidNotConverge(
            f"projection infeasible beyond tolerance (violation {violation}, sum drift {drift})"
        )


def majorization_distance(
    r: Spectrum, s: Spectrum, direction: str, norm: str = "euclidean"
) -> MeasureReport:
    """Distance from r to the nearest chamber point above or below s.

    ``ascending`` moves r up until it majorizes s; ``descending`` moves it
    down until s majorizes it.  ``norm`` is "euclidean" or "trace"; the
    trace option minimizes the l1 distance and reports the full l1 value
    (the trace distance is half of it).
    """
    if direction not in ("ascending", "descending"):
        raise ValueError(f"direction must be ascending/descending, got {direction!r}")
    if norm not in ("euclidean", "trace"):
        raise ValueError(f"norm must be euclidean/trace, got {norm!r}")
    r, s = _common(r, s)
    y = r.as_floats()
    G, h = _cone_constraints(s, direction)
    if float(np.max(G @ y - h, initial=0.0)) <= EPS:
        # already on the right side of s
        method = "feasible-at-start"
        return MeasureReport(f"D_{direction}", 0.0, r, direction, method)
    if norm == "euclidean":
        x = _project_euclidean(y, G, h, s.as_floats())
        _check_solution(x, G, h)
        value = float(np.linalg.norm(x - y))
        method = "active-set-qp"
    else:
        x = _project_l1(y, G, h)
        _check_solution(x, G, h)
        value = float(np.abs(x - y).sum())
        method = "linprog-highs (l1; trace distance = value/2)"
    optimizer = make_spectrum(np.maximum(x, 0.0), normalize=True)
    return MeasureReport(f"D_{direction}", value, optimizer, direction, method)


def incomparability_distance(r: Spectrum, s: Spectrum, norm: str = "euclidean") -> MeasureReport:
    """Minimum over the four directed majorization distances; symmetric."""
    candidates = []
    for who, (a, b) in (("r|s", (r, s)), ("s|r", (s, r))):
        for direction in ("ascending", "descending"):
            rep = majorization_distance(a, b, direction, norm)
            candidates.append((rep.value, f"{direction}({who})", rep))
    value, label, best = min(candidates, key=lambda t: t[0])
    return MeasureReport("I_D", value, best.optimizer, label, best.method)


# ---------------------------------------------------------------------------
# Algebraic measure.


def conversion_probability(target: Spectrum, source: Spectrum):
    """Optimal single-shot probability of converting source into target.

    Computed as min_j A'_j(source) / A'_j(target) over suffix sums with
    positive denominator (zero denominators, including 0/0, are skipped:
    those indices place no constraint).  Equals 1 iff target majorizes
    source.  Exact inputs give an exact rational.
    """
    target, source = _common(target, source)
    a_t = tail_sums(target)
    a_s = tail_sums(source)
    floor = 0 if (target.is_exact and source.is_exact) else EPS
    best = None
    for num, den in zip(a_s, a_t):
        if den <= floor:
            continue
        ratio = num / den
        if best is None or ratio < best:
            best = ratio
    return best if best is not None else 1


def algebraic_incomparability(r: Spectrum, s: Spectrum):
    """1 - max of the two conversion probabilities; in [0, 1)."""
    q_rs = conversion_probability(r, s)
    q_sr = conversion_probability(s, r)
    return 1 - max(q_rs, q_sr)


def feng_stretch(r: Spectrum, mu) -> Spectrum:
    """Peak-enhancing stretch (1 - mu + mu r_1, mu r_2, ..., mu r_d).

    The first weight grows while the rest shrink, so the result stays
    sorted.  With mu = conversion_probability(r, s) the stretched spectrum
    majorizes s with a prefix-sum coincidence.
    """
    if not 0 <= mu <= 1:
        raise MuOutOfRange(f"stretch parameter {mu} outside [0, 1]")
    if r.is_exact and not isinstance(mu, float):
        mu = Fraction(mu)
        head = 1 - mu + mu * r.weights[0]
    else:
        mu = float(mu)
        head = 1.0 - mu + mu * float(r.weights[0])
    rest = [mu * w for w in r.weights[1:]]
    return make_spectrum([head] + rest, normalize=False)
