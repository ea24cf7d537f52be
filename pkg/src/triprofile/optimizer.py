"""Constrained maximization over three-component clique-like structures.

The objective

    F(x, y) = sum_j x_j^3 (3 - a - 3(3-a) y_j - 3(a-1) y_j^2) + 3 x_j^2 y_j

with x on the 3-simplex and relative degrees y_j in (1/2, 1] is the limit
value of (co-cherry density) - a * (triangle density) over graphons made of
three components with zero co-triangle density.  For a in (2, 1+sqrt(2)) its
maximum has the closed form

    (-a^6 + 6a^5 - 9a^4 - 4a^3 + 96a - 80) / (144 (a-1)),

attained at x = (sigma, sigma, 1-2 sigma) with sigma = (5-(a-1)^2)/12.  This
module evaluates the objective, enumerates all closed-form stationary
candidates of the case analysis, and independently verifies the maximum with
a simplex grid search plus local refinement.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from . import boundary
from .errors import DomainError

log = logging.getLogger(__name__)

__all__ = [
    "ALPHA_LO",
    "ALPHA_HI",
    "FeasiblePoint",
    "Candidate",
    "OptimizationResult",
    "validate_alpha",
    "objective",
    "stationary_y",
    "closed_form_max",
    "optimal_sigma",
    "analytic_candidates",
    "maximize_grid",
    "stationarity_residual",
]

ALPHA_LO = 2.0
ALPHA_HI = 1.0 + math.sqrt(2.0)
_SUM_TOL = 1e-12


def validate_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not (ALPHA_LO < alpha < ALPHA_HI):
        raise DomainError(
            f"alpha must lie strictly inside ({ALPHA_LO:g}, 1+sqrt(2)) (got {alpha!r})")
    return alpha


@dataclass(frozen=True)
class FeasiblePoint:
    """A point of the relaxed feasible set: x on the simplex, y in [1/2, 1]."""

    x: tuple
    y: tuple

    def __post_init__(self):
        if len(self.x) != 3 or len(self.y) != 3:
            raise DomainError("feasible points have three x and three y coordinates")
        if min(self.x) < -_SUM_TOL:
            raise DomainError("x coordinates must be nonnegative")
        if abs(sum(self.x) - 1.0) > _SUM_TOL:
            raise DomainError("x coordinates must sum to 1")
        if min(self.y) < 0.5 - _SUM_TOL or max(self.y) > 1.0 + _SUM_TOL:
            raise DomainError("y coordinates must lie in [1/2, 1]")

    @property
    def strictly_feasible(self) -> bool:
        """Whether all y_j lie in the open-bottom interval (1/2, 1]."""
        return min(self.y) > 0.5


@dataclass(frozen=True)
class Candidate:
    """A closed-form stationary candidate from the case analysis."""

    label: str
    point: FeasiblePoint
    value: float
    attains_max: bool = False


@dataclass(frozen=True)
class OptimizationResult:
    best: FeasiblePoint
    value: float
    analytic_value: float
    candidates: tuple
    stationarity_residual: float

    def __post_init__(self):
        if self.value > self.analytic_value + 1e-9:
            raise DomainError(
                f"grid value {self.value!r} exceeds the analytic maximum "
                f"{self.analytic_value!r}")


def objective(x, y, alpha: float) -> float:
    """Evaluate F at (x, y).  Evaluation outside the alpha interval is
    permitted for experimentation; feasibility of (x, y) is not enforced."""
    a = float(alpha)
    xs = np.asarray(x, dtype=float)
    ys = np.asarray(y, dtype=float)
    return float(np.sum(
        xs ** 3 * (3.0 - a - 3.0 * (3.0 - a) * ys - 3.0 * (a - 1.0) * ys ** 2)
        + 3.0 * xs ** 2 * ys))


def stationary_y(x_j: float, alpha: float) -> float:
    """The y maximizing the j-th term of F at fixed x_j (F is concave in y).

    1 for x_j <= 1/(a+1), 1/2 for x_j >= 1/2, else the interior critical
    point (1/x_j - (3-a)) / (2(a-1)); continuous at both junctions.
    """
    a = float(alpha)
    if x_j < 0:
        raise DomainError("x_j must be nonnegative")
    if x_j <= 1.0 / (a + 1.0):
        return 1.0
    if x_j >= 0.5:
        return 0.5
    return (1.0 / x_j - (3.0 - a)) / (2.0 * (a - 1.0))


def _term_eliminated(xs: np.ndarray, a: float) -> np.ndarray:
    """Per-coordinate objective term with y eliminated by stationary_y."""
    with np.errstate(divide="ignore"):
        inv = np.where(xs > 0, 1.0 / np.where(xs > 0, xs, 1.0), np.inf)
    ys = np.where(xs <= 1.0 / (a + 1.0), 1.0,
                  np.where(xs >= 0.5, 0.5, (inv - (3.0 - a)) / (2.0 * (a - 1.0))))
    return (xs ** 3 * (3.0 - a - 3.0 * (3.0 - a) * ys - 3.0 * (a - 1.0) * ys ** 2)
            + 3.0 * xs ** 2 * ys)


def optimal_sigma(alpha: float) -> float:
    """The maximizing component mass sigma = (5 - (a-1)^2) / 12."""
    a = validate_alpha(alpha)
    return (5.0 - (a - 1.0) ** 2) / 12.0


def closed_form_max(alpha: float) -> float:
    """The maximum of F over the feasible set, in closed form.

    Cross-evaluated through the linked-cliques profile at
    sigma = (5-(a-1)^2)/12, i.e. d1(sigma) - a * d3(sigma); the two forms
    must agree to 1e-12.
    """
    a = validate_alpha(alpha)
    value = ((-a ** 6 + 6 * a ** 5 - 9 * a ** 4 - 4 * a ** 3 + 96 * a - 80)
             / (144.0 * (a - 1.0)))
    sg = optimal_sigma(a)
    d1, d3 = boundary.linked_cliques_profile(sg)
    alt = d1 - a * d3
    if abs(value - alt) > 1e-12:
        raise RuntimeError(
            f"closed-form maximum disagrees with its profile form: {value!r} vs {alt!r}")
    return value


def _candidate(label: str, xs, a: float, attains_max: bool = False,
               printed_value: float = None) -> Candidate:
    ys = tuple(stationary_y(xj, a) for xj in xs)
    point = FeasiblePoint(x=tuple(float(v) for v in xs), y=ys)
    value = objective(point.x, point.y, a)
    if printed_value is not None and abs(printed_value - value) > 1e-9:
        raise RuntimeError(
            f"candidate {label!r}: closed-form value {printed_value!r} "
            f"disagrees with the objective {value!r}")
    return Candidate(label=label, point=point, value=value, attains_max=attains_max)


def analytic_candidates(alpha: float) -> list:
    """Every closed-form stationary candidate of the case analysis.

    Each candidate carries its structural label and its objective value
    (verified against the printed closed form where one exists).  The two
    entries that attain the maximum are flagged: the interior optimum
    x = (sigma, sigma, 1-2 sigma), and the boundary point with y_3 = 1/2
    that matches the maximum of the relaxed problem but is infeasible for
    the strict one.  Radical-pair candidates whose printed branch violates
    its case's interval are dropped.
    """
    a = validate_alpha(alpha)
    r1 = 1.0 / (a + 1.0)
    cands = []

    cands.append(_candidate("corner x=(0,0,1)", (0.0, 0.0, 1.0), a,
                            printed_value=(3.0 - a) / 4.0))
    cands.append(_candidate(
        "one zero, x2=1/(a+1)", (0.0, r1, a / (a + 1.0)), a,
        printed_value=(-a ** 4 + 3 * a ** 3 + 6 * a ** 2 + 8 * a)
        / (4.0 * (a + 1.0) ** 3)))
    cands.append(_candidate(
        "one zero, relaxed boundary (y3=1/2)",
        (0.0, (a * a - 2 * a + 2) / 6.0, (-a * a + 2 * a + 4) / 6.0), a,
        attains_max=True))
    cands.append(_candidate("one zero, x2=x3=1/2", (0.0, 0.5, 0.5), a,
                            printed_value=(9.0 - a) / 16.0))
    cands.append(_candidate(
        "x1=x2=1/(a+1)", (r1, r1, (a - 1.0) / (a + 1.0)), a,
        printed_value=(-a ** 4 + 6 * a ** 3 + 3 * a ** 2 - 16 * a + 36)
        / (4.0 * (a + 1.0) ** 3)))
    cands.append(_candidate(
        "x1=(a-1)/(2(a+1)), x2=1/(a+1), x3=1/2",
        ((a - 1.0) / (2.0 * (a + 1.0)), r1, 0.5), a,
        printed_value=(-5 * a ** 3 + 35 * a ** 2 - 11 * a + 45)
        / (32.0 * (a + 1.0) ** 2)))

    # pinned x2 = 1/(a+1), interior x1 and x3 < 1/2: sign pair, with the
    # branch fixed by the requirement x3 < 1/2
    rad = math.sqrt(4 * a ** 6 - 8 * a ** 5 - 39 * a ** 4 + 84 * a ** 3
                    + 74 * a ** 2 - 196 * a + 97)
    base1 = (-a ** 4 + 3 * a ** 3 + 15 * a ** 2 + a - 10) / (3.0 * (a + 1.0) ** 4)
    base3 = (4 * a ** 4 + 6 * a ** 3 - 6 * a ** 2 + 2 * a + 10) / (3.0 * (a + 1.0) ** 4)
    for sign, tag in ((1.0, "+"), (-1.0, "-")):
        x1 = base1 + sign * rad / (3.0 * (a + 1.0) ** 3)
        x3 = base3 - sign * rad / (3.0 * (a + 1.0) ** 3)
        if 0.0 < x1 < r1 and r1 < x3 < 0.5:
            cands.append(_candidate(
                f"x2=1/(a+1), interior x1 and x3<1/2 (branch {tag})",
                (x1, r1, x3), a))
        else:
            log.debug("dropping infeasible radical branch %s at alpha=%g "
                      "(x1=%g, x3=%g)", tag, a, x1, x3)

    den = a * a + 4 * a + 3
    cands.append(_candidate(
        "x2=1/(a+1), x3>1/2",
        ((-a * a + a + 4) / den, r1, 2.0 * (a * a + a - 2) / den), a,
        printed_value=(-a ** 5 + a ** 4 + 11 * a ** 3 + 3 * a ** 2 - 6 * a + 24)
        / ((a + 1.0) ** 2 * (a + 3.0) ** 2)))
    cands.append(_candidate(
        "x1=1/(a+1), x2=x3", (r1, a / (2 * a + 2.0), a / (2 * a + 2.0)), a,
        printed_value=-a * (a ** 4 - 10 * a ** 3 - 3 * a ** 2 - 20 * a + 20)
        / (16.0 * (a - 1.0) * (a + 1.0) ** 3)))
    cands.append(_candidate("x1=x2=1/4, x3=1/2", (0.25, 0.25, 0.5), a,
                            printed_value=(9.0 - a) / 16.0))

    rad = math.sqrt(a ** 4 - 8 * a ** 3 + 23 * a ** 2 - 22 * a + 10)
    x1 = (-a * a - 2.0 * rad + 10 * a - 5) / (6.0 * (a + 1.0) ** 2)
    x2 = (2 * a * a + rad - 2 * a + 4) / (3.0 * (a + 1.0) ** 2)
    if 0.0 < x1 < r1 and r1 < x2 < 0.5:
        cands.append(_candidate("interior x1, interior x2, x3=1/2",
                                (x1, x2, 0.5), a))

    sg = optimal_sigma(a)
    cands.append(_candidate("interior optimum x1=x2=sigma",
                            (sg, sg, 1.0 - 2.0 * sg), a, attains_max=True,
                            printed_value=closed_form_max(a)))

    rad = math.sqrt(4 * a ** 4 - 24 * a ** 3 + 53 * a ** 2 - 30 * a + 1)
    den = 3.0 * (5 * a * a + 10 * a - 11)
    for sign, tag in ((1.0, "+"), (-1.0, "-")):
        x1 = (-a * a + 18 * a - 13 + 2.0 * sign * rad) / den
        x3 = (8 * a * a + 6 * a - 10 - sign * rad) / den
        if 0.0 < x1 < r1 and r1 < x3 < 0.5:
            cands.append(_candidate(
                f"interior x1, x2=x3 (branch {tag})", (x1, x3, x3), a))
        else:
            log.debug("dropping infeasible radical branch %s at alpha=%g "
                      "(x1=%g, x3=%g)", tag, a, x1, x3)

    return cands


def stationarity_residual(point: FeasiblePoint, alpha: float,
                          h: float = 1e-6) -> float:
    """Karush-Kuhn-Tucker residual at a feasible point, by central differences.

    The x-gradient (at fixed y) must be constant across the support of x,
    with the common value playing the simplex multiplier; each interior y
    must be a critical point and each pinned y must have its gradient
    pointing into the bound.
    """
    a = float(alpha)
    x = list(point.x)
    y = list(point.y)

    def fx(j, v):
        xs = x.copy()
        xs[j] = v
        return objective(xs, y, a)

    def fy(j, v):
        ys = y.copy()
        ys[j] = v
        return objective(x, ys, a)

    support = [j for j in range(3) if x[j] > 1e-12]
    grads = [(fx(j, x[j] + h) - fx(j, x[j] - h)) / (2.0 * h) for j in support]
    lam = sum(grads) / len(grads)
    residual = max(abs(g - lam) for g in grads)
    for j in support:
        gy = (fy(j, y[j] + h) - fy(j, y[j] - h)) / (2.0 * h)
        if y[j] >= 1.0 - 1e-9:
            residual = max(residual, max(0.0, -gy))
        elif y[j] <= 0.5 + 1e-9:
            residual = max(residual, max(0.0, gy))
        else:
            residual = max(residual, abs(gy))
    return residual


_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


# simplex-tangent search directions: mass moves between a pair, and the
# symmetric split of one coordinate into the other two (the latter escapes
# pairwise-stationary saddle points, which matter when two stationary
# configurations nearly merge at the ends of the alpha interval)
_MOVES = (
    np.array([1.0, 0.0, -1.0]), np.array([0.0, 1.0, -1.0]),
    np.array([1.0, -1.0, 0.0]),
    np.array([0.5, 0.5, -1.0]), np.array([0.5, -1.0, 0.5]),
    np.array([-1.0, 0.5, 0.5]),
)


def _polish(x, a: float, refine_tol: float, coord_cap: float,
            bracket: float, max_iter: int = 10000):
    """Golden-section ascent along simplex-tangent directions.

    Each move line-searches x + t*w over the segment keeping every
    coordinate inside [0, coord_cap] and |t| <= bracket.  Stops when a full
    sweep improves the value by less than refine_tol; errors out at the
    iteration cap.
    """
    x = np.asarray(x, dtype=float).copy()

    def val(arr):
        return float(_term_eliminated(arr, a).sum())

    best = val(x)
    for sweep in range(max_iter):
        for w in _MOVES:
            lo, hi = -bracket, bracket
            for k in range(3):
                if w[k] > 0:
                    hi = min(hi, (coord_cap - x[k]) / w[k])
                    lo = max(lo, -x[k] / w[k])
                elif w[k] < 0:
                    hi = min(hi, x[k] / -w[k])
                    lo = max(lo, (x[k] - coord_cap) / -w[k])
            if hi <= lo:
                continue

            def f(t):
                return val(x + t * w)

            c = hi - _GOLDEN * (hi - lo)
            d = lo + _GOLDEN * (hi - lo)
            fc, fd = f(c), f(d)
            while hi - lo > 1e-13:
                if fc > fd:
                    hi, d, fd = d, c, fc
                    c = hi - _GOLDEN * (hi - lo)
                    fc = f(c)
                else:
                    lo, c, fc = c, d, fd
                    d = lo + _GOLDEN * (hi - lo)
                    fd = f(d)
            t = 0.5 * (lo + hi)
            trial = np.clip(x + t * w, 0.0, coord_cap)
            if val(trial) > best:
                x = trial
                best = val(x)
        new = val(x)
        if sweep > 0 and new - last <= refine_tol:
            return x, new
        last = new
    raise RuntimeError(f"refinement did not converge within {max_iter} iterations")


def maximize_grid(alpha: float, grid: int = 400,
                  refine_tol: float = 1e-10) -> OptimizationResult:
    """Independent grid-plus-refinement maximization of F.

    y is eliminated per coordinate by stationary_y (exact inner maximization,
    since F is concave in each y_j).  The full simplex is scanned with step
    1/grid; the best point with all coordinates at most 1/2 (the closure of
    the strictly feasible set, on which the same maximum is attained) is
    refined by golden-section coordinate descent.  Ties among permuted
    maximizers are resolved by sorting x ascending.
    """
    a = validate_alpha(alpha)
    if grid < 50:
        raise DomainError("grid must be at least 50")
    idx = np.arange(grid + 1)
    i, j = np.meshgrid(idx, idx, indexing="ij")
    keep = (i + j) <= grid
    x1 = i[keep] / grid
    x2 = j[keep] / grid
    x3 = 1.0 - x1 - x2
    vals = (_term_eliminated(x1, a) + _term_eliminated(x2, a)
            + _term_eliminated(x3, a))
    full_best = float(vals.max())
    bracket = max(2.0 / grid, 1e-3)
    # polish the leading strict-region grid points; several starts guard
    # against permuted ties of near-degenerate stationary configurations
    strict_vals = np.where((x1 <= 0.5) & (x2 <= 0.5) & (x3 <= 0.5),
                           vals, -np.inf)
    polished = []
    for b in np.argsort(-strict_vals)[:12]:
        start = np.array([x1[b], x2[b], x3[b]])
        polished.append(_polish(start, a, refine_tol, coord_cap=0.5,
                                bracket=bracket))
    champion = max(v for _, v in polished)
    if champion < full_best - 1e-9:
        # the restricted refinement lost ground; fall back to the
        # unconstrained polish from the global grid argmax
        b = int(np.argmax(vals))
        x, value = _polish(np.array([x1[b], x2[b], x3[b]]), a, refine_tol,
                           coord_cap=1.0, bracket=bracket)
    else:
        # among ties prefer the maximizer farthest from the x_j = 1/2
        # face (the strictly feasible one), then sort for determinism
        x, value = min((p for p in polished if p[1] >= champion - 1e-12),
                       key=lambda p: float(np.max(p[0])))
    xs = tuple(sorted(float(v) for v in x))
    ys = tuple(stationary_y(v, a) for v in xs)
    best = FeasiblePoint(x=xs, y=ys)
    return OptimizationResult(
        best=best,
        value=value,
        analytic_value=closed_form_max(a),
        candidates=tuple(analytic_candidates(a)),
        stationarity_residual=stationarity_residual(best, a),
    )
