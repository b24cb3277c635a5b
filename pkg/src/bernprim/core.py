"""Bernstein-basis machinery on the unit interval.

Builds the degree-n Bernstein approximant of a continuous function on
[0, 1] and the explicit polynomial antiderivative obtained by integrating
it term by term, together with the basis identities, sup-norm estimates
and degree bounds that make the construction checkable numerically.

Everything works in ordinary double precision and every operation is pure:
no function here mutates its arguments or keeps hidden state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal, Sequence, Union

import numpy as np

__all__ = [
    "EvaluationError",
    "BernsteinPoly",
    "RealFunction",
    "SupNormEstimate",
    "binomial_convention",
    "basis_eval",
    "basis_all",
    "basis_derivative",
    "moment_sum",
    "bernstein_approximant",
    "primitive_approximant",
    "eval_poly",
    "poly_values",
    "derivative_poly",
    "difference_quotient",
    "required_degree",
    "lipschitz_delta",
    "sup_norm_distance",
]

# math.comb is exact and cheap up to here; beyond it log-gamma is used for
# the logarithmic binomial so that basis evaluation never leaves float range.
_EXACT_COMB_LIMIT = 2000

# Naive C(n,m) * x^m * (1-x)^(n-m) is safe for small degrees only; above
# this the evaluation goes through the log domain.
_NAIVE_BASIS_LIMIT = 50

MomentKind = Literal["partition", "first", "second_central"]


class EvaluationError(Exception):
    """An evaluator failed or produced a non-finite value."""


def _check_unit(x: float, name: str = "x") -> float:
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {x!r}")
    return x


def _check_positive(value: float, name: str) -> float:
    value = float(value)
    if not value > 0.0 or not math.isfinite(value):
        raise ValueError(f"{name} must be a positive finite real, got {value!r}")
    return value


# ---------------------------------------------------------------------------
# Types


@dataclass(frozen=True)
class BernsteinPoly:
    """A polynomial of degree n held by its n+1 Bernstein-basis coefficients.

    Immutable; evaluation, differentiation and division below never modify
    the coefficient tuple.
    """

    degree: int
    coeffs: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.degree < 0:
            raise ValueError(f"degree must be >= 0, got {self.degree}")
        coeffs = tuple(float(c) for c in self.coeffs)
        if len(coeffs) != self.degree + 1:
            raise ValueError(
                f"degree {self.degree} needs {self.degree + 1} coefficients, "
                f"got {len(coeffs)}"
            )
        for j, c in enumerate(coeffs):
            if not math.isfinite(c):
                raise ValueError(f"coefficient {j} is not finite: {c!r}")
        object.__setattr__(self, "coeffs", coeffs)

    def __call__(self, x: float) -> float:
        return eval_poly(self, x)

    def to_dict(self) -> dict:
        return {"degree": self.degree, "coeffs": list(self.coeffs)}

    @classmethod
    def from_dict(cls, data: dict) -> "BernsteinPoly":
        return cls(int(data["degree"]), tuple(float(c) for c in data["coeffs"]))


@dataclass(frozen=True)
class RealFunction:
    """A real-valued function on [0, 1] with optional analytic metadata.

    The evaluator is probed on a uniform grid at construction time so that
    a broken definition fails loudly up front rather than deep inside a
    degree-1000 sweep.  ``sup_bound`` and ``lipschitz``, when given, are
    trusted metadata used by the degree-bound machinery.
    """

    evaluator: Callable[[float], float]
    sup_bound: float | None = None
    lipschitz: float | None = None
    probe_points: int = 257

    def __post_init__(self) -> None:
        if self.sup_bound is not None:
            _check_positive(self.sup_bound, "sup_bound")
        if self.lipschitz is not None:
            _check_positive(self.lipschitz, "lipschitz")
        if self.probe_points < 2:
            raise ValueError("probe_points must be >= 2")
        denom = self.probe_points - 1
        for i in range(self.probe_points):
            x = i / denom
            try:
                value = float(self.evaluator(x))
            except EvaluationError as exc:
                raise EvaluationError(f"construction probe failed at x={x!r}: {exc}") from exc
            except (ArithmeticError, ValueError) as exc:
                raise EvaluationError(f"construction probe failed at x={x!r}: {exc}") from exc
            if not math.isfinite(value):
                raise EvaluationError(
                    f"construction probe found non-finite value {value!r} at x={x!r}"
                )

    def __call__(self, x: float) -> float:
        x = _check_unit(x)
        value = float(self.evaluator(x))
        if not math.isfinite(value):
            raise EvaluationError(f"evaluator returned non-finite value {value!r} at x={x!r}")
        return value


@dataclass(frozen=True)
class SupNormEstimate:
    """Maximum of |g - h| over a uniform grid.

    A lower bound for the true sup-norm distance; ``argmax`` is the grid
    point where the maximum was attained (first one on ties).
    """

    value: float
    grid_size: int
    argmax: float


Evaluatable = Union[BernsteinPoly, RealFunction, Callable[[float], float]]


# ---------------------------------------------------------------------------
# Basis operations


def binomial_convention(n: int, m: int) -> int:
    """C(n, m), with value 0 whenever m < 0 or m > n.

    Exact integer arithmetic, so no overflow at any degree; callers that
    need the value in float range should work with logarithms instead
    (see basis_eval).
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if m < 0 or m > n:
        return 0
    return math.comb(n, m)


def _log_binomial(n: int, m: int) -> float:
    if n <= _EXACT_COMB_LIMIT:
        return math.log(math.comb(n, m))
    return math.lgamma(n + 1) - math.lgamma(m + 1) - math.lgamma(n - m + 1)


def basis_eval(m: int, n: int, x: float) -> float:
    """Value of the degree-n Bernstein basis polynomial with index m at x.

    Out-of-range m gives 0.  For n above a small cutoff the product is
    formed in the log domain, never as a large binomial times a tiny
    power, so degrees up to 1e5 and beyond stay in float range.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    x = _check_unit(x)
    if m < 0 or m > n:
        return 0.0
    if x == 0.0:
        return 1.0 if m == 0 else 0.0
    if x == 1.0:
        return 1.0 if m == n else 0.0
    if n <= _NAIVE_BASIS_LIMIT:
        return math.comb(n, m) * x**m * (1.0 - x) ** (n - m)
    log_value = _log_binomial(n, m) + m * math.log(x) + (n - m) * math.log1p(-x)
    return math.exp(log_value)


def basis_all(n: int, x: float) -> np.ndarray:
    """All n+1 basis values at x in one O(n) pass.

    Starts from the largest entry (index floor((n+1) x)) computed in the
    log domain and walks outward with the exact neighbour ratio
    (n-m)/(m+1) * x/(1-x); the far tails underflow harmlessly to 0.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    x = _check_unit(x)
    row = np.zeros(n + 1)
    if x == 0.0:
        row[0] = 1.0
        return row
    if x == 1.0:
        row[n] = 1.0
        return row
    mode = min(int(x * (n + 1)), n)
    row[mode] = basis_eval(mode, n, x)
    if n == 0:
        return row
    m = np.arange(n, dtype=float)
    ratios = (x / (1.0 - x)) * (n - m) / (m + 1.0)  # row[m+1] / row[m]
    if mode < n:
        row[mode + 1 :] = row[mode] * np.cumprod(ratios[mode:])
    if mode > 0:
        row[:mode] = row[mode] * np.cumprod(1.0 / ratios[mode - 1 :: -1])[::-1]
    return row


def basis_derivative(m: int, n: int, x: float) -> float:
    """d/dx of the (m, n) basis polynomial via the degree-lowering identity.

    Equals n * (value at (m-1, n-1) minus value at (m, n-1)); the zero
    convention makes the edge cases m = 0 and m = n come out right.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    x = _check_unit(x)
    return n * (basis_eval(m - 1, n - 1, x) - basis_eval(m, n - 1, x))


def moment_sum(n: int, x: float, kind: MomentKind) -> float:
    """Directly summed basis moments (the quantity under test, not a formula).

    kind "partition" sums the row itself (closed form 1), "first" sums
    m * p_m (closed form n x), and "second_central" sums (n x - m)^2 * p_m
    (closed form n x (1 - x)).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    x = _check_unit(x)
    row = basis_all(n, x)
    if kind == "partition":
        return float(row.sum())
    m = np.arange(n + 1, dtype=float)
    if kind == "first":
        return float(np.dot(m, row))
    if kind == "second_central":
        centered = n * x - m
        return float(np.dot(centered * centered, row))
    raise ValueError(f"unknown moment kind {kind!r}")


# ---------------------------------------------------------------------------
# Approximant construction


def bernstein_approximant(f: Evaluatable, n: int) -> BernsteinPoly:
    """Degree-n Bernstein approximant of f: coefficient m is f(m/n)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return BernsteinPoly(n, tuple(float(f(m / n)) for m in range(n + 1)))


def _running_exact_sums(values: Sequence[float]) -> list[float]:
    """Prefix sums [0, v0, v0+v1, ...] with each prefix correctly rounded.

    Keeps a Shewchuk-style expansion of exact partials so the rounding of
    one prefix never contaminates the next; this is what lets the
    derivative of the primitive recover the samples to rounding accuracy.
    """
    prefixes = [0.0]
    partials: list[float] = []
    for value in values:
        v = float(value)
        i = 0
        for p in partials:
            if abs(v) < abs(p):
                v, p = p, v
            total = v + p
            err = p - (total - v)
            if err:
                partials[i] = err
                i += 1
            v = total
        partials[i:] = [v]
        prefixes.append(math.fsum(partials))
    return prefixes


def primitive_approximant(f: Evaluatable, n: int) -> BernsteinPoly:
    """Degree-(n+1) polynomial antiderivative of the degree-n approximant.

    Coefficient j is the prefix sum of the first j samples f(m/n) divided
    by n+1, so the value at 0 is exactly 0 and the Bernstein derivative
    rule hands back the samples themselves.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    samples = [float(f(m / n)) for m in range(n + 1)]
    prefixes = _running_exact_sums(samples)
    return BernsteinPoly(n + 1, tuple(p / (n + 1) for p in prefixes))


# ---------------------------------------------------------------------------
# Polynomial operations


def eval_poly(p: BernsteinPoly, x: float) -> float:
    """Evaluate p at x by the convex-combination (de Casteljau) recursion.

    Every intermediate is a convex combination of coefficients, so the
    result cannot leave [min coeff, max coeff] up to rounding.
    """
    x = _check_unit(x)
    beta = np.asarray(p.coeffs, dtype=float)
    while beta.size > 1:
        beta = (1.0 - x) * beta[:-1] + x * beta[1:]
    return float(beta[0])


def poly_values(p: BernsteinPoly, xs: Sequence[float]) -> np.ndarray:
    """Evaluate p at many points at once.

    Runs the same de Casteljau recursion as eval_poly, one row per point,
    with identical per-point arithmetic; results match eval_poly bitwise.
    """
    grid = np.asarray(xs, dtype=float)
    if grid.ndim != 1:
        raise ValueError("xs must be one-dimensional")
    if grid.size and (grid.min() < 0.0 or grid.max() > 1.0):
        raise ValueError("evaluation points must lie in [0, 1]")
    beta = np.broadcast_to(np.asarray(p.coeffs, dtype=float), (grid.size, p.degree + 1)).copy()
    weight = grid[:, None]
    co_weight = (1.0 - grid)[:, None]
    while beta.shape[1] > 1:
        beta = co_weight * beta[:, :-1] + weight * beta[:, 1:]
    return beta[:, 0]


def derivative_poly(p: BernsteinPoly) -> BernsteinPoly:
    """Derivative of p in Bernstein form: n times adjacent differences.

    Degree 0 input differentiates to the zero polynomial of degree 0.
    """
    n = p.degree
    if n == 0:
        return BernsteinPoly(0, (0.0,))
    c = p.coeffs
    return BernsteinPoly(n - 1, tuple(n * (c[j + 1] - c[j]) for j in range(n)))


def difference_quotient(p: BernsteinPoly, c: float) -> BernsteinPoly:
    """The polynomial Q with p(x) - p(c) = Q(x) (x - c), in Bernstein form.

    Divides out the root at c directly in the Bernstein basis (the power
    basis route is hopelessly ill-conditioned by degree 40).  The forward
    recurrence is stable below c and the backward one above it, so the two
    sweeps meet near index degree * c.
    """
    c = float(c)
    if not 0.0 < c < 1.0:
        raise ValueError(f"c must lie strictly inside (0, 1), got {c!r}")
    d = p.degree
    if d < 1:
        raise ValueError("difference quotient needs degree >= 1")
    at_c = eval_poly(p, c)
    r = [b - at_c for b in p.coeffs]
    quotient = [0.0] * d
    split = min(d - 1, max(0, math.floor(c * d)))
    forward = 0.0
    for j in range(split + 1):
        forward = ((1.0 - c) * j * forward - d * r[j]) / (c * (d - j))
        quotient[j] = forward
    backward = 0.0
    for j in range(d, split + 1, -1):
        backward = (d * r[j] + c * (d - j) * backward) / ((1.0 - c) * j)
        quotient[j - 1] = backward
    return BernsteinPoly(d - 1, tuple(quotient))


# ---------------------------------------------------------------------------
# Degree bounds and norms


def required_degree(sup_bound: float, eps: float, delta: float) -> int:
    """Smallest degree strictly above 4 * sup_bound / (eps * delta^2).

    The quotient is snapped to the nearest integer when it sits within a
    1e-9 relative hair of one, so decimal inputs like 0.2 and 0.1 behave
    as their exact decimal values rather than as their binary neighbours.
    """
    _check_positive(sup_bound, "sup_bound")
    _check_positive(eps, "eps")
    delta = _check_positive(delta, "delta")
    if delta > 1.0:
        raise ValueError(f"delta must lie in (0, 1], got {delta!r}")
    bound = 4.0 * sup_bound / (eps * delta * delta)
    nearest = round(bound)
    if abs(bound - nearest) <= 1e-9 * max(1.0, abs(bound)):
        bound = float(nearest)
    return math.floor(bound) + 1


def lipschitz_delta(lipschitz: float, eps: float) -> float:
    """Largest step delta <= 1 with L-Lipschitz oscillation under eps/2."""
    _check_positive(lipschitz, "lipschitz")
    _check_positive(eps, "eps")
    return min(1.0, eps / (2.0 * lipschitz))


def _values_on(obj: Evaluatable, grid: np.ndarray) -> np.ndarray:
    if isinstance(obj, BernsteinPoly):
        return poly_values(obj, grid)
    return np.array([float(obj(x)) for x in grid])


def sup_norm_distance(g: Evaluatable, h: Evaluatable, grid_size: int = 1001) -> SupNormEstimate:
    """Grid estimate of the sup-norm distance between two evaluatables.

    Evaluates both on the uniform grid i/(grid_size-1) and takes the
    largest absolute difference; a lower bound for the true sup-norm,
    with per-point maxima only (no order-dependent reductions).
    """
    if grid_size < 2:
        raise ValueError(f"grid_size must be >= 2, got {grid_size}")
    grid = np.arange(grid_size) / float(grid_size - 1)
    diff = np.abs(_values_on(g, grid) - _values_on(h, grid))
    index = int(np.argmax(diff))  # first index wins on ties
    return SupNormEstimate(value=float(diff[index]), grid_size=grid_size, argmax=float(grid[index]))
