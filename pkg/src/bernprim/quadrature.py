"""Quadrature and finite-difference oracles, independent of the basis code.

These deliberately share nothing with the Bernstein machinery so that an
agreement between the two routes actually means something.  Node sums use
math.fsum, so results do not depend on any reduction order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal, Union

from .core import BernsteinPoly, RealFunction

__all__ = ["QuadratureResult", "riemann_sum", "simpson", "central_difference"]

Integrand = Union[RealFunction, BernsteinPoly, Callable[[float], float]]

RiemannRule = Literal["left", "right", "midpoint"]

_RULE_OFFSETS = {"left": 0.0, "right": 1.0, "midpoint": 0.5}


@dataclass(frozen=True)
class QuadratureResult:
    """Integral estimate with a Richardson-style error estimate.

    error_estimate is the absolute difference against the same rule run
    with twice the panels.
    """

    value: float
    panels: int
    error_estimate: float


def _check_upper(upper: float) -> float:
    upper = float(upper)
    if not 0.0 <= upper <= 1.0:
        raise ValueError(f"upper must lie in [0, 1], got {upper!r}")
    return upper


def _riemann(f: Integrand, upper: float, panels: int, offset: float) -> float:
    if upper == 0.0:
        return 0.0
    h = upper / panels
    # Nodes as upper * fraction keeps every node inside [0, upper] exactly.
    return h * math.fsum(f(upper * ((i + offset) / panels)) for i in range(panels))


def riemann_sum(f: Integrand, upper: float, panels: int, rule: RiemannRule = "midpoint") -> QuadratureResult:
    """Riemann sum of f over [0, upper] with the given node rule."""
    upper = _check_upper(upper)
    if panels < 1:
        raise ValueError(f"panels must be >= 1, got {panels}")
    if rule not in _RULE_OFFSETS:
        raise ValueError(f"unknown rule {rule!r}; expected left, right, or midpoint")
    offset = _RULE_OFFSETS[rule]
    value = _riemann(f, upper, panels, offset)
    refined = _riemann(f, upper, 2 * panels, offset)
    return QuadratureResult(value=value, panels=panels, error_estimate=abs(value - refined))


def _simpson(f: Integrand, upper: float, panels: int) -> float:
    if upper == 0.0:
        return 0.0
    h = upper / panels

    def term(i: int) -> float:
        weight = 1.0 if i in (0, panels) else (4.0 if i % 2 else 2.0)
        return weight * f(upper * (i / panels))

    return (h / 3.0) * math.fsum(term(i) for i in range(panels + 1))


def simpson(f: Integrand, upper: float, panels: int) -> QuadratureResult:
    """Composite Simpson rule over [0, upper]; panels must be even."""
    upper = _check_upper(upper)
    if panels < 2 or panels % 2:
        raise ValueError(f"panels must be an even number >= 2, got {panels}")
    value = _simpson(f, upper, panels)
    refined = _simpson(f, upper, 2 * panels)
    return QuadratureResult(value=value, panels=panels, error_estimate=abs(value - refined))


def central_difference(f: Integrand, x: float, h: float = 1e-5) -> float:
    """Symmetric difference quotient (f(x+h) - f(x-h)) / (2h).

    The full stencil must fit inside [0, 1].
    """
    x = float(x)
    h = float(h)
    if not h > 0.0:
        raise ValueError(f"h must be positive, got {h!r}")
    if x - h < 0.0 or x + h > 1.0:
        raise ValueError(f"stencil [{x - h!r}, {x + h!r}] leaves [0, 1]")
    return (f(x + h) - f(x - h)) / (2.0 * h)
