"""
Golden-section search on a bracket
"""
from typing import Callable, Sequence, Tuple
import math

GOLDEN_RATIO = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_min(fn: Callable[[float], float], a: float, b: float, iterations: int) -> Tuple[float, float]:
    """
    Minimize fn on [a, b]
    Returns the best (x, fn(x)) seen, endpoints included; no unimodality is assumed,
    so the result is only a local refinement of whatever the bracket holds
    """
    if b < a:
        a, b = b, a

    best_x, best_f = a, fn(a)
    fb = fn(b)
    if fb < best_f:
        best_x, best_f = b, fb

    x2 = a + (1.0 - GOLDEN_RATIO) * (b - a)
    x3 = a + GOLDEN_RATIO * (b - a)
    f2, f3 = fn(x2), fn(x3)

    for _ in range(iterations):
        if f2 < best_f:
            best_x, best_f = x2, f2
        if f3 < best_f:
            best_x, best_f = x3, f3

        if f2 > f3:
            a = x2
            x2, f2 = x3, f3
            x3 = a + GOLDEN_RATIO * (b - a)
            f3 = fn(x3)
        else:
            b = x3
            x3, f3 = x2, f2
            x2 = a + (1.0 - GOLDEN_RATIO) * (b - a)
            f2 = fn(x2)

    for x, f in ((x2, f2), (x3, f3)):
        if f < best_f:
            best_x, best_f = x, f

    return best_x, best_f


def golden_section_max(fn: Callable[[float], float], a: float, b: float, iterations: int) -> Tuple[float, float]:
    """Maximize fn on [a, b]"""
    x, neg = golden_section_min(lambda s: -fn(s), a, b, iterations)
    return x, -neg


def grid_then_golden_min(fn: Callable[[float], float], grid: Sequence[float], iterations: int) -> Tuple[float, float]:
    """
    Minimize fn over a sorted grid, then refine by golden section inside the
    cells next to the grid argmin. The grid minimum is never made worse.
    """
    values = [fn(x) for x in grid]
    k = min(range(len(values)), key=values.__getitem__)
    best_x, best_f = grid[k], values[k]

    lower = grid[max(k - 1, 0)]
    upper = grid[min(k + 1, len(grid) - 1)]
    if upper > lower:
        x, f = golden_section_min(fn, lower, upper, iterations)
        if f < best_f:
            best_x, best_f = x, f

    return best_x, best_f
