"""Index bookkeeping on the grid Z_r1 x Z_r2 and on N x N.

Provides the componentwise partial order, the two total monomial orderings
(lexicographic with X1 > X2, reverse graded with X2 > X1), their successor
maps, hyperbolic index sets B(delta), the border set used for estimating
missing values, and staircase/footprint helpers.
"""

from __future__ import annotations

LEX = "lex"
GRADED = "graded"
ORDERS = (LEX, GRADED)


class DoesNotFit(ValueError):
    """The requested hyperbolic set does not fit inside the table grid."""


class UnsupportedRegime(ValueError):
    """The parameter lies outside the regime the method is defined for."""


def padd(a, b):
    return (a[0] + b[0], a[1] + b[1])


def psub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def precedes(n, m):
    """Componentwise partial order n <= m."""
    return n[0] <= m[0] and n[1] <= m[1]


def in_sigma(s, n):
    """Membership of n in the upper set of s."""
    return precedes(s, n)


def sort_key(n, order):
    if order == LEX:
        return n
    if order == GRADED:
        return (n[0] + n[1], n[1])
    raise ValueError(f"unknown ordering {order!r}")


def compare_total(n, m, order):
    """-1, 0 or 1 according to the chosen total ordering."""
    kn, km = sort_key(n, order), sort_key(m, order)
    return (kn > km) - (kn < km)


def lt_total(n, m, order):
    return sort_key(n, order) < sort_key(m, order)


def successor(l, order, shape):
    l1, l2 = l
    if order == GRADED:
        return (l1 - 1, l2 + 1) if l1 > 0 else (l2 + 1, 0)
    if order == LEX:
        return (l1, l2 + 1) if l2 < shape[1] - 1 else (l1 + 1, 0)
    raise ValueError(f"unknown ordering {order!r}")


def hyperbolic_set(delta, shape):
    """B(delta): pairs with (l1+1)(l2+1) <= delta, minus the two extreme
    axis points (delta-1, 0) and (0, delta-1)."""
    if delta < 1:
        return []
    r1, r2 = shape
    # the largest surviving axis coordinate is delta - 2
    if delta - 2 >= r1 or delta - 2 >= r2:
        raise DoesNotFit(f"B({delta}) does not fit in a {r1}x{r2} grid")
    excluded = {(delta - 1, 0), (0, delta - 1)}
    out = []
    for l2 in range(min(delta, r2)):
        for l1 in range(min(delta, r1)):
            if (l1 + 1) * (l2 + 1) <= delta and (l1, l2) not in excluded:
                out.append((l1, l2))
    return out


def border_set(t):
    """Positions of B(2t+1) where a missing value can still be estimated."""
    if not 2 <= t <= 4:
        raise UnsupportedRegime(f"border indexes are defined for 2 <= t <= 4, got t={t}")
    big = (4 * t, 4 * t)
    return frozenset(l for l in hyperbolic_set(2 * t + 1, big)
                     if 2 * t <= (l[0] + 1) * (l[1] + 1))


def sorted_iteration(points, order):
    return sorted(points, key=lambda n: sort_key(n, order))


def rect_points(corner):
    """All pairs componentwise below the given corner (inclusive)."""
    return [(i, j) for i in range(corner[0] + 1) for j in range(corner[1] + 1)]


def _profile(delta):
    """Column heights of a lower set, plus one trailing zero column."""
    if not delta:
        return [0]
    max1 = max(n[0] for n in delta)
    heights = []
    for x1 in range(max1 + 2):
        h = 0
        while (x1, h) in delta:
            h += 1
        heights.append(h)
    return heights


def minimal_outside(delta):
    """Defining points: minimal elements of the complement of a lower set,
    ordered by decreasing first coordinate."""
    heights = _profile(delta)
    out = []
    prev = None
    for x1, h in enumerate(heights):
        if prev is None or h < prev:
            out.append((x1, h))
            if h == 0:
                break
        prev = h
    return sorted(out, key=lambda s: -s[0])


def maximal_points(delta):
    """Outer corners of a lower set, ordered by decreasing first coordinate."""
    heights = _profile(delta)
    out = []
    for x1 in range(len(heights) - 1):
        if heights[x1] > 0 and heights[x1 + 1] < heights[x1]:
            out.append((x1, heights[x1] - 1))
    return sorted(out, key=lambda c: -c[0])


def delta_from_staircase(stair):
    """The lower set cut out by a staircase of defining points."""
    out = set()
    for i in range(len(stair) - 1):
        c = (stair[i][0] - 1, stair[i + 1][1] - 1)
        if c[0] >= 0 and c[1] >= 0:
            out.update(rect_points(c))
    return frozenset(out)


def is_staircase(points):
    """Strictly decreasing first coordinates down to 0, strictly increasing
    second coordinates up from 0."""
    if not points:
        return False
    if points[0][1] != 0 or points[-1][0] != 0:
        return False
    for a, b in zip(points, points[1:]):
        if not (a[0] > b[0] and a[1] < b[1]):
            return False
    return True


def full_grid_iteration(shape, order):
    """Every index of the r1 x r2 grid, sorted by the total ordering."""
    pts = [(i, j) for i in range(shape[0]) for j in range(shape[1])]
    return sorted_iteration(pts, order)
