"""From a recurrence basis back to the sparse generator.

The defining set of the basis (common roots among the evaluation grid)
gives the generator's support; a linear solve over every known cell gives
its coefficients with the table offset absorbed.  An optional descent step
searches for an offset that pulls all coefficients into the base subfield.
"""

from __future__ import annotations

from .bipoly import BivariatePolynomial


class NotSyndrome(Exception):
    """The data cannot come from a generator of the assumed sparsity."""


def defining_set(F, point, shape):
    """Exponent pairs m in the grid with f(alpha^m) = 0 for every f in F."""
    out = []
    for m1 in range(shape[0]):
        for m2 in range(shape[1]):
            at = point.at((m1, m2))
            if all(not f.evaluate(at) for f in F):
                out.append((m1, m2))
    return out


def solve_coefficients(support, U, point):
    """Solve sum_m c_m * alpha^(n.m) = u_n over every known cell n.

    The system is used in full, so redundancy doubles as a consistency
    check; a singular or inconsistent system raises NotSyndrome.
    """
    field = U.field
    support = sorted(support)
    ncols = len(support)
    rows = []
    for n in U.known_positions():
        rows.append(([point.power(n, m) for m in support], U.get(n)))
    if len(rows) < ncols:
        raise NotSyndrome("fewer known cells than support points")

    # Gaussian elimination over the field, consuming rows lazily.
    pivots = []
    for col in range(ncols):
        pivot = None
        for idx, (coeffs, rhs) in enumerate(rows):
            if coeffs[col]:
                pivot = rows.pop(idx)
                break
        if pivot is None:
            raise NotSyndrome("singular system: support point is unconstrained")
        inv = pivot[0][col].inverse()
        pivot = ([c * inv for c in pivot[0]], pivot[1] * inv)
        reduced = []
        for coeffs, rhs in rows:
            f = coeffs[col]
            if f:
                coeffs = [c - f * p for c, p in zip(coeffs, pivot[0])]
                rhs = rhs - f * pivot[1]
            reduced.append((coeffs, rhs))
        rows = reduced
        pivots.append((col, pivot))
    for coeffs, rhs in rows:
        if rhs:
            raise NotSyndrome("inconsistent system: known cells disagree")

    values = {}
    for col, (coeffs, rhs) in reversed(pivots):
        acc = rhs
        for j in range(col + 1, ncols):
            if coeffs[j]:
                acc = acc - coeffs[j] * values[j]
        values[col] = acc
    out = {}
    for idx, m in enumerate(support):
        c = values[idx]
        if not c:
            raise NotSyndrome(f"support point {m} received a zero coefficient")
        out[m] = c
    return out


def generator_from_coefficients(field, coeffs):
    return BivariatePolynomial(field, dict(coeffs))


def verify_afforded(table, generator, tau, point):
    """Whether every known cell h_n equals generator(alpha^(n - tau))."""
    r1, r2 = table.shape
    for n in table.known_positions():
        expected = generator.evaluate(point.at(((n[0] - tau[0]) % r1,
                                                (n[1] - tau[1]) % r2)))
        if expected != table.get(n):
            return False
    return True


def descend_to_base(generator, point, shape, field):
    """Search row-major for an offset tau'' shifting all coefficients into
    the base subfield; None when no offset works."""
    coeffs = generator.coeffs
    for t1 in range(shape[0]):
        for t2 in range(shape[1]):
            shifted = {}
            for m, c in coeffs.items():
                val = c * (point.alpha1 ** (-t1 * m[0])) * (point.alpha2 ** (-t2 * m[1]))
                if not field.in_base_field(val):
                    shifted = None
                    break
                shifted[m] = val
            if shifted is not None:
                return BivariatePolynomial(field, shifted), (t1, t2)
    return None
