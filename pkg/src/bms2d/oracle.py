"""Ground-truth generators for tests: build tables directly from known
sparse polynomials and enumerate or sample instances."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .bipoly import BivariatePolynomial
from .tables import IncompleteTable, detect_hyperbolic


@dataclass
class OracleInstance:
    e: BivariatePolynomial
    tau: tuple
    point: object
    field: object
    shape: tuple
    table: IncompleteTable
    holes: tuple = ()


def syndrome_table(e, tau, point, shape):
    """The complete table u_n = e(alpha^(tau + n)) for n over the grid."""
    field = e.field
    r1, r2 = shape
    cells = [[e.evaluate(point.at(((tau[0] + i) % r1, (tau[1] + j) % r2)))
              for j in range(r2)] for i in range(r1)]
    return IncompleteTable(field, shape, cells, point.exponents)


def _base_nonzero_elements(field):
    q = field.spec.q
    if q == field.order:
        return field.elements()[1:]
    step = field.n_units // (q - 1)
    return [field.from_log(k * step) for k in range(q - 1)]


def random_support(rng, shape, weight):
    pts = [(i, j) for i in range(shape[0]) for j in range(shape[1])]
    return rng.sample(pts, weight)


def random_instance(field, point, shape, *, weight, rng, holes=0,
                    base_coeffs=False, tau=None, support=None):
    """A random sparse generator, its syndrome table, and an optional hole
    mask that keeps at least one fully known hyperbolic window."""
    if support is None:
        support = random_support(rng, shape, weight)
    pool = _base_nonzero_elements(field) if base_coeffs else field.elements()[1:]
    coeffs = {m: rng.choice(pool) for m in support}
    e = BivariatePolynomial(field, coeffs)
    if tau is None:
        tau = (rng.randrange(shape[0]), rng.randrange(shape[1]))
    table = syndrome_table(e, tau, point, shape)
    punched = []
    if holes:
        positions = [(i, j) for i in range(shape[0]) for j in range(shape[1])]
        rng.shuffle(positions)
        for pos in positions:
            if len(punched) == holes:
                break
            trial = table.with_cell(pos, None)
            if detect_hyperbolic(trial):
                table = trial
                punched.append(pos)
        if len(punched) < holes:
            raise ValueError(f"could not punch {holes} holes while keeping a "
                             f"known hyperbolic window")
    return OracleInstance(e, tau, point, field, shape, table, tuple(punched))


def weight1_cases(field, point, shape):
    """Every (support point, nonzero coefficient, offset) combination."""
    r1, r2 = shape
    for m1, m2 in product(range(r1), range(r2)):
        for coeff in field.elements()[1:]:
            for t1, t2 in product(range(r1), range(r2)):
                e = BivariatePolynomial(field, {(m1, m2): coeff})
                yield e, (t1, t2)
