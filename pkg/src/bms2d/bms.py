"""Iterative synthesis of a minimal set of linear recurrence polynomials for
a doubly periodic 2-D array, restricted to a hyperbolic index set.

State per step: the minimal polynomial set F (leading powers form a
staircase of defining points), the auxiliary set G of retained past
failures (one entry per outer corner of the footprint), and the footprint
itself.  A failing polynomial is repaired by subtracting a monomial shift
of an auxiliary polynomial scaled so both recurrences align at the current
index; every construction is checked by assertion rather than trusted.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .bipoly import (BivariatePolynomial, NeededCellUnknown, buchberger_reduces,
                     generates_prefix, recurrence_value, reduce_to_zero)
from .lattice import (hyperbolic_set, is_staircase, lt_total, maximal_points,
                      minimal_outside, padd, precedes, psub, rect_points,
                      sort_key, sorted_iteration)


class AlgorithmError(RuntimeError):
    """An update rule could not be carried out; indicates an engine bug or a
    violated precondition, never a property of the input data."""


@dataclass(frozen=True)
class AuxEntry:
    """A retained polynomial g with g[u]_k = v != 0 at its failure index k.

    record = k - LP(g) equals the footprint corner the entry is filed under.
    """

    poly: BivariatePolynomial
    k: tuple
    v: object
    record: tuple


class BmsState:
    """Immutable snapshot: minimal set F, auxiliary set G, footprint."""

    __slots__ = ("order", "F", "G", "delta")

    def __init__(self, order, F, G, delta):
        self.order = order
        self.F = tuple(sorted(F, key=lambda f: -f.lp(order)[0]))
        self.G = tuple(sorted(G, key=lambda e: -e.record[0]))
        self.delta = frozenset(delta)

    @property
    def d(self):
        return len(self.F)

    def staircase(self):
        return [f.lp(self.order) for f in self.F]

    def poly_at(self, idx):
        """1-based access matching the staircase numbering f^(1)..f^(d)."""
        return self.F[idx - 1]

    def aux_at(self, idx):
        """1-based access matching the corner numbering g^(1)..g^(d-1)."""
        return self.G[idx - 1]

    def check_invariants(self):
        stair = self.staircase()
        if stair != [(0, 0)]:
            if not is_staircase(stair):
                raise AlgorithmError(f"defining points {stair} are not a staircase")
        corners = maximal_points(self.delta)
        records = [e.record for e in self.G]
        if records != corners:
            raise AlgorithmError(f"auxiliary records {records} do not match "
                                 f"footprint corners {corners}")
        for e in self.G:
            if not e.v:
                raise AlgorithmError("auxiliary entry with zero discrepancy")
        expected = [(stair[i][0] - 1, stair[i + 1][1] - 1) for i in range(len(stair) - 1)]
        if [c for c in expected if c[0] >= 0 and c[1] >= 0] != corners:
            raise AlgorithmError("footprint corners disagree with the staircase")


@dataclass(frozen=True)
class StepOverflow:
    at: tuple
    size: int


@dataclass
class BmsOutcome:
    kind: str                 # "basis" | "overflow" | "hole" | "stall"
    state: BmsState
    at: tuple = None          # iteration index where the run stopped
    position: tuple = None    # unknown cell for "hole"/"stall"


def init_state(field, order):
    return BmsState(order, [BivariatePolynomial.one(field)], [], frozenset())


def iteration_points(t, shape, order):
    return sorted_iteration(hyperbolic_set(2 * t + 1, shape), order)


def _best_failing(fails, sigma, order):
    cands = [(f, d) for f, d in fails if precedes(f.lp(order), sigma)]
    if not cands:
        return None, None
    return max(cands, key=lambda fd: sort_key(fd[0].lp(order), order))


def _pick_partner(entries, base, need, order):
    """Auxiliary (or same-step failure) whose record dominates `need`; the
    entry with the latest failure index wins."""
    eligible = [e for e in entries
                if e.poly is not base and e.record[0] >= need[0] and e.record[1] >= need[1]]
    if not eligible:
        return None
    return max(eligible, key=lambda e: (sort_key(e.k, order), sort_key(e.record, order)))


def step(state, l, U, t_limit, *, validate=False):
    """Advance the state across index l.

    Returns the next BmsState, or StepOverflow when the footprint would
    exceed t_limit.  Raises NeededCellUnknown when a recurrence touches an
    unknown cell.
    """
    order = state.order
    fails = []
    for f in state.F:
        if precedes(f.lp(order), l):
            d = recurrence_value(f, U, l, order)
            if d:
                fails.append((f, d))
    if not fails:
        return state

    delta = set(state.delta)
    for f, _ in fails:
        rec = psub(l, f.lp(order))
        if rec not in delta:
            delta.update(rect_points(rec))
    if len(delta) > t_limit:
        return StepOverflow(l, len(delta))

    stair = minimal_outside(delta)
    failing_lps = {f.lp(order) for f, _ in fails}
    by_lp = {f.lp(order): f for f in state.F}
    entries = list(state.G) + [AuxEntry(f, l, d, psub(l, f.lp(order))) for f, d in fails]

    new_F = []
    for sigma in stair:
        old = by_lp.get(sigma)
        if old is not None and sigma not in failing_lps:
            new_F.append(old)
            continue
        if old is not None:
            base, disc = old, next(d for f, d in fails if f is old)
        else:
            base, disc = _best_failing(fails, sigma, order)
        h = None
        if base is not None:
            if not precedes(sigma, l):
                h = base.shift(psub(sigma, base.lp(order)))
            else:
                ent = _pick_partner(entries, base, psub(l, sigma), order)
                if ent is not None:
                    bshift = padd(psub(sigma, l), psub(ent.k, ent.poly.lp(order)))
                    h = (base.shift(psub(sigma, base.lp(order)))
                         - ent.poly.shift(bshift).scale(disc / ent.v))
        if h is None:
            # fallback: shift a surviving polynomial up to the new point
            passing = [f for f in state.F
                       if f.lp(order) not in failing_lps and precedes(f.lp(order), sigma)]
            if not passing:
                raise AlgorithmError(f"no construction for defining point {sigma} "
                                     f"at step {l}")
            passing.sort(key=lambda f: sort_key(f.lp(order), order))
            h = passing[-1].shift(psub(sigma, passing[-1].lp(order)))
        h = h.monic(order)
        if h.lp(order) != sigma:
            raise AlgorithmError(f"constructed polynomial has leading power "
                                 f"{h.lp(order)}, wanted {sigma}")
        if precedes(sigma, l) and recurrence_value(h, U, l, order):
            raise AlgorithmError(f"replacement at {sigma} keeps a nonzero "
                                 f"discrepancy at {l}")
        if validate and not _generates_through(h, U, l, order):
            raise AlgorithmError(f"replacement at {sigma} fails an earlier "
                                 f"recurrence before {l}")
        new_F.append(h)

    # the auxiliary set changes only where the footprint grew: an existing
    # corner keeps its entry, a new corner is claimed by the failure that
    # created it
    fail_by_rec = {psub(l, f.lp(order)): (f, d) for f, d in fails}
    old_by_rec = {e.record: e for e in state.G}
    new_G = []
    for c in maximal_points(delta):
        if c in old_by_rec:
            new_G.append(old_by_rec[c])
        elif c in fail_by_rec:
            f, d = fail_by_rec[c]
            new_G.append(AuxEntry(f, l, d, c))
        else:
            raise AlgorithmError(f"footprint corner {c} has no auxiliary record")

    new_state = BmsState(order, new_F, new_G, delta)
    new_state.check_invariants()
    return new_state


def _generates_through(f, U, l, order):
    """generates_prefix extended to include the index l itself."""
    if not generates_prefix(f, U, l, order):
        return False
    return not recurrence_value(f, U, l, order)


def run(U, t, order, *, points=None, t_limit=None, validate=False):
    """Iterate `step` over B(2t+1) (or explicit points) in the total order."""
    state = init_state(U.field, order)
    pts = iteration_points(t, U.shape, order) if points is None else points
    limit = t if t_limit is None else t_limit
    for l in pts:
        if U.get(l) is None:
            return BmsOutcome("hole", state, at=l, position=l)
        try:
            res = step(state, l, U, limit, validate=validate)
        except NeededCellUnknown as exc:
            return BmsOutcome("stall", state, at=l, position=exc.position)
        if isinstance(res, StepOverflow):
            return BmsOutcome("overflow", state, at=l)
        state = res
    return BmsOutcome("basis", state)


def closure_check(F, shape, order):
    """Whether F behaves like a Groebner basis once the ring relations
    X_i^{r_i} - 1 are adjoined: F must pass the Buchberger criterion and
    both ring relations must reduce to zero modulo F."""
    polys = list(F)
    if not buchberger_reduces(polys, order):
        return False
    field = polys[0].field
    one = BivariatePolynomial.one(field)
    for i, r in enumerate(shape):
        ring = BivariatePolynomial.monomial(field, (r, 0) if i == 0 else (0, r)) - one
        if not reduce_to_zero(ring, polys, order):
            return False
    return True


def minimality_audit(state, U, l, order, *, coeff_budget=200_000):
    """Brute-force check that no small polynomial with leading power inside
    the footprint generates the prefix below l.  Test support only."""
    field = U.field
    delta = sorted(state.delta)
    if not delta:
        return True
    bound = (max(n[0] for n in delta) + 1, max(n[1] for n in delta) + 1)
    elems = field.elements()
    nonzero = elems[1:]
    for sigma in delta:
        tail = [m for m in product(range(bound[0] + 1), range(bound[1] + 1))
                if m != sigma and lt_total(m, sigma, order)]
        if len(nonzero) * len(elems) ** len(tail) > coeff_budget:
            raise AlgorithmError("minimality audit budget exceeded")
        for lead in nonzero:
            for tail_coeffs in product(elems, repeat=len(tail)):
                coeffs = {sigma: lead}
                for m, c in zip(tail, tail_coeffs):
                    if c:
                        coeffs[m] = c
                g = BivariatePolynomial(field, coeffs)
                if g.lp(order) != sigma:
                    continue
                if generates_prefix(g, U, l, order):
                    return False
    return True
