"""Estimation of unknown cells at border indexes, branch enumeration for the
exceptional configurations, and the end-to-end completion pipeline.

When the iteration reaches an unknown cell, the cell either sits at a
non-exceptional border index (one recurrence from the current minimal set
pins the value directly), or at one of eight exceptional configurations.
In the exceptional cases each choice of a free parameter b implies one
value for the cell; the iteration is resumed once per implied value and the
final affordance check against every known cell selects the survivor.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field as dcfield

from .bms import (AlgorithmError, BmsState, StepOverflow, closure_check,
                  init_state, iteration_points, step)
from .bipoly import NeededCellUnknown, format_poly, recurrence_value
from .lattice import GRADED, LEX, DoesNotFit, border_set, precedes
from .recovery import (NotSyndrome, defining_set, descend_to_base,
                       generator_from_coefficients, solve_coefficients,
                       verify_afforded)
from .tables import complete_table, extract_working, max_amplitude_t, window_holes

STATUS_COMPLETED = "completed"
STATUS_NOT_SYNDROME = "not_syndrome"
STATUS_OVERFLOW = "footprint_overflow"
STATUS_AMBIGUOUS = "ambiguous"
STATUS_BUDGET = "branch_budget_exceeded"


# -- hole classification ---------------------------------------------------------


@dataclass(frozen=True)
class HoleClassification:
    """Routing decision for an unknown cell at an iteration index.

    kind is one of "direct", "interior", "axis", "off_border", "unsupported";
    refs lists (polynomial index, auxiliary index) pairs, 1-based, matching
    the construction of the branch polynomials for the exceptional cases.
    """

    kind: str
    case: int = 0
    refs: tuple = ()


def classify_hole(l, state, order, t):
    l1, l2 = l
    if not 2 <= t <= 4:
        return HoleClassification("unsupported")
    if (l1 + 1) * (l2 + 1) < 2 * t:
        return HoleClassification("off_border")
    stair = state.staircase()
    d = len(stair)
    if l1 != 0 and l2 != 0:
        if d == 2:
            s1, s2 = stair
            if order == GRADED and s1[0] == t and s2[1] == 1 == l2:
                return HoleClassification("interior", 1, ((2, 1),))
            if order == LEX and s1[0] == 1 == l1 and s2[1] == t:
                return HoleClassification("interior", 2, ((1, 1),))
            if s1 == (2, 0) and s2 == (0, 2) and l == (1, 3):
                return HoleClassification("interior", 3, ((2, 1),))
            if s1 == (2, 0) and s2 == (0, 2) and l == (3, 1):
                return HoleClassification("interior", 4, ((1, 1),))
        elif d == 3:
            s1, _, s3 = stair
            if s1 == (2, 0) and s3 == (0, t - 1) and l == (1, t - 1):
                return HoleClassification("interior", 5, ((2, 2), (3, 1)))
            if s1 == (t - 1, 0) and s3 == (0, 2) and l == (t - 1, 1):
                return HoleClassification("interior", 6, ((1, 2), (2, 1)))
    elif (l == (0, 2 * t - 1) or l == (2 * t - 1, 0)) and d == 2:
        s1, s2 = stair
        if l == (0, 2 * t - 1) and s2[1] == t:
            return HoleClassification("axis", 1, ((2, 1),))
        if l == (2 * t - 1, 0) and s1[0] == t:
            return HoleClassification("axis", 2, ((1, 1),))
    return HoleClassification("direct")


def _relation_parts(f, U, l, order):
    """Split the bracket of f at l into (coefficient of u_l, known rest)."""
    s = f.lp(order)
    r1, r2 = U.shape
    lpos = (l[0] % r1, l[1] % r2)
    lc = U.field.zero()
    tail = U.field.zero()
    for m, c in f.coeffs.items():
        pos = ((m[0] + l[0] - s[0]) % r1, (m[1] + l[1] - s[1]) % r2)
        if pos == lpos:
            lc = lc + c
        else:
            v = U.get(pos)
            if v is None:
                raise NeededCellUnknown(pos)
            tail = tail + c * v
    return lc, tail


def infer_direct(f, U, l, order):
    """Solve the linear recurring relation of f at l for the unknown u_l."""
    if not precedes(f.lp(order), l):
        raise ValueError("the witness polynomial does not reach the cell")
    lc, tail = _relation_parts(f, U, l, order)
    if not lc:
        raise ValueError("the relation does not constrain the cell")
    return -(tail / lc)


def construct_branch_polys(classification, state, b, c=None):
    """The branch polynomials h_b (and h_c) for an exceptional case:
    the referenced minimal polynomial minus (parameter / v) times the
    referenced auxiliary polynomial."""
    if classification.kind not in ("interior", "axis"):
        raise ValueError("branch polynomials exist only for exceptional cases")
    params = (b, c)
    out = []
    for (fi, gi), param in zip(classification.refs, params):
        if param is None:
            continue
        try:
            f = state.poly_at(fi)
            ent = state.aux_at(gi)
        except IndexError:
            raise AlgorithmError(
                f"case {classification.case} references a missing basis or "
                f"auxiliary entry") from None
        out.append(f - ent.poly.scale(param / ent.v))
    return out


def branch_candidates(classification, state, U, l):
    """(parameter b, implied cell value) per feasible branch, deduplicated
    by value; the relation h_b[U]_l = 0 is solved for u_l."""
    field = U.field
    order = state.order
    seen = set()
    out = []
    for b in field.elements():
        h = construct_branch_polys(classification, state, b)[0]
        if not h or not precedes(h.lp(order), l):
            continue
        lc, tail = _relation_parts(h, U, l, order)
        if lc:
            v = -(tail / lc)
            if v.log not in seen:
                seen.add(v.log)
                out.append((b, v))
        elif not tail:
            for v in field.elements():
                if v.log not in seen:
                    seen.add(v.log)
                    out.append((b, v))
    return out


def _second_parameter(classification, state, U, l):
    """For the two-polynomial cases, the parameter c consistent with the
    (now known) cell value."""
    if len(classification.refs) < 2:
        return None
    fi, gi = classification.refs[1]
    f = state.poly_at(fi)
    ent = state.aux_at(gi)
    order = state.order
    s = f.lp(order)
    r1, r2 = U.shape
    a = recurrence_value(f, U, l, order)
    bsum = U.field.zero()
    for m, c in ent.poly.coeffs.items():
        v = U.get(((m[0] + l[0] - s[0]) % r1, (m[1] + l[1] - s[1]) % r2))
        if v is None:
            return None
        bsum = bsum + c * v
    if not bsum:
        return None
    return a * ent.v / bsum


# -- branch execution ------------------------------------------------------------


@dataclass
class _Node:
    U: object
    state: BmsState
    idx: int
    branches: tuple = ()


@dataclass
class LeafResult:
    generator: object
    coefficients: dict
    state: BmsState
    branches: tuple
    holes_filled: dict


@dataclass
class WindowResult:
    verified: list
    reasons: list      # (tag, message)
    notes: list
    nodes: int
    exceeded: bool


def _finalize(H, tau, point, node, order):
    st = node.state
    if not closure_check(st.F, H.shape, order):
        return None, ("closure", f"window tau={tau}: basis fails the closure check")
    ds = defining_set(st.F, point, H.shape)
    if len(ds) != len(st.delta):
        return None, ("defining", f"window tau={tau}: defining set size {len(ds)} "
                                  f"differs from footprint size {len(st.delta)}")
    try:
        coeffs = solve_coefficients(ds, node.U, point)
    except NotSyndrome as exc:
        return None, ("solve", f"window tau={tau}: {exc}")
    gen = generator_from_coefficients(H.field, coeffs)
    if not verify_afforded(H, gen, tau, point):
        return None, ("affordance", f"window tau={tau}: candidate generator "
                                    f"fails a known cell")
    filled = {l: v for (l, _, _, v) in node.branches}
    return LeafResult(gen, coeffs, st, node.branches, filled), None


def _handle_hole(node, l, t, order, res):
    cls = classify_hole(l, node.state, order, t)
    if cls.kind in ("off_border", "unsupported"):
        return None, ("hole", f"unknown cell at {l} is not estimable "
                              f"({cls.kind}, t={t})")
    if cls.kind == "direct":
        values = []
        seen = set()
        for f in node.state.F:
            if not precedes(f.lp(order), l):
                continue
            try:
                v = infer_direct(f, node.U, l, order)
            except (NeededCellUnknown, ValueError):
                continue
            if v.log not in seen:
                seen.add(v.log)
                values.append((None, v))
        if not values:
            res.notes.append(f"no usable direct witness at {l}; "
                             f"branching over every value")
            values = [(None, v) for v in node.U.field.elements()]
        meta = "direct"
    else:
        try:
            values = branch_candidates(cls, node.state, node.U, l)
        except NeededCellUnknown as exc:
            return None, ("stall", f"branch relation at {l} needs unknown "
                                   f"cell {exc.position}")
        if not values:
            return None, ("hole", f"branch relation at {l} admits no value")
        meta = f"{cls.kind}-{cls.case}"
    spawned = [_Node(node.U.with_cell(l, v), node.state, node.idx,
                     node.branches + ((l, meta, b, v),))
               for b, v in values]
    return spawned, None


def _run_window(H, tau, t, order, point, *, budget, validate=False):
    res = WindowResult([], [], [], 1, False)
    try:
        U0 = extract_working(H, tau, t)
        pts = iteration_points(t, H.shape, order)
    except DoesNotFit as exc:
        res.reasons.append(("hole", f"window tau={tau} t={t}: {exc}"))
        return res
    queue = deque([_Node(U0, init_state(H.field, order), 0)])
    seen_generators = set()
    while queue:
        node = queue.popleft()
        failed = None
        while node is not None and node.idx < len(pts):
            l = pts[node.idx]
            if node.U.get(l) is None:
                spawned, failed = _handle_hole(node, l, t, order, res)
                if failed:
                    break
                res.nodes += len(spawned) - 1
                if res.nodes > budget:
                    res.exceeded = True
                    return res
                if len(spawned) == 1:
                    node = spawned[0]
                    continue
                queue.extend(spawned)
                node = None
                break
            try:
                nxt = step(node.state, l, node.U, t)
            except NeededCellUnknown as exc:
                failed = ("stall", f"window tau={tau} order={order}: needed "
                                   f"unknown cell {exc.position} at step {l}")
                break
            if isinstance(nxt, StepOverflow):
                failed = ("overflow", f"window tau={tau} order={order}: footprint "
                                      f"would exceed t={t} at step {l}")
                break
            node = _Node(node.U, nxt, node.idx + 1, node.branches)
        if node is None:
            continue
        if failed:
            res.reasons.append(failed)
            continue
        leaf, why = _finalize(H, tau, point, node, order)
        if why:
            res.reasons.append(why)
            continue
        key = leaf.generator.key()
        if key not in seen_generators:
            seen_generators.add(key)
            res.verified.append(leaf)
    return res


# -- hole-state helpers (diagnostics and branch-level tests) ----------------------


@dataclass
class HoleState:
    U: object
    state: BmsState
    pts: list
    idx: int
    l: tuple


@dataclass
class CandidateBranch:
    classification: HoleClassification
    b: object
    c: object
    value: object
    branch_polys: list
    final_state: BmsState = None
    generator: object = None
    verdict: str = "unverified"


def run_to_hole(H, tau, t, order, *, validate=False):
    """Advance one window until the iteration reaches an unknown cell.
    Returns None when the window runs to completion without a hole."""
    U = extract_working(H, tau, t)
    pts = iteration_points(t, H.shape, order)
    state = init_state(H.field, order)
    for idx, l in enumerate(pts):
        if U.get(l) is None:
            return HoleState(U, state, pts, idx, l)
        nxt = step(state, l, U, t, validate=validate)
        if isinstance(nxt, StepOverflow):
            raise AlgorithmError(f"footprint overflow at {l} before any hole")
        state = nxt
    return None


def enumerate_branches(H, tau, t, order, hole, *, point=None, validate=False):
    """Resume the iteration once per implied cell value of an exceptional
    hole; each branch carries its parameters, polynomials and verdict."""
    if point is None:
        point = H.point()
    cls = classify_hole(hole.l, hole.state, order, t)
    if cls.kind not in ("interior", "axis"):
        raise ValueError(f"hole at {hole.l} is not an exceptional case ({cls.kind})")
    out = []
    for b, value in branch_candidates(cls, hole.state, hole.U, hole.l):
        U = hole.U.with_cell(hole.l, value)
        c = _second_parameter(cls, hole.state, U, hole.l)
        branch = CandidateBranch(cls, b, c, value,
                                 construct_branch_polys(cls, hole.state, b, c))
        st = hole.state
        failed = None
        for l in hole.pts[hole.idx:]:
            try:
                nxt = step(st, l, U, t, validate=validate)
            except NeededCellUnknown as exc:
                failed = f"stall: needed unknown cell {exc.position}"
                break
            if isinstance(nxt, StepOverflow):
                failed = f"footprint overflow at {l}"
                break
            st = nxt
        if failed:
            branch.verdict = failed
            out.append(branch)
            continue
        branch.final_state = st
        leaf, why = _finalize(H, tau, point, _Node(U, st, len(hole.pts), ()), order)
        if why:
            branch.verdict = why[0]
        else:
            branch.generator = leaf.generator
            branch.verdict = "verified"
        out.append(branch)
    return out


# -- candidate windows and the pipeline -------------------------------------------


def detect_candidates(H, *, tau=None, t=None):
    """Candidate (tau, t, holes) windows: fully known windows first (largest
    t, row-major), then windows whose holes all sit at border indexes."""
    if tau is not None and t is not None:
        tau = tuple(tau)
        return [(tau, t, tuple(window_holes(H, tau, t)))]
    tmax = max_amplitude_t(H.shape)
    taus = ([tuple(tau)] if tau is not None
            else [(i, j) for i in range(H.shape[0]) for j in range(H.shape[1])])
    ts = [t] if t is not None else list(range(tmax, 0, -1))
    out = []
    for tv in taus:
        best_strict = None
        for tt in ts:
            if 2 * tt > min(H.shape):
                continue
            if not window_holes(H, tv, tt):
                best_strict = (tv, tt, ())
                break
        for tt in ts:
            if best_strict is not None and tt <= best_strict[1]:
                break
            if not 2 <= tt <= 4 or 2 * tt > min(H.shape):
                continue
            holes = window_holes(H, tv, tt)
            if holes and all(h in border_set(tt) for h in holes):
                out.append((tv, tt, tuple(holes)))
                break
        if best_strict is not None:
            out.append(best_strict)
    out.sort(key=lambda cand: (-cand[1], len(cand[2]), cand[0]))
    return out


def _order_preference(requested, U, t):
    if requested in (LEX, GRADED):
        return [requested]
    lex_h = any(U.get((0, j)) for j in range(min(t, U.shape[1])))
    grad_h = False
    for i in range(min(t, U.shape[0] - 1) + 1):
        j = t - i
        if 0 <= j < U.shape[1] and U.get((i, j)):
            grad_h = True
            break
    if grad_h and not lex_h:
        return [GRADED, LEX]
    return [LEX, GRADED]


_JSON_FIELDS = ("status", "tau", "t", "order", "basis", "footprint", "support",
                "coefficients", "descent", "completed_table", "branches_tried",
                "warnings")


@dataclass
class CompletionReport:
    status: str
    tau: list = None
    t: int = None
    order: str = None
    basis: list = dcfield(default_factory=list)
    footprint: list = dcfield(default_factory=list)
    support: list = dcfield(default_factory=list)
    coefficients: list = dcfield(default_factory=list)
    descent: dict = None
    completed_table: list = None
    branches_tried: int = 0
    warnings: list = dcfield(default_factory=list)
    completed: object = dcfield(default=None, compare=False, repr=False)
    generator: object = dcfield(default=None, compare=False, repr=False)

    def to_dict(self):
        return {k: getattr(self, k) for k in _JSON_FIELDS}

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data):
        return cls(**{k: data.get(k) for k in _JSON_FIELDS})

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def _completed_report(H, point, tau, t, order, leaf, warnings, branches):
    completed = complete_table(H, leaf.generator, tau, point)
    descent = descend_to_base(leaf.generator, point, H.shape, H.field)
    descent_doc = None
    if descent is not None:
        base_gen, tau2 = descent
        descent_doc = {"tau2": list(tau2),
                       "coefficients": [{"exp": list(m), "value": str(c)}
                                        for m, c in sorted(base_gen.coeffs.items())]}
    report = CompletionReport(
        status=STATUS_COMPLETED,
        tau=list(tau),
        t=t,
        order=order,
        basis=[format_poly(f) for f in leaf.state.F],
        footprint=sorted([list(p) for p in leaf.state.delta]),
        support=[list(m) for m in sorted(leaf.coefficients)],
        coefficients=[{"exp": list(m), "value": str(c)}
                      for m, c in sorted(leaf.coefficients.items())],
        descent=descent_doc,
        completed_table=[[str(v) for v in row] for row in completed.cells],
        branches_tried=branches,
        warnings=list(warnings),
    )
    report.completed = completed
    report.generator = leaf.generator
    return report


def resolve(H, *, point=None, order="auto", t=None, tau=None,
            branch_budget=None, validate=False):
    """Full pipeline: find candidate windows, run the iteration with hole
    handling, close/recover/verify, and complete the table."""
    warnings = []
    if point is None:
        point = H.point()
    budget = branch_budget if branch_budget is not None else H.field.order ** 2
    if t is not None and t > 4:
        warnings.append(f"t={t} is beyond the proven regime (t <= 4); results "
                        f"rest on the final verification")
    candidates = detect_candidates(H, tau=tau, t=t)
    if not candidates:
        warnings.append("no hyperbolic window of known values was found")
        return CompletionReport(STATUS_NOT_SYNDROME, warnings=warnings,
                                order=order if order != "auto" else None)
    reasons = []
    branches = 0
    for tv, tt, _holes in candidates:
        if tt > 4 and t is None:
            warnings.append(f"window tau={tv} uses t={tt}, beyond the proven "
                            f"regime (t <= 4)")
        try:
            U0 = extract_working(H, tv, tt)
        except DoesNotFit as exc:
            warnings.append(str(exc))
            continue
        for ordv in _order_preference(order, U0, tt):
            res = _run_window(H, tv, tt, ordv, point,
                              budget=budget - branches, validate=validate)
            branches += res.nodes
            warnings.extend(res.notes)
            if res.exceeded:
                warnings.append(f"branch budget {budget} exceeded at window "
                                f"tau={tv}, t={tt}, order={ordv}")
                return CompletionReport(STATUS_BUDGET, tau=list(tv), t=tt,
                                        order=ordv, branches_tried=branches,
                                        warnings=warnings)
            if len(res.verified) == 1:
                notes = warnings + [msg for _, msg in reasons]
                return _completed_report(H, point, tv, tt, ordv,
                                         res.verified[0], notes, branches)
            if len(res.verified) > 1:
                gens = ", ".join(format_poly(lf.generator) for lf in res.verified)
                warnings.append(f"{len(res.verified)} distinct generators verify "
                                f"at window tau={tv}: {gens}")
                return CompletionReport(STATUS_AMBIGUOUS, tau=list(tv), t=tt,
                                        order=ordv, branches_tried=branches,
                                        warnings=warnings)
            reasons.extend(res.reasons)
    warnings.extend(msg for _, msg in reasons)
    status = (STATUS_OVERFLOW if reasons and all(tag == "overflow"
                                                 for tag, _ in reasons)
              else STATUS_NOT_SYNDROME)
    return CompletionReport(status, branches_tried=branches, warnings=warnings,
                            order=order if order != "auto" else None)
