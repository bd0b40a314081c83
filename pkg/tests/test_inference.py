import random

import pytest

from bms2d.bipoly import BivariatePolynomial, parse_poly, recurrence_value
from bms2d.bms import iteration_points
from bms2d.gf import field_for
from bms2d.inference import (STATUS_AMBIGUOUS, STATUS_BUDGET, STATUS_COMPLETED,
                             STATUS_NOT_SYNDROME, STATUS_OVERFLOW,
                             CompletionReport, branch_candidates, classify_hole,
                             construct_branch_polys, detect_candidates,
                             enumerate_branches, infer_direct, resolve,
                             run_to_hole)
from bms2d.lattice import GRADED, LEX, hyperbolic_set, lt_total
from bms2d.oracle import random_instance, syndrome_table
from bms2d.tables import IncompleteTable, extract_working, parse_table

EXPECTED_COMPLETION = [
    ["0", "a^5", "a^10", "a^10", "a^5"],
    ["a^14", "a^4", "a^4", "a^14", "0"],
    ["a^13", "a^13", "a^8", "0", "a^8"],
    ["a^7", "a^2", "0", "a^2", "a^7"],
    ["a^11", "0", "a^11", "a", "a"],
]


def case1_fixture(gf16, point5, seed=3):
    """Row-pair support puts the iteration in exceptional configuration 1
    at the border index (1, 1) under the graded ordering."""
    rng = random.Random(seed)
    supp = [(0, 2), (3, 2)]
    coeffs = {m: gf16.elements()[rng.randrange(1, 16)] for m in supp}
    e = BivariatePolynomial(gf16, coeffs)
    table = syndrome_table(e, (0, 0), point5, (5, 5))
    truth = table.get((1, 1))
    return e, table.with_cell((1, 1), None), truth


def test_classify_hole_examples(gf16, point5):
    e, punched, _ = case1_fixture(gf16, point5)
    hole = run_to_hole(punched, (0, 0), 2, GRADED)
    assert hole.l == (1, 1)
    cls = classify_hole(hole.l, hole.state, GRADED, 2)
    assert (cls.kind, cls.case) == ("interior", 1)
    assert hole.state.staircase() == [(2, 0), (0, 1)]
    # off-border positions are rejected outright
    off = classify_hole((1, 0), hole.state, GRADED, 2)
    assert off.kind == "off_border"
    # outside the supported regime no estimation is offered
    assert classify_hole((1, 1), hole.state, GRADED, 5).kind == "unsupported"


def test_classify_axis_case(gf16, point5):
    rng = random.Random(0)
    supp = [(1, 0), (1, 3)]  # column pair: axis case at (0, 3)
    coeffs = {m: gf16.elements()[rng.randrange(1, 16)] for m in supp}
    e = BivariatePolynomial(gf16, coeffs)
    punched = syndrome_table(e, (0, 0), point5, (5, 5)).with_cell((0, 3), None)
    hole = run_to_hole(punched, (0, 0), 2, GRADED)
    assert hole.l == (0, 3)
    cls = classify_hole(hole.l, hole.state, GRADED, 2)
    assert (cls.kind, cls.case) == ("axis", 1)
    assert hole.state.staircase()[1][1] == 2


def test_infer_direct_examples(gf16, point5):
    e = parse_poly("a^9*X1^2*X2", gf16)
    table = syndrome_table(e, (1, 1), point5, (5, 5))
    U = extract_working(table, (0, 0))
    truth = U.get((1, 0))
    f = parse_poly("X1 + 1", gf16)
    hidden = U.with_cell((1, 0), None)
    # two-term relation: the unknown equals the other cell
    assert infer_direct(f, hidden, (1, 0), GRADED) == U.get((0, 0))
    # an exact locator recovers the true value
    loc = parse_poly(f"X1 + a^{(point5.alpha1 ** 2).log}", gf16)
    assert infer_direct(loc, hidden, (1, 0), GRADED) == truth
    # writing the inferred value makes the recurrence vanish
    filled = hidden.with_cell((1, 0), infer_direct(loc, hidden, (1, 0), GRADED))
    assert not recurrence_value(loc, filled, (1, 0), GRADED)


def test_construct_branch_polys(gf16, point5):
    _, punched, _ = case1_fixture(gf16, point5)
    hole = run_to_hole(punched, (0, 0), 2, GRADED)
    cls = classify_hole(hole.l, hole.state, GRADED, 2)
    zero, one = gf16.zero(), gf16.one()
    # b = 0 leaves the referenced basis polynomial unchanged
    assert construct_branch_polys(cls, hole.state, zero) == [hole.state.poly_at(2)]
    ent = hole.state.aux_at(1)
    b = gf16.parse("a^5")
    h = construct_branch_polys(cls, hole.state, b)[0]
    assert h == hole.state.poly_at(2) - ent.poly.scale(b / ent.v)
    with pytest.raises(ValueError):
        construct_branch_polys(classify_hole((1, 0), hole.state, GRADED, 2),
                               hole.state, one)


def test_branch_enumeration_selects_truth(gf16, point5):
    e, punched, truth = case1_fixture(gf16, point5)
    hole = run_to_hole(punched, (0, 0), 2, GRADED)
    cands = branch_candidates(classify_hole(hole.l, hole.state, GRADED, 2),
                              hole.state, hole.U, hole.l)
    assert len(cands) == 16  # the parameter sweep reaches every field value
    assert len({v.log for _, v in cands}) == 16
    branches = enumerate_branches(punched, (0, 0), 2, GRADED, hole, point=point5)
    verified = [br for br in branches if br.verdict == "verified"]
    assert len(verified) == 1
    assert verified[0].value == truth
    assert sorted(verified[0].generator.coeffs) == sorted(e.coeffs)


def test_branch_properties_on_fixture(gf16, point5):
    e, punched, truth = case1_fixture(gf16, point5)
    hole = run_to_hole(punched, (0, 0), 2, GRADED)
    cls = classify_hole(hole.l, hole.state, GRADED, 2)
    branches = enumerate_branches(punched, (0, 0), 2, GRADED, hole, point=point5)
    completed = [br for br in branches if br.final_state is not None]
    assert completed
    # auxiliary set never changes after the exceptional index
    def gkey(state):
        return tuple((en.poly.key(), en.k, en.v.log, en.record) for en in state.G)
    for br in completed:
        assert gkey(br.final_state) == gkey(hole.state)
    # basis elements away from the replaced slot agree across branches
    href = hole.state.poly_at(cls.refs[0][0]).lp(GRADED)
    others = {frozenset(f.key() for f in br.final_state.F if f.lp(GRADED) != href)
              for br in completed}
    assert len(others) == 1
    # at the verifying branch the branch polynomial annihilates the rest
    # of the window
    ver = next(br for br in branches if br.verdict == "verified")
    U = hole.U.with_cell(hole.l, ver.value)
    for k in iteration_points(2, (5, 5), GRADED):
        if not lt_total(k, hole.l, GRADED):
            for h in ver.branch_polys:
                assert not recurrence_value(h, U, k, GRADED)


def test_resolve_example_completes(example_text):
    table = parse_table(example_text)
    report = resolve(table)
    assert report.status == STATUS_COMPLETED
    assert report.tau == [3, 4] and report.t == 2
    assert report.support == [[0, 2], [1, 3]]
    assert [c["value"] for c in report.coefficients] == ["a^9", "1"]
    assert report.descent == {
        "tau2": [3, 4],
        "coefficients": [{"exp": [0, 2], "value": "1"},
                         {"exp": [1, 3], "value": "1"}]}
    assert report.completed_table == EXPECTED_COMPLETION
    assert report.completed.is_complete
    # deterministic repeat
    assert resolve(table).to_dict() == report.to_dict()


def test_resolve_direct_hole(gf16, point5):
    rng = random.Random(21)
    inst = random_instance(gf16, point5, (5, 5), weight=1, rng=rng, tau=(0, 0))
    punched = inst.table.with_cell((1, 1), None)
    report = resolve(punched, point=point5, tau=(0, 0), t=2)
    assert report.status == STATUS_COMPLETED
    assert report.completed.get((1, 1)) == inst.table.get((1, 1))


def test_resolve_statuses(gf16, point5):
    rng = random.Random(23)
    # not a syndrome table: perturb one cell
    inst = random_instance(gf16, point5, (5, 5), weight=2, rng=rng)
    old = inst.table.get((0, 0))
    alt = next(x for x in gf16.elements() if x and x != old)
    report = resolve(inst.table.with_cell((0, 0), alt), point=point5)
    assert report.status in (STATUS_NOT_SYNDROME, STATUS_OVERFLOW)
    # weight above the window bound overflows
    inst3 = random_instance(gf16, point5, (5, 5), weight=3, rng=rng)
    report = resolve(inst3.table, point=point5, tau=tuple(inst3.tau), t=2)
    assert report.status in (STATUS_OVERFLOW, STATUS_NOT_SYNDROME)
    # an empty table has no window at all
    empty = IncompleteTable(gf16, (5, 5), [[None] * 5 for _ in range(5)],
                            point5.exponents)
    report = resolve(empty, point=point5)
    assert report.status == STATUS_NOT_SYNDROME
    assert any("no hyperbolic window" in w for w in report.warnings)


def ambiguous_fixture(gf16, point5):
    """Known cells restricted to one window plus two helper cells, with two
    border holes: several hypothesised values complete and verify."""
    rng = random.Random(9006)
    inst = random_instance(gf16, point5, (5, 5), weight=2, rng=rng, tau=(0, 0))
    keep = set(hyperbolic_set(5, (5, 5))) | {(1, 2), (2, 1)}
    cells = [[inst.table.get((i, j)) if (i, j) in keep else None
              for j in range(5)] for i in range(5)]
    H = IncompleteTable(gf16, (5, 5), cells, point5.exponents)
    return H.with_cell((1, 1), None).with_cell((3, 0), None)


def test_resolve_ambiguous(gf16, point5):
    H = ambiguous_fixture(gf16, point5)
    report = resolve(H, point=point5, tau=(0, 0), t=2)
    assert report.status == STATUS_AMBIGUOUS


def test_resolve_branch_budget(gf16, point5):
    H = ambiguous_fixture(gf16, point5)
    report = resolve(H, point=point5, tau=(0, 0), t=2, branch_budget=4)
    assert report.status == STATUS_BUDGET


def test_resolve_prefers_clean_window_over_hole(gf16, point5):
    # a table with one hole still completes via a window avoiding it
    rng = random.Random(29)
    inst = random_instance(gf16, point5, (5, 5), weight=2, rng=rng, holes=1)
    report = resolve(inst.table, point=point5)
    assert report.status == STATUS_COMPLETED
    truth = syndrome_table(inst.e, inst.tau, point5, (5, 5))
    assert report.completed.cells == truth.cells


def test_detect_candidates_prefers_larger_t_with_border_hole(gf16, point5):
    rng = random.Random(31)
    inst = random_instance(gf16, point5, (5, 5), weight=2, rng=rng, tau=(0, 0))
    keep = set(hyperbolic_set(5, (5, 5)))
    cells = [[inst.table.get((i, j)) if (i, j) in keep else None
              for j in range(5)] for i in range(5)]
    H = IncompleteTable(gf16, (5, 5), cells, point5.exponents).with_cell((1, 1), None)
    cands = detect_candidates(H)
    assert cands[0] == ((0, 0), 2, ((1, 1),))


def test_report_round_trip(example_text):
    report = resolve(parse_table(example_text))
    again = CompletionReport.from_json(report.to_json())
    assert again == report
    failed = CompletionReport(STATUS_NOT_SYNDROME, warnings=["w"])
    assert CompletionReport.from_json(failed.to_json()) == failed


def test_off_border_hole_falls_back_to_other_window(gf16, point5):
    # a hole below the border threshold makes one window unusable; the
    # pipeline reports it and completes through another placement
    rng = random.Random(37)
    inst = random_instance(gf16, point5, (5, 5), weight=1, rng=rng, tau=(0, 0))
    punched = inst.table.with_cell((0, 1), None)  # (0,1) is off-border for t=2
    report = resolve(punched, point=point5)
    assert report.status == STATUS_COMPLETED
    assert report.completed.get((0, 1)) == inst.table.get((0, 1))
    forced = resolve(punched, point=point5, tau=(0, 0), t=2)
    assert forced.status != STATUS_COMPLETED or forced.tau != [0, 0]
