from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import pytest

from xmod.battery import group_algebra_z2, group_algebra_z3
from xmod.counting import (
    Assignment,
    CountReport,
    count_homomorphisms,
    count_homomorphisms_naive,
    count_linear_fastpath,
    count_report,
    count_with_method,
    evaluate_crossed_word,
    evaluate_free_word,
    fastpath_applicable,
    format_count_report,
    invariant,
    select_method,
)
from xmod.crossed import (
    FiniteCrossedModule,
    build_conjugation_crossed_module,
    ga_index,
)
from xmod.errors import (
    EvaluationError,
    FastPathUnavailable,
    InvalidPresentationError,
    NaiveCapExceeded,
    WorkCapExceeded,
)
from xmod.groups import build_cyclic_group, build_symmetric_group
from xmod.presentations import (
    CrossedPresentation,
    CrossedWord,
    free_product,
)
from xmod.words import EMPTY_WORD, FreeWord, parse_word


def word(text: str) -> FreeWord:
    return parse_word(text)


def sphere() -> CrossedPresentation:
    return CrossedPresentation(("X",), ("e",), {"e": word("X")})


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def test_evaluate_free_word_in_s3():
    cm = build_conjugation_crossed_module(build_symmetric_group(3))
    # indices in lexicographic order: 2 = (1,0,2), 1 = (0,2,1)
    assignment = Assignment({"X": 2, "Y": 1}, {})
    value = evaluate_free_word(word("X Y"), assignment, cm)
    # (1,0,2) after (0,2,1): i -> X[Y[i]] = (1,2,0) which is index 3
    assert value == 3
    assert evaluate_free_word(word("X X^-1"), assignment, cm) == cm.base.identity
    assert evaluate_free_word(EMPTY_WORD, assignment, cm) == cm.base.identity


def test_evaluate_unassigned_raises():
    cm = build_conjugation_crossed_module(build_cyclic_group(2))
    with pytest.raises(EvaluationError):
        evaluate_free_word(word("Z"), Assignment({}, {}), cm)
    with pytest.raises(EvaluationError):
        evaluate_crossed_word(
            CrossedWord(((EMPTY_WORD, "e", 1),)), Assignment({}, {}), cm
        )


def test_evaluate_crossed_word_group_algebra():
    # In the group-algebra target over Z2 with p=2: psi(f) = delta_0, phi(X)=1.
    # The word (1; f; +)(X; f; +) evaluates to delta_0 + delta_1 = index 3.
    cm = group_algebra_z2()
    delta0 = ga_index((1, 0), 2)
    assignment = Assignment({"X": 1}, {"f": delta0})
    crossed = CrossedWord(((EMPTY_WORD, "f", 1), (word("X"), "f", 1)))
    assert evaluate_crossed_word(crossed, assignment, cm) == ga_index((1, 1), 2)
    # Same word with a minus sign collapses (characteristic two).
    crossed = CrossedWord(((EMPTY_WORD, "f", 1), (EMPTY_WORD, "f", -1)))
    assert evaluate_crossed_word(crossed, assignment, cm) == cm.fiber.identity


def test_evaluate_spun_hopf_style_term():
    # Mixed-cell relation in the Z3 group-algebra target: with phi(X)=1,
    # phi(Y)=0 the word (1; f; +)(X; f; -) shifts then cancels one delta.
    cm = group_algebra_z3()
    f = ga_index((0, 1, 0), 2)
    assignment = Assignment({"X": 1, "Y": 0}, {"f": f, "h": f})
    crossed = CrossedWord(((EMPTY_WORD, "f", 1), (word("X"), "f", -1)))
    got = evaluate_crossed_word(crossed, assignment, cm)
    assert got == ga_index((0, 1, 1), 2)


# ---------------------------------------------------------------------------
# Backtracking counts against closed forms
# ---------------------------------------------------------------------------


def test_sphere_counts(battery):
    # One generator, one cell with boundary X: for phi(X) = g the cell ranges
    # over the boundary fiber of g, and these fibers partition the target
    # fiber, so the total is its order.
    pres = sphere()
    for _, cm in battery:
        assert count_homomorphisms(pres, cm) == cm.fiber.order


def test_free_cell_over_trivial_boundary(battery):
    # Boundary word 1 leaves psi ranging over the kernel of the boundary.
    pres = CrossedPresentation(("X",), ("e",), {"e": EMPTY_WORD})
    for _, cm in battery:
        kernel = sum(
            1 for e in range(cm.fiber.order)
            if cm.boundary[e] == cm.base.identity
        )
        assert count_homomorphisms(pres, cm) == cm.base.order * kernel


def test_no_generators_no_cells(battery):
    pres = CrossedPresentation((), (), {})
    for _, cm in battery:
        assert count_homomorphisms(pres, cm) == 1


def test_relation_can_cut_count():
    # Two cells over the same boundary, relation e = f pointwise.
    pres = CrossedPresentation(
        ("X",),
        ("e", "f"),
        {"e": word("X"), "f": word("X")},
        (CrossedWord(((EMPTY_WORD, "e", 1), (EMPTY_WORD, "f", -1))),),
    )
    cm = build_conjugation_crossed_module(build_symmetric_group(3))
    # For each phi(X)=g the boundary fiber is {g} alone, so the relation
    # is automatic; count equals the base order.
    assert count_homomorphisms(pres, cm) == 6

    ga = group_algebra_z2()
    # Boundary is identity-only: phi(X) must make the boundary word land on
    # the identity... X evaluates to phi(X), so only phi(X)=0 contributes,
    # and then e = f cuts 16 pairs to 4.
    assert count_homomorphisms(pres, ga) == 4


def test_invalid_presentation_is_rejected():
    bad = CrossedPresentation(("X",), ("e",), {"e": word("Z")})
    cm = group_algebra_z2()
    with pytest.raises(InvalidPresentationError):
        count_homomorphisms(bad, cm)
    with pytest.raises(InvalidPresentationError):
        count_homomorphisms_naive(bad, cm)
    with pytest.raises(InvalidPresentationError):
        count_linear_fastpath(bad, cm)


def test_relation_order_does_not_change_count(compiled_fixtures, battery_by_name):
    pres = compiled_fixtures["spun_hopf"].presentation
    reordered = CrossedPresentation(
        pres.generators,
        pres.cells,
        pres.cell_boundary,
        tuple(reversed(pres.relations)),
    )
    cm = battery_by_name["ga_z2_p2"]
    assert count_homomorphisms(pres, cm) == count_homomorphisms(reordered, cm)


def test_work_cap_raises():
    pres = free_product(sphere(), free_product(sphere(), sphere()))
    cm = build_conjugation_crossed_module(build_symmetric_group(3))
    with pytest.raises(WorkCapExceeded):
        count_homomorphisms(pres, cm, work_cap=10)


def test_naive_cap_is_checked_up_front():
    pres = free_product(sphere(), sphere())
    cm = build_conjugation_crossed_module(build_symmetric_group(3))
    # Space is 6**2 * 6**2 = 1296.
    with pytest.raises(NaiveCapExceeded):
        count_homomorphisms_naive(pres, cm, work_cap=1000)
    assert count_homomorphisms_naive(pres, cm, work_cap=1296) == 36


# ---------------------------------------------------------------------------
# Partitioned counting
# ---------------------------------------------------------------------------


def test_partition_sums_to_total(battery):
    pres = free_product(sphere(), sphere())
    for _, cm in battery:
        total = count_homomorphisms(pres, cm)
        parts = [
            count_homomorphisms(pres, cm, partition=g)
            for g in range(cm.base.order)
        ]
        assert sum(parts) == total


def test_partition_requires_generators():
    cm = group_algebra_z2()
    with pytest.raises(ValueError):
        count_homomorphisms(CrossedPresentation((), (), {}), cm, partition=0)
    with pytest.raises(ValueError):
        count_homomorphisms(sphere(), cm, partition=9)


def test_partition_under_thread_pool_is_deterministic(compiled_fixtures, battery_by_name):
    pres = compiled_fixtures["spun_trefoil"].presentation
    cm = battery_by_name["ga_z3_p2"]
    expected = count_homomorphisms(pres, cm)
    for _ in range(3):
        with ThreadPoolExecutor(max_workers=3) as pool:
            parts = list(
                pool.map(
                    lambda g: count_homomorphisms(pres, cm, partition=g),
                    range(cm.base.order),
                )
            )
        assert sum(parts) == expected


# ---------------------------------------------------------------------------
# Naive oracle agreement
# ---------------------------------------------------------------------------


def test_engines_agree_on_fixtures(compiled_fixtures, battery):
    for name, compiled in compiled_fixtures.items():
        for module_name, cm in battery:
            fast = count_homomorphisms(compiled.presentation, cm)
            slow = count_homomorphisms_naive(compiled.presentation, cm)
            assert fast == slow, (name, module_name)
            if fastpath_applicable(cm):
                linear = count_linear_fastpath(compiled.presentation, cm)
                assert linear == slow, (name, module_name)


# ---------------------------------------------------------------------------
# Linear fast path
# ---------------------------------------------------------------------------


def test_fastpath_applicability(battery_by_name):
    assert fastpath_applicable(battery_by_name["ga_z2_p2"])
    assert fastpath_applicable(battery_by_name["ga_z3_p2"])
    assert not fastpath_applicable(battery_by_name["conj_s3"])


def test_fastpath_rejects_trivial_action_z4_fiber():
    # Z4 fiber with identity boundary and trivial action: abelian but not
    # elementary abelian, so the rank computation over F_p does not apply.
    z1 = build_cyclic_group(1)
    z4 = build_cyclic_group(4)
    cm = FiniteCrossedModule(
        z1, z4, (0, 0, 0, 0), (tuple(range(4)),)
    )
    assert not fastpath_applicable(cm)
    with pytest.raises(FastPathUnavailable):
        count_linear_fastpath(sphere(), cm)


def test_fastpath_rejects_conjugation_target():
    cm = build_conjugation_crossed_module(build_symmetric_group(3))
    with pytest.raises(FastPathUnavailable):
        count_linear_fastpath(sphere(), cm)


def test_fastpath_matches_naive_with_relations(battery_by_name):
    cm = battery_by_name["ga_z2_p2"]
    pres = CrossedPresentation(
        ("X", "Y"),
        ("e", "f"),
        {"e": EMPTY_WORD, "f": EMPTY_WORD},
        (
            CrossedWord(((EMPTY_WORD, "e", 1), (word("X"), "e", -1))),
            CrossedWord(((word("Y"), "f", 1), (EMPTY_WORD, "e", -1))),
        ),
    )
    assert count_linear_fastpath(pres, cm) == count_homomorphisms_naive(pres, cm)


def test_fastpath_trivial_fiber():
    z2 = build_cyclic_group(2)
    z1 = build_cyclic_group(1)
    cm = FiniteCrossedModule(z2, z1, (0,), ((0,), (0,)))
    assert fastpath_applicable(cm)
    pres = CrossedPresentation(("X",), ("e",), {"e": EMPTY_WORD})
    assert count_linear_fastpath(pres, cm) == 2


# ---------------------------------------------------------------------------
# Method selection, invariants, reports
# ---------------------------------------------------------------------------


def test_select_method(battery_by_name):
    pres = sphere()
    assert select_method(pres, battery_by_name["ga_z2_p2"]) == "linear"
    assert select_method(pres, battery_by_name["conj_s3"]) == "backtracking"
    assert select_method(pres, battery_by_name["conj_s3"], "naive") == "naive"
    with pytest.raises(ValueError):
        select_method(pres, battery_by_name["conj_s3"], "magic")


def test_count_with_method_reports_resolution(battery_by_name):
    count, resolved = count_with_method(sphere(), battery_by_name["ga_z3_p2"])
    assert count == 8 and resolved == "linear"
    count, resolved = count_with_method(
        sphere(), battery_by_name["ga_z3_p2"], "backtracking"
    )
    assert count == 8 and resolved == "backtracking"


def test_invariant_fraction(battery):
    pres = sphere()
    for _, cm in battery:
        value = invariant(pres, cm, 1)
        assert value == Fraction(1)
        assert invariant(pres, cm, 0) == Fraction(cm.fiber.order)


def test_invariant_rejects_negative_handles(battery_by_name):
    with pytest.raises(ValueError):
        invariant(sphere(), battery_by_name["ga_z2_p2"], -1)
    with pytest.raises(ValueError):
        count_report(sphere(), battery_by_name["ga_z2_p2"], -1)


def test_report_format_golden():
    report = CountReport(40, 2, Fraction(40, 16), "backtracking")
    text = format_count_report(report, 12)
    assert text == (
        "count 40\n"
        "one_handles 2\n"
        "invariant 5/2\n"
        "method backtracking\n"
        "elapsed_ms 12\n"
    )


def test_report_integer_invariant_prints_denominator_one(battery_by_name):
    report = count_report(sphere(), battery_by_name["conj_s3"], 1)
    assert format_count_report(report, 0).splitlines()[2] == "invariant 1/1"
