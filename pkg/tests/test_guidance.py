"""Plan recommendation and misuse linting."""

from __future__ import annotations

import itertools

import pytest

from paretoeval import (
    ASPECTS,
    EXACTLY_BEST,
    SEVERITIES,
    WARNING_CODES,
    ClearConstraint,
    EvaluationMode,
    IndicatorConfig,
    LintWarning,
    PreferenceSpec,
    RegionOfInterest,
    SetContext,
    VagueClamp,
    aspect_coverage,
    lint,
    recommend,
)

CFG = IndicatorConfig()


def chosen(*names, **overrides):
    cfg = IndicatorConfig(**overrides) if overrides else CFG
    return [(n, cfg) for n in names]


NO_PREFS = PreferenceSpec()
KNEE = PreferenceSpec(roi=RegionOfInterest("knee"))
EXTREME = PreferenceSpec(roi=RegionOfInterest("extreme", objectives=(0,)))
ONE_BEST = PreferenceSpec(
    clear=(ClearConstraint(1, EXACTLY_BEST),)
)
CAPACITY_CLAMP = PreferenceSpec(
    vague=(VagueClamp(objective=1, saturation=3000, hard_floor=1500),)
)
WEIGHTED = PreferenceSpec(weights=(0.7, 0.3))


def codes(findings, min_severity="info"):
    rank = {s: i for i, s in enumerate(SEVERITIES)}
    floor = rank[min_severity]
    return {f.code for f in findings if rank[f.severity] >= floor}


class TestAspectCoverage:
    def test_comprehensive_indicator_alone(self):
        covered = aspect_coverage(["hv"])
        assert set(covered) == set(ASPECTS)
        assert covered["uniformity"] == "-"
        assert covered["convergence"] == "+"

    def test_three_way_combination_fills_gaps(self):
        covered = aspect_coverage(["gd_plus", "spread", "unfr"])
        assert covered == {
            "convergence": "+",
            "spread": "+",
            "uniformity": "+",
            "cardinality": "+",
        }

    def test_full_grade_wins_over_partial(self):
        assert aspect_coverage(["igd", "sp"])["uniformity"] == "+"

    def test_empty_selection(self):
        assert aspect_coverage([]) == {}

    def test_accepts_aliases(self):
        assert set(aspect_coverage(["hypervolume"])) == set(ASPECTS)


class TestLintRules:
    def test_plotting_only(self):
        out = lint([], NO_PREFS, 2, EvaluationMode(plotting_only=True))
        assert codes(out) == {"L-SSP-ONLY"}

    def test_scatter_beyond_three_objectives(self):
        out = lint(
            chosen("hv"), NO_PREFS, 5, EvaluationMode(scatter_requested=True)
        )
        assert "L-SSP-ONLY" in codes(out)
        ok = lint(
            chosen("hv"), NO_PREFS, 3, EvaluationMode(scatter_requested=True)
        )
        assert "L-SSP-ONLY" not in codes(ok)

    def test_doe_sole_with_misleading_stat(self):
        mode = EvaluationMode(doe_only=True, doe_stats=("mean", "worst"))
        out = lint([], NO_PREFS, 2, mode)
        assert codes(out) == {"L-DOE-SOLE"}
        finding = next(f for f in out if f.code == "L-DOE-SOLE")
        assert finding.issue == "II"
        assert "mean" in finding.message

    def test_doe_best_statistic_is_safe(self):
        mode = EvaluationMode(doe_only=True, doe_stats=("best",))
        assert codes(lint([], NO_PREFS, 2, mode)) == set()

    def test_doe_alongside_indicators_is_fine(self):
        mode = EvaluationMode(doe_stats=("mean",))
        out = lint(chosen("hv", "gd_plus", "spread", "unfr"), NO_PREFS, 2, mode)
        assert "L-DOE-SOLE" not in codes(out)

    def test_aspect_gap_without_preferences(self):
        out = lint(chosen("gd_plus"), NO_PREFS, 2)
        gap = next(f for f in out if f.code == "L-ASPECT-GAP")
        assert gap.severity == "warning"
        assert gap.issue == "III"
        for aspect in ("spread", "uniformity", "cardinality"):
            assert aspect in gap.message

    def test_no_aspect_gap_with_preferences(self):
        assert "L-ASPECT-GAP" not in codes(lint(chosen("gd_plus"), KNEE, 2))

    def test_no_aspect_gap_when_covered(self):
        out = lint(chosen("gd_plus", "spread", "unfr"), NO_PREFS, 2)
        assert "L-ASPECT-GAP" not in codes(out)

    def test_spread_dimension_error(self):
        out = lint(chosen("spread"), KNEE, 3)
        finding = next(f for f in out if f.code == "L-SPREAD-DIM")
        assert finding.severity == "error"
        assert "m=3" in finding.message
        assert "L-SPREAD-DIM" not in codes(lint(chosen("spread"), KNEE, 2))

    def test_hv_dimension_error(self):
        out = lint(chosen("hv"), KNEE, 11)
        finding = next(f for f in out if f.code == "L-HV-DIM")
        assert finding.severity == "error"
        assert "L-HV-DIM" not in codes(lint(chosen("hv"), KNEE, 10))

    def test_igd_against_combined_front(self):
        out = lint(chosen("igd"), KNEE, 4)
        finding = next(f for f in out if f.code == "L-IGD-REFSET")
        assert finding.severity == "info"
        assert finding.issue == "III"

    def test_igd_against_external_reference(self):
        mode = EvaluationMode(combined_front_reference=False)
        assert "L-IGD-REFSET" not in codes(lint(chosen("igd"), KNEE, 4, mode))

    def test_spread_uses_reference_extremes_too(self):
        out = lint(chosen("spread"), KNEE, 2)
        assert "L-IGD-REFSET" in codes(out)

    def test_hv_reference_at_worst_values(self):
        out = lint(chosen("hv", hv_strategy="worst_values"), KNEE, 2)
        finding = next(f for f in out if f.code == "L-HV-REFPOINT")
        assert finding.severity == "warning"
        assert "worst_values" in finding.message

    def test_hv_reference_at_exact_nadir(self):
        mode = EvaluationMode(hv_ref_at_nadir=True)
        out = lint(chosen("hv", hv_strategy="explicit", ref_point=(1.0, 1.0)),
                   KNEE, 2, mode)
        assert "L-HV-REFPOINT" in codes(out)

    def test_hv_reference_beyond_nadir_is_fine(self):
        out = lint(chosen("hv"), KNEE, 2)
        assert "L-HV-REFPOINT" not in codes(out)

    def test_clear_preferences_ignored(self):
        mode = EvaluationMode(clear_transfer_planned=False)
        out = lint(chosen("hv"), ONE_BEST, 2, mode)
        finding = next(f for f in out if f.code == "L-PREF-IGNORED")
        assert finding.issue == "IV"
        assert "L-PREF-IGNORED" not in codes(lint(chosen("hv"), ONE_BEST, 2))

    def test_knee_clashes(self):
        out = lint(chosen("igd", "gd", "ci", "hv"), KNEE, 2)
        finding = next(f for f in out if f.code == "L-KNEE-MISMATCH")
        assert finding.issue == "V"
        assert "ci" in finding.message
        assert "gd" in finding.message
        assert "igd" in finding.message
        assert "L-KNEE-MISMATCH" not in codes(lint(chosen("hv"), KNEE, 2))

    def test_extreme_clashes_with_igd(self):
        out = lint(chosen("igd"), EXTREME, 2)
        assert "L-EXTREME-MISMATCH" in codes(out)
        assert "L-EXTREME-MISMATCH" not in codes(lint(chosen("hv"), EXTREME, 2))

    def test_objective_count_validated(self):
        with pytest.raises(ValueError):
            lint(chosen("hv"), NO_PREFS, 0)

    def test_severity_values_validated(self):
        with pytest.raises(ValueError):
            LintWarning(code="X", severity="fatal", message="nope")

    def test_warning_code_table_is_well_formed(self):
        for code, (issue, severity, summary) in WARNING_CODES.items():
            assert severity in SEVERITIES
            assert issue in (None, "I", "II", "III", "IV", "V")
            assert summary
            assert code.startswith(("L-", "N-"))


class TestRecommendGeneralRoute:
    def test_two_objectives_two_sets(self):
        plan = recommend(NO_PREFS, 2)
        names = [p.name for p in plan.indicators]
        assert names == ["gd_plus", "ci", "spread", "unfr", "hv"]
        hv = plan.indicators[-1]
        assert hv.config.hv_strategy == "nadir_plus_tenth"
        assert plan.plotting == "scatter"
        assert plan.doe_steps == ()
        kinds = [s.kind for s in plan.preprocessing]
        assert kinds == ["normalize"]

    def test_aspects_fully_covered(self):
        plan = recommend(NO_PREFS, 2)
        covered = aspect_coverage([p.name for p in plan.indicators])
        assert set(covered) == set(ASPECTS)

    def test_four_objectives_swap_diversity_measure(self):
        plan = recommend(NO_PREFS, 4)
        names = [p.name for p in plan.indicators]
        assert "spread" not in names
        assert "grid_diversity" in names
        assert plan.plotting == "parallel-coordinates"

    def test_three_sets_drop_pairwise_share(self):
        plan = recommend(NO_PREFS, 2, SetContext(set_count=3))
        assert "ci" not in [p.name for p in plan.indicators]

    def test_untransferable_falls_back(self):
        marked = PreferenceSpec(roi=RegionOfInterest("knee"), untransferable=True)
        plan = recommend(marked, 2)
        assert [p.name for p in plan.indicators] == [
            "gd_plus",
            "ci",
            "spread",
            "unfr",
            "hv",
        ]

    def test_screening_step_leads(self):
        spec = PreferenceSpec(screen=(ClearConstraint(0, "at_most", 100),))
        plan = recommend(spec, 2)
        assert plan.preprocessing[0].kind == "screen"

    def test_front_extremes_note_only_with_spread(self):
        assert "N-EXTREMES-SUBSTITUTED" in codes(recommend(NO_PREFS, 2).warnings)
        assert "N-EXTREMES-SUBSTITUTED" not in codes(recommend(NO_PREFS, 4).warnings)

    def test_single_objective_rejected(self):
        with pytest.raises(ValueError):
            recommend(NO_PREFS, 1)


class TestRecommendPreferenceRoutes:
    def test_all_but_one_objective_fixed(self):
        plan = recommend(ONE_BEST, 2)
        assert plan.indicators == ()
        assert any(step.startswith("best:") for step in plan.doe_steps)
        assert [s.kind for s in plan.preprocessing] == ["clear-transfer"]
        assert plan.plotting == "scatter"

    def test_every_objective_fixed_rejected(self):
        spec = PreferenceSpec(
            clear=(
                ClearConstraint(0, EXACTLY_BEST),
                ClearConstraint(1, EXACTLY_BEST),
            )
        )
        with pytest.raises(ValueError):
            recommend(spec, 2)

    def test_threshold_constraints_keep_all_objectives(self):
        spec = PreferenceSpec(clear=(ClearConstraint(0, "at_most", 400),))
        plan = recommend(spec, 2)
        assert [p.name for p in plan.indicators] == [
            "gd_plus",
            "ci",
            "spread",
            "unfr",
            "hv",
        ]
        assert [s.kind for s in plan.preprocessing] == [
            "clear-transfer",
            "normalize",
        ]

    def test_vague_transfer_then_general(self):
        plan = recommend(CAPACITY_CLAMP, 2)
        assert [s.kind for s in plan.preprocessing] == [
            "vague-transfer",
            "normalize",
        ]
        assert [p.name for p in plan.indicators] == [
            "gd_plus",
            "ci",
            "spread",
            "unfr",
            "hv",
        ]

    def test_knee_route(self):
        plan = recommend(KNEE, 2)
        assert [p.name for p in plan.indicators] == ["hv"]
        assert plan.indicators[0].config.hv_strategy == "nadir_plus_tenth"
        assert plan.doe_steps == ()
        assert "N-IGD-EXCLUDED" in codes(plan.warnings)

    def test_extreme_route(self):
        plan = recommend(EXTREME, 2)
        assert [p.name for p in plan.indicators] == ["hv"]
        assert plan.indicators[0].config.hv_strategy == "doubled_range"
        assert any(step.startswith("best:") for step in plan.doe_steps)

    def test_weights_route(self):
        plan = recommend(WEIGHTED, 2)
        assert plan.indicators == ()
        assert any(step.startswith("scalarize:") for step in plan.doe_steps)

    def test_clamp_then_knee(self):
        spec = PreferenceSpec(
            vague=(VagueClamp(0, saturation=10, hard_floor=20),),
            roi=RegionOfInterest("knee"),
        )
        plan = recommend(spec, 2)
        assert [s.kind for s in plan.preprocessing] == ["vague-transfer"]
        assert [p.name for p in plan.indicators] == ["hv"]


class TestPlanHygiene:
    SPECS = [NO_PREFS, KNEE, EXTREME, ONE_BEST, CAPACITY_CLAMP, WEIGHTED]

    def test_plans_are_deterministic(self):
        for spec, m in itertools.product(self.SPECS, (2, 3, 5)):
            assert recommend(spec, m) == recommend(spec, m)

    def test_plans_never_self_flag(self):
        """Every recommended plan passes its own lint at warning level."""
        contexts = [SetContext(set_count=n) for n in (1, 2, 3)]
        for spec, m, ctx in itertools.product(self.SPECS, (2, 3, 4, 10), contexts):
            plan = recommend(spec, m, ctx)
            flagged = {
                f.code
                for f in plan.warnings
                if f.severity != "info" and f.issue in ("III", "IV", "V")
            }
            assert not flagged, (spec, m, ctx.set_count, flagged)

    def test_plan_names_resolve_and_note_codes_are_known(self):
        for spec, m in itertools.product(self.SPECS, (2, 4)):
            plan = recommend(spec, m)
            for f in plan.warnings:
                assert f.code in WARNING_CODES
            assert plan.plotting in ("scatter", "parallel-coordinates")

    def test_plot_note_always_present(self):
        for spec in self.SPECS:
            assert "N-PLOT" in codes(recommend(spec, 2).warnings)

    def test_general_plans_name_a_compliant_indicator(self):
        from paretoeval import aspects_of

        for spec in (NO_PREFS, CAPACITY_CLAMP, KNEE, EXTREME):
            plan = recommend(spec, 2)
            assert any(
                aspects_of(p.name).compliant == "+" for p in plan.indicators
            )


class TestConsistencyChecks:
    def test_clamp_below_at_least_threshold(self):
        spec = PreferenceSpec(
            clear=(ClearConstraint(1, "at_least", 0.8),),
            vague=(VagueClamp(1, saturation=0.5, hard_floor=0.2),),
        )
        with pytest.raises(ValueError, match="at_least"):
            recommend(spec, 2)

    def test_clamp_above_at_most_threshold(self):
        spec = PreferenceSpec(
            clear=(ClearConstraint(0, "at_most", 100),),
            vague=(VagueClamp(0, saturation=150, hard_floor=200),),
        )
        with pytest.raises(ValueError, match="at_most"):
            recommend(spec, 2)

    def test_compatible_clamp_and_threshold(self):
        spec = PreferenceSpec(
            clear=(ClearConstraint(1, "at_least", 0.4),),
            vague=(VagueClamp(1, saturation=0.9, hard_floor=0.5),),
        )
        plan = recommend(spec, 2)
        assert plan.preprocessing[0].kind == "clear-transfer"
