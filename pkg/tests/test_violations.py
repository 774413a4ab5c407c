from fractions import Fraction

import pytest

from conftest import random_pwc, refined_grid, removed_open_intervals, uniform_grid
from qcvx import (
    OpenInterval,
    PLUS_INF,
    PiecewiseConstant,
    PiecewiseLinear,
    XReal,
    check_semicontinuity,
    convexity_violation_set,
    generate_cantor,
    interior_witness_exists,
    is_quasiconvex,
    normalize,
    verify_chord_components,
    verify_component_property,
    violation_set,
)
from qcvx.corpus import (
    monotone,
    monotone_concave,
    random_corpus,
    tent,
    vee,
)
from qcvx.errors import (
    ConsistencyError,
    InexactModelError,
    OrderingError,
    UnsupportedChordError,
)
from qcvx.violations import ViolationDecomposition

F = Fraction


def iv(a, b):
    return OpenInterval(F(a), F(b))


class TestViolationSet:
    def test_tent_full_interior(self):
        d = violation_set(tent(), 0, 1)
        assert d.threshold == XReal(0)
        assert d.components == normalize([iv(0, 1)])
        assert not d.isolated_violations

    def test_cantor_complement_depth1(self):
        d = violation_set(generate_cantor(1, "complement"), 0, 1)
        assert d.components == normalize([iv("1/3", "2/3")])

    def test_monotone_always_empty(self):
        f = monotone()
        for x in uniform_grid(F(0), F(1), 6)[:-1]:
            for y in uniform_grid(x, F(1), 4)[1:]:
                assert violation_set(f, x, y).components.is_empty

    def test_cantor_complement_depth6_components(self):
        d = violation_set(generate_cantor(6, "complement"), 0, 1)
        expected = normalize(iv(a, b) for a, b in removed_open_intervals(6))
        assert d.components == expected
        assert len(d.components) == 63

    def test_isolated_breakpoint_violations_flag_non_lsc(self):
        # Indicator of the depth-2 middle-thirds set: on ]1/6, 1/2[ the
        # retained interval [2/9, 1/3] is above the threshold, and its
        # closed endpoints are not interior to the open component.
        f = generate_cantor(2, "set")
        d = violation_set(f, F(1, 6), F(1, 2))
        assert d.components == normalize([iv("2/9", "1/3")])
        assert d.isolated_violations == (F(2, 9), F(1, 3))
        assert d.lsc_offenders  # the same configuration breaks lsc

    @pytest.mark.parametrize("seed", range(10))
    def test_membership_soundness_on_random_pwc(self, seed):
        f = random_pwc(seed)
        x, y = F(0), F(1)
        d = violation_set(f, x, y)
        threshold = d.threshold
        isolated = set(d.isolated_violations)
        for t in refined_grid(f, 41):
            if not x < t < y:
                continue
            in_set = d.components.contains(t) or t in isolated
            assert in_set == (f.evaluate(t) > threshold)

    @pytest.mark.parametrize("index", range(25))
    def test_membership_soundness_on_random_pl(self, index):
        f = random_corpus(25)[index]
        d = violation_set(f, 0, 1)
        for t in refined_grid(f, 67):
            if not 0 < t < 1:
                continue
            assert d.components.contains(t) == (f.evaluate(t) > d.threshold)

    def test_infinite_threshold_empty(self):
        f = PiecewiseConstant(
            (F(0), F(1, 2), F(1)),
            (XReal(3), XReal(5)),
            (PLUS_INF, XReal(4), PLUS_INF),
        )
        d = violation_set(f, 0, 1)
        assert d.threshold == PLUS_INF
        assert d.components.is_empty and not d.isolated_violations

    def test_ordering_enforced(self):
        with pytest.raises(OrderingError):
            violation_set(tent(), 1, 0)

    def test_inexact_rejected(self):
        from qcvx import Blackbox

        with pytest.raises(InexactModelError):
            violation_set(Blackbox(0, 1, lambda t: t), 0, 1)


class TestComponentChecks:
    def test_tent_component_passes(self):
        f = tent()
        d = violation_set(f, 0, 1)
        (check,) = verify_component_property(f, d)
        assert check.endpoints_outside and check.interior_strict

    def test_cantor_complement_component(self):
        f = generate_cantor(1, "complement")
        d = violation_set(f, 0, 1)
        (check,) = verify_component_property(f, d)
        assert check.passed
        # Direct confirmation on a 3**-3 grid: 1 inside, 0 at endpoints.
        for j in range(28):
            t = F(j, 27)
            if F(1, 3) < t < F(2, 3):
                assert f.evaluate(t) == XReal(1)
        assert f.evaluate(F(1, 3)) == XReal(0) == f.evaluate(F(2, 3))

    def test_corrupted_component_fails_endpoint_check(self):
        f = tent()
        corrupted = ViolationDecomposition(
            x=F(0),
            y=F(1),
            threshold=XReal(0),
            components=normalize([iv("1/4", "3/4")]),
        )
        (check,) = verify_component_property(f, corrupted)
        assert not check.endpoints_outside
        assert check.failing_point == F(1, 4)

    def test_stale_threshold_raises(self):
        corrupted = ViolationDecomposition(
            x=F(0), y=F(1), threshold=XReal(9), components=normalize([])
        )
        with pytest.raises(ConsistencyError):
            verify_component_property(tent(), corrupted)

    def test_component_outside_pair_raises(self):
        corrupted = ViolationDecomposition(
            x=F(0), y=F(1, 2), threshold=XReal(1), components=normalize([iv("3/4", 1)])
        )
        with pytest.raises(ConsistencyError):
            verify_component_property(tent(), corrupted)

    @pytest.mark.parametrize("depth", [1, 2, 3])
    def test_all_checks_pass_for_lsc_cantor_complements(self, depth):
        f = generate_cantor(depth, "complement")
        assert check_semicontinuity(f).is_lsc
        d = violation_set(f, 0, 1)
        assert len(d.components) == 2**depth - 1
        assert all(c.passed for c in verify_component_property(f, d))

    @pytest.mark.parametrize("index", range(15))
    def test_all_checks_pass_for_continuous_models(self, index):
        f = random_corpus(15)[index]
        bps = f.breakpoints()
        for x, y in ((bps[0], bps[-1]), (bps[0], bps[len(bps) // 2])):
            if not x < y:
                continue
            d = violation_set(f, x, y)
            assert all(c.passed for c in verify_component_property(f, d))


class TestQuasiconvexityDecision:
    def test_vee_is_quasiconvex(self):
        assert is_quasiconvex(vee()).is_quasiconvex

    def test_tent_witness(self):
        verdict = is_quasiconvex(tent())
        assert not verdict.is_quasiconvex
        x, y, z = verdict.witness
        assert x < z < y
        f = tent()
        assert f.evaluate(z) > max(f.evaluate(x), f.evaluate(y))

    def test_cantor_depth2_values_at_fixture_triple(self):
        f = generate_cantor(2, "set")
        # 2/5 sits in the removed middle third, 4/5 in ]7/9, 8/9[, while
        # 2/3 is a retained endpoint: a concrete violating triple.
        assert f.evaluate(F(2, 5)) == XReal(0)
        assert f.evaluate(F(4, 5)) == XReal(0)
        assert f.evaluate(F(2, 3)) == XReal(1)
        verdict = is_quasiconvex(f)
        assert not verdict.is_quasiconvex
        x, y, z = verdict.witness
        assert f.evaluate(z) > max(f.evaluate(x), f.evaluate(y))

    def test_monotone_and_constant_quasiconvex(self):
        assert is_quasiconvex(monotone()).is_quasiconvex
        assert is_quasiconvex(monotone_concave()).is_quasiconvex


class TestInteriorWitness:
    def test_vee_has_witness(self):
        assert interior_witness_exists(vee(), 0, 1)

    def test_tent_has_none(self):
        assert not interior_witness_exists(tent(), 0, 1)

    def test_cantor_depth3_every_pair_has_witness_but_not_quasiconvex(self):
        f = generate_cantor(3, "set")
        grid = [F(j, 81) for j in range(82)]
        for i, x in enumerate(grid):
            for y in grid[i + 1 :]:
                assert interior_witness_exists(f, x, y)
        assert not is_quasiconvex(f).is_quasiconvex
        report = check_semicontinuity(f)
        assert report.is_usc and not report.is_lsc

    @pytest.mark.parametrize("index", range(20))
    def test_quasiconvex_models_witness_every_pair(self, index):
        # A quasiconvex function admits a witness on every pair; the
        # converse over breakpoint-and-midpoint pairs alone is false (the
        # refuting pair of a non-quasiconvex function has
        # threshold-crossing endpoints, which need not be candidates),
        # so the reverse containment is exercised through the first
        # decomposition component instead.
        f = random_corpus(20)[index]
        if not is_quasiconvex(f).is_quasiconvex:
            pytest.skip("not quasiconvex")
        bps = f.breakpoints()
        candidates = sorted(
            set(bps) | {(a + b) / 2 for a, b in zip(bps, bps[1:])}
        )
        for i, x in enumerate(candidates):
            for y in candidates[i + 1 :]:
                assert interior_witness_exists(f, x, y)

    def test_candidate_pair_witnesses_do_not_imply_quasiconvexity(self):
        # Witnesses on every breakpoint-and-midpoint pair do not force
        # quasiconvexity: here the violation region of the pair (0, 3/4)
        # ends at the threshold crossing 5/12, which is not a candidate.
        f = PiecewiseLinear(
            ((F(0), F(2)), (F(1, 4), F(4)), (F(1, 2), F(1)), (F(1), F(3)))
        )
        assert not is_quasiconvex(f).is_quasiconvex
        bps = f.breakpoints()
        candidates = sorted(
            set(bps) | {(a + b) / 2 for a, b in zip(bps, bps[1:])}
        )
        for i, x in enumerate(candidates):
            for y in candidates[i + 1 :]:
                assert interior_witness_exists(f, x, y)
        d = violation_set(f, 0, F(3, 4))
        first = d.components.intervals[0]
        assert first == iv(0, "5/12")
        assert not interior_witness_exists(f, first.left, first.right)

    @pytest.mark.parametrize("index", range(20))
    def test_first_component_refutes_witness(self, index):
        # On a violating pair's first maximal interval, every interior
        # value exceeds both endpoint values, so no witness exists there.
        f = random_corpus(20)[index]
        verdict = is_quasiconvex(f)
        if verdict.is_quasiconvex:
            pytest.skip("quasiconvex sample")
        x, y, _ = verdict.witness
        d = violation_set(f, x, y)
        assert not d.components.is_empty
        first = d.components.intervals[0]
        assert not interior_witness_exists(f, first.left, first.right)


class TestChordViolations:
    def test_tent_above_zero_chord(self):
        assert convexity_violation_set(tent(), 0, 1) == normalize([iv(0, 1)])

    def test_vee_below_chords(self):
        assert convexity_violation_set(vee(), 0, 1).is_empty

    def test_affine_piece_gives_equality_not_violation(self):
        assert convexity_violation_set(tent(), 0, F(1, 2)).is_empty

    def test_monotone_concave_distinguishes_the_two_sets(self):
        f = monotone_concave()
        assert violation_set(f, 0, 1).components.is_empty
        chord = convexity_violation_set(f, 0, 1)
        assert not chord.is_empty
        assert chord == normalize([iv(0, 1)])

    def test_parameter_convention_orientation(self):
        # f rises steeply near 0; with z(t) = t*x + (1-t)*y the chord
        # parameters near t = 1 correspond to positions near x.
        f = monotone_concave()
        chord = convexity_violation_set(f, 0, F(1, 2))
        # On [0, 1/2] f is affine, so no chord violation.
        assert chord.is_empty
        chord_full = convexity_violation_set(f, 0, 1)
        assert chord_full.contains(F(1, 2))

    def test_grid_soundness_of_chord_set(self):
        f = monotone_concave()
        x, y = F(0), F(1)
        fx = f.evaluate(x).finite_value
        fy = f.evaluate(y).finite_value
        chord = convexity_violation_set(f, x, y)
        for t in uniform_grid(F(0), F(1), 65):
            position = t * x + (1 - t) * y
            chord_value = t * fx + (1 - t) * fy
            above = f.evaluate(position).finite_value > chord_value
            assert chord.contains(t) == above

    def test_infinite_endpoint_rejected(self):
        f = PiecewiseConstant(
            (F(0), F(1)), (XReal(0),), (PLUS_INF, XReal(0))
        )
        with pytest.raises(UnsupportedChordError):
            convexity_violation_set(f, 0, 1)

    @pytest.mark.parametrize("index", range(12))
    def test_chord_components_verify_for_continuous_models(self, index):
        f = random_corpus(12)[index]
        chord = convexity_violation_set(f, 0, 1)
        checks = verify_chord_components(f, 0, 1, chord)
        assert all(c.passed for c in checks)
