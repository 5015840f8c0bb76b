"""Lift algebra: evaluation, composition, inversion, winding, boundary action."""

import math
from fractions import Fraction

import numpy as np
import pytest

from flatbundle.errors import (
    AmbiguousArcError,
    ComplexityBudgetError,
    InvalidLiftError,
    InvalidMatrixError,
)
from flatbundle.hyperbolic import rotation_about_center
from flatbundle.lifts import (
    MoebiusLift,
    PLLift,
    RigidLift,
    boundary_action,
    commutator,
    compose,
    evaluate,
    identity_lift,
    invert,
    is_monotone_on_grid,
    normalize,
    reverse,
    shift,
    winding_number,
)
from flatbundle.representations import fuchsian_representation, random_pl_lift

F = Fraction

STEP_PL = PLLift((F(0), F(1, 2)), (F(1, 4), F(3, 4)))


def grid(n=1000):
    return np.linspace(0.0, 1.0, n)


def max_diff(f, g, n=1000):
    xs = grid(n)
    return float(np.max(np.abs(f(xs) - g(xs))))


class TestEvaluate:
    def test_rigid_at_zero(self):
        assert evaluate(RigidLift(F(1, 3)), F(0)) == F(1, 3)

    def test_rigid_equivariance_exact(self):
        assert evaluate(RigidLift(F(1, 3)), F(1)) == F(4, 3)

    def test_pl_midpoint(self):
        assert evaluate(STEP_PL, F(1, 4)) == F(1, 2)

    def test_equivariance_to_working_precision(self):
        for f in (RigidLift(0.37), STEP_PL, boundary_action(((2.0, 0.3), (0.1, 0.515)))):
            for x in (0.0, 0.21, 0.9):
                assert evaluate(f, x + 1) == pytest.approx(evaluate(f, x) + 1, abs=1e-12)

    def test_pl_exact_fraction_path(self):
        x = F(7, 13)
        y = STEP_PL(x)
        assert isinstance(y, Fraction)
        assert STEP_PL(x + 5) == y + 5

    def test_array_matches_scalar(self):
        f = random_pl_lift(np.random.default_rng(0))
        xs = grid(64)
        ys = f(xs)
        for x, y in zip(xs, ys):
            assert f.eval_float(float(x)) == pytest.approx(y, abs=1e-14)


class TestValidation:
    def test_rejects_unsorted_breakpoints(self):
        with pytest.raises(InvalidLiftError):
            PLLift((F(1, 2), F(0)), (F(0), F(1, 4)))

    def test_rejects_non_increasing_values(self):
        with pytest.raises(InvalidLiftError):
            PLLift((F(0), F(1, 2)), (F(3, 4), F(1, 4)))

    def test_rejects_full_period_span(self):
        with pytest.raises(InvalidLiftError):
            PLLift((F(0), F(1, 2)), (F(0), F(1)))

    def test_rejects_bad_determinant(self):
        with pytest.raises(InvalidMatrixError):
            MoebiusLift(((2.0, 0.0), (0.0, 1.0)))


class TestCompose:
    def test_rigid_angles_add_exactly(self):
        h = compose(RigidLift(F(1, 3)), RigidLift(F(1, 7)))
        assert h == RigidLift(F(10, 21))

    def test_identity_is_neutral(self):
        f = STEP_PL
        assert compose(f, identity_lift()) is f
        assert compose(identity_lift(), f) is f

    def test_pl_with_its_inverse_is_identity(self):
        f = random_pl_lift(np.random.default_rng(1))
        h = compose(f, invert(f))
        assert max_diff(h, identity_lift()) < 1e-12

    def test_pl_merge_is_exact(self):
        f = random_pl_lift(np.random.default_rng(2))
        g = random_pl_lift(np.random.default_rng(3))
        h = compose(f, g)
        assert isinstance(h, PLLift) and h.is_exact
        for x in (F(0), F(1, 3), F(9, 11)):
            assert h(x) == f(g(x))

    def test_breakpoint_budget(self):
        f = random_pl_lift(np.random.default_rng(4), 8, 8)
        g = random_pl_lift(np.random.default_rng(5), 8, 8)
        with pytest.raises(ComplexityBudgetError):
            compose(f, g, breakpoint_budget=4)

    def test_chain_budget(self):
        m = boundary_action(rotation_about_center(0.25))
        with pytest.raises(ComplexityBudgetError):
            compose(m, m, chain_budget=1)

    def test_moebius_composition_is_lazy_chain(self):
        m = boundary_action(rotation_about_center(0.25))
        h = compose(m, m)
        assert h.n_parts == 2
        assert max_diff(h, RigidLift(0.5)) < 1e-12


class TestInvert:
    def test_rigid(self):
        assert invert(RigidLift(F(2, 5))) == RigidLift(F(-2, 5))

    def test_identity(self):
        assert invert(identity_lift()) == identity_lift()

    def test_pl_swaps_breakpoints_and_values(self):
        # swap-and-normalize oracle: f(0)=1/4, f(1/2)=3/4 inverts to
        # g(1/4)=0, g(3/4)=1/2
        g = invert(STEP_PL)
        assert g == PLLift((F(1, 4), F(3, 4)), (F(0), F(1, 2)))

    def test_pl_round_trip(self):
        f = random_pl_lift(np.random.default_rng(6))
        g = invert(f)
        for x in (F(0), F(1, 5), F(17, 23), F(3, 2)):
            assert g(f(x)) == x

    def test_moebius_round_trip(self):
        f = boundary_action(((1.5, 0.25), (0.4, 0.7333333333333334)))
        f = shift(f, 3)
        g = invert(f)
        xs = grid(200)
        assert np.max(np.abs(g(f(xs)) - xs)) < 1e-9

    def test_chain_round_trip(self):
        f = commutator(boundary_action(rotation_about_center(0.3)),
                       random_pl_lift(np.random.default_rng(7)))
        assert max_diff(compose(invert(f), f, chain_budget=100), identity_lift()) < 1e-9


class TestCommutator:
    def test_rotations_commute(self):
        h = commutator(RigidLift(F(1, 3)), RigidLift(F(1, 7)))
        assert h == RigidLift(F(0))

    def test_shift_invariance(self):
        rng = np.random.default_rng(8)
        f, g = random_pl_lift(rng), random_pl_lift(rng)
        base = commutator(f, g)
        shifted = commutator(shift(f, 1), g)
        assert max_diff(base, shifted) < 1e-12
        shifted = commutator(shift(f, -2), shift(g, 3))
        assert max_diff(base, shifted) < 1e-12

    def test_fuchsian_commutator_is_not_identity(self):
        rep = fuchsian_representation(2)
        h = commutator(rep.generators[0], rep.generators[1])
        xs = grid(500)
        assert float(np.max(np.abs(h(xs) - xs))) > 0.01


class TestShiftReverseNormalize:
    def test_shift_types(self):
        assert shift(RigidLift(F(1, 3)), 2) == RigidLift(F(7, 3))
        f = shift(STEP_PL, -1)
        assert f(F(0)) == STEP_PL(F(0)) - 1
        m = shift(boundary_action(rotation_about_center(0.3)), 4)
        assert m.eval_float(0.25) == pytest.approx(0.55 + 4, abs=1e-12)

    def test_reverse_negates_rigid(self):
        assert reverse(RigidLift(F(2, 5))) == RigidLift(F(-2, 5))

    def test_reverse_is_minus_f_minus_x(self):
        rng = np.random.default_rng(9)
        for f in (random_pl_lift(rng),
                  boundary_action(((1.1, 0.2), (0.3, (1 + 0.2 * 0.3) / 1.1))),
                  commutator(random_pl_lift(rng), random_pl_lift(rng))):
            r = reverse(f)
            xs = grid(300)
            assert np.max(np.abs(r(xs) + f(-xs))) < 1e-9

    def test_normalize_lands_in_unit_interval(self):
        f = shift(STEP_PL, 7)
        assert 0 <= normalize(f)(F(0)) < 1


class TestBoundaryAction:
    def test_identity_matrix(self):
        f = boundary_action(((1.0, 0.0), (0.0, 1.0)))
        assert max_diff(f, identity_lift()) < 1e-12

    def test_elliptic_about_center_is_rigid(self):
        for turns in (0.125, 0.3):
            f = boundary_action(rotation_about_center(turns))
            assert max_diff(f, RigidLift(turns)) < 1e-12

    def test_hyperbolic_has_two_fixed_points(self):
        f = boundary_action(((math.e, 0.0), (0.0, 1.0 / math.e)))
        xs = (np.arange(2000) + 0.5) / 2000.0
        d = f(xs) - xs
        signs = np.sign(d)
        changes = int(np.sum(signs != np.roll(signs, 1)))
        assert changes == 2

    def test_rejects_non_unit_determinant(self):
        with pytest.raises(InvalidMatrixError):
            boundary_action(((1.0, 0.0), (0.0, 1.1)))


class TestWinding:
    def test_constant_list(self):
        assert winding_number([F(1, 3)] * 5).degree == 0

    def test_three_eighths_configuration(self):
        pts = [F(3, 8) * j % 1 for j in range(8)]
        res = winding_number(pts)
        assert res.degree == 3
        assert res.arc_length == 3

    def test_dense_negative_loop(self):
        pts = [(-2 * t / 1000) % 1 for t in range(1000)]
        assert winding_number(pts).degree == -2

    def test_antipodal_pair_rejected(self):
        with pytest.raises(AmbiguousArcError):
            winding_number([F(0), F(1, 2)])
        with pytest.raises(AmbiguousArcError):
            winding_number([0.0, 0.5, 0.25])


class TestMonotonicityAudit:
    def test_constructed_lift_zoo(self):
        rng = np.random.default_rng(10)
        rep = fuchsian_representation(2)
        zoo = [
            RigidLift(F(2, 5)),
            RigidLift(-0.37),
            STEP_PL,
            random_pl_lift(rng),
            invert(random_pl_lift(rng)),
            reverse(random_pl_lift(rng)),
            rep.generators[0],
            invert(rep.generators[1]),
            commutator(rep.generators[0], rep.generators[1]),
            compose(random_pl_lift(rng), rep.generators[2], chain_budget=100),
        ]
        for f in zoo:
            assert is_monotone_on_grid(f), f
