"""Rotation-number enclosures and their quasimorphism properties."""

from fractions import Fraction

import numpy as np
import pytest

from flatbundle.errors import InvalidInputError, RotationBudgetError
from flatbundle.lifts import (
    RigidLift,
    boundary_action,
    commutator,
    compose,
    identity_lift,
    invert,
    shift,
)
from flatbundle.representations import random_pl_lift
from flatbundle.rotation import Enclosure, rotation_number

F = Fraction


def pl_pair(seed):
    rng = np.random.default_rng(seed)
    return random_pl_lift(rng), random_pl_lift(rng)


class TestEnclosure:
    def test_rejects_inverted_interval(self):
        with pytest.raises(InvalidInputError):
            Enclosure(1, 0)

    def test_interval_arithmetic(self):
        a = Enclosure(F(1, 2), F(3, 4))
        b = Enclosure(F(1, 8), F(1, 4))
        assert (a - b) == Enclosure(F(1, 4), F(5, 8))
        assert (-a) == Enclosure(F(-3, 4), F(-1, 2))
        assert a.scale(3) == Enclosure(F(3, 2), F(9, 4))
        assert a.intersect(Enclosure(F(0), F(5, 8))) == Enclosure(F(1, 2), F(5, 8))


class TestExactCases:
    def test_rigid_is_degenerate_exact(self):
        enc = rotation_number(RigidLift(F(2, 5)), tol=1e-6)
        assert enc.lo == enc.hi == F(2, 5)

    def test_shift_of_identity(self):
        enc = rotation_number(shift(identity_lift(), 1), tol=1e-6)
        assert enc.lo == enc.hi == 1

    def test_rejects_bad_tolerance(self):
        with pytest.raises(InvalidInputError):
            rotation_number(identity_lift(), tol=0.0)


class TestEnclosureContract:
    def test_contains_known_rotation_number(self):
        # conjugate of a rigid rotation has the same rotation number
        f, h = RigidLift(F(2, 7)), random_pl_lift(np.random.default_rng(0))
        conj = compose(compose(h, f), invert(h))
        enc = rotation_number(conj, tol=1e-4)
        assert enc.contains(F(2, 7))
        assert enc.width <= 1e-4

    def test_budget_error_carries_best_enclosure(self):
        f, g = pl_pair(1)
        with pytest.raises(RotationBudgetError) as info:
            rotation_number(commutator(f, g), tol=1e-15, budget=128)
        best = info.value.best
        assert best.width > 1e-15
        assert best.intersects_open(-1, 1)

    def test_moebius_fixed_point_gives_zero(self):
        import math

        f = boundary_action(((math.e, 0.0), (0.0, 1.0 / math.e)))
        enc = rotation_number(f, tol=1e-4)
        assert enc.contains(0)


class TestInvariants:
    def test_integer_shift_is_exact(self):
        for seed in range(5):
            f = commutator(*pl_pair(seed))
            base = rotation_number(f, tol=1e-3)
            for m in (-2, 1, 5):
                assert rotation_number(shift(f, m), tol=1e-3) == base.translate(m)

    def test_conjugation_invariance(self):
        for seed in range(5):
            rng = np.random.default_rng(seed)
            f = commutator(random_pl_lift(rng), random_pl_lift(rng))
            h = random_pl_lift(rng)
            conj = compose(compose(h, f), invert(h))
            assert rotation_number(conj, tol=1e-3).intersects(
                rotation_number(f, tol=1e-3)
            )

    def test_power_rule(self):
        f = commutator(*pl_pair(11))
        base = rotation_number(f, tol=1e-3)
        power = f
        for n in range(2, 6):
            power = compose(power, f)
            assert rotation_number(power, tol=1e-3).intersects(base.scale(n))

    def test_commutator_enclosure_inside_unit_interval(self):
        for seed in range(5):
            enc = rotation_number(commutator(*pl_pair(seed + 20)), tol=1e-3)
            assert -1 < enc.lo and enc.hi < 1

    def test_quasimorphism_defect_sample(self):
        for seed in range(5):
            f, g = pl_pair(seed + 40)
            d = (
                rotation_number(compose(f, g), tol=1e-3)
                - rotation_number(f, tol=1e-3)
                - rotation_number(g, tol=1e-3)
            )
            assert d.intersects_open(-1, 1)
