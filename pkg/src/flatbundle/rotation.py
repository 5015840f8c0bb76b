"""Rigorously enclosed Poincare rotation numbers.

For a lift ``f`` and any iterate count ``n``, the classical displacement
bound gives ``|f^n(0)/n - rot(f)| < 1/n``.  The engine iterates the orbit of
0 inside an outward-padded floating-point interval (monotonicity makes
endpoint iteration sound), emits an enclosure at geometrically spaced
checkpoints, and intersects successive enclosures until the requested width
is reached.  Rigid rotations short-circuit to a degenerate exact interval.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInputError, RotationBudgetError
from .lifts import Lift, RigidLift, Scalar, shift

#: Default cap on total orbit iterations.
DEFAULT_ITERATION_BUDGET = 2**20

_FIRST_CHECKPOINT = 64


@dataclass(frozen=True)
class Enclosure:
    """Closed interval certified to contain a rotation number."""

    lo: Scalar
    hi: Scalar

    def __post_init__(self):
        if self.lo > self.hi:
            raise InvalidInputError(f"empty enclosure [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Scalar:
        return self.hi - self.lo

    def contains(self, x: Scalar) -> bool:
        return self.lo <= x <= self.hi

    def intersects_open(self, a: Scalar, b: Scalar) -> bool:
        return self.lo < b and self.hi > a

    def intersects(self, other: "Enclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersect(self, other: "Enclosure") -> "Enclosure":
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo > hi:
            raise InvalidInputError(
                f"enclosures [{self.lo}, {self.hi}] and [{other.lo}, {other.hi}] are disjoint"
            )
        return Enclosure(lo, hi)

    def translate(self, m: Scalar) -> "Enclosure":
        return Enclosure(self.lo + m, self.hi + m)

    def scale(self, n: int) -> "Enclosure":
        if n >= 0:
            return Enclosure(n * self.lo, n * self.hi)
        return Enclosure(n * self.hi, n * self.lo)

    def __neg__(self) -> "Enclosure":
        return Enclosure(-self.hi, -self.lo)

    def __sub__(self, other: "Enclosure") -> "Enclosure":
        return Enclosure(self.lo - other.hi, self.hi - other.lo)


def _integer_part_at_zero(f: Lift) -> int:
    if f.is_exact:
        return math.floor(f(Fraction(0)))
    return math.floor(f.eval_float(0.0))


def _finalize(lo: float, hi: float, m: int) -> Enclosure:
    # Exact-rational bounds make enclosures of integer-shifted lifts equal
    # exactly: the padded orbit is bit-identical after peeling, and Fraction
    # arithmetic does not re-round the translation.
    return Enclosure(Fraction(lo) + m, Fraction(hi) + m)


def rotation_number(
    f: Lift,
    tol: float = 1e-3,
    budget: int = DEFAULT_ITERATION_BUDGET,
) -> Enclosure:
    """Enclosure of the rotation number of ``f`` with width at most ``tol``.

    The iterate count doubles from 64 up to ``budget``, intersecting the
    enclosures obtained at each checkpoint.  If the budget runs out first,
    ``RotationBudgetError`` is raised carrying the best enclosure so far.
    """
    if tol <= 0:
        raise InvalidInputError(f"tolerance must be positive, got {tol!r}")
    if budget < 1:
        raise InvalidInputError(f"budget must be at least 1, got {budget!r}")
    if isinstance(f, RigidLift):
        return Enclosure(f.angle, f.angle)

    # Peel off the integer translation so that integer shifts of f produce
    # bit-identical orbits (and exactly shifted enclosures).
    m = _integer_part_at_zero(f)
    g = shift(f, -m)
    steps = [(p, p.error_bound()) for p in reversed(g.parts)]

    lo = hi = 0.0
    n = 0
    best: Enclosure | None = None
    checkpoint = _FIRST_CHECKPOINT
    while n < budget:
        target = min(checkpoint, budget)
        while n < target:
            for p, e in steps:
                lo = p.eval_float(lo) - e
                hi = p.eval_float(hi) + e
            n += 1
        enc = Enclosure((lo - 1.0) / n, (hi + 1.0) / n)
        best = enc if best is None else best.intersect(enc)
        if best.width <= tol:
            return _finalize(best.lo, best.hi, m)
        checkpoint *= 2
    raise RotationBudgetError(
        f"budget {budget} exhausted at width {float(best.width):.3g} > tol {tol:.3g}",
        _finalize(best.lo, best.hi, m),
    )
