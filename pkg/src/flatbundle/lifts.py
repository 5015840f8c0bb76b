"""Lifts of orientation-preserving circle homeomorphisms and their algebra.

A lift is a strictly increasing map ``f: R -> R`` with ``f(x+1) = f(x)+1``,
projecting to a homeomorphism of the circle ``R/Z``.  Circle points are
measured in turns (the circle has unit circumference), so a rigid rotation
by ``2/5`` of a turn is the lift ``x -> x + 2/5``.

Three primitive families are supported:

* ``RigidLift`` -- rigid rotations, exact when the angle is a ``Fraction``;
* ``PLLift`` -- piecewise-linear lifts given by breakpoints/values on one
  period, exact when the data are rationals;
* ``MoebiusLift`` -- the boundary action of an ``SL(2, R)`` matrix on the
  circle at infinity of the hyperbolic plane (disk model), plus an integer
  choosing the lift.

Compositions that cannot be represented in closed form (anything involving
a Moebius lift) become flat ``ChainLift`` part lists evaluated pointwise.
All values are immutable; all operations are pure functions.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple, Sequence, Union

import numpy as np

from .errors import (
    AmbiguousArcError,
    ComplexityBudgetError,
    InvalidLiftError,
    InvalidMatrixError,
)

Scalar = Union[int, float, Fraction]

#: Default cap on the number of primitive parts in a lazy composition chain.
DEFAULT_CHAIN_BUDGET = 64

#: Default cap on merged breakpoints when composing two PL lifts.
DEFAULT_BREAKPOINT_BUDGET = 4096

_EPS = 2.3e-16


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def _floor(x: Scalar) -> int:
    return math.floor(x)


class BaseLift:
    """Shared evaluation dispatch for all lift types."""

    def __call__(self, x):
        if isinstance(x, np.ndarray):
            return self._eval_array(np.asarray(x, dtype=float))
        if _is_exact(x) and self.is_exact:
            return self._eval_exact(Fraction(x))
        return self._eval_float(float(x))

    @property
    def is_exact(self) -> bool:
        return False

    @property
    def parts(self) -> tuple:
        return (self,)

    @property
    def n_parts(self) -> int:
        return len(self.parts)

    def eval_float(self, x: float) -> float:
        return self._eval_float(x)

    def _eval_exact(self, x: Fraction) -> Fraction:
        raise NotImplementedError

    def _eval_float(self, x: float) -> float:
        raise NotImplementedError

    def _eval_array(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def error_bound(self) -> float:
        """Bound on |computed - true| for float evaluation at one point."""
        raise NotImplementedError


@dataclass(frozen=True)
class RigidLift(BaseLift):
    """The rigid rotation lift ``x -> x + angle``."""

    angle: Scalar

    @property
    def is_exact(self) -> bool:
        return _is_exact(self.angle)

    def _eval_exact(self, x: Fraction) -> Fraction:
        return x + self.angle

    def _eval_float(self, x: float) -> float:
        return x + float(self.angle)

    def _eval_array(self, x: np.ndarray) -> np.ndarray:
        return x + float(self.angle)

    def error_bound(self) -> float:
        return _EPS * (2.0 + abs(float(self.angle)))


def _normalize_points(pairs):
    """Sort (breakpoint, value) pairs after reducing breakpoints mod 1."""
    norm = []
    for b, v in pairs:
        k = _floor(b)
        norm.append((b - k, v - k))
    norm.sort(key=lambda t: t[0])
    out_b, out_v = [], []
    for b, v in norm:
        if out_b and b == out_b[-1]:
            continue
        out_b.append(b)
        out_v.append(v)
    return tuple(out_b), tuple(out_v)


@dataclass(frozen=True)
class PLLift(BaseLift):
    """Piecewise-linear lift on one period.

    ``breakpoints`` are strictly increasing in ``[0, 1)``; ``values`` are the
    images of the breakpoints, strictly increasing with
    ``values[-1] < values[0] + 1``.  The map is extended by linear
    interpolation between breakpoints and by ``f(x+1) = f(x)+1``.
    """

    breakpoints: tuple
    values: tuple

    def __post_init__(self):
        b, v = self.breakpoints, self.values
        if len(b) != len(v) or len(b) < 1:
            raise InvalidLiftError("breakpoints and values must be nonempty and equal length")
        if not (0 <= b[0] and b[-1] < 1):
            raise InvalidLiftError("breakpoints must lie in [0, 1)")
        for i in range(len(b) - 1):
            if not b[i] < b[i + 1]:
                raise InvalidLiftError("breakpoints must be strictly increasing")
            if not v[i] < v[i + 1]:
                raise InvalidLiftError("values must be strictly increasing")
        if not v[-1] < v[0] + 1:
            raise InvalidLiftError("values must span less than one period")

    @property
    def is_exact(self) -> bool:
        return all(_is_exact(x) for x in self.breakpoints + self.values)

    @cached_property
    def _float_data(self):
        m = len(self.breakpoints)
        fb = np.empty(m + 1)
        fv = np.empty(m + 1)
        fb[:m] = [float(x) for x in self.breakpoints]
        fv[:m] = [float(x) for x in self.values]
        fb[m] = fb[0] + 1.0
        fv[m] = fv[0] + 1.0
        slopes = np.diff(fv) / np.diff(fb)
        return fb, fv, slopes

    @cached_property
    def _float_lists(self):
        # plain-list mirror of _float_data for the scalar fast path
        fb, fv, slopes = self._float_data
        return list(fb), list(fv), list(slopes)

    def _segment(self, u):
        # u in [b0, b0+1); endpoints of the segment containing u
        i = bisect_right(self.breakpoints, u) - 1
        b, v = self.breakpoints, self.values
        if i == len(b) - 1:
            return b[i], v[i], b[0] + 1, v[0] + 1
        return b[i], v[i], b[i + 1], v[i + 1]

    def _eval_exact(self, x: Fraction) -> Fraction:
        k = _floor(x - self.breakpoints[0])
        u = x - k
        b0, v0, b1, v1 = self._segment(u)
        return v0 + (u - b0) * Fraction(v1 - v0) / Fraction(b1 - b0) + k

    def _eval_float(self, x: float) -> float:
        fb, fv, slopes = self._float_lists
        k = math.floor(x - fb[0])
        u = x - k
        i = bisect_right(fb, u) - 1
        if i < 0:
            i = 0
        elif i >= len(slopes):
            i = len(slopes) - 1
        return fv[i] + (u - fb[i]) * slopes[i] + k

    def _eval_array(self, x: np.ndarray) -> np.ndarray:
        fb, fv, slopes = self._float_data
        k = np.floor(x - fb[0])
        u = x - k
        i = np.clip(np.searchsorted(fb, u, side="right") - 1, 0, len(slopes) - 1)
        return fv[i] + (u - fb[i]) * slopes[i] + k

    def error_bound(self) -> float:
        fb, fv, slopes = self._float_data
        scale = 1.0 + float(np.max(np.abs(slopes))) + float(np.max(np.abs(fv)))
        return 8.0 * _EPS * scale


@dataclass(frozen=True)
class MoebiusLift(BaseLift):
    """Lift of the circle-at-infinity action of an ``SL(2, R)`` matrix.

    The circle point ``x`` (in turns) corresponds to ``exp(2 pi i x)`` on the
    boundary of the disk model; equivalently to the boundary point
    ``tan(pi (x - 1/2))`` of the upper half-plane.  ``offset`` selects the
    lift; with ``offset == 0`` the lift satisfies ``f(0) in [0, 1)``.
    """

    matrix: tuple
    offset: int = 0

    def __post_init__(self):
        (a, b), (c, d) = self.matrix
        det = a * d - b * c
        if not abs(det - 1.0) <= 1e-9:
            raise InvalidMatrixError(f"matrix determinant {det!r} is not 1")

    @cached_property
    def _entries(self):
        (a, b), (c, d) = self.matrix
        return float(a), float(b), float(c), float(d)

    @cached_property
    def _y00(self) -> float:
        return self._circle_image_scalar(0.0)

    def _circle_image_scalar(self, frac: float) -> float:
        a, b, c, d = self._entries
        phi = math.pi * (frac - 0.5)
        u = math.sin(phi)
        v = math.cos(phi)
        phi2 = math.atan2(a * u + b * v, c * u + d * v)
        phi2 = (phi2 + 0.5 * math.pi) % math.pi - 0.5 * math.pi
        return phi2 / math.pi + 0.5

    def _circle_image(self, frac: np.ndarray) -> np.ndarray:
        # frac in [0, 1) -> image in [0, 1) of the induced circle map
        a, b, c, d = self._entries
        phi = np.pi * (frac - 0.5)
        u = np.sin(phi)
        v = np.cos(phi)
        u2 = a * u + b * v
        v2 = c * u + d * v
        phi2 = np.arctan2(u2, v2)
        phi2 = np.mod(phi2 + 0.5 * np.pi, np.pi) - 0.5 * np.pi
        return phi2 / np.pi + 0.5

    def _eval_array(self, x: np.ndarray) -> np.ndarray:
        k = np.floor(x)
        y0 = self._circle_image(x - k)
        return y0 + (y0 < self._y00) + k + self.offset

    def _eval_float(self, x: float) -> float:
        k = math.floor(x)
        y0 = self._circle_image_scalar(x - k)
        return y0 + (1.0 if y0 < self._y00 else 0.0) + k + self.offset

    def error_bound(self) -> float:
        a, b, c, d = self._entries
        s = a * a + b * b + c * c + d * d
        return 16.0 * _EPS * (1.0 + s)


@dataclass(frozen=True)
class ChainLift(BaseLift):
    """Lazy composition ``parts[0] o parts[1] o ... o parts[-1]``."""

    _parts: tuple

    def __post_init__(self):
        if len(self._parts) < 2:
            raise InvalidLiftError("chain needs at least two parts")
        if any(isinstance(p, ChainLift) for p in self._parts):
            raise InvalidLiftError("chain parts must be primitive lifts")

    @property
    def parts(self) -> tuple:
        return self._parts

    @property
    def is_exact(self) -> bool:
        return all(p.is_exact for p in self._parts)

    def _eval_exact(self, x: Fraction) -> Fraction:
        for p in reversed(self._parts):
            x = p._eval_exact(x)
        return x

    def _eval_float(self, x: float) -> float:
        for p in reversed(self._parts):
            x = p._eval_float(x)
        return x

    def _eval_array(self, x: np.ndarray) -> np.ndarray:
        for p in reversed(self._parts):
            x = p._eval_array(x)
        return x


Lift = Union[RigidLift, PLLift, MoebiusLift, ChainLift]


def identity_lift() -> RigidLift:
    return RigidLift(Fraction(0))


def evaluate(f: Lift, x):
    """Evaluate the lift at ``x`` (scalar or numpy array)."""
    return f(x)


def _is_identity_rigid(f) -> bool:
    return isinstance(f, RigidLift) and f.angle == 0


def invert(f: Lift) -> Lift:
    """Compositional inverse lift: ``invert(f)(f(x)) == x``."""
    if isinstance(f, RigidLift):
        return RigidLift(-f.angle)
    if isinstance(f, PLLift):
        b, v = _normalize_points(zip(f.values, f.breakpoints))
        return PLLift(b, v)
    if isinstance(f, MoebiusLift):
        (a, b), (c, d) = f.matrix
        inv = ((d, -b), (-c, a))
        base = MoebiusLift(inv, 0)
        # g0 o f0 is a lift of the identity, hence an integer translation.
        j = base._eval_float(f._y00)
        ji = round(j)
        if abs(j - ji) > 1e-6:
            raise InvalidLiftError(f"inverse lift offset {j!r} is not an integer")
        return MoebiusLift(inv, -ji - f.offset)
    if isinstance(f, ChainLift):
        return ChainLift(tuple(invert(p) for p in reversed(f.parts)))
    raise TypeError(f"not a lift: {f!r}")


def _compose_pl(f: PLLift, g: PLLift, budget: int) -> PLLift:
    g_inv = invert(g)
    pts = set(g.breakpoints)
    for c in f.breakpoints:
        p = g_inv(c)
        pts.add(p - _floor(p))
    pts = sorted(pts)
    if len(pts) > budget:
        raise ComplexityBudgetError(
            f"PL composition needs {len(pts)} breakpoints (budget {budget})"
        )
    return PLLift(tuple(pts), tuple(f(g(b)) for b in pts))


def compose(
    f: Lift,
    g: Lift,
    *,
    chain_budget: int = DEFAULT_CHAIN_BUDGET,
    breakpoint_budget: int = DEFAULT_BREAKPOINT_BUDGET,
) -> Lift:
    """The composite lift ``f o g`` (apply ``g`` first).

    Rigid/PL compositions stay in closed form; anything involving a Moebius
    lift becomes a flat chain.  Raises ``ComplexityBudgetError`` when the
    merged PL breakpoint count or the chain part count exceeds its budget.
    """
    if _is_identity_rigid(f):
        return g
    if _is_identity_rigid(g):
        return f
    if isinstance(f, RigidLift) and isinstance(g, RigidLift):
        return RigidLift(f.angle + g.angle)
    if isinstance(f, RigidLift) and isinstance(g, PLLift):
        return PLLift(g.breakpoints, tuple(v + f.angle for v in g.values))
    if isinstance(f, PLLift) and isinstance(g, RigidLift):
        b, v = _normalize_points(
            (bi - g.angle, vi) for bi, vi in zip(f.breakpoints, f.values)
        )
        return PLLift(b, v)
    if isinstance(f, PLLift) and isinstance(g, PLLift):
        return _compose_pl(f, g, breakpoint_budget)
    parts = f.parts + g.parts
    if len(parts) > chain_budget:
        raise ComplexityBudgetError(
            f"composition chain needs {len(parts)} parts (budget {chain_budget})"
        )
    return ChainLift(parts)


def commutator(f: Lift, g: Lift, *, chain_budget: int | None = None) -> Lift:
    """The lift ``f o g o f^-1 o g^-1``.

    Independent of integer shifts of either argument.  The chain budget
    defaults to whatever the four factors need (they are already built).
    """
    if chain_budget is None:
        chain_budget = max(DEFAULT_CHAIN_BUDGET, 2 * (f.n_parts + g.n_parts))
    h = compose(f, g, chain_budget=chain_budget)
    h = compose(h, invert(f), chain_budget=chain_budget)
    return compose(h, invert(g), chain_budget=chain_budget)


def shift(f: Lift, m: int) -> Lift:
    """The lift ``x -> f(x) + m`` for an integer ``m`` (exact on the data)."""
    if m == 0:
        return f
    if isinstance(f, RigidLift):
        return RigidLift(f.angle + m)
    if isinstance(f, PLLift):
        return PLLift(f.breakpoints, tuple(v + m for v in f.values))
    if isinstance(f, MoebiusLift):
        return MoebiusLift(f.matrix, f.offset + m)
    if isinstance(f, ChainLift):
        return ChainLift((shift(f.parts[0], m),) + f.parts[1:])
    raise TypeError(f"not a lift: {f!r}")


def reverse(f: Lift) -> Lift:
    """Orientation reversal ``x -> -f(-x)`` (still an increasing lift)."""
    if isinstance(f, RigidLift):
        return RigidLift(-f.angle)
    if isinstance(f, PLLift):
        b, v = _normalize_points(
            (-bi, -vi) for bi, vi in zip(f.breakpoints, f.values)
        )
        return PLLift(b, v)
    if isinstance(f, MoebiusLift):
        (a, b), (c, d) = f.matrix
        m = ((a, -b), (-c, d))
        base = MoebiusLift(m, 0)
        o = -(f._y00 + f.offset) - base._y00
        oi = round(o)
        if abs(o - oi) > 1e-6:
            raise InvalidLiftError(f"reversal offset {o!r} is not an integer")
        return MoebiusLift(m, oi)
    if isinstance(f, ChainLift):
        return ChainLift(tuple(reverse(p) for p in f.parts))
    raise TypeError(f"not a lift: {f!r}")


def normalize(f: Lift) -> Lift:
    """Integer shift of ``f`` with ``f(0)`` in ``[0, 1)``."""
    return shift(f, -_floor(f(0)))


def boundary_action(matrix: Sequence[Sequence[float]]) -> MoebiusLift:
    """Lift of the circle homeomorphism induced by an ``SL(2, R)`` matrix.

    The matrix acts on the boundary of the hyperbolic plane; in the disk
    model (after the Cayley transform) this is a homeomorphism of the unit
    circle.  The returned lift is normalized so ``f(0)`` lies in ``[0, 1)``.
    Raises ``InvalidMatrixError`` unless the determinant is within ``1e-9``
    of 1.
    """
    (a, b), (c, d) = matrix
    det = a * d - b * c
    if not abs(det - 1.0) <= 1e-9:
        raise InvalidMatrixError(f"matrix determinant {det!r} is not 1")
    s = math.sqrt(det)
    return MoebiusLift(((a / s, b / s), (c / s, d / s)), 0)


class WindingResult(NamedTuple):
    degree: int
    arc_length: Scalar


def _shortest_increment(p: Scalar, q: Scalar) -> Scalar:
    d = (q - p) % 1
    if d == Fraction(1, 2) or d == 0.5:
        raise AmbiguousArcError(
            f"consecutive points {p!r} and {q!r} are exactly antipodal"
        )
    return d if d < Fraction(1, 2) else d - 1


def winding_number(points: Sequence[Scalar]) -> WindingResult:
    """Winding number of the shortest-arc cyclic loop through ``points``.

    ``points`` are circle points in turns, read cyclically (the last point
    connects back to the first).  Each consecutive pair is joined by its
    shortest arc; the signed increments sum to an integer because the loop
    closes.  Returns that integer and the total absolute arc length.
    Exactly antipodal consecutive pairs raise ``AmbiguousArcError``.
    """
    if len(points) < 1:
        raise AmbiguousArcError("need at least one point")
    total = 0
    length = 0
    n = len(points)
    for i in range(n):
        inc = _shortest_increment(points[i], points[(i + 1) % n])
        total += inc
        length += abs(inc)
    if isinstance(total, Fraction):
        if total.denominator != 1:
            raise AssertionError(f"cyclic winding sum {total} is not an integer")
        deg = int(total)
    else:
        deg = round(total)
        if abs(total - deg) > 1e-6:
            raise AssertionError(f"cyclic winding sum {total} is not an integer")
    return WindingResult(deg, length)


def is_monotone_on_grid(f: Lift, n: int = 1000) -> bool:
    """Strict monotonicity check of ``f`` on an ``n``-point grid of one
    period (plus a little overhang)."""
    xs = np.linspace(0.0, 1.0 + 1.0 / n, n)
    ys = f(xs)
    return bool(np.all(np.diff(ys) > 0))
