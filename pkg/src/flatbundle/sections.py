"""Partial-section degree bounds and the clutching construction.

Cutting the surface open along the standard 4g-gon, a leaf of a transverse
foliation gives a partial section over the polygon interior; near the glued
vertex the section takes 4g corner values on one trivialized fiber.
Closing that cycle by shortest arcs gives a degree-(Euler number) loop of
total length under 2g turns, so ``|degree| <= 2g - 1``.

Independently, regluing a solid torus over a disk with N fiber twists
produces the bundle with Euler number N; the twist count is the winding
number of the boundary gluing loop.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidGenusError, InvalidInputError, SamplingGapError
from .lifts import Scalar, WindingResult, winding_number


@dataclass(frozen=True)
class CornerData:
    """Trivialization values of the partial section at the 4g polygon
    corners, as circle points in turns."""

    genus: int
    corners: tuple

    def __post_init__(self):
        if self.genus < 1:
            raise InvalidGenusError(f"genus must be >= 1, got {self.genus}")
        if len(self.corners) != 4 * self.genus:
            raise InvalidInputError(
                f"expected {4 * self.genus} corners, got {len(self.corners)}"
            )


@dataclass(frozen=True)
class BoundaryLoop:
    """Densely sampled circle-valued loop (first sample equals the last)."""

    samples: tuple

    def __post_init__(self):
        if len(self.samples) < 2:
            raise InvalidInputError("loop needs at least two samples")
        if self.samples[0] != self.samples[-1]:
            raise InvalidInputError("loop is not closed (first != last sample)")


def sullivan_degree(c: CornerData) -> WindingResult:
    """Degree of the shortest-arc corner loop, with its total arc length.

    Each of the 4g arcs is shorter than a half turn, so the loop is shorter
    than 2g full turns and ``|degree| <= 2g - 1``; both bounds are asserted
    on every call.  Exactly antipodal consecutive corners raise
    ``AmbiguousArcError``.
    """
    result = winding_number(c.corners)
    if not result.arc_length < 2 * c.genus:
        raise AssertionError(
            f"corner loop length {result.arc_length} reached {2 * c.genus} turns"
        )
    if abs(result.degree) > 2 * c.genus - 1:
        raise AssertionError(
            f"corner loop degree {result.degree} exceeds {2 * c.genus - 1}"
        )
    return result


def clutching_euler(loop: BoundaryLoop) -> int:
    """Euler number of the bundle clutched by ``loop``: its winding number.

    Consecutive samples must be less than a half turn apart (the caller
    controls sampling density); a step reaching a half turn raises
    ``SamplingGapError``.
    """
    total: Scalar = 0
    for p, q in zip(loop.samples, loop.samples[1:]):
        d = (q - p) % 1
        if 2 * d == 1:
            raise SamplingGapError(
                f"samples {p!r} -> {q!r} are a half turn apart; sample more densely"
            )
        total += d if 2 * d < 1 else d - 1
    deg = round(total)
    if abs(total - deg) > 1e-6:
        raise AssertionError(f"closed-loop winding {total} is not an integer")
    return int(deg)


def sample_loop(fn, n: int) -> BoundaryLoop:
    """Sample ``t -> fn(t)`` at ``n+1`` points of [0, 1], closing exactly."""
    if n < 1:
        raise InvalidInputError(f"need at least 1 step, got {n}")
    pts = [fn(i / n) % 1 for i in range(n)]
    return BoundaryLoop(tuple(pts) + (pts[0],))


def concatenate_loops(first: BoundaryLoop, second: BoundaryLoop) -> BoundaryLoop:
    """Join two loops sharing a basepoint (first's end == second's start)."""
    if first.samples[-1] != second.samples[0]:
        raise InvalidInputError("loops do not share a basepoint")
    return BoundaryLoop(first.samples + second.samples[1:])


def reverse_loop(loop: BoundaryLoop) -> BoundaryLoop:
    return BoundaryLoop(tuple(reversed(loop.samples)))
