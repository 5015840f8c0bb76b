"""Exact singular-vertex weights and the fiber-order exclusion argument.

A quasisection of a circle bundle is modeled here purely by the data of its
border self-crossings: each singular vertex carries the counts ``(n, k)`` of
regular sheets separating the two border lines, measured from the first and
the second line respectively, in the fiber direction.  The weight of a
vertex is the exact rational ``(n - k) / ((n+k)(n+k+1)(n+k+2))`` and the
Euler number of the bundle is the sum of the weights.  Everything in this
module is exact: floats are rejected at construction.

The Escher checker formalizes why all extremal vertices cannot coexist:
with bordered sheets ``f_1, ..., f_4g`` in some cyclic fiber order, an
extremal vertex forces the single regular sheet out of the open arc from
``f_i`` to ``f_{i+1}`` in the fiber direction; the arcs chain around the
whole fiber, so no gap remains for the regular sheet.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    DegenerateVertexError,
    InvalidGenusError,
    InvalidInputError,
    TheoremViolationError,
)


@dataclass(frozen=True)
class SingularVertex:
    """Border self-crossing with regular-sheet counts ``n`` and ``k``."""

    n: int
    k: int

    def __post_init__(self):
        if not (isinstance(self.n, int) and isinstance(self.k, int)):
            raise InvalidInputError("sheet counts must be integers")
        if self.n < 0 or self.k < 0:
            raise InvalidInputError("sheet counts must be non-negative")
        if self.n + self.k < 1:
            raise DegenerateVertexError(
                "no regular sheet separates the border lines (n + k = 0)"
            )


def vertex_weight(v: SingularVertex) -> Fraction:
    """Exact weight ``(n - k) / ((n+k)(n+k+1)(n+k+2))``.

    Antisymmetric under swapping ``n`` and ``k``; extremal value ``1/6`` at
    ``(n, k) = (1, 0)``.
    """
    s = v.n + v.k
    return Fraction(v.n - v.k, s * (s + 1) * (s + 2))


@dataclass(frozen=True)
class VertexSum:
    """Exact weight sum with its integrality verdict."""

    total: Fraction
    integral: bool

    def to_dict(self) -> dict:
        from .serialize import format_rational

        return {"sum": format_rational(self.total), "integral": self.integral}


def euler_from_vertices(vertices) -> VertexSum:
    """Sum of the vertex weights, exactly.

    The verdict is "integral" iff the reduced denominator is 1, a necessary
    condition for the vertex list to come from a genuine quasisection of a
    circle bundle; non-integral sums are reported, not rejected.
    """
    total = sum((vertex_weight(v) for v in vertices), Fraction(0))
    return VertexSum(total, total.denominator == 1)


def covering_disk_census(g: int, signs=None) -> list[SingularVertex]:
    """The ``3(4g - 2)`` extremal singular vertices of the petal covering
    disk, each with ``n + k = 1``.

    ``signs`` chooses the orientation of each crossing: ``+1`` gives
    ``(1, 0)`` (weight ``1/6``), ``-1`` gives ``(0, 1)``.  Defaults to all
    ``+1``, the extremal case whose sum is the bound ``2g - 1``.
    """
    if g < 1:
        raise InvalidGenusError(f"genus must be >= 1, got {g}")
    count = 3 * (4 * g - 2)
    if signs is None:
        signs = [1] * count
    signs = list(signs)
    if len(signs) != count:
        raise InvalidInputError(f"expected {count} signs, got {len(signs)}")
    if any(s not in (1, -1) for s in signs):
        raise InvalidInputError("signs must be +1 or -1")
    return [SingularVertex(1, 0) if s == 1 else SingularVertex(0, 1) for s in signs]


def census_bound(g: int) -> Fraction:
    """Largest possible census weight sum: ``3(4g-2) * 1/6 = 2g - 1``."""
    if g < 1:
        raise InvalidGenusError(f"genus must be >= 1, got {g}")
    return Fraction(3 * (4 * g - 2), 6)


@dataclass(frozen=True)
class SheetCircle:
    """Cyclic order of the bordered sheets ``f_1..f_4g`` on a fiber circle.

    ``sheets`` lists the sheet indices in the positive fiber direction;
    rotations are identified (the canonical form starts at sheet 1).  The
    regular sheet's position is not part of the data: it is the decision
    variable of the Escher check.
    """

    sheets: tuple[int, ...]

    def __post_init__(self):
        n = len(self.sheets)
        if n < 4 or n % 4 != 0:
            raise InvalidInputError(f"need 4g sheets, got {n}")
        if sorted(self.sheets) != list(range(1, n + 1)):
            raise InvalidInputError(f"sheets must be a permutation of 1..{n}")

    @property
    def genus(self) -> int:
        return len(self.sheets) // 4

    def canonical(self) -> "SheetCircle":
        i = self.sheets.index(1)
        return SheetCircle(self.sheets[i:] + self.sheets[:i])


@dataclass(frozen=True)
class EscherVerdict:
    """Outcome of the regular-sheet placement problem.

    ``sat`` with a ``witness_gap`` means the regular sheet can sit in the
    gap after that position; otherwise ``certificate[j]`` names, for every
    candidate gap ``j``, a violated constraint index (the arc from
    ``f_i`` to ``f_{i+1}`` covering the gap).
    """

    sat: bool
    witness_gap: int | None
    certificate: tuple[int, ...] | None
    order: SheetCircle

    def to_dict(self) -> dict:
        return {
            "sat": self.sat,
            "order": list(self.order.sheets),
            "witness_gap": self.witness_gap,
            "certificate": None if self.certificate is None else list(self.certificate),
        }


def escher_check(order: SheetCircle, constraints=None) -> EscherVerdict:
    """Decide whether the regular sheet fits into some gap of ``order``.

    Constraint ``i`` (1-based, cyclic) forbids the regular sheet from the
    open positive-direction arc from ``f_i`` to ``f_{i+1}``.  With the full
    constraint set the arcs chain around the whole fiber, so every gap is
    covered and the verdict is UNSAT; ``constraints`` may restrict the
    active indices, which can leave a gap uncovered (SAT).
    """
    n = len(order.sheets)
    active = range(1, n + 1) if constraints is None else sorted(set(constraints))
    if constraints is not None and any(not 1 <= i <= n for i in active):
        raise InvalidInputError(f"constraint indices must lie in 1..{n}")
    pos = {label: j for j, label in enumerate(order.sheets)}
    # gap j sits between positions j and j+1 (mod n); the open arc from f_i
    # to f_{i+1} covers gaps pos(f_i), pos(f_i)+1, ..., pos(f_{i+1})-1
    covering: list[int | None] = [None] * n
    for i in active:
        p = pos[i]
        q = pos[i % n + 1]
        span = (q - p) % n
        for step in range(span):
            j = (p + step) % n
            if covering[j] is None:
                covering[j] = i
    if constraints is None and any(c is None for c in covering):
        raise TheoremViolationError(
            "full-constraint arcs failed to cover the fiber circle",
            {"order": list(order.sheets)},
        )
    for j, c in enumerate(covering):
        if c is None:
            return EscherVerdict(True, j, None, order)
    return EscherVerdict(False, None, tuple(covering), order)


@dataclass(frozen=True)
class EscherReport:
    genus: int
    mode: str
    orders_checked: int
    all_unsat: bool

    def to_dict(self) -> dict:
        return {
            "genus": self.genus,
            "mode": self.mode,
            "orders_checked": self.orders_checked,
            "all_unsat": self.all_unsat,
        }


#: Exhaustive enumeration is allowed only up to this many sheets ((4g-1)!
#: circular orders grows too fast beyond the genus-2 case).
EXHAUSTIVE_SHEET_CAP = 8


def _all_circular_orders(n: int):
    for rest in itertools.permutations(range(2, n + 1)):
        yield SheetCircle((1,) + rest)


def escher_exhaust(g: int, mode: str = "exhaustive", count: int = 1000,
                   seed: int = 0) -> EscherReport:
    """Run ``escher_check`` with full constraints over many circular orders.

    ``mode`` is ``"exhaustive"`` (all ``(4g-1)!`` circular orders; only for
    ``4g <= 8``) or ``"sampled"`` (``count`` seeded random orders).  Every
    order must be UNSAT; a SAT verdict would contradict the covering
    argument and raises ``TheoremViolationError``.
    """
    if g < 1:
        raise InvalidGenusError(f"genus must be >= 1, got {g}")
    n = 4 * g
    if mode == "exhaustive":
        if n > EXHAUSTIVE_SHEET_CAP:
            raise InvalidInputError(
                f"exhaustive mode needs 4g <= {EXHAUSTIVE_SHEET_CAP}, got 4g = {n}; "
                "use sampled mode"
            )
        orders = _all_circular_orders(n)
    elif mode == "sampled":
        if count < 1:
            raise InvalidInputError(f"sample count must be >= 1, got {count}")
        rng = np.random.default_rng(seed)
        orders = (
            SheetCircle(tuple(int(x) + 1 for x in rng.permutation(n))).canonical()
            for _ in range(count)
        )
    else:
        raise InvalidInputError(f"unknown mode {mode!r}")
    checked = 0
    for order in orders:
        verdict = escher_check(order)
        checked += 1
        if verdict.sat:
            raise TheoremViolationError(
                "SAT verdict under full constraints (implementation bug)",
                verdict.to_dict(),
            )
    return EscherReport(g, mode, checked, True)
