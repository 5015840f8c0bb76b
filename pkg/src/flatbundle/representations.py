"""Surface-group representations into circle homeomorphisms.

A representation is the genus together with the 2g generator lifts
(images of a_1, b_1, ..., a_g, b_g).  Its Euler number is read off the
lift of the relator: the product of commutators is a lift of the identity
circle map, hence an integer translation, and the integer is the Euler
number of the associated flat bundle.  The translation property is always
checked on a grid, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    AmbiguousIntegerError,
    AuditViolationError,
    InvalidGenusError,
    InvalidInputError,
    NotARepresentationError,
    VerificationError,
)
from .hyperbolic import fuchsian_generator_matrices
from .lifts import (
    BaseLift,
    Lift,
    PLLift,
    RigidLift,
    boundary_action,
    commutator,
    compose,
    identity_lift,
    invert,
    reverse,
)

#: Empirical sign of euler_number(fuchsian_representation(g)) under this
#: build's counterclockwise-positive convention: the value is +(2g - 2).
FUCHSIAN_EULER_SIGN = 1

DEFAULT_RELATOR_TOL = 1e-6
DEFAULT_GRID = 4096

_CHAIN_HARD_CAP = 10**5


@dataclass(frozen=True)
class Representation:
    """Genus plus the ordered 2g-tuple of generator lifts."""

    genus: int
    generators: tuple[Lift, ...]

    def __post_init__(self):
        if self.genus < 1:
            raise InvalidGenusError(f"genus must be >= 1, got {self.genus}")
        if len(self.generators) != 2 * self.genus:
            raise InvalidInputError(
                f"expected {2 * self.genus} generators, got {len(self.generators)}"
            )
        if not all(isinstance(f, BaseLift) for f in self.generators):
            raise InvalidInputError("generators must be lifts")


@dataclass(frozen=True)
class EulerResult:
    """Euler number with the diagnostics that certify it."""

    euler: int
    deviation: float
    enclosure_width: float

    def to_dict(self) -> dict:
        return {
            "euler": self.euler,
            "deviation": self.deviation,
            "enclosure_width": self.enclosure_width,
        }


def commutator_product(rep: Representation, *, chain_budget: int | None = None) -> Lift:
    """The relator lift ``prod_j [A_j, B_j]`` composed left to right."""
    if chain_budget is None:
        need = sum(2 * (a.n_parts + b.n_parts) for a, b in _pairs(rep))
        chain_budget = min(max(64, need), _CHAIN_HARD_CAP)
    out = identity_lift()
    for a, b in _pairs(rep):
        out = compose(out, commutator(a, b, chain_budget=chain_budget),
                      chain_budget=chain_budget)
    return out


def _pairs(rep: Representation):
    g = rep.generators
    return [(g[2 * j], g[2 * j + 1]) for j in range(rep.genus)]


def _certified_integer(x) -> int:
    """Round to the nearest integer, requiring a margin of 1/4."""
    e = int(round(float(x)))
    if not abs(x - e) < Fraction(1, 4):
        raise AmbiguousIntegerError(
            f"relator translation {x!r} is not within 1/4 of an integer"
        )
    return e


def euler_number(
    rep: Representation,
    relator_tol: float = DEFAULT_RELATOR_TOL,
    grid: int = DEFAULT_GRID,
) -> EulerResult:
    """Euler number of the flat bundle defined by ``rep``.

    Builds the commutator-product lift ``F``, certifies that ``F`` is an
    integer translation (``sup |F(x) - x - F(0)| < relator_tol`` over the
    grid), and returns ``round(F(0))``.  The result does not depend on
    which lifts were chosen for the generators, because commutators are
    invariant under integer shifts of their arguments.

    Raises ``NotARepresentationError`` when the deviation check fails and
    ``AmbiguousIntegerError`` when ``F(0)`` is not within 1/4 of an integer.
    """
    if relator_tol <= 0:
        raise InvalidInputError(f"relator_tol must be positive, got {relator_tol!r}")
    F = commutator_product(rep)
    if isinstance(F, RigidLift):
        f0 = F.angle
        deviation = 0.0
    else:
        xs = np.linspace(0.0, 1.0, grid, endpoint=False)
        f0 = F.eval_float(0.0)
        deviation = float(np.max(np.abs(F(xs) - xs - f0)))
    if not deviation < relator_tol:
        raise NotARepresentationError(
            f"relator deviates from a translation by {deviation:.3g} "
            f">= tolerance {relator_tol:.3g}",
            deviation,
        )
    return EulerResult(_certified_integer(f0), deviation, 2.0 * deviation)


def abelian_representation(g: int, angles) -> Representation:
    """Representation by rigid rotations (any angles; rotations commute)."""
    angles = tuple(angles)
    if len(angles) != 2 * g:
        raise InvalidInputError(f"expected {2 * g} angles, got {len(angles)}")
    return Representation(g, tuple(RigidLift(a) for a in angles))


def fuchsian_representation(g: int) -> Representation:
    """Holonomy of the hyperbolic structure from the regular 4g-gon.

    The generators are the boundary-action lifts of the side-pairing
    isometries of the regular hyperbolic 4g-gon with vertex angle 2 pi / 4g.
    Verifies its own output: euler_number must succeed with
    ``|euler| = 2g - 2``.
    """
    if g < 2:
        raise InvalidGenusError(f"fuchsian representation needs genus >= 2, got {g}")
    rep = Representation(
        g, tuple(boundary_action(m) for m in fuchsian_generator_matrices(g))
    )
    res = euler_number(rep)
    if abs(res.euler) != 2 * g - 2:
        raise VerificationError(
            f"fuchsian euler number {res.euler}, expected |{2 * g - 2}|"
        )
    return rep


def pinch_representation(g: int, inner: Representation) -> Representation:
    """Extend ``inner`` to genus ``g`` by identity generators.

    The added handles contribute identity commutators, so the Euler number
    equals the inner representation's.
    """
    h = inner.genus
    if h > g:
        raise InvalidGenusError(f"inner genus {h} exceeds target genus {g}")
    if h == g:
        return inner
    pad = tuple(identity_lift() for _ in range(2 * (g - h)))
    return Representation(g, inner.generators + pad)


def conjugate(rep: Representation, h: Lift) -> Representation:
    """Conjugate every generator by ``h`` (Euler number is unchanged)."""
    h_inv = invert(h)
    budget = min(
        max(64, 2 * h.n_parts + max(f.n_parts for f in rep.generators)),
        _CHAIN_HARD_CAP,
    )
    gens = tuple(
        compose(compose(h, f, chain_budget=budget), h_inv, chain_budget=budget)
        for f in rep.generators
    )
    return Representation(rep.genus, gens)


def reverse_orientation(rep: Representation) -> Representation:
    """Flip the circle orientation: each generator f becomes -f(-x).

    Negates the Euler number.
    """
    return Representation(rep.genus, tuple(reverse(f) for f in rep.generators))


def random_rotation_angles(g: int, rng: np.random.Generator, denominator: int = 1024):
    return tuple(
        Fraction(int(k), denominator) for k in rng.integers(0, denominator, 2 * g)
    )


def random_pl_lift(
    rng: np.random.Generator,
    min_breakpoints: int = 3,
    max_breakpoints: int = 8,
    denominator: int = 64,
) -> PLLift:
    """Random exact piecewise-linear lift on a rational grid.

    Breakpoints and values are distinct multiples of ``1/denominator`` in
    ``[0, 1)``, which bounds every slope by ``denominator`` and keeps all
    downstream arithmetic exact.
    """
    m = int(rng.integers(min_breakpoints, max_breakpoints + 1))
    b = sorted(rng.choice(denominator, size=m, replace=False).tolist())
    v = sorted(rng.choice(denominator, size=m, replace=False).tolist())
    return PLLift(
        tuple(Fraction(x, denominator) for x in b),
        tuple(Fraction(x, denominator) for x in v),
    )


DEFAULT_FAMILIES = ("abelian", "fuchsian", "pinch", "conjugated")


@dataclass(frozen=True)
class AuditEntry:
    family: str
    label: str
    euler: int
    deviation: float

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "label": self.label,
            "euler": self.euler,
            "deviation": self.deviation,
        }


@dataclass(frozen=True)
class MWAuditReport:
    genus: int
    bound: int
    entries: tuple[AuditEntry, ...]
    violations: tuple[AuditEntry, ...]

    @property
    def max_abs_euler(self) -> int:
        return max((abs(e.euler) for e in self.entries), default=0)

    @property
    def attained(self) -> bool:
        return self.max_abs_euler == self.bound

    def to_dict(self) -> dict:
        return {
            "genus": self.genus,
            "bound": self.bound,
            "n_checked": len(self.entries),
            "max_abs_euler": self.max_abs_euler,
            "attained": self.attained,
            "violations": [e.to_dict() for e in self.violations],
            "entries": [e.to_dict() for e in self.entries],
        }


def _audit_bases(g: int, rng: np.random.Generator):
    """Base representations to conjugate: one abelian, fuchsian, one pinch."""
    bases = [("abelian", abelian_representation(g, random_rotation_angles(g, rng)))]
    if g >= 2:
        bases.append(("fuchsian", fuchsian_representation(g)))
        inner = (
            fuchsian_representation(g - 1)
            if g >= 3
            else abelian_representation(1, random_rotation_angles(1, rng))
        )
        bases.append(("pinch", pinch_representation(g, inner)))
    return bases


def milnor_wood_audit(
    g: int,
    families=DEFAULT_FAMILIES,
    trials: int = 100,
    seed: int = 0,
    relator_tol: float = DEFAULT_RELATOR_TOL,
    grid: int = DEFAULT_GRID,
) -> MWAuditReport:
    """Check ``|euler| <= 2g - 2`` across all constructed families.

    Families: random rotation tuples ("abelian", ``trials`` of them), the
    fuchsian representation, pinches of fuchsian/abelian representations,
    and ``trials`` random PL-conjugated variants of each base.  Per-trial
    randomness derives deterministically from ``seed``.  Raises
    ``AuditViolationError`` (carrying the counterexamples) if any Euler
    number exceeds the bound.
    """
    if g < 1:
        raise InvalidGenusError(f"genus must be >= 1, got {g}")
    bound = max(2 * g - 2, 0)
    entries: list[AuditEntry] = []

    def check(family: str, label: str, rep: Representation):
        res = euler_number(rep, relator_tol=relator_tol, grid=grid)
        entries.append(AuditEntry(family, label, res.euler, res.deviation))

    if "abelian" in families:
        for t in range(trials):
            rng = np.random.default_rng([seed, 0, t])
            check("abelian", f"abelian[{t}]",
                  abelian_representation(g, random_rotation_angles(g, rng)))
    if "fuchsian" in families and g >= 2:
        check("fuchsian", f"fuchsian(g={g})", fuchsian_representation(g))
    if "pinch" in families and g >= 2:
        for h in range(2, g):
            check("pinch", f"pinch(fuchsian(g={h}))",
                  pinch_representation(g, fuchsian_representation(h)))
        rng = np.random.default_rng([seed, 1])
        check("pinch", "pinch(abelian(g=1))",
              pinch_representation(
                  g, abelian_representation(1, random_rotation_angles(1, rng))))
    if "conjugated" in families:
        rng = np.random.default_rng([seed, 2])
        for base_name, base in _audit_bases(g, rng):
            for t in range(trials):
                trial_rng = np.random.default_rng([seed, 3, t])
                h = random_pl_lift(trial_rng)
                check("conjugated", f"conj({base_name})[{t}]", conjugate(base, h))

    violations = tuple(e for e in entries if abs(e.euler) > bound)
    report = MWAuditReport(g, bound, tuple(entries), violations)
    if violations:
        raise AuditViolationError(
            f"Milnor-Wood bound violated for genus {g}", report.to_dict()
        )
    return report
