"""The index-2 cover of the genus-g surface and the Euler number doubling.

The cover is fixed once and for all as the kernel of the mod-2 exponent map
of the first generator (a1 -> 1, everything else -> 0).  Reidemeister-
Schreier with coset transversal {1, a1} gives Schreier generators
a1^2, b1, a1 b1 a1^-1, and (a_i, b_i, a1 a_i a1^-1, a1 b_i a1^-1) for
i >= 2; eliminating a1 b1 a1^-1 via the coset-0 relator leaves the
symplectic tuple

    (a1^2, b1), (a_2, b_2), ..., (a_g, b_g),
    (a1 a_2 a1^-1, a1 b_2 a1^-1), ..., (a1 a_g a1^-1, a1 b_g a1^-1)

of 2(2g - 1) words whose genus-(2g-1) relator is trivial in the base group.
Both facts (kernel membership and relator triviality) are machine-verified
on every construction rather than trusted.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AuditViolationError, InvalidGenusError, VerificationError
from .representations import (
    DEFAULT_GRID,
    DEFAULT_RELATOR_TOL,
    EulerResult,
    Representation,
    euler_number,
)
from .words import Word, evaluate_word, format_word, free_reduce, is_trivial, relator


@dataclass(frozen=True)
class CoverPresentation:
    """Symplectic generating words of the index-2 subgroup."""

    base_genus: int
    words: tuple[Word, ...]

    @property
    def cover_genus(self) -> int:
        return 2 * self.base_genus - 1


def _letter(kind: str, idx: int, sign: int = 1) -> int:
    code = 2 * idx - 1 if kind == "a" else 2 * idx
    return sign * code


def rewrite_word(w: Word, words: tuple[Word, ...]) -> Word:
    """Substitute cover generator j (1-based, a/b interleaved) by words[j]."""
    out: list[int] = []
    for x in w.letters:
        sub = words[abs(x) - 1]
        if x < 0:
            sub = sub.inverse()
        out.extend(sub.letters)
    return Word(tuple(out))


def double_cover_presentation(g: int) -> CoverPresentation:
    """Generating words of the fixed connected double cover (genus 2g - 1).

    Verifies before returning that every word has even a1-exponent (lies in
    the kernel) and that the cover-genus relator, rewritten through the
    words, is trivial in the base surface group.
    """
    if g < 1:
        raise InvalidGenusError(f"genus must be >= 1, got {g}")
    a1 = _letter("a", 1)
    words = [Word((a1, a1)), Word((_letter("b", 1),))]
    for i in range(2, g + 1):
        words.append(Word((_letter("a", i),)))
        words.append(Word((_letter("b", i),)))
    for i in range(2, g + 1):
        words.append(Word((a1, _letter("a", i), -a1)))
        words.append(Word((a1, _letter("b", i), -a1)))
    cp = CoverPresentation(g, tuple(words))

    if len(cp.words) != 2 * cp.cover_genus:
        raise VerificationError(
            f"cover word table has {len(cp.words)} words, "
            f"expected {2 * cp.cover_genus}"
        )
    for w in cp.words:
        if w.exponent_sums().get(a1, 0) % 2 != 0:
            raise VerificationError(
                f"cover word {format_word(w)!r} has odd a1-exponent"
            )
    rewritten = free_reduce(rewrite_word(relator(cp.cover_genus), cp.words))
    if not is_trivial(rewritten, g):
        raise VerificationError(
            f"rewritten cover relator {format_word(rewritten)!r} "
            f"is not trivial in the genus-{g} group"
        )
    return cp


def pullback_euler(
    rep: Representation,
    cp: CoverPresentation,
    relator_tol: float = DEFAULT_RELATOR_TOL,
    grid: int = DEFAULT_GRID,
) -> EulerResult:
    """Euler number of the pullback of ``rep`` to the double cover.

    Evaluates each cover generator word under ``rep`` and feeds the
    resulting genus-(2g-1) representation to ``euler_number``.
    """
    if cp.base_genus != rep.genus:
        raise InvalidGenusError(
            f"cover base genus {cp.base_genus} != representation genus {rep.genus}"
        )
    lifts = tuple(evaluate_word(w, rep) for w in cp.words)
    cover_rep = Representation(cp.cover_genus, lifts)
    return euler_number(cover_rep, relator_tol=relator_tol, grid=grid)


@dataclass(frozen=True)
class DoublingReport:
    genus: int
    cover_genus: int
    euler: int
    cover_euler: int

    @property
    def cover_bound(self) -> int:
        return 2 * self.cover_genus - 2

    def to_dict(self) -> dict:
        return {
            "genus": self.genus,
            "cover_genus": self.cover_genus,
            "euler": self.euler,
            "cover_euler": self.cover_euler,
            "doubled": self.cover_euler == 2 * self.euler,
            "cover_bound": self.cover_bound,
        }


def doubling_audit(
    rep: Representation,
    relator_tol: float = DEFAULT_RELATOR_TOL,
    grid: int = DEFAULT_GRID,
) -> DoublingReport:
    """Assert that the pullback doubles the Euler number, exactly.

    Checks ``E_cover == 2 * E`` as integers and ``|E_cover| <= 2g_cover - 2``;
    any mismatch raises ``AuditViolationError`` carrying both values.
    """
    base = euler_number(rep, relator_tol=relator_tol, grid=grid)
    cp = double_cover_presentation(rep.genus)
    lifted = pullback_euler(rep, cp, relator_tol=relator_tol, grid=grid)
    report = DoublingReport(rep.genus, cp.cover_genus, base.euler, lifted.euler)
    if lifted.euler != 2 * base.euler:
        raise AuditViolationError(
            f"cover Euler number {lifted.euler} != 2 * {base.euler}",
            report.to_dict(),
        )
    if abs(lifted.euler) > report.cover_bound:
        raise AuditViolationError(
            f"cover Euler number {lifted.euler} exceeds bound {report.cover_bound}",
            report.to_dict(),
        )
    return report
