"""Free-group words over surface-group generators and the word problem.

Words are spelled with tokens ``a1 b3 A1 B2`` (capitals are inverses) and
stored as tuples of signed letter codes: generator ``a_i`` is ``2i - 1``,
``b_i`` is ``2i``, inverses are negated.  ``is_trivial`` decides the word
problem in the genus-g surface group: by exponent sums for the torus, and by
Dehn's algorithm for g >= 2, where the one-relator presentation satisfies
the small-cancellation condition that makes the algorithm complete.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import InvalidGenusError, WordParseError, WordTooLongError
from .lifts import Lift, compose, identity_lift, invert

#: Hard cap on word length, a guardrail for runaway rewriting inputs.
MAX_WORD_LENGTH = 10**4

_TOKEN = re.compile(r"([abAB])([0-9]+)$")


@dataclass(frozen=True)
class Word:
    """A (not necessarily reduced) word in the free group on a_1..a_g, b_1..b_g."""

    letters: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple(-x for x in reversed(self.letters)))

    def max_index(self) -> int:
        """Largest generator index used (0 for the empty word)."""
        return max(((abs(x) + 1) // 2 for x in self.letters), default=0)

    def exponent_sums(self) -> dict[int, int]:
        """Letter code -> total exponent (abelianization coordinates)."""
        sums: dict[int, int] = {}
        for x in self.letters:
            sums[abs(x)] = sums.get(abs(x), 0) + (1 if x > 0 else -1)
        return {k: v for k, v in sums.items() if v != 0}


def _letter_name(code: int) -> str:
    idx = (abs(code) + 1) // 2
    kind = "a" if abs(code) % 2 == 1 else "b"
    return (kind if code > 0 else kind.upper()) + str(idx)


def format_word(w: Word) -> str:
    """Inverse of ``parse_word``: space-separated token spelling."""
    return " ".join(_letter_name(x) for x in w.letters)


def parse_word(text: str, g: int) -> Word:
    """Parse whitespace-separated tokens ``a1 b3 A1 B2`` with indices <= g.

    Raises ``WordParseError`` (carrying the 0-based token position) on an
    unknown token or an out-of-range index.
    """
    letters = []
    for pos, tok in enumerate(text.split()):
        m = _TOKEN.match(tok)
        if not m:
            raise WordParseError(f"unknown token {tok!r}", pos)
        kind, idx = m.group(1), int(m.group(2))
        if not 1 <= idx <= g:
            raise WordParseError(f"index of {tok!r} out of range for genus {g}", pos)
        code = 2 * idx - 1 if kind.lower() == "a" else 2 * idx
        letters.append(code if kind.islower() else -code)
    if len(letters) > MAX_WORD_LENGTH:
        raise WordTooLongError(f"word length {len(letters)} exceeds cap {MAX_WORD_LENGTH}")
    return Word(tuple(letters))


def free_reduce(w: Word) -> Word:
    """Cancel all adjacent inverse pairs (idempotent, never lengthens)."""
    out: list[int] = []
    for x in w.letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return Word(tuple(out))


def relator(g: int) -> Word:
    """The surface relator a1 b1 A1 B1 ... ag bg Ag Bg (length 4g)."""
    if g < 1:
        raise InvalidGenusError(f"genus must be >= 1, got {g}")
    letters = []
    for i in range(1, g + 1):
        a, b = 2 * i - 1, 2 * i
        letters += [a, b, -a, -b]
    return Word(tuple(letters))


def _cyclic_reduce(letters: list[int]) -> list[int]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    while len(out) >= 2 and out[0] == -out[-1]:
        out = out[1:-1]
        # interior cancellations can be exposed by trimming the ends
        red: list[int] = []
        for x in out:
            if red and red[-1] == -x:
                red.pop()
            else:
                red.append(x)
        out = red
    return out


def _relator_rotations(g: int) -> list[tuple[int, ...]]:
    r = relator(g).letters
    rinv = tuple(-x for x in reversed(r))
    rots = []
    for base in (r, rinv):
        for k in range(len(base)):
            rots.append(base[k:] + base[:k])
    return rots


def _dehn_pass(letters: list[int], rotations, half: int) -> list[int] | None:
    """One Dehn replacement on the cyclic word, or None if no long match."""
    n = len(letters)
    if n == 0:
        return None
    doubled = letters + letters
    rlen = len(rotations[0])
    max_len = min(rlen, n)
    for rot in rotations:
        for start in range(n):
            run = 0
            while run < max_len and doubled[start + run] == rot[run]:
                run += 1
            if run > half:
                # rot = s t with s the matched prefix; s = t^-1 in the group
                tail = rot[run:]
                replacement = [-x for x in reversed(tail)]
                rest = doubled[start + run : start + n]
                return replacement + rest
    return None


def is_trivial(w: Word, g: int) -> bool:
    """Whether ``w`` equals the identity in the genus-``g`` surface group.

    Torus case by exponent sums; for g >= 2 Dehn's algorithm: cyclically
    reduce, then repeatedly replace any cyclic subword matching more than
    half of a rotation of the relator (or its inverse) by the shorter
    complement, until the word empties (trivial) or no long match remains
    (nontrivial).
    """
    if g < 1:
        raise InvalidGenusError(f"genus must be >= 1, got {g}")
    if w.max_index() > g:
        raise InvalidGenusError(f"word uses generator index > genus {g}")
    if len(w) > MAX_WORD_LENGTH:
        raise WordTooLongError(f"word length {len(w)} exceeds cap {MAX_WORD_LENGTH}")
    if g == 1:
        return not free_reduce(w).exponent_sums()
    rotations = _relator_rotations(g)
    half = 2 * g
    letters = _cyclic_reduce(list(w.letters))
    while letters:
        replaced = _dehn_pass(letters, rotations, half)
        if replaced is None:
            return False
        letters = _cyclic_reduce(replaced)
    return True


def evaluate_word(w: Word, rep, *, chain_budget: int | None = None) -> Lift:
    """Left-to-right composition of the generator lifts named by ``w``.

    ``rep`` is a Representation; letter ``x`` contributes ``rep`` generator
    ``phi(x)`` and capital letters contribute inverses, so the result is the
    image of ``w`` under the induced homomorphism.  The empty word gives the
    identity lift.
    """
    if w.max_index() > rep.genus:
        raise InvalidGenusError(
            f"word uses generator index {w.max_index()} > genus {rep.genus}"
        )
    gens = rep.generators
    factors = []
    for x in w.letters:
        f = gens[abs(x) - 1]
        factors.append(f if x > 0 else invert(f))
    if chain_budget is None:
        chain_budget = max(64, sum(f.n_parts for f in factors))
    out = identity_lift()
    for f in factors:
        out = compose(out, f, chain_budget=chain_budget)
    return out
