"""Path-length accounting for twist words acting on the g-loop hub.

The 3g-1 standard generating twists each carry a fixed path-length
weight in the pants graph (1, 4, 6, or 0 by index range); path lengths
compose additively over a word because homeomorphisms preserve
intersection numbers and therefore map paths to paths of equal length.
The distance bound adds the orbit-graph diameter allowance to the word's
weight.  Whether the word is minimal in its generating set is the
caller's responsibility; the bound is valid only for minimal words.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import BadGenusError, BadParametersError, IndexOutOfRangeError, ParseError
from .bounds import theorem1_bound

__all__ = [
    "TwistWord",
    "generator_weight",
    "word_path_length",
    "distance_bound",
    "parse_word",
    "format_word",
]


@dataclass(frozen=True)
class TwistWord:
    """An ordered word in the 3g-1 generating twists, exponents +1 or -1."""

    genus: int
    letters: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.genus < 2:
            raise BadGenusError(f"genus {self.genus} below 2")
        for index, exponent in self.letters:
            if not 1 <= index <= 3 * self.genus - 1:
                raise IndexOutOfRangeError(
                    f"generator index {index} outside 1..{3 * self.genus - 1}"
                )
            if exponent not in (1, -1):
                raise BadParametersError(
                    f"exponent {exponent} must be +1 or -1; expand larger powers"
                )

    def __len__(self) -> int:
        return len(self.letters)


def generator_weight(genus: int, i: int) -> int:
    """Path length from the hub to its image under the i-th twist."""
    if genus < 2:
        raise BadGenusError(f"genus {genus} below 2")
    if not 1 <= i <= 3 * genus - 1:
        raise IndexOutOfRangeError(f"index {i} outside 1..{3 * genus - 1}")
    if i <= genus:
        return 1
    if i == genus + 1 or i == 2 * genus - 1:
        return 4
    if genus + 2 <= i <= 2 * genus - 2:
        return 6
    return 0  # 2g <= i <= 3g-1


def word_path_length(w: TwistWord) -> int:
    """Sum of generator weights; exponent signs never change the length."""
    return sum(generator_weight(w.genus, i) for i, _ in w.letters)


def distance_bound(w: TwistWord) -> float:
    """Distance bound for the word's action: diameter allowance plus weight.

    Valid when the word is a minimum-length word in its (conjugated)
    generating set; minimality is assumed, not checked.
    """
    return theorem1_bound(w.genus) + word_path_length(w)


_TOKEN = re.compile(r"^T(\d+)(\^(-?\d+))?$")


def parse_word(text: str, genus: int) -> TwistWord:
    """Parse whitespace-separated tokens ``T<i>`` or ``T<i>^-1``."""
    letters: list[tuple[int, int]] = []
    for token in text.split():
        match = _TOKEN.match(token)
        if not match:
            raise ParseError(f"bad twist token {token!r}")
        index = int(match.group(1))
        exponent = int(match.group(3)) if match.group(3) else 1
        if exponent not in (1, -1):
            raise ParseError(
                f"token {token!r}: exponents must be +1 or -1; expand larger powers"
            )
        if not 1 <= index <= 3 * genus - 1:
            raise ParseError(
                f"token {token!r}: index outside 1..{3 * genus - 1}"
            )
        letters.append((index, exponent))
    return TwistWord(genus=genus, letters=tuple(letters))


def format_word(w: TwistWord) -> str:
    return " ".join(
        f"T{i}" if e == 1 else f"T{i}^-1" for i, e in w.letters
    )
