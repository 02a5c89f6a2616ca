"""Two-letter words encoding the tables of one index, and word-class counting.

Left words use the letters alpha/beta and are read off the ascending sort of
(alpha[i][1..k], beta[i][1..l]) with alpha before beta on equal values.
Right words use gamma/delta from (gamma[i][1..k], delta[i][1..l]) with delta
before gamma on equal values.  In both alphabets the first letter (alpha,
gamma) occurs k times and the second (beta, delta) l times.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator

from .chains import CupCapTables
from .core import format_value

ALPHA, BETA, GAMMA, DELTA = "α", "β", "γ", "δ"
LEFT, RIGHT = "L", "R"

# (letter counted against k, letter counted against l)
LETTERS = {LEFT: (ALPHA, BETA), RIGHT: (GAMMA, DELTA)}
_SIDE_OF = {ALPHA: LEFT, BETA: LEFT, GAMMA: RIGHT, DELTA: RIGHT}
_ASCII = {"a": ALPHA, "b": BETA, "g": GAMMA, "d": DELTA}


@dataclass(frozen=True)
class Word:
    side: str
    letters: str

    def __str__(self) -> str:
        return self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def counts(self) -> tuple[int, int]:
        first, second = LETTERS[self.side]
        return self.letters.count(first), self.letters.count(second)


def _sorted_word(side: str, firsts, seconds, first_wins_ties: bool) -> Word:
    first, second = LETTERS[side]
    tie_first, tie_second = (0, 1) if first_wins_ties else (1, 0)
    keyed = [(v, tie_first, t, first) for t, v in enumerate(firsts, 1)]
    keyed += [(v, tie_second, t, second) for t, v in enumerate(seconds, 1)]
    keyed.sort(key=lambda e: e[:3])
    return Word(side, "".join(e[3] for e in keyed))


def left_word(tab: CupCapTables, i: int) -> Word:
    return _sorted_word(LEFT, tab.alpha[i][1:], tab.beta[i][1:], first_wins_ties=True)


def right_word(tab: CupCapTables, i: int) -> Word:
    return _sorted_word(RIGHT, tab.gamma[i][1:], tab.delta[i][1:], first_wins_ties=False)


def all_words(tab: CupCapTables) -> tuple[list[Word], list[Word]]:
    """(L_1..L_m, R_1..R_m) as 0-based lists."""
    rng = range(1, tab.m + 1)
    return [left_word(tab, i) for i in rng], [right_word(tab, i) for i in rng]


@dataclass(frozen=True)
class Pattern:
    """Words that start with ``prefix`` and end with ``suffix``."""

    prefix: str = ""
    suffix: str = ""

    @classmethod
    def parse(cls, text: str) -> "Pattern":
        """Parse ``"b*aa"`` / ``"β*αα"`` style patterns.

        ASCII a/b/g/d stand for the Greek letters.  Without a ``*`` the whole
        text is a prefix.
        """
        text = "".join(_ASCII.get(c, c) for c in text)
        prefix, star, suffix = text.partition("*")
        bad = set(prefix + suffix) - set(_SIDE_OF)
        if bad:
            raise ValueError(f"unknown letters {sorted(bad)} in pattern")
        return cls(prefix, suffix)

    def __str__(self) -> str:
        return f"{self.prefix}*{self.suffix}"

    def side(self):
        sides = {_SIDE_OF[c] for c in self.prefix + self.suffix}
        if len(sides) > 1:
            raise ValueError(f"pattern {self} mixes left and right letters")
        return sides.pop() if sides else None


def matches(word: Word, pattern: Pattern) -> bool:
    side = pattern.side()
    if side is not None and side != word.side:
        raise ValueError(f"pattern {pattern} does not apply to {word.side}-words")
    return word.letters.startswith(pattern.prefix) and word.letters.endswith(pattern.suffix)


def class_count(k: int, l: int, pattern: Pattern) -> int:
    """Number of words with k first-letters and l second-letters matching pattern."""
    fixed = pattern.prefix + pattern.suffix
    if len(fixed) > k + l:
        raise ValueError(f"pattern {pattern} longer than k+l={k + l}")
    side = pattern.side() or LEFT
    first, second = LETTERS[side]
    rest_first = k - fixed.count(first)
    rest_second = l - fixed.count(second)
    if rest_first < 0 or rest_second < 0:
        return 0
    return math.comb(rest_first + rest_second, rest_first)


def enumerate_words(side: str, k: int, l: int) -> Iterator[Word]:
    """All C(k+l, k) words, by choosing the positions of the first letter."""
    first, second = LETTERS[side]
    for pos in itertools.combinations(range(k + l), k):
        chosen = set(pos)
        yield Word(side, "".join(first if p in chosen else second for p in range(k + l)))


def render_tsv(tab: CupCapTables, side: str = LEFT) -> str:
    """Tab-separated table: i, first-letter values, second-letter values, word."""
    first, second = LETTERS[side]
    if side == LEFT:
        a, b, word = tab.alpha, tab.beta, left_word
    else:
        a, b, word = tab.gamma, tab.delta, right_word
    header = ["i"]
    header += [f"{first}({t})" for t in range(1, tab.k + 1)]
    header += [f"{second}({t})" for t in range(1, tab.l + 1)]
    header.append(f"{side}_i")
    lines = ["\t".join(header)]
    for i in range(1, tab.m + 1):
        cells = [str(i)]
        cells += [format_value(v) for v in a[i][1:]]
        cells += [format_value(v) for v in b[i][1:]]
        cells.append(str(word(tab, i)))
        lines.append("\t".join(cells))
    return "\n".join(lines) + "\n"
