"""Words over {0,1}, the prefix and length-lex orders, and the block encoding.

Words are plain Python strings over the letters "0" and "1"; the empty word
is "" and prints as "eps".  Tagged words additionally allow the letter "#".
"""

from __future__ import annotations

from enum import Enum

EPS = ""
LETTERS = ("0", "1")
TAGGED_LETTERS = ("0", "1", "#")

# Per-letter two-bit blocks; "1" maps to 01 so that the encoding is injective
# and encoded sets stay inside {00,01}*11.
CODE_BLOCKS = {"0": "00", "1": "01", "#": "11"}


class PrefixRelation(Enum):
    EQUAL = "equal"
    FIRST_IS_PREFIX = "first-is-prefix"
    SECOND_IS_PREFIX = "second-is-prefix"
    INCOMPARABLE = "incomparable"


def check_word(w: str) -> str:
    """Validate that w uses only the letters 0 and 1; returns w."""
    if w.strip("01"):
        raise ValueError(f"not a binary word: {w!r}")
    return w


def check_tagged(t: str) -> str:
    if t.strip("01#"):
        raise ValueError(f"not a word over 0,1,#: {t!r}")
    return t


def is_prefix(u: str, v: str) -> bool:
    return v.startswith(u)


def prefix_comparable(u: str, v: str) -> bool:
    return u.startswith(v) or v.startswith(u)


def compare_prefix(u: str, v: str) -> PrefixRelation:
    if u == v:
        return PrefixRelation.EQUAL
    if v.startswith(u):
        return PrefixRelation.FIRST_IS_PREFIX
    if u.startswith(v):
        return PrefixRelation.SECOND_IS_PREFIX
    return PrefixRelation.INCOMPARABLE


def llex_key(w: str) -> tuple[int, str]:
    """Sort key for the length-lexicographic order (0 < 1)."""
    return (len(w), w)


def llex_compare(u: str, v: str) -> int:
    """-1, 0 or 1 as u precedes, equals or follows v in length-lex order."""
    a, b = llex_key(u), llex_key(v)
    return (a > b) - (a < b)


def llex_sorted(words) -> list[str]:
    return sorted(words, key=llex_key)


def encode(t: str) -> str:
    """Blockwise encoding of a tagged word into {0,1}*; a monoid homomorphism."""
    check_tagged(t)
    return "".join(CODE_BLOCKS[a] for a in t)


def encode_io_pair(x: str, y: str) -> tuple[str, str]:
    """Encode an input/output pair as (encode(x)+'11', encode(y)+'11')."""
    return encode(x) + "11", encode(y) + "11"


def flip(letter: str) -> str:
    return "1" if letter == "0" else "0"


def parse_word(token: str) -> str:
    """Word literal: a run of 0/1 letters, with eps for the empty word."""
    if token == "eps":
        return EPS
    return check_word(token)


def format_word(w: str) -> str:
    return w if w else "eps"
