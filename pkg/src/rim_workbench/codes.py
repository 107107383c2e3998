"""Prefix codes over {0,1} and the end-equivalence toolkit.

A PrefixCode wraps the canonical minimal DFA of its language, whether the
code was given as an explicit finite set or as a regular expression; all
operations treat the two representations interchangeably.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum

from . import automata as fa
from .automata import BoolOp, Dfa
from .ends import UPEnd
from .errors import (
    EmptyCode,
    EndNotInEnds,
    IndexOutOfRange,
    NotAMember,
    NotPrefixFree,
    UnsupportedRepresentation,
)
from .words import flip, format_word, llex_key, llex_sorted


class Comparison(Enum):
    EQUIVALENT = "EQUIV"
    FIRST_BELOW = "LT"
    SECOND_BELOW = "GT"
    INCOMPARABLE = "INCOMP"


class LatticeOp(Enum):
    MEET = "meet"
    JOIN = "join"


class PrefixCode:
    """A prefix-free regular language, finite or infinite."""

    __slots__ = ("dfa", "_ideal", "_size", "_words", "_counts", "_cum", "_cycle_memo")

    def __init__(self, dfa: Dfa):
        self.dfa = dfa
        self._ideal = None
        self._size = None
        self._words = None
        self._counts: list[list[int]] = []
        self._cum: list[int] = []
        self._cycle_memo: dict = {}

    # -- construction ------------------------------------------------------

    @classmethod
    def make(cls, source) -> "PrefixCode":
        """Build a prefix code from a finite word collection or a Dfa.

        Rejects inputs that are not prefix-free, with a witness pair.
        """
        if isinstance(source, PrefixCode):
            return source
        if isinstance(source, Dfa):
            dfa = fa.minimize(source)
            _check_regular_prefix_free(dfa)
            return cls(dfa)
        words = llex_sorted({w for w in source})
        for i, w in enumerate(words):
            for v in words[i + 1 :]:
                if v.startswith(w):
                    raise NotPrefixFree(w, v)
        code = cls(fa.from_words(words))
        code._words = tuple(words)
        return code

    @classmethod
    def from_regex(cls, expr: str) -> "PrefixCode":
        return cls.make(fa.compile_regex(expr))

    # -- identity ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, PrefixCode) and self.dfa == other.dfa

    def __hash__(self) -> int:
        return hash(self.dfa)

    def __repr__(self) -> str:
        return f"PrefixCode[{format_code(self)}]"

    # -- basic queries -----------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return fa.is_empty_lang(self.dfa)

    def ideal(self) -> Dfa:
        """DFA of the right ideal generated by the code."""
        if self._ideal is None:
            self._ideal = fa.right_ideal_closure(self.dfa)
        return self._ideal

    def size(self) -> fa.LanguageSize:
        if self._size is None:
            self._size = fa.classify(self.dfa)
        return self._size

    def contains(self, w: str) -> bool:
        return self.dfa.accepts(w)

    def finite_words(self) -> tuple[str, ...]:
        """Members of a finite code in length-lex order."""
        size = self.size()
        if not size.is_finite and not size.is_empty:
            raise UnsupportedRepresentation("code is infinite")
        if self._words is None:
            count = size.count or 0
            self._words = tuple(unrank(self, n) for n in range(count))
        return self._words

    def members_up_to(self, max_len: int) -> list[str]:
        return fa.words_up_to_length(self.dfa, max_len)

    def first_members(self, k: int) -> list[str]:
        size = self.size()
        if size.is_empty:
            return []
        if size.is_finite:
            k = min(k, size.count)
        return [unrank(self, n) for n in range(k)]

    def contains_end(self, e: UPEnd) -> bool:
        """True iff some finite prefix of the end is a member."""
        return self._code_prefix_of_end(e) is not None

    def _code_prefix_of_end(self, e: UPEnd) -> int | None:
        """Length of the unique member that prefixes the end, else None."""
        dfa = self.dfa
        q = dfa.start
        if q in dfa.accepting:
            return 0
        pos = 0
        for a in e.head:
            q = dfa.step(q, a)
            pos += 1
            if q in dfa.accepting:
                return pos
        memo = self._cycle_memo.setdefault("member", {})
        key = (q, e.period)
        if key not in memo:
            memo[key] = _cycle_accept_offset(dfa, q, e.period)
        off = memo[key]
        return None if off is None else pos + off


def _cycle_accept_offset(dfa: Dfa, q: int, period: str) -> int | None:
    """Steps until acceptance while looping over period from q, or None."""
    seen = {(q, 0)}
    steps = 0
    phase = 0
    while True:
        q = dfa.step(q, period[phase])
        steps += 1
        if q in dfa.accepting:
            return steps
        phase = (phase + 1) % len(period)
        if (q, phase) in seen:
            return None
        seen.add((q, phase))


def _check_regular_prefix_free(dfa: Dfa) -> None:
    """No member may be a proper prefix of another; witness on failure."""
    overlap = fa.combine(dfa, fa.strict_extensions(dfa), BoolOp.AND)
    longer = fa.shortest_accepted(overlap)
    if longer is None:
        return
    for i in range(len(longer)):
        if dfa.accepts(longer[:i]):
            raise NotPrefixFree(longer[:i], longer)
    raise AssertionError("strict extension without a proper prefix member")


def make(source) -> PrefixCode:
    return PrefixCode.make(source)


# ---------------------------------------------------------------------------
# maximality and the comparable language


def comparable_language(p: PrefixCode) -> Dfa:
    """Words prefix-comparable to some member: PrefixClosure(P) + P·A*."""
    return fa.combine(fa.prefix_closure(p.dfa), p.ideal(), BoolOp.OR)


def maximality_witness(p: PrefixCode) -> str | None:
    """A word comparable to no member, or None when the code is maximal."""
    if p.is_empty:
        raise EmptyCode()
    gap = fa.complement(comparable_language(p))
    return fa.shortest_accepted(gap)


def is_maximal(p: PrefixCode) -> bool:
    return maximality_witness(p) is None


# ---------------------------------------------------------------------------
# lattice operations


def lattice_op(p1: PrefixCode, p2: PrefixCode, op: LatticeOp) -> PrefixCode:
    """Meet and join of codes through their right ideals."""
    bool_op = BoolOp.AND if op is LatticeOp.MEET else BoolOp.OR
    ideal = fa.combine(p1.ideal(), p2.ideal(), bool_op)
    return PrefixCode.make(fa.pref_code_of_ideal(ideal))


def meet(p1: PrefixCode, p2: PrefixCode) -> PrefixCode:
    return lattice_op(p1, p2, LatticeOp.MEET)


def join(p1: PrefixCode, p2: PrefixCode) -> PrefixCode:
    return lattice_op(p1, p2, LatticeOp.JOIN)


# ---------------------------------------------------------------------------
# end-equivalence (closure comparison)


def end_compare(p1: PrefixCode, p2: PrefixCode) -> Comparison:
    """Compare the languages of words whose cones meet each right ideal."""
    c1, c2 = comparable_language(p1), comparable_language(p2)
    le = fa.subset_language(c1, c2)
    ge = fa.subset_language(c2, c1)
    if le and ge:
        return Comparison.EQUIVALENT
    if le:
        return Comparison.FIRST_BELOW
    if ge:
        return Comparison.SECOND_BELOW
    return Comparison.INCOMPARABLE


def end_gap_witness(p1: PrefixCode, p2: PrefixCode) -> str | None:
    """Word whose cone meets P1·A* but not P2·A*, or None."""
    diff = fa.combine(comparable_language(p1), comparable_language(p2), BoolOp.DIFF)
    return fa.shortest_accepted(diff)


def end_separator(p1: PrefixCode, p2: PrefixCode) -> str | None:
    """Witness word for end-inequivalence (either direction), or None."""
    w = end_gap_witness(p1, p2)
    if w is not None:
        return w
    return end_gap_witness(p2, p1)


# ---------------------------------------------------------------------------
# bounded end-equivalence (equality of end sets)


def ends_subset(p1: PrefixCode, p2: PrefixCode) -> tuple[bool, UPEnd | None]:
    """Decide ends(P1) <= ends(P2); a violating end is returned on failure.

    A violation is an infinite word that enters P1·A* while forever avoiding
    P2·A*: search the product of the ideal DFA of P1 with the complement of
    the ideal of P2 for a state that is accepting on the P1 side, safe on
    the avoid side, and from which the safe region contains a cycle.
    """
    if p1.is_empty:
        return True, None
    d1 = p1.ideal()
    d2c = fa.complement(p2.ideal())
    safe = d2c.accepting
    # states of d2c from which an infinite all-safe path exists
    alive = set(safe)
    changed = True
    while changed:
        changed = False
        for q in list(alive):
            if not any(d2c.delta[q][i] in alive for i in range(2)):
                alive.discard(q)
                changed = True
    start = (d1.start, d2c.start)
    word_to = {start: ""}
    queue = deque([start])
    hit = None
    while queue and hit is None:
        qa, qb = queue.popleft()
        if qa in d1.accepting and qb in alive:
            hit = (qa, qb)
            break
        for i, letter in enumerate(("0", "1")):
            nxt = (d1.delta[qa][i], d2c.delta[qb][i])
            if nxt not in word_to:
                word_to[nxt] = word_to[(qa, qb)] + letter
                queue.append(nxt)
    if hit is None:
        return True, None
    # extend into a cycle of the alive region, preferring the 0-edge
    u = word_to[hit]
    path = []
    states = {hit[1]: 0}
    q = hit[1]
    while True:
        for i, letter in enumerate(("0", "1")):
            if d2c.delta[q][i] in alive:
                path.append(letter)
                q = d2c.delta[q][i]
                break
        if q in states:
            loop_start = states[q]
            head = u + "".join(path[:loop_start])
            period = "".join(path[loop_start:])
            return False, UPEnd(head, period)
        states[q] = len(path)


def bd_compare(p1: PrefixCode, p2: PrefixCode) -> Comparison:
    """Equality or inclusion of the end sets P1·A^w and P2·A^w; exact."""
    le, _ = ends_subset(p1, p2)
    ge, _ = ends_subset(p2, p1)
    if le and ge:
        return Comparison.EQUIVALENT
    if le:
        return Comparison.FIRST_BELOW
    if ge:
        return Comparison.SECOND_BELOW
    return Comparison.INCOMPARABLE


def bd_separator(p1: PrefixCode, p2: PrefixCode) -> UPEnd | None:
    """An end in one end set but not the other, or None when equal."""
    ok, witness = ends_subset(p1, p2)
    if not ok:
        return witness
    ok, witness = ends_subset(p2, p1)
    return witness


# ---------------------------------------------------------------------------
# bound functions and the sampled T-equivalence check


@dataclass(frozen=True)
class BoundFunction:
    """Total length bound, an explicit polynomial or a table with a tail rule.

    Polynomials are coefficient lists c0 + c1*n + c2*n^2 + ...; tables hold
    explicit small values and fall back to the tail polynomial beyond them.
    """

    coeffs: tuple[int, ...]
    table: tuple[int, ...] = ()

    @classmethod
    def poly(cls, coeffs) -> "BoundFunction":
        return cls(tuple(int(c) for c in coeffs))

    @classmethod
    def const(cls, c: int) -> "BoundFunction":
        return cls((int(c),))

    @classmethod
    def affine(cls, a: int, b: int) -> "BoundFunction":
        return cls((int(b), int(a)))

    @classmethod
    def from_table(cls, values, tail_coeffs=(0, 1)) -> "BoundFunction":
        return cls(tuple(int(c) for c in tail_coeffs), tuple(int(v) for v in values))

    def __call__(self, n: int) -> int:
        if n < len(self.table):
            return self.table[n]
        return sum(c * n**i for i, c in enumerate(self.coeffs))

    @property
    def is_constant(self) -> bool:
        return not self.table and all(c == 0 for c in self.coeffs[1:])

    def check_tau_family(self, upto: int) -> None:
        """Monotone and >= n on the sampled range, as the tau families require."""
        prev = None
        for n in range(upto + 1):
            value = self(n)
            if value < n:
                raise ValueError(f"bound {format_bound(self)} has tau({n}) = {value} < {n}")
            if prev is not None and value < prev:
                raise ValueError(f"bound {format_bound(self)} decreases at {n}")
            prev = value


def parse_bound(text: str) -> BoundFunction:
    """Polynomial in n, e.g. 5, n+2, 2n+1, n^2+3, 2*n^2+n."""
    coeffs: dict[int, int] = {}
    for term in text.replace(" ", "").split("+"):
        if not term:
            raise ValueError(f"malformed bound: {text!r}")
        coef, power = term, 0
        if "n" in term:
            coef, _, rest = term.partition("n")
            coef = coef.rstrip("*") or "1"
            power = 1
            if rest.startswith("^"):
                power = int(rest[1:])
            elif rest:
                raise ValueError(f"malformed bound term: {term!r}")
        coeffs[power] = coeffs.get(power, 0) + int(coef)
    top = max(coeffs)
    return BoundFunction.poly(tuple(coeffs.get(i, 0) for i in range(top + 1)))


def format_bound(b: BoundFunction) -> str:
    if b.table:
        inner = ",".join(str(v) for v in b.table)
        return f"table[{inner}]+{format_bound(BoundFunction(b.coeffs))}"
    terms = []
    for power in range(len(b.coeffs) - 1, -1, -1):
        c = b.coeffs[power]
        if c == 0 and not (power == 0 and not terms):
            continue
        if power == 0:
            terms.append(str(c))
        elif power == 1:
            terms.append("n" if c == 1 else f"{c}n")
        else:
            terms.append(f"n^{power}" if c == 1 else f"{c}n^{power}")
    return "+".join(terms)


@dataclass(frozen=True)
class TauVerdict:
    passed: bool
    depth: int
    witness: tuple[str, str] | None = None  # length-bound violating member pair
    separator: str | None = None  # end-inequivalence witness word


def tau_check(p1: PrefixCode, p2: PrefixCode, tau: BoundFunction, depth: int) -> TauVerdict:
    """Bounded verification of the length-bound part of T-equivalence.

    Checks every prefix-comparable member pair up to the given depth; a pass
    is evidence up to that depth, not a proof for all lengths.
    """
    if end_compare(p1, p2) is not Comparison.EQUIVALENT:
        return TauVerdict(False, depth, separator=end_separator(p1, p2))
    tau.check_tau_family(depth)
    m1 = p1.members_up_to(depth)
    m2 = p2.members_up_to(depth)
    for x1 in m1:
        for x2 in m2:
            if not (x1.startswith(x2) or x2.startswith(x1)):
                continue
            if len(x1) > tau(len(x2)) or len(x2) > tau(len(x1)):
                return TauVerdict(False, depth, (x1, x2))
    return TauVerdict(True, depth)


# ---------------------------------------------------------------------------
# puncture: remove a single end


def puncture(p: PrefixCode, v: UPEnd) -> PrefixCode:
    """Prefix code with the same ends except v, the border-of-the-end code."""
    i0 = p._code_prefix_of_end(v)
    if i0 is None:
        raise EndNotInEnds(v)
    # spine automaton for the border words v[:m] + flip(v[m]), m >= i0
    m0 = max(i0, len(v.head))
    plen = len(v.period)
    n_spine = m0 + plen
    acc = n_spine
    dead = n_spine + 1

    def spine_next(m: int) -> int:
        nxt = m + 1
        if nxt >= m0 + plen:
            nxt = m0 + (nxt - m0) % plen
        return nxt

    delta = []
    for m in range(n_spine):
        a = v.letter(m)
        follow = spine_next(m)
        branch = acc if m >= i0 else dead
        row = (follow, branch) if a == "0" else (branch, follow)
        delta.append(row)
    delta.append((dead, dead))  # acc
    delta.append((dead, dead))  # dead
    border = fa.minimize(Dfa(0, tuple(delta), frozenset({acc})))
    kept = fa.combine(p.dfa, fa.word_dfa(v.prefix(i0)), BoolOp.DIFF)
    return PrefixCode.make(fa.combine(kept, border, BoolOp.OR))


# ---------------------------------------------------------------------------
# rank and unrank


def _counts_for(p: PrefixCode, upto: int) -> list[list[int]]:
    counts = fa.count_by_length(p.dfa, upto, p._counts)
    cum = p._cum
    if not cum:
        cum.append(counts[0][p.dfa.start])
    while len(cum) <= upto:
        cum.append(cum[-1] + counts[len(cum)][p.dfa.start])
    return counts


def rank(p: PrefixCode, x: str, base: int = 0) -> int:
    """Strict length-lex rank of a member; base selects 0- or 1-based."""
    if not p.contains(x):
        raise NotAMember(x)
    counts = _counts_for(p, max(len(x), 1))
    total = p._cum[len(x) - 1] if x else 0
    q = p.dfa.start
    for i, a in enumerate(x):
        if a == "1":
            total += counts[len(x) - i - 1][p.dfa.delta[q][0]]
        q = p.dfa.step(q, a)
    return total + base


def unrank(p: PrefixCode, n: int, base: int = 0) -> str:
    """Member with the given rank; inverse of rank."""
    n -= base
    size = p.size()
    if n < 0 or (size.count is not None and n >= size.count) or size.is_empty:
        raise IndexOutOfRange(n + base)
    length = 0
    counts = _counts_for(p, 0)
    while p._cum[length] <= n:
        length += 1
        counts = _counts_for(p, length)
    remaining = n - (p._cum[length - 1] if length else 0)
    q = p.dfa.start
    out = []
    for i in range(length):
        c0 = counts[length - i - 1][p.dfa.delta[q][0]]
        if remaining < c0:
            out.append("0")
            q = p.dfa.delta[q][0]
        else:
            remaining -= c0
            out.append("1")
            q = p.dfa.delta[q][1]
    return "".join(out)


# ---------------------------------------------------------------------------
# padding


def pad(p: PrefixCode, beta: BoundFunction) -> PrefixCode:
    """Replace each member x by all its extensions of length beta(|x|)."""
    size = p.size()
    if size.is_finite or size.is_empty:
        out = []
        for x in p.finite_words():
            k = beta(len(x))
            out.extend(x + format(i, f"0{k}b") if k else x for i in range(2**k))
        return PrefixCode.make(out)
    if beta.is_constant:
        return PrefixCode.make(fa.concat_dfas(p.dfa, fa.full_length_dfa(beta(0))))
    raise UnsupportedRepresentation(
        "padding an infinite code needs a constant bound to stay regular"
    )


# ---------------------------------------------------------------------------
# printing


def format_code(p: PrefixCode) -> str:
    """Finite codes print as { ... }, infinite ones as /regex/."""
    size = p.size()
    if size.is_empty:
        return "{ }"
    if size.is_finite:
        inner = ", ".join(format_word(w) for w in p.finite_words())
        return "{ " + inner + " }"
    return "/" + fa.dfa_to_regex(p.dfa) + "/"
