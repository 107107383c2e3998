"""Deterministic finite automata over the alphabet {0,1}.

Every Dfa is complete (a dead state is materialised when needed), and
minimisation renumbers states canonically by a breadth-first walk that takes
the 0-edge before the 1-edge.  Two minimised automata therefore accept the
same language iff they are equal as values, which makes language equality,
hashing and caching cheap everywhere above this module.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum

from .errors import NotARightIdeal, RegexSyntaxError
from .words import llex_key

LETTERS = ("0", "1")


@dataclass(frozen=True)
class Dfa:
    start: int
    delta: tuple[tuple[int, int], ...]  # delta[q] = (successor on 0, successor on 1)
    accepting: frozenset[int]

    @property
    def n_states(self) -> int:
        return len(self.delta)

    def step(self, q: int, letter: str) -> int:
        return self.delta[q][0] if letter == "0" else self.delta[q][1]

    def state_after(self, w: str, q: int | None = None) -> int:
        q = self.start if q is None else q
        for a in w:
            q = self.delta[q][0] if a == "0" else self.delta[q][1]
        return q

    def accepts(self, w: str) -> bool:
        return self.state_after(w) in self.accepting


# ---------------------------------------------------------------------------
# construction and minimisation


def _canonical(start: int, delta, accepting) -> Dfa:
    """Renumber states in BFS order from the start, 0-edge first."""
    order = {start: 0}
    queue = deque([start])
    while queue:
        q = queue.popleft()
        for nxt in delta[q]:
            if nxt not in order:
                order[nxt] = len(order)
                queue.append(nxt)
    new_delta = [(0, 0)] * len(order)
    for q, idx in order.items():
        new_delta[idx] = (order[delta[q][0]], order[delta[q][1]])
    new_acc = frozenset(order[q] for q in accepting if q in order)
    return Dfa(0, tuple(new_delta), new_acc)


def minimize(dfa: Dfa) -> Dfa:
    """Minimal complete DFA with canonical state numbering."""
    # restrict to reachable states
    reach = {dfa.start}
    queue = deque([dfa.start])
    while queue:
        q = queue.popleft()
        for nxt in dfa.delta[q]:
            if nxt not in reach:
                reach.add(nxt)
                queue.append(nxt)
    states = sorted(reach)
    # Moore partition refinement
    block = {q: (q in dfa.accepting) for q in states}
    while True:
        sig = {q: (block[q], block[dfa.delta[q][0]], block[dfa.delta[q][1]]) for q in states}
        renum = {}
        for q in states:
            renum.setdefault(sig[q], len(renum))
        new_block = {q: renum[sig[q]] for q in states}
        if new_block == block:
            break
        block = new_block
    n = len(set(block.values()))
    delta = [(0, 0)] * n
    accepting = set()
    for q in states:
        b = block[q]
        delta[b] = (block[dfa.delta[q][0]], block[dfa.delta[q][1]])
        if q in dfa.accepting:
            accepting.add(b)
    return _canonical(block[dfa.start], delta, accepting)


def empty_dfa() -> Dfa:
    return Dfa(0, ((0, 0),), frozenset())


def all_words_dfa() -> Dfa:
    return Dfa(0, ((0, 0),), frozenset({0}))


def epsilon_dfa() -> Dfa:
    return minimize(Dfa(0, ((1, 1), (1, 1)), frozenset({0})))


def word_dfa(w: str) -> Dfa:
    """DFA accepting exactly {w}."""
    n = len(w)
    dead = n + 1
    delta = []
    for i, a in enumerate(w):
        delta.append((i + 1, dead) if a == "0" else ((dead, i + 1)))
    delta.append((dead, dead))  # state n, the accepting end of the chain
    delta.append((dead, dead))
    return minimize(Dfa(0, tuple(delta), frozenset({n})))


def from_words(words) -> Dfa:
    """DFA for a finite language, built from a trie."""
    trie: dict[str, dict] = {}
    finals = set()
    for w in words:
        node = trie
        for a in w:
            node = node.setdefault(a, {})
        finals.add(id(node))
    if not trie and not finals:
        return empty_dfa()
    # number trie nodes
    numbering: dict[int, int] = {}
    nodes = []

    def visit(node):
        numbering[id(node)] = len(nodes)
        nodes.append(node)
        for a in LETTERS:
            if a in node:
                visit(node[a])

    visit(trie)
    dead = len(nodes)
    delta = []
    for node in nodes:
        row = tuple(numbering[id(node[a])] if a in node else dead for a in LETTERS)
        delta.append(row)
    delta.append((dead, dead))
    accepting = frozenset(numbering[i] for i in finals)
    return minimize(Dfa(0, tuple(delta), accepting))


def full_length_dfa(n: int) -> Dfa:
    """DFA for A^n, all words of length exactly n."""
    dead = n + 1
    delta = [(i + 1, i + 1) for i in range(n)]
    delta.append((dead, dead))
    delta.append((dead, dead))
    return minimize(Dfa(0, tuple(delta), frozenset({n})))


# ---------------------------------------------------------------------------
# NFA machinery for regexes and concatenations


class _Nfa:
    """Thompson-style NFA fragment with epsilon edges."""

    def __init__(self):
        self.n = 0
        self.eps: dict[int, set[int]] = {}
        self.moves: dict[tuple[int, str], set[int]] = {}
        self.start = 0
        self.accept: set[int] = set()

    def new_state(self) -> int:
        self.n += 1
        return self.n - 1

    def add_eps(self, a: int, b: int) -> None:
        self.eps.setdefault(a, set()).add(b)

    def add_move(self, a: int, letter: str, b: int) -> None:
        self.moves.setdefault((a, letter), set()).add(b)

    def closure(self, states) -> frozenset[int]:
        seen = set(states)
        stack = list(states)
        while stack:
            q = stack.pop()
            for r in self.eps.get(q, ()):
                if r not in seen:
                    seen.add(r)
                    stack.append(r)
        return frozenset(seen)


def determinize(nfa: _Nfa) -> Dfa:
    start = nfa.closure({nfa.start})
    index = {start: 0}
    rows = []
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        row = []
        for letter in LETTERS:
            nxt = set()
            for q in cur:
                nxt |= nfa.moves.get((q, letter), set())
            nxt = nfa.closure(nxt)
            if nxt not in index:
                index[nxt] = len(index)
                queue.append(nxt)
            row.append(index[nxt])
        rows.append(tuple(row))
    accepting = frozenset(i for s, i in index.items() if s & nfa.accept)
    return minimize(Dfa(0, tuple(rows), accepting))


def nfa_of_dfa(dfa: Dfa) -> _Nfa:
    nfa = _Nfa()
    base = [nfa.new_state() for _ in range(dfa.n_states)]
    nfa.start = base[dfa.start]
    nfa.accept = {base[q] for q in dfa.accepting}
    for q, (t0, t1) in enumerate(dfa.delta):
        nfa.add_move(base[q], "0", base[t0])
        nfa.add_move(base[q], "1", base[t1])
    return nfa


def _nfa_word_path(nfa: _Nfa, src: int, word: str) -> int:
    """Chain of states spelling word from src; returns the end state."""
    cur = src
    for a in word:
        nxt = nfa.new_state()
        nfa.add_move(cur, a, nxt)
        cur = nxt
    return cur


def concat_dfas(a: Dfa, b: Dfa) -> Dfa:
    """DFA for L(a)·L(b)."""
    nfa = _Nfa()
    offset_a = [nfa.new_state() for _ in range(a.n_states)]
    offset_b = [nfa.new_state() for _ in range(b.n_states)]
    nfa.start = offset_a[a.start]
    for q, (t0, t1) in enumerate(a.delta):
        nfa.add_move(offset_a[q], "0", offset_a[t0])
        nfa.add_move(offset_a[q], "1", offset_a[t1])
    for q, (t0, t1) in enumerate(b.delta):
        nfa.add_move(offset_b[q], "0", offset_b[t0])
        nfa.add_move(offset_b[q], "1", offset_b[t1])
    for q in a.accepting:
        nfa.add_eps(offset_a[q], offset_b[b.start])
    nfa.accept = {offset_b[q] for q in b.accepting}
    return determinize(nfa)


# ---------------------------------------------------------------------------
# boolean combinations


class BoolOp(Enum):
    AND = "and"
    OR = "or"
    DIFF = "diff"


def combine(a: Dfa, b: Dfa, op: BoolOp) -> Dfa:
    """Product construction for the boolean combination of two languages."""
    index = {(a.start, b.start): 0}
    rows = []
    pairs = [(a.start, b.start)]
    queue = deque(pairs)
    while queue:
        qa, qb = queue.popleft()
        row = []
        for i in range(2):
            nxt = (a.delta[qa][i], b.delta[qb][i])
            if nxt not in index:
                index[nxt] = len(index)
                pairs.append(nxt)
                queue.append(nxt)
            row.append(index[nxt])
        rows.append(tuple(row))
    accepting = set()
    for (qa, qb), i in index.items():
        ina, inb = qa in a.accepting, qb in b.accepting
        ok = (ina and inb) if op is BoolOp.AND else (ina or inb) if op is BoolOp.OR else (ina and not inb)
        if ok:
            accepting.add(i)
    return minimize(Dfa(0, tuple(rows), frozenset(accepting)))


def complement(a: Dfa) -> Dfa:
    return minimize(Dfa(a.start, a.delta, frozenset(range(a.n_states)) - a.accepting))


def is_empty_lang(a: Dfa) -> bool:
    return not a.accepting


def equal_language(a: Dfa, b: Dfa) -> bool:
    return minimize(a) == minimize(b)


def subset_language(a: Dfa, b: Dfa) -> bool:
    return is_empty_lang(combine(a, b, BoolOp.DIFF))


def shortest_accepted(a: Dfa) -> str | None:
    """Length-lex least accepted word, or None for the empty language."""
    word_to = {a.start: ""}
    if a.start in a.accepting:
        return ""
    queue = deque([a.start])
    while queue:
        q = queue.popleft()
        for letter in LETTERS:
            nxt = a.step(q, letter)
            if nxt not in word_to:
                word_to[nxt] = word_to[q] + letter
                if nxt in a.accepting:
                    return word_to[nxt]
                queue.append(nxt)
    return None


# ---------------------------------------------------------------------------
# classification and enumeration


@dataclass(frozen=True)
class LanguageSize:
    kind: str  # "empty" | "finite" | "infinite"
    count: int | None = None

    @property
    def is_empty(self) -> bool:
        return self.kind == "empty"

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    @property
    def is_infinite(self) -> bool:
        return self.kind == "infinite"


def _productive(a: Dfa) -> set[int]:
    """States that can reach an accepting state."""
    rev: dict[int, set[int]] = {q: set() for q in range(a.n_states)}
    for q, row in enumerate(a.delta):
        for nxt in row:
            rev[nxt].add(q)
    seen = set(a.accepting)
    queue = deque(seen)
    while queue:
        q = queue.popleft()
        for p in rev[q]:
            if p not in seen:
                seen.add(p)
                queue.append(p)
    return seen


def classify(a: Dfa) -> LanguageSize:
    """Empty, Finite(count) or Infinite."""
    a = minimize(a)
    productive = _productive(a)
    if a.start not in productive:
        return LanguageSize("empty")
    # cycle detection on the productive subgraph (all states reachable already)
    color: dict[int, int] = {}

    def has_cycle(q: int) -> bool:
        color[q] = 1
        for nxt in a.delta[q]:
            if nxt in productive:
                c = color.get(nxt, 0)
                if c == 1 or (c == 0 and has_cycle(nxt)):
                    return True
        color[q] = 2
        return False

    if has_cycle(a.start):
        return LanguageSize("infinite")
    ways: dict[int, int] = {}

    def count(q: int) -> int:
        if q in ways:
            return ways[q]
        total = 1 if q in a.accepting else 0
        for nxt in a.delta[q]:
            if nxt in productive:
                total += count(nxt)
        ways[q] = total
        return total

    return LanguageSize("finite", count(a.start))


def count_by_length(a: Dfa, upto: int, cache: list[list[int]] | None = None) -> list[list[int]]:
    """counts[l][q] = number of accepted words of length exactly l from state q.

    Extends cache in place when given, so repeated rank queries stay cheap.
    """
    counts = cache if cache is not None else []
    if not counts:
        counts.append([1 if q in a.accepting else 0 for q in range(a.n_states)])
    while len(counts) <= upto:
        prev = counts[-1]
        counts.append([prev[t0] + prev[t1] for (t0, t1) in a.delta])
    return counts


def enumerate_words(a: Dfa, k: int, max_len: int = 64) -> list[str]:
    """First min(k, |L|) words in strict length-lex order, scanning lengths up to max_len."""
    out: list[str] = []
    if k <= 0:
        return out
    counts = count_by_length(a, max_len)
    for length in range(max_len + 1):
        if counts[length][a.start] == 0:
            continue

        def descend(q: int, remaining: int, prefix: str) -> bool:
            if remaining == 0:
                out.append(prefix)
                return len(out) >= k
            for letter in LETTERS:
                nxt = a.step(q, letter)
                if counts[remaining - 1][nxt]:
                    if descend(nxt, remaining - 1, prefix + letter):
                        return True
            return False

        if descend(a.start, length, ""):
            break
    return out


def words_up_to_length(a: Dfa, max_len: int) -> list[str]:
    """All accepted words of length <= max_len, in length-lex order."""
    productive = _productive(a)
    out = []
    level = [(a.start, "")] if a.start in productive else []
    if a.start in a.accepting:
        out.append("")
    for _ in range(max_len):
        nxt_level = []
        for q, w in level:
            for letter in LETTERS:
                nxt = a.step(q, letter)
                if nxt not in productive:
                    continue
                nxt_level.append((nxt, w + letter))
                if nxt in a.accepting:
                    out.append(w + letter)
        level = nxt_level
    return sorted(out, key=llex_key)


# ---------------------------------------------------------------------------
# derived languages


class Derived(Enum):
    RIGHT_IDEAL_CLOSURE = "right-ideal-closure"
    STRICT_EXTENSIONS = "strict-extensions"
    PREFIX_CLOSURE = "prefix-closure"
    PREF_CODE_OF_IDEAL = "pref-code-of-ideal"


def right_ideal_closure(a: Dfa) -> Dfa:
    """L·A*: words with a prefix in L.  Accepting states become absorbing."""
    sink = a.n_states
    delta = []
    for q, row in enumerate(a.delta):
        if q in a.accepting:
            delta.append((sink, sink))
        else:
            delta.append(row)
    delta.append((sink, sink))
    return minimize(Dfa(a.start, tuple(delta), a.accepting | {sink}))


def strict_extensions(a: Dfa) -> Dfa:
    """L·A^+: words with a proper prefix in L."""
    sink = a.n_states
    delta = []
    for q, row in enumerate(a.delta):
        if q in a.accepting:
            delta.append((sink, sink))
        else:
            delta.append(row)
    delta.append((sink, sink))
    return minimize(Dfa(a.start, tuple(delta), frozenset({sink})))


def prefix_closure(a: Dfa) -> Dfa:
    return minimize(Dfa(a.start, a.delta, frozenset(_productive(a))))


def right_ideal_check(a: Dfa) -> tuple[str, str] | None:
    """None if L·A* = L, else a witness pair (w in L, w+letter not in L)."""
    diff = combine(right_ideal_closure(a), a, BoolOp.DIFF)
    bad = shortest_accepted(diff)
    if bad is None:
        return None
    # longest proper prefix of bad inside L; the next letter exits L
    for i in range(len(bad) - 1, -1, -1):
        if a.accepts(bad[:i]):
            return bad[:i], bad[: i + 1]
    raise AssertionError("witness in L·A* must have a prefix in L")


def pref_code_of_ideal(a: Dfa) -> Dfa:
    witness = right_ideal_check(a)
    if witness is not None:
        raise NotARightIdeal(*witness)
    return combine(a, strict_extensions(a), BoolOp.DIFF)


def derived_language(a: Dfa, kind: Derived) -> Dfa:
    if kind is Derived.RIGHT_IDEAL_CLOSURE:
        return right_ideal_closure(a)
    if kind is Derived.STRICT_EXTENSIONS:
        return strict_extensions(a)
    if kind is Derived.PREFIX_CLOSURE:
        return prefix_closure(a)
    return pref_code_of_ideal(a)


# ---------------------------------------------------------------------------
# regex compilation

_ATOM_STARTERS = set("01e(")


class _RegexParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        raise RegexSyntaxError(message, self.pos)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> _Nfa:
        nfa = _Nfa()
        start, acc = self.union(nfa)
        if self.pos != len(self.text):
            self.error(f"unexpected character {self.text[self.pos]!r}")
        nfa.start = start
        nfa.accept = {acc}
        return nfa

    def union(self, nfa: _Nfa):
        s, a = self.concat(nfa)
        while self.peek() == "|":
            self.pos += 1
            s2, a2 = self.concat(nfa)
            ns, na = nfa.new_state(), nfa.new_state()
            nfa.add_eps(ns, s)
            nfa.add_eps(ns, s2)
            nfa.add_eps(a, na)
            nfa.add_eps(a2, na)
            s, a = ns, na
        return s, a

    def concat(self, nfa: _Nfa):
        if self.peek() not in _ATOM_STARTERS:
            self.error("expected 0, 1, eps or (")
        s, a = self.starred(nfa)
        while self.peek() in _ATOM_STARTERS:
            s2, a2 = self.starred(nfa)
            nfa.add_eps(a, s2)
            a = a2
        return s, a

    def starred(self, nfa: _Nfa):
        s, a = self.atom(nfa)
        while self.peek() == "*":
            self.pos += 1
            ns, na = nfa.new_state(), nfa.new_state()
            nfa.add_eps(ns, s)
            nfa.add_eps(ns, na)
            nfa.add_eps(a, s)
            nfa.add_eps(a, na)
            s, a = ns, na
        return s, a

    def atom(self, nfa: _Nfa):
        c = self.peek()
        if c in ("0", "1"):
            self.pos += 1
            s, a = nfa.new_state(), nfa.new_state()
            nfa.add_move(s, c, a)
            return s, a
        if c == "e":
            if self.text.startswith("eps", self.pos):
                self.pos += 3
                s, a = nfa.new_state(), nfa.new_state()
                nfa.add_eps(s, a)
                return s, a
            self.error("expected eps")
        if c == "(":
            self.pos += 1
            s, a = self.union(nfa)
            if self.peek() != ")":
                self.error("expected )")
            self.pos += 1
            return s, a
        self.error("expected 0, 1, eps or (")


def compile_regex(expr: str) -> Dfa:
    """Minimised DFA for a regex over literals 0/1, eps, |, *, parentheses."""
    expr = expr.replace(" ", "")
    if expr == "":
        raise RegexSyntaxError("empty expression", 0)
    return determinize(_RegexParser(expr).parse())


# ---------------------------------------------------------------------------
# regex printing (state elimination)


def _rx_union(a: str | None, b: str | None) -> str | None:
    if a is None:
        return b
    if b is None:
        return a
    if a == b:
        return a
    parts = dict.fromkeys(a.split("\x00") + b.split("\x00"))
    return "\x00".join(parts)


def _rx_concat(a: str | None, b: str | None) -> str | None:
    if a is None or b is None:
        return None
    if a == "":
        return b
    if b == "":
        return a
    return _rx_group(a) + _rx_group(b)


def _rx_group(r: str) -> str:
    # r is union-of-alternatives with \x00 separators, or a concatenation
    if "\x00" in r:
        return "(" + r.replace("\x00", "|") + ")"
    return r


def _fully_parenthesized(r: str) -> bool:
    if not (r.startswith("(") and r.endswith(")")):
        return False
    depth = 0
    for i, c in enumerate(r):
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
            if depth == 0:
                return i == len(r) - 1
    return False


def _rx_star(r: str | None) -> str:
    if r is None or r == "":
        return ""
    if "\x00" in r:
        return "(" + r.replace("\x00", "|") + ")*"
    if len(r) == 1 or _fully_parenthesized(r):
        return r + "*"
    if r.endswith("*") and (len(r) == 2 or _fully_parenthesized(r[:-1])):
        return r  # (x*)* = x*
    return "(" + r + ")*"


def _rx_finish(r: str | None) -> str:
    if r is None:
        raise ValueError("empty language has no regex in this grammar")
    if r == "":
        return "eps"
    return r.replace("\x00", "|")


def dfa_to_regex(a: Dfa) -> str:
    """Regex for a nonempty language, via state elimination."""
    a = minimize(a)
    if is_empty_lang(a):
        raise ValueError("empty language has no regex in this grammar")
    n = a.n_states
    start, accept = n, n + 1
    edges: dict[tuple[int, int], str | None] = {}

    def get(i, j):
        return edges.get((i, j))

    def put(i, j, r):
        if r is not None:
            edges[(i, j)] = _rx_union(edges.get((i, j)), r)

    for q, (t0, t1) in enumerate(a.delta):
        put(q, t0, "0")
        put(q, t1, "1")
    put(start, a.start, "")
    for q in a.accepting:
        put(q, accept, "")
    for victim in range(n):
        loop = _rx_star(get(victim, victim))
        ins = [(i, r) for (i, j), r in edges.items() if j == victim and i != victim]
        outs = [(j, r) for (i, j), r in edges.items() if i == victim and j != victim]
        for (i, j) in list(edges):
            if i == victim or j == victim:
                del edges[(i, j)]
        for i, rin in ins:
            for j, rout in outs:
                put(i, j, _rx_concat(_rx_concat(rin, loop), rout))
    return _rx_finish(get(start, accept))


# ---------------------------------------------------------------------------
# text dump format


def dump_dfa(a: Dfa) -> str:
    lines = [f"start: {a.start}"]
    lines.append("accept: " + " ".join(str(q) for q in sorted(a.accepting)))
    for q, (t0, t1) in enumerate(a.delta):
        lines.append(f"{q} 0 -> {t0}")
        lines.append(f"{q} 1 -> {t1}")
    return "\n".join(lines) + "\n"


def parse_dfa_dump(text: str) -> Dfa:
    start = None
    accepting: set[int] = set()
    moves: dict[tuple[int, str], int] = {}
    states: set[int] = set()
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("start:"):
            start = int(line.split(":", 1)[1])
            states.add(start)
        elif line.startswith("accept:"):
            accepting = {int(tok) for tok in line.split(":", 1)[1].split()}
            states |= accepting
        else:
            src, letter, arrow, dst = line.split()
            if arrow != "->":
                raise ValueError(f"bad transition line: {raw!r}")
            moves[(int(src), letter)] = int(dst)
            states |= {int(src), int(dst)}
    if start is None:
        raise ValueError("missing start line")
    order = {q: i for i, q in enumerate(sorted(states))}
    dead = len(order)
    delta = [(dead, dead)] * (dead + 1)
    for q in states:
        row = tuple(order.get(moves.get((q, letter)), dead) for letter in LETTERS)
        delta[order[q]] = row
    return minimize(Dfa(order[start], tuple(delta), frozenset(order[q] for q in accepting)))
