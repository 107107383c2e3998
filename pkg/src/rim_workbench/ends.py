"""Ultimately periodic points of Cantor space and the action on them.

An end u(v) is the infinite word u v v v ...; the constructor normalises to
the canonical form (primitive period, shortest head), so equality of ends is
plain value equality.
"""

from __future__ import annotations

from dataclasses import dataclass

from .words import check_word


def primitive_root(v: str) -> str:
    """Shortest t with v = t^k."""
    n = len(v)
    for d in range(1, n + 1):
        if n % d == 0 and v[:d] * (n // d) == v:
            return v[:d]
    return v


def _canonical(head: str, period: str) -> tuple[str, str]:
    period = primitive_root(period)
    # absorb a shared last letter of the head into a rotation of the period
    while head and head[-1] == period[-1]:
        head = head[:-1]
        period = period[-1] + period[:-1]
    return head, period


@dataclass(frozen=True)
class UPEnd:
    head: str
    period: str

    def __post_init__(self):
        check_word(self.head)
        check_word(self.period)
        if not self.period:
            raise ValueError("period must be nonempty")
        head, period = _canonical(self.head, self.period)
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "period", period)

    def letter(self, i: int) -> str:
        if i < len(self.head):
            return self.head[i]
        return self.period[(i - len(self.head)) % len(self.period)]

    def prefix(self, n: int) -> str:
        if n <= len(self.head):
            return self.head[:n]
        k = n - len(self.head)
        reps = k // len(self.period) + 1
        return (self.head + self.period * reps)[:n]

    def drop(self, k: int) -> "UPEnd":
        """The end after removing its first k letters."""
        if k <= len(self.head):
            return UPEnd(self.head[k:], self.period)
        d = (k - len(self.head)) % len(self.period)
        return UPEnd("", self.period[d:] + self.period[:d])

    def prepend(self, w: str) -> "UPEnd":
        return UPEnd(w + self.head, self.period)

    def __str__(self) -> str:
        return format_upend(self)


def parse_upend(text: str) -> UPEnd:
    """End literal u(v), e.g. 0(01) for 0·(01)^w and (0) for 0^w."""
    text = text.strip()
    open_paren = text.find("(")
    if open_paren < 0 or not text.endswith(")"):
        raise ValueError(f"malformed end literal: {text!r}")
    head = text[:open_paren]
    period = text[open_paren + 1 : -1]
    return UPEnd(check_word(head), check_word(period))


def format_upend(e: UPEnd) -> str:
    return f"{e.head}({e.period})"


def enumerate_upends(max_head: int, max_period: int) -> list[UPEnd]:
    """All distinct ends with head up to max_head and period up to max_period.

    Canonicalisation dedups; the order is deterministic (increasing size).
    """
    seen = set()
    out = []
    periods = []
    for plen in range(1, max_period + 1):
        for i in range(2**plen):
            v = format(i, f"0{plen}b")
            if primitive_root(v) == v:
                periods.append(v)
    for hlen in range(max_head + 1):
        for j in range(2**hlen):
            u = format(j, f"0{hlen}b") if hlen else ""
            for v in periods:
                e = UPEnd(u, v)
                if e not in seen:
                    seen.add(e)
                    out.append(e)
    return out


def ideal_contains_end(dfa, e: UPEnd) -> bool:
    """True iff some finite prefix of e is accepted by dfa.

    Exact for any DFA: after the head, the (state, phase) pairs recur.
    """
    q = dfa.start
    if q in dfa.accepting:
        return True
    for a in e.head:
        q = dfa.step(q, a)
        if q in dfa.accepting:
            return True
    seen = {(q, 0)}
    phase = 0
    while True:
        q = dfa.step(q, e.period[phase])
        if q in dfa.accepting:
            return True
        phase = (phase + 1) % len(e.period)
        if (q, phase) in seen:
            return False
        seen.add((q, phase))


def apply_end(m, e: UPEnd) -> UPEnd:
    """Value of a morphism on an end; m is any object with apply_to_end."""
    return m.apply_to_end(e)


def cross_check(f, g, ends) -> UPEnd | None:
    """Compare the actions of two morphisms on the given ends.

    Returns a separating end (membership differs, or values differ) or None
    when every sampled end is consistent with bounded end-equivalence.
    """
    for e in ends:
        rf = f._apply_raw(e)
        rg = g._apply_raw(e)
        if (rf is None) != (rg is None):
            return e
        if rf is None:
            continue
        (tf, out_f), (tg, out_g) = rf, rg
        if tf == tg:
            if out_f != out_g:
                return e
        elif e.drop(tf).prepend(out_f) != e.drop(tg).prepend(out_g):
            return e
    return None
