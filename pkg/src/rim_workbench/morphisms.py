"""Finite-table right-ideal morphisms: the Thompson-Higman fragment.

A morphism is stored as its table on the domain code; the extension law
f(x·w) = f(x)·w to the generated right ideal is implicit everywhere.
"""

from __future__ import annotations

import itertools

from . import automata as fa
from .automata import BoolOp
from .codes import PrefixCode, is_maximal
from .ends import UPEnd
from .errors import (
    EmptyMorphism,
    EndOutsideDomain,
    NotAVElement,
    NotPrefixFree,
    OutsideDomain,
    PreconditionViolated,
)
from .words import check_word, format_word, llex_key, llex_sorted


class FiniteMorphism:
    """Immutable finite table whose key set is a prefix code."""

    __slots__ = ("_entries", "_keyset", "_maxkey")

    def __init__(self, table):
        items = sorted(dict(table).items(), key=lambda kv: llex_key(kv[0]))
        keys = [k for k, _ in items]
        for k, v in items:
            check_word(k)
            check_word(v)
        for i, k in enumerate(keys):
            for other in keys[i + 1 :]:
                if other.startswith(k):
                    raise NotPrefixFree(k, other)
        self._entries = tuple(items)
        self._keyset = frozenset(keys)
        self._maxkey = max((len(k) for k in keys), default=0)

    # -- basics --------------------------------------------------------------

    @property
    def table(self) -> dict[str, str]:
        return dict(self._entries)

    @property
    def entries(self) -> tuple[tuple[str, str], ...]:
        return self._entries

    @property
    def domc(self) -> tuple[str, ...]:
        return tuple(k for k, _ in self._entries)

    @property
    def values(self) -> tuple[str, ...]:
        return tuple(v for _, v in self._entries)

    @property
    def is_empty(self) -> bool:
        return not self._entries

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteMorphism) and self._entries == other._entries

    def __hash__(self) -> int:
        return hash(self._entries)

    def __repr__(self) -> str:
        return f"FiniteMorphism[{format_morphism(self)}]"

    def __len__(self) -> int:
        return len(self._entries)

    # -- evaluation ------------------------------------------------------------

    def key_prefix_of(self, w: str) -> str | None:
        """The unique key that prefixes w, or None."""
        for length in range(min(len(w), self._maxkey) + 1):
            if w[:length] in self._keyset:
                return w[:length]
        return None

    def eval(self, w: str) -> str:
        key = self.key_prefix_of(w)
        if key is None:
            raise OutsideDomain(w)
        return self.table[key] + w[len(key):]

    def domain_code(self) -> PrefixCode:
        return PrefixCode.make(self.domc)

    def domain_dfa(self) -> fa.Dfa:
        return fa.from_words(self.domc)

    # -- action on ends ----------------------------------------------------------

    def _apply_raw(self, e: UPEnd) -> tuple[int, str] | None:
        """(consumed prefix length, output word) of the end action, or None."""
        if not self._entries:
            return None
        probe = e.prefix(self._maxkey)
        for length in range(self._maxkey + 1):
            if probe[:length] in self._keyset:
                return length, self.table[probe[:length]]
        return None

    def domain_contains_end(self, e: UPEnd) -> bool:
        return self._apply_raw(e) is not None

    def apply_to_end(self, e: UPEnd) -> UPEnd:
        raw = self._apply_raw(e)
        if raw is None:
            raise EndOutsideDomain(e)
        consumed, out = raw
        return e.drop(consumed).prepend(out)


# -----------------------------------------------------------------------------
# builders


def identity() -> FiniteMorphism:
    return FiniteMorphism({"": ""})


def empty() -> FiniteMorphism:
    return FiniteMorphism({})


def prepend(u: str) -> FiniteMorphism:
    """x -> u·x on all of A*."""
    return FiniteMorphism({"": u})


def drop_prefix(n: int) -> FiniteMorphism:
    """x1·x2 -> x2 for |x1| = n."""
    return FiniteMorphism({format(i, f"0{n}b") if n else "": "" for i in range(2**n)})


def replace(v: str, u: str) -> FiniteMorphism:
    """The one-rule morphism u·w -> v·w."""
    return FiniteMorphism({u: v})


# -----------------------------------------------------------------------------
# composition and images


def compose(g: FiniteMorphism, f: FiniteMorphism) -> FiniteMorphism:
    """g after f; the table lists the minimal words where both apply."""
    table: dict[str, str] = {}
    for x, y in f.entries:
        key = g.key_prefix_of(y)
        if key is not None:
            table[x] = g.table[key] + y[len(key):]
            continue
        for z, gz in g.entries:
            if z.startswith(y):
                table[x + z[len(y):]] = gz
    return FiniteMorphism(table)


def image_code(f: FiniteMorphism) -> PrefixCode:
    """Prefix code generating the image right ideal."""
    return PrefixCode.make(_image_code_words(f))


def _image_code_words(f: FiniteMorphism) -> list[str]:
    if f.is_empty:
        raise EmptyMorphism()
    vals = llex_sorted(set(f.values))
    out: list[str] = []
    for v in vals:
        if not any(v.startswith(shorter) for shorter in out):
            out.append(v)
    return out


def restrict(f: FiniteMorphism, code) -> FiniteMorphism:
    """Restriction of f to C·A* intersected with its domain."""
    members = code.finite_words() if isinstance(code, PrefixCode) else llex_sorted(code)
    table: dict[str, str] = {}
    for c in members:
        key = f.key_prefix_of(c)
        if key is not None:
            table[c] = f.table[key] + c[len(key):]
        else:
            for k, v in f.entries:
                if k.startswith(c):
                    table[k] = v
    return FiniteMorphism(table)


def table_union(f: FiniteMorphism, g: FiniteMorphism) -> FiniteMorphism:
    """Union of two compatible morphisms (the lattice join on tables)."""
    keys = llex_sorted(set(f.domc) | set(g.domc))
    minimal = [k for k in keys if not any(k != m and k.startswith(m) for m in keys)]
    merged: dict[str, str] = {}
    for m in minimal:
        source = f if f.key_prefix_of(m) is not None else g
        merged[m] = source.eval(m)
    for h in (f, g):
        for k, v in h.entries:
            m = next(m for m in minimal if k.startswith(m))
            if merged[m] + k[len(m):] != v:
                raise ValueError("tables disagree on the common domain")
    return FiniteMorphism(merged)


# -----------------------------------------------------------------------------
# normalisation


def normalize(f: FiniteMorphism) -> tuple[bool, FiniteMorphism]:
    """(is f normal, restriction of f to the preimage of its image code)."""
    imc = set(_image_code_words(f))
    is_normal = set(f.values) == imc
    table = {k: v for k, v in f.entries if v in imc}
    return is_normal, FiniteMorphism(table)


# -----------------------------------------------------------------------------
# inverses


def _preimage_choices(f: FiniteMorphism) -> list[tuple[str, list[str]]]:
    """For each image-code member y, the table-level preimages of y."""
    out = []
    for y in _image_code_words(f):
        candidates = [x + y[len(v):] for x, v in f.entries if y.startswith(v)]
        out.append((y, llex_sorted(candidates)))
    return out


def canonical_inverse(f: FiniteMorphism) -> FiniteMorphism:
    """The injective inverse picking the length-lex least preimages."""
    return FiniteMorphism({y: xs[0] for y, xs in _preimage_choices(f)})


def all_injective_inverses(f: FiniteMorphism, cap: int = 64) -> list[FiniteMorphism]:
    """Inverses with domain exactly Im(f), one preimage choice per member."""
    choices = _preimage_choices(f)
    out = []
    for combo in itertools.product(*(xs for _, xs in choices)):
        out.append(FiniteMorphism({y: x for (y, _), x in zip(choices, combo)}))
        if len(out) >= cap:
            break
    return out


def is_injective(f: FiniteMorphism) -> bool:
    vals = f.values
    if len(set(vals)) != len(vals):
        return False
    ordered = llex_sorted(vals)
    return not any(
        ordered[j].startswith(ordered[i])
        for i in range(len(ordered))
        for j in range(i + 1, len(ordered))
    )


# -----------------------------------------------------------------------------
# maximum extension within the bounded class


def bmax(f: FiniteMorphism) -> FiniteMorphism:
    """Merge sibling entries (x0 -> y0, x1 -> y1) to (x -> y) to the fixed point."""
    table = f.table
    changed = True
    while changed:
        changed = False
        for x0 in sorted(table, key=llex_key):
            if not x0.endswith("0"):
                continue
            x1 = x0[:-1] + "1"
            if x1 not in table:
                continue
            y0, y1 = table[x0], table[x1]
            if y0.endswith("0") and y1.endswith("1") and y0[:-1] == y1[:-1]:
                del table[x0], table[x1]
                table[x0[:-1]] = y0[:-1]
                changed = True
                break
    return FiniteMorphism(table)


def equivalent(f: FiniteMorphism, g: FiniteMorphism) -> bool:
    """Bounded end-equivalence; for finite tables this is bmax equality."""
    return bmax(f).entries == bmax(g).entries


# -----------------------------------------------------------------------------
# Green's order tests


def image_ideal_dfa(f: FiniteMorphism) -> fa.Dfa:
    if f.is_empty:
        return fa.empty_dfa()
    return fa.right_ideal_closure(fa.from_words(set(f.values)))


def leq_r_witness(f: FiniteMorphism, r: FiniteMorphism) -> str | None:
    """A word in Im(f) - Im(r), or None when Im(f) is included in Im(r)."""
    if r.is_empty:
        raise EmptyMorphism()
    diff = fa.combine(image_ideal_dfa(f), image_ideal_dfa(r), BoolOp.DIFF)
    return fa.shortest_accepted(diff)


def leq_r(f: FiniteMorphism, r: FiniteMorphism) -> bool:
    return leq_r_witness(f, r) is None


def leq_l(f: FiniteMorphism, r: FiniteMorphism) -> bool:
    """Tests f = f∘r'∘r with the canonical inverse, up to equivalence on Dom(f)."""
    if r.is_empty:
        raise EmptyMorphism()
    if f.is_empty:
        return True
    h = compose(compose(f, canonical_inverse(r)), r)
    return equivalent(restrict(h, f.domc), f)


# -----------------------------------------------------------------------------
# the group of units


def v_element_defect(f: FiniteMorphism) -> str | None:
    if f.is_empty or not is_injective(f):
        return "NotInjective"
    if not is_maximal(f.domain_code()):
        return "DomainNotMaximal"
    if not is_maximal(image_code(f)):
        return "ImageNotMaximal"
    return None


def is_v_element(f: FiniteMorphism) -> bool:
    return v_element_defect(f) is None


def v_inverse(f: FiniteMorphism) -> FiniteMorphism:
    """Table inverse of a bijection between essential finitely generated ideals."""
    defect = v_element_defect(f)
    if defect is not None:
        raise NotAVElement(defect)
    return FiniteMorphism({v: k for k, v in f.entries})


# -----------------------------------------------------------------------------
# inverse of an equivalent extension


def _is_refinement_restriction(f0: FiniteMorphism, f: FiniteMorphism) -> bool:
    """Every entry of f0 agrees with f on the extended key."""
    for x0, y0 in f0.entries:
        key = f.key_prefix_of(x0)
        if key is None or f.table[key] + x0[len(key):] != y0:
            return False
    return True


def extend_inverse(
    f_prime0: FiniteMorphism, f0: FiniteMorphism, f: FiniteMorphism
) -> FiniteMorphism:
    """Inverse of f built from an inverse of an equivalent restriction f0.

    For each image-code member y of f, pads y with t = 0^q, where q is the
    largest length gap between comparable members of the two image codes, so
    that y·t lands in Im(f0); the inverse value is f_prime0(y·t) with the
    padding stripped.
    """
    if f0.is_empty or f.is_empty:
        raise PreconditionViolated("morphisms must be nonempty")
    if not _is_refinement_restriction(f0, f):
        raise PreconditionViolated("f0 is not a restriction of f")
    if not equivalent(f0, f):
        raise PreconditionViolated("f0 is not equivalent to f")
    if not normalize(f)[0]:
        raise PreconditionViolated("f is not normal")
    imc0 = _image_code_words(f0)
    if not is_injective(f_prime0) or set(f_prime0.domc) != set(imc0):
        raise PreconditionViolated("f_prime0 is not an injective inverse on Im(f0)")
    if compose(compose(f0, f_prime0), f0) != f0:
        raise PreconditionViolated("f_prime0 is not an inverse of f0")
    imc = _image_code_words(f)
    q = 0
    for y0 in imc0:
        for y in imc:
            if y0.startswith(y):
                q = max(q, len(y0) - len(y))
    t = "0" * q
    table = {}
    for y in imc:
        w = f_prime0.eval(y + t)
        table[y] = w[: len(w) - q] if q else w
    f1_prime = FiniteMorphism(table)
    if compose(compose(f, f1_prime), f) != f:
        raise PreconditionViolated("construction did not yield an inverse of f")
    return f1_prime


# -----------------------------------------------------------------------------
# preimages of prefix codes


def preimage(f: FiniteMorphism, p: PrefixCode) -> PrefixCode:
    """The prefix code f^{-1}(P) = {w in Dom(f) : f(w) in P}."""
    pieces = []
    for x, y in f.entries:
        suffix = fa.Dfa(p.dfa.state_after(y), p.dfa.delta, p.dfa.accepting)
        pieces.append(fa.concat_dfas(fa.word_dfa(x), fa.minimize(suffix)))
    lang = fa.empty_dfa()
    for piece in pieces:
        lang = fa.combine(lang, piece, BoolOp.OR)
    return PrefixCode.make(lang)


# -----------------------------------------------------------------------------
# text formats


def format_morphism(f: FiniteMorphism) -> str:
    if f.is_empty:
        return "{ }"
    inner = ", ".join(f"{format_word(k)} -> {format_word(v)}" for k, v in f.entries)
    return "{ " + inner + " }"


def format_morphism_file(f: FiniteMorphism) -> str:
    return "".join(f"{format_word(k)} -> {format_word(v)}\n" for k, v in f.entries)


def parse_morphism_file(text: str) -> FiniteMorphism:
    """One rule per line, `x -> y`, with eps for the empty word and # comments."""
    from .words import parse_word

    table = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        left, arrow, right = line.partition("->")
        if not arrow:
            raise ValueError(f"missing -> in rule: {raw!r}")
        table[parse_word(left.strip())] = parse_word(right.strip())
    return FiniteMorphism(table)
