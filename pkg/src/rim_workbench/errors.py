"""Exception types shared across the workbench."""

from __future__ import annotations


def _w(word: str) -> str:
    return word if word else "eps"


class RimError(Exception):
    """Base class for all workbench errors."""


class NotPrefixFree(RimError):
    """Two members of a would-be prefix code are prefix-comparable."""

    def __init__(self, shorter: str, longer: str):
        self.shorter = shorter
        self.longer = longer
        super().__init__(f"not prefix-free: {_w(shorter)} is a prefix of {_w(longer)}")


class EmptyCode(RimError):
    def __init__(self, message: str = "operation undefined on the empty prefix code"):
        super().__init__(message)


class NotARightIdeal(RimError):
    """Witness pair: word is in the language but word+letter is not."""

    def __init__(self, word: str, extension: str):
        self.word = word
        self.extension = extension
        super().__init__(
            f"not a right ideal: {_w(word)} is in the language but {_w(extension)} is not"
        )


class OutsideDomain(RimError):
    def __init__(self, word: str):
        self.word = word
        super().__init__(f"word outside domain: {_w(word)}")


class EmptyMorphism(RimError):
    def __init__(self, message: str = "operation undefined on the empty morphism"):
        super().__init__(message)


class NotAMember(RimError):
    def __init__(self, word: str):
        self.word = word
        super().__init__(f"not a member of the code: {_w(word)}")


class IndexOutOfRange(RimError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"rank {index} exceeds the size of the code")


class UnsupportedRepresentation(RimError):
    pass


class EndNotInEnds(RimError):
    def __init__(self, end):
        self.end = end
        super().__init__(f"end {end} does not pass through the code")


class EndOutsideDomain(RimError):
    def __init__(self, end):
        self.end = end
        super().__init__(f"end {end} outside the domain of the morphism")


class NotAVElement(RimError):
    """Reason is one of NotInjective, DomainNotMaximal, ImageNotMaximal."""

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"not a group-of-units element: {reason}")


class PreconditionViolated(RimError):
    def __init__(self, which: str):
        self.which = which
        super().__init__(f"precondition violated: {which}")


class CodeNotInfinite(RimError):
    def __init__(self, which: str):
        self.which = which
        super().__init__(f"code is not infinite: {which}")


class NondeterministicTransition(RimError):
    def __init__(self, state, letter: str):
        self.state = state
        self.letter = letter
        super().__init__(f"two transitions from state {state} on letter {letter}")


class FinalStateHasOutgoing(RimError):
    def __init__(self, state):
        self.state = state
        super().__init__(f"final state {state} has an outgoing transition")


class CompositionBlowup(RimError):
    def __init__(self, bound: int):
        self.bound = bound
        super().__init__(f"composition exceeds the state bound {bound}")


class NotASubIdeal(RimError):
    def __init__(self, witness: str):
        self.witness = witness
        super().__init__(f"not a sub-ideal of the domain, witness {_w(witness)}")


class RegexSyntaxError(RimError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at position {position})")


class ParseError(RimError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")
