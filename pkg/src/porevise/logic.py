"""Propositional formulas over a declared vocabulary.

Interpretations are integers in ``[0, 2**n)``.  The first declared atom is
the most significant bit, so over ``(a, b, c, d)`` index 14 is
``{a, b, c, ~d}``.  Every semantic question is answered by enumerating all
interpretations; model sets are computed as Python-int bitmasks.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from typing import Iterable, Union

DEFAULT_MAX_ATOMS = 16

_ATOM_RE = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")


class LogicError(ValueError):
    pass


class FormulaSyntaxError(LogicError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class UnknownAtomError(LogicError):
    def __init__(self, atom: str):
        self.atom = atom
        super().__init__(f"unknown atom {atom!r}")


class VocabularyError(LogicError):
    pass


@dataclass(frozen=True)
class Vocabulary:
    atoms: tuple[str, ...]
    max_atoms: int = field(default=DEFAULT_MAX_ATOMS, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        seen = set()
        for a in self.atoms:
            if not isinstance(a, str) or not _ATOM_RE.match(a) or a in ("true", "false"):
                raise VocabularyError(f"invalid atom name {a!r}")
            if a in seen:
                raise VocabularyError(f"duplicate atom {a!r}")
            seen.add(a)
        if len(self.atoms) > self.max_atoms:
            raise VocabularyError(
                f"{len(self.atoms)} atoms exceeds the limit of {self.max_atoms}"
            )

    @property
    def size(self) -> int:
        return len(self.atoms)

    @property
    def num_interpretations(self) -> int:
        return 1 << len(self.atoms)

    @property
    def all_interpretations(self) -> range:
        return range(1 << len(self.atoms))

    def index(self, atom: str) -> int:
        try:
            return self.atoms.index(atom)
        except ValueError:
            raise UnknownAtomError(atom) from None

    def __contains__(self, atom) -> bool:
        return atom in self.atoms

    def __len__(self) -> int:
        return len(self.atoms)


# --------------------------------------------------------------------------
# AST

class _Node:
    __slots__ = ()

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Const(_Node):
    value: bool


@dataclass(frozen=True)
class Atom(_Node):
    name: str


@dataclass(frozen=True)
class Not(_Node):
    arg: "Formula"


@dataclass(frozen=True)
class And(_Node):
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or(_Node):
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies(_Node):
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff(_Node):
    left: "Formula"
    right: "Formula"


Formula = Union[Const, Atom, Not, And, Or, Implies, Iff]

TRUE = Const(True)
FALSE = Const(False)

_BINARY = {And: "&", Or: "|", Implies: "->", Iff: "<->"}
_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4, Not: 5, Atom: 6, Const: 6}
_RIGHT_ASSOC = (Implies, Iff)


def atoms_of(phi: Formula) -> frozenset[str]:
    if isinstance(phi, Atom):
        return frozenset([phi.name])
    if isinstance(phi, Const):
        return frozenset()
    if isinstance(phi, Not):
        return atoms_of(phi.arg)
    return atoms_of(phi.left) | atoms_of(phi.right)


def format_formula(phi: Formula) -> str:
    """Render ``phi`` in the input grammar with the fewest parentheses that
    parse back to the identical tree."""
    if isinstance(phi, Const):
        return "true" if phi.value else "false"
    if isinstance(phi, Atom):
        return phi.name
    if isinstance(phi, Not):
        inner = format_formula(phi.arg)
        if _PREC[type(phi.arg)] < _PREC[Not]:
            inner = f"({inner})"
        return "!" + inner
    op = type(phi)
    p = _PREC[op]
    left, right = format_formula(phi.left), format_formula(phi.right)
    lp, rp = _PREC[type(phi.left)], _PREC[type(phi.right)]
    if op in _RIGHT_ASSOC:
        left_paren, right_paren = lp <= p, rp < p
    else:
        left_paren, right_paren = lp < p, rp <= p
    if left_paren:
        left = f"({left})"
    if right_paren:
        right = f"({right})"
    return f"{left} {_BINARY[op]} {right}"


def conjoin(formulas: Iterable[Formula]) -> Formula:
    formulas = list(formulas)
    if not formulas:
        return TRUE
    return reduce(And, formulas)


def disjoin(formulas: Iterable[Formula]) -> Formula:
    formulas = list(formulas)
    if not formulas:
        return FALSE
    return reduce(Or, formulas)


# --------------------------------------------------------------------------
# Parsing

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<op><->|->|[!&|()])|(?P<word>[A-Za-z_][A-Za-z0-9_]*))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise FormulaSyntaxError(f"unexpected character {text[start]!r}", start, text)
        kind = "op" if m.group("op") else "word"
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, vocab: Vocabulary):
        self.text = text
        self.vocab = vocab
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str):
        _, value, pos = self.peek()
        shown = repr(value) if value else "end of input"
        raise FormulaSyntaxError(f"{message}, found {shown}", pos, self.text)

    def parse(self) -> Formula:
        phi = self.iff()
        if self.peek()[0] != "end":
            self.error("expected operator or end of input")
        return phi

    def iff(self) -> Formula:
        left = self.implies()
        if self.peek()[1] == "<->":
            self.take()
            return Iff(left, self.iff())
        return left

    def implies(self) -> Formula:
        left = self.disjunction()
        if self.peek()[1] == "->":
            self.take()
            return Implies(left, self.implies())
        return left

    def disjunction(self) -> Formula:
        phi = self.conjunction()
        while self.peek()[1] == "|":
            self.take()
            phi = Or(phi, self.conjunction())
        return phi

    def conjunction(self) -> Formula:
        phi = self.unary()
        while self.peek()[1] == "&":
            self.take()
            phi = And(phi, self.unary())
        return phi

    def unary(self) -> Formula:
        kind, value, pos = self.peek()
        if value == "!" and kind == "op":
            self.take()
            return Not(self.unary())
        if value == "(" and kind == "op":
            self.take()
            phi = self.iff()
            if self.peek()[1] != ")":
                self.error("expected ')'")
            self.take()
            return phi
        if kind == "word":
            self.take()
            if value == "true":
                return TRUE
            if value == "false":
                return FALSE
            if not _ATOM_RE.match(value):
                raise FormulaSyntaxError(f"invalid atom name {value!r}", pos, self.text)
            if value not in self.vocab:
                raise UnknownAtomError(value)
            return Atom(value)
        self.error("expected atom, constant, '!' or '('")


def parse_formula(text: str, vocab: Vocabulary) -> Formula:
    """Parse ``text`` against ``vocab``.

    Precedence from tightest: ``!``, ``&``, ``|``, ``->``, ``<->``; the two
    arrows associate to the right, ``&`` and ``|`` to the left.
    """
    if not text or not text.strip():
        raise FormulaSyntaxError("empty formula", 0, text)
    return _Parser(text, vocab).parse()


# --------------------------------------------------------------------------
# Semantics

def evaluate(phi: Formula, w: int, vocab: Vocabulary) -> bool:
    """Truth value of ``phi`` at interpretation index ``w``."""
    if isinstance(phi, Const):
        return phi.value
    if isinstance(phi, Atom):
        return bool((w >> (vocab.size - 1 - vocab.index(phi.name))) & 1)
    if isinstance(phi, Not):
        return not evaluate(phi.arg, w, vocab)
    left = evaluate(phi.left, w, vocab)
    right = evaluate(phi.right, w, vocab)
    if isinstance(phi, And):
        return left and right
    if isinstance(phi, Or):
        return left or right
    if isinstance(phi, Implies):
        return (not left) or right
    return left == right


@lru_cache(maxsize=64)
def _atom_masks(atoms: tuple[str, ...]) -> tuple[int, ...]:
    n = len(atoms)
    masks = []
    for i in range(n):
        bit = n - 1 - i
        m = 0
        for w in range(1 << n):
            if (w >> bit) & 1:
                m |= 1 << w
        masks.append(m)
    return tuple(masks)


def full_mask(vocab: Vocabulary) -> int:
    return (1 << vocab.num_interpretations) - 1


@lru_cache(maxsize=4096)
def model_mask(phi: Formula, vocab: Vocabulary) -> int:
    """Models of ``phi`` as a bitmask: bit ``w`` set iff ``w`` satisfies ``phi``."""
    full = full_mask(vocab)
    if isinstance(phi, Const):
        return full if phi.value else 0
    if isinstance(phi, Atom):
        return _atom_masks(vocab.atoms)[vocab.index(phi.name)]
    if isinstance(phi, Not):
        return full ^ model_mask(phi.arg, vocab)
    left = model_mask(phi.left, vocab)
    right = model_mask(phi.right, vocab)
    if isinstance(phi, And):
        return left & right
    if isinstance(phi, Or):
        return left | right
    if isinstance(phi, Implies):
        return (full ^ left) | right
    return full ^ (left ^ right)


def mask_to_set(mask: int) -> frozenset[int]:
    out = []
    w = 0
    while mask:
        if mask & 1:
            out.append(w)
        mask >>= 1
        w += 1
    return frozenset(out)


def set_to_mask(interpretations: Iterable[int]) -> int:
    m = 0
    for w in interpretations:
        m |= 1 << w
    return m


def models(phi: Formula, vocab: Vocabulary) -> frozenset[int]:
    return mask_to_set(model_mask(phi, vocab))


def is_tautology(phi: Formula, vocab: Vocabulary) -> bool:
    return model_mask(phi, vocab) == full_mask(vocab)


def is_satisfiable(phi: Formula, vocab: Vocabulary) -> bool:
    return model_mask(phi, vocab) != 0


def is_consistent(formulas: Iterable[Formula], vocab: Vocabulary) -> bool:
    """True iff the formulas have a common model; the empty set is consistent."""
    m = full_mask(vocab)
    for phi in formulas:
        m &= model_mask(phi, vocab)
        if not m:
            return False
    return True


def entails(premise: Formula, conclusion: Formula, vocab: Vocabulary) -> bool:
    return model_mask(premise, vocab) & ~model_mask(conclusion, vocab) == 0


def equivalent(phi: Formula, psi: Formula, vocab: Vocabulary) -> bool:
    return model_mask(phi, vocab) == model_mask(psi, vocab)


def term_of(w: int, vocab: Vocabulary) -> Formula:
    """The full conjunctive term true exactly at ``w``."""
    lits = []
    for i, a in enumerate(vocab.atoms):
        lit = Atom(a)
        if not (w >> (vocab.size - 1 - i)) & 1:
            lit = Not(lit)
        lits.append(lit)
    return conjoin(lits)


def formula_of_models(interpretations: Iterable[int], vocab: Vocabulary) -> Formula:
    ws = sorted(set(interpretations))
    for w in ws:
        if not 0 <= w < vocab.num_interpretations:
            raise VocabularyError(f"interpretation {w} out of range for {vocab.size} atoms")
    return disjoin(term_of(w, vocab) for w in ws)


def literals(w: int, vocab: Vocabulary) -> tuple[str, ...]:
    """``w`` as signed literals in declaration order, e.g. ``('!a', 'b')``."""
    return tuple(
        a if (w >> (vocab.size - 1 - i)) & 1 else "!" + a
        for i, a in enumerate(vocab.atoms)
    )
