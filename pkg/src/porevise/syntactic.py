"""Partially ordered belief bases, their two revision operators, and the
line-oriented base file format.

File format::

    atoms a b c d
    phi r1: b -> a
    phi r2: b & c -> !a
    ord r2 < r1          # r2 strictly preferred to r1
    ord r3 = r4

Lines whose first non-blank character is ``#`` are comments, as is anything
after ``  #`` (whitespace then ``#``) on a line.  Labels may themselves
contain ``#`` (``mu#1``), so a ``#`` glued to a label is not a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

from .logic import (
    DEFAULT_MAX_ATOMS,
    Formula,
    LogicError,
    Or,
    Vocabulary,
    format_formula,
    is_tautology,
    parse_formula,
)
from .preorder import PartialPreorder, PreorderError, sort_key
from .semantic import Operator

LABEL_RE = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_#+.\-]*\Z")


class BaseFormatError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None, text: str = ""):
        self.line = line
        self.text = text
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}" + (f" [{text.strip()}]" if text.strip() else ""))


@dataclass(frozen=True)
class BeliefBase:
    """Labelled formulas plus a partial pre-order over the labels.

    Distinct labels may carry the same formula.
    """

    vocab: Vocabulary
    entries: tuple[tuple[str, Formula], ...]
    order: PartialPreorder

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple((l, f) for l, f in self.entries))
        labels = [l for l, _ in self.entries]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate labels in belief base")
        for l in labels:
            if not isinstance(l, str) or not LABEL_RE.match(l):
                raise ValueError(f"invalid label {l!r}")
        if self.order.elements != frozenset(labels):
            raise ValueError("order must range over exactly the base labels")

    @classmethod
    def build(cls, vocab: Vocabulary, entries: Iterable[tuple[str, Formula]],
              strict=(), equal=()) -> "BeliefBase":
        entries = tuple(entries)
        order = PartialPreorder.build([l for l, _ in entries], strict, equal)
        return cls(vocab, entries, order)

    @classmethod
    def empty(cls, vocab: Vocabulary) -> "BeliefBase":
        return cls(vocab, (), PartialPreorder([]))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(l for l, _ in self.entries)

    @property
    def formulas(self) -> tuple[Formula, ...]:
        return tuple(f for _, f in self.entries)

    def formula(self, label: str) -> Formula:
        for l, f in self.entries:
            if l == label:
                return f
        raise KeyError(label)

    def mapping(self) -> dict[str, Formula]:
        return dict(self.entries)

    def __len__(self):
        return len(self.entries)


# --------------------------------------------------------------------------
# Revision

def _fresh_step(base: BeliefBase) -> int:
    # smallest k whose mu label and every disjunction label are unused
    taken = set(base.labels)
    k = 1
    while f"mu#{k}" in taken or any(f"{l}+mu#{k}" in taken for l in base.labels):
        k += 1
    return k


def revise_history_syn(base: BeliefBase, mu: Formula) -> BeliefBase:
    """History-based revision: add ``mu`` above the old base and, above
    ``mu``, a copy ``phi | mu`` of every entry whose disjunction with ``mu``
    is not a tautology, ordered as the originals were."""
    k = _fresh_step(base)
    mu_label = f"mu#{k}"
    old = base.order
    disj = []
    for label, phi in base.entries:
        d = Or(phi, mu)
        if not is_tautology(d, base.vocab):
            disj.append((label, f"{label}+mu#{k}", d))
    copy_of = {orig: new for orig, new, _ in disj}

    strict, equal = [], []
    for i, j in old.strict_class_pairs():
        strict.append((min(old.classes[i], key=sort_key), min(old.classes[j], key=sort_key)))
    for c in old.classes:
        members = sorted(c, key=sort_key)
        equal.extend((members[0], m) for m in members[1:])
    # replicate the full (closed) order among surviving disjunctions
    for a in copy_of:
        for b in copy_of:
            if a != b:
                rel = old.relation(a, b)
                if rel == "<":
                    strict.append((copy_of[a], copy_of[b]))
                elif rel == "=":
                    equal.append((copy_of[a], copy_of[b]))
    for _, new, _ in disj:
        strict.append((new, mu_label))
    for label in base.labels:
        strict.append((mu_label, label))

    entries = base.entries + ((mu_label, mu),) + tuple((new, d) for _, new, d in disj)
    return BeliefBase.build(base.vocab, entries, strict, equal)


def revise_possibilistic_syn(base: BeliefBase, mu: Formula) -> BeliefBase:
    """Possibilistic revision: ``mu`` becomes strictly preferred to every
    entry; the old order is untouched."""
    k = _fresh_step(base)
    mu_label = f"mu#{k}"
    old = base.order
    strict = [(min(old.classes[i], key=sort_key), min(old.classes[j], key=sort_key))
              for i, j in old.strict_class_pairs()]
    equal = []
    for c in old.classes:
        members = sorted(c, key=sort_key)
        equal.extend((members[0], m) for m in members[1:])
    strict.extend((mu_label, label) for label in base.labels)
    entries = base.entries + ((mu_label, mu),)
    return BeliefBase.build(base.vocab, entries, strict, equal)


def revise_syn(base: BeliefBase, mu: Formula, operator) -> BeliefBase:
    if Operator.parse(operator) is Operator.HISTORY:
        return revise_history_syn(base, mu)
    return revise_possibilistic_syn(base, mu)


# --------------------------------------------------------------------------
# File format

def _strip_comment(line: str) -> str:
    if line.lstrip().startswith("#"):
        return ""
    m = re.search(r"\s#", line)
    return line[: m.start()] if m else line


def parse_base(text: str, max_atoms: int = DEFAULT_MAX_ATOMS) -> BeliefBase:
    vocab = None
    entries: list[tuple[str, Formula]] = []
    strict, equal = [], []
    seen_labels = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword == "atoms":
            if vocab is not None:
                raise BaseFormatError("vocabulary declared twice", lineno, raw)
            if entries:
                raise BaseFormatError("'atoms' must precede all entries", lineno, raw)
            try:
                vocab = Vocabulary(tuple(rest.split()), max_atoms=max_atoms)
            except LogicError as e:
                raise BaseFormatError(str(e), lineno, raw) from None
        elif keyword == "phi":
            if vocab is None:
                raise BaseFormatError("'atoms' line required before entries", lineno, raw)
            label, sep, ftext = rest.partition(":")
            label = label.strip()
            if not sep or not LABEL_RE.match(label):
                raise BaseFormatError("expected 'phi <label>: <formula>'", lineno, raw)
            if label in seen_labels:
                raise BaseFormatError(f"duplicate label {label!r}", lineno, raw)
            try:
                phi = parse_formula(ftext, vocab)
            except LogicError as e:
                raise BaseFormatError(str(e), lineno, raw) from None
            seen_labels.add(label)
            entries.append((label, phi))
        elif keyword == "ord":
            m = re.fullmatch(r"(\S+)\s*([<=])\s*(\S+)", rest)
            if not m:
                raise BaseFormatError("expected 'ord <label> < <label>' or 'ord <label> = <label>'",
                                      lineno, raw)
            x, rel, y = m.groups()
            for l in (x, y):
                if l not in seen_labels:
                    raise BaseFormatError(f"unknown label {l!r}", lineno, raw)
            (strict if rel == "<" else equal).append((x, y))
        else:
            raise BaseFormatError(f"unknown directive {keyword!r}", lineno, raw)
    if vocab is None:
        vocab = Vocabulary(())
    try:
        return BeliefBase.build(vocab, entries, strict, equal)
    except PreorderError as e:
        raise BaseFormatError(str(e)) from None


def format_base(base: BeliefBase) -> str:
    lines = ["atoms " + " ".join(base.vocab.atoms) if base.vocab.atoms else "atoms"]
    for label, phi in base.entries:
        lines.append(f"phi {label}: {format_formula(phi)}")
    order = base.order
    reps = [min(c, key=sort_key) for c in order.classes]
    for c, rep in zip(order.classes, reps):
        for m in sorted(c, key=sort_key):
            if m != rep:
                lines.append(f"ord {rep} = {m}")
    for i, j in order.covering_pairs():
        lines.append(f"ord {reps[i]} < {reps[j]}")
    return "\n".join(lines) + "\n"


def load_base(path, max_atoms: int = DEFAULT_MAX_ATOMS) -> BeliefBase:
    return parse_base(Path(path).read_text(), max_atoms=max_atoms)


def save_base(base: BeliefBase, path) -> None:
    Path(path).write_text(format_base(base))
