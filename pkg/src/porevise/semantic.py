"""Epistemic states as partial pre-orders over interpretations, and the two
semantic revision operators."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .logic import Formula, Vocabulary, formula_of_models, model_mask, mask_to_set
from .preorder import PartialPreorder


class Operator(str, enum.Enum):
    HISTORY = "history"
    POSSIBILISTIC = "possibilistic"

    @classmethod
    def parse(cls, value) -> "Operator":
        if isinstance(value, Operator):
            return value
        v = str(value).lower()
        if v in ("history", "hist", "h"):
            return cls.HISTORY
        if v in ("possibilistic", "poss", "p", "pi"):
            return cls.POSSIBILISTIC
        raise ValueError(f"unknown revision operator {value!r}")


@dataclass(frozen=True)
class EpistemicState:
    vocab: Vocabulary
    order: PartialPreorder

    def __post_init__(self):
        if self.order.elements != frozenset(self.vocab.all_interpretations):
            raise ValueError(
                f"order must range over exactly the {self.vocab.num_interpretations} interpretations"
            )

    @classmethod
    def ignorant(cls, vocab: Vocabulary) -> "EpistemicState":
        """Every interpretation equally plausible."""
        return cls(vocab, PartialPreorder([list(vocab.all_interpretations)]))

    @classmethod
    def from_constraints(cls, vocab: Vocabulary, strict_pairs=(), equal_pairs=()) -> "EpistemicState":
        return cls(vocab, PartialPreorder.build(vocab.all_interpretations, strict_pairs, equal_pairs))


def beliefs_sem(state: EpistemicState) -> frozenset[int]:
    return state.order.min_elements()


def belief_formula_sem(state: EpistemicState) -> Formula:
    return formula_of_models(beliefs_sem(state), state.vocab)


def conditional_beliefs(state: EpistemicState, mu: Formula) -> frozenset[int]:
    """Most plausible models of ``mu`` under the unrevised order."""
    return state.order.min_elements(mask_to_set(model_mask(mu, state.vocab)))


def _split(state: EpistemicState, mu: Formula):
    # each class splits into its models part and counter-models part
    mod = mask_to_set(model_mask(mu, state.vocab))
    order = state.order
    inside, outside = [], []
    for c in order.classes:
        inside.append(sorted(c & mod))
        outside.append(sorted(c - mod))
    return order, inside, outside


def _chain(members: Sequence[int]) -> list[tuple[int, int]]:
    return [(members[0], m) for m in members[1:]]


def _preserve(order: PartialPreorder, parts: list[list[int]]):
    strict, equal = [], []
    for part in parts:
        if part:
            equal.extend(_chain(part))
    for i, j in order.strict_class_pairs():
        if parts[i] and parts[j]:
            strict.append((parts[i][0], parts[j][0]))
    return strict, equal


def _models_first(inside, outside):
    reps_in = [p[0] for p in inside if p]
    reps_out = [p[0] for p in outside if p]
    return [(x, y) for x in reps_in for y in reps_out]


def revise_history_sem(state: EpistemicState, mu: Formula) -> EpistemicState:
    """Keep the order among models and among counter-models of ``mu``; put
    every model strictly below every counter-model."""
    order, inside, outside = _split(state, mu)
    s1, e1 = _preserve(order, inside)
    s2, e2 = _preserve(order, outside)
    strict = s1 + s2 + _models_first(inside, outside)
    new = PartialPreorder.build(state.vocab.all_interpretations, strict, e1 + e2)
    new.check_invariants()
    return EpistemicState(state.vocab, new)


def revise_possibilistic_sem(state: EpistemicState, mu: Formula) -> EpistemicState:
    """Keep the order among models of ``mu``; collapse all counter-models into
    one class below which every model sits."""
    order, inside, outside = _split(state, mu)
    s1, e1 = _preserve(order, inside)
    counter = sorted(x for part in outside for x in part)
    e2 = _chain(counter) if counter else []
    outside_merged = [counter[:1]] if counter else []
    strict = s1 + _models_first(inside, outside_merged)
    new = PartialPreorder.build(state.vocab.all_interpretations, strict, e1 + e2)
    new.check_invariants()
    return EpistemicState(state.vocab, new)


def revise_sem(state: EpistemicState, mu: Formula, operator) -> EpistemicState:
    if Operator.parse(operator) is Operator.HISTORY:
        return revise_history_sem(state, mu)
    return revise_possibilistic_sem(state, mu)


def apply_sequence(state: EpistemicState, formulas: Iterable[Formula], operator) -> EpistemicState:
    for mu in formulas:
        state = revise_sem(state, mu, operator)
    return state


def totalizing_sequence(state: EpistemicState, operator) -> list[Formula]:
    """A sequence of inputs that, applied in order with ``operator``, leaves a
    total pre-order.

    Built from the deterministic linear extension ``w1, ..., wm`` of the
    order: possibilistic revision needs only the single term of ``w1``;
    history revision pushes the prefixes of length m-1, m-2, ..., 1 in turn.
    """
    operator = Operator.parse(operator)
    if state.order.is_total():
        return []
    ext = state.order.linear_extension()
    vocab = state.vocab
    if operator is Operator.POSSIBILISTIC:
        seq = [formula_of_models(ext[:1], vocab)]
    else:
        seq = [formula_of_models(ext[:k], vocab) for k in range(len(ext) - 1, 0, -1)]
    if not apply_sequence(state, seq, operator).order.is_total():
        raise RuntimeError("totalizing sequence failed to produce a total pre-order")
    return seq
