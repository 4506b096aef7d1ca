"""From belief bases to epistemic states and belief sets.

``we_map`` ranks each interpretation by the most preferred entries it
falsifies.  The syntactic belief set is the disjunction of the preferred
consistent subsets, where a subset is better when the best entries it
leaves out are worse.  ``check_commutation`` and
``check_belief_equivalence`` compute both routes around the
syntax/semantics square and compare them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .logic import Formula, Not, conjoin, disjoin, full_mask, mask_to_set, model_mask
from .preorder import Mode, PartialPreorder, sort_key
from .semantic import EpistemicState, Operator, beliefs_sem, revise_sem
from .syntactic import BeliefBase, revise_syn

DEFAULT_MAX_FORMULAS = 20


class GuardExceeded(ValueError):
    pass


@dataclass(frozen=True)
class FalsifiedCore:
    interpretation: int
    labels: frozenset[str]


@dataclass(frozen=True)
class SubsetRecord:
    subset: frozenset[str]
    complement_min: frozenset[str]


def _masks(base: BeliefBase) -> list[int]:
    return [model_mask(phi, base.vocab) for phi in base.formulas]


def falsified_core(base: BeliefBase, w: int) -> FalsifiedCore:
    falsified = [l for (l, _), m in zip(base.entries, _masks(base)) if not (m >> w) & 1]
    return FalsifiedCore(w, base.order.min_elements(falsified))


def falsified_cores(base: BeliefBase) -> dict[int, frozenset[str]]:
    masks = _masks(base)
    out = {}
    for w in base.vocab.all_interpretations:
        falsified = [l for (l, _), m in zip(base.entries, masks) if not (m >> w) & 1]
        out[w] = base.order.min_elements(falsified)
    return out


def we_map(base: BeliefBase, mode=Mode.WEAK) -> EpistemicState:
    """Epistemic state induced by ``base``: ``w <= w'`` iff the core of
    ``w'`` is lifted-below-or-equal the core of ``w``."""
    mode = Mode.parse(mode)
    order = base.order
    groups: dict[frozenset[int], list[int]] = {}
    for w, core in falsified_cores(base).items():
        groups.setdefault(order.min_class_signature(core), []).append(w)
    keys = list(groups)

    def leq(k1, k2):
        return k1 == k2 or order.class_strictly_preferred(k2, k1, mode)

    sig_order = PartialPreorder.from_leq(range(len(keys)), lambda i, j: leq(keys[i], keys[j]))
    state_order = sig_order.expand({i: groups[k] for i, k in enumerate(keys)})
    state_order.check_invariants()
    return EpistemicState(base.vocab, state_order)


def _check_guard(base: BeliefBase, max_formulas: int):
    if len(base) > max_formulas:
        raise GuardExceeded(
            f"{len(base)} formulas exceeds the subset-enumeration limit of {max_formulas}"
        )


def consistent_subsets(base: BeliefBase, max_formulas: int = DEFAULT_MAX_FORMULAS) -> list[SubsetRecord]:
    """Every jointly satisfiable subset of entries (the empty one included),
    sorted by size and then by sorted label tuple."""
    _check_guard(base, max_formulas)
    labels = base.labels
    masks = _masks(base)
    full = full_mask(base.vocab)
    n = len(labels)
    # mask of each subset from the subset without its lowest bit
    conj = [full] * (1 << n)
    records = []
    for s in range(1 << n):
        if s:
            low = s & -s
            conj[s] = conj[s ^ low] & masks[low.bit_length() - 1]
        if conj[s]:
            inside = frozenset(labels[i] for i in range(n) if (s >> i) & 1)
            outside = [labels[i] for i in range(n) if not (s >> i) & 1]
            records.append(SubsetRecord(inside, base.order.min_elements(outside)))
    records.sort(key=lambda r: (len(r.subset), sorted(r.subset, key=sort_key)))
    return records


def subset_order(base: BeliefBase, mode=Mode.WEAK, records=None,
                 max_formulas: int = DEFAULT_MAX_FORMULAS) -> PartialPreorder:
    """Pre-order on consistent subsets, elements being indices into
    ``records``: ``C <= C'`` iff complement(C') is lifted-below-or-equal
    complement(C)."""
    mode = Mode.parse(mode)
    if records is None:
        records = consistent_subsets(base, max_formulas)
    order = base.order
    groups: dict[frozenset[int], list[int]] = {}
    for idx, rec in enumerate(records):
        groups.setdefault(order.min_class_signature(rec.complement_min), []).append(idx)
    keys = list(groups)

    def leq(k1, k2):
        return k1 == k2 or order.class_strictly_preferred(k2, k1, mode)

    sig_order = PartialPreorder.from_leq(range(len(keys)), lambda i, j: leq(keys[i], keys[j]))
    return sig_order.expand({i: groups[k] for i, k in enumerate(keys)})


def preferred_consistent_subsets(base: BeliefBase, mode=Mode.WEAK,
                                 max_formulas: int = DEFAULT_MAX_FORMULAS) -> list[frozenset[str]]:
    records = consistent_subsets(base, max_formulas)
    keep = subset_order(base, mode, records).min_elements()
    return [records[i].subset for i in sorted(keep)]


def beliefs_syn(base: BeliefBase, mode=Mode.WEAK,
                max_formulas: int = DEFAULT_MAX_FORMULAS) -> tuple[Formula, frozenset[int]]:
    """Disjunction of the preferred consistent subsets (each read as a
    conjunction), with its models."""
    preferred = preferred_consistent_subsets(base, mode, max_formulas)
    if not preferred:
        raise RuntimeError("no preferred consistent subset; the empty subset should always qualify")
    table = base.mapping()
    terms = []
    mask = 0
    for subset in preferred:
        labels = [l for l in base.labels if l in subset]
        terms.append(conjoin(table[l] for l in labels))
        m = full_mask(base.vocab)
        for l in labels:
            m &= model_mask(table[l], base.vocab)
        mask |= m
    return disjoin(terms), mask_to_set(mask)


def infers(base: BeliefBase, phi: Formula, mode=Mode.WEAK,
           max_formulas: int = DEFAULT_MAX_FORMULAS) -> bool:
    """``phi`` follows iff adding its negation to any preferred consistent
    subset yields an inconsistent set."""
    table = base.mapping()
    neg = model_mask(Not(phi), base.vocab)
    for subset in preferred_consistent_subsets(base, mode, max_formulas):
        m = neg
        for l in subset:
            m &= model_mask(table[l], base.vocab)
        if m:
            return False
    return True


# --------------------------------------------------------------------------
# Commutation and belief-equivalence checkers

@dataclass
class CheckReport:
    check: str
    verdict: bool
    operator: str
    mode: str
    witness: Optional[dict] = None
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {
            "check": self.check,
            "verdict": "pass" if self.verdict else "fail",
            "operator": self.operator,
            "mode": self.mode,
            "witness": self.witness,
        }
        d.update(self.details)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def first_difference(left: PartialPreorder, right: PartialPreorder) -> Optional[dict]:
    """First pair (in sorted order) on which two orders over the same carrier
    disagree, or ``None``."""
    if left.elements != right.elements:
        return {"carrier_left": sorted(left.elements, key=sort_key),
                "carrier_right": sorted(right.elements, key=sort_key)}
    elems = sorted(left.elements, key=sort_key)
    for i, x in enumerate(elems):
        for y in elems[i + 1:]:
            a, b = left.relation(x, y), right.relation(x, y)
            if a != b:
                return {"pair": [x, y], "left": a, "right": b}
    return None


def check_commutation(base: BeliefBase, mu: Formula, operator, mode=Mode.WEAK) -> CheckReport:
    """Revise-then-map against map-then-revise."""
    operator, mode = Operator.parse(operator), Mode.parse(mode)
    left = we_map(revise_syn(base, mu, operator), mode).order
    right = revise_sem(we_map(base, mode), mu, operator).order
    ok = left == right
    return CheckReport("commutation", ok, operator.value, mode.value,
                       None if ok else first_difference(left, right))


def check_belief_equivalence(base: BeliefBase, mu: Formula, operator, mode=Mode.WEAK,
                             max_formulas: int = DEFAULT_MAX_FORMULAS) -> CheckReport:
    """Syntactic beliefs of the revised base against semantic beliefs of the
    revised mapped state."""
    operator, mode = Operator.parse(operator), Mode.parse(mode)
    _, syn_models = beliefs_syn(revise_syn(base, mu, operator), mode, max_formulas)
    sem_models = beliefs_sem(revise_sem(we_map(base, mode), mu, operator))
    ok = syn_models == sem_models
    witness = None
    if not ok:
        witness = {"syntactic_only": sorted(syn_models - sem_models),
                   "semantic_only": sorted(sem_models - syn_models)}
    return CheckReport("belief_equivalence", ok, operator.value, mode.value, witness,
                       {"models": sorted(sem_models)})
