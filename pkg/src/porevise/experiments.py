"""Random corpora and the randomized harnesses behind ``porevise check``.

Everything is driven by an explicit ``random.Random`` so a seed reproduces a
run exactly.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .bridge import (
    beliefs_syn,
    check_belief_equivalence,
    check_commutation,
    infers,
    we_map,
)
from .logic import (
    FALSE,
    TRUE,
    And,
    Atom,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Vocabulary,
    mask_to_set,
    model_mask,
)
from .preorder import Mode, PartialPreorder
from .semantic import (
    EpistemicState,
    Operator,
    apply_sequence,
    beliefs_sem,
    conditional_beliefs,
    revise_sem,
    totalizing_sequence,
)
from .syntactic import BeliefBase, parse_base

TOBACCO_BASE = """\
# three expert rules for cultivating tobacco on a plot
# a: cultivation feasible, b: condition 1, c: condition 2 (mildew), d: condition 3
atoms a b c d
phi r1: b -> a
phi r2: b & c -> !a
phi r3: d -> a
ord r2 < r1
"""

ATOM_POOL = ("p", "q", "r", "s", "t", "u")


def tobacco_base() -> BeliefBase:
    return parse_base(TOBACCO_BASE)


# --------------------------------------------------------------------------
# generators

def random_vocab(rng: random.Random, max_atoms: int = 3, min_atoms: int = 1) -> Vocabulary:
    return Vocabulary(ATOM_POOL[: rng.randint(min_atoms, max_atoms)])


def random_formula(rng: random.Random, vocab: Vocabulary, depth: int = 3) -> Formula:
    if depth <= 0 or rng.random() < 0.3:
        if not vocab.atoms or rng.random() < 0.05:
            return rng.choice((TRUE, FALSE))
        return Atom(rng.choice(vocab.atoms))
    kind = rng.choice(("not", "and", "or", "imp", "iff", "and", "or"))
    if kind == "not":
        return Not(random_formula(rng, vocab, depth - 1))
    ctor = {"and": And, "or": Or, "imp": Implies, "iff": Iff}[kind]
    return ctor(random_formula(rng, vocab, depth - 1), random_formula(rng, vocab, depth - 1))


def random_satisfiable(rng: random.Random, vocab: Vocabulary, depth: int = 3) -> Formula:
    while True:
        phi = random_formula(rng, vocab, depth)
        if model_mask(phi, vocab):
            return phi


def random_preorder(rng: random.Random, elements, p_equal: float = 0.2,
                    p_strict: float = 0.35) -> PartialPreorder:
    """Random partition into classes, then random strict edges that respect
    a random topological order of the classes."""
    elements = list(elements)
    rng.shuffle(elements)
    classes = []
    for x in elements:
        if classes and rng.random() < p_equal:
            rng.choice(classes).append(x)
        else:
            classes.append([x])
    strict = [(i, j) for i in range(len(classes)) for j in range(i + 1, len(classes))
              if rng.random() < p_strict]
    return PartialPreorder(classes, strict)


def random_base(rng: random.Random, max_atoms: int = 3, max_formulas: int = 4,
                vocab: Vocabulary | None = None) -> BeliefBase:
    vocab = vocab or random_vocab(rng, max_atoms)
    n = rng.randint(0, max_formulas)
    entries = [(f"f{i + 1}", random_formula(rng, vocab, rng.randint(0, 3))) for i in range(n)]
    order = random_preorder(rng, [l for l, _ in entries])
    return BeliefBase(vocab, tuple(entries), order)


def random_state(rng: random.Random, vocab: Vocabulary) -> EpistemicState:
    return EpistemicState(vocab, random_preorder(rng, vocab.all_interpretations))


def random_subset(rng: random.Random, elements) -> frozenset:
    return frozenset(x for x in elements if rng.random() < 0.5)


# --------------------------------------------------------------------------
# harness

@dataclass
class CheckSummary:
    name: str
    trials: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "check": self.name,
            "verdict": "pass" if self.passed else "fail",
            "trials": self.trials,
            "failures": len(self.failures),
            "first_failure": self.failures[0] if self.failures else None,
            "seconds": round(self.seconds, 3),
        }


def _timed(summary: CheckSummary, start: float) -> CheckSummary:
    summary.seconds = time.perf_counter() - start
    return summary


COMBINATIONS = [(op, mode) for op in Operator for mode in Mode]


def theorem_trials(theorem: str, trials: int, seed: int, max_atoms: int = 3,
                   max_formulas: int = 4) -> list[CheckSummary]:
    """One summary per (operator, mode) combination, each over ``trials``
    random (base, mu) instances plus the tobacco instance with ``mu = d``."""
    check = {"theorem1": check_commutation, "theorem2": check_belief_equivalence}[theorem]
    out = []
    tobacco = tobacco_base()
    d = Atom("d")
    for op, mode in COMBINATIONS:
        rng = random.Random(f"{seed}:{theorem}:{op.value}:{mode.value}")
        summary = CheckSummary(f"{theorem}/{op.value}/{mode.value}")
        start = time.perf_counter()
        instances = [(tobacco, d)]
        for _ in range(trials):
            base = random_base(rng, max_atoms, max_formulas)
            instances.append((base, random_formula(rng, base.vocab)))
        for base, mu in instances:
            report = check(base, mu, op, mode)
            summary.trials += 1
            if not report.verdict:
                summary.failures.append({"base": _describe(base), "mu": str(mu),
                                         "witness": report.witness})
        out.append(_timed(summary, start))
    return out


def _describe(base: BeliefBase) -> dict:
    return {
        "atoms": list(base.vocab.atoms),
        "entries": {l: str(f) for l, f in base.entries},
        "order": repr(base.order),
    }


def property_trials(trials: int, seed: int, max_atoms: int = 3) -> list[CheckSummary]:
    rng = random.Random(f"{seed}:properties")
    out = []

    # strong preference implies weak; plus the converse-failure witness
    s = CheckSummary("strong_implies_weak")
    start = time.perf_counter()
    witness = PartialPreorder.build(["x1", "x2", "y1", "y2"], [("x1", "y1"), ("x2", "y2")])
    xs, ys = {"x1", "x2"}, {"y1", "y2"}
    if not (witness.strictly_preferred(xs, ys, Mode.WEAK)
            and not witness.strictly_preferred(xs, ys, Mode.STRONG)):
        s.failures.append("converse-failure witness did not separate the modes")
    for _ in range(trials):
        order = random_preorder(rng, range(rng.randint(1, 8)))
        x, y = random_subset(rng, order.elements), random_subset(rng, order.elements)
        s.trials += 1
        if order.strictly_preferred(x, y, Mode.STRONG) and not order.strictly_preferred(x, y, Mode.WEAK):
            s.failures.append({"order": repr(order), "x": sorted(x), "y": sorted(y)})
    out.append(_timed(s, start))

    # weak and strong agree on total orders
    s = CheckSummary("weak_iff_strong_on_total")
    start = time.perf_counter()
    for _ in range(trials):
        elems = list(range(rng.randint(1, 8)))
        rng.shuffle(elems)
        layers, cur = [], []
        for e in elems:
            cur.append(e)
            if rng.random() < 0.6:
                layers.append(cur)
                cur = []
        if cur:
            layers.append(cur)
        order = PartialPreorder.total_from_ranks(layers)
        x = random_subset(rng, order.elements) or frozenset([elems[0]])
        y = random_subset(rng, order.elements) or frozenset([elems[-1]])
        s.trials += 1
        if order.strictly_preferred(x, y, Mode.WEAK) != order.strictly_preferred(x, y, Mode.STRONG):
            s.failures.append({"order": repr(order), "x": sorted(x), "y": sorted(y)})
    out.append(_timed(s, start))

    # revision on random states
    mono = CheckSummary("incomparability_monotone")
    idem = CheckSummary("idempotence")
    succ = CheckSummary("success")
    ident = CheckSummary("belief_identity")
    start = time.perf_counter()
    for _ in range(trials):
        vocab = random_vocab(rng, max_atoms)
        state = random_state(rng, vocab)
        mu = random_satisfiable(rng, vocab)
        mod = mask_to_set(model_mask(mu, vocab))
        before = state.order.incomparable_pair_count()
        revised = {}
        for op in Operator:
            r = revise_sem(state, mu, op)
            revised[op] = r
            mono.trials += 1
            after = r.order.incomparable_pair_count()
            mixed_ok = all(r.order.lt(x, y) for x in mod for y in set(vocab.all_interpretations) - mod)
            if after > before or not mixed_ok:
                mono.failures.append({"op": op.value, "order": repr(state.order), "mu": str(mu)})
            idem.trials += 1
            if revise_sem(r, mu, op).order != r.order:
                idem.failures.append({"op": op.value, "order": repr(state.order), "mu": str(mu)})
            succ.trials += 1
            if not beliefs_sem(r) <= mod:
                succ.failures.append({"op": op.value, "order": repr(state.order), "mu": str(mu)})
        ident.trials += 1
        cond = conditional_beliefs(state, mu)
        if not (beliefs_sem(revised[Operator.HISTORY]) == cond
                == beliefs_sem(revised[Operator.POSSIBILISTIC])):
            ident.failures.append({"order": repr(state.order), "mu": str(mu)})
    for s in (mono, idem, succ, ident):
        out.append(_timed(s, start))

    # inference agrees with the belief set's models
    s = CheckSummary("infers_matches_beliefs")
    start = time.perf_counter()
    for _ in range(trials):
        base = random_base(rng, max_atoms, 4)
        phi = random_formula(rng, base.vocab)
        mode = rng.choice(list(Mode))
        _, bel = beliefs_syn(base, mode)
        expected = bel <= mask_to_set(model_mask(phi, base.vocab))
        s.trials += 1
        if infers(base, phi, mode) != expected:
            s.failures.append({"base": _describe(base), "phi": str(phi), "mode": mode.value})
    out.append(_timed(s, start))

    # syntactic beliefs equal semantic beliefs of the mapped state (no revision)
    s = CheckSummary("beliefs_match_mapping")
    start = time.perf_counter()
    for _ in range(trials):
        base = random_base(rng, max_atoms, 4)
        mode = rng.choice(list(Mode))
        s.trials += 1
        if beliefs_syn(base, mode)[1] != beliefs_sem(we_map(base, mode)):
            s.failures.append({"base": _describe(base), "mode": mode.value})
    out.append(_timed(s, start))
    return out


def convergence_trials(trials: int, seed: int, max_atoms: int = 3) -> list[CheckSummary]:
    out = []
    for op in Operator:
        rng = random.Random(f"{seed}:convergence:{op.value}")
        s = CheckSummary(f"convergence/{op.value}")
        start = time.perf_counter()
        for _ in range(trials):
            vocab = random_vocab(rng, max_atoms)
            state = random_state(rng, vocab)
            seq = totalizing_sequence(state, op)
            s.trials += 1
            final = apply_sequence(state, seq, op)
            bad_len = op is Operator.POSSIBILISTIC and len(seq) > 1
            if not final.order.is_total() or bad_len:
                s.failures.append({"order": repr(state.order), "length": len(seq)})
        out.append(_timed(s, start))
    return out


def run_checks(scope: str, trials: int, seed: int, max_atoms: int = 3,
               max_formulas: int = 4) -> list[CheckSummary]:
    if scope in ("theorem1", "theorem2"):
        return theorem_trials(scope, trials, seed, max_atoms, max_formulas)
    if scope == "properties":
        return property_trials(trials, seed, max_atoms) + convergence_trials(trials, seed, max_atoms)
    if scope == "all":
        return (theorem_trials("theorem1", trials, seed, max_atoms, max_formulas)
                + theorem_trials("theorem2", trials, seed, max_atoms, max_formulas)
                + property_trials(trials, seed, max_atoms)
                + convergence_trials(trials, seed, max_atoms))
    raise ValueError(f"unknown check scope {scope!r}")
