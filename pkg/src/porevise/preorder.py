"""Finite partial pre-orders stored as a quotient: equivalence classes plus a
transitively closed strict order between classes.

Lower means preferred throughout: ``lt(x, y)`` reads "x is strictly
preferred to y".
"""

from __future__ import annotations

import enum
from typing import Callable, Hashable, Iterable, Optional


class PreorderError(ValueError):
    pass


class UnknownElementError(PreorderError):
    def __init__(self, element):
        self.element = element
        super().__init__(f"unknown element {element!r}")


class StrictCycleError(PreorderError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("strict constraints form a cycle: " + " < ".join(map(str, self.cycle)))


class PreorderAxiomError(PreorderError):
    pass


class Mode(str, enum.Enum):
    """How a pre-order on elements is lifted to sets of elements."""

    WEAK = "weak"
    STRONG = "strong"

    @classmethod
    def parse(cls, value) -> "Mode":
        if isinstance(value, Mode):
            return value
        value = str(value).lower()
        for m in cls:
            if m.value == value or m.value[0] == value:
                return m
        raise ValueError(f"unknown set-preference mode {value!r}")


def sort_key(x):
    return (isinstance(x, str), x)


def _sorted(xs):
    return sorted(xs, key=sort_key)


class PartialPreorder:
    """Immutable partial pre-order.

    Classes are canonically ordered by their smallest member, so two orders
    over the same elements with the same relation compare equal and print
    identically.
    """

    __slots__ = ("_classes", "_class_of", "_above", "_below", "_key")

    def __init__(self, classes: Iterable[Iterable[Hashable]], strict: Iterable[tuple[int, int]] = ()):
        # Low-level constructor; ``strict`` pairs are (i, j) class indices into
        # ``classes`` with class i preferred to class j.  Closure is taken here.
        raw = [frozenset(c) for c in classes]
        if any(not c for c in raw):
            raise PreorderError("empty equivalence class")
        order = sorted(range(len(raw)), key=lambda i: sort_key(min(raw[i], key=sort_key)))
        remap = {old: new for new, old in enumerate(order)}
        self._classes = tuple(raw[i] for i in order)
        self._class_of = {}
        for i, c in enumerate(self._classes):
            for x in c:
                if x in self._class_of:
                    raise PreorderError(f"element {x!r} appears in two classes")
                self._class_of[x] = i
        succ = [set() for _ in self._classes]
        for i, j in strict:
            succ[remap[i]].add(remap[j])
        self._above = _close(succ)
        below = [set() for _ in self._classes]
        for i, ups in enumerate(self._above):
            for j in ups:
                below[j].add(i)
        self._below = tuple(frozenset(b) for b in below)
        self._key = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def build(cls, elements: Iterable[Hashable], strict_pairs: Iterable[tuple] = (),
              equal_pairs: Iterable[tuple] = ()) -> "PartialPreorder":
        """Smallest pre-order with ``x < y`` for each strict pair and ``x = y``
        for each equal pair.  Strict constraints that close into a cycle are
        rejected rather than merged."""
        elements = list(dict.fromkeys(elements))
        known = set(elements)
        parent = {x: x for x in elements}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for x, y in equal_pairs:
            for z in (x, y):
                if z not in known:
                    raise UnknownElementError(z)
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry

        groups: dict = {}
        for x in elements:
            groups.setdefault(find(x), []).append(x)
        roots = list(groups)
        index = {r: i for i, r in enumerate(roots)}

        succ = [set() for _ in roots]
        witness = {}
        for x, y in strict_pairs:
            for z in (x, y):
                if z not in known:
                    raise UnknownElementError(z)
            i, j = index[find(x)], index[find(y)]
            if i == j:
                raise StrictCycleError([x, y, x] if x != y else [x, x])
            succ[i].add(j)
            witness[(i, j)] = (x, y)

        cycle = _find_cycle(succ)
        if cycle:
            names = [witness[(cycle[k], cycle[k + 1])][0] for k in range(len(cycle) - 1)]
            names.append(names[0])
            raise StrictCycleError(names)

        strict = [(i, j) for i in range(len(roots)) for j in succ[i]]
        return cls([groups[r] for r in roots], strict)

    @classmethod
    def from_leq(cls, elements: Iterable[Hashable], leq: Callable[[Hashable, Hashable], bool]) -> "PartialPreorder":
        """Assemble an order from an arbitrary ``leq`` predicate, failing loudly
        if it is not reflexive and transitive."""
        elements = list(dict.fromkeys(elements))
        n = len(elements)
        rel = [[leq(x, y) for y in elements] for x in elements]
        for i in range(n):
            if not rel[i][i]:
                raise PreorderAxiomError(f"relation is not reflexive at {elements[i]!r}")
        rep_of = [-1] * n
        reps = []
        for i in range(n):
            for r in reps:
                if rel[i][r] and rel[r][i]:
                    rep_of[i] = r
                    break
            else:
                rep_of[i] = i
                reps.append(i)
        # members of a class must agree on every comparison
        for i in range(n):
            r = rep_of[i]
            if r != i and (rel[i] != rel[r] or any(rel[k][i] != rel[k][r] for k in range(n))):
                raise PreorderAxiomError(
                    f"relation is not transitive around {elements[i]!r} and {elements[r]!r}"
                )
        k = {r: idx for idx, r in enumerate(reps)}
        strict = set()
        for a in reps:
            for b in reps:
                if a != b and rel[a][b]:
                    strict.add((k[a], k[b]))
        for a, b in strict:
            for b2, c in strict:
                if b2 == b and a != c and (a, c) not in strict:
                    raise PreorderAxiomError(
                        f"relation is not transitive: {elements[reps[a]]!r} <= "
                        f"{elements[reps[b]]!r} <= {elements[reps[c]]!r}"
                    )
        classes = [[elements[i] for i in range(n) if rep_of[i] == r] for r in reps]
        return cls(classes, strict)

    @classmethod
    def total_from_ranks(cls, ranked: Iterable[Iterable[Hashable]]) -> "PartialPreorder":
        """Total pre-order from a list of layers, most preferred first."""
        layers = [list(layer) for layer in ranked if list(layer)]
        strict = [(i, j) for i in range(len(layers)) for j in range(i + 1, len(layers))]
        return cls(layers, strict)

    # -- structure ----------------------------------------------------------

    @property
    def elements(self) -> frozenset:
        return frozenset(self._class_of)

    @property
    def classes(self) -> tuple[frozenset, ...]:
        return self._classes

    def __len__(self):
        return len(self._class_of)

    def __contains__(self, x):
        return x in self._class_of

    def class_index(self, x) -> int:
        try:
            return self._class_of[x]
        except KeyError:
            raise UnknownElementError(x) from None

    def class_of(self, x) -> frozenset:
        return self._classes[self.class_index(x)]

    def strict_class_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(len(self._classes)) for j in sorted(self._above[i])]

    def covering_pairs(self) -> list[tuple[int, int]]:
        """Transitive reduction of the strict class order."""
        out = []
        for i, ups in enumerate(self._above):
            for j in sorted(ups):
                if not any(j in self._above[k] for k in ups if k != j):
                    out.append((i, j))
        return out

    def canonical(self):
        if self._key is None:
            self._key = (
                frozenset(self._classes),
                frozenset((self._classes[i], self._classes[j]) for i, j in self.strict_class_pairs()),
            )
        return self._key

    def __eq__(self, other):
        if not isinstance(other, PartialPreorder):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __repr__(self):
        cls_txt = ", ".join("{" + ",".join(map(str, _sorted(c))) + "}" for c in self._classes)
        return f"PartialPreorder([{cls_txt}], strict={self.covering_pairs()})"

    def check_invariants(self):
        """Re-verify closure, acyclicity and the class partition."""
        for i, ups in enumerate(self._above):
            if i in ups:
                raise PreorderAxiomError(f"class {i} strictly below itself")
            for j in ups:
                if not self._above[j] <= ups:
                    raise PreorderAxiomError(f"strict order not transitive at {i} < {j}")
                if i in self._above[j]:
                    raise PreorderAxiomError(f"strict order not asymmetric at {i}, {j}")
        members = [x for c in self._classes for x in c]
        if len(members) != len(set(members)):
            raise PreorderAxiomError("classes overlap")

    # -- pairwise queries ---------------------------------------------------

    def leq(self, x, y) -> bool:
        i, j = self.class_index(x), self.class_index(y)
        return i == j or j in self._above[i]

    def lt(self, x, y) -> bool:
        return self.class_index(y) in self._above[self.class_index(x)]

    def equiv(self, x, y) -> bool:
        return self.class_index(x) == self.class_index(y)

    def incomparable(self, x, y) -> bool:
        i, j = self.class_index(x), self.class_index(y)
        return i != j and j not in self._above[i] and i not in self._above[j]

    def relation(self, x, y) -> str:
        """One of ``'='``, ``'<'``, ``'>'``, ``'~'``."""
        i, j = self.class_index(x), self.class_index(y)
        if i == j:
            return "="
        if j in self._above[i]:
            return "<"
        if i in self._above[j]:
            return ">"
        return "~"

    # -- sets ---------------------------------------------------------------

    def _classes_of(self, subset) -> set[int]:
        return {self.class_index(x) for x in subset}

    def _min_classes(self, cls_set) -> frozenset[int]:
        return frozenset(i for i in cls_set if not (self._below[i] & cls_set))

    def min_elements(self, subset: Optional[Iterable] = None) -> frozenset:
        """Members of ``subset`` with nothing in ``subset`` strictly below them.

        Defaults to the whole carrier."""
        subset = self.elements if subset is None else frozenset(subset)
        keep = self._min_classes(self._classes_of(subset))
        return frozenset(x for x in subset if self._class_of[x] in keep)

    def set_equal(self, xs: Iterable, ys: Iterable) -> bool:
        return (self._min_classes(self._classes_of(xs))
                == self._min_classes(self._classes_of(ys)))

    def strictly_preferred(self, xs: Iterable, ys: Iterable, mode=Mode.WEAK) -> bool:
        return self.class_strictly_preferred(
            self._min_classes(self._classes_of(xs)),
            self._min_classes(self._classes_of(ys)),
            Mode.parse(mode),
        )

    def lifted_leq(self, xs: Iterable, ys: Iterable, mode=Mode.WEAK) -> bool:
        mx = self._min_classes(self._classes_of(xs))
        my = self._min_classes(self._classes_of(ys))
        return mx == my or self.class_strictly_preferred(mx, my, Mode.parse(mode))

    def class_strictly_preferred(self, mx: frozenset[int], my: frozenset[int], mode: Mode) -> bool:
        # mx, my are already min class sets; the empty-set cases follow the
        # quantifiers literally: X < {} always (weak), {} < Y never for Y != {}.
        above = self._above
        if mode is Mode.WEAK:
            return all(any(y in above[x] for x in mx) for y in my)
        return any(all(y in above[x] for y in my) for x in mx)

    def min_class_signature(self, subset: Iterable) -> frozenset[int]:
        """Class indices of ``min(subset)``; every set comparison depends only on this."""
        return self._min_classes(self._classes_of(subset))

    # -- global properties --------------------------------------------------

    def is_total(self) -> bool:
        k = len(self._classes)
        return all(len(self._above[i]) + len(self._below[i]) == k - 1 for i in range(k))

    def incomparable_pair_count(self) -> int:
        sizes = [len(c) for c in self._classes]
        total = 0
        for i in range(len(sizes)):
            for j in range(i + 1, len(sizes)):
                if j not in self._above[i] and i not in self._above[j]:
                    total += sizes[i] * sizes[j]
        return total

    def linear_extension(self) -> list:
        """Deterministic topological order of the elements: classes by a
        stable Kahn sort (lowest index first), members in sorted order."""
        cover_up = [[] for _ in self._classes]
        for i, j in self.covering_pairs():
            cover_up[i].append(j)
        cover_indeg = [0] * len(self._classes)
        for _, j in self.covering_pairs():
            cover_indeg[j] += 1
        ready = sorted(i for i, d in enumerate(cover_indeg) if d == 0)
        out = []
        while ready:
            i = ready.pop(0)
            out.extend(_sorted(self._classes[i]))
            for j in cover_up[i]:
                cover_indeg[j] -= 1
                if cover_indeg[j] == 0:
                    ready.append(j)
                    ready.sort()
        return out

    def restrict(self, subset: Iterable) -> "PartialPreorder":
        subset = frozenset(subset)
        for x in subset:
            self.class_index(x)
        parts, old = [], []
        for i, c in enumerate(self._classes):
            part = c & subset
            if part:
                parts.append(part)
                old.append(i)
        strict = [(a, b) for a, i in enumerate(old) for b, j in enumerate(old) if j in self._above[i]]
        return PartialPreorder(parts, strict)

    def expand(self, groups: dict) -> "PartialPreorder":
        """Replace each element ``k`` by the members of ``groups[k]``, which
        become mutually equal."""
        classes = [[m for k in c for m in groups[k]] for c in self._classes]
        return PartialPreorder(classes, self.strict_class_pairs())

    def relabel(self, mapping: Callable[[Hashable], Hashable]) -> "PartialPreorder":
        classes = [[mapping(x) for x in c] for c in self._classes]
        return PartialPreorder(classes, self.strict_class_pairs())

    # -- export -------------------------------------------------------------

    def to_dot(self, labeler: Optional[Callable[[Hashable], str]] = None,
               name: str = "order", caption: Optional[str] = None) -> str:
        """DOT text: one node per class, edges of the transitive reduction
        drawn from the preferred class upward."""
        labeler = labeler or str
        lines = [f"digraph {_dot_id(name)} {{", "  rankdir=BT;", "  node [shape=box];"]
        cap = caption or "lower is preferred; edges point from preferred to less preferred"
        lines.append(f"  label={_dot_str(cap)};")
        for i, c in enumerate(self._classes):
            text = " = ".join(labeler(x) for x in _sorted(c))
            lines.append(f"  c{i} [label={_dot_str(text)}];")
        for i, j in self.covering_pairs():
            lines.append(f"  c{i} -> c{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _dot_id(name: str) -> str:
    return name if name.isidentifier() else _dot_str(name)


def _dot_str(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _close(succ: list[set[int]]) -> tuple[frozenset[int], ...]:
    # reachability by DFS from every node; succ must be acyclic
    out = []
    for start in range(len(succ)):
        seen = set()
        stack = list(succ[start])
        while stack:
            v = stack.pop()
            if v not in seen:
                seen.add(v)
                stack.extend(succ[v])
        out.append(frozenset(seen))
    return tuple(out)


def _find_cycle(succ: list[set[int]]) -> Optional[list[int]]:
    WHITE, GREY, BLACK = 0, 1, 2
    color = [WHITE] * len(succ)
    parent = [-1] * len(succ)
    for root in range(len(succ)):
        if color[root] != WHITE:
            continue
        stack = [(root, iter(sorted(succ[root])))]
        color[root] = GREY
        while stack:
            v, it = stack[-1]
            for u in it:
                if color[u] == GREY:
                    cycle = [u]
                    w = v
                    while w != u:
                        cycle.append(w)
                        w = parent[w]
                    cycle.append(u)
                    cycle.reverse()
                    return cycle
                if color[u] == WHITE:
                    color[u] = GREY
                    parent[u] = v
                    stack.append((u, iter(sorted(succ[u]))))
                    break
            else:
                color[v] = BLACK
                stack.pop()
    return None
