"""Reference tree constructions: Buchi/Streett to deterministic Rabin.

These are the classic history-tree determinizations with *static* node
names: a name, once freed, signals a restart through the Rabin pair of
that name.  They exist as an independently auditable baseline for the
compact parity constructions.
"""

from __future__ import annotations

from omegadet.automata import (
    Automaton,
    BuchiAcceptance,
    RabinAcceptance,
    StreettAcceptance,
)


def _freeze_labels(label):
    return {v: frozenset(states) for v, states in label.items()}


def _freeze_children(children):
    return {v: tuple(cs) for v, cs in children.items()}


class SafraTree:
    """History tree for the Buchi construction.

    label maps node name to a nonempty state set, children maps node name
    to its children ordered oldest first.  Original names live in [1..n];
    e_set holds the names unused by the tree, f_set the names whose node
    finished a breakpoint this step.  The empty tree (no nodes) is the
    dead state.
    """

    __slots__ = ("label", "children", "e_set", "f_set", "_key")

    def __init__(self, label, children, e_set, f_set):
        self.label = _freeze_labels(label)
        self.children = _freeze_children(children)
        self.e_set = frozenset(e_set)
        self.f_set = frozenset(f_set)
        self._key = None

    def key(self):
        if self._key is None:
            record = tuple(
                (v, self.children[v], tuple(sorted(self.label[v])))
                for v in sorted(self.label)
            )
            self._key = (
                record,
                tuple(sorted(self.e_set)),
                tuple(sorted(self.f_set)),
            )
        return self._key

    def __eq__(self, other):
        return isinstance(other, SafraTree) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        parts = [
            f"{v}:{sorted(self.label[v])}->{list(self.children[v])}"
            for v in sorted(self.label)
        ]
        return (
            f"SafraTree({'; '.join(parts)} | E={sorted(self.e_set)}"
            f" F={sorted(self.f_set)})"
        )


class StreettSafraTree(SafraTree):
    """History tree for the Streett construction; adds per-node index annotations."""

    __slots__ = ("ann",)

    def __init__(self, label, children, ann, e_set, f_set):
        super().__init__(label, children, e_set, f_set)
        self.ann = {v: frozenset(js) for v, js in ann.items()}
        self._key = None

    def key(self):
        if self._key is None:
            record = tuple(
                (
                    v,
                    self.children[v],
                    tuple(sorted(self.label[v])),
                    tuple(sorted(self.ann[v])),
                )
                for v in sorted(self.label)
            )
            self._key = (
                record,
                tuple(sorted(self.e_set)),
                tuple(sorted(self.f_set)),
            )
        return self._key

    def __eq__(self, other):
        return isinstance(other, StreettSafraTree) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def _image(a: Automaton, states, symbol) -> set[int]:
    out: set[int] = set()
    for s in states:
        out |= a.successors(s, symbol)
    return out


def _preorder(children, root):
    order = []
    stack = [root]
    while stack:
        v = stack.pop()
        order.append(v)
        stack.extend(reversed(children[v]))
    return order


def _subtree_names(children, v):
    names = []
    stack = [v]
    while stack:
        x = stack.pop()
        names.append(x)
        stack.extend(children[x])
    return names


def initial_safra_tree(a: Automaton) -> SafraTree:
    n = a.state_count
    return SafraTree(
        label={1: {a.initial}},
        children={1: ()},
        e_set=set(range(2, n + 1)),
        f_set=set(),
    )


def _dead_safra_tree(n: int) -> SafraTree:
    return SafraTree(label={}, children={}, e_set=set(range(1, n + 1)), f_set=set())


def safra_step(tree: SafraTree, symbol: str, a: Automaton) -> SafraTree:
    """One transition of the Buchi history-tree construction.

    Update labels, sprout a child for the accepting part of every label,
    settle duplicate states in favor of older siblings, drop empty nodes,
    collapse nodes whose children cover them (recording the event), free
    dead names, and pull temporary names back into the static name pool.
    """
    if not isinstance(a.acceptance, BuchiAcceptance):
        raise ValueError("safra_step: Buchi acceptance required")
    n = a.state_count
    if not tree.label:
        return _dead_safra_tree(n)
    alpha = a.acceptance.accepting

    label: dict[int, set[int]] = {
        v: _image(a, states, symbol) for v, states in tree.label.items()
    }
    kids: dict[int, list[int]] = {v: list(cs) for v, cs in tree.children.items()}

    # sprout: the accepting part of each label starts a new youngest child
    next_name = n
    for v in _preorder(kids, 1):
        birth = label[v] & alpha
        if birth:
            next_name += 1
            kids[v].append(next_name)
            kids[next_name] = []
            label[next_name] = set(birth)

    # older siblings keep duplicated states
    def remove_from_subtree(v, states):
        for x in _subtree_names(kids, v):
            label[x] -= states

    stack = [1]
    while stack:
        v = stack.pop()
        claimed: set[int] = set()
        for c in kids[v]:
            dup = label[c] & claimed
            if dup:
                remove_from_subtree(c, dup)
            claimed |= label[c]
        stack.extend(kids[v])

    # drop empty nodes (their subtrees are empty too)
    dead = {v for v in label if not label[v]}
    if 1 in dead:
        return _dead_safra_tree(n)
    survivors = set(label) - dead
    kids = {v: [c for c in kids[v] if c in survivors] for v in survivors}

    # breakpoints: children covering the parent end the round
    greens = {
        v
        for v in survivors
        if label[v] == set().union(*(label[c] for c in kids[v]))
    }
    doomed: set[int] = set()
    for g in greens:
        for c in kids[g]:
            doomed.update(_subtree_names(kids, c))
    survivors -= doomed
    f_set = greens & survivors
    kids = {v: [c for c in kids[v] if c in survivors] for v in survivors}

    # free names restart their pair; temporaries take over freed names
    originals = {v for v in survivors if v <= n}
    e_set = set(range(1, n + 1)) - originals
    temps = sorted(v for v in survivors if v > n)
    free = sorted(e_set)
    assert len(temps) <= len(free), "name pool exhausted"
    rename = {t: free[i] for i, t in enumerate(temps)}
    assert all(v <= n for v in f_set), "fresh node cannot finish a breakpoint"

    new_label = {rename.get(v, v): label[v] for v in survivors}
    new_kids = {
        rename.get(v, v): [rename.get(c, c) for c in kids[v]] for v in survivors
    }
    return SafraTree(new_label, new_kids, e_set, f_set)


def _rabin_condition(state_of, trees, name_count):
    pairs = []
    for i in range(1, name_count + 1):
        e_i = frozenset(state_of[t] for t in trees if i in t.e_set)
        f_i = frozenset(state_of[t] for t in trees if i in t.f_set)
        pairs.append((e_i, f_i))
    return RabinAcceptance(tuple(pairs))


def _determinize(a: Automaton, initial_tree, step, name_count: int) -> Automaton:
    """Breadth-first image closure of a tree-transition function."""
    order = [initial_tree]
    seen = {initial_tree}
    moves = {}
    at = 0
    while at < len(order):
        tree = order[at]
        at += 1
        for symbol in a.alphabet:
            nxt = step(tree, symbol, a)
            moves[(tree, symbol)] = nxt
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)

    trees = sorted(seen, key=lambda t: t.key())
    state_of = {t: i for i, t in enumerate(trees)}
    transitions = {
        (state_of[t], symbol): frozenset({state_of[nxt]})
        for (t, symbol), nxt in moves.items()
    }
    return Automaton(
        alphabet=a.alphabet,
        state_count=len(trees),
        initial=state_of[initial_tree],
        transitions=transitions,
        acceptance=_rabin_condition(state_of, trees, name_count),
        deterministic=True,
    )


def safra_determinize(a: Automaton) -> Automaton:
    """Deterministic Rabin automaton equivalent to a nondeterministic Buchi one."""
    if not isinstance(a.acceptance, BuchiAcceptance):
        raise ValueError("safra_determinize: Buchi acceptance required")
    return _determinize(a, initial_safra_tree(a), safra_step, a.state_count)


# ---------------------------------------------------------------------------
# Streett variant
# ---------------------------------------------------------------------------


def initial_streett_safra_tree(a: Automaton) -> StreettSafraTree:
    k = len(a.acceptance.pairs)
    m = a.state_count * (k + 1)
    return StreettSafraTree(
        label={1: {a.initial}},
        children={1: ()},
        ann={1: set(range(1, k + 1))},
        e_set=set(range(2, m + 1)),
        f_set=set(),
    )


def _dead_streett_tree(m: int) -> StreettSafraTree:
    return StreettSafraTree(
        label={}, children={}, ann={}, e_set=set(range(1, m + 1)), f_set=set()
    )


def streett_safra_step(
    tree: StreettSafraTree, symbol: str, a: Automaton
) -> StreettSafraTree:
    """One transition of the Streett history-tree construction.

    Every node carries the set of pair indices it still owes a visit;
    children peel one index at a time.  States sitting in an R set jump to
    a fresh sibling that owes one index fewer (wrapping when none is
    smaller); states sitting in a G set restart the obligation for exactly
    that index.  A node whose children all carry its own annotation has
    seen a full round and collapses, recording the event; a leaf that owes
    nothing records one on every letter.
    """
    if not isinstance(a.acceptance, StreettAcceptance):
        raise ValueError("streett_safra_step: Streett acceptance required")
    pairs = a.acceptance.pairs
    k = len(pairs)
    n = a.state_count
    m = n * (k + 1)
    if not tree.label:
        return _dead_streett_tree(m)

    label: dict[int, set[int]] = {
        v: _image(a, states, symbol) for v, states in tree.label.items()
    }
    ann: dict[int, frozenset[int]] = dict(tree.ann)
    kids: dict[int, list[int]] = {v: list(cs) for v, cs in tree.children.items()}
    f_marks: set[int] = set()
    counter = [m]

    def fresh(owner: int, states, owed) -> None:
        counter[0] += 1
        name = counter[0]
        kids[owner].append(name)
        kids[name] = []
        label[name] = set(states)
        ann[name] = frozenset(owed)

    def remove_from_subtree(v, states):
        for x in _subtree_names(kids, v):
            label[x] -= states

    def delete_subtree(v):
        for x in _subtree_names(kids, v):
            del label[x], ann[x], kids[x]

    def process(v: int) -> None:
        if not kids[v]:
            if not ann[v]:
                # nothing owed: the empty round completes on every letter
                f_marks.add(v)
                return
            fresh(v, label[v], ann[v] - {max(ann[v])})
        sons = list(kids[v])
        for c in sons:
            process(c)
        for c in sons:
            missing = ann[v] - ann[c]
            if not missing:
                continue
            (j,) = missing
            r_j, g_j = pairs[j - 1]
            for s in sorted(label[c]):
                if s in r_j:
                    remove_from_subtree(c, {s})
                    lower = [x for x in ann[v] if x < j]
                    drop = max(lower) if lower else 0
                    fresh(v, {s}, ann[v] - {drop})
                elif s in g_j:
                    remove_from_subtree(c, {s})
                    fresh(v, {s}, ann[v] - {j})
        # duplicated states settle on the son owing the smallest index,
        # ties on age
        live = list(kids[v])
        position = {c: i for i, c in enumerate(live)}

        def jval(c):
            missing = ann[v] - ann[c]
            return next(iter(missing)) if missing else 0

        claimed: set[int] = set()
        for c in sorted(live, key=lambda c: (jval(c), position[c])):
            dup = label[c] & claimed
            if dup:
                remove_from_subtree(c, dup)
            claimed |= label[c]
        for c in list(kids[v]):
            if not label[c]:
                delete_subtree(c)
                kids[v].remove(c)
        if kids[v] and all(ann[c] == ann[v] for c in kids[v]):
            for c in list(kids[v]):
                delete_subtree(c)
            kids[v] = []
            f_marks.add(v)

    process(1)

    # deep nodes emptied by ancestor-level removals are swept here
    dead = {v for v in label if not label[v]}
    if 1 in dead:
        return _dead_streett_tree(m)
    survivors = set(label) - dead
    kids = {v: [c for c in kids[v] if c in survivors] for v in survivors}

    originals = {v for v in survivors if v <= m}
    e_set = set(range(1, m + 1)) - originals
    f_set = f_marks & originals
    temps = sorted(v for v in survivors if v > m)
    free = sorted(e_set)
    assert len(temps) <= len(free), "name pool exhausted"
    rename = {t: free[i] for i, t in enumerate(temps)}

    new_label = {rename.get(v, v): label[v] for v in survivors}
    new_ann = {rename.get(v, v): ann[v] for v in survivors}
    new_kids = {
        rename.get(v, v): [rename.get(c, c) for c in kids[v]] for v in survivors
    }
    return StreettSafraTree(new_label, new_kids, new_ann, e_set, f_set)


def streett_safra_determinize(a: Automaton) -> Automaton:
    """Deterministic Rabin automaton equivalent to a nondeterministic Streett one."""
    if not isinstance(a.acceptance, StreettAcceptance):
        raise ValueError("streett_safra_determinize: Streett acceptance required")
    k = len(a.acceptance.pairs)
    m = a.state_count * (k + 1)
    return _determinize(
        a, initial_streett_safra_tree(a), streett_safra_step, m
    )
