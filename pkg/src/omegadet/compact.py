"""Compact tree determinization: Buchi/Streett to deterministic parity.

Node names double as the record of structural change: names are kept
consecutive by renaming after every transition, and the transition reports
the smallest name whose node was deleted (e) and the smallest name whose
node finished a round (f).  Ordering the two events by name yields a
min-even parity condition, so the deterministic automaton needs no pair
bookkeeping at all — just one priority per transition target.
"""

from __future__ import annotations

from dataclasses import dataclass

from omegadet.automata import (
    Alphabet,
    Automaton,
    BuchiAcceptance,
    ParityAcceptance,
    StreettAcceptance,
)


@dataclass(frozen=True)
class CompactSafraTree:
    """History tree with consecutive names [1..N].

    parents[i] is the parent name of name i+1 (0 for the root); labels[i]
    is the label of name i+1.  Parent names are smaller than child names.
    e/f are the deletion/completion bookmarks of the step that produced
    the tree; the empty tree (no nodes, e=1) is the rejecting sink.
    """

    parents: tuple[int, ...]
    labels: tuple[frozenset[int], ...]
    e: int
    f: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "parents", tuple(self.parents))
        object.__setattr__(
            self, "labels", tuple(frozenset(l) for l in self.labels)
        )


@dataclass(frozen=True)
class CompactStreettSafraTree:
    """Compact tree with per-node annotations of still-owed pair indices (1-based)."""

    parents: tuple[int, ...]
    labels: tuple[frozenset[int], ...]
    anns: tuple[frozenset[int], ...]
    e: int
    f: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "parents", tuple(self.parents))
        object.__setattr__(
            self, "labels", tuple(frozenset(l) for l in self.labels)
        )
        object.__setattr__(self, "anns", tuple(frozenset(h) for h in self.anns))


@dataclass(frozen=True)
class DpwState:
    """Deterministic-automaton state: tree shape plus the emitted priority.

    The e/f bookmarks are deliberately erased — two steps arriving at the
    same shape with the same priority are the same state.  anns is None
    for the Buchi construction.  The empty shape is the rejecting sink.
    """

    parents: tuple[int, ...]
    labels: tuple[frozenset[int], ...]
    anns: tuple[frozenset[int], ...] | None
    priority: int


def priority_of(e: int, f: int) -> int:
    """Priority of a transition with deletion bookmark e and completion bookmark f.

    Completion strictly before deletion is the good case (even priority
    2f-2); otherwise the deletion dominates (odd priority 2e-3).  e=1 means
    the root died and is handled by the sink, not here.
    """
    if e < 2:
        raise ValueError("priority_of: e must be at least 2")
    if f < 1:
        raise ValueError("priority_of: f must be at least 1")
    if f < e:
        return 2 * f - 2
    return 2 * e - 3


def _image(a: Automaton, states, symbol) -> set[int]:
    out: set[int] = set()
    for s in states:
        out |= a.successors(s, symbol)
    return out


def _children_of(parents: tuple[int, ...]) -> dict[int, list[int]]:
    kids: dict[int, list[int]] = {name: [] for name in range(1, len(parents) + 1)}
    for idx, parent in enumerate(parents):
        if parent:
            kids[parent].append(idx + 1)
    return kids


def _subtree_names(kids, v):
    names = []
    stack = [v]
    while stack:
        x = stack.pop()
        names.append(x)
        stack.extend(kids[x])
    return names


def _rename_consecutive(survivors, removed, parent, label, ann=None):
    """Shift every surviving name down past the removed ones; rebuild arrays."""
    rename = {}
    for v in survivors:
        rename[v] = v - sum(1 for z in removed if z < v)
    count = len(survivors)
    parents_out = [0] * count
    labels_out: list[frozenset[int]] = [frozenset()] * count
    anns_out: list[frozenset[int]] = [frozenset()] * count
    for v in survivors:
        new = rename[v]
        p = parent[v]
        parents_out[new - 1] = rename[p] if p else 0
        labels_out[new - 1] = frozenset(label[v])
        if ann is not None:
            anns_out[new - 1] = frozenset(ann[v])
    if ann is None:
        return tuple(parents_out), tuple(labels_out)
    return tuple(parents_out), tuple(labels_out), tuple(anns_out)


EMPTY_TREE = CompactSafraTree(parents=(), labels=(), e=1, f=1)


def initial_compact_tree(a: Automaton) -> CompactSafraTree:
    return CompactSafraTree(parents=(0,), labels=(frozenset({a.initial}),), e=2, f=1)


def compact_step(
    tree: CompactSafraTree, symbol: str, a: Automaton
) -> tuple[CompactSafraTree, int]:
    """One transition of the compact Buchi construction.

    Returns the successor tree and the priority of the transition; the
    successor of the empty tree is the empty tree with priority 1.
    """
    if not isinstance(a.acceptance, BuchiAcceptance):
        raise ValueError("compact_step: Buchi acceptance required")
    n = a.state_count
    count = len(tree.parents)
    if count == 0:
        return EMPTY_TREE, 1
    alpha = a.acceptance.accepting

    label = {v: _image(a, tree.labels[v - 1], symbol) for v in range(1, count + 1)}
    parent = {v: tree.parents[v - 1] for v in range(1, count + 1)}
    kids = _children_of(tree.parents)

    # sprout: accepting part of each pre-existing label, names keep growing
    used = count
    for v in range(1, count + 1):
        birth = label[v] & alpha
        if birth:
            used += 1
            kids[v].append(used)
            kids[used] = []
            parent[used] = v
            label[used] = set(birth)

    # duplicated states settle on the smaller-named sibling
    for p in sorted(kids):
        claimed: set[int] = set()
        for c in kids[p]:
            dup = label[c] & claimed
            if dup:
                for x in _subtree_names(kids, c):
                    label[x] -= dup
            claimed |= label[c]

    e = f = n + 1

    # a label covered by its children closes a round: keep the node, drop
    # the subtree below it
    greens = [
        v
        for v in sorted(label)
        if label[v] == set().union(*(label[c] for c in kids[v]))
    ]
    removed: set[int] = set()
    if greens:
        f = min(f, greens[0])
    for g in greens:
        if g in removed:
            continue
        for c in kids[g]:
            removed.update(_subtree_names(kids, c))
        kids[g] = []

    # empty nodes disappear; every deletion bumps the e bookmark
    for v in sorted(label):
        if v not in removed and not label[v]:
            removed.add(v)
    if removed:
        e = min(e, min(removed))
    if 1 in removed:
        return EMPTY_TREE, 1

    survivors = sorted(v for v in label if v not in removed)
    for v in survivors:
        kids[v] = [c for c in kids[v] if c not in removed]
    parents_out, labels_out = _rename_consecutive(survivors, removed, parent, label)
    out = CompactSafraTree(parents=parents_out, labels=labels_out, e=e, f=f)
    return out, priority_of(e, f)


# ---------------------------------------------------------------------------
# Streett variant
# ---------------------------------------------------------------------------


def initial_compact_streett_tree(a: Automaton) -> CompactStreettSafraTree:
    k = len(a.acceptance.pairs)
    return CompactStreettSafraTree(
        parents=(0,),
        labels=(frozenset({a.initial}),),
        anns=(frozenset(range(1, k + 1)),),
        e=2,
        f=1,
    )


EMPTY_STREETT_TREE = CompactStreettSafraTree(
    parents=(), labels=(), anns=(), e=1, f=1
)


def compact_streett_step(
    tree: CompactStreettSafraTree, symbol: str, a: Automaton
) -> tuple[CompactStreettSafraTree, int]:
    """One transition of the compact Streett construction.

    Same shape discipline as the Buchi variant, but rounds are tracked per
    node through annotations of still-owed pair indices: R-hits advance a
    state to a sibling owing one index fewer (wrapping when none is
    smaller), G-hits restart exactly the offended index, and a node whose
    surviving sons all match its own annotation — or a leaf owing nothing —
    completes a round.
    """
    if not isinstance(a.acceptance, StreettAcceptance):
        raise ValueError("compact_streett_step: Streett acceptance required")
    pairs = a.acceptance.pairs
    n = a.state_count
    m = n * (len(pairs) + 1)
    count = len(tree.parents)
    if count == 0:
        return EMPTY_STREETT_TREE, 1

    label = {v: _image(a, tree.labels[v - 1], symbol) for v in range(1, count + 1)}
    ann = {v: tree.anns[v - 1] for v in range(1, count + 1)}
    parent = {v: tree.parents[v - 1] for v in range(1, count + 1)}
    kids = _children_of(tree.parents)

    e_box = [m + 1]
    f_box = [m + 1]
    removed: set[int] = set()
    counter = [count]

    def fresh(owner: int, states, owed) -> None:
        counter[0] += 1
        name = counter[0]
        kids[owner].append(name)
        kids[name] = []
        parent[name] = owner
        label[name] = set(states)
        ann[name] = frozenset(owed)

    def remove_from_subtree(v, states):
        for x in _subtree_names(kids, v):
            label[x] -= states

    def delete_subtree(v):
        for x in _subtree_names(kids, v):
            removed.add(x)
            del label[x], ann[x], kids[x], parent[x]

    def process(v: int) -> None:
        if not kids[v]:
            if not ann[v]:
                # nothing owed: the empty round completes on every letter
                f_box[0] = min(f_box[0], v)
                return
            fresh(v, label[v], ann[v] - {max(ann[v])})
        sons = sorted(kids[v])
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
        live = sorted(kids[v])

        def jval(c):
            missing = ann[v] - ann[c]
            return next(iter(missing)) if missing else 0

        claimed: set[int] = set()
        for c in sorted(live, key=lambda c: (jval(c), c)):
            dup = label[c] & claimed
            if dup:
                remove_from_subtree(c, dup)
            claimed |= label[c]
        for c in list(kids[v]):
            if not label[c]:
                e_box[0] = min(e_box[0], min(_subtree_names(kids, c)))
                delete_subtree(c)
                kids[v].remove(c)
        if kids[v] and all(ann[c] == ann[v] for c in kids[v]):
            e_box[0] = min(e_box[0], min(kids[v]))
            for c in list(kids[v]):
                delete_subtree(c)
            kids[v] = []
            f_box[0] = min(f_box[0], v)

    process(1)

    # deep nodes emptied by ancestor-level removals are swept here
    for v in sorted(label):
        if not label[v]:
            e_box[0] = min(e_box[0], v)
            removed.add(v)
    if not label.get(1):
        return EMPTY_STREETT_TREE, 1
    survivors = sorted(v for v in label if v not in removed)
    for v in survivors:
        kids[v] = [c for c in kids[v] if c not in removed]

    e, f = e_box[0], f_box[0]
    parents_out, labels_out, anns_out = _rename_consecutive(
        survivors, removed, parent, label, ann
    )
    out = CompactStreettSafraTree(
        parents=parents_out, labels=labels_out, anns=anns_out, e=e, f=f
    )
    return out, priority_of(e, f)


# ---------------------------------------------------------------------------
# Reachability closure to a deterministic parity automaton
# ---------------------------------------------------------------------------


def _dpw_state_key(d: DpwState):
    return (
        d.parents,
        tuple(tuple(sorted(l)) for l in d.labels),
        tuple(tuple(sorted(h)) for h in d.anns) if d.anns is not None else (),
        d.priority,
    )


def _close(a: Automaton, start_state: DpwState, advance, index: int) -> Automaton:
    order = [start_state]
    seen = {start_state}
    moves = {}
    at = 0
    while at < len(order):
        state = order[at]
        at += 1
        for symbol in a.alphabet:
            nxt = advance(state, symbol)
            moves[(state, symbol)] = nxt
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)

    states = sorted(seen, key=_dpw_state_key)
    number = {d: i for i, d in enumerate(states)}
    transitions = {
        (number[d], symbol): frozenset({number[nxt]})
        for (d, symbol), nxt in moves.items()
    }
    return Automaton(
        alphabet=a.alphabet,
        state_count=len(states),
        initial=number[start_state],
        transitions=transitions,
        acceptance=ParityAcceptance(
            priorities=tuple(d.priority for d in states), index=index
        ),
        deterministic=True,
    )


def nbw_to_dpw(a: Automaton) -> Automaton:
    """Deterministic parity automaton equivalent to a nondeterministic Buchi one."""
    if not isinstance(a.acceptance, BuchiAcceptance):
        raise ValueError("nbw_to_dpw: Buchi acceptance required")
    step_cache: dict = {}

    def advance(d: DpwState, symbol: str) -> DpwState:
        key = (d.parents, d.labels, symbol)
        hit = step_cache.get(key)
        if hit is None:
            tree = CompactSafraTree(parents=d.parents, labels=d.labels, e=2, f=1)
            hit = compact_step(tree, symbol, a)
            step_cache[key] = hit
        nxt, priority = hit
        return DpwState(
            parents=nxt.parents, labels=nxt.labels, anns=None, priority=priority
        )

    start_tree = initial_compact_tree(a)
    start = DpwState(
        parents=start_tree.parents,
        labels=start_tree.labels,
        anns=None,
        priority=priority_of(start_tree.e, start_tree.f),
    )
    return _close(a, start, advance, index=2 * a.state_count)


def nsw_to_dpw(a: Automaton) -> Automaton:
    """Deterministic parity automaton equivalent to a nondeterministic Streett one."""
    if not isinstance(a.acceptance, StreettAcceptance):
        raise ValueError("nsw_to_dpw: Streett acceptance required")
    m = a.state_count * (len(a.acceptance.pairs) + 1)
    step_cache: dict = {}

    def advance(d: DpwState, symbol: str) -> DpwState:
        key = (d.parents, d.labels, d.anns, symbol)
        hit = step_cache.get(key)
        if hit is None:
            tree = CompactStreettSafraTree(
                parents=d.parents, labels=d.labels, anns=d.anns, e=2, f=1
            )
            hit = compact_streett_step(tree, symbol, a)
            step_cache[key] = hit
        nxt, priority = hit
        return DpwState(
            parents=nxt.parents,
            labels=nxt.labels,
            anns=nxt.anns,
            priority=priority,
        )

    start_tree = initial_compact_streett_tree(a)
    start = DpwState(
        parents=start_tree.parents,
        labels=start_tree.labels,
        anns=start_tree.anns,
        priority=priority_of(start_tree.e, start_tree.f),
    )
    return _close(a, start, advance, index=2 * m)
