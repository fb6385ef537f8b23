"""Core automaton types and structural operations.

Automata are immutable: a shared transition table over an explicit
alphabet plus one acceptance condition.  The transition relation is kept
partial (missing entries mean "no successor"); deterministic automata are
required to be total with singleton successor sets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping


@dataclass(frozen=True)
class Alphabet:
    """Finite ordered alphabet of symbol names."""

    symbols: tuple[str, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.symbols, tuple):
            object.__setattr__(self, "symbols", tuple(self.symbols))

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)

    def __contains__(self, symbol: object) -> bool:
        return symbol in self.symbols

    def index(self, symbol: str) -> int:
        return self.symbols.index(symbol)


@dataclass(frozen=True)
class BuchiAcceptance:
    """Accept iff the run visits `accepting` infinitely often."""

    accepting: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "accepting", frozenset(self.accepting))


@dataclass(frozen=True)
class RabinAcceptance:
    """Pairs (E_i, F_i): accept iff some pair has inf∩E_i=∅ and inf∩F_i≠∅."""

    pairs: tuple[tuple[frozenset[int], frozenset[int]], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "pairs",
            tuple((frozenset(e), frozenset(f)) for e, f in self.pairs),
        )


@dataclass(frozen=True)
class StreettAcceptance:
    """Pairs (R_i, G_i): accept iff every pair with inf∩G_i≠∅ has inf∩R_i≠∅."""

    pairs: tuple[tuple[frozenset[int], frozenset[int]], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "pairs",
            tuple((frozenset(r), frozenset(g)) for r, g in self.pairs),
        )


@dataclass(frozen=True)
class ParityAcceptance:
    """Min-even parity: accept iff the least priority seen infinitely often is even.

    `priorities[s]` is the priority of state s; all priorities lie in
    [0, index).  Empty priority classes are allowed.
    """

    priorities: tuple[int, ...]
    index: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "priorities", tuple(self.priorities))


AcceptanceCondition = (
    BuchiAcceptance | RabinAcceptance | StreettAcceptance | ParityAcceptance
)


@dataclass(frozen=True)
class Automaton:
    """Word automaton over infinite words.

    transitions maps (state, symbol) to the successor set; pairs without an
    entry have no successors.  `deterministic` promises a total transition
    function with exactly one successor everywhere.
    """

    alphabet: Alphabet
    state_count: int
    initial: int
    transitions: Mapping[tuple[int, str], frozenset[int]]
    acceptance: AcceptanceCondition
    deterministic: bool = False

    def __post_init__(self) -> None:
        frozen = {
            key: frozenset(targets)
            for key, targets in self.transitions.items()
            if targets
        }
        object.__setattr__(self, "transitions", frozen)

    def successors(self, state: int, symbol: str) -> frozenset[int]:
        return self.transitions.get((state, symbol), frozenset())

    def dstep(self, state: int, symbol: str) -> int:
        """Unique successor; only meaningful on deterministic automata."""
        (target,) = self.transitions[(state, symbol)]
        return target

    def states(self) -> range:
        return range(self.state_count)


def _check_state_set(
    diags: list[str], states: Iterable[int], count: int, what: str
) -> None:
    for s in states:
        if not (0 <= s < count):
            diags.append(f"{what}: state {s} out of range [0, {count})")


def validate_automaton(a: Automaton) -> list[str]:
    """Structural diagnostics; an empty list means the automaton is well formed."""
    diags: list[str] = []
    if len(a.alphabet) == 0:
        diags.append("alphabet: empty")
    seen: set[str] = set()
    for sym in a.alphabet:
        if sym in seen:
            diags.append(f"alphabet: duplicate symbol {sym!r}")
        seen.add(sym)
    if a.state_count < 1:
        diags.append(f"state_count: {a.state_count} < 1")
    if not (0 <= a.initial < a.state_count):
        diags.append(f"initial: state {a.initial} out of range [0, {a.state_count})")
    for (s, sym), targets in sorted(
        a.transitions.items(), key=lambda kv: (kv[0][0], str(kv[0][1]))
    ):
        if not (0 <= s < a.state_count):
            diags.append(f"transition source: state {s} out of range [0, {a.state_count})")
        if sym not in a.alphabet:
            diags.append(f"transition: unknown symbol {sym!r} at state {s}")
        _check_state_set(diags, targets, a.state_count, f"transition ({s}, {sym!r})")
    if a.deterministic:
        for s in a.states():
            for sym in a.alphabet:
                targets = a.successors(s, sym)
                if len(targets) != 1:
                    diags.append(
                        f"deterministic: ({s}, {sym!r}) has {len(targets)} successors, want 1"
                    )
    acc = a.acceptance
    if isinstance(acc, BuchiAcceptance):
        _check_state_set(diags, acc.accepting, a.state_count, "accepting set")
    elif isinstance(acc, (RabinAcceptance, StreettAcceptance)):
        for i, (left, right) in enumerate(acc.pairs):
            _check_state_set(diags, left, a.state_count, f"pair {i} first set")
            _check_state_set(diags, right, a.state_count, f"pair {i} second set")
    elif isinstance(acc, ParityAcceptance):
        if acc.index < 1:
            diags.append(f"parity: index {acc.index} < 1")
        if len(acc.priorities) != a.state_count:
            diags.append(
                f"parity: {len(acc.priorities)} priorities for {a.state_count} states"
            )
        for s, p in enumerate(acc.priorities):
            if not (0 <= p < acc.index):
                diags.append(f"parity: state {s} priority {p} out of range [0, {acc.index})")
    else:
        diags.append(f"acceptance: unknown condition {type(acc).__name__}")
    return diags


def is_total(a: Automaton) -> bool:
    return all(
        a.successors(s, sym) for s in a.states() for sym in a.alphabet
    )


def dualize_parity(a: Automaton) -> Automaton:
    """Complement a deterministic total parity automaton by shifting every priority up by one."""
    if not isinstance(a.acceptance, ParityAcceptance):
        raise ValueError("dualize_parity: parity acceptance required")
    if not a.deterministic:
        raise ValueError("dualize_parity: deterministic automaton required")
    if not is_total(a):
        raise ValueError("dualize_parity: total transition function required")
    acc = ParityAcceptance(
        priorities=tuple(p + 1 for p in a.acceptance.priorities),
        index=a.acceptance.index + 1,
    )
    return Automaton(
        alphabet=a.alphabet,
        state_count=a.state_count,
        initial=a.initial,
        transitions=a.transitions,
        acceptance=acc,
        deterministic=True,
    )


def normalize_priorities(a: Automaton) -> Automaton:
    """Shift all priorities down by two while the minimum stays >= 2."""
    if not isinstance(a.acceptance, ParityAcceptance):
        raise ValueError("normalize_priorities: parity acceptance required")
    priorities = a.acceptance.priorities
    index = a.acceptance.index
    shift = 2 * (min(priorities) // 2) if priorities else 0
    if shift == 0:
        return a
    acc = ParityAcceptance(
        priorities=tuple(p - shift for p in priorities), index=index - shift
    )
    return Automaton(
        alphabet=a.alphabet,
        state_count=a.state_count,
        initial=a.initial,
        transitions=a.transitions,
        acceptance=acc,
        deterministic=a.deterministic,
    )


# ---------------------------------------------------------------------------
# Streett -> Buchi witness-set union
# ---------------------------------------------------------------------------

_WITNESS_PAIR_LIMIT = 12


def nsw_witness_union_nbw(a: Automaton) -> Automaton:
    """Buchi automaton equivalent to a nondeterministic Streett automaton.

    For every subset J of the pair indices, a run may jump from a plain copy
    of the automaton into a J-tagged copy that (a) dies on touching G_j for
    any j outside J and (b) cycles a pointer through the R_j of J in
    descending index order, hitting an accepting flank each time the pointer
    wraps.  Accepting such a cycle infinitely often certifies inf∩R_j≠∅ for
    all j in J while the kill rule certifies inf∩G_j=∅ for the rest.

    Intended as a test oracle; the state count is exponential in the number
    of pairs, hence the hard cap.
    """
    if not isinstance(a.acceptance, StreettAcceptance):
        raise ValueError("nsw_witness_union_nbw: Streett acceptance required")
    pairs = a.acceptance.pairs
    k = len(pairs)
    if k > _WITNESS_PAIR_LIMIT:
        raise ValueError(
            f"nsw_witness_union_nbw: {k} pairs exceeds the supported maximum "
            f"of {_WITNESS_PAIR_LIMIT}"
        )

    all_witnesses = []
    for mask in range(1 << k):
        witness = tuple(j for j in range(k) if mask & (1 << j))
        all_witnesses.append(witness)

    def forbidden(witness: tuple[int, ...]) -> frozenset[int]:
        out: set[int] = set()
        for j in range(k):
            if j not in witness:
                out |= pairs[j][1]
        return frozenset(out)

    kill = {w: forbidden(w) for w in all_witnesses}

    # Candidate states in a fixed canonical order: the plain copy first,
    # then each witness copy by ascending bitmask, inner states by
    # (state, progress).  Trimmed to the reachable part afterwards.
    index_of: dict[object, int] = {}
    layout: list[object] = []
    for s in range(a.state_count):
        index_of[("plain", s)] = len(layout)
        layout.append(("plain", s))
    for witness in all_witnesses:
        size = len(witness)
        for s in range(a.state_count):
            for i in range(size + 1):
                key = ("tag", s, witness, i)
                index_of[key] = len(layout)
                layout.append(key)

    transitions: dict[tuple[int, str], set[int]] = {}

    def add(src: int, sym: str, dst: int) -> None:
        transitions.setdefault((src, sym), set()).add(dst)

    for s in range(a.state_count):
        for sym in a.alphabet:
            for t in a.successors(s, sym):
                src = index_of[("plain", s)]
                add(src, sym, index_of[("plain", t)])
                for witness in all_witnesses:
                    if t not in kill[witness]:
                        add(src, sym, index_of[("tag", t, witness, 0)])

    for witness in all_witnesses:
        order = tuple(sorted(witness, reverse=True))
        size = len(witness)
        for s in range(a.state_count):
            for i in range(size + 1):
                src = index_of[("tag", s, witness, i)]
                for sym in a.alphabet:
                    for t in a.successors(s, sym):
                        if t in kill[witness]:
                            continue
                        at = 0 if i == size else i
                        nxt = at
                        if size and t in pairs[order[at]][0]:
                            nxt = at + 1
                        add(src, sym, index_of[("tag", t, witness, nxt)])

    # Reachable trim, preserving the canonical order.
    start = index_of[("plain", a.initial)]
    reached = {start}
    frontier = [start]
    while frontier:
        nxt_frontier = []
        for src in frontier:
            for sym in a.alphabet:
                for dst in transitions.get((src, sym), ()):
                    if dst not in reached:
                        reached.add(dst)
                        nxt_frontier.append(dst)
        frontier = nxt_frontier

    keep = sorted(reached)
    renum = {old: new for new, old in enumerate(keep)}
    new_transitions = {
        (renum[s], sym): frozenset(renum[t] for t in targets if t in reached)
        for (s, sym), targets in transitions.items()
        if s in reached
    }
    accepting = frozenset(
        renum[idx]
        for idx in keep
        if layout[idx][0] == "tag" and layout[idx][3] == len(layout[idx][2])
    )
    return Automaton(
        alphabet=a.alphabet,
        state_count=len(keep),
        initial=renum[start],
        transitions=new_transitions,
        acceptance=BuchiAcceptance(accepting),
        deterministic=False,
    )


# ---------------------------------------------------------------------------
# Scaling fixture family
# ---------------------------------------------------------------------------


def build_lk_fixture(k: int) -> Automaton:
    """k-state Buchi automaton for: the least symbol read infinitely often is even.

    The alphabet is "1".."k".  State 0 guesses; for each even e it can commit
    to the claim "every symbol from now on is >= e and e recurs", tracked by
    a waiting/visiting checker pair (the e=k checker needs no waiting state).
    """
    if k < 1:
        raise ValueError("build_lk_fixture: k must be >= 1")
    symbols = tuple(str(i) for i in range(1, k + 1))
    guess = 0
    wait: dict[int, int] = {}
    hit: dict[int, int] = {}
    next_state = 1
    for e in range(2, k + 1, 2):
        if e != k:
            wait[e] = next_state
            next_state += 1
        hit[e] = next_state
        next_state += 1
    assert next_state == k

    transitions: dict[tuple[int, str], set[int]] = {}

    def add(src: int, sym: int, dst: int) -> None:
        transitions.setdefault((src, str(sym)), set()).add(dst)

    for sym in range(1, k + 1):
        add(guess, sym, guess)
        for e in hit:
            # enter the e-checker while reading a symbol the checker allows
            if sym == e:
                add(guess, sym, hit[e])
            elif sym > e and e in wait:
                add(guess, sym, wait[e])
    for e in hit:
        for sym in range(e, k + 1):
            if e in wait:
                add(wait[e], sym, hit[e] if sym == e else wait[e])
            if sym == e:
                add(hit[e], sym, hit[e])
            elif e in wait:
                add(hit[e], sym, wait[e])
    return Automaton(
        alphabet=Alphabet(symbols),
        state_count=k,
        initial=guess,
        transitions={key: frozenset(v) for key, v in transitions.items()},
        acceptance=BuchiAcceptance(frozenset(hit.values())),
        deterministic=False,
    )


def reachable_states(a: Automaton) -> frozenset[int]:
    seen = {a.initial}
    frontier = [a.initial]
    while frontier:
        nxt = []
        for s in frontier:
            for sym in a.alphabet:
                for t in a.successors(s, sym):
                    if t not in seen:
                        seen.add(t)
                        nxt.append(t)
        frontier = nxt
    return frozenset(seen)
