"""Shared fixtures: tiny automata whose languages were worked out by hand."""

import pytest

from omegadet import (
    Alphabet,
    Automaton,
    BuchiAcceptance,
    ParityAcceptance,
    StreettAcceptance,
)


def make_inf_a() -> Automaton:
    """2-state NBW over {a, b} for "infinitely many a".

    q0 -a-> q1, q0 -b-> q0, q1 -a-> q1, q1 -b-> q0, accepting {q1}.
    q1 is entered exactly by reading an a, so it recurs iff a recurs.
    """
    return Automaton(
        alphabet=Alphabet(("a", "b")),
        state_count=2,
        initial=0,
        transitions={
            (0, "a"): frozenset({1}),
            (0, "b"): frozenset({0}),
            (1, "a"): frozenset({1}),
            (1, "b"): frozenset({0}),
        },
        acceptance=BuchiAcceptance(frozenset({1})),
    )


def make_inf_a_dpw() -> Automaton:
    """2-state DPW over {a, b}: accept iff a is read infinitely often.

    State 0 = "just read a" (priority 0), state 1 = "just read b"
    (priority 1); min-even over the cycle decides.
    """
    return Automaton(
        alphabet=Alphabet(("a", "b")),
        state_count=2,
        initial=1,
        transitions={
            (0, "a"): frozenset({0}),
            (0, "b"): frozenset({1}),
            (1, "a"): frozenset({0}),
            (1, "b"): frozenset({1}),
        },
        acceptance=ParityAcceptance((0, 1), 2),
        deterministic=True,
    )


def make_fair_nsw() -> Automaton:
    """2-state NSW over {r, g, n}: visiting state 0 forever demands visits to 1.

    Single pair (R={1}, G={0}).  Words ending in g^omega park in state 1
    (G never recurs); words cycling r,g alternate both states.
    """
    return Automaton(
        alphabet=Alphabet(("r", "g", "n")),
        state_count=2,
        initial=0,
        transitions={
            (0, "r"): frozenset({0}),
            (0, "g"): frozenset({1}),
            (0, "n"): frozenset({0}),
            (1, "r"): frozenset({0}),
            (1, "g"): frozenset({1}),
            (1, "n"): frozenset({1}),
        },
        acceptance=StreettAcceptance(((frozenset({1}), frozenset({0})),)),
    )


def make_loop_nsw(pairs) -> Automaton:
    """1-state NSW looping on {a, b}; the Streett pairs are the whole story."""
    return Automaton(
        alphabet=Alphabet(("a", "b")),
        state_count=1,
        initial=0,
        transitions={(0, "a"): frozenset({0}), (0, "b"): frozenset({0})},
        acceptance=StreettAcceptance(
            tuple((frozenset(r), frozenset(g)) for r, g in pairs)
        ),
    )


@pytest.fixture
def inf_a() -> Automaton:
    return make_inf_a()


@pytest.fixture
def inf_a_dpw() -> Automaton:
    return make_inf_a_dpw()


@pytest.fixture
def fair_nsw() -> Automaton:
    return make_fair_nsw()
