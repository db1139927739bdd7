import itertools

import pytest
from hypothesis import settings, strategies as st

from fmstrat.random_instances import random_instance

settings.register_profile("default", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("default")

seeds = st.integers(min_value=0, max_value=10 ** 6)


def small_instance(cls="RRR", **kw):
    """Strategy producing ``(game, machine)`` pairs of the given class."""
    kw.setdefault("max_states", 3)
    kw.setdefault("max_actions", 2)
    kw.setdefault("max_memory", 3)
    return seeds.map(lambda s: random_instance(s, cls=cls, **kw))


def consistent_words(machine, game, max_len):
    """Every word of at most ``max_len`` steps that respects the game and the machine."""
    from fmstrat import is_consistent

    pairs = [(s, a) for s in game.states for a in game.enabled[s]]
    for n in range(max_len + 1):
        for w in itertools.product(pairs, repeat=n):
            if any(w[i + 1][0] not in game.successors(*w[i]) for i in range(n - 1)):
                continue
            if is_consistent(machine, game, w):
                yield w


ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)


@pytest.fixture
def one_state():
    from fmstrat.witnesses import one_state_game
    return one_state_game()
