from fractions import Fraction as F

import pytest
from hypothesis import given

from fmstrat import Game, History, InputError, enumerate_histories, is_valid_extension, parse_word, validate_game
from fmstrat.game import check_history, check_word, history_words, moves
from fmstrat.probability import (
    canonical,
    dirac,
    distribution_problems,
    format_fraction,
    make_dist,
    normalise,
    to_fraction,
    uniform,
)
from fmstrat.witnesses import blowup_game, one_state_game

from conftest import small_instance


# --- probability helpers ----------------------------------------------------

@pytest.mark.parametrize("text,value", [("1/3", F(1, 3)), (" 2 ", F(2)), ("0/5", F(0)), ("-1/2", F(-1, 2))])
def test_to_fraction_parses(text, value):
    assert to_fraction(text) == value


@pytest.mark.parametrize("bad", [0.5, True, "1/0", "x", "1/-2", None])
def test_to_fraction_rejects(bad):
    with pytest.raises(InputError):
        to_fraction(bad)


def test_distribution_helpers():
    assert format_fraction(F(2)) == "2/1"
    assert make_dist({"a": "1/2", "b": 0, "c": "1/2"}) == {"a": F(1, 2), "c": F(1, 2)}
    assert uniform("cba") == {"a": F(1, 3), "b": F(1, 3), "c": F(1, 3)}
    assert dirac("x") == {"x": 1}
    assert normalise({"a": 1, "b": 3}) == {"a": F(1, 4), "b": F(3, 4)}
    assert canonical({"b": F(1, 2), "a": F(1, 2)}) == (("a", F(1, 2)), ("b", F(1, 2)))
    assert distribution_problems({"a": F(1, 2)})
    assert distribution_problems({"a": F(3, 2), "b": F(-1, 2)})
    assert not distribution_problems({"a": F(1, 3), "b": F(2, 3)})


# --- games -------------------------------------------------------------------

def test_one_state_game_shape():
    g = one_state_game()
    assert g.states == ("s",)
    assert g.actions == ("a", "b")
    assert g.players == (1,)
    assert g.is_deterministic()
    assert validate_game(g).ok


def test_validation_reports_every_kind():
    g = Game({"s": 1, "t": 0, "u": 2},
             {"s": ["a", "b"], "t": [], "v": ["a"]},
             {("s", "a"): {"s": F(1, 2)}, ("u", "c"): {"w": 1}})
    kinds = validate_game(g).kinds()
    assert {"owner", "deadlock", "unknown-state", "missing-transition", "disabled-action", "normalisation"} <= kinds
    assert not validate_game(Game({}, {}, {})).ok


def test_report_raises_with_all_messages():
    g = Game({"s": 1}, {"s": ["a"]}, {})
    with pytest.raises(InputError, match="missing-transition"):
        validate_game(g).raise_if_invalid("game")


def test_history_parsing_and_extension():
    h = History.parse("s a t b s")
    assert h.word == (("s", "a"), ("t", "b"))
    assert h.last == "s" and h.first == "s" and len(h) == 2
    assert str(h.extend("a", "t")) == "s a t b s a t"
    assert History.parse("s").first == "s"
    with pytest.raises(InputError):
        History.of("s", "a")
    with pytest.raises(InputError):
        parse_word("s a t")
    assert parse_word(["s", "a"]) == (("s", "a"),)


def test_history_checks():
    g = blowup_game(2)
    check_history(g, History.parse("t a1 s1 b t b s*"))
    with pytest.raises(InputError):
        check_history(g, History.parse("t a1 s2"))
    with pytest.raises(InputError):
        check_word(g, parse_word("t a1 s2 b"))
    with pytest.raises(InputError):
        check_word(g, parse_word("t z"))
    assert is_valid_extension(g, History.parse("t"), "b", "s*")
    assert not is_valid_extension(g, History.parse("t"), "b", "s1")


def test_enumeration_order_is_frozen():
    g = blowup_game(2)
    got = [str(h) for h in enumerate_histories(g, "t", 1)]
    assert got == ["t", "t a1 s1", "t a2 s2", "t b s*"]
    assert list(moves(g, "s1")) == [("a1", "t"), ("b", "t")]
    with pytest.raises(InputError):
        list(enumerate_histories(g, "nowhere", 1))


def test_history_words_prefixes():
    h = History.parse("s a s b s")
    assert [(str(p), a) for p, a in history_words(h)] == [("s", "a"), ("s a s", "b")]


@given(small_instance())
def test_random_games_are_valid(inst):
    game, _ = inst
    assert validate_game(game).ok
    for s in game.states:
        for h in enumerate_histories(game, s, 2):
            check_history(game, h)
