"""JSON documents for games, machines and observation layers.

Every document has ``format_version`` (currently 1) and ``kind``.  Rationals
are strings ``"num/den"``; nested maps are keyed by identifiers, e.g. a
machine's update is ``{memory: {state: {action: {memory': "p"}}}}``.
:func:`dumps` is canonical (sorted keys, fixed indentation) so that
emit -> parse -> emit is byte-identical.
"""
from __future__ import annotations

import json
from pathlib import Path

from .game import Game
from .imperfect import ObservationLayer
from .machine import MealyMachine
from .probability import InputError, format_fraction, to_fraction

FORMAT_VERSION = 1


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _dist(d: dict) -> dict:
    return {k: format_fraction(v) for k, v in d.items()}


# --- emit -------------------------------------------------------------------

def game_to_json(game: Game) -> dict:
    delta = {}
    for (s, a), row in game.delta.items():
        delta.setdefault(s, {})[a] = _dist(row)
    return {
        "format_version": FORMAT_VERSION,
        "kind": "game",
        "states": list(game.states),
        "actions": list(game.actions),
        "owner": dict(game.owner),
        "enabled": {s: list(acts) for s, acts in game.enabled.items()},
        "delta": delta,
    }


def machine_to_json(machine: MealyMachine, kind: str = "machine") -> dict:
    nxt, up = {}, {}
    for (m, s), row in machine.next_move.items():
        nxt.setdefault(m, {})[s] = _dist(row)
    for (m, s, a), row in machine.update.items():
        up.setdefault(m, {}).setdefault(s, {})[a] = _dist(row)
    return {
        "format_version": FORMAT_VERSION,
        "kind": kind,
        "player": machine.player,
        "memory": list(machine.memory),
        "init": _dist(machine.init),
        "next_move": nxt,
        "update": up,
    }


def layer_to_json(layer: ObservationLayer) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "layer",
        "player": layer.player,
        "state_obs": dict(layer.state_obs),
        "action_obs": dict(layer.action_obs),
    }


# --- parse --------------------------------------------------------------------

class _Reader:
    """Field access that reports the JSON path of whatever is wrong."""

    def __init__(self, source: str):
        self.source = source

    def fail(self, path: str, message: str):
        raise InputError(f"{self.source}: {path or '<root>'}: {message}")

    def obj(self, value, path: str) -> dict:
        if not isinstance(value, dict):
            self.fail(path, f"expected an object, got {type(value).__name__}")
        return value

    def field(self, doc: dict, key: str, path: str):
        if key not in doc:
            self.fail(path, f"missing field {key!r}")
        return doc[key]

    def strings(self, value, path: str) -> list:
        if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
            self.fail(path, "expected a list of strings")
        return value

    def player(self, value, path: str) -> int:
        if not isinstance(value, int) or isinstance(value, bool):
            self.fail(path, "player ids are integers")
        return value

    def dist(self, value, path: str) -> dict:
        out = {}
        for k, v in self.obj(value, path).items():
            if not isinstance(v, str):
                self.fail(f"{path}.{k}", 'probabilities are strings such as "1/2"')
            try:
                out[k] = to_fraction(v)
            except InputError as exc:
                self.fail(f"{path}.{k}", str(exc))
        return out

    def header(self, doc, kinds) -> dict:
        doc = self.obj(doc, "")
        version = self.field(doc, "format_version", "")
        if version != FORMAT_VERSION:
            self.fail("format_version", f"unsupported version {version!r}")
        kind = self.field(doc, "kind", "")
        if kind not in kinds:
            self.fail("kind", f"expected one of {sorted(kinds)}, got {kind!r}")
        return doc


def game_from_json(doc, source: str = "game") -> Game:
    r = _Reader(source)
    doc = r.header(doc, {"game"})
    owner = {}
    for s, p in r.obj(r.field(doc, "owner", ""), "owner").items():
        owner[s] = r.player(p, f"owner.{s}")
    for s in r.strings(doc.get("states", []), "states"):
        if s not in owner:
            r.fail("states", f"state {s!r} has no owner")
    enabled = {s: r.strings(v, f"enabled.{s}") for s, v in r.obj(r.field(doc, "enabled", ""), "enabled").items()}
    delta = {}
    for s, rows in r.obj(r.field(doc, "delta", ""), "delta").items():
        for a, row in r.obj(rows, f"delta.{s}").items():
            delta[(s, a)] = r.dist(row, f"delta.{s}.{a}")
    return Game(owner, enabled, delta, tuple(r.strings(doc.get("actions", []), "actions")))


def machine_from_json(doc, source: str = "machine", kinds=("machine", "observation-machine")) -> MealyMachine:
    r = _Reader(source)
    doc = r.header(doc, set(kinds))
    nxt, up = {}, {}
    for m, rows in r.obj(r.field(doc, "next_move", ""), "next_move").items():
        for s, row in r.obj(rows, f"next_move.{m}").items():
            nxt[(m, s)] = r.dist(row, f"next_move.{m}.{s}")
    for m, by_state in r.obj(r.field(doc, "update", ""), "update").items():
        for s, by_action in r.obj(by_state, f"update.{m}").items():
            for a, row in r.obj(by_action, f"update.{m}.{s}").items():
                up[(m, s, a)] = r.dist(row, f"update.{m}.{s}.{a}")
    return MealyMachine(r.player(r.field(doc, "player", ""), "player"),
                        r.dist(r.field(doc, "init", ""), "init"), nxt, up,
                        tuple(r.strings(doc.get("memory", []), "memory")))


def layer_from_json(doc, source: str = "layer") -> ObservationLayer:
    r = _Reader(source)
    doc = r.header(doc, {"layer"})
    so = r.obj(r.field(doc, "state_obs", ""), "state_obs")
    ao = r.obj(r.field(doc, "action_obs", ""), "action_obs")
    for where, table in (("state_obs", so), ("action_obs", ao)):
        for k, v in table.items():
            if not isinstance(v, str):
                r.fail(f"{where}.{k}", "observations are strings")
    return ObservationLayer(r.player(r.field(doc, "player", ""), "player"), so, ao)


def load_json(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: malformed JSON ({exc.msg})") from None
