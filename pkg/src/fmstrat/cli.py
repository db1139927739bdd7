"""Command-line front end.

Machines, games and layers are given as JSON files or as gallery names
(``rrd_witness``, ``imperfect_fixture/obs_rdd``, ``blowup(3)``...).  A
gallery machine brings its own game, so ``--game`` is only needed for files.

Results go to stdout as JSON; diagnostics go to stderr.  Exit codes: 0 for
success or equivalence, 1 for a detected difference, 2 for invalid input.
"""
from __future__ import annotations

import argparse
import sys
from collections import Counter
from pathlib import Path

from . import formats
from .equivalence import bounded_depth_check, cylinder_probability, exact_equivalence
from .game import History, parse_word, validate_game
from .imperfect import check_uniformity, lift, validate_layer, validate_observation_machine
from .machine import classify, validate_machine
from .probability import FMError, InputError, format_fraction
from .sampling import SampleConfig, compare_by_sampling, empirical_cylinder_estimate, sample_play, uniform_opponents
from .transforms import reachable_trim, rdd_to_drd, rrr_to_drr, rrr_to_rdr
from .witnesses import entry, gallery, machine_by_name, run_facts, support_size_trace

EXIT_OK, EXIT_DIFFERENT, EXIT_INVALID = 0, 1, 2


def _emit(doc) -> None:
    sys.stdout.write(formats.dumps(doc))


def _is_file(text: str) -> bool:
    return text.endswith(".json") or Path(text).is_file()


def _load_game(arg):
    return formats.game_from_json(formats.load_json(arg), arg)


def _load_machine(arg, game_arg):
    """``(game, machine)`` from a file (needs ``--game``) or a gallery name."""
    if _is_file(arg):
        doc = formats.load_json(arg)
        if isinstance(doc, dict) and doc.get("kind") == "observation-machine":
            raise InputError(f"{arg}: observation machine; convert it with 'fmstrat obs lift' first")
        machine = formats.machine_from_json(doc, arg)
        if game_arg is None:
            raise InputError(f"{arg}: --game is required for machine files")
        return _load_game(game_arg), machine
    game, machine = machine_by_name(arg)
    if game_arg is not None:
        game = _load_game(game_arg)
    return game, machine


def _checked(game, machine, what="machine"):
    validate_game(game).raise_if_invalid("game")
    validate_machine(machine, game).raise_if_invalid(what)
    return game, machine


def _opponents(args, game, player):
    profile = {}
    for arg in args.opponent or ():
        _, m = _load_machine(arg, args.game)
        validate_machine(m, game).raise_if_invalid(f"opponent {arg}")
        profile[m.player] = m
    for p, m in uniform_opponents(game, player).items():
        profile.setdefault(p, m)
    return profile


# --- subcommands -------------------------------------------------------------

def cmd_validate(args) -> int:
    if not _is_file(args.target):
        game, machine = machine_by_name(args.target)
        report = validate_machine(machine, game)
        kind = "machine"
    else:
        doc = formats.load_json(args.target)
        kind = doc.get("kind") if isinstance(doc, dict) else None
        if kind == "game":
            report = validate_game(formats.game_from_json(doc, args.target))
        elif kind == "layer":
            if args.game is None:
                raise InputError("--game is required to validate a layer")
            report = validate_layer(formats.layer_from_json(doc, args.target), _load_game(args.game))
        else:
            if args.game is None:
                raise InputError("--game is required to validate a machine")
            report = validate_machine(formats.machine_from_json(doc, args.target), _load_game(args.game))
    _emit({"kind": kind, "ok": report.ok, "violations": [
        {"kind": v.kind, "where": v.where, "message": v.message} for v in report]})
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_classify(args) -> int:
    game, machine = _checked(*_load_machine(args.machine, args.game))
    _emit({"class": str(classify(machine)), "memory_states": len(machine)})
    return EXIT_OK


def cmd_transform(args) -> int:
    game, machine = _checked(*_load_machine(args.machine, args.game))
    if args.trim in ("before", "both"):
        machine = reachable_trim(machine, game)
    if args.kind == "rdd-to-drd":
        out = rdd_to_drd(machine, game)
    elif args.kind == "rrr-to-drr":
        out = rrr_to_drr(machine, game)
    else:
        order = args.order.split(",") if args.order else None
        out = rrr_to_rdr(machine, game, order)
    if args.trim in ("after", "both"):
        out = reachable_trim(out, game)
    _emit(formats.machine_to_json(out))
    return EXIT_OK


def _inits(args, game):
    if args.init:
        if args.init not in game.owner:
            raise InputError(f"unknown initial state {args.init!r}")
        return (args.init,)
    return game.states


def cmd_equiv(args) -> int:
    game, left = _checked(*_load_machine(args.left, args.game))
    _, right = _load_machine(args.right, args.game)
    validate_machine(right, game).raise_if_invalid("right machine")
    method, _, rest = args.method.partition(":")
    if method == "exact":
        verdict = exact_equivalence(left, right, game, _inits(args, game))
    elif method == "bounded":
        try:
            depth = int(rest)
        except ValueError:
            raise InputError(f"bad depth in --method {args.method!r}") from None
        verdict = bounded_depth_check(left, right, game, depth, _inits(args, game))
    elif method == "sample":
        try:
            n, seed = (int(x) for x in rest.split(":"))
        except ValueError:
            raise InputError(f"expected sample:<n>:<seed>, got {args.method!r}") from None
        results = [compare_by_sampling(left, right, game, s, n, seed, args.steps) for s in _inits(args, game)]
        worst = max(zip(results, _inits(args, game)), key=lambda r: r[0].z)
        doc = worst[0].to_json()
        doc["init"] = worst[1]
        _emit(doc)
        return EXIT_DIFFERENT if worst[0].distinguishable else EXIT_OK
    else:
        raise InputError(f"unknown method {args.method!r}")
    _emit(verdict.to_json())
    return EXIT_OK if verdict.equivalent else EXIT_DIFFERENT


def cmd_prob(args) -> int:
    game, machine = _checked(*_load_machine(args.machine, args.game))
    h = History.parse(args.history)
    p = cylinder_probability(game, machine, _opponents(args, game, machine.player), args.init, h)
    _emit({"history": str(h), "init": args.init, "probability": format_fraction(p)})
    return EXIT_OK


def cmd_simulate(args) -> int:
    game, machine = _checked(*_load_machine(args.machine, args.game))
    init = args.init or game.states[0]
    profile = _opponents(args, game, machine.player)
    profile[machine.player] = machine
    if args.history:
        h = History.parse(args.history)
        est = empirical_cylinder_estimate(game, profile, init, h, SampleConfig(args.seed, len(h), args.samples))
        _emit(est.to_json())
        return EXIT_OK
    if args.steps is None:
        raise InputError("simulate needs --steps or --history")
    plays = sample_play(game, profile, init, SampleConfig(args.seed, args.steps, args.samples))
    counts = Counter(str(h) for h in plays)
    _emit({"init": init, "samples": args.samples, "seed": args.seed, "steps": args.steps,
           "counts": dict(sorted(counts.items()))})
    return EXIT_OK


def cmd_trace_support(args) -> int:
    game, machine = _checked(*_load_machine(args.machine, args.game))
    _emit({"word": args.word, "trace": support_size_trace(machine, game, parse_word(args.word))})
    return EXIT_OK


def cmd_gallery(args) -> int:
    if args.action == "list":
        out = []
        for e in gallery():
            results = run_facts(e) if args.check else []
            item = {"name": e.name, "machines": sorted(e.machines), "facts": len(e.facts)}
            if args.check:
                item["failed"] = [f.claim for f, ok in results if not ok]
            out.append(item)
        _emit(out)
        return EXIT_OK if not args.check or all(not i["failed"] for i in out) else EXIT_DIFFERENT
    if not args.name or not args.out:
        raise InputError("gallery emit needs a name and --out")
    e = entry(args.name)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []

    def write(fname, doc):
        path = out_dir / fname
        path.write_text(formats.dumps(doc), encoding="utf-8")
        written.append(str(path))

    write(f"{e.name}.game.json", formats.game_to_json(e.game))
    kind = "observation-machine" if e.layer is not None else "machine"
    for mname, m in sorted(e.machines.items()):
        write(f"{e.name}.{mname}.json", formats.machine_to_json(m, kind))
    if e.layer is not None:
        write(f"{e.name}.layer.json", formats.layer_to_json(e.layer))
    _emit({"written": written})
    return EXIT_OK


def _load_obs(args):
    """``(game, machine, layer)`` for the ``obs`` subcommands."""
    if _is_file(args.machine):
        if args.game is None or args.layer is None:
            raise InputError("--game and --layer are required for machine files")
        machine = formats.machine_from_json(formats.load_json(args.machine), args.machine)
        game = _load_game(args.game)
        layer = formats.layer_from_json(formats.load_json(args.layer), args.layer)
        return game, machine, layer
    e = entry(args.machine.partition("/")[0])
    game, machine = machine_by_name(args.machine)
    layer = e.layer
    if args.game is not None:
        game = _load_game(args.game)
    if args.layer is not None:
        layer = formats.layer_from_json(formats.load_json(args.layer), args.layer)
    if layer is None:
        raise InputError(f"gallery entry {e.name!r} has no observation layer; pass --layer")
    return game, machine, layer


def cmd_obs(args) -> int:
    if args.action == "validate" and _is_file(args.machine) and args.layer is None:
        args.layer, args.machine = args.machine, None
        if args.game is None:
            raise InputError("--game is required")
        report = validate_layer(formats.layer_from_json(formats.load_json(args.layer), args.layer),
                                _load_game(args.game))
        _emit({"ok": report.ok, "violations": [str(v) for v in report]})
        return EXIT_OK if report.ok else EXIT_INVALID
    game, machine, layer = _load_obs(args)
    if args.action == "validate":
        report = validate_layer(layer, game)
        if report.ok:
            report = validate_observation_machine(machine, game, layer)
        _emit({"ok": report.ok, "violations": [str(v) for v in report]})
        return EXIT_OK if report.ok else EXIT_INVALID
    if args.action == "uniformity":
        rep = check_uniformity(machine, game, layer, args.depth)
        _emit({"ok": rep.ok, "words_checked": rep.words_checked,
               "violations": [[" ".join(x for st in w for x in st) for w in pair] for pair in rep.violations]})
        return EXIT_OK if rep.ok else EXIT_DIFFERENT
    _emit(formats.machine_to_json(lift(machine, game, layer)))
    return EXIT_OK


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fmstrat", description="Finite-memory strategies in stochastic games.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        sp.add_argument("--game", help="game JSON file (gallery machines bring their own)")
        return sp

    sp = add("validate", cmd_validate, "validate a game, machine or layer file")
    sp.add_argument("target")

    sp = add("classify", cmd_classify, "print the D/R class of a machine")
    sp.add_argument("machine")

    sp = add("transform", cmd_transform, "apply a class transformation")
    sp.add_argument("machine")
    sp.add_argument("--kind", required=True, choices=["rdd-to-drd", "rrr-to-drr", "rrr-to-rdr"])
    sp.add_argument("--order", help="comma-separated action order for rrr-to-rdr")
    sp.add_argument("--trim", nargs="?", const="after", choices=["before", "after", "both"],
                    help="drop unreachable memory states of the input, the output or both (default after)")

    sp = add("equiv", cmd_equiv, "decide outcome-equivalence")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.add_argument("--method", default="exact", help="exact | bounded:<d> | sample:<n>:<seed>")
    grp = sp.add_mutually_exclusive_group()
    grp.add_argument("--init")
    grp.add_argument("--all-inits", action="store_true")
    sp.add_argument("--steps", type=int, default=4, help="play length for the sample method")

    sp = add("prob", cmd_prob, "exact cylinder probability")
    sp.add_argument("machine")
    sp.add_argument("--init", required=True)
    sp.add_argument("--history", required=True)
    sp.add_argument("--opponent", action="append", help="machine for another player (default: uniform)")

    sp = add("simulate", cmd_simulate, "Monte Carlo simulation")
    sp.add_argument("machine")
    sp.add_argument("--steps", type=int, help="play length (not needed with --history)")
    sp.add_argument("--samples", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--init")
    sp.add_argument("--history", help="estimate the probability of this cylinder instead")
    sp.add_argument("--opponent", action="append")

    sp = add("trace-support", cmd_trace_support, "support sizes of mu along a word")
    sp.add_argument("machine")
    sp.add_argument("--word", required=True)

    sp = sub.add_parser("gallery", help="list or export gallery entries")
    sp.set_defaults(func=cmd_gallery)
    sp.add_argument("action", choices=["list", "emit"])
    sp.add_argument("name", nargs="?")
    sp.add_argument("--out")
    sp.add_argument("--check", action="store_true", help="run every fact (list only)")

    sp = add("obs", cmd_obs, "observation layers and observation-based machines")
    sp.add_argument("action", choices=["validate", "uniformity", "lift"])
    sp.add_argument("machine", help="observation machine (or a layer file for validate)")
    sp.add_argument("--layer")
    sp.add_argument("--depth", type=int, default=4)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits with 2 on usage errors already
        return int(exc.code or 0)
    try:
        return args.func(args)
    except FMError as exc:
        print(f"fmstrat: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
