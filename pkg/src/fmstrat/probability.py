"""Exact probability helpers.

All probabilities in the library are :class:`fractions.Fraction` values and
distributions are plain ``dict`` objects mapping an outcome to its mass.
Zero-mass entries are never stored, so ``dist.keys()`` is the support.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping, TypeVar

T = TypeVar("T", bound=Hashable)

Distribution = dict  # outcome -> Fraction, zero entries dropped

ZERO = Fraction(0)
ONE = Fraction(1)


class FMError(Exception):
    """Base class for library errors."""


class InputError(FMError, ValueError):
    """Raised when an operation receives an argument violating its precondition."""


def to_fraction(value) -> Fraction:
    """Coerce ``value`` to an exact rational.

    Accepts ints, Fractions and strings such as ``"1/3"`` or ``"2"``.
    Floats are rejected on purpose: they would silently lose exactness.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a probability: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            num, _, den = text.partition("/")
            if den and int(den) <= 0:
                raise InputError(f"denominator must be positive in {value!r}")
            return Fraction(int(num), int(den)) if den else Fraction(int(num))
        except ValueError as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"malformed rational {value!r}") from None
    raise InputError(f"cannot use {type(value).__name__} {value!r} as an exact probability")


def format_fraction(value: Fraction) -> str:
    """Canonical ``"num/den"`` text (always with an explicit denominator)."""
    return f"{value.numerator}/{value.denominator}"


def make_dist(entries: Mapping | Iterable) -> dict:
    """Build a distribution, coercing masses to Fractions and dropping zeros.

    No normalisation check happens here; see :func:`distribution_problems`.
    """
    items = entries.items() if isinstance(entries, Mapping) else entries
    out = {}
    for key, value in items:
        p = to_fraction(value)
        if p != 0:
            out[key] = out.get(key, ZERO) + p
    return out


def dirac(outcome) -> dict:
    return {outcome: ONE}


def uniform(outcomes: Iterable) -> dict:
    outcomes = sorted(set(outcomes))
    if not outcomes:
        raise InputError("uniform distribution over an empty set")
    p = Fraction(1, len(outcomes))
    return {o: p for o in outcomes}


def support(dist: Mapping) -> frozenset:
    return frozenset(k for k, v in dist.items() if v != 0)


def is_dirac(dist: Mapping) -> bool:
    return len(support(dist)) == 1


def total_mass(dist: Mapping) -> Fraction:
    return sum(dist.values(), ZERO)


def distribution_problems(dist: Mapping) -> list[str]:
    """Return human-readable reasons why ``dist`` is not a distribution."""
    problems = []
    for key, value in dist.items():
        if not isinstance(value, Fraction):
            problems.append(f"mass of {key!r} is not exact: {value!r}")
        elif value < 0 or value > 1:
            problems.append(f"mass of {key!r} outside [0, 1]: {value}")
    mass = total_mass(dist)
    if mass != 1:
        problems.append(f"masses sum to {mass}, not 1")
    return problems


def normalise(weights: Mapping) -> dict:
    mass = total_mass(weights)
    if mass == 0:
        raise InputError("cannot normalise zero mass")
    return {k: v / mass for k, v in weights.items() if v != 0}


def canonical(dist: Mapping) -> tuple:
    """Hashable, order-independent key for a distribution."""
    return tuple(sorted((k, v) for k, v in dist.items() if v != 0))
