"""Exact half-integers.

Indices of degenerate symplectic paths live in (1/2)Z.  They are kept as
`fractions.Fraction` values whose denominator is 1 or 2, never as floats,
so identities between indices can be checked exactly.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError


def as_half(value) -> Fraction:
    """Coerce ``value`` to a Fraction with denominator 1 or 2."""
    if isinstance(value, bool):
        raise InputError("booleans are not half-integers")
    if isinstance(value, Fraction):
        q = value
    elif isinstance(value, int):
        q = Fraction(value)
    elif isinstance(value, float):
        q = Fraction(value).limit_denominator(2)
        if q != Fraction(value):
            raise InputError(f"{value!r} is not a half-integer")
    else:
        raise InputError(f"cannot interpret {value!r} as a half-integer")
    if q.denominator not in (1, 2):
        raise InputError(f"{value!r} is not a half-integer")
    return q


def half_to_json(q: Fraction) -> dict:
    q = as_half(q)
    return {"num": q.numerator, "den": q.denominator}


def half_from_json(doc: dict) -> Fraction:
    try:
        num, den = int(doc["num"]), int(doc["den"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"not an index document: {doc!r}") from exc
    if den not in (1, 2):
        raise InputError(f"index denominator must be 1 or 2, got {den}")
    return Fraction(num, den)


def half_str(q: Fraction) -> str:
    q = as_half(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/2"
