"""Sparse linear combinations: ``dict`` from basis key to nonzero coefficient."""

from __future__ import annotations


def add_term(acc: dict, key, coeff) -> None:
    """``acc[key] += coeff``, dropping the key when the sum vanishes."""
    if not coeff:
        return
    if key in acc:
        s = acc[key] + coeff
        if s:
            acc[key] = s
        else:
            del acc[key]
    else:
        acc[key] = coeff


def add_into(acc: dict, other: dict, scale=1, negate: bool = False) -> None:
    for key, c in other.items():
        c = c * scale if scale != 1 else c
        add_term(acc, key, -c if negate else c)


def scaled(vec: dict, scale) -> dict:
    out = {}
    for key, c in vec.items():
        add_term(out, key, c * scale)
    return out


def negated(vec: dict) -> dict:
    return {key: -c for key, c in vec.items()}


def combination(*pairs) -> dict:
    """``combination((v1, c1), (v2, c2), ...)`` is ``c1 v1 + c2 v2 + ...``."""
    out: dict = {}
    for vec, c in pairs:
        add_into(out, vec, c)
    return out


def cleaned(vec: dict) -> dict:
    return {k: c for k, c in vec.items() if c}


def odd(n: int) -> bool:
    return n % 2 == 1


def signed(coeff, exponent: int):
    """``(-1)^exponent * coeff``."""
    return -coeff if exponent % 2 else coeff
