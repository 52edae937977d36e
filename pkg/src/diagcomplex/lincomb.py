"""Sparse exact linear combinations: plain dicts ``key -> Fraction``."""

from fractions import Fraction


def add_term(acc, key, coeff):
    if not coeff:
        return acc
    v = acc.get(key, 0) + coeff
    if v:
        acc[key] = Fraction(v)
    else:
        acc.pop(key, None)
    return acc


def add_into(acc, other, scale=1):
    for k, v in other.items():
        add_term(acc, k, v * scale)
    return acc


def scaled(x, c):
    return {k: Fraction(v) * c for k, v in x.items() if v * c}


def combine(*pairs):
    """``combine((c1, x1), (c2, x2), ...)`` = c1*x1 + c2*x2 + ..."""
    out = {}
    for c, x in pairs:
        add_into(out, x, c)
    return out


def is_zero(x):
    return not any(x.values())
