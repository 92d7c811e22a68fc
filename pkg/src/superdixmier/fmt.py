"""Shared text formatting for linear combinations with exact coefficients."""

from fractions import Fraction

from .exactlin.scalars import Surd, format_scalar


def _split_sign(c):
    """Return (negative?, magnitude string, needs parentheses?)."""
    if isinstance(c, Surd):
        if len(c.coeffs) == 1:
            (m, q), = c.coeffs.items()
            mag = format_scalar(Surd._make(c.tower, {m: abs(q)}))
            return q < 0, mag, False
        return False, format_scalar(c), True
    c = Fraction(c)
    return c < 0, format_scalar(abs(c)), False


def format_sum(terms):
    """terms: iterable of (coefficient, body) with body "" meaning a scalar term."""
    out = []
    for c, body in terms:
        if not c:
            continue
        neg, mag, paren = _split_sign(c)
        if paren:
            mag = "(" + mag + ")"
        if body:
            text = body if mag == "1" else mag + "*" + body
        else:
            text = mag
        if not out:
            out.append(("-" if neg else "") + text)
        else:
            out.append(("- " if neg else "+ ") + text)
    return " ".join(out) if out else "0"


def format_vector(v, labels):
    return format_sum((c, lab) for c, lab in zip(v, labels))
