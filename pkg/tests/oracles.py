"""Independent reference implementations used to freeze expected values.

Everything here works on plain frozensets and dicts of Fractions, never on
the library's bitmask types, so a test comparing the two routes exercises
genuinely different code paths.
"""

from __future__ import annotations

from fractions import Fraction


def psi_oracle(h: frozenset, blocks: list[frozenset], omega: frozenset) -> frozenset:
    out: set = set()
    comp = omega - h
    for block in blocks:
        if h & block:
            out |= comp & block
    return frozenset(out)


def uncertainty_oracle(h: frozenset, blocks: list[frozenset], omega: frozenset) -> frozenset:
    return omega - h - psi_oracle(h, blocks, omega)


def blocks_missed_oracle(h: frozenset, blocks: list[frozenset]) -> frozenset:
    out: set = set()
    for block in blocks:
        if not h & block:
            out |= block
    return frozenset(out)


def prob_oracle(weights: dict, h: frozenset) -> Fraction:
    return sum((weights[o] for o in h), Fraction(0))


def expectation_oracle(weights: dict, values: dict) -> Fraction:
    return sum((weights[o] * values[o] for o in weights), Fraction(0))


def interval_oracle(
    weights: dict, blocks: list[frozenset], omega: frozenset, h: frozenset
) -> tuple[Fraction, Fraction]:
    lo = prob_oracle(weights, h)
    width = prob_oracle(weights, uncertainty_oracle(h, blocks, omega))
    return lo, lo + width


def conditional_oracle(
    weights: dict,
    uncertainty_of,
    a: frozenset,
    h: frozenset,
    omega: frozenset,
) -> tuple[Fraction, Fraction]:
    """Direct expectation form of the conditional.

    `uncertainty_of(event)` returns the uncertainty variable as a dict
    outcome -> Fraction.  The carrier is the indicator of h plus its
    uncertainty variable; the endpoints divide the expectations of
    I_a * carrier and (I_a + Y_a) * carrier by the carrier's expectation.
    """
    y_h = uncertainty_of(h)
    y_a = uncertainty_of(a)
    carrier = {o: (1 if o in h else 0) + y_h[o] for o in omega}
    den = expectation_oracle(weights, carrier)
    lo_num = expectation_oracle(
        weights, {o: (1 if o in a else 0) * carrier[o] for o in omega}
    )
    hi_num = expectation_oracle(
        weights, {o: ((1 if o in a else 0) + y_a[o]) * carrier[o] for o in omega}
    )
    return lo_num / den, hi_num / den
