"""Stability test and Eliahou-Kervaire graded Betti tables.

The closed Betti-number formula applies to stable monomial ideals only;
tables are reported in the quotient convention (homological step zero is
the ring itself) and can be checked exactly against the Hilbert series
through the K-polynomial identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .basis import MonomialIdeal
from .orderings import Monomial
from .poly import mono_deg


class StabilityError(ValueError):
    """The ideal is not stable; check is_stable() before asking for a table."""


def _max_var_position(m: Monomial, precedence: tuple[int, ...]) -> int:
    """1-based position, in precedence order, of the smallest variable in m."""
    last = 0
    for pos, var in enumerate(precedence, start=1):
        if m[var] > 0:
            last = pos
    return last


def is_stable(J: MonomialIdeal, precedence: tuple[int, ...] | None = None) -> bool:
    """Exchange property: for each generator u and each variable larger than
    the smallest one dividing u, swapping one factor up stays in the ideal."""
    precedence = precedence if precedence is not None else tuple(range(J.num_vars))
    for u in J.min_gens:
        mpos = _max_var_position(u, precedence)
        for k in range(1, mpos):
            swapped = list(u)
            swapped[precedence[k - 1]] += 1
            swapped[precedence[mpos - 1]] -= 1
            if not J.contains(tuple(swapped)):
                return False
    return True


@dataclass(frozen=True)
class BettiTable:
    """Graded Betti numbers of a quotient by a stable monomial ideal."""

    num_vars: int
    entries: tuple[tuple[int, int, int], ...]  # (homological step, degree, rank)

    def rank(self, i: int, j: int) -> int:
        for a, b, r in self.entries:
            if (a, b) == (i, j):
                return r
        return 0

    @property
    def projective_dimension(self) -> int:
        return max(i for i, _, _ in self.entries)

    @property
    def max_shift(self) -> int:
        return max(j for _, j, _ in self.entries)

    def shifts(self, i: int) -> tuple[int, ...]:
        """Degrees at homological step i, with multiplicity, ascending."""
        out: list[int] = []
        for a, j, r in self.entries:
            if a == i:
                out.extend([j] * r)
        return tuple(sorted(out))

    def k_polynomial(self) -> tuple[int, ...]:
        """Coefficients of sum_{i,j} (-1)^i rank(i,j) t^j."""
        coeffs = [0] * (self.max_shift + 1)
        for i, j, r in self.entries:
            coeffs[j] += (-1) ** i * r
        return tuple(coeffs)


def ek_betti(J: MonomialIdeal, precedence: tuple[int, ...] | None = None) -> BettiTable:
    """Betti table of the quotient by a stable monomial ideal.

    Each minimal generator of degree d whose smallest variable sits at
    position m contributes C(m-1, i) at step i+1, degree d+i.
    """
    precedence = precedence if precedence is not None else tuple(range(J.num_vars))
    if not is_stable(J, precedence):
        raise StabilityError(
            "the monomial ideal is not stable for this precedence; see is_stable()"
        )
    acc: dict[tuple[int, int], int] = {(0, 0): 1}
    for u in J.min_gens:
        d = mono_deg(u)
        mpos = _max_var_position(u, precedence)
        for i in range(mpos):
            key = (i + 1, d + i)
            acc[key] = acc.get(key, 0) + comb(mpos - 1, i)
    entries = tuple(sorted((i, j, r) for (i, j), r in acc.items()))
    return BettiTable(J.num_vars, entries)


def betti_matches_hilbert(table: BettiTable, hf_values) -> bool:
    """K-polynomial identity: the alternating Betti sum equals the Hilbert
    function convolved with (1-t)^num_vars, exactly, over a window past the
    largest shift."""
    values = list(hf_values)
    n = table.num_vars
    kpoly = table.k_polynomial()
    if len(values) <= table.max_shift:
        raise ValueError("Hilbert window too short to verify the identity")
    for t in range(len(values)):
        lhs = sum(
            (-1) ** j * comb(n, j) * (values[t - j] if t - j >= 0 else 0)
            for j in range(n + 1)
        )
        rhs = kpoly[t] if t < len(kpoly) else 0
        if lhs != rhs:
            return False
    return True
