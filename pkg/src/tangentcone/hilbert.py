"""Hilbert functions and series of monomial quotients, Macaulay bounds,
and classification of the computed profiles against the two admissible
shapes for quadratic complete intersection pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .basis import MonomialIdeal
from .poly import mono_deg, monomials_of_degree

SHAPE_INCREASING = "H(e)"
SHAPE_FLAT = "H(n,e)"
SHAPE_OTHER = "other"


class NotStabilizedError(ValueError):
    """The Hilbert function did not reach a constant value in the window."""


@dataclass(frozen=True)
class HilbertFunction:
    """Values HF(0..bound) of a monomial quotient.

    ``stable_value`` is the eventual constant (the multiplicity in the
    one-dimensional case) when the quotient has dimension at most one and
    the values are constant on the tail window; ``stabilization_index`` is
    the least degree attaining it, i.e. the reduction number.
    """

    values: tuple[int, ...]
    dimension: int
    stable_value: int | None
    stabilization_index: int | None

    def __getitem__(self, t: int) -> int:
        return self.values[t]

    def __len__(self) -> int:
        return len(self.values)


def krull_dimension(J: MonomialIdeal) -> int:
    """Dimension of the quotient by a monomial ideal.

    Combinatorial form: the largest number of variables spanning a
    coordinate subspace that meets the ideal only in zero, i.e. the largest
    subset containing no generator's support.  Exhaustive over all subsets.
    """
    n = J.num_vars
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in J.min_gens]
    best = -1
    for mask in range(1 << n):
        subset = frozenset(i for i in range(n) if mask >> i & 1)
        if any(s <= subset for s in supports):
            continue
        best = max(best, len(subset))
    return best if best >= 0 else 0


def hilbert_function(
    J: MonomialIdeal, bound: int, *, detect_stabilization: bool = True
) -> HilbertFunction:
    """Count monomials outside ``J`` degree by degree up to ``bound``.

    With stabilization detection the bound must reach two past the largest
    generator degree; in dimension at most one the values are then constant
    on the final window and the constant is recorded.  In dimension two or
    more the function grows without bound and no constant is reported.
    """
    maxdeg = J.max_degree
    if detect_stabilization and bound < maxdeg + 2:
        raise ValueError(
            f"bound {bound} is too small; stabilization detection needs {maxdeg + 2}"
        )
    values = tuple(
        sum(1 for m in monomials_of_degree(J.num_vars, t) if not J.contains(m))
        for t in range(bound + 1)
    )
    dimension = krull_dimension(J)
    stable = None
    index = None
    if detect_stabilization and dimension <= 1:
        tail = values[maxdeg:]
        if all(v == tail[0] for v in tail):
            stable = tail[0]
            index = 0
            for t in range(len(values) - 1, -1, -1):
                if values[t] != stable:
                    index = t + 1
                    break
    return HilbertFunction(values, dimension, stable, index)


@dataclass(frozen=True)
class HilbertSeries:
    """Series numerator over (1 - t)^denominator_exponent."""

    numerator: tuple[int, ...]
    denominator_exponent: int

    def expand(self, bound: int) -> tuple[int, ...]:
        """Coefficients 0..bound of the expanded series."""
        coeffs = list(self.numerator) + [0] * max(0, bound + 1 - len(self.numerator))
        coeffs = coeffs[: bound + 1]
        for _ in range(self.denominator_exponent):
            for t in range(1, bound + 1):
                coeffs[t] += coeffs[t - 1]
        return tuple(coeffs)


def hilbert_series(hf: HilbertFunction, dimension: int | None = None) -> HilbertSeries:
    """Exact numerator of the Hilbert series of a stabilized function.

    Dimension one requires a detected constant tail; dimension zero a tail
    of zeros.  The numerator is the alternating binomial transform of the
    values and must terminate inside the computed window.
    """
    d = hf.dimension if dimension is None else dimension
    if d > 1:
        raise NotStabilizedError("dimension exceeds one: the series has no finite numerator over (1-t)^d")
    if d == 1 and hf.stable_value is None:
        raise NotStabilizedError("Hilbert function did not stabilize in the computed window")
    if d == 0 and hf.values[-1] != 0:
        raise NotStabilizedError("an Artinian quotient must reach zero in the window")
    values = hf.values
    coeffs = [
        sum((-1) ** j * comb(d, j) * (values[t - j] if t - j >= 0 else 0) for j in range(d + 1))
        for t in range(len(values))
    ]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    numerator = tuple(coeffs) if coeffs else (0,)
    if sum(numerator) == 0 and any(numerator):
        raise NotStabilizedError("series numerator vanishes at 1 before cancellation")
    return HilbertSeries(numerator, d)


# -- Macaulay bounds -----------------------------------------------------------

@dataclass(frozen=True)
class MacaulayExpansion:
    """Greedy binomial expansion of c with top index n."""

    c: int
    n: int
    terms: tuple[tuple[int, int], ...]  # (c_k, k), k descending

    def value(self) -> int:
        return sum(comb(ck, k) for ck, k in self.terms)

    def bound(self) -> int:
        return sum(comb(ck + 1, k + 1) for ck, k in self.terms)


def binomial_expansion(c: int, n: int) -> MacaulayExpansion:
    """The unique expansion c = C(c_n, n) + C(c_{n-1}, n-1) + ... with
    c_n > c_{n-1} > ... >= k >= 1, found greedily."""
    if c < 1 or n < 1:
        raise ValueError("both arguments must be positive")
    remaining = c
    terms = []
    k = n
    while remaining > 0 and k >= 1:
        ck = k
        while comb(ck + 1, k) <= remaining:
            ck += 1
        terms.append((ck, k))
        remaining -= comb(ck, k)
        k -= 1
    if remaining:
        raise ArithmeticError("greedy expansion failed to terminate")
    return MacaulayExpansion(c, n, tuple(terms))


def macaulay_bound(c: int, n: int) -> int:
    """Largest admissible next value after c in degree n."""
    return binomial_expansion(c, n).bound()


def admissible_check(values) -> bool:
    """Macaulay admissibility: starts at one and never overshoots the bound."""
    values = list(values)
    if not values or values[0] != 1:
        return False
    for i in range(1, len(values) - 1):
        if values[i] < 0 or values[i + 1] < 0:
            return False
        if values[i] == 0:
            if values[i + 1] != 0:
                return False
            continue
        if values[i + 1] > macaulay_bound(values[i], i):
            return False
    return True


# -- classification -------------------------------------------------------------

#: keys of the named checks reported by classify_hf
CHECK_KEYS = (
    "type2b_profile",
    "flat_multiplicity_bound",
    "flat_count_multiplicity_bound",
    "macaulay_admissible",
    "cm_tangent_cone",
)


@dataclass(frozen=True)
class HFClassification:
    multiplicity: int
    reduction_number: int
    first_flat: int | None
    flats: tuple[int, ...]
    flat_count: int
    shape: str
    checks: dict[str, bool | None]


def _matches_increasing(values, e) -> bool:
    for t, v in enumerate(values):
        want = 1 if t == 0 else (t + 2 if t <= e - 3 else e)
        if v != want:
            return False
    return True


def _matches_flat(values, e, n) -> bool:
    for t, v in enumerate(values):
        if t == 0:
            want = 1
        elif t <= n:
            want = t + 2
        elif t <= e - 2:
            want = t + 1
        else:
            want = e
        if v != want:
            return False
    return True


def classify_hf(hf: HilbertFunction, pair_type: tuple[int, int] | None = None) -> HFClassification:
    """Flats, shape match and the named theorem checks for a stabilized
    Hilbert function.

    ``pair_type`` is the (a, b) order pair of the generators when known; the
    type-(2,b) profile check is only evaluated with such a hint.  Checks tied
    to the existence of a flat are None when there is none.
    """
    if hf.stable_value is None:
        raise NotStabilizedError("classification needs a stabilized Hilbert function")
    e = hf.stable_value
    values = hf.values
    r = hf.stabilization_index
    flats = tuple(
        t for t in range(len(values) - 1) if values[t] == values[t + 1] and values[t] < e
    )
    first_flat = flats[0] if flats else None
    p = len(flats)

    strictly_increasing = all(values[t] < values[t + 1] for t in range(r))

    checks: dict[str, bool | None] = {}
    if pair_type is not None and pair_type[0] == 2:
        b = pair_type[1]
        profile = values[0] == 1
        for j in range(1, min(b, len(values))):
            profile = profile and values[j] == 2 * j + 1
        if b < len(values):
            profile = profile and values[b] == 2 * b
        for j in range(b, len(values) - 1):
            profile = profile and 0 <= values[j + 1] - values[j] <= 1
        profile = profile and p <= b - 1
        checks["type2b_profile"] = profile
    else:
        checks["type2b_profile"] = None
    checks["flat_multiplicity_bound"] = None if first_flat is None else e <= 2 * first_flat
    checks["flat_count_multiplicity_bound"] = (
        None if first_flat is None else e <= (p + 1) * first_flat
    )
    checks["macaulay_admissible"] = admissible_check(values)
    checks["cm_tangent_cone"] = strictly_increasing

    if not flats and _matches_increasing(values, e):
        shape = SHAPE_INCREASING
    elif len(flats) == 1 and _matches_flat(values, e, flats[0]):
        shape = SHAPE_FLAT
    else:
        shape = SHAPE_OTHER
    return HFClassification(e, r, first_flat, flats, p, shape, checks)
