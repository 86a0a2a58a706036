"""Local division: ecart, S-polynomials, and Mora's weak normal form.

Division under a local ordering may multiply the dividend by a unit; the
unit and the quotients are returned, and the division identity

    unit * f  ==  sum(q_j * g_j)  +  remainder

is re-checked exactly on every call, so each result is a self-verifying
certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .orderings import ArityMismatchError, Monomial, OrderingSpec
from .poly import Polynomial, mono_deg, mono_div, mono_divides, mono_lcm, mono_mul


class ResourceLimitError(RuntimeError):
    """A watchdog budget (reduction steps or S-pairs) ran out."""

    def __init__(self, message: str, partial_log=None):
        super().__init__(message)
        self.partial_log = partial_log


def ecart(f: Polynomial) -> int:
    """Degree spread of ``f``: maximal degree minus degree of the leading term."""
    if f.is_zero:
        raise ValueError("ecart of the zero polynomial is undefined")
    return f.degree - mono_deg(f.leading_monomial)


def s_polynomial(f: Polynomial, g: Polynomial, ordering: OrderingSpec | None = None) -> Polynomial:
    """S-pair of ``f`` and ``g``: leading terms cancel against their lcm."""
    if f.is_zero or g.is_zero:
        raise ValueError("S-polynomial of a zero polynomial")
    if ordering is not None and (ordering != f.ordering or ordering != g.ordering):
        raise ArityMismatchError("polynomials were built under a different ordering")
    if f.ordering != g.ordering:
        raise ArityMismatchError("operands use different orderings")
    lmf, lmg = f.leading_monomial, g.leading_monomial
    lcm = mono_lcm(lmf, lmg)
    return f.mul_term(1, mono_div(lcm, lmf)) - g.mul_term(
        f.leading_coeff / g.leading_coeff, mono_div(lcm, lmg)
    )


def default_tail_degree(divisors) -> int:
    """Truncation bound for tail reduction: two past the largest divisor degree."""
    return 2 + max(g.degree for g in divisors)


@dataclass(frozen=True)
class DivisionResult:
    unit: Polynomial
    quotients: tuple[Polynomial, ...]
    remainder: Polynomial
    steps: int


class _Reducer:
    __slots__ = ("coeffs", "lm", "lc", "ecart", "gen_index", "unit", "quots")

    def __init__(self, coeffs, lm, lc, ec, gen_index=None, unit=None, quots=None):
        self.coeffs = coeffs
        self.lm = lm
        self.lc = lc
        self.ecart = ec
        self.gen_index = gen_index  # None for an adjoined partial remainder
        self.unit = unit
        self.quots = quots


def _sub_scaled(target: dict, source: dict, c: Fraction, m: Monomial) -> None:
    """In place: target -= c * x^m * source."""
    for sm, sc in source.items():
        key = mono_mul(sm, m)
        v = target.get(key, Fraction(0)) - c * sc
        if v:
            target[key] = v
        else:
            target.pop(key, None)


def _add_term(target: dict, m: Monomial, c: Fraction) -> None:
    v = target.get(m, Fraction(0)) + c
    if v:
        target[m] = v
    else:
        target.pop(m, None)


def mora_weak_nf(
    f: Polynomial,
    divisors,
    ordering: OrderingSpec | None = None,
    *,
    tail: bool = True,
    tail_degree: int | None = None,
    max_steps: int = 1_000_000,
    verify: bool = True,
) -> DivisionResult:
    """Mora's weak normal form of ``f`` with respect to ``divisors``.

    The main loop reduces the leading term while any divisor's leading
    monomial divides it, choosing the reducer of minimal ecart (ties by
    insertion position); when the chosen reducer has larger ecart than the
    current dividend, the dividend itself joins the reducer pool, which is
    what makes the loop terminate on polynomial input and introduces the
    unit factor.  Afterwards remaining terms of degree at most
    ``tail_degree`` (default: two past the largest divisor degree) are
    reduced against the original divisors only; full tail reduction need
    not terminate under a local ordering.
    """
    divisors = tuple(divisors)
    if not divisors:
        raise ValueError("at least one divisor is required")
    ordering = ordering or f.ordering
    if ordering != f.ordering:
        raise ArityMismatchError("dividend was built under a different ordering")
    for g in divisors:
        if g.is_zero:
            raise ValueError("zero divisor in the divisor set")
        if g.ordering != ordering:
            raise ArityMismatchError("divisor was built under a different ordering")

    key = ordering.local_key
    ngen = len(divisors)
    zero_mono = (0,) * ordering.num_vars

    pool: list[_Reducer] = []
    for g in divisors:
        lm = g.leading_monomial
        pool.append(
            _Reducer(g.coeffs, lm, g.coeffs[lm], g.degree - mono_deg(lm), gen_index=len(pool))
        )

    h: dict[Monomial, Fraction] = dict(f.coeffs)
    unit: dict[Monomial, Fraction] = {zero_mono: Fraction(1)}
    quots: list[dict[Monomial, Fraction]] = [dict() for _ in range(ngen)]
    steps = 0

    def spend() -> None:
        nonlocal steps
        steps += 1
        if steps > max_steps:
            raise ResourceLimitError(f"division exceeded {max_steps} reduction steps")

    while h:
        hm = max(h, key=key)
        hc = h[hm]
        chosen = None
        for red in pool:
            if mono_divides(red.lm, hm) and (chosen is None or red.ecart < chosen.ecart):
                chosen = red
        if chosen is None:
            break
        h_ecart = max(mono_deg(m) for m in h) - mono_deg(hm)
        if chosen.ecart > h_ecart:
            pool.append(
                _Reducer(
                    dict(h),
                    hm,
                    hc,
                    h_ecart,
                    unit=dict(unit),
                    quots=[dict(q) for q in quots],
                )
            )
        spend()
        tm = mono_div(hm, chosen.lm)
        tc = hc / chosen.lc
        _sub_scaled(h, chosen.coeffs, tc, tm)
        if chosen.gen_index is not None:
            _add_term(quots[chosen.gen_index], tm, tc)
        else:
            _sub_scaled(unit, chosen.unit, tc, tm)
            for j in range(ngen):
                _sub_scaled(quots[j], chosen.quots[j], tc, tm)

    if tail and h:
        bound = tail_degree if tail_degree is not None else default_tail_degree(divisors)
        gens = pool[:ngen]
        while True:
            target = None
            for m in h:
                if mono_deg(m) > bound:
                    continue
                if any(mono_divides(g.lm, m) for g in gens):
                    if target is None or key(m) > key(target):
                        target = m
            if target is None:
                break
            chosen = None
            for g in gens:
                if mono_divides(g.lm, target) and (chosen is None or g.ecart < chosen.ecart):
                    chosen = g
            spend()
            tm = mono_div(target, chosen.lm)
            tc = h[target] / chosen.lc
            _sub_scaled(h, chosen.coeffs, tc, tm)
            _add_term(quots[chosen.gen_index], tm, tc)

    unit_poly = Polynomial(ordering, unit)
    quot_polys = tuple(Polynomial(ordering, q) for q in quots)
    remainder = Polynomial(ordering, h)
    result = DivisionResult(unit_poly, quot_polys, remainder, steps)
    if verify:
        verify_division(f, divisors, result)
    return result


def verify_division(f: Polynomial, divisors, result: DivisionResult) -> None:
    """Exact re-check of the weak normal form contract; raises on failure."""
    acc = result.unit * f
    for q, g in zip(result.quotients, divisors):
        acc = acc - q * g
    if acc != result.remainder:
        raise ArithmeticError("division identity unit*f == sum(q_j*g_j) + r failed")
    zero_mono = (0,) * f.ordering.num_vars
    if result.unit.coeff(zero_mono) != 1:
        raise ArithmeticError("division unit must have constant term 1")
    r_lm = result.remainder.leading_monomial
    if r_lm is not None and any(
        mono_divides(g.leading_monomial, r_lm) for g in divisors
    ):
        raise ArithmeticError("remainder leading term is still divisible by a divisor")
    key = f.ordering.local_key
    if not f.is_zero:
        f_key = key(f.leading_monomial)
        for q, g in zip(result.quotients, divisors):
            if q.is_zero:
                continue
            if key(mono_mul(q.leading_monomial, g.leading_monomial)) > f_key:
                raise ArithmeticError("quotient term exceeds the dividend's leading term")
