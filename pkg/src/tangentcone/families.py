"""Certified ideal families: parametric builders, the worked-example corpus,
random instance generators, and the analysis pipeline that runs an ideal
through standard basis, Hilbert function and classification.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .basis import (
    MonomialIdeal,
    RegularSequenceCase,
    StandardBasis,
    ideal_type,
    initial_ideal_equal,
    squarefree_quadratic,
    standard_basis,
)
from .hilbert import (
    HFClassification,
    HilbertFunction,
    HilbertSeries,
    NotStabilizedError,
    classify_hf,
    hilbert_function,
    hilbert_series,
)
from .orderings import OrderingSpec
from .parser import parse_ideal, parse_polynomial
from .poly import Polynomial, mono_deg, variables

DEFAULT_ORDERING = OrderingSpec()


class FamilyParameterError(ValueError):
    """Construction rejected; carries the violated conditions by name."""

    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = tuple(violations)


@dataclass(frozen=True)
class Expected:
    """Certified outputs attached to a family instance; None means unpinned."""

    leading_ideal: tuple | None = None
    initial_ideal_gens: tuple | None = None
    hf_values: tuple[int, ...] | None = None  # prefix of the computed values
    hs_numerator: tuple[int, ...] | None = None
    shape: str | None = None
    pair_type: tuple[int, int] | None = None
    multiplicity: int | None = None
    first_flat: int | None = None
    flats: tuple[int, ...] | None = None
    flat_count: int | None = None
    strictly_increasing: bool | None = None
    basis_size: int | None = None
    squarefree_quadric: bool | None = None


@dataclass(frozen=True)
class FamilyInstance:
    name: str
    parameters: Mapping[str, object]
    generators: tuple[Polynomial, ...]
    ordering: OrderingSpec
    expected: Expected | None = None


def _as_poly(ordering: OrderingSpec, value) -> Polynomial:
    if isinstance(value, Polynomial):
        return value
    return Polynomial.constant(ordering, Fraction(value))


def _supported_on(f: Polynomial, allowed: set[int]) -> bool:
    return all(
        all(e == 0 or i in allowed for i, e in enumerate(m)) for m in f.coeffs
    )


def _is_unit_series(f: Polynomial, var: int) -> bool:
    """A unit of the one-variable series subring: support on one variable,
    nonzero constant term."""
    if f.is_zero:
        return False
    zero = (0,) * f.ordering.num_vars
    return _supported_on(f, {var}) and f.coeff(zero) != 0


def _require_three_vars(ordering: OrderingSpec) -> None:
    if ordering.num_vars != 3:
        raise FamilyParameterError(["family builders need exactly three variables"])


# -- parametric builders --------------------------------------------------------


def build_increasing(b: int, e: int, ordering: OrderingSpec = DEFAULT_ORDERING) -> FamilyInstance:
    """Pair (x^2 + y^(e-2b+2), x*y^(b-1)): strictly increasing profile,
    multiplicity e, leading ideal (x^2, x*y^(b-1), y^(e-b+1))."""
    _require_three_vars(ordering)
    violations = []
    if b < 2:
        violations.append("b >= 2")
    if e < 2 * b:
        violations.append("e >= 2b")
    if violations:
        raise FamilyParameterError(violations)
    x, y, z = variables(ordering)
    gens = (x ** 2 + y ** (e - 2 * b + 2), x * y ** (b - 1))
    bound = e - b + 3

    def profile(t: int) -> int:
        if t < b:
            return 2 * t + 1
        if t <= e - b:
            return t + b
        return e

    expected = Expected(
        leading_ideal=((2, 0, 0), (1, b - 1, 0), (0, e - b + 1, 0)),
        hf_values=tuple(profile(t) for t in range(bound + 1)),
        shape="H(e)" if b == 2 else None,
        pair_type=(2, b),
        multiplicity=e,
        first_flat=None,
        flat_count=0,
        strictly_increasing=True,
        basis_size=3,
    )
    return FamilyInstance("increasing", {"b": b, "e": e}, gens, ordering, expected)


def build_flat(n: int, e: int, ordering: OrderingSpec = DEFAULT_ORDERING) -> FamilyInstance:
    """Pair (x^2 - y^(e-2), x*y - z^n): single flat at n, multiplicity e.

    The bound e <= 2n is structural: multiplicities beyond it cannot occur
    with a flat, so such parameters are rejected."""
    _require_three_vars(ordering)
    violations = []
    if n < 3:
        violations.append("n >= 3")
    if e < n + 3:
        violations.append("e >= n + 3")
    if e > 2 * n:
        violations.append("e <= 2n")
    if violations:
        raise FamilyParameterError(violations)
    x, y, z = variables(ordering)
    gens = (x ** 2 - y ** (e - 2), x * y - z ** n)
    expected = Expected(
        leading_ideal=((2, 0, 0), (1, 1, 0), (1, 0, n), (0, e, 0)),
        shape="H(n,e)",
        pair_type=(2, 2),
        multiplicity=e,
        first_flat=n,
        flats=(n,),
        flat_count=1,
        basis_size=4,
    )
    return FamilyInstance("flat", {"n": n, "e": e}, gens, ordering, expected)


def build_flat_general(
    n: int,
    e: int,
    a: int = 0,
    p: int = 2,
    alpha=1,
    H=None,
    L=None,
    ordering: OrderingSpec = DEFAULT_ORDERING,
) -> FamilyInstance:
    """General structure form with a flat at n:

        f = x^2 + a*z^p*(x + H) - H^2 + L,   g = x*y + alpha*z^n + y*H

    All structural conditions are validated exactly; each violated one is
    reported by name."""
    _require_three_vars(ordering)
    x, y, z = variables(ordering)
    alpha = _as_poly(ordering, alpha)
    H = _as_poly(ordering, H) if H is not None else Polynomial.zero(ordering)
    L = _as_poly(ordering, L) if L is not None else Polynomial.zero(ordering)
    violations = []
    if a not in (0, 1):
        violations.append("a in {0, 1}")
    if p < 2:
        violations.append("p >= 2")
    if not _is_unit_series(alpha, 2):
        violations.append("alpha is a unit of the z-series subring")
    if not (_supported_on(H, {1, 2}) and (H.is_zero or H.order >= 2)):
        violations.append("H lies in the (y,z)-subring with order >= 2")
    if not (_supported_on(L, {1, 2}) and (L.is_zero or L.order >= n + 1)):
        violations.append("L lies in the (y,z)-subring with order >= n + 1")
    if not (n + 3 <= e <= 2 * n):
        violations.append("n + 3 <= e <= 2n")
    else:
        w = 2 * alpha * z ** n * H - a * alpha * z ** (n + p) + y * L
        if w.order < e - 1:
            violations.append("order(2*alpha*z^n*H - a*alpha*z^(n+p) + y*L) >= e - 1")
        elif e < 2 * n and w.order != e - 1:
            violations.append(
                "order(2*alpha*z^n*H - a*alpha*z^(n+p) + y*L) == e - 1 when e < 2n"
            )
    if violations:
        raise FamilyParameterError(violations)
    f = x ** 2 + a * z ** p * (x + H) - H ** 2 + L
    g = x * y + alpha * z ** n + y * H
    expected = Expected(
        shape="H(n,e)",
        pair_type=(2, 2),
        multiplicity=e,
        first_flat=n,
        flats=(n,),
        flat_count=1,
    )
    params = {"n": n, "e": e, "a": a, "p": p, "alpha": str(alpha), "H": str(H), "L": str(L)}
    return FamilyInstance("flat_general", params, (f, g), ordering, expected)


def build_increasing_squarefree(
    e: int,
    r: int = 3,
    s: int | None = None,
    d=1,
    alpha=0,
    beta=0,
    F=None,
    ordering: OrderingSpec = DEFAULT_ORDERING,
) -> FamilyInstance:
    """Structure form with square-free quadric part and strictly increasing
    profile:

        f = x^2 + x*z + F,   g = x*y + d*y*z + alpha*y^r + beta*z^s
    """
    _require_three_vars(ordering)
    x, y, z = variables(ordering)
    d = _as_poly(ordering, d)
    alpha = _as_poly(ordering, alpha)
    beta = _as_poly(ordering, beta)
    F = _as_poly(ordering, F) if F is not None else Polynomial.zero(ordering)
    if s is None:
        s = max(3, e - 1)
    zero = (0,) * 3
    violations = []
    if e < 4:
        violations.append("e >= 4")
    if r < 3:
        violations.append("r >= 3")
    if not (_supported_on(d, {1, 2}) and d.coeff(zero) == 1):
        violations.append("d is a unit of the (y,z)-series subring with d(0,0) = 1")
    if not (alpha.is_zero or _is_unit_series(alpha, 1)):
        violations.append("alpha is zero or a unit of the y-series subring")
    if not (beta.is_zero or _is_unit_series(beta, 2)):
        violations.append("beta is zero or a unit of the z-series subring")
    if not beta.is_zero and s < max(3, e - 1):
        violations.append("s >= e - 1 >= 3 when beta is nonzero")
    if not (_supported_on(F, {1, 2}) and (F.is_zero or F.order >= 3)):
        violations.append("F lies in the (y,z)-subring with order >= 3")
    one = Polynomial.constant(ordering, 1)
    w = (
        F
        + d * (d - one) * z ** 2
        + alpha * (2 * d - one) * z * y ** (r - 1)
        + alpha ** 2 * y ** (2 * (r - 1))
    )
    if w.order != e - 2:
        violations.append(
            "order(F + d(d-1)z^2 + alpha(2d-1)z*y^(r-1) + alpha^2*y^(2(r-1))) == e - 2"
        )
    if violations:
        raise FamilyParameterError(violations)
    f = x ** 2 + x * z + F
    g = x * y + d * y * z + alpha * y ** r + beta * z ** s
    expected = Expected(
        shape="H(e)",
        pair_type=(2, 2),
        multiplicity=e,
        first_flat=None,
        flat_count=0,
        strictly_increasing=True,
        squarefree_quadric=True,
    )
    params = {
        "e": e,
        "r": r,
        "s": s,
        "d": str(d),
        "alpha": str(alpha),
        "beta": str(beta),
        "F": str(F),
    }
    return FamilyInstance("increasing_squarefree", params, (f, g), ordering, expected)


def shibuta(b: int, ordering: OrderingSpec = DEFAULT_ORDERING) -> FamilyInstance:
    """Semigroup-ring pair (x*z - y^3, z^b - x^(2b+1)); its profile has
    exactly b - 1 flats.  The engine-computed values are the reference; no
    closed-form profile is attached."""
    _require_three_vars(ordering)
    if b < 2:
        raise FamilyParameterError(["b >= 2"])
    x, y, z = variables(ordering)
    gens = (x * z - y ** 3, z ** b - x ** (2 * b + 1))
    expected = Expected(
        pair_type=(2, b),
        flat_count=b - 1,
        hf_values=(1, 3),
        multiplicity=3 * b,
    )
    return FamilyInstance("shibuta", {"b": b}, gens, ordering, expected)


BUILDERS = {
    "increasing": build_increasing,
    "flat": build_flat,
    "flat_general": build_flat_general,
    "increasing_squarefree": build_increasing_squarefree,
    "shibuta": shibuta,
}


# -- worked-example corpus --------------------------------------------------------


def _monos(ordering: OrderingSpec, text: str) -> tuple:
    return tuple(g.leading_monomial for g in parse_ideal(text, ordering))


def corpus(ordering: OrderingSpec = DEFAULT_ORDERING) -> tuple[FamilyInstance, ...]:
    """Every worked example with its published expected data attached."""
    _require_three_vars(ordering)

    def inst(name, gens_text, **expect) -> FamilyInstance:
        gens = parse_ideal(gens_text, ordering)
        if "initial_ideal_gens" in expect:
            expect["initial_ideal_gens"] = parse_ideal(expect["initial_ideal_gens"], ordering)
        if "leading_ideal" in expect:
            expect["leading_ideal"] = _monos(ordering, expect["leading_ideal"])
        return FamilyInstance(name, {}, gens, ordering, Expected(**expect))

    entries = [
        inst(
            "type34_gorenstein",
            "x^4, x^2*y + z^4",
            initial_ideal_gens="x^2*y, x^4, x^2*z^4, z^8",
            hs_numerator=(1, 2, 3, 3, 2, 2, 1, 1, 1),
            multiplicity=16,
        ),
        inst(
            "type34_gorenstein_reordered",
            "x^4, z^4 + x^2*y",
            initial_ideal_gens="x^2*y, x^4, x^2*z^4, z^8",
            hf_values=(1, 3, 6, 9, 11, 13, 14, 15, 16, 16),
            strictly_increasing=True,
            multiplicity=16,
        ),
        inst(
            "type23_consecutive_flats",
            "x^2, x*y^2 + z^5 + x*y^3*z^2",
            hs_numerator=(1, 2, 2, 1, 1, 1, 0, 0, 1, 1),
            hf_values=(1, 3, 5, 6, 7, 8, 8, 8, 9, 10, 10),
            flats=(5, 6),
            flat_count=2,
            multiplicity=10,
            pair_type=(2, 3),
        ),
        inst(
            "type33_long_platform",
            "x^3 - z*y^14, x^2*y + x*z^7",
            initial_ideal_gens="x^3, x^2*y, x^2*z^7, x*z^14, x*y^15*z, y^31*z",
            hs_numerator=(1, 2, 3, 2, 2, 2, 2, 2, 2, 1, 2, 2, 2, 2, 2, 1, 1)
            + (0,) * 13
            + (1, 1),
            flats=tuple(range(16, 29)),
            flat_count=13,
            multiplicity=33,
            pair_type=(3, 3),
        ),
        inst(
            "type44_three_platforms",
            "x^4, x*y^3 - z^6",
            initial_ideal_gens="x*y^3, x^4, x^3*z^6, x^2*z^12, x*z^18, z^24",
            hs_numerator=(1, 2, 3, 4, 3, 2, 1, 1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 1),
            flats=(8, 9, 10, 13, 14, 15, 18, 19, 20),
            flat_count=9,
            multiplicity=24,
            pair_type=(4, 4),
        ),
        inst(
            "flat_pair_plain",
            "x^2 - y^4, x*y + z^3",
            leading_ideal="x^2, x*y, x*z^3, y^6",
            initial_ideal_gens="x^2, x*y, x*z^3, y^6 - z^6",
            hf_values=(1, 3, 4, 5, 5, 6, 6),
            shape="H(n,e)",
            pair_type=(2, 2),
            multiplicity=6,
            first_flat=3,
            flats=(3,),
            flat_count=1,
        ),
        inst(
            "flat_pair_twisted",
            "x^2 + x*z^2 - y^4, x*y + z^3",
            leading_ideal="x^2, x*y, x*z^3, y^6",
            initial_ideal_gens="x^2, x*y, x*z^3, y^6 + y*z^5 - z^6",
            hf_values=(1, 3, 4, 5, 5, 6, 6),
            shape="H(n,e)",
            pair_type=(2, 2),
            multiplicity=6,
            first_flat=3,
        ),
        inst(
            "increasing_pair_plain",
            "x^2 + y^4, x*y",
            leading_ideal="x^2, x*y, y^5",
            initial_ideal_gens="x^2, x*y, y^5",
            hf_values=(1, 3, 4, 5, 6, 6),
            shape="H(e)",
            pair_type=(2, 2),
            multiplicity=6,
            strictly_increasing=True,
        ),
        inst(
            "increasing_pair_twisted",
            "x^2 + y^4 + z^4, x*y",
            leading_ideal="x^2, x*y, y^5",
            initial_ideal_gens="x^2, x*y, y^5 + y*z^4",
            hf_values=(1, 3, 4, 5, 6, 6),
            shape="H(e)",
            pair_type=(2, 2),
            multiplicity=6,
            strictly_increasing=True,
        ),
        inst(
            "nonsquarefree_increasing",
            "x^2 - y^2*z, x*y - y^3",
            leading_ideal="x^2, x*y, y^3*z",
            hf_values=(1, 3, 4, 5, 5, 5),
            shape="H(e)",
            pair_type=(2, 2),
            multiplicity=5,
            strictly_increasing=True,
            squarefree_quadric=False,
        ),
    ]
    for b in (2, 3):
        sh = shibuta(b, ordering)
        entries.append(
            FamilyInstance(f"shibuta_{b}", sh.parameters, sh.generators, ordering, sh.expected)
        )
    return tuple(entries)


# -- random instances -------------------------------------------------------------


def random_tail(
    rng: random.Random,
    ordering: OrderingSpec,
    *,
    min_order: int = 3,
    degree_bound: int = 8,
    height: int = 5,
    max_terms: int = 4,
    allowed_vars: tuple[int, ...] | None = None,
) -> Polynomial:
    """Sparse tail with integer coefficients of bounded height and total
    degree in [min_order, degree_bound], optionally supported on a subset
    of the variables."""
    from .poly import monomials_of_degree

    terms = []
    for _ in range(rng.randint(0, max_terms)):
        deg = rng.randint(min_order, degree_bound)
        candidates = [
            m
            for m in monomials_of_degree(ordering.num_vars, deg)
            if allowed_vars is None
            or all(e == 0 or i in allowed_vars for i, e in enumerate(m))
        ]
        mono = rng.choice(candidates)
        coeff = rng.choice((-1, 1)) * rng.randint(1, height)
        terms.append((mono, coeff))
    return Polynomial.from_terms(ordering, terms)


def random_type22_ideal(
    rng: random.Random,
    *,
    degree_bound: int = 8,
    height: int = 5,
    ordering: OrderingSpec = DEFAULT_ORDERING,
) -> FamilyInstance:
    """Generators x^2 + t1, x*y + t2 with random tails of order >= 3."""
    x, y, z = variables(ordering)
    t1 = random_tail(rng, ordering, degree_bound=degree_bound, height=height)
    t2 = random_tail(rng, ordering, degree_bound=degree_bound, height=height)
    gens = (x ** 2 + t1, x * y + t2)
    return FamilyInstance("random_type22", {}, gens, ordering, None)


def random_type2b_ideal(
    rng: random.Random,
    b: int,
    *,
    degree_bound: int = 8,
    height: int = 5,
    ordering: OrderingSpec = DEFAULT_ORDERING,
) -> FamilyInstance:
    """Generators x^2 + t1, x*y^(b-1) + t2 with tails of orders >= 3, b+1."""
    x, y, z = variables(ordering)
    t1 = random_tail(rng, ordering, degree_bound=degree_bound, height=height)
    t2 = random_tail(
        rng,
        ordering,
        min_order=b + 1,
        degree_bound=max(degree_bound, b + 1),
        height=height,
    )
    gens = (x ** 2 + t1, x * y ** (b - 1) + t2)
    return FamilyInstance("random_type2b", {"b": b}, gens, ordering, None)


def random_squarefree_instance(
    rng: random.Random,
    *,
    degree_bound: int = 8,
    height: int = 5,
    ordering: OrderingSpec = DEFAULT_ORDERING,
) -> FamilyInstance:
    """Random pair in the square-free structure form (no order condition on
    the combination term): the profile must come out strictly increasing."""
    x, y, z = variables(ordering)
    r = rng.randint(3, 6)
    s = rng.randint(3, 6)
    d = Polynomial.constant(ordering, 1)
    if rng.random() < 0.7:
        d = d + random_tail(
            rng,
            ordering,
            min_order=1,
            degree_bound=3,
            height=height,
            max_terms=2,
            allowed_vars=(1, 2),
        )
    alpha = Polynomial.zero(ordering)
    if rng.random() < 0.5:
        alpha = Polynomial.constant(ordering, rng.choice((-1, 1)) * rng.randint(1, height))
    beta = Polynomial.zero(ordering)
    if rng.random() < 0.5:
        beta = Polynomial.constant(ordering, rng.choice((-1, 1)) * rng.randint(1, height))
    F = random_tail(
        rng,
        ordering,
        degree_bound=degree_bound,
        height=height,
        allowed_vars=(1, 2),
    )
    f = x ** 2 + x * z + F
    g = x * y + d * y * z + alpha * y ** r + beta * z ** s
    expected = Expected(strictly_increasing=True, squarefree_quadric=True)
    return FamilyInstance(
        "random_squarefree", {"r": r, "s": s}, (f, g), ordering, expected
    )


# -- analysis pipeline -------------------------------------------------------------


@dataclass(frozen=True)
class Analysis:
    basis: StandardBasis
    dimension: int
    hf: HilbertFunction
    hs: HilbertSeries | None
    classification: HFClassification | None
    pair_type: tuple[int, int] | None


def analyze(
    generators,
    ordering: OrderingSpec | None = None,
    *,
    hf_bound: int | None = None,
    max_pairs: int = 100_000,
    max_steps: int = 1_000_000,
) -> Analysis:
    """Standard basis, Hilbert data and classification for one ideal."""
    generators = tuple(generators)
    ordering = ordering or generators[0].ordering
    sb = standard_basis(generators, ordering, max_pairs=max_pairs, max_steps=max_steps)
    J = sb.leading_ideal
    bound = max(hf_bound or 0, J.max_degree + 2)
    hf = hilbert_function(J, bound)
    try:
        hs = hilbert_series(hf)
    except NotStabilizedError:
        hs = None
    pair_type = None
    if len(generators) == 2:
        try:
            pair_type = ideal_type(generators[0], generators[1])
        except ValueError:
            pair_type = None
    classification = None
    if hf.stable_value is not None:
        classification = classify_hf(hf, pair_type)
    return Analysis(sb, hf.dimension, hf, hs, classification, pair_type)


@dataclass(frozen=True)
class CheckResult:
    name: str
    expected: object
    actual: object
    ok: bool


def verify_instance(
    inst: FamilyInstance,
    *,
    max_pairs: int = 100_000,
    max_steps: int = 1_000_000,
) -> list[CheckResult]:
    """Compare an instance's computed data against its expected record."""
    exp = inst.expected
    if exp is None:
        raise ValueError(f"instance {inst.name!r} carries no expected data")
    analysis = analyze(
        inst.generators, inst.ordering, max_pairs=max_pairs, max_steps=max_steps
    )
    results: list[CheckResult] = []

    def check(name, expected, actual, ok=None):
        results.append(
            CheckResult(name, expected, actual, (expected == actual) if ok is None else ok)
        )

    if exp.leading_ideal is not None:
        want = MonomialIdeal.from_monomials(inst.ordering.num_vars, exp.leading_ideal)
        check("leading_ideal", want.min_gens, analysis.basis.leading_ideal.min_gens)
    if exp.initial_ideal_gens is not None:
        same = initial_ideal_equal(analysis.basis.initial_forms, exp.initial_ideal_gens)
        check(
            "initial_ideal",
            [str(g) for g in exp.initial_ideal_gens],
            [str(g) for g in analysis.basis.initial_forms],
            ok=same,
        )
    if exp.hf_values is not None:
        got = analysis.hf.values[: len(exp.hf_values)]
        check("hf_values", tuple(exp.hf_values), tuple(got))
    if exp.hs_numerator is not None:
        got = analysis.hs.numerator if analysis.hs is not None else None
        check("hs_numerator", tuple(exp.hs_numerator), got)
    cls = analysis.classification
    if exp.shape is not None:
        check("shape", exp.shape, cls.shape if cls else None)
    if exp.pair_type is not None:
        check("pair_type", exp.pair_type, analysis.pair_type)
    if exp.multiplicity is not None:
        check("multiplicity", exp.multiplicity, analysis.hf.stable_value)
    if exp.first_flat is not None:
        check("first_flat", exp.first_flat, cls.first_flat if cls else None)
    if exp.flats is not None:
        check("flats", tuple(exp.flats), cls.flats if cls else None)
    if exp.flat_count is not None:
        check("flat_count", exp.flat_count, cls.flat_count if cls else None)
    if exp.strictly_increasing is not None:
        got = cls.checks["cm_tangent_cone"] if cls else None
        check("strictly_increasing", exp.strictly_increasing, got)
    if exp.basis_size is not None:
        check("basis_size", exp.basis_size, len(analysis.basis.generators))
    if exp.squarefree_quadric is not None:
        forms = analysis.basis.initial_forms
        try:
            got = squarefree_quadratic(forms[0], forms[1])
        except RegularSequenceCase:
            got = "regular sequence"
        check("squarefree_quadric", exp.squarefree_quadric, got)
    return results
