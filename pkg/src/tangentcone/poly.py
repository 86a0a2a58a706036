"""Exact sparse multivariate polynomial arithmetic over the rationals.

Coefficients are ``fractions.Fraction``; monomials are exponent tuples.
Every polynomial carries the ``OrderingSpec`` that fixes its term order,
so the order (degree of the leading term), the initial form (lowest-degree
homogeneous part) and the leading term are always available.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .orderings import ArityMismatchError, Monomial, OrderingSpec

Coeff = Fraction


class InvalidSubstitutionError(ValueError):
    """A substitution image has a nonzero constant term."""


# -- monomial helpers --------------------------------------------------------

def mono_deg(m: Monomial) -> int:
    return sum(m)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(i + j for i, j in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(i <= j for i, j in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """Quotient a / b; the caller guarantees divisibility."""
    return tuple(i - j for i, j in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(i, j) for i, j in zip(a, b))


def monomials_of_degree(num_vars: int, degree: int) -> Iterator[Monomial]:
    """All exponent tuples of the given total degree, in a fixed order."""
    if degree < 0:
        return
    if num_vars == 1:
        yield (degree,)
        return
    for e in range(degree, -1, -1):
        for rest in monomials_of_degree(num_vars - 1, degree - e):
            yield (e,) + rest


# -- polynomials --------------------------------------------------------------

class Polynomial:
    """An immutable sparse polynomial tied to an ordering."""

    __slots__ = ("ordering", "_coeffs", "_sorted")

    def __init__(self, ordering: OrderingSpec, coeffs: Mapping[Monomial, object] | None = None):
        self.ordering = ordering
        clean: dict[Monomial, Fraction] = {}
        if coeffs:
            for m, c in coeffs.items():
                ordering.check_arity(m)
                c = Fraction(c)
                if c:
                    clean[tuple(m)] = c
        self._coeffs = clean
        self._sorted: tuple[tuple[Monomial, Fraction], ...] | None = None

    # construction helpers

    @classmethod
    def zero(cls, ordering: OrderingSpec) -> "Polynomial":
        return cls(ordering)

    @classmethod
    def constant(cls, ordering: OrderingSpec, c) -> "Polynomial":
        return cls(ordering, {(0,) * ordering.num_vars: Fraction(c)})

    @classmethod
    def monomial(cls, ordering: OrderingSpec, m: Monomial, c=1) -> "Polynomial":
        return cls(ordering, {tuple(m): Fraction(c)})

    @classmethod
    def from_terms(cls, ordering: OrderingSpec, pairs: Iterable[tuple[Monomial, object]]) -> "Polynomial":
        acc: dict[Monomial, Fraction] = {}
        for m, c in pairs:
            m = tuple(m)
            acc[m] = acc.get(m, Fraction(0)) + Fraction(c)
        return cls(ordering, acc)

    # views

    @property
    def coeffs(self) -> Mapping[Monomial, Fraction]:
        """The coefficient map; treat as read-only."""
        return self._coeffs

    @property
    def terms(self) -> tuple[tuple[Monomial, Fraction], ...]:
        """Terms sorted strictly descending under the local order."""
        if self._sorted is None:
            key = self.ordering.local_key
            self._sorted = tuple(
                sorted(self._coeffs.items(), key=lambda t: key(t[0]), reverse=True)
            )
        return self._sorted

    def coeff(self, m: Monomial) -> Fraction:
        return self._coeffs.get(tuple(m), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    # degree data

    @property
    def degree(self) -> int:
        """Maximal total degree; undefined for the zero polynomial."""
        if not self._coeffs:
            raise ValueError("the zero polynomial has no degree")
        return max(mono_deg(m) for m in self._coeffs)

    @property
    def order(self):
        """Minimal total degree; infinity for the zero polynomial."""
        if not self._coeffs:
            return math.inf
        return min(mono_deg(m) for m in self._coeffs)

    @property
    def leading_monomial(self) -> Monomial | None:
        if not self._coeffs:
            return None
        return max(self._coeffs, key=self.ordering.local_key)

    @property
    def leading_coeff(self) -> Fraction:
        lm = self.leading_monomial
        return self._coeffs[lm] if lm is not None else Fraction(0)

    @property
    def leading_term(self) -> tuple[Monomial, Fraction] | None:
        lm = self.leading_monomial
        return None if lm is None else (lm, self._coeffs[lm])

    @property
    def initial_form(self) -> "Polynomial":
        """Homogeneous component of lowest degree (zero for the zero polynomial)."""
        if not self._coeffs:
            return self
        v = self.order
        return Polynomial(
            self.ordering, {m: c for m, c in self._coeffs.items() if mono_deg(m) == v}
        )

    @property
    def is_homogeneous(self) -> bool:
        if not self._coeffs:
            return True
        degs = {mono_deg(m) for m in self._coeffs}
        return len(degs) == 1

    # arithmetic

    def _check_compat(self, other: "Polynomial") -> None:
        if self.ordering != other.ordering:
            raise ArityMismatchError("operands use different orderings")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_compat(other)
        acc = dict(self._coeffs)
        for m, c in other._coeffs.items():
            s = acc.get(m, Fraction(0)) + c
            if s:
                acc[m] = s
            else:
                acc.pop(m, None)
        return self._wrap(acc)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_compat(other)
        acc = dict(self._coeffs)
        for m, c in other._coeffs.items():
            s = acc.get(m, Fraction(0)) - c
            if s:
                acc[m] = s
            else:
                acc.pop(m, None)
        return self._wrap(acc)

    def __neg__(self) -> "Polynomial":
        return self._wrap({m: -c for m, c in self._coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_compat(other)
        acc: dict[Monomial, Fraction] = {}
        for m1, c1 in self._coeffs.items():
            for m2, c2 in other._coeffs.items():
                m = mono_mul(m1, m2)
                s = acc.get(m, Fraction(0)) + c1 * c2
                if s:
                    acc[m] = s
                else:
                    acc.pop(m, None)
        return self._wrap(acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial(self.ordering)
        return self._wrap({m: c * v for m, v in self._coeffs.items()})

    def mul_term(self, c, m: Monomial) -> "Polynomial":
        """Multiply by the single term c * x^m."""
        c = Fraction(c)
        if not c:
            return Polynomial(self.ordering)
        self.ordering.check_arity(m)
        return self._wrap({mono_mul(m0, m): c * v for m0, v in self._coeffs.items()})

    def __pow__(self, k: int) -> "Polynomial":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(self.ordering, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def monic(self) -> "Polynomial":
        lc = self.leading_coeff
        if lc in (0, 1):
            return self
        return self.scale(Fraction(1) / lc)

    def _wrap(self, coeffs: dict[Monomial, Fraction]) -> "Polynomial":
        p = Polynomial.__new__(Polynomial)
        p.ordering = self.ordering
        p._coeffs = coeffs
        p._sorted = None
        return p

    # comparison / display

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ordering == other.ordering and self._coeffs == other._coeffs

    __hash__ = None  # mutable-dict backed

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts: list[str] = []
        for m, c in self.terms:
            mono = self.ordering.monomial_str(m)
            a = abs(c)
            if mono == "1":
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    def __getstate__(self):
        return (self.ordering, self._coeffs)

    def __setstate__(self, state):
        self.ordering, self._coeffs = state
        self._sorted = None


def variables(ordering: OrderingSpec) -> tuple[Polynomial, ...]:
    """The generator polynomials, one per variable."""
    out = []
    for i in range(ordering.num_vars):
        m = tuple(1 if j == i else 0 for j in range(ordering.num_vars))
        out.append(Polynomial.monomial(ordering, m))
    return tuple(out)


def leading_data(f: Polynomial, ordering: OrderingSpec | None = None):
    """Return (order, initial form, leading term) of ``f``.

    The leading term of the zero polynomial is ``None`` and its order is
    infinite.  When an ordering is supplied it must match the one the
    polynomial was built with.
    """
    if ordering is not None and ordering != f.ordering:
        raise ArityMismatchError("polynomial was built under a different ordering")
    return f.order, f.initial_form, f.leading_term


# -- substitution -------------------------------------------------------------

@dataclass(frozen=True)
class Substitution:
    """A K-algebra endomorphism given by one image per variable.

    Every image must lie in the maximal ideal (no constant term), so the
    substitution maps power series to power series.
    """

    images: tuple[Polynomial, ...]

    def __post_init__(self) -> None:
        if not self.images:
            raise InvalidSubstitutionError("a substitution needs at least one image")
        ordering = self.images[0].ordering
        if len(self.images) != ordering.num_vars:
            raise InvalidSubstitutionError("one image per variable is required")
        for im in self.images:
            if im.ordering != ordering:
                raise InvalidSubstitutionError("images must share one ordering")
            if im.order < 1:
                raise InvalidSubstitutionError(
                    "substitution image has a nonzero constant term"
                )

    @property
    def ordering(self) -> OrderingSpec:
        return self.images[0].ordering

    @classmethod
    def identity(cls, ordering: OrderingSpec) -> "Substitution":
        return cls(variables(ordering))

    @classmethod
    def from_map(cls, ordering: OrderingSpec, mapping: Mapping[str, Polynomial]) -> "Substitution":
        """Build from a name -> image map; unnamed variables map to themselves."""
        base = list(variables(ordering))
        for name, image in mapping.items():
            if name not in ordering.var_names:
                raise InvalidSubstitutionError(f"unknown variable {name!r}")
            base[ordering.var_names.index(name)] = image
        return cls(tuple(base))

    def linear_part(self) -> list[list[Fraction]]:
        """Matrix of degree-1 coefficients: rows are images, columns variables."""
        n = self.ordering.num_vars
        rows = []
        for im in self.images:
            row = []
            for j in range(n):
                unit = tuple(1 if k == j else 0 for k in range(n))
                row.append(im.coeff(unit))
            rows.append(row)
        return rows

    def is_automorphism(self) -> bool:
        return _det(self.linear_part()) != 0


def _det(matrix: list[list[Fraction]]) -> Fraction:
    """Determinant by fraction-preserving Gaussian elimination."""
    m = [row[:] for row in matrix]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = Fraction(1) / m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                factor = m[r][col] * inv
                for c in range(col, n):
                    m[r][c] -= factor * m[col][c]
    return det


def substitute(f: Polynomial, sub: Substitution) -> Polynomial:
    """Apply the substitution to ``f``; an exact ring homomorphism."""
    if f.ordering != sub.ordering:
        raise ArityMismatchError("substitution built over a different ordering")
    if f.is_zero:
        return f
    pow_cache: list[dict[int, Polynomial]] = [
        {0: Polynomial.constant(f.ordering, 1)} for _ in sub.images
    ]

    def power(i: int, e: int) -> Polynomial:
        cache = pow_cache[i]
        if e not in cache:
            best = max(k for k in cache if k <= e)
            acc = cache[best]
            while best < e:
                acc = acc * sub.images[i]
                best += 1
                cache[best] = acc
        return cache[e]

    total = Polynomial.zero(f.ordering)
    for m, c in f._coeffs.items():
        term = Polynomial.constant(f.ordering, c)
        for i, e in enumerate(m):
            if e:
                term = term * power(i, e)
        total = total + term
    return total
