"""Monomial orderings: global term orders and the induced local degree order.

A monomial is a tuple of non-negative integer exponents.  The local degree
ordering ranks *lower* total degree higher and breaks ties with a global
term ordering, so 1 is the largest monomial and ``x > x^2 > x^3 > ...``.
This is the order under which leading terms of power series are taken.
"""

from __future__ import annotations

from dataclasses import dataclass

Monomial = tuple[int, ...]

TIE_BREAKS = ("lex", "deglex", "degrevlex")

LESS, EQUAL, GREATER = -1, 0, 1


class ArityMismatchError(ValueError):
    """Operands were built over different variable sets."""


@dataclass(frozen=True)
class OrderingSpec:
    """A local degree ordering.

    ``tie_break`` is the global term ordering used between monomials of
    equal total degree.  ``precedence`` lists variable indices from largest
    to smallest under the tie-break; the default ``(0, 1, 2)`` gives
    ``x > y > z``.
    """

    num_vars: int = 3
    var_names: tuple[str, ...] = ("x", "y", "z")
    tie_break: str = "degrevlex"
    precedence: tuple[int, ...] = (0, 1, 2)

    def __post_init__(self) -> None:
        if self.num_vars < 1:
            raise ValueError("num_vars must be positive")
        if len(self.var_names) != self.num_vars:
            raise ValueError("var_names must name every variable exactly once")
        if len(set(self.var_names)) != self.num_vars:
            raise ValueError("variable names must be distinct")
        if self.tie_break not in TIE_BREAKS:
            raise ValueError(
                f"unknown tie_break {self.tie_break!r}; choose one of {TIE_BREAKS}"
            )
        if sorted(self.precedence) != list(range(self.num_vars)):
            raise ValueError("precedence must be a permutation of the variable indices")

    @classmethod
    def for_vars(
        cls,
        names,
        tie_break: str = "degrevlex",
        precedence: tuple[int, ...] | None = None,
    ) -> "OrderingSpec":
        names = tuple(names)
        if precedence is None:
            precedence = tuple(range(len(names)))
        return cls(
            num_vars=len(names),
            var_names=names,
            tie_break=tie_break,
            precedence=tuple(precedence),
        )

    def check_arity(self, m: Monomial) -> None:
        if len(m) != self.num_vars:
            raise ArityMismatchError(
                f"monomial has {len(m)} exponents, ordering expects {self.num_vars}"
            )

    def global_key(self, m: Monomial) -> tuple[int, ...]:
        """Sort key for the tie-break order: bigger key means bigger monomial."""
        pe = tuple(m[i] for i in self.precedence)
        if self.tie_break == "lex":
            return pe
        deg = sum(m)
        if self.tie_break == "deglex":
            return (deg,) + pe
        # degrevlex: ties decided by the *last* differing exponent, reversed sign
        return (deg,) + tuple(-e for e in reversed(pe))

    def local_key(self, m: Monomial) -> tuple[int, ...]:
        """Sort key for the local order: bigger key means bigger monomial."""
        return (-sum(m),) + self.global_key(m)

    def monomial_str(self, m: Monomial) -> str:
        parts = [
            name if e == 1 else f"{name}^{e}"
            for name, e in zip(self.var_names, m)
            if e
        ]
        return "*".join(parts) if parts else "1"


def compare_global(m1: Monomial, m2: Monomial, ordering: OrderingSpec) -> int:
    """Compare under the global tie-break order; returns LESS/EQUAL/GREATER."""
    ordering.check_arity(m1)
    ordering.check_arity(m2)
    k1, k2 = ordering.global_key(m1), ordering.global_key(m2)
    return GREATER if k1 > k2 else (LESS if k1 < k2 else EQUAL)


def compare_local(m1: Monomial, m2: Monomial, ordering: OrderingSpec) -> int:
    """Compare under the local degree order; returns LESS/EQUAL/GREATER.

    ``m1`` beats ``m2`` when its total degree is lower, or degrees agree
    and ``m1`` beats ``m2`` under the tie-break.
    """
    ordering.check_arity(m1)
    ordering.check_arity(m2)
    k1, k2 = ordering.local_key(m1), ordering.local_key(m2)
    return GREATER if k1 > k2 else (LESS if k1 < k2 else EQUAL)
