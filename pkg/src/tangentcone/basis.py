"""Standard bases under local orderings via Buchberger's algorithm.

Also the degreewise exact linear algebra that serves as the independent
route for membership in homogeneous ideals: the leading-term computations
are never used to check themselves.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from .division import ResourceLimitError, mora_weak_nf, s_polynomial
from .orderings import ArityMismatchError, Monomial, OrderingSpec
from .poly import (
    Polynomial,
    mono_deg,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    monomials_of_degree,
)


class NonHomogeneousError(ValueError):
    """A homogeneous-only operation received a non-homogeneous polynomial."""


class RegularSequenceCase(Exception):
    """The two quadrics share no linear factor.

    The initial forms then generate the whole ideal of initial forms and the
    Hilbert function is 1, 3, 4, 4, ...
    """


# -- monomial ideals ----------------------------------------------------------

@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal stored by its minimal generators.

    Generators form an antichain under divisibility and are kept in a
    canonical order (by degree, then exponents).
    """

    num_vars: int
    min_gens: tuple[Monomial, ...]

    @classmethod
    def from_monomials(cls, num_vars: int, monomials: Iterable[Monomial]) -> "MonomialIdeal":
        mons = {tuple(m) for m in monomials}
        for m in mons:
            if len(m) != num_vars:
                raise ArityMismatchError("generator arity does not match num_vars")
        minimal = [
            m
            for m in mons
            if not any(other != m and mono_divides(other, m) for other in mons)
        ]
        minimal.sort(key=lambda m: (mono_deg(m), tuple(-e for e in m)))
        return cls(num_vars, tuple(minimal))

    def contains(self, m: Monomial) -> bool:
        return any(mono_divides(g, m) for g in self.min_gens)

    def contains_polynomial(self, f: Polynomial) -> bool:
        """Membership for a polynomial: every term must be divisible."""
        return all(self.contains(m) for m in f.coeffs)

    @property
    def max_degree(self) -> int:
        return max((mono_deg(g) for g in self.min_gens), default=0)

    def count_in_degree(self, degree: int) -> int:
        return sum(1 for m in monomials_of_degree(self.num_vars, degree) if self.contains(m))

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.min_gens)

    def __len__(self) -> int:
        return len(self.min_gens)

    def gens_str(self, ordering: OrderingSpec) -> str:
        return ", ".join(ordering.monomial_str(m) for m in self.min_gens)


# -- Buchberger ----------------------------------------------------------------

@dataclass(frozen=True)
class PairRecord:
    i: int
    j: int
    lcm: Monomial
    status: str  # "zero", "added", "coprime", "chain"
    result_index: int | None = None


@dataclass(frozen=True)
class StandardBasis:
    ordering: OrderingSpec
    generators: tuple[Polynomial, ...]
    leading_ideal: MonomialIdeal
    initial_forms: tuple[Polynomial, ...]
    pair_log: tuple[PairRecord, ...]


def standard_basis(
    F,
    ordering: OrderingSpec | None = None,
    *,
    max_pairs: int = 100_000,
    max_steps: int = 1_000_000,
    use_chain_criterion: bool = False,
) -> StandardBasis:
    """Enhanced standard basis of the ideal generated by ``F``.

    Pairs are processed by the normal strategy: the pair whose lcm of
    leading monomials is largest under the local order (lowest degree
    first) goes first, ties by insertion order.  Pairs with coprime leading
    monomials are skipped; the chain criterion is available behind a flag.
    S-polynomial remainders are normalised to leading coefficient one
    before joining the basis.
    """
    basis = [f for f in F]
    if not basis:
        raise ValueError("an ideal needs at least one generator")
    ordering = ordering or basis[0].ordering
    for f in basis:
        if f.is_zero:
            raise ValueError("zero generator")
        if f.ordering != ordering:
            raise ArityMismatchError("generator was built under a different ordering")

    lead = [g.leading_monomial for g in basis]
    log: list[PairRecord] = []
    counter = itertools.count()
    heap: list = []

    def push_pairs(k: int) -> None:
        for i in range(k):
            lcm = mono_lcm(lead[i], lead[k])
            order_key = tuple(-v for v in ordering.local_key(lcm))
            heapq.heappush(heap, (order_key, next(counter), i, k, lcm))

    for k in range(len(basis)):
        push_pairs(k)

    steps_used = 0
    pairs_done = 0
    handled: set[frozenset[int]] = set()

    while heap:
        _, _, i, j, lcm = heapq.heappop(heap)
        pairs_done += 1
        if pairs_done > max_pairs:
            raise ResourceLimitError(
                f"standard basis exceeded {max_pairs} S-pairs", partial_log=tuple(log)
            )
        handled.add(frozenset((i, j)))
        if lcm == mono_mul(lead[i], lead[j]):
            log.append(PairRecord(i, j, lcm, "coprime"))
            continue
        if use_chain_criterion and _chain_applies(i, j, lcm, lead, handled):
            log.append(PairRecord(i, j, lcm, "chain"))
            continue
        s = s_polynomial(basis[i], basis[j], ordering)
        if s.is_zero:
            log.append(PairRecord(i, j, lcm, "zero"))
            continue
        try:
            res = mora_weak_nf(
                s, basis, ordering, tail=False, max_steps=max_steps - steps_used
            )
        except ResourceLimitError as exc:
            raise ResourceLimitError(
                f"standard basis exceeded {max_steps} reduction steps",
                partial_log=tuple(log),
            ) from exc
        steps_used += res.steps
        if res.remainder.is_zero:
            log.append(PairRecord(i, j, lcm, "zero"))
            continue
        new = res.remainder.monic()
        basis.append(new)
        lead.append(new.leading_monomial)
        idx = len(basis) - 1
        log.append(PairRecord(i, j, lcm, "added", result_index=idx))
        push_pairs(idx)

    leading_ideal = MonomialIdeal.from_monomials(ordering.num_vars, lead)
    initial_forms = tuple(g.initial_form for g in basis)
    return StandardBasis(ordering, tuple(basis), leading_ideal, initial_forms, tuple(log))


def _chain_applies(i, j, lcm, lead, handled) -> bool:
    for k in range(len(lead)):
        if k in (i, j):
            continue
        if (
            mono_divides(lead[k], lcm)
            and frozenset((i, k)) in handled
            and frozenset((j, k)) in handled
        ):
            return True
    return False


def verify_buchberger(sb: StandardBasis, max_steps: int = 1_000_000) -> bool:
    """Independent post-check: every pairwise S-polynomial reduces to zero."""
    gens = sb.generators
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            s = s_polynomial(gens[i], gens[j], sb.ordering)
            if s.is_zero:
                continue
            res = mora_weak_nf(s, gens, sb.ordering, tail=False, max_steps=max_steps)
            if not res.remainder.is_zero:
                return False
    return True


# -- homogeneous linear algebra -------------------------------------------------

class _Echelon:
    """Incremental sparse row echelon over Q.

    Columns are monomials ordered by the global key; rows are coefficient
    dictionaries.  Pivot rows are normalised to pivot coefficient one.
    """

    def __init__(self, ordering: OrderingSpec):
        self.key = ordering.global_key
        self.pivots: dict[Monomial, dict[Monomial, Fraction]] = {}

    def residue(self, row: dict[Monomial, Fraction]) -> dict[Monomial, Fraction]:
        row = dict(row)
        while row:
            lead = max(row, key=self.key)
            pivot = self.pivots.get(lead)
            if pivot is None:
                return row
            c = row[lead]
            for m, pc in pivot.items():
                v = row.get(m, Fraction(0)) - c * pc
                if v:
                    row[m] = v
                else:
                    row.pop(m, None)
        return row

    def insert(self, row: dict[Monomial, Fraction]) -> bool:
        red = self.residue(row)
        if not red:
            return False
        lead = max(red, key=self.key)
        inv = Fraction(1) / red[lead]
        self.pivots[lead] = {m: c * inv for m, c in red.items()}
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _require_homogeneous(f: Polynomial) -> None:
    if not f.is_homogeneous:
        raise NonHomogeneousError(f"{f} is not homogeneous")


def _span_echelon(gens, degree: int, ordering: OrderingSpec) -> _Echelon:
    ech = _Echelon(ordering)
    for g in gens:
        if g.is_zero:
            continue
        dg = g.degree
        if dg > degree:
            continue
        for m in monomials_of_degree(ordering.num_vars, degree - dg):
            ech.insert({mono_mul(mg, m): c for mg, c in g.coeffs.items()})
    return ech


def homogeneous_membership(h: Polynomial, gens) -> bool:
    """Does ``h`` lie in the ideal generated by the homogeneous ``gens``?

    Decided by exact row reduction over the monomial basis of ``h``'s
    degree, independently of any standard basis machinery.
    """
    gens = tuple(gens)
    _require_homogeneous(h)
    for g in gens:
        _require_homogeneous(g)
        if g.ordering != h.ordering:
            raise ArityMismatchError("generators use a different ordering")
    if h.is_zero:
        return True
    ech = _span_echelon(gens, h.degree, h.ordering)
    return not ech.residue(dict(h.coeffs))


def span_dimension(gens, degree: int, ordering: OrderingSpec | None = None) -> int:
    """Dimension of the degree-``degree`` slice of the ideal the ``gens`` span."""
    gens = tuple(gens)
    if ordering is None:
        if not gens:
            raise ValueError("an ordering is required for an empty generator list")
        ordering = gens[0].ordering
    for g in gens:
        _require_homogeneous(g)
    return _span_echelon(gens, degree, ordering).rank


def initial_ideal_equal(G1, G2) -> bool:
    """Do two homogeneous generator lists generate the same ideal?"""
    G1, G2 = tuple(G1), tuple(G2)
    return all(homogeneous_membership(g, G2) for g in G1 if not g.is_zero) and all(
        homogeneous_membership(g, G1) for g in G2 if not g.is_zero
    )


# -- generator-pair classification ----------------------------------------------

def ideal_type(f: Polynomial, g: Polynomial) -> tuple[int, int] | None:
    """Order pair (a, b) of the given generators, or None.

    Normalises so order(f) <= order(g) and requires both orders at least
    two; returns the pair exactly when the initial form of the larger-order
    generator does not lie in the ideal of the other's initial form.  Only
    the supplied pair is examined.
    """
    if f.is_zero or g.is_zero:
        raise ValueError("zero generator")
    a, b = f.order, g.order
    if a > b:
        f, g, a, b = g, f, b, a
    if a < 2:
        raise ValueError("both generators must lie in the square of the maximal ideal")
    if homogeneous_membership(g.initial_form, [f.initial_form]):
        return None
    return (int(a), int(b))


# -- quadratic forms --------------------------------------------------------------

def _solve_dense(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Solve rows * x = rhs exactly; None if inconsistent.  Assumes full column rank
    solutions are unique when they exist (true for form division by a nonzero form)."""
    n_cols = len(rows[0]) if rows else 0
    aug = [row[:] + [b] for row, b in zip(rows, rhs)]
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, len(aug)) if aug[i][c]), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = Fraction(1) / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c]:
                factor = aug[i][c]
                aug[i] = [v - factor * p for v, p in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(aug)):
        if aug[i][n_cols]:
            return None
    solution = [Fraction(0)] * n_cols
    for row_idx, c in enumerate(pivots):
        solution[c] = aug[row_idx][n_cols]
    return solution


def divide_form(q: Polynomial, L: Polynomial) -> Polynomial | None:
    """Exact quotient q / L for homogeneous q, L, or None when L does not divide q."""
    _require_homogeneous(q)
    _require_homogeneous(L)
    if L.is_zero:
        raise ValueError("division by the zero form")
    if q.is_zero:
        return Polynomial.zero(q.ordering)
    target = q.degree - L.degree
    if target < 0:
        return None
    ordering = q.ordering
    basis = list(monomials_of_degree(ordering.num_vars, target))
    products = [L.mul_term(1, m) for m in basis]
    support = sorted(
        {m for p in products for m in p.coeffs} | set(q.coeffs),
        key=ordering.global_key,
    )
    rows = [[p.coeff(m) for p in products] for m in support]
    rhs = [q.coeff(m) for m in support]
    sol = _solve_dense(rows, rhs)
    if sol is None:
        return None
    quotient = Polynomial(ordering, dict(zip(basis, sol)))
    if quotient * L != q:
        return None
    return quotient


def _gram(q: Polynomial) -> list[list[Fraction]]:
    n = q.ordering.num_vars
    S = [[Fraction(0)] * n for _ in range(n)]
    for m, c in q.coeffs.items():
        idx = [i for i, e in enumerate(m) for _ in range(e)]
        i, j = idx[0], idx[1]
        if i == j:
            S[i][i] = c
        else:
            S[i][j] = S[j][i] = c / 2
    return S


def _matrix_rank(rows: list[list[Fraction]]) -> int:
    work = [row[:] for row in rows]
    rank = 0
    n_cols = len(work[0]) if work else 0
    for c in range(n_cols):
        pivot = next((i for i in range(rank, len(work)) if work[i][c]), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = Fraction(1) / work[rank][c]
        work[rank] = [v * inv for v in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][c]:
                factor = work[i][c]
                work[i] = [v - factor * p for v, p in zip(work[i], work[rank])]
        rank += 1
    return rank


def _kernel_basis(S: list[list[Fraction]]) -> list[list[Fraction]]:
    """A basis of the kernel of a square matrix."""
    n = len(S)
    work = [row[:] for row in S]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, n) if work[i][c]), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = Fraction(1) / work[r][c]
        work[r] = [v * inv for v in work[r]]
        for i in range(n):
            if i != r and work[i][c]:
                factor = work[i][c]
                work[i] = [v - factor * p for v, p in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
    basis = []
    for free in range(n):
        if free in pivots:
            continue
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for row_idx, c in enumerate(pivots):
            v[c] = -work[row_idx][free]
        basis.append(v)
    return basis


def _linear_form(ordering: OrderingSpec, coeffs) -> Polynomial:
    n = ordering.num_vars
    return Polynomial(
        ordering,
        {
            tuple(1 if j == i else 0 for j in range(n)): c
            for i, c in enumerate(coeffs)
            if c
        },
    )


def _sqrt_fraction(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    import math as _math

    num_root = _math.isqrt(x.numerator)
    den_root = _math.isqrt(x.denominator)
    if num_root * num_root != x.numerator or den_root * den_root != x.denominator:
        return None
    return Fraction(num_root, den_root)


def quadric_linear_factors(q: Polynomial) -> list[tuple[Polynomial, Polynomial]]:
    """Rational splittings q = L * M into linear forms, up to ordering.

    Returns an empty list when no rational linear factor exists (rank three,
    or a rank-two form with non-square discriminant).
    """
    _require_homogeneous(q)
    if q.is_zero or q.degree != 2:
        raise ValueError("a nonzero quadratic form is required")
    ordering = q.ordering
    S = _gram(q)
    rank = _matrix_rank(S)
    if rank > 2:
        return []
    if rank == 1:
        row = next(r for r in S if any(r))
        L = _linear_form(ordering, row)
        M = divide_form(q, L)
        return [(L, M)] if M is not None else []
    # rank 2: restrict to a complement of the kernel and factor the binary form
    n = ordering.num_vars
    kernel = _kernel_basis(S)
    basis_cols = None
    for i in range(n):
        for j in range(i + 1, n):
            cols = [
                [Fraction(1 if k == i else 0) for k in range(n)],
                [Fraction(1 if k == j else 0) for k in range(n)],
            ] + kernel
            if _matrix_rank(cols) == n:
                basis_cols = (i, j)
                break
        if basis_cols:
            break
    i, j = basis_cols
    u = [Fraction(1 if k == i else 0) for k in range(n)]
    w = [Fraction(1 if k == j else 0) for k in range(n)]

    def bilinear(a, b):
        return sum(a[r] * S[r][c] * b[c] for r in range(n) for c in range(n))

    A = bilinear(u, u)
    C = bilinear(w, w)
    B = 2 * bilinear(u, w)
    # dual functionals: s, t coordinates with respect to (u, w, kernel...)
    P = [[u[r], w[r]] + [k[r] for k in kernel] for r in range(n)]
    Pinv = _invert_matrix(P)
    s_form = _linear_form(ordering, Pinv[0])
    t_form = _linear_form(ordering, Pinv[1])
    factors: list[tuple[Polynomial, Polynomial]] = []
    if A == 0 and C == 0:
        factors.append((s_form, t_form.scale(B)))
    elif A == 0:
        factors.append((t_form, s_form.scale(B) + t_form.scale(C)))
    else:
        disc = B * B - 4 * A * C
        root = _sqrt_fraction(disc)
        if root is None:
            return []
        lam1 = (-B + root) / (2 * A)
        lam2 = (-B - root) / (2 * A)
        # A*s^2 + B*s*t + C*t^2 == A*(s - lam1*t)*(s - lam2*t)
        L = s_form - t_form.scale(lam1)
        M = (s_form - t_form.scale(lam2)).scale(A)
        factors.append((L, M))
    out = []
    for L, M in factors:
        if L * M != q:
            raise ArithmeticError("quadric factorisation failed self-check")
        out.append((L, M))
        if divide_form(L, M) is None:  # factors not proportional: both splittings
            out.append((M, L))
    return out


def _invert_matrix(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(rows)
    work = [[Fraction(v) for v in row] + [Fraction(1 if i == k else 0) for k in range(n)] for i, row in enumerate(rows)]
    for c in range(n):
        pivot = next(i for i in range(c, n) if work[i][c])
        work[c], work[pivot] = work[pivot], work[c]
        inv = Fraction(1) / work[c][c]
        work[c] = [v * inv for v in work[c]]
        for i in range(n):
            if i != c and work[i][c]:
                factor = work[i][c]
                work[i] = [v - factor * p for v, p in zip(work[i], work[c])]
    return [row[n:] for row in work]


def squarefree_quadratic(f2: Polynomial, g2: Polynomial) -> bool:
    """For quadrics f2 = L*M, g2 = L*N with a common linear factor: are
    L, M, N linearly independent?

    Equivalently: does the span of f2, g2 avoid every square of a linear
    form?  Requires linearly independent quadrics; raises
    ``RegularSequenceCase`` when they share no linear factor.
    """
    for q in (f2, g2):
        _require_homogeneous(q)
        if q.is_zero or q.degree != 2:
            raise ValueError("two nonzero quadratic forms are required")
    if f2.ordering != g2.ordering:
        raise ArityMismatchError("operands use different orderings")
    if span_dimension([f2, g2], 2) != 2:
        raise ValueError("the quadrics must be linearly independent")
    for L, M in quadric_linear_factors(f2):
        N = divide_form(g2, L)
        if N is None:
            continue
        coeff_rows = []
        for form in (L, M, N):
            n = form.ordering.num_vars
            coeff_rows.append(
                [
                    form.coeff(tuple(1 if j == i else 0 for j in range(n)))
                    for i in range(n)
                ]
            )
        return _matrix_rank(coeff_rows) == 3
    raise RegularSequenceCase(
        "the quadrics share no linear factor: they form a regular sequence and "
        "the Hilbert function is 1, 3, 4, 4, ..."
    )
