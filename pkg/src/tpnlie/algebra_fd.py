"""Finite-dimensional n-Lie and transposed Poisson n-Lie algebras.

Algebras are given by structure constants on a basis e_0..e_{d-1}. The
predicates here check ideals, quasi-ideals and the derived space exactly,
and :func:`simplicity_probe` searches for proper ideals.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .brackets import (
    StructureTable,
    basis_vector,
    load_tables,
    permutation_sign,
    vector_product_table,
    direct_sum,
)
from .exact_poly import as_coeff


class MissingProductError(ValueError):
    pass


def _rref(vectors, d: int) -> tuple:
    rows = [[Fraction(c) for c in v] for v in vectors]
    for v in rows:
        if len(v) != d:
            raise ValueError(f"vector length {len(v)} != dimension {d}")
    out = []
    col = 0
    r = 0
    while r < len(rows) and col < d:
        pivot = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot is None:
            col += 1
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        p = rows[r][col]
        rows[r] = [c / p for c in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        col += 1
    out = [tuple(as_coeff(c) for c in row) for row in rows[:r]]
    return tuple(out)


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^d stored as its reduced row-echelon basis."""

    dimension: int
    basis: tuple

    @classmethod
    def span(cls, vectors, dimension: int) -> "Subspace":
        return cls(dimension, _rref(list(vectors), dimension))

    @classmethod
    def zero(cls, dimension: int) -> "Subspace":
        return cls(dimension, ())

    @classmethod
    def full(cls, dimension: int) -> "Subspace":
        return cls.span([basis_vector(dimension, i) for i in range(dimension)], dimension)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.dimension

    def contains(self, v) -> bool:
        if not any(v):
            return True
        return _rref(list(self.basis) + [v], self.dimension).__len__() == self.dim

    def contains_subspace(self, other: "Subspace") -> bool:
        return _rref(list(self.basis) + list(other.basis), self.dimension).__len__() == self.dim

    def join(self, vectors) -> "Subspace":
        return Subspace.span(list(self.basis) + list(vectors), self.dimension)

    def to_json(self) -> list:
        return [[str(Fraction(c)) for c in row] for row in self.basis]

    @classmethod
    def from_json(cls, rows, dimension: int) -> "Subspace":
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise ValueError("subspace must be a list of rows")
        return cls.span([[as_coeff(c) for c in r] for r in rows], dimension)


@dataclass(frozen=True)
class FdAlgebra:
    bracket: StructureTable
    product: Optional[StructureTable] = None

    def __post_init__(self):
        if self.product is not None and self.product.dimension != self.bracket.dimension:
            raise ValueError("bracket and product tables have different dimensions")

    @property
    def dimension(self) -> int:
        return self.bracket.dimension

    @property
    def arity(self) -> int:
        return self.bracket.arity

    @classmethod
    def from_doc(cls, doc) -> "FdAlgebra":
        bracket, product = load_tables(doc)
        return cls(bracket, product)

    def basis(self) -> list:
        return [basis_vector(self.dimension, i) for i in range(self.dimension)]

    def multiply(self, u, v):
        if self.product is None:
            raise MissingProductError("algebra has no product table")
        return self.product(u, v)


def vector_product_algebra(n: int = 3, with_zero_product: bool = True) -> FdAlgebra:
    """Filippov's A_{n+1}; the zero product makes it transposed Poisson."""
    table = vector_product_table(n)
    product = StructureTable(n + 1, 2, {}) if with_zero_product else None
    return FdAlgebra(table, product)


def with_trivial_line(a: FdAlgebra) -> FdAlgebra:
    """``a`` plus one extra basis vector that brackets and multiplies to zero."""
    line = StructureTable(1, a.arity, {})
    product = None
    if a.product is not None:
        product = direct_sum(a.product, StructureTable(1, 2, {}))
    return FdAlgebra(direct_sum(a.bracket, line), product)


@dataclass(frozen=True)
class ValidationReport:
    skew_symmetric: bool
    jacobi: bool
    product_commutative: Optional[bool] = None
    product_associative: Optional[bool] = None
    transposed_leibniz: Optional[bool] = None
    failures: tuple = ()

    @property
    def ok(self) -> bool:
        flags = [
            self.skew_symmetric,
            self.jacobi,
            self.product_commutative,
            self.product_associative,
            self.transposed_leibniz,
        ]
        return all(f is not False for f in flags)

    def to_dict(self) -> dict:
        return {
            "skew_symmetric": self.skew_symmetric,
            "jacobi": self.jacobi,
            "product_commutative": self.product_commutative,
            "product_associative": self.product_associative,
            "transposed_leibniz": self.transposed_leibniz,
            "valid": self.ok,
            "failures": list(self.failures),
        }


def _vadd(u, v):
    return tuple(as_coeff(a + b) for a, b in zip(u, v))


def _vscale(c, u):
    return tuple(as_coeff(c * a) for a in u)


def validate(a: FdAlgebra) -> ValidationReport:
    """Exhaustive basis-tuple checks of every axiom.

    Skew-symmetry, the generalized Jacobi identity on basis (2n-1)-tuples,
    commutativity/associativity of the product, and on basis (n+1)-tuples
    n h [a..] = sum_i [a.., h a_i, ..].
    """
    d, n = a.dimension, a.arity
    br = a.bracket
    E = a.basis()
    failures = []

    skew = True
    for idx in itertools.product(range(d), repeat=n):
        val = br.value(idx)
        if len(set(idx)) < n:
            if val:
                skew = False
                failures.append(f"skew: repeated index {list(idx)} has nonzero value")
            continue
        canon = tuple(sorted(idx))
        sign = permutation_sign(idx)
        ref = br.value(canon)
        if {k: sign * c for k, c in ref.items()} != val:
            skew = False
            failures.append(f"skew: {list(idx)} disagrees with {list(canon)}")

    jac = True
    basic = {idx: br(*(E[i] for i in idx)) for idx in itertools.product(range(d), repeat=n)}
    for xs in itertools.product(range(d), repeat=n):
        outer = basic[xs]
        for ys in itertools.product(range(d), repeat=n - 1):
            ey = [E[j] for j in ys]
            lhs = br(outer, *ey)
            rhs = (0,) * d
            for i in range(n):
                inner = basic[(xs[i],) + ys]
                if not any(inner):
                    continue
                args = [E[k] for k in xs]
                args[i] = inner
                rhs = _vadd(rhs, br(*args))
            if lhs != rhs:
                jac = False
                failures.append(f"jacobi: x={list(xs)} y={list(ys)}")
                break
        if not jac:
            break

    comm = assoc = tleib = None
    if a.product is not None:
        pr = a.product
        comm = all(pr(E[i], E[j]) == pr(E[j], E[i]) for i in range(d) for j in range(d))
        if not comm:
            failures.append("product is not commutative")
        assoc = all(
            pr(pr(E[i], E[j]), E[k]) == pr(E[i], pr(E[j], E[k]))
            for i in range(d)
            for j in range(d)
            for k in range(d)
        )
        if not assoc:
            failures.append("product is not associative")
        tleib = True
        for h in range(d):
            for xs in itertools.product(range(d), repeat=n):
                lhs = _vscale(n, pr(E[h], basic[xs]))
                rhs = (0,) * d
                for i in range(n):
                    args = [E[k] for k in xs]
                    args[i] = pr(E[h], E[xs[i]])
                    rhs = _vadd(rhs, br(*args))
                if lhs != rhs:
                    tleib = False
                    failures.append(f"transposed leibniz: h={h} a={list(xs)}")
                    break
            if not tleib:
                break
    return ValidationReport(skew, jac, comm, assoc, tleib, tuple(failures))


def derived_space(a: FdAlgebra) -> Subspace:
    """Span of all bracket values [e_i1, .., e_in]."""
    vals = []
    for idx in itertools.combinations(range(a.dimension), a.arity):
        v = a.bracket.value(idx)
        if v:
            vals.append(tuple(v.get(k, 0) for k in range(a.dimension)))
    return Subspace.span(vals, a.dimension)


def _check_dims(a: FdAlgebra, s: Subspace):
    if s.dimension != a.dimension:
        raise ValueError(f"subspace lives in Q^{s.dimension}, algebra has dimension {a.dimension}")


def _bracket_images(a: FdAlgebra, vectors) -> list:
    """[v, e_j2, .., e_jn] for every v in ``vectors`` and every basis tuple."""
    E = a.basis()
    out = []
    for v in vectors:
        for js in itertools.product(range(a.dimension), repeat=a.arity - 1):
            w = a.bracket(v, *(E[j] for j in js))
            if any(w):
                out.append(w)
    return out


def is_ideal(a: FdAlgebra, s: Subspace) -> bool:
    """[s, A, .., A] is contained in s (skew-symmetry makes one slot enough)."""
    _check_dims(a, s)
    return all(s.contains(w) for w in _bracket_images(a, s.basis))


def is_quasi_ideal(a: FdAlgebra, s: Subspace) -> bool:
    """Nonzero proper s with [s, A..] in s and [A s, A..] in s."""
    _check_dims(a, s)
    if a.product is None:
        raise MissingProductError("quasi-ideals need a product table")
    if s.is_zero() or s.is_full():
        return False
    if not is_ideal(a, s):
        return False
    As = [a.product(e, v) for e in a.basis() for v in s.basis]
    return all(s.contains(w) for w in _bracket_images(a, [w for w in As if any(w)]))


def ideal_closure(a: FdAlgebra, s: Subspace) -> Subspace:
    """Smallest ideal containing ``s``."""
    _check_dims(a, s)
    current = s
    frontier = list(s.basis)
    while frontier:
        grown = current.join(_bracket_images(a, frontier))
        if grown.dim == current.dim:
            return current
        frontier = list(grown.basis)
        current = grown
    return current


@dataclass(frozen=True)
class ProbeResult:
    """``verdict`` is ``"NotSimple"`` (certified by ``witness``) or ``"ProbablySimple"``."""

    verdict: str
    witness: Optional[Subspace] = None
    reason: str = ""
    trials: int = 0

    @property
    def simple(self) -> bool:
        return self.verdict == "ProbablySimple"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "reason": self.reason,
            "trials": self.trials,
            "witness": None if self.witness is None else self.witness.to_json(),
        }


def simplicity_probe(a: FdAlgebra, trials: int = 20, seed: int = 42) -> ProbeResult:
    """Look for a proper nonzero ideal.

    Ideal closures of every basis vector and of ``trials`` random integer
    vectors are computed; the smallest proper one found is the witness.
    Failing that, a deficient derived space is reported. A NotSimple verdict
    is a certificate; ProbablySimple is only evidence.
    """
    d = a.dimension
    rng = random.Random(seed)
    candidates = [basis_vector(d, i) for i in range(d)]
    for _ in range(trials):
        v = tuple(rng.randint(-5, 5) for _ in range(d))
        if any(v):
            candidates.append(v)
    best = None
    for v in candidates:
        c = ideal_closure(a, Subspace.span([v], d))
        if not c.is_full() and (best is None or c.dim < best.dim):
            best = c
    if best is not None:
        return ProbeResult("NotSimple", best, "proper ideal closure", trials)
    derived = derived_space(a)
    if not derived.is_full():
        return ProbeResult("NotSimple", derived, "derived space is not the whole algebra", trials)
    return ProbeResult("ProbablySimple", None, "every sampled ideal closure is the whole algebra", trials)
