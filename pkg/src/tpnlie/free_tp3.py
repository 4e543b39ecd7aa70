"""Degree-5 multilinear component of the free transposed Poisson 3-Lie algebra.

Single-bracket monomials in the labels a1..a5 come in four shapes::

    A:  a a [a, a, a]
    B:  a [a a, a, a]
    C:  [a a, a a, a]
    D:  [a a a, a, a]

Consequences of the Leibniz rule ``T`` are expanded over this 65-element
basis and membership of the strong-condition polynomial ``S`` in their
span is decided by exact rank.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Sequence

LABELS = (1, 2, 3, 4, 5)


class Shape(str, enum.Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"


# (number of outer factors, bracket slot sizes) for each shape
_LAYOUT = {
    Shape.A: (2, (1, 1, 1)),
    Shape.B: (1, (2, 1, 1)),
    Shape.C: (0, (2, 2, 1)),
    Shape.D: (0, (3, 1, 1)),
}


class MalformedMonomial(ValueError):
    pass


@dataclass(frozen=True)
class FreeMonomial:
    """``outer`` labels times the bracket of three slots (each a product of labels).

    Instances need not be canonical; see :func:`canonicalize`.
    """

    outer: tuple
    slots: tuple

    def __post_init__(self):
        outer = tuple(self.outer)
        slots = tuple(tuple(s) for s in self.slots)
        object.__setattr__(self, "outer", outer)
        object.__setattr__(self, "slots", slots)
        if len(slots) != 3 or any(not s for s in slots):
            raise MalformedMonomial(f"need three nonempty bracket slots, got {slots}")
        used = sorted(outer + sum(slots, ()))
        if used != list(LABELS):
            raise MalformedMonomial(f"labels must be 1..5 used once each, got {used}")

    @property
    def shape(self) -> Shape:
        sizes = tuple(sorted((len(s) for s in self.slots), reverse=True))
        for shape, (n_outer, layout) in _LAYOUT.items():
            if len(self.outer) == n_outer and sizes == layout:
                return shape
        raise MalformedMonomial(f"unrecognized monomial shape {self}")

    def labels(self) -> tuple:
        """Reading-order label sequence (outer factors, then slots)."""
        return self.outer + sum(self.slots, ())

    def __str__(self):
        word = lambda labels: "".join(f"a{i}" for i in labels)
        inner = ", ".join(word(s) for s in self.slots)
        return f"{word(self.outer)}[{inner}]"


def _sort_sign(keys: Sequence) -> tuple:
    order = sorted(range(len(keys)), key=lambda i: keys[i])
    inversions = sum(1 for i, j in itertools.combinations(range(len(order)), 2) if order[i] > order[j])
    return (-1 if inversions % 2 else 1), order


def canonical_form(raw: FreeMonomial) -> tuple:
    """``(sign, canonical monomial)``.

    Products are commutative, so labels inside the outer group and inside
    each slot are sorted freely. Bracket slots are reordered by (size
    descending, smallest label) and the permutation's parity is the sign.
    """
    slots = [tuple(sorted(s)) for s in raw.slots]
    sign, order = _sort_sign([(-len(s), s[0]) for s in slots])
    return sign, FreeMonomial(tuple(sorted(raw.outer)), tuple(slots[i] for i in order))


@lru_cache(maxsize=None)
def enumerate_basis() -> tuple:
    """The 65 canonical monomials: shape blocks A, B, C, D, lexicographic inside each."""
    blocks = []
    for shape, (n_outer, sizes) in _LAYOUT.items():
        found = set()
        for perm in itertools.permutations(LABELS):
            outer, rest = perm[:n_outer], perm[n_outer:]
            cuts = list(itertools.accumulate(sizes))
            slots = [rest[a:b] for a, b in zip([0] + cuts[:-1], cuts)]
            found.add(canonical_form(FreeMonomial(outer, slots))[1])
        blocks.extend(sorted(found, key=FreeMonomial.labels))
    return tuple(blocks)


@lru_cache(maxsize=None)
def basis_index() -> dict:
    return {m: i for i, m in enumerate(enumerate_basis())}


NUM_MONOMIALS = 65


def canonicalize(raw: FreeMonomial) -> tuple:
    """``(sign, index)`` of ``raw`` in :func:`enumerate_basis` order."""
    sign, mono = canonical_form(raw)
    return sign, basis_index()[mono]


def shape_counts() -> dict:
    counts = {s.value: 0 for s in Shape}
    for m in enumerate_basis():
        counts[m.shape.value] += 1
    return counts


def _accumulate(terms) -> tuple:
    """Sum ``(coeff, outer, slots)`` terms into a length-65 coefficient vector."""
    row = [0] * NUM_MONOMIALS
    for coeff, outer, slots in terms:
        sign, idx = canonicalize(FreeMonomial(outer, slots))
        row[idx] += sign * coeff
    return tuple(row)


def T_terms(h: tuple, a1: tuple, a2: tuple, a3: tuple, outer: tuple = ()) -> list:
    """outer * T(h, a1, a2, a3) where T = 3h[a1,a2,a3] - [ha1,a2,a3] - [a1,ha2,a3] - [a1,a2,ha3].

    Each argument is a tuple of labels standing for their product.
    """
    args = [a1, a2, a3]
    terms = [(3, outer + h, tuple(args))]
    for i in range(3):
        slots = list(args)
        slots[i] = slots[i] + h
        terms.append((-1, outer, tuple(slots)))
    return terms


FAMILIES = {
    1: "T(a1, a2, a3, a4) a5",
    2: "T(a1 a5, a2, a3, a4)",
    3: "T(a1, a2 a5, a3, a4)",
}


def expand_T_consequence(family: int, sigma: Sequence[int]) -> tuple:
    """Coefficient vector of a T-consequence with a_i replaced by a_sigma(i).

    ``sigma`` lists (sigma(1), ..., sigma(5)).
    """
    sigma = tuple(sigma)
    if sorted(sigma) != list(LABELS):
        raise ValueError(f"sigma must be a permutation of 1..5, got {sigma}")
    a = {i + 1: (s,) for i, s in enumerate(sigma)}
    if family == 1:
        terms = T_terms(a[1], a[2], a[3], a[4], outer=a[5])
    elif family == 2:
        terms = T_terms(a[1] + a[5], a[2], a[3], a[4])
    elif family == 3:
        terms = T_terms(a[1], a[2] + a[5], a[3], a[4])
    else:
        raise ValueError(f"unknown consequence family {family}")
    return _accumulate(terms)


def S_terms(h=(1,), y1=(2,), y2=(3,), x1=(4,), x2=(5,)) -> list:
    """S(h, y1, y2, x1, x2) = y1[hy2,x1,x2] - y2[hy1,x1,x2] + hx1[y1,y2,x2] - hx2[y1,y2,x1]."""
    return [
        (1, y1, (h + y2, x1, x2)),
        (-1, y2, (h + y1, x1, x2)),
        (1, h + x1, (y1, y2, x2)),
        (-1, h + x2, (y1, y2, x1)),
    ]


def expand_S() -> tuple:
    """Coefficient vector of S(a1, a2, a3, a4, a5)."""
    return _accumulate(S_terms())


@dataclass(frozen=True)
class RationalMatrix:
    rows: tuple
    width: int = NUM_MONOMIALS

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if any(len(r) != self.width for r in rows):
            raise ValueError(f"all rows must have width {self.width}")

    @property
    def shape(self) -> tuple:
        return (len(self.rows), self.width)

    def with_row(self, row) -> "RationalMatrix":
        return RationalMatrix(self.rows + (tuple(row),), self.width)

    def dedup_up_to_sign(self) -> "RationalMatrix":
        """Drop zero rows and rows equal to an earlier row or its negative."""
        seen = set()
        kept = []
        for r in self.rows:
            lead = next((c for c in r if c), 0)
            if not lead:
                continue
            key = r if lead > 0 else tuple(-c for c in r)
            if key not in seen:
                seen.add(key)
                kept.append(r)
        return RationalMatrix(tuple(kept), self.width)


def rank(m) -> int:
    """Exact rank by fraction-free (Bareiss) elimination.

    Rows are scaled to integers first; the pivot is the first nonzero entry
    of the current column in row order.
    """
    rows = m.rows if isinstance(m, RationalMatrix) else tuple(tuple(r) for r in m)
    if not rows:
        return 0
    work = []
    for r in rows:
        scale = lcm(*(Fraction(c).denominator for c in r)) if r else 1
        work.append([int(Fraction(c) * scale) for c in r])
    nrows, ncols = len(work), len(work[0])
    prev = 1
    k = 0
    for col in range(ncols):
        if k == nrows:
            break
        pivot = next((i for i in range(k, nrows) if work[i][col]), None)
        if pivot is None:
            continue
        work[k], work[pivot] = work[pivot], work[k]
        p = work[k][col]
        rk = work[k]
        for i in range(k + 1, nrows):
            ri = work[i]
            f = ri[col]
            for j in range(col + 1, ncols):
                ri[j] = (ri[j] * p - f * rk[j]) // prev
            ri[col] = 0
        prev = p
        k += 1
    return k


def build_raw_matrix_C() -> RationalMatrix:
    """All 3 x 120 consequence rows, family-major, sigma in lexicographic order."""
    rows = [
        expand_T_consequence(family, sigma)
        for family in FAMILIES
        for sigma in itertools.permutations(LABELS)
    ]
    return RationalMatrix(tuple(rows))


def build_matrix_C(dedup: bool = False) -> RationalMatrix:
    m = build_raw_matrix_C()
    return m.dedup_up_to_sign() if dedup else m


@dataclass(frozen=True)
class StrongReport:
    num_monomials: int
    shape_counts: dict
    raw_rows: int
    dedup_rows: int
    matrix_rows: int
    rank_C: int
    rank_C_dedup: int
    rank_C_prime: int
    s_row: dict = field(default_factory=dict)
    s_nested_bracket_free: bool = True

    @property
    def strong_identity_member(self) -> bool:
        return self.rank_C_prime == self.rank_C

    def to_dict(self) -> dict:
        return {
            "num_monomials": self.num_monomials,
            "shape_counts": dict(self.shape_counts),
            "raw_rows": self.raw_rows,
            "dedup_rows": self.dedup_rows,
            "matrix_rows": self.matrix_rows,
            "rank_C": self.rank_C,
            "rank_C_dedup": self.rank_C_dedup,
            "rank_C_prime": self.rank_C_prime,
            "strong_identity_member": self.strong_identity_member,
            "s_nested_bracket_free": self.s_nested_bracket_free,
            "s_row": {str(k): str(v) for k, v in sorted(self.s_row.items())},
        }


def strong_membership_report(dedup: bool = False) -> StrongReport:
    """Decide whether S lies in the span of the T-consequences.

    ``dedup`` selects which version of C is extended by the S row; both
    versions are always ranked.
    """
    raw = build_raw_matrix_C()
    reduced = raw.dedup_up_to_sign()
    C = reduced if dedup else raw
    s = expand_S()
    nested_free = all(
        isinstance(label, int) for _, _, slots in S_terms() for slot in slots for label in slot
    )
    return StrongReport(
        num_monomials=len(enumerate_basis()),
        shape_counts=shape_counts(),
        raw_rows=len(raw.rows),
        dedup_rows=len(reduced.rows),
        matrix_rows=len(C.rows),
        rank_C=rank(C),
        rank_C_dedup=rank(reduced),
        rank_C_prime=rank(C.with_row(s)),
        s_row={i: c for i, c in enumerate(s) if c},
        s_nested_bracket_free=nested_free,
    )
