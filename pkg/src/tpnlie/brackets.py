"""n-ary brackets: Jacobian, Dzhumadil'daev's W, the derivation-induced mu,
and brackets given by finite-dimensional structure constants.

Every bracket is a callable ``b(*args)`` with an ``arity`` attribute.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .exact_poly import (
    Derivation,
    Polynomial,
    PolynomialRing,
    RingMismatchError,
    as_coeff,
    derivations_commute,
    determinant,
)


class BracketArityError(ValueError):
    pass


class TableFormatError(ValueError):
    """Malformed or inconsistent structure-constant document."""


def permutation_sign(seq) -> int:
    """Sign of the permutation that sorts ``seq``; 0 if ``seq`` has repeats."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    inversions = sum(
        1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j]
    )
    return -1 if inversions % 2 else 1


class PolynomialModel:
    """A polynomial algebra with an ordered list of pairwise commuting derivations."""

    def __init__(self, ring: PolynomialRing, derivations: Sequence[Derivation]):
        derivations = tuple(derivations)
        for D in derivations:
            if D.ring != ring:
                raise RingMismatchError("derivation is not defined on the model ring")
        for (i, D), (j, E) in itertools.combinations(enumerate(derivations), 2):
            if not derivations_commute(D, E):
                raise ValueError(f"derivations {i} and {j} do not commute")
        self.ring = ring
        self.derivations = derivations

    @classmethod
    def coordinate(cls, ring: PolynomialRing, count: Optional[int] = None) -> "PolynomialModel":
        """The model whose derivations are the first ``count`` coordinate partials."""
        count = ring.nvars if count is None else count
        if count > ring.nvars:
            raise ValueError(f"ring has only {ring.nvars} variables, asked for {count} partials")
        return cls(ring, [Derivation.partial(ring, i) for i in range(count)])

    @property
    def unit(self) -> Polynomial:
        return self.ring.one()

    def __repr__(self):
        return f"PolynomialModel({self.ring!r}, {len(self.derivations)} derivations)"


class Bracket:
    """Base class for n-ary brackets."""

    kind: str = "abstract"
    arity: int
    ring: Optional[PolynomialRing] = None

    def __call__(self, *args):
        raise NotImplementedError

    def _check_args(self, args):
        if len(args) != self.arity:
            raise BracketArityError(f"{self.kind} bracket takes {self.arity} arguments, got {len(args)}")
        for a in args:
            if not isinstance(a, Polynomial):
                raise TypeError(f"bracket argument is not a Polynomial: {a!r}")
            if a.ring != self.ring:
                raise RingMismatchError(f"argument ring {a.ring} differs from model ring {self.ring}")


class JacobianBracket(Bracket):
    """Jac(u_1..u_n) = det(D_i u_j) for n commuting derivations D_i."""

    kind = "Jacobian"

    def __init__(self, model: PolynomialModel):
        if len(model.derivations) < 2:
            raise BracketArityError("the Jacobian bracket needs at least 2 derivations")
        self.model = model
        self.ring = model.ring
        self.arity = len(model.derivations)

    def __call__(self, *args):
        self._check_args(args)
        matrix = [[D(u) for u in args] for D in self.model.derivations]
        return determinant(matrix)


class WBracket(Bracket):
    """Determinant with first row the arguments and row i+1 equal to D_i applied to them."""

    kind = "W"

    def __init__(self, model: PolynomialModel):
        if not model.derivations:
            raise BracketArityError("the W bracket needs at least 1 derivation")
        self.model = model
        self.ring = model.ring
        self.arity = len(model.derivations) + 1

    def __call__(self, *args):
        self._check_args(args)
        matrix = [list(args)] + [[D(u) for u in args] for D in self.model.derivations]
        return determinant(matrix)


class MuBracket(Bracket):
    """mu(a_1..a_{n+1}) = sum_i (-1)^(i-1) D(a_i) [a_1, .., a_i omitted, .., a_{n+1}]."""

    kind = "Mu"

    def __init__(self, derivation: Derivation, inner: Bracket):
        if inner.ring is None:
            raise TypeError("mu needs an inner bracket over a polynomial model")
        if derivation.ring != inner.ring:
            raise RingMismatchError("derivation and inner bracket live in different rings")
        self.derivation = derivation
        self.inner = inner
        self.ring = inner.ring
        self.arity = inner.arity + 1

    def __call__(self, *args):
        self._check_args(args)
        total = self.ring.zero()
        for i, a in enumerate(args):
            Da = self.derivation(a)
            if not Da:
                continue
            term = Da * self.inner(*(args[:i] + args[i + 1 :]))
            total = total - term if i % 2 else total + term
        return total


def jacobian_bracket(model: PolynomialModel, args: Sequence[Polynomial]) -> Polynomial:
    return JacobianBracket(model)(*args)


def w_bracket(model: PolynomialModel, args: Sequence[Polynomial]) -> Polynomial:
    return WBracket(model)(*args)


def mu_bracket(D: Derivation, inner: Bracket, args: Sequence[Polynomial]) -> Polynomial:
    return MuBracket(D, inner)(*args)


# -- finite-dimensional structure constants --------------------------------

Vector = tuple  # coordinates over Q, canonical coefficients


def zero_vector(d: int) -> Vector:
    return (0,) * d


def basis_vector(d: int, i: int) -> Vector:
    v = [0] * d
    v[i] = 1
    return tuple(v)


def _vec_from_map(d: int, values: dict) -> Vector:
    v = [0] * d
    for k, c in values.items():
        v[k] = c
    return tuple(v)


@dataclass(frozen=True)
class StructureTable:
    """Multilinear map on Q^d given by its values on ordered basis tuples.

    ``values`` maps full ordered index tuples to sparse result maps
    ``{k: coeff}``; missing tuples are zero. No symmetry is assumed here,
    so inconsistent tables stay representable and can be caught by
    validation.
    """

    dimension: int
    arity: int
    values: dict = field(default_factory=dict)

    def value(self, idx: tuple) -> dict:
        return self.values.get(tuple(idx), {})

    def __call__(self, *vectors) -> Vector:
        if len(vectors) != self.arity:
            raise BracketArityError(f"table has arity {self.arity}, got {len(vectors)} arguments")
        for v in vectors:
            if len(v) != self.dimension:
                raise ValueError(f"vector length {len(v)} != dimension {self.dimension}")
        supports = [[(i, c) for i, c in enumerate(v) if c] for v in vectors]
        out = [0] * self.dimension
        for combo in itertools.product(*supports):
            val = self.values.get(tuple(i for i, _ in combo))
            if not val:
                continue
            scale = 1
            for _, c in combo:
                scale *= c
            for k, c in val.items():
                out[k] += scale * c
        return tuple(as_coeff(c) for c in out)

    def is_zero(self) -> bool:
        return not any(self.values.values())


class StructureConstantBracket(Bracket):
    kind = "StructureConstant"

    def __init__(self, table: StructureTable):
        self.table = table
        self.arity = table.arity
        self.dimension = table.dimension

    def __call__(self, *args):
        return self.table(*args)


def structure_constant_bracket(table: StructureTable, args) -> Vector:
    return table(*args)


def vector_product_table(n: int) -> StructureTable:
    """Filippov's vector product n-Lie algebra on n+1 basis vectors.

    [e_{s(0)}, .., e_{s(n-1)}] = sign(s) * (-1)^i * e_i where i is the
    omitted 0-based index; e.g. [e_0, e_1, e_2] = -e_3 for n = 3.
    """
    d = n + 1
    values = {}
    for omitted in range(d):
        rest = [k for k in range(d) if k != omitted]
        base = -1 if omitted % 2 else 1
        for perm in itertools.permutations(rest):
            values[perm] = {omitted: base * permutation_sign(perm)}
    return StructureTable(d, n, values)


def direct_sum(first: StructureTable, second: StructureTable) -> StructureTable:
    """Block direct sum of two tables of equal arity (cross terms are zero)."""
    if first.arity != second.arity:
        raise ValueError("direct sum needs equal arities")
    shift = first.dimension
    values = dict(first.values)
    for idx, val in second.values.items():
        values[tuple(i + shift for i in idx)] = {k + shift: c for k, c in val.items()}
    return StructureTable(first.dimension + second.dimension, first.arity, values)


def _parse_value(raw, d: int, where: str) -> dict:
    if not isinstance(raw, dict):
        raise TableFormatError(f"{where}: value must be an object mapping index to rational")
    out = {}
    for key, c in raw.items():
        try:
            k = int(key)
        except (TypeError, ValueError):
            raise TableFormatError(f"{where}: bad basis index {key!r}") from None
        if not 0 <= k < d:
            raise TableFormatError(f"{where}: basis index {k} out of range")
        try:
            c = as_coeff(c if isinstance(c, (str, int)) and not isinstance(c, bool) else None)
        except (TypeError, ValueError, ZeroDivisionError):
            raise TableFormatError(f"{where}: bad rational {c!r}") from None
        if c:
            out[k] = c
    return out


def _load_entries(entries, d: int, arity: int, symmetric: bool, name: str) -> dict:
    if not isinstance(entries, list):
        raise TableFormatError(f"{name} must be a list")
    explicit: dict = {}
    for n, entry in enumerate(entries):
        where = f"{name}[{n}]"
        if not isinstance(entry, dict) or "args" not in entry or "value" not in entry:
            raise TableFormatError(f"{where}: entries need 'args' and 'value'")
        args = entry["args"]
        if (
            not isinstance(args, list)
            or len(args) != arity
            or not all(isinstance(i, int) and not isinstance(i, bool) and 0 <= i < d for i in args)
        ):
            raise TableFormatError(f"{where}: args must be {arity} basis indices in [0, {d})")
        value = _parse_value(entry["value"], d, where)
        key = tuple(args)
        if key in explicit and explicit[key] != value:
            raise TableFormatError(f"{where}: inconsistent duplicate entry for args {args}")
        explicit[key] = value
    values = dict(explicit)
    for key, value in explicit.items():
        for perm in itertools.permutations(range(arity)):
            image = tuple(key[p] for p in perm)
            if image in values:
                continue
            sign = 1 if symmetric else permutation_sign(perm)
            values[image] = {k: sign * c for k, c in value.items()}
    return {k: v for k, v in values.items() if v}


def load_tables(doc) -> tuple:
    """Parse a structure-constant document into ``(bracket, product_or_None)``.

    Explicit entries are kept verbatim; each entry's skew (bracket) or
    symmetric (product) orbit is completed only where no explicit value
    was given.
    """
    if not isinstance(doc, dict):
        raise TableFormatError("document must be a JSON object")
    d, n = doc.get("dimension"), doc.get("arity")
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise TableFormatError("'dimension' must be a positive integer")
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise TableFormatError("'arity' must be an integer >= 2")
    bracket = StructureTable(d, n, _load_entries(doc.get("bracket", []), d, n, False, "bracket"))
    product = None
    if "product" in doc:
        product = StructureTable(d, 2, _load_entries(doc["product"], d, 2, True, "product"))
    return bracket, product


def load_tables_json(text: str) -> tuple:
    return load_tables(json.loads(text))


def _coeff_str(c) -> str:
    return str(Fraction(c))


def tables_to_doc(bracket: StructureTable, product: Optional[StructureTable] = None) -> dict:
    """Serialize tables listing only sorted index tuples (the loader completes orbits)."""

    def entries(table, keep):
        out = []
        for idx in sorted(table.values):
            if keep(idx) and table.values[idx]:
                out.append(
                    {
                        "args": list(idx),
                        "value": {str(k): _coeff_str(c) for k, c in sorted(table.values[idx].items())},
                    }
                )
        return out

    doc = {
        "dimension": bracket.dimension,
        "arity": bracket.arity,
        "bracket": entries(bracket, lambda idx: list(idx) == sorted(set(idx))),
    }
    if product is not None:
        doc["product"] = entries(product, lambda idx: idx[0] <= idx[1])
    return doc
