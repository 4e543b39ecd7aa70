"""Exact multivariate polynomials over the rationals.

Coefficients are Python ``int`` or ``fractions.Fraction``; a ``Fraction``
with denominator 1 is always stored as an ``int`` so equality and hashing
are canonical. Polynomials are immutable.
"""
from __future__ import annotations

import itertools
import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence, Union

Coeff = Union[int, Fraction]
Monomial = tuple  # exponent vector, one entry per ring variable


class RingMismatchError(ValueError):
    """Operands live in different polynomial rings."""


class PolynomialParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


def as_coeff(value) -> Coeff:
    """Normalize an int/Fraction/rational string to a canonical coefficient."""
    if isinstance(value, bool):
        raise TypeError("bool is not a valid coefficient")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        value = Fraction(value.strip())
    elif isinstance(value, Rational):
        value = Fraction(value.numerator, value.denominator)
    else:
        raise TypeError(f"not an exact rational: {value!r}")
    return value.numerator if value.denominator == 1 else value


def format_coeff(c: Coeff) -> str:
    return str(c)


class PolynomialRing:
    """The ambient ring Q[x_1, ..., x_k] with named variables."""

    __slots__ = ("variables",)

    def __init__(self, variables: Sequence[str]):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        for name in variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
                raise ValueError(f"invalid variable name {name!r}")
        self.variables = variables

    @classmethod
    def standard(cls, k: int) -> "PolynomialRing":
        """Q[x1, ..., xk]."""
        return cls([f"x{i}" for i in range(1, k + 1)])

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __eq__(self, other):
        return isinstance(other, PolynomialRing) and self.variables == other.variables

    def __hash__(self):
        return hash(("PolynomialRing", self.variables))

    def __repr__(self):
        return f"PolynomialRing({list(self.variables)!r})"

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = as_coeff(c)
        return Polynomial._raw(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, i: int) -> "Polynomial":
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range for {self.nvars} variables")
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial._raw(self, {tuple(exps): 1})

    def gens(self) -> tuple:
        return tuple(self.gen(i) for i in range(self.nvars))

    def monomials(self, max_degree: int) -> list:
        """All exponent vectors of total degree <= max_degree, in grlex order."""
        out = [
            e
            for e in itertools.product(range(max_degree + 1), repeat=self.nvars)
            if sum(e) <= max_degree
        ]
        out.sort(key=_grlex_key)
        return out

    def parse(self, text: str) -> "Polynomial":
        return _Parser(self, text).parse()


def _grlex_key(exps):
    return (sum(exps), exps)


class Polynomial:
    """An element of a :class:`PolynomialRing`; sparse map monomial -> coefficient."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolynomialRing, terms: Mapping = ()):
        terms = dict(terms)
        clean = {}
        for exps, c in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != ring.nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for ring {ring}")
            c = as_coeff(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
        self.ring = ring
        self._terms = {e: _norm(c) for e, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        # terms must already be pruned and canonical
        obj = cls.__new__(cls)
        obj.ring = ring
        obj._terms = terms
        obj._hash = None
        return obj

    # -- inspection --------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> Iterator:
        return iter(self._terms.items())

    def coefficient(self, exps) -> Coeff:
        return self._terms.get(tuple(exps), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def total_degree(self) -> int:
        """Maximum total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    # -- coercion ----------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.ring.constant(other)
        return NotImplemented

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _norm(s)
            else:
                out.pop(e, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {e: -c for e, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = as_coeff(other)
            if not c:
                return self.ring.zero()
            return Polynomial._raw(self.ring, {e: _norm(v * c) for e, v in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple([x + y for x, y in zip(ea, eb)])
                out[e] = get(e, 0) + ca * cb
        return Polynomial._raw(self.ring, {e: _norm(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                raise ZeroDivisionError("polynomial division by zero")
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    # -- comparison --------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == self.ring.constant(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # -- calculus ----------------------------------------------------------
    def diff(self, var_index: int) -> "Polynomial":
        return partial_derivative(self, var_index)

    # -- printing ----------------------------------------------------------
    def sorted_terms(self) -> list:
        """Terms in descending graded-lexicographic order."""
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for exps, c in self.sorted_terms():
            factors = []
            for name, e in zip(self.ring.variables, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(c)
            if not factors:
                body = format_coeff(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = format_coeff(mag) + "*" + "*".join(factors)
            pieces.append(("-" if c < 0 else "+", body))
        sign, body = pieces[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _check_same_ring(p: Polynomial, q: Polynomial):
    if p.ring != q.ring:
        raise RingMismatchError(f"{p.ring} vs {q.ring}")


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    _check_same_ring(p, q)
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    _check_same_ring(p, q)
    return p * q


def partial_derivative(p: Polynomial, var_index: int) -> Polynomial:
    if not 0 <= var_index < p.ring.nvars:
        raise IndexError(f"variable index {var_index} out of range for {p.ring.nvars} variables")
    out = {}
    for exps, c in p._terms.items():
        e = exps[var_index]
        if e:
            lowered = exps[:var_index] + (e - 1,) + exps[var_index + 1 :]
            out[lowered] = _norm(c * e)
    return Polynomial._raw(p.ring, out)


def divide_exact(p: Polynomial, q: Polynomial) -> Polynomial:
    """Return ``p / q``, raising ``ArithmeticError`` if ``q`` does not divide ``p``."""
    _check_same_ring(p, q)
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lead_e, lead_c = q.sorted_terms()[0]
    quotient: dict = {}
    rem = p
    while rem:
        e, c = rem.sorted_terms()[0]
        diff = tuple(a - b for a, b in zip(e, lead_e))
        if any(d < 0 for d in diff):
            raise ArithmeticError(f"{q} does not divide {p}")
        t = _norm(Fraction(c) / lead_c)
        quotient[diff] = t
        rem = rem - Polynomial._raw(p.ring, {diff: t}) * q
    return Polynomial._raw(p.ring, quotient)


class Derivation:
    """The derivation sum_j c_j * d/dx_j of a polynomial ring."""

    __slots__ = ("ring", "coefficients")

    def __init__(self, ring: PolynomialRing, coefficients: Sequence[Polynomial]):
        coefficients = tuple(coefficients)
        if len(coefficients) != ring.nvars:
            raise ValueError(
                f"derivation needs {ring.nvars} coefficient polynomials, got {len(coefficients)}"
            )
        for c in coefficients:
            if not isinstance(c, Polynomial) or c.ring != ring:
                raise RingMismatchError("derivation coefficient is not in the ring")
        self.ring = ring
        self.coefficients = coefficients

    @classmethod
    def partial(cls, ring: PolynomialRing, var_index: int) -> "Derivation":
        coeffs = [ring.zero()] * ring.nvars
        coeffs[var_index] = ring.one()
        return cls(ring, coeffs)

    def __call__(self, p: Polynomial) -> Polynomial:
        return apply_derivation(self, p)

    def commutator(self, other: "Derivation") -> "Derivation":
        """[D, E] as a derivation: its k-th coefficient is D(e_k) - E(d_k)."""
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")
        return Derivation(
            self.ring,
            [self(e) - other(d) for d, e in zip(self.coefficients, other.coefficients)],
        )

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coefficients)

    def __eq__(self, other):
        return (
            isinstance(other, Derivation)
            and self.ring == other.ring
            and self.coefficients == other.coefficients
        )

    def __hash__(self):
        return hash((self.ring, self.coefficients))

    def __repr__(self):
        parts = [
            f"({c})*d/d{v}" for c, v in zip(self.coefficients, self.ring.variables) if c
        ]
        return "Derivation(" + (" + ".join(parts) or "0") + ")"


def apply_derivation(D: Derivation, p: Polynomial) -> Polynomial:
    if D.ring != p.ring:
        raise RingMismatchError(f"{D.ring} vs {p.ring}")
    out = p.ring.zero()
    for j, c in enumerate(D.coefficients):
        if c:
            out = out + c * partial_derivative(p, j)
    return out


def derivations_commute(D: Derivation, E: Derivation) -> bool:
    return D.commutator(E).is_zero()


def _det_cofactor(m):
    size = len(m)
    if size == 1:
        return m[0][0]
    if size == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = None
    for j in range(size):
        if not m[0][j]:
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = m[0][j] * _det_cofactor(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return m[0][0]  # whole first row is zero
    return total


def _det_bareiss(m):
    a = [list(row) for row in m]
    size = len(a)
    sign = 1
    prev = None
    for k in range(size - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, size) if a[i][k]), None)
            if swap is None:
                return a[0][0].ring.zero()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num if prev is None else divide_exact(num, prev)
        prev = a[k][k]
    det = a[size - 1][size - 1]
    return det if sign > 0 else -det


def determinant(m: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Exact determinant of a square matrix of polynomials.

    Cofactor expansion up to size 4, fraction-free Bareiss elimination beyond.
    """
    rows = [list(r) for r in m]
    size = len(rows)
    if size == 0 or any(len(r) != size for r in rows):
        raise ValueError("determinant needs a non-empty square matrix")
    ring = None
    for r in rows:
        for x in r:
            if isinstance(x, Polynomial):
                if ring is None:
                    ring = x.ring
                elif x.ring != ring:
                    raise RingMismatchError(f"{ring} vs {x.ring}")
    if ring is None:
        raise TypeError("determinant entries must be Polynomials")
    rows = [[x if isinstance(x, Polynomial) else ring.constant(x) for x in r] for r in rows]
    if size <= 4:
        return _det_cofactor(rows)
    return _det_bareiss(rows)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class _Parser:
    """Recursive-descent parser: sums of products of numbers, variables and powers."""

    def __init__(self, ring: PolynomialRing, text: str):
        self.ring = ring
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                break  # trailing whitespace
            kind = "int" if m.group(1) else "name" if m.group(2) else "op"
            self.tokens.append((kind, m.group(m.lastindex), m.start(m.lastindex)))
            pos = m.end()
        self.i = 0
        self.index = {v: k for k, v in enumerate(ring.variables)}

    def error(self, msg):
        pos = self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text)
        raise PolynomialParseError(msg, self.text, pos)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.tokens:
            self.error("empty expression")
        p = self.expr()
        if self.i != len(self.tokens):
            self.error("unexpected token")
        return p

    def expr(self):
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            p = self.term()
            if val == "-":
                p = -p
        else:
            p = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                q = self.term()
                p = p + q if val == "+" else p - q
            else:
                return p

    def term(self):
        p = self.power()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                q = self.power()
                if val == "*":
                    p = p * q
                else:
                    if not q.is_constant() or q.is_zero():
                        self.error("division only by nonzero constants")
                    p = p * (Fraction(1) / Fraction(q.coefficient((0,) * self.ring.nvars)))
            else:
                return p

    def power(self):
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, _ = self.peek()
            if kind != "int":
                self.error("exponent must be a non-negative integer")
            self.take()
            base = base ** int(val)
        return base

    def atom(self):
        kind, val, _ = self.peek()
        if kind == "int":
            self.take()
            return self.ring.constant(int(val))
        if kind == "name":
            if val not in self.index:
                self.error(f"unknown variable {val!r}")
            self.take()
            return self.ring.gen(self.index[val])
        if kind == "op" and val == "(":
            self.take()
            p = self.expr()
            kind, val, _ = self.peek()
            if not (kind == "op" and val == ")"):
                self.error("expected ')'")
            self.take()
            return p
        if kind == "op" and val == "-":
            self.take()
            return -self.power()
        self.error("expected a number, variable or '('")


def parse_polynomial(text: str, ring: PolynomialRing) -> Polynomial:
    return ring.parse(text)
