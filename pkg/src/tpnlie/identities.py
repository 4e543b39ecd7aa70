"""Defect polynomials for the n-Lie / transposed Poisson identity catalog.

Each ``check_*`` function evaluates one identity on a concrete tuple and
returns a :class:`DefectReport` whose ``defect`` is the exact difference of
the two sides. Everything is built from the bracket callable alone, so a
zero defect is evidence about the bracket and not a rewriting artifact.
"""
from __future__ import annotations

import enum
import json
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .brackets import Bracket, BracketArityError, MuBracket
from .exact_poly import Derivation, Polynomial, PolynomialRing


class IdentityId(str, enum.Enum):
    JACOBI = "jacobi"
    JAC_LEIBNIZ = "jac-leibniz"
    TRANSPOSED_LEIBNIZ = "transposed-leibniz"
    BRACKET_H = "bracket-h"
    ALTERNATING_SUM = "alternating-sum"
    UNIT_PAIR = "unit-pair"
    UNIT_PAIR_H = "unit-pair-h"
    UNITAL_EXPANSION = "unital-expansion"
    UNIT_LEIBNIZ = "unit-leibniz"
    STRONG = "strong"
    H_INSERTION = "h-insertion"
    MU_TRANSPOSED_LEIBNIZ = "mu-transposed-leibniz"
    MU_JACOBI = "mu-jacobi"

    def __str__(self):
        return self.value


MU_IDS = (IdentityId.MU_JACOBI, IdentityId.MU_TRANSPOSED_LEIBNIZ)

# identities satisfied by every transposed Poisson n-Lie algebra of the form
# (A, ., W); used as the W model's default suite
TRANSPOSED_POISSON_IDS = (
    IdentityId.JACOBI,
    IdentityId.TRANSPOSED_LEIBNIZ,
    IdentityId.BRACKET_H,
    IdentityId.ALTERNATING_SUM,
    IdentityId.UNIT_PAIR,
    IdentityId.UNIT_PAIR_H,
    IdentityId.UNITAL_EXPANSION,
    IdentityId.UNIT_LEIBNIZ,
    IdentityId.STRONG,
    IdentityId.H_INSERTION,
)

# identities of the Jacobian bracket; the unit-pair sums vanish for any skew bracket
JACOBIAN_IDS = (
    IdentityId.JACOBI,
    IdentityId.JAC_LEIBNIZ,
    IdentityId.UNIT_PAIR,
    IdentityId.UNIT_PAIR_H,
)


@dataclass(frozen=True)
class DefectReport:
    identity: IdentityId
    tuple: tuple
    defect: Polynomial
    trial: Optional[int] = None

    @property
    def holds(self) -> bool:
        return self.defect.is_zero()

    def to_dict(self) -> dict:
        return {
            "identity": self.identity.value,
            "trial": self.trial,
            "holds": self.holds,
            "defect": str(self.defect),
        }


def reports_to_json(reports: Sequence[DefectReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2)


@dataclass(frozen=True)
class Sampler:
    """Deterministic source of random polynomials.

    Every (identity, trial) pair gets its own stream derived from the seed,
    so adding or reordering identities never changes another's samples.
    """

    seed: int = 42
    max_degree: int = 3
    coeff_bound: int = 5

    def rng(self, identity, trial: int) -> random.Random:
        return random.Random(f"{self.seed}/{identity}/{trial}")

    def polynomial(self, ring: PolynomialRing, rng: random.Random) -> Polynomial:
        b = self.coeff_bound
        terms = {e: rng.randint(-b, b) for e in ring.monomials(self.max_degree)}
        return Polynomial(ring, terms)

    def polynomials(self, ring: PolynomialRing, count: int, rng: random.Random) -> list:
        return [self.polynomial(ring, rng) for _ in range(count)]


def _sign(i: int) -> int:
    # (-1)^(i-1) for the 1-based position i+1
    return -1 if i % 2 else 1


def _require(b: Bracket, count: int, got: int, what: str):
    if got != count:
        raise BracketArityError(f"{what}: expected {count} arguments for arity {b.arity}, got {got}")


def _report(identity, args, defect, trial=None) -> DefectReport:
    return DefectReport(IdentityId(identity), tuple(args), defect, trial)


def check_generalized_jacobi(b: Bracket, x: Sequence, y: Sequence, identity=IdentityId.JACOBI) -> DefectReport:
    """[[x_1..x_n], y_2..y_n] - sum_i [x_1, .., [x_i, y_2..y_n], .., x_n]."""
    n = b.arity
    x, y = list(x), list(y)
    _require(b, n, len(x), "jacobi x")
    _require(b, n - 1, len(y), "jacobi y")
    defect = b(b(*x), *y)
    for i in range(n):
        inner = b(x[i], *y)
        defect = defect - b(*x[:i], inner, *x[i + 1 :])
    return _report(identity, x + y, defect)


def check_jac_leibniz(b: Bracket, u: Sequence) -> DefectReport:
    """[u_1 u_2, u_3..u_{n+1}] - u_1 [u_2, u_3..] - u_2 [u_1, u_3..]."""
    u = list(u)
    _require(b, b.arity + 1, len(u), "jac-leibniz")
    rest = u[2:]
    defect = b(u[0] * u[1], *rest) - u[0] * b(u[1], *rest) - u[1] * b(u[0], *rest)
    return _report(IdentityId.JAC_LEIBNIZ, u, defect)


def check_transposed_leibniz(b: Bracket, h: Polynomial, a: Sequence, identity=IdentityId.TRANSPOSED_LEIBNIZ) -> DefectReport:
    """n h [a_1..a_n] - sum_i [a_1, .., h a_i, .., a_n]."""
    n = b.arity
    a = list(a)
    _require(b, n, len(a), "transposed-leibniz")
    defect = n * h * b(*a)
    for i in range(n):
        defect = defect - b(*a[:i], h * a[i], *a[i + 1 :])
    return _report(identity, [h] + a, defect)


def check_strong(b: Bracket, h, y1, y2, x: Sequence) -> DefectReport:
    """y1 [h y2, x..] - y2 [h y1, x..] + sum_i (-1)^(i-1) h x_i [y1, y2, x without x_i]."""
    n = b.arity
    x = list(x)
    _require(b, n - 1, len(x), "strong")
    defect = y1 * b(h * y2, *x) - y2 * b(h * y1, *x)
    for i in range(n - 1):
        term = h * x[i] * b(y1, y2, *x[:i], *x[i + 1 :])
        defect = defect + term if _sign(i) > 0 else defect - term
    return _report(IdentityId.STRONG, [h, y1, y2] + x, defect)


def check_bracket_h(b: Bracket, h, x: Sequence, y: Sequence) -> DefectReport:
    """[[x..] h, y..] - sum_i (-1)^(i-1) [[x_i, y..] h, x without x_i]."""
    n = b.arity
    x, y = list(x), list(y)
    _require(b, n, len(x), "bracket-h x")
    _require(b, n - 1, len(y), "bracket-h y")
    defect = b(b(*x) * h, *y)
    for i in range(n):
        term = b(b(x[i], *y) * h, *x[:i], *x[i + 1 :])
        defect = defect - term if _sign(i) > 0 else defect + term
    return _report(IdentityId.BRACKET_H, [h] + x + y, defect)


def check_alternating_sum(b: Bracket, x: Sequence) -> DefectReport:
    """sum_i (-1)^(i-1) x_i [x_1, .., x_i omitted, .., x_{n+1}]."""
    x = list(x)
    _require(b, b.arity + 1, len(x), "alternating-sum")
    defect = x[0].ring.zero()
    for i in range(len(x)):
        term = x[i] * b(*x[:i], *x[i + 1 :])
        defect = defect + term if _sign(i) > 0 else defect - term
    return _report(IdentityId.ALTERNATING_SUM, x, defect)


def _unit_pair(b: Bracket, a: list):
    # sum over i != j of (-1)^(j-1) a_i a_j [1, a_1.., a_j omitted, .., a_{n+1} in slot i, .., a_n]
    n = b.arity
    one = a[0].ring.one()
    defect = one.ring.zero()
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            slots = [a[n] if k == i else a[k] for k in range(n) if k != j]
            term = a[i] * a[j] * b(one, *slots)
            defect = defect + term if _sign(j) > 0 else defect - term
    return defect


def _unit_pair_h(b: Bracket, a: list):
    # sum over i != j of (-1)^(i-1) (-1)^(p-1) a_i a_j [1, a_{n+1}, a_1.., a_j, a_i omitted, .., a_n]
    # where p is the 1-based position of a_j once a_i is removed
    n = b.arity
    one = a[0].ring.one()
    defect = one.ring.zero()
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            p = j if j < i else j - 1
            slots = [a[k] for k in range(n) if k not in (i, j)]
            term = a[i] * a[j] * b(one, a[n], *slots)
            defect = defect + term if _sign(i) * _sign(p) > 0 else defect - term
    return defect


def check_unit_pair_identities(b: Bracket, a: Sequence, identity=IdentityId.UNIT_PAIR) -> DefectReport:
    """Signed double sums over a_i a_j [1, ...]; both vanish for any skew bracket."""
    a = list(a)
    _require(b, b.arity + 1, len(a), str(identity))
    identity = IdentityId(identity)
    if identity is IdentityId.UNIT_PAIR:
        defect = _unit_pair(b, a)
    elif identity is IdentityId.UNIT_PAIR_H:
        defect = _unit_pair_h(b, a)
    else:
        raise ValueError(f"{identity} is not a unit-pair identity")
    return _report(identity, a, defect)


def check_unital_expansion(b: Bracket, u: Sequence) -> DefectReport:
    """[u_1..u_n] - sum_i (-1)^(i-1) u_i [1, u_1, .., u_i omitted, .., u_n]."""
    u = list(u)
    _require(b, b.arity, len(u), "unital-expansion")
    one = u[0].ring.one()
    defect = b(*u)
    for i in range(len(u)):
        term = u[i] * b(one, *u[:i], *u[i + 1 :])
        defect = defect - term if _sign(i) > 0 else defect + term
    return _report(IdentityId.UNITAL_EXPANSION, u, defect)


def check_unit_leibniz(b: Bracket, u: Sequence) -> DefectReport:
    """[1, u_1 u_2, u_3..u_n] - u_1 [1, u_2, u_3..] - u_2 [1, u_1, u_3..]."""
    u = list(u)
    _require(b, b.arity, len(u), "unit-leibniz")
    one = u[0].ring.one()
    rest = u[2:]
    defect = b(one, u[0] * u[1], *rest) - u[0] * b(one, u[1], *rest) - u[1] * b(one, u[0], *rest)
    return _report(IdentityId.UNIT_LEIBNIZ, u, defect)


def check_h_insertion(b: Bracket, h, x: Sequence, y: Sequence) -> DefectReport:
    """sum_j [[x..], y_2, .., y_j h, .., y_n]
    - sum_i (-1)^(i-1) sum_{j != i} [[x_i, y..], x_1, .., x_j h, .., x_i omitted, .., x_n].
    """
    n = b.arity
    x, y = list(x), list(y)
    _require(b, n, len(x), "h-insertion x")
    _require(b, n - 1, len(y), "h-insertion y")
    outer = b(*x)
    defect = h.ring.zero()
    for j in range(n - 1):
        defect = defect + b(outer, *[y[k] * h if k == j else y[k] for k in range(n - 1)])
    for i in range(n):
        inner = b(x[i], *y)
        for j in range(n):
            if j == i:
                continue
            slots = [x[k] * h if k == j else x[k] for k in range(n) if k != i]
            term = b(inner, *slots)
            defect = defect - term if _sign(i) > 0 else defect + term
    return _report(IdentityId.H_INSERTION, [h] + x + y, defect)


# identity -> (number of sampled arguments for bracket arity n, runner)
_RUNNERS: dict = {
    IdentityId.JACOBI: (lambda n: 2 * n - 1, lambda b, a: check_generalized_jacobi(b, a[: b.arity], a[b.arity :])),
    IdentityId.JAC_LEIBNIZ: (lambda n: n + 1, check_jac_leibniz),
    IdentityId.TRANSPOSED_LEIBNIZ: (lambda n: n + 1, lambda b, a: check_transposed_leibniz(b, a[0], a[1:])),
    IdentityId.BRACKET_H: (
        lambda n: 2 * n,
        lambda b, a: check_bracket_h(b, a[0], a[1 : b.arity + 1], a[b.arity + 1 :]),
    ),
    IdentityId.ALTERNATING_SUM: (lambda n: n + 1, check_alternating_sum),
    IdentityId.UNIT_PAIR: (lambda n: n + 1, lambda b, a: check_unit_pair_identities(b, a, IdentityId.UNIT_PAIR)),
    IdentityId.UNIT_PAIR_H: (lambda n: n + 1, lambda b, a: check_unit_pair_identities(b, a, IdentityId.UNIT_PAIR_H)),
    IdentityId.UNITAL_EXPANSION: (lambda n: n, check_unital_expansion),
    IdentityId.UNIT_LEIBNIZ: (lambda n: n, check_unit_leibniz),
    IdentityId.STRONG: (lambda n: n + 2, lambda b, a: check_strong(b, a[0], a[1], a[2], a[3:])),
    IdentityId.H_INSERTION: (
        lambda n: 2 * n,
        lambda b, a: check_h_insertion(b, a[0], a[1 : b.arity + 1], a[b.arity + 1 :]),
    ),
}


def parse_identity_list(text: str, universe: Sequence[IdentityId]) -> list:
    """Comma-separated identity names; ``all`` expands to ``universe``."""
    out = []
    for name in (s.strip() for s in text.split(",")):
        if not name:
            continue
        if name == "all":
            out.extend(universe)
        else:
            out.append(IdentityId(name))
    seen = set()
    return [i for i in out if not (i in seen or seen.add(i))]


def run_identity(b: Bracket, identity, sampler: Sampler, trial: int, derivation: Optional[Derivation] = None) -> DefectReport:
    identity = IdentityId(identity)
    rng = sampler.rng(identity.value, trial)
    if identity in MU_IDS:
        if derivation is None:
            raise ValueError(f"{identity} needs a derivation for the mu construction")
        mu = MuBracket(derivation, b)
        base = IdentityId.JACOBI if identity is IdentityId.MU_JACOBI else IdentityId.TRANSPOSED_LEIBNIZ
        count, runner = _RUNNERS[base]
        args = sampler.polynomials(mu.ring, count(mu.arity), rng)
        rep = runner(mu, args)
        return DefectReport(identity, rep.tuple, rep.defect, trial)
    count, runner = _RUNNERS[identity]
    args = sampler.polynomials(b.ring, count(b.arity), rng)
    rep = runner(b, args)
    return DefectReport(identity, rep.tuple, rep.defect, trial)


def verify_suite(
    b: Bracket,
    ids: Sequence,
    sampler: Sampler = Sampler(),
    trials: int = 50,
    derivation: Optional[Derivation] = None,
) -> list:
    """Run every identity on ``trials`` sampled tuples; identity-major order."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    return [run_identity(b, i, sampler, t, derivation) for i in ids for t in range(trials)]


def check_mu_axioms(D: Derivation, inner: Bracket, sampler: Sampler = Sampler(), trials: int = 25) -> list:
    """Jacobi and the transposed Leibniz rule for the (n+1)-ary mu bracket."""
    return verify_suite(inner, MU_IDS, sampler, trials, derivation=D)


def summarize(reports: Sequence[DefectReport]) -> dict:
    """identity -> (number of trials that held, number of trials)."""
    out: dict = {}
    for r in reports:
        held, total = out.get(r.identity, (0, 0))
        out[r.identity] = (held + r.holds, total + 1)
    return out
