import itertools
import json
import random
from fractions import Fraction

import pytest
import sympy

from tpnlie.brackets import (
    BracketArityError,
    JacobianBracket,
    MuBracket,
    PolynomialModel,
    StructureConstantBracket,
    TableFormatError,
    WBracket,
    basis_vector,
    jacobian_bracket,
    load_tables,
    mu_bracket,
    structure_constant_bracket,
    tables_to_doc,
    vector_product_table,
    w_bracket,
    zero_vector,
)
from tpnlie.exact_poly import Derivation, Polynomial, PolynomialRing, RingMismatchError
from tpnlie.identities import Sampler, check_generalized_jacobi, check_jac_leibniz


def sample_stream(ring, seed, count, max_degree=3):
    s = Sampler(seed=seed, max_degree=max_degree, coeff_bound=5)
    return s.polynomials(ring, count, s.rng("tests", 0))


class TestModel:
    def test_noncommuting_derivations_rejected(self, qx):
        (t,) = qx.gens()
        with pytest.raises(ValueError):
            PolynomialModel(qx, [Derivation.partial(qx, 0), Derivation(qx, [t])])

    def test_unit(self, xy):
        assert PolynomialModel.coordinate(xy).unit == 1


class TestJacobian:
    def test_examples(self, xy, jac2):
        x, y = xy.gens()
        model = jac2.model
        assert jacobian_bracket(model, [x, y]) == 1
        assert jacobian_bracket(model, [x**2, y]) == 2 * x
        assert jacobian_bracket(model, [x * y, x]) == -x

    def test_arity_and_ring_errors(self, xy, jac2):
        x, y = xy.gens()
        with pytest.raises(BracketArityError):
            jac2(x)
        with pytest.raises(RingMismatchError):
            jac2(x, PolynomialRing(["x"]).gen(0))

    @pytest.mark.parametrize("name", ["jac2", "jac3"])
    def test_jacobi_and_leibniz(self, request, name):
        b = request.getfixturevalue(name)
        rng_seed = 11
        for trial in range(25):
            args = sample_stream(b.ring, rng_seed + trial, 2 * b.arity - 1, max_degree=2)
            assert check_generalized_jacobi(b, args[: b.arity], args[b.arity :]).holds
            args = sample_stream(b.ring, 1000 + trial, b.arity + 1, max_degree=2)
            assert check_jac_leibniz(b, args).holds


class TestW:
    def test_examples(self, qx, xy, w2, w3):
        (t,) = qx.gens()
        assert w_bracket(w2.model, [qx.one(), t]) == 1
        assert w_bracket(w2.model, [t, t**2]) == t**2
        x, y = xy.gens()
        assert w_bracket(w3.model, [xy.one(), x, y]) == 1

    def test_cofactor_expansion_along_first_row(self, xy, w3):
        one = xy.one()
        for trial in range(25):
            u = sample_stream(xy, trial, 3)
            rhs = u[0] * w3(one, u[1], u[2]) - u[1] * w3(one, u[0], u[2]) + u[2] * w3(one, u[0], u[1])
            assert w3(*u) == rhs

    def test_unit_slot_is_jacobian(self, xy, w3):
        jac = JacobianBracket(w3.model)
        one = xy.one()
        for trial in range(10):
            u = sample_stream(xy, trial, 2)
            assert w3(one, *u) == jac(*u)

    def test_unit_leibniz_instance(self, xy, w3):
        one = xy.one()
        for trial in range(25):
            u1, u2, u3 = sample_stream(xy, 50 + trial, 3)
            assert w3(one, u1 * u2, u3) == u1 * w3(one, u2, u3) + u2 * w3(one, u1, u3)


@pytest.mark.parametrize("name", ["jac2", "jac3", "w2", "w3", "mu"])
def test_skew_symmetry(request, name, qx, w2):
    if name == "mu":
        b = MuBracket(Derivation.partial(qx, 0), w2)
    else:
        b = request.getfixturevalue(name)
    for trial in range(50):
        args = sample_stream(b.ring, 300 + trial, b.arity, max_degree=3 if b.ring.nvars < 3 else 2)
        value = b(*args)
        i = trial % (b.arity - 1)
        swapped = list(args)
        swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
        assert b(*swapped) == -value
        repeated = list(args)
        repeated[i + 1] = repeated[i]
        assert b(*repeated).is_zero()


class TestMu:
    def test_examples(self, qx, w2):
        (t,) = qx.gens()
        D = Derivation.partial(qx, 0)
        assert mu_bracket(D, w2, [qx.one(), t, t**2]) == 0
        assert mu_bracket(D, w2, [t, t, t**3]) == 0

    def test_against_term_by_term_expansion(self, qx, w2):
        # sympy oracle: mu(a1,a2,a3) = a1'[a2,a3] - a2'[a1,a3] + a3'[a1,a2], [u,v] = u v' - v u'
        s = sympy.Symbol("x")
        W = lambda u, v: u * sympy.diff(v, s) - v * sympy.diff(u, s)
        (t,) = qx.gens()
        D = Derivation.partial(qx, 0)
        cases = [(s, s**2, s**3), (s + 1, s**2 - 2, 3 * s**4), (s**2, 1 - s, s**3 + s)]
        for a in cases:
            expected = sympy.expand(
                sympy.diff(a[0], s) * W(a[1], a[2])
                - sympy.diff(a[1], s) * W(a[0], a[2])
                + sympy.diff(a[2], s) * W(a[0], a[1])
            )
            args = [qx.parse(str(e).replace("**", "^")) for e in a]
            got = mu_bracket(D, w2, args)
            assert got == qx.parse(str(expected).replace("**", "^"))
        assert mu_bracket(D, w2, [t, t**2, t**3]) == 0

    def test_errors(self, qx, xy, w2):
        D = Derivation.partial(xy, 0)
        with pytest.raises(RingMismatchError):
            MuBracket(D, w2)
        mu = MuBracket(Derivation.partial(qx, 0), w2)
        with pytest.raises(BracketArityError):
            mu(qx.one(), qx.one())


def hodge_bracket(u, v, w):
    # independent oracle: component k is (-1)^k times the 3x3 minor of [u; v; w] without column k
    out = []
    for k in range(4):
        cols = [c for c in range(4) if c != k]
        minor = sympy.Matrix([[r[c] for c in cols] for r in (u, v, w)]).det()
        out.append((-1) ** k * minor)
    return tuple(int(c) for c in out)


class TestStructureConstants:
    def test_a4_matches_hodge_oracle(self):
        table = vector_product_table(3)
        E = [basis_vector(4, i) for i in range(4)]
        assert structure_constant_bracket(table, E[:3]) == (0, 0, 0, -1)
        for idx in itertools.product(range(4), repeat=3):
            args = [E[i] for i in idx]
            assert table(*args) == hodge_bracket(*args)
        rng = random.Random(3)
        for _ in range(20):
            vs = [tuple(rng.randint(-4, 4) for _ in range(4)) for _ in range(3)]
            assert table(*vs) == hodge_bracket(*vs)

    def test_zero_and_repeated_arguments(self):
        table = vector_product_table(3)
        b = StructureConstantBracket(table)
        e = [basis_vector(4, i) for i in range(4)]
        assert b(zero_vector(4), e[1], e[2]) == zero_vector(4)
        assert b(e[1], e[1], e[2]) == zero_vector(4)

    def test_dimension_mismatch(self):
        table = vector_product_table(3)
        with pytest.raises(ValueError):
            table((1, 0, 0), (0, 1, 0), (0, 0, 1))

    def test_loader_completes_orbits(self):
        doc = {"dimension": 3, "arity": 2, "bracket": [{"args": [0, 1], "value": {"2": "1/2"}}],
               "product": [{"args": [0, 1], "value": {"1": 3}}]}
        br, pr = load_tables(doc)
        assert br.value((1, 0)) == {2: Fraction(-1, 2)}
        assert pr.value((1, 0)) == {1: 3}
        assert br.value((0, 0)) == {}

    def test_loader_rejects_inconsistent_duplicates(self):
        doc = {"dimension": 3, "arity": 2, "bracket": [
            {"args": [0, 1], "value": {"2": "1"}},
            {"args": [0, 1], "value": {"2": "2"}},
        ]}
        with pytest.raises(TableFormatError):
            load_tables(doc)
        doc["bracket"][1]["value"] = {"2": "1"}
        load_tables(doc)

    @pytest.mark.parametrize("doc", [
        [],
        {"dimension": 0, "arity": 2},
        {"dimension": 2, "arity": 1},
        {"dimension": 2, "arity": 2, "bracket": [{"args": [0, 5], "value": {}}]},
        {"dimension": 2, "arity": 2, "bracket": [{"args": [0, 1], "value": {"7": "1"}}]},
        {"dimension": 2, "arity": 2, "bracket": [{"args": [0, 1], "value": {"0": 0.5}}]},
        {"dimension": 2, "arity": 2, "bracket": [{"args": [0, 1]}]},
    ])
    def test_loader_rejects_malformed(self, doc):
        with pytest.raises(TableFormatError):
            load_tables(doc)

    def test_serialization_roundtrip(self):
        table = vector_product_table(3)
        doc = json.loads(json.dumps(tables_to_doc(table)))
        loaded, product = load_tables(doc)
        assert loaded.values == table.values
        assert product is None
