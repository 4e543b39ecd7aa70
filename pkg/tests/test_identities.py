import json

import pytest

from tpnlie.brackets import Bracket, BracketArityError, PolynomialModel, WBracket
from tpnlie.exact_poly import Derivation, PolynomialRing
from tpnlie.identities import (
    MU_IDS,
    TRANSPOSED_POISSON_IDS,
    IdentityId,
    Sampler,
    check_alternating_sum,
    check_bracket_h,
    check_generalized_jacobi,
    check_mu_axioms,
    check_h_insertion,
    check_strong,
    check_transposed_leibniz,
    check_unit_leibniz,
    check_unit_pair_identities,
    check_unital_expansion,
    parse_identity_list,
    reports_to_json,
    summarize,
    verify_suite,
)


class ZeroBracket(Bracket):
    kind = "Zero"

    def __init__(self, ring, arity):
        self.ring = ring
        self.arity = arity

    def __call__(self, *args):
        self._check_args(args)
        return self.ring.zero()


def draw(ring, count, seed=0, max_degree=3):
    s = Sampler(seed=seed, max_degree=max_degree)
    return s.polynomials(ring, count, s.rng("identity-tests", seed))


class TestJacobi:
    def test_jacobian_random(self, jac2):
        for seed in range(5):
            a = draw(jac2.ring, 3, seed)
            assert check_generalized_jacobi(jac2, a[:2], a[2:]).holds

    def test_repeated_x(self, w3, jac2):
        for b in (w3, jac2):
            a = draw(b.ring, 2 * b.arity - 1, 9)
            x = [a[0], a[0]] + a[2 : b.arity]
            assert check_generalized_jacobi(b, x, a[b.arity :]).holds

    def test_w3_monomials(self, xy, w3):
        x, y = xy.gens()
        xs = [x**2, x * y, y**3]
        ys = [x, x * y**2]
        assert check_generalized_jacobi(w3, xs, ys).holds

    def test_arity_mismatch(self, w3, xy):
        with pytest.raises(BracketArityError):
            check_generalized_jacobi(w3, draw(xy, 2), draw(xy, 2))


class TestTransposedLeibniz:
    def test_unit_h(self, jac2, w3):
        for b in (jac2, w3):
            a = draw(b.ring, b.arity, 4)
            assert check_transposed_leibniz(b, b.ring.one(), a).holds

    def test_w2_example(self, qx, w2):
        (t,) = qx.gens()
        assert check_transposed_leibniz(w2, t, [t, t**2]).holds

    def test_jacobian_is_not_transposed(self, xy, jac2):
        # 2x Jac(x,y) - Jac(x^2,y) - Jac(x,xy) = 2x - 2x - x
        x, y = xy.gens()
        rep = check_transposed_leibniz(jac2, x, [x, y])
        assert not rep.holds
        assert rep.defect == -x


class TestStrong:
    def test_equal_ys(self, jac2, w3):
        for b in (jac2, w3):
            a = draw(b.ring, b.arity + 1, 5)
            assert check_strong(b, a[0], a[1], a[1], a[2:]).holds

    @pytest.mark.parametrize("name", ["w2", "w3"])
    def test_w_models(self, request, name):
        b = request.getfixturevalue(name)
        for seed in range(5):
            a = draw(b.ring, b.arity + 2, seed)
            assert check_strong(b, a[0], a[1], a[2], a[3:]).holds


class TestBracketH:
    def test_w3(self, w3):
        for seed in range(3):
            a = draw(w3.ring, 6, seed)
            assert check_bracket_h(w3, a[0], a[1:4], a[4:]).holds

    def test_zero_h(self, jac2):
        a = draw(jac2.ring, 4, 1)
        assert check_bracket_h(jac2, jac2.ring.zero(), a[1:3], a[3:]).holds

    def test_repeated_x(self, jac3):
        a = draw(jac3.ring, 6, 2, max_degree=2)
        assert check_bracket_h(jac3, a[0], [a[1], a[1], a[2]], a[4:]).holds


class TestAlternatingSum:
    def test_w2_example(self, qx, w2):
        (t,) = qx.gens()
        assert check_alternating_sum(w2, [t, t**2, t**3]).holds

    def test_equal_entries(self, jac2):
        a = draw(jac2.ring, 2, 3)
        assert check_alternating_sum(jac2, [a[0], a[1], a[0]]).holds

    def test_w3_random(self, w3):
        for seed in range(5):
            assert check_alternating_sum(w3, draw(w3.ring, 4, seed)).holds


class TestUnitPair:
    @pytest.mark.parametrize("name", ["jac2", "jac3", "w2", "w3"])
    @pytest.mark.parametrize("which", [IdentityId.UNIT_PAIR, IdentityId.UNIT_PAIR_H])
    def test_any_skew_bracket(self, request, name, which):
        b = request.getfixturevalue(name)
        for seed in range(3):
            a = draw(b.ring, b.arity + 1, seed, max_degree=2)
            assert check_unit_pair_identities(b, a, which).holds

    def test_identical_elements(self, w3):
        (p,) = draw(w3.ring, 1, 8)
        for which in (IdentityId.UNIT_PAIR, IdentityId.UNIT_PAIR_H):
            assert check_unit_pair_identities(w3, [p] * 4, which).holds

    def test_uniform_sign_variant_does_not_vanish(self, xy, w3):
        # with the sign (-1)^(j-1) taken from a_j's original index instead of its
        # position after a_i is removed, the symmetric pairs add up instead of cancelling
        one = xy.one()
        x, y = xy.gens()
        a = [one, one, y, x]
        n = 3
        total = xy.zero()
        for i in range(n):
            for j in range(n):
                if i != j:
                    rest = [a[k] for k in range(n) if k not in (i, j)]
                    sign = (-1) ** i * (-1) ** j
                    total = total + sign * a[i] * a[j] * w3(one, a[n], *rest)
        assert not total.is_zero()
        assert check_unit_pair_identities(w3, a, IdentityId.UNIT_PAIR_H).holds

    def test_rejects_other_tags(self, w3):
        with pytest.raises(ValueError):
            check_unit_pair_identities(w3, draw(w3.ring, 4), IdentityId.STRONG)


class TestUnital:
    def test_w_any_n(self, w2, w3):
        for b in (w2, w3):
            for seed in range(5):
                assert check_unital_expansion(b, draw(b.ring, b.arity, seed)).holds

    def test_with_unit_argument(self, jac2, w3):
        for b in (jac2, w3):
            a = draw(b.ring, b.arity, 2)
            a[1] = b.ring.one()
            assert check_unital_expansion(b, a).holds

    def test_jacobian_defect_is_the_bracket(self, jac2):
        u = draw(jac2.ring, 2, 6)
        rep = check_unital_expansion(jac2, u)
        assert rep.defect == jac2(*u)
        assert not rep.holds

    def test_unit_leibniz(self, xy, w3):
        x, _ = xy.gens()
        for seed in range(5):
            assert check_unit_leibniz(w3, draw(xy, 3, seed)).holds
        (u3,) = draw(xy, 1, 4)
        assert check_unit_leibniz(w3, [x, x, u3]).holds
        a = draw(xy, 3, 7)
        a[0] = xy.one()
        assert check_unit_leibniz(w3, a).holds


class TestHInsertion:
    def test_w3(self, w3):
        for seed in range(3):
            a = draw(w3.ring, 6, seed)
            assert check_h_insertion(w3, a[0], a[1:4], a[4:]).holds

    def test_zero_h(self, jac2):
        a = draw(jac2.ring, 4, 3)
        assert check_h_insertion(jac2, jac2.ring.zero(), a[1:3], a[3:]).holds

    def test_repeated_y(self, jac3):
        a = draw(jac3.ring, 6, 5, max_degree=2)
        assert check_h_insertion(jac3, a[0], a[1:4], [a[4], a[4]]).holds


class TestSuite:
    def test_w3_all(self, w3):
        reports = verify_suite(w3, TRANSPOSED_POISSON_IDS, Sampler(seed=42), trials=10)
        assert len(reports) == 10 * len(TRANSPOSED_POISSON_IDS)
        assert all(r.holds for r in reports)

    def test_jacobian_fails_transposed_leibniz(self, jac2):
        reports = verify_suite(jac2, [IdentityId.TRANSPOSED_LEIBNIZ], Sampler(seed=42), trials=50)
        assert any(not r.holds for r in reports)

    @pytest.mark.parametrize("name", ["jac2", "w3"])
    def test_constants_give_zero_defects(self, request, name):
        b = request.getfixturevalue(name)
        ids = [i for i in IdentityId if i not in MU_IDS]
        reports = verify_suite(b, ids, Sampler(seed=1, max_degree=0), trials=1)
        assert all(r.holds for r in reports)

    def test_more_variables_than_derivations(self):
        ring = PolynomialRing(["x", "y", "z"])
        for k in (1, 2):
            b = WBracket(PolynomialModel.coordinate(ring, k))
            reports = verify_suite(b, TRANSPOSED_POISSON_IDS, Sampler(seed=5, max_degree=2), trials=2)
            assert all(r.holds for r in reports)

    def test_transposed_leibniz_implies_bracket_h_and_alternating_sum(self, w2, w3):
        for b in (w2, w3):
            ids = [IdentityId.TRANSPOSED_LEIBNIZ, IdentityId.BRACKET_H, IdentityId.ALTERNATING_SUM]
            summary = summarize(verify_suite(b, ids, Sampler(seed=9), trials=5))
            if summary[IdentityId.TRANSPOSED_LEIBNIZ] == (5, 5):
                assert summary[IdentityId.BRACKET_H] == (5, 5)
                assert summary[IdentityId.ALTERNATING_SUM] == (5, 5)

    def test_deterministic_serialization(self, w3):
        ids = [IdentityId.STRONG, IdentityId.JACOBI]
        one = reports_to_json(verify_suite(w3, ids, Sampler(seed=3), trials=3))
        two = reports_to_json(verify_suite(w3, ids, Sampler(seed=3), trials=3))
        assert one == two
        doc = json.loads(one)
        assert doc[0].keys() == {"identity", "trial", "holds", "defect"}
        assert [d["trial"] for d in doc] == [0, 1, 2, 0, 1, 2]

    def test_streams_are_per_identity(self, w3):
        s = Sampler(seed=3)
        alone = verify_suite(w3, [IdentityId.STRONG], s, trials=2)
        mixed = verify_suite(w3, [IdentityId.JACOBI, IdentityId.STRONG], s, trials=2)
        assert [r.tuple for r in alone] == [r.tuple for r in mixed[2:]]
        other = verify_suite(w3, [IdentityId.STRONG], Sampler(seed=4), trials=2)
        assert [r.tuple for r in alone] != [r.tuple for r in other]

    def test_trials_must_be_positive(self, w3):
        with pytest.raises(ValueError):
            verify_suite(w3, [IdentityId.STRONG], Sampler(), trials=0)

    def test_parse_identity_list(self):
        assert parse_identity_list("all", TRANSPOSED_POISSON_IDS) == list(TRANSPOSED_POISSON_IDS)
        assert parse_identity_list("strong, jacobi,strong", ()) == [IdentityId.STRONG, IdentityId.JACOBI]
        with pytest.raises(ValueError):
            parse_identity_list("nope", ())


class TestMu:
    def test_w2_inner(self, qx, w2):
        reports = check_mu_axioms(Derivation.partial(qx, 0), w2, Sampler(seed=42), trials=25)
        assert len(reports) == 50
        assert all(r.holds for r in reports)

    def test_zero_inner(self, qx):
        reports = check_mu_axioms(Derivation.partial(qx, 0), ZeroBracket(qx, 2), Sampler(), trials=3)
        assert all(r.holds for r in reports)

    def test_repeated_arguments(self, qx, w2):
        from tpnlie.brackets import MuBracket

        mu = MuBracket(Derivation.partial(qx, 0), w2)
        a = draw(qx, 5, 2)
        rep = check_generalized_jacobi(mu, [a[0], a[0], a[1]], a[3:])
        assert rep.holds
        assert check_transposed_leibniz(mu, a[2], [a[0], a[1], a[1]]).holds

    def test_mu_ids_need_derivation(self, w2):
        with pytest.raises(ValueError):
            verify_suite(w2, [IdentityId.MU_JACOBI], Sampler(), trials=1)
