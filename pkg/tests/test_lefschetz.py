import random
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from lefschetz import (
    Polynomial,
    determinant,
    evaluate,
    find_lefschetz_element,
    hessian_at,
    hrr_at_degree,
    hrr_degree1,
    slp_certify,
)
from lefschetz.polynomial import apply_monomial, apply_power
from lefschetz.lefschetz import (
    POSITIVE_GRID,
    CertificationError,
    hrr_degree1_sampled,
    multiplication_rank,
    primitive_kernel,
    q1_matrix,
    q1_self,
    random_positive_point,
    zero_one_vectors,
)

from conftest import get_solid

positive = st.sampled_from(POSITIVE_GRID)


class TestSLP:
    def test_tetrahedron_ones(self):
        t = get_solid("tetrahedron")
        cert = slp_certify(t.form, t.ones, t.algebra)
        assert cert.verdict
        assert cert.det(0) == 4
        assert cert.det(1) == determinant(hessian_at(t.form, 1, None, t.ones))
        assert cert.det(1) == -48

    def test_degenerate_direction(self):
        # for F = x1 x2 x3, l = d1 gives F(a) = 0
        f = Polynomial.variable(1, 3) * Polynomial.variable(2, 3) * Polynomial.variable(3, 3)
        cert = slp_certify(f, [1, 0, 0])
        assert not cert.verdict
        assert 0 in cert.failing_degrees()

    def test_zero_form_rejected(self):
        t = get_solid("tetrahedron")
        with pytest.raises(CertificationError):
            slp_certify(t.form, [0, 0, 0, 0])

    def test_wrong_length(self):
        t = get_solid("tetrahedron")
        with pytest.raises(CertificationError):
            slp_certify(t.form, [1, 1])

    def test_json(self):
        t = get_solid("tetrahedron")
        doc = slp_certify(t.form, t.ones).to_json()
        assert doc["verdict"] is True
        assert [d["k"] for d in doc["degrees"]] == [0, 1]
        assert doc["degrees"][1]["det"] == "-48"

    @settings(max_examples=15, deadline=None)
    @given(st.lists(positive, min_size=4, max_size=4), positive)
    def test_scaling_invariance(self, a, c):
        t = get_solid("tetrahedron")
        scaled = [c * x for x in a]
        assert slp_certify(t.form, a, t.algebra).verdict == slp_certify(t.form, scaled, t.algebra).verdict


class TestHRR:
    def test_tetrahedron_degree1(self):
        t = get_solid("tetrahedron")
        cert = hrr_degree1(t.form, t.ones, t.algebra)
        assert cert.verdict
        assert cert.signature.as_tuple() == (1, 3, 0)

    def test_needs_positive_value(self):
        f = (Polynomial.variable(1, 2) * Polynomial.variable(2, 2)).scale(-1)
        with pytest.raises(CertificationError):
            hrr_degree1(f, [1, 1])
        c = get_solid("dodecahedron")
        with pytest.raises(CertificationError):
            hrr_at_degree(c.form, [0] * 19 + [1], 1, c.algebra)

    def test_primitive_restriction_tetrahedron(self):
        t = get_solid("tetrahedron")
        cert = hrr_at_degree(t.form, t.ones, 1, t.algebra)
        assert cert.kernel_dim == 3
        assert cert.signature.as_tuple() == (3, 0, 0)
        assert cert.verdict

    def test_degree_zero(self):
        t = get_solid("tetrahedron")
        assert hrr_at_degree(t.form, t.ones, 0, t.algebra).verdict

    def test_out_of_range(self):
        t = get_solid("tetrahedron")
        with pytest.raises(CertificationError):
            hrr_at_degree(t.form, t.ones, 2, t.algebra)

    @pytest.mark.parametrize("name", ["tetrahedron", "hexahedron", "octahedron", "icosahedron"])
    def test_degree1_routes_agree(self, name):
        s = get_solid(name)
        rng = random.Random(7)
        for _ in range(4):
            pt = random_positive_point(rng, s.form.n_vars)
            a = hrr_degree1(s.form, pt, s.algebra)
            b = hrr_at_degree(s.form, pt, 1, s.algebra)
            assert a.verdict == b.verdict

    def test_primitive_kernel_is_killed(self):
        # l_a^{s-1} applied to (sum v_i e_i) F vanishes for v in the kernel
        x = get_solid("hexahedron")
        pt = [1, 2, 1, 1, 3, 1, 2, 1]
        ell = Polynomial.linear_form(pt)
        basis = x.algebra.basis(1)
        for v in primitive_kernel(x.form, pt, 1, x.algebra):
            g = Polynomial.zero(8)
            for c, e in zip(v, basis):
                g = g + apply_monomial(e, x.form).scale(c)
            assert apply_power(ell, 3, g).is_zero()

    def test_sampled_octahedron(self):
        o = get_solid("octahedron")
        check = hrr_degree1_sampled(o.form, n_points=8, seed=3, algebra=o.algebra)
        assert len(check.certificates) == 8
        assert check.verdict


class TestIdentities:
    @pytest.mark.parametrize("name", ["tetrahedron", "hexahedron", "icosahedron"])
    def test_q1(self, name):
        s = get_solid(name)
        deg = s.algebra.socle_degree
        pt = [Fraction(i % 3 + 1, 2) for i in range(s.form.n_vars)]
        h1 = hessian_at(s.form, 1, s.algebra.basis(1), pt)
        assert q1_matrix(s.form, pt, s.algebra.basis(1)) == h1.scale(-factorial(deg - 2))
        assert q1_self(s.form, pt) == -factorial(deg) * evaluate(s.form, pt)

    @pytest.mark.parametrize("name", ["tetrahedron", "hexahedron", "octahedron"])
    def test_multiplication_rank_oracle(self, name):
        s = get_solid(name)
        for pt in (s.ones, [1] + [0] * (s.form.n_vars - 1)):
            for k in range(s.algebra.socle_degree // 2 + 1):
                basis = s.algebra.basis(k)
                det = determinant(hessian_at(s.form, k, basis, pt))
                assert (det != 0) == (multiplication_rank(s.form, pt, k, basis) == len(basis))


class TestSearch:
    def test_zero_one_order(self):
        vs = list(zero_one_vectors(3))
        assert vs[:3] == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        assert vs[-1] == (1, 1, 1)
        assert len(vs) == 7

    def test_power_form_finds_e1(self):
        f = Polynomial.variable(1, 3) ** 4
        res = find_lefschetz_element(f, "exhaustive-01")
        assert res.success
        assert res.form == (1, 0, 0)
        assert res.tried == 1

    def test_tetrahedron_random_budget_one(self):
        t = get_solid("tetrahedron")
        res = find_lefschetz_element(t.form, "random-rational", seed=0, budget=1)
        assert res.success and res.tried == 1
        assert all(x in POSITIVE_GRID for x in res.form)

    def test_dodecahedron_candidates(self):
        d = get_solid("dodecahedron")
        cands = [d.points["ones"], d.points["b"], d.points["c"]]
        res = find_lefschetz_element(d.form, candidates=cands, algebra=d.algebra)
        assert res.success
        assert res.tried == 3
        assert list(res.form) == d.points["c"]

    def test_budget_exhausted(self):
        d = get_solid("dodecahedron")
        res = find_lefschetz_element(d.form, candidates=[d.points["ones"], d.points["b"]],
                                     budget=1, algebra=d.algebra)
        assert not res.success
        assert res.reason == "budget exhausted"
        assert res.to_json()["form"] is None

    def test_candidates_exhausted(self):
        f = Polynomial.variable(1, 2) * Polynomial.variable(2, 2)
        res = find_lefschetz_element(f, candidates=[[1, 0], [0, 1]])
        assert not res.success and res.reason == "candidates exhausted"

    def test_invalid_arguments(self):
        t = get_solid("tetrahedron")
        with pytest.raises(CertificationError):
            find_lefschetz_element(t.form, budget=0)
        with pytest.raises(CertificationError):
            find_lefschetz_element(t.form, strategy="annealing")

    def test_seeded_search_is_reproducible(self):
        t = get_solid("icosahedron")
        a = find_lefschetz_element(t.form, "random-rational", seed=11, budget=3)
        b = find_lefschetz_element(t.form, "random-rational", seed=11, budget=3)
        assert a.to_json() == b.to_json()


def test_positive_grid():
    assert len(POSITIVE_GRID) == 11
    assert min(POSITIVE_GRID) == Fraction(1, 4) and max(POSITIVE_GRID) == 4
