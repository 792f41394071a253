import math
from itertools import combinations

import numpy as np
import pytest

from clusterexp import potentials as P

INF = math.inf


class TestEvaluation:
    def test_ruelle_regions(self):
        ru = P.ruelle(1.0, 0.3)
        assert P.potential_eval(ru, 0.3) == 11.0
        assert P.potential_eval(ru, 0.7) == -1.0
        assert P.potential_eval(ru, 1.3) == -1.0
        assert P.potential_eval(ru, 1.31) == 0.0

    def test_hard_core_inside(self):
        hc = P.hard_core(1.0)
        assert P.potential_eval(hc, 0.5) == INF
        assert P.potential_eval(hc, 1.0) == INF
        assert P.potential_eval(hc, 1.5) == 0.0

    def test_square_well_pieces(self):
        sw = P.square_well(2.0, 1.0, 0.25)
        assert P.potential_eval(sw, 0.5) == 2.0
        assert P.potential_eval(sw, 1.1) == -1.0
        assert P.potential_eval(sw, 1.3) == 0.0

    def test_lennard_jones_minimum(self):
        lj = P.lennard_jones()
        assert P.potential_eval(lj, 1.0) == pytest.approx(-1.0)
        assert P.potential_eval(lj, 2 ** (-1 / 6) / 1.0001) > 0

    def test_negative_r_rejected(self):
        with pytest.raises(ValueError):
            P.potential_eval(P.hard_core(1.0), -0.1)

    def test_text_round_trip(self):
        for spec in (P.hard_core(0.7), P.square_well(3.0, 1.1, 0.2),
                     P.ruelle(1.0, 0.4), P.lj_type(1.0, 2.0, 0.5, 0.9),
                     P.lennard_jones(), P.step_table((0.5, 1.0), (-2.0, 1.0))):
            back = P.spec_from_text(spec.to_text())
            assert back.family == spec.family
            for r in (0.1, 0.6, 0.9, 1.4, 3.0):
                assert P.potential_eval(back, r) == P.potential_eval(spec, r)


class TestStabilitySearch:
    def test_nonnegative_exact_zero(self):
        assert P.stability_estimate(P.hard_core(1.0), 6).estimate == 0.0

    def test_collapse_well(self):
        b = 2.0
        rep = P.stability_estimate(P.attractive_well(b, 0.5), 6, budget=8, seed=3)
        assert rep.estimate >= b * 5 / 2 - 1e-9
        dists = [np.linalg.norm(a - c) for a, c in combinations(np.asarray(rep.witness), 2)]
        assert max(dists) <= 0.5

    def test_witness_recomputes(self):
        spec = P.attractive_well(1.0, 0.5)
        rep = P.stability_estimate(spec, 5, budget=4, seed=1)
        assert abs(rep.recomputed(spec) - rep.estimate) < 1e-9

    def test_monotone_in_budget(self):
        spec = P.square_well(5.0, 1.0, 0.5)
        vals = [P.stability_estimate(spec, 4, budget=b, seed=2).estimate for b in (2, 5, 9)]
        assert vals[0] <= vals[1] <= vals[2]

    def test_fcc_configuration_has_positive_energy_density(self):
        # close-packed cluster scaled to the shell of the step potential
        ru = P.ruelle(1.0, 0.3)
        pts = P.fcc_points(2)
        u = P.configuration_energy(ru, pts)
        assert -u / len(pts) > 0

    def test_bbar_dominates_b_on_sweep(self):
        spec = P.attractive_well(1.0, 0.5)
        for n in (3, 4, 5, 6):
            rep = P.stability_estimate(spec, n, budget=4, seed=0)
            assert rep.bbar_estimate >= rep.estimate
            assert rep.bbar_estimate == pytest.approx(n / (n - 1) * rep.estimate, rel=1e-14)

    def test_strongly_basuev_caps_stability_estimate(self):
        # certified direction: the true constant is at most mu_hat(a)/2, so
        # any search lower bound must stay below it
        spec = P.lj_type()
        a_star = P.strongly_basuev_core_radius(spec)
        cls = P.basuev_classify(spec, 0.9 * a_star)
        assert cls.verdict == "strongly_basuev"
        for n in (4, 6, 8):
            rep = P.stability_estimate(spec, n, budget=6, seed=1)
            assert rep.estimate <= cls.mu_hat / 2 + 1e-6


class TestFccWitness:
    def test_first_shell(self):
        w = P.fcc_witness(1)
        assert (w.n, w.bond_count) == (13, 36)

    def test_single_site(self):
        assert P.fcc_witness(0).bond_count == 0

    def test_ratio_monotone_toward_six(self):
        ratios = [P.fcc_witness(s).bond_count / P.fcc_witness(s).n for s in (1, 3, 5, 7)]
        assert all(b > a for a, b in zip(ratios, ratios[1:]))
        assert ratios[-1] < 6.0

    def test_certificate_exists(self):
        n, eps = P.ruelle_certificate(max_shells=12)
        w = None
        assert eps > 0 and n > 100

    def test_certificate_failure_raises(self):
        with pytest.raises(RuntimeError, match="certificate"):
            P.ruelle_certificate(max_shells=3)


class TestRuelleDivergence:
    def test_eps_zero_decays(self):
        div = P.ruelle_divergence_witness(1.0, 1.0, n_fixed=13, s_max=60, eps=0.0)
        assert div.ratios[-1] < 1e-3

    def test_default_parameters_grow(self):
        div = P.ruelle_divergence_witness(1.0, 1.0, n_fixed=13, s_max=200, eps=0.5)
        assert div.last_ratio > 10
        assert div.ratios[-1] > div.ratios[-2] > div.ratios[-3]

    def test_log_space_no_overflow(self):
        div = P.ruelle_divergence_witness(1.0, 1.0, n_fixed=13, s_max=10_000, eps=0.5)
        assert all(map(math.isfinite, div.log_terms))

    def test_derived_certificate(self):
        div = P.ruelle_divergence_witness(1.0, 1.0, s_max=50)
        assert div.eps > 0 and div.n > 100


class TestSphereVolume:
    def test_known_values(self):
        assert P.sphere_volume(2, 1.0) == pytest.approx(math.pi, abs=1e-15)
        assert P.sphere_volume(3, 1.0) == pytest.approx(4 * math.pi / 3, abs=1e-15)
        assert P.sphere_volume(4, 2.0) == pytest.approx(math.pi**2 / 2 * 16, rel=1e-14)


class TestRegularityIntegrals:
    def test_hard_core_closed_form(self):
        for d, expect in ((1, 2.0), (2, math.pi), (3, 4 * math.pi / 3)):
            ri = P.regularity_integrals(P.hard_core(1.0, dimension=d), 2.5, d=d)
            assert ri.c == pytest.approx(expect, abs=1e-8)
            assert ri.c_tilde == pytest.approx(expect, abs=1e-8)

    def test_square_well_closed_form(self):
        A, R, delta, beta = 2.0, 1.0, 0.25, 1.0
        ri = P.regularity_integrals(P.square_well(A, R, delta), beta)
        v_in = P.sphere_volume(3, R)
        v_shell = P.sphere_volume(3, R + delta) - v_in
        assert ri.c == pytest.approx(v_in * -math.expm1(-beta * A) + v_shell * math.expm1(beta), abs=1e-8)
        assert ri.c_tilde == pytest.approx(v_in * -math.expm1(-beta * A) + v_shell * -math.expm1(-beta), abs=1e-8)

    def test_strict_inequality_with_negative_region(self):
        ri = P.regularity_integrals(P.ruelle(1.0, 0.3), 0.7)
        assert ri.c_tilde < ri.c

    def test_nonintegrable_tail_rejected(self):
        bad = P.PairPotentialSpec("lj_type", (("a", 1.0), ("c1", 1.0), ("c2", 1.0), ("eps", -0.5)), 3)
        with pytest.raises(P.DivergentTailError):
            P.regularity_integrals(bad, 1.0)

    def test_lj_values_stable_under_tolerance(self):
        r1 = P.regularity_integrals(P.lennard_jones(), 1.0)
        r2 = P.regularity_integrals(P.lennard_jones(), 1.0, abs_tol=1e-10)
        assert r1.c == pytest.approx(r2.c, abs=1e-8)
        assert r1.c_tilde == pytest.approx(r2.c_tilde, abs=1e-8)


class TestBasuev:
    def test_nonnegative_is_strong(self):
        cls = P.basuev_classify(P.hard_core(1.0), 0.5)
        assert cls.verdict == "strongly_basuev" and cls.mu_hat == 0.0

    def test_power_law_root(self):
        spec = P.lj_type()
        a_star = P.strongly_basuev_core_radius(spec)
        assert 0 < a_star < 1
        assert P.basuev_classify(spec, 0.9 * a_star).verdict == "strongly_basuev"
        weaker = P.basuev_classify(spec, min(3.0 * a_star, 0.99))
        assert weaker.verdict in ("basuev", "not_basuev")

    def test_square_well_kissing(self):
        cls = P.basuev_classify(P.square_well(12.0, 1.0, 0.01), 1.0)
        assert cls.verdict == "basuev"
        assert cls.kissing_used and cls.mu_hat == 12.0
        strong = P.basuev_classify(P.square_well(24.0, 1.0, 0.01), 1.0)
        assert strong.verdict == "strongly_basuev"

    def test_wide_shell_skips_kissing(self):
        cls = P.basuev_classify(P.square_well(12.0, 1.0, 0.5), 1.0)
        assert not cls.kissing_used

    def test_monotonicity_precondition(self):
        lj = P.lennard_jones()
        with pytest.raises(ValueError, match="monotone"):
            P.basuev_classify(lj, 1.5)  # beyond the minimum: V not >= V(a) inside


class TestDecomposition:
    def test_pointwise_identity(self):
        spec = P.square_well(2.0, 1.0, 0.25)
        split = P.basuev_decompose(spec, 0.5)
        for r in (0.05, 0.3, 0.5, 0.8, 1.1, 2.0):
            assert split.v_a(r) + split.k_a(r) == pytest.approx(P.potential_eval(spec, r), abs=1e-15)
            assert split.k_a(r) >= 0.0
            if r > 0.5:
                assert split.k_a(r) == 0.0

    def test_core_clamp(self):
        spec = P.lj_type()
        split = P.basuev_decompose(spec, 0.5)
        assert split.v_a(0.1) == P.potential_eval(spec, 0.5)

    def test_hard_core_degenerate(self):
        split = P.basuev_decompose(P.hard_core(1.0), 0.5)
        assert split.degenerate
        assert split.k_a(0.2) == 0.0
        assert split.v_a(0.2) == INF
