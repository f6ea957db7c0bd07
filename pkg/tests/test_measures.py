import numpy as np
import pytest

from conftest import random_xstate
from rqcx.families import FamilySpec, make_state
from rqcx.measures import (
    branch_values,
    concurrence_general,
    concurrence_x,
    cs,
    g_branch,
    laqc,
    measure_set,
    qs,
    u_func,
)
from rqcx.states import (
    BlochX,
    XStateParams,
    bloch_to_xstate,
    is_classical,
    xstate_to_bloch,
    xstate_to_matrix,
)

BELL_PHI_PLUS = XStateParams(0.5, 0.0, 0.0, 0.5, 0.5, 0.0)


def werner_bloch(z):
    return xstate_to_bloch(make_state(FamilySpec("werner", z)))


class TestU:
    def test_zero(self):
        assert u_func(0.0) == 0.0

    def test_endpoint_uses_zero_log_zero(self):
        assert u_func(1.0) == pytest.approx(2.0, abs=1e-15)
        assert u_func(-1.0) == pytest.approx(2.0, abs=1e-15)

    def test_half(self):
        assert u_func(0.5) == pytest.approx(1.5 * np.log2(1.5) - 0.5, abs=1e-15)
        assert u_func(0.5) == pytest.approx(0.37744375108173434, abs=1e-15)

    def test_domain_rejected(self):
        with pytest.raises(ValueError):
            u_func(1.001)

    def test_even(self, rng):
        x = rng.uniform(-1, 1, 100)
        np.testing.assert_allclose(u_func(x), u_func(-x), atol=1e-15)


class TestBranches:
    def test_branch_sum_is_four(self, rng):
        for _ in range(300):
            b = xstate_to_bloch(random_xstate(rng))
            for i in (1, 2, 3):
                v = branch_values(i, b)
                assert v.alpha + v.beta + v.gamma + v.delta == pytest.approx(4.0, abs=1e-14)

    def test_werner_branches_all_equal(self):
        for z in (0.2, 0.5, 0.9):
            b = werner_bloch(z)
            expect = 0.5 * u_func(z)
            for i in (1, 2, 3):
                assert g_branch(i, b) == pytest.approx(expect, abs=1e-14)

    def test_maximally_mixed_branches_vanish(self):
        b = BlochX(0.0, 0.0, 0.0, 0.0, 0.0)
        assert all(g_branch(i, b) == 0.0 for i in (1, 2, 3))

    def test_mems_origin_g3(self):
        # diagonal state diag(1/3, 1/3, 0, 1/3): a purely classical correlation
        b = xstate_to_bloch(make_state(FamilySpec("mems", 0.0)))
        expect = np.log2(4.0 / 3.0) - u_func(1.0 / 3.0)
        assert g_branch(3, b) == pytest.approx(expect, abs=1e-13)
        assert g_branch(3, b) == pytest.approx(0.25162916738782265, abs=1e-12)
        assert g_branch(1, b) == 0.0
        assert g_branch(2, b) == 0.0

    def test_g3_equals_computational_basis_cmi(self, rng):
        # dual route: branch formula vs explicit measurement statistics
        from rqcx.oracle import LocalMeasurement, classical_mutual_info, post_measurement_probs

        m = LocalMeasurement(0.0, 0.0, 0.0, 0.0)
        for _ in range(50):
            p = random_xstate(rng)
            table = post_measurement_probs(xstate_to_matrix(p), m)
            assert g_branch(3, xstate_to_bloch(p)) == pytest.approx(
                classical_mutual_info(table), abs=1e-12
            )


class TestLaqc:
    def test_singlet_is_one(self):
        assert laqc(werner_bloch(1.0)) == pytest.approx(1.0, abs=1e-14)

    def test_diagonal_states_vanish(self):
        assert laqc(BlochX(0.3, -0.1, 0.0, 0.0, 0.2)) == 0.0

    def test_mnms_half(self):
        b = xstate_to_bloch(make_state(FamilySpec("mnms", 0.5)))
        assert laqc(b) == pytest.approx(0.18872187554086717, abs=1e-14)

    def test_zero_iff_classical(self, rng):
        for _ in range(300):
            p = random_xstate(rng)
            b = xstate_to_bloch(p)
            assert (laqc(b) < 1e-12) == is_classical(b, 1e-12)


class TestWuMeasures:
    def test_werner_family_collapses(self):
        for z in (0.1, 0.5, 0.9):
            b = werner_bloch(z)
            expect = 0.5 * u_func(z)
            assert cs(b) == pytest.approx(expect, abs=1e-14)
            assert qs(b) == pytest.approx(expect, abs=1e-14)
            assert laqc(b) == pytest.approx(expect, abs=1e-14)

    def test_mems_small_x(self):
        b = xstate_to_bloch(make_state(FamilySpec("mems", 0.1)))
        assert cs(b) == pytest.approx(g_branch(3, b), abs=1e-14)
        assert qs(b) == pytest.approx(0.5 * u_func(0.1), abs=1e-14)
        assert qs(b) == pytest.approx(0.007225546012191789, abs=1e-14)

    def test_maximally_mixed(self):
        b = BlochX(0.0, 0.0, 0.0, 0.0, 0.0)
        assert cs(b) == qs(b) == 0.0

    def test_laqc_dominates_qs_10k(self, rng):
        for _ in range(10_000):
            b = xstate_to_bloch(random_xstate(rng))
            assert laqc(b) >= qs(b) - 1e-12

    def test_coherence_sign_invariance(self, rng):
        for _ in range(200):
            p = random_xstate(rng)
            for flip_r, flip_s in ((-1, 1), (1, -1), (-1, -1)):
                q = XStateParams(p.a, p.b, p.c, p.d, flip_r * p.r, flip_s * p.s)
                for f in (laqc, cs, qs):
                    assert f(xstate_to_bloch(p)) == pytest.approx(
                        f(xstate_to_bloch(q)), abs=1e-12
                    )


class TestConcurrence:
    def test_werner_threshold(self):
        assert concurrence_x(make_state(FamilySpec("werner", 1.0 / 3.0))) == 0.0
        assert concurrence_x(make_state(FamilySpec("werner", 0.2))) == 0.0
        z = 0.8
        assert concurrence_x(make_state(FamilySpec("werner", z))) == pytest.approx(
            0.5 * (3 * z - 1), abs=1e-15
        )

    def test_bell_state(self):
        assert concurrence_x(BELL_PHI_PLUS) == pytest.approx(1.0, abs=1e-15)
        assert concurrence_general(xstate_to_matrix(BELL_PHI_PLUS)) == pytest.approx(
            1.0, abs=1e-12
        )

    def test_linear_families(self):
        for kind in ("mnms", "mems"):
            for x in (0.1, 0.5, 0.8, 1.0):
                p = make_state(FamilySpec(kind, x))
                assert concurrence_x(p) == pytest.approx(x, abs=1e-14)
                assert concurrence_general(xstate_to_matrix(p)) == pytest.approx(x, abs=1e-10)

    def test_maximally_mixed_vanishes(self):
        assert concurrence_general(np.eye(4) / 4.0) == 0.0

    def test_oracle_equivalence_1000(self, rng):
        worst = 0.0
        for k in range(1000):
            p = random_xstate(rng, rank_deficient=(k % 5 == 0))
            diff = abs(concurrence_general(xstate_to_matrix(p)) - concurrence_x(p))
            worst = max(worst, diff)
        assert worst < 1e-10


def test_measure_set_consistency(rng):
    for _ in range(50):
        p = random_xstate(rng)
        ms = measure_set(p)
        b = xstate_to_bloch(p)
        assert ms.concurrence == concurrence_x(p)
        assert ms.laqc == pytest.approx(laqc(b), abs=1e-15)
        assert ms.qs == pytest.approx(qs(b), abs=1e-15)
        assert ms.cs == pytest.approx(cs(b), abs=1e-15)
        assert ms.laqc >= ms.qs - 1e-15


def test_measures_are_lipschitz_away_from_endpoints(rng):
    eps = 1e-6
    for _ in range(100):
        p = random_xstate(rng)
        b = xstate_to_bloch(p)
        if max(abs(b.t11), abs(b.t22), abs(b.t33)) > 0.95:
            continue
        shifted = BlochX(b.t30, b.t03, b.t11 + eps, b.t22 - eps, b.t33)
        try:
            bloch_to_xstate(shifted)
        except Exception:
            continue
        for f in (laqc, cs, qs):
            assert abs(f(shifted) - f(b)) <= 10.0 * 2 * eps
