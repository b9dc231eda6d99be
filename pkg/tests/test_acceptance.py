"""Acceptance criteria, one test per criterion, each at its fixed tolerance and
runtime limit. A PASS/FAIL line per criterion is printed in the terminal
summary (see conftest.py).

Every random object is drawn from ``default_rng([SEED, criterion])`` so the
states touched by criteria 1-8 can be rebuilt exactly for criterion 9.
"""

import itertools
import math
import time

import numpy as np
import pytest

from densecap import capacity, cli, encoders, linalg, optimizer, states, suites
from densecap.states import PAULI

SEED = 0xD15EA5E
LOG3 = math.log2(3)


def _rng(criterion):
    return np.random.default_rng([SEED, criterion])


class Timer:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.1f} s, limit {self.limit} s"


# --- state builders shared with criterion 9 ----------------------------------


def c1_states():
    return [states.bell_state(0), states.random_maximally_entangled(3, _rng(1))]


def c2_states():
    rng = _rng(2)
    return [states.random_mixed(2, 2, seed=rng) for _ in range(100)]


def c3_states():
    rng = _rng(3)
    return [states.random_mixed(3, 3, seed=rng) for _ in range(100)]


def c4_states():
    # suite_bound_dominance draws its states before any ensemble
    return suites.bound_dominance_states(_rng(4), 10)


def c5_states():
    rng = _rng(5)
    return [states.random_mixed(2, 2, seed=rng) for _ in range(50)]


def c6_states():
    rng = _rng(6)
    return {
        dims: [states.random_separable(*dims, seed=rng) for _ in range(1000)]
        for dims in ((2, 2), (2, 3), (3, 3))
    }


def c8_states(steps=101):
    return [states.werner_state(i / (steps - 1)) for i in range(steps)]


# --- criteria ----------------------------------------------------------------


@pytest.mark.criterion(1, "pure-state capacity: Bell = 2, 3x3 maximally entangled = 2 log2 3")
def test_c1_pure_state_capacity():
    with Timer(1.0):
        bell, me3 = c1_states()
        assert capacity.dense_coding_capacity(bell) == pytest.approx(2.0, abs=1e-9)
        assert capacity.dense_coding_capacity(me3) == pytest.approx(2 * LOG3, abs=1e-8)
        # pure-state form log D + S(rho_B)
        assert math.log2(3) + linalg.von_neumann_entropy(me3.reduced("B")) == pytest.approx(2 * LOG3, abs=1e-8)


@pytest.mark.criterion(2, "SDC disentangling: apply(rho, sdc2) = I/2 (x) rho_B, 100 states")
def test_c2_sdc_disentangling():
    with Timer(5.0):
        ens = encoders.sdc_qubit_set()
        worst = 0.0
        for rho in c2_states():
            target = linalg.kron(np.eye(2) / 2, rho.reduced("B"))
            worst = max(worst, linalg.frobenius_distance(encoders.apply_ensemble(rho, ens).mat, target))
        assert worst < 1e-9


@pytest.mark.criterion(3, "qutrit attainment: holevo(sdc3) = log2 3 + S_B - S_AB, 100 states")
def test_c3_qutrit_attainment():
    with Timer(30.0):
        ens = encoders.sdc_qutrit_set()
        worst = 0.0
        for rho in c3_states():
            _, s_b, s_ab = capacity.entropies(rho)
            worst = max(worst, abs(capacity.holevo_quantity(rho, ens) - (LOG3 + s_b - s_ab)))
        assert worst < 1e-8


@pytest.mark.criterion(4, "bound dominance: 1000 ensembles x 10 states + optimizer trajectories")
def test_c4_bound_dominance():
    with Timer(60.0):
        checks = suites.suite_bound_dominance(1000, _rng(4), n_states=10)
        assert checks[0]["max_residual"] <= 1e-6, checks
        for i, rho in enumerate(c4_states()):
            for k in (2, 4, 6):
                res = optimizer.optimize_holevo(rho, k, restarts=4, seed=[SEED, 4, i, k])
                assert res.max_evaluated <= res.bound + 1e-6
                assert res.best_value <= res.bound + 1e-6


@pytest.mark.criterion(5, "optimizer attainment: K=4, 16 restarts within 1e-3 on >= 95% of 50 states")
def test_c5_optimizer_attainment():
    with Timer(300.0):
        closed = 0
        for i, rho in enumerate(c5_states()):
            res = optimizer.optimize_holevo(rho, 4, restarts=16, seed=[SEED, 5, i])
            assert res.best_value <= res.bound + 1e-6
            assert res.max_evaluated <= res.bound + 1e-6
            closed += res.gap_to_bound <= 1e-3
        assert closed >= 0.95 * 50, f"closed the gap on {closed}/50 states"


@pytest.mark.criterion(6, "separable states: S_AB >= max(S_A, S_B), no advantage, 3 x 1000 states")
def test_c6_separable_inequality():
    with Timer(60.0):
        for dims, rhos in c6_states().items():
            for rho in rhos:
                s_a, s_b, s_ab = capacity.entropies(rho)
                assert s_ab >= max(s_a, s_b) - 1e-9, dims
                assert capacity.dense_coding_advantage(rho)[0] is False, dims


@pytest.mark.criterion(7, "scaled Pauli sandwich identity, all 16 (i, j) pairs")
def test_c7_pauli_sandwich():
    with Timer(1.0):
        s = PAULI.ops
        for i, j in itertools.product(range(1, 4), repeat=2):
            lhs = s[j] @ s[i] @ s[j]
            np.testing.assert_allclose(lhs, 0.5 * (i == j) * s[j] - 0.25 * s[i], atol=1e-12)
        for i, j in itertools.product(range(4), repeat=2):
            sign = -1.0 if (i != j and i > 0 and j > 0) else 1.0
            np.testing.assert_allclose(s[j] @ s[i] @ s[j], sign * 0.25 * s[i], atol=1e-12)
        # summed over the alphabet only the identity component survives
        for i in range(4):
            total = sum(s[k] @ s[i] @ s[k] for k in range(4))
            np.testing.assert_allclose(total, s[0] if i == 0 else np.zeros((2, 2)), atol=1e-12)


@pytest.mark.criterion(8, "Werner sweep: monotone, endpoints 0 and 2, threshold p* = 0.7476")
def test_c8_werner_sweep():
    with Timer(1.0):
        rows = cli.werner_sweep(101)
        caps = np.array([r["capacity"] for r in rows])
        assert np.all(np.diff(caps) >= -1e-12)
        assert caps[0] == pytest.approx(0.0, abs=1e-9)
        assert caps[-1] == pytest.approx(2.0, abs=1e-9)
        p_star = capacity.werner_threshold(1e-6)
        assert p_star == pytest.approx(0.7476, abs=1e-3)
        flips = [r["p"] for a, r in zip(rows, rows[1:]) if r["advantage"] and not a["advantage"]]
        assert len(flips) == 1 and flips[0] - 0.01 < p_star <= flips[0]


@pytest.mark.criterion(9, "decomposition identity on every state from criteria 1-8")
def test_c9_decomposition_identity():
    touched = c1_states() + c2_states() + c3_states() + c4_states() + c5_states() + c8_states()
    for rhos in c6_states().values():
        touched += rhos
    worst = 0.0
    for rho in touched:
        rep = capacity.capacity_decomposition(rho)
        worst = max(worst, abs(rep.closed_form - (rep.single_system + rep.mutual)))
    assert len(touched) == 2 + 100 + 100 + 10 + 50 + 3000 + 101
    assert worst <= 1e-9


@pytest.mark.criterion(10, "shift/clock depolarizers for D = 2..6")
def test_c10_weyl_depolarizers():
    with Timer(10.0):
        for d in range(2, 7):
            assert encoders.verify_depolarizer(encoders.heisenberg_weyl_set(d), 100, _rng(10)) < 1e-9
