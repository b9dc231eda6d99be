"""Named verification suites behind ``densecap verify``.

Each suite returns a verdict dict::

    {"suite": ..., "trials": ..., "seed": ..., "passed": bool,
     "max_residual": float, "checks": [{"name", "max_residual", "tolerance", "passed"}]}
"""

import numpy as np

from densecap import capacity, encoders, linalg, optimizer, states


def _check(name, residual, tolerance):
    return {
        "name": name,
        "max_residual": float(residual),
        "tolerance": float(tolerance),
        "passed": bool(residual <= tolerance),
    }


def _disentangling_residual(rho, ens):
    target = linalg.kron(np.eye(rho.dim_a) / rho.dim_a, rho.reduced("B"))
    return linalg.frobenius_distance(encoders.apply_ensemble(rho, ens).mat, target)


def _sdc_suite(ens, dims, trials, rng, tol_disentangle, tol_capacity):
    worst_dis = worst_cap = worst_decomp = 0.0
    for _ in range(trials):
        rho = states.random_mixed(*dims, seed=rng)
        worst_dis = max(worst_dis, _disentangling_residual(rho, ens))
        worst_cap = max(worst_cap, capacity.check_capacity_identity(rho, ens))
        rep = capacity.capacity_decomposition(rho, ens)
        worst_decomp = max(worst_decomp, abs(rep.closed_form - rep.single_system - rep.mutual))
    return [
        _check("disentangling", worst_dis, tol_disentangle),
        _check("capacity_attained", worst_cap, tol_capacity),
        _check("decomposition_identity", worst_decomp, 1e-9),
    ]


def suite_sdc2(trials, rng, tol=None):
    return _sdc_suite(encoders.sdc_qubit_set(), (2, 2), trials, rng, tol or 1e-9, tol or 1e-9)


def suite_sdc3(trials, rng, tol=None):
    return _sdc_suite(encoders.sdc_qutrit_set(), (3, 3), trials, rng, tol or 1e-9, tol or 1e-8)


def suite_weyl(trials, rng, tol=None, dims=range(2, 7)):
    checks = []
    for d in dims:
        dev = encoders.verify_depolarizer(encoders.heisenberg_weyl_set(d), trials, rng)
        checks.append(_check(f"depolarizer_D{d}", dev, tol or 1e-9))
    return checks


def suite_separable_bound(trials, rng, tol=None, dims=((2, 2), (2, 3), (3, 3))):
    tol = tol or 1e-9
    checks = []
    for da, db in dims:
        worst_violation = -np.inf
        worst_coherent = -np.inf
        for _ in range(trials):
            rho = states.random_separable(da, db, seed=rng)
            s_a, s_b, s_ab = capacity.entropies(rho)
            worst_violation = max(worst_violation, max(s_a, s_b) - s_ab)
            _, coherent = capacity.dense_coding_advantage(rho)
            worst_coherent = max(worst_coherent, coherent)
        checks.append(_check(f"entropy_inequality_{da}x{db}", worst_violation, tol))
        checks.append(_check(f"no_advantage_{da}x{db}", worst_coherent, capacity.ADVANTAGE_TOL))
    return checks


def bound_dominance_states(rng, count=10):
    return [states.random_mixed(2, 2, seed=rng) for _ in range(count)]


def suite_bound_dominance(trials, rng, tol=None, n_states=10, max_symbols=6):
    """``trials`` random alphabets (1..max_symbols symbols), each scored on every state."""
    tol = tol or 1e-6
    rhos = bound_dominance_states(rng, n_states)
    bounds = [capacity.dense_coding_capacity(r) for r in rhos]
    worst = -np.inf
    for t in range(trials):
        ens = optimizer.random_ensemble(2, 1 + t % max_symbols, rng)
        for rho, bound in zip(rhos, bounds):
            worst = max(worst, capacity.holevo_quantity(rho, ens) - bound)
    return [_check("holevo_minus_bound", worst, tol)]


SUITES = {
    "sdc2": suite_sdc2,
    "sdc3": suite_sdc3,
    "weyl": suite_weyl,
    "separable-bound": suite_separable_bound,
    "bound-dominance": suite_bound_dominance,
}


def run_suite(name, trials, seed, tol=None):
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    checks = SUITES[name](trials, rng, tol)
    return {
        "suite": name,
        "trials": trials,
        "seed": seed,
        "passed": all(c["passed"] for c in checks),
        "max_residual": max(c["max_residual"] for c in checks),
        "checks": checks,
    }
