"""Direct numerical maximization of the Holevo quantity over unitary alphabets.

Each symbol's unitary is ``exp(i H)`` with ``H`` Hermitian, stored as ``D**2``
real coordinates (diagonal first, then real/imaginary parts of the upper
triangle). Probabilities are a softmax of per-symbol logits. The search is a
coordinate pattern search: try ``+step`` then ``-step`` on each coordinate,
accept the first improvement, halve the step after a sweep with no
improvement. Gradients are avoided on purpose: entropy derivatives are
ill-conditioned where eigenvalues cross.
"""

from dataclasses import dataclass, field

import numpy as np

from densecap import capacity, encoders
from densecap._backend import kernels
from densecap.linalg import von_neumann_entropy

STEP_START = 0.5
STEP_MIN = 1e-4
MAX_EVALS = 5000


@dataclass(frozen=True)
class EnsembleParams:
    """Unconstrained coordinates of a ``K``-symbol alphabet on dimension ``dim``."""

    unitary_params: np.ndarray  # (K, dim**2)
    prob_logits: np.ndarray  # (K,)

    @property
    def n_symbols(self):
        return self.prob_logits.shape[0]

    @property
    def dim(self):
        return int(round(np.sqrt(self.unitary_params.shape[1])))

    def pack(self):
        return np.concatenate([self.unitary_params.ravel(), self.prob_logits])

    @classmethod
    def unpack(cls, x, n_symbols, dim):
        x = np.asarray(x, dtype=float)
        d2 = dim * dim
        if x.shape != (n_symbols * (d2 + 1),):
            raise ValueError(f"expected {n_symbols * (d2 + 1)} parameters, got {x.shape}")
        return cls(x[: n_symbols * d2].reshape(n_symbols, d2).copy(), x[n_symbols * d2:].copy())


def materialize(params):
    """Build the :class:`~densecap.encoders.EncodingEnsemble` for ``params``."""
    dim = params.dim
    unitaries = [
        kernels.exp_i_hermitian(kernels.hermitian_from_coords(row, dim)) for row in params.unitary_params
    ]
    return encoders.make_ensemble(unitaries, kernels.softmax(params.prob_logits), name="optimized")


def random_ensemble(dim, n_symbols, seed=None):
    """Gaussian Hermitian coordinates and Dirichlet(1, ..., 1) probabilities."""
    rng = np.random.default_rng(seed)
    coords = rng.standard_normal((n_symbols, dim * dim))
    probs = rng.dirichlet(np.ones(n_symbols))
    unitaries = [kernels.exp_i_hermitian(kernels.hermitian_from_coords(c, dim)) for c in coords]
    return encoders.make_ensemble(unitaries, probs / probs.sum(), name="random")


@dataclass
class OptimizationResult:
    best_value: float
    best_ensemble: encoders.EncodingEnsemble
    restarts_used: int
    evaluations: int
    bound: float
    gap_to_bound: float
    best_restart: int
    # best objective after every accepted move, one array per restart
    trajectories: list = field(default_factory=list, repr=False)

    @property
    def max_evaluated(self):
        return max(float(t.max()) for t in self.trajectories)

    def to_dict(self):
        return {
            "value": self.best_value,
            "bound": self.bound,
            "gap": self.gap_to_bound,
            "restarts": self.restarts_used,
            "best_restart": self.best_restart,
            "evaluations": self.evaluations,
            "ensemble": encoders.ensemble_to_dict(self.best_ensemble),
        }


def pattern_search(f, x0, step=STEP_START, step_min=STEP_MIN, max_evals=MAX_EVALS):
    """Maximize ``f`` from ``x0``; returns ``(x, fx, evals, trajectory)``."""
    x = np.array(x0, dtype=float)
    fx = f(x)
    evals = 1
    trajectory = [fx]
    while step >= step_min and evals < max_evals:
        improved = False
        for i in range(x.size):
            for sign in (1.0, -1.0):
                if evals >= max_evals:
                    break
                old = x[i]
                x[i] = old + sign * step
                fy = f(x)
                evals += 1
                if fy > fx:
                    fx = fy
                    improved = True
                    trajectory.append(fx)
                    break
                x[i] = old
        if not improved:
            step *= 0.5
    return x, fx, evals, np.array(trajectory)


def optimize_holevo(rho, n_symbols=None, restarts=16, seed=None, max_evals=MAX_EVALS):
    """Best Holevo quantity found over ``restarts`` pattern searches.

    ``n_symbols`` defaults to ``D_A**2``. Restart ``r`` draws its start point
    from the ``r``-th child of ``SeedSequence(seed)``, so results do not depend
    on execution order; ties go to the lowest restart index. The winning
    ensemble is re-scored with :func:`~densecap.capacity.holevo_quantity`.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    dim_a, dim_b = rho.dim_a, rho.dim_b
    n_symbols = dim_a * dim_a if n_symbols is None else n_symbols
    if n_symbols < 1:
        raise ValueError("n_symbols must be >= 1")
    s_rho = von_neumann_entropy(rho.mat)
    mat = np.ascontiguousarray(rho.mat)

    def objective(x):
        return kernels.holevo_objective(x, mat, n_symbols, dim_a, dim_b) - s_rho

    size = n_symbols * (dim_a * dim_a + 1)
    children = np.random.SeedSequence(seed).spawn(restarts)
    best = None
    total = 0
    trajectories = []
    for r, child in enumerate(children):
        x0 = np.random.default_rng(child).standard_normal(size)
        x, fx, evals, traj = pattern_search(objective, x0, max_evals=max_evals)
        total += evals
        trajectories.append(traj)
        if best is None or fx > best[1]:
            best = (x, fx, r)
    x, _, r = best
    ens = materialize(EnsembleParams.unpack(x, n_symbols, dim_a))
    value = capacity.holevo_quantity(rho, ens)
    bound = capacity.dense_coding_capacity(rho)
    return OptimizationResult(
        best_value=value,
        best_ensemble=ens,
        restarts_used=restarts,
        evaluations=total,
        bound=bound,
        gap_to_bound=bound - value,
        best_restart=r,
        trajectories=trajectories,
    )
