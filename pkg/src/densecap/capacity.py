"""Holevo quantities and the closed-form dense-coding capacity.

For a shared state ``rho_AB`` and a sender of dimension ``D_A``::

    C = log2(D_A) + S(rho_B) - S(rho_AB)
      = [log2(D_A) - S(rho_A)] + [S(rho_A) + S(rho_B) - S(rho_AB)]

i.e. the single-system capacity plus the mutual entropy. It is attained by
any depolarizing alphabet and bounds the Holevo quantity of every unitary
alphabet.
"""

import math
from dataclasses import asdict, dataclass

from densecap import encoders
from densecap.errors import InvalidEnsemble, NumericalError
from densecap.linalg import von_neumann_entropy

ROUTE_TOL = 1e-9
ADVANTAGE_TOL = 1e-9
DEPOLARIZER_TOL = 1e-9


def entropies(rho):
    """``(S(rho_A), S(rho_B), S(rho_AB))`` in bits."""
    return (
        von_neumann_entropy(rho.reduced("A")),
        von_neumann_entropy(rho.reduced("B")),
        von_neumann_entropy(rho.mat),
    )


def holevo_quantity(rho, ens):
    """Holevo information of the encoded ensemble ``{p_k, (U_k x I) rho (U_k x I)^H}``.

    The average member entropy is computed symbol by symbol and also via
    unitary invariance (it must equal ``S(rho_AB)``); a disagreement larger
    than ``ROUTE_TOL`` raises :class:`NumericalError`.
    """
    s_avg = von_neumann_entropy(encoders.apply_ensemble(rho, ens).mat)
    members = sum(
        p * von_neumann_entropy(encoders.encode(rho, u)) for p, u in zip(ens.probs, ens.unitaries)
    )
    s_rho = von_neumann_entropy(rho.mat)
    if abs(members - s_rho) > ROUTE_TOL:
        raise NumericalError(
            f"member entropies average {members:.15g} but S(rho) = {s_rho:.15g}"
        )
    return s_avg - members


def dense_coding_capacity(rho):
    _, s_b, s_ab = entropies(rho)
    return math.log2(rho.dim_a) + s_b - s_ab


def regime(rho):
    """"proved" for 2x2 and 3x3 systems, "conjectured" otherwise."""
    return "proved" if rho.dim_a == rho.dim_b and rho.dim_a in (2, 3) else "conjectured"


@dataclass(frozen=True)
class CapacityReport:
    dim_a: int
    dim_b: int
    sA: float
    sB: float
    sAB: float
    mutual: float
    closed_form: float
    single_system: float
    holevo_sdc: float
    coherent_info: float
    advantage: bool
    regime: str
    # orientation with B as sender: log2(D_B) + S(rho_A) - S(rho_AB)
    closed_form_reversed: float

    def to_dict(self):
        d = asdict(self)
        d["dimA"] = d.pop("dim_a")
        d["dimB"] = d.pop("dim_b")
        return d


def capacity_decomposition(rho, ens=None):
    """Full :class:`CapacityReport`; ``ens`` defaults to the depolarizer for ``D_A``."""
    s_a, s_b, s_ab = entropies(rho)
    log_da = math.log2(rho.dim_a)
    coherent = s_b - s_ab
    ens = ens if ens is not None else encoders.depolarizer_for(rho.dim_a)
    return CapacityReport(
        dim_a=rho.dim_a,
        dim_b=rho.dim_b,
        sA=s_a,
        sB=s_b,
        sAB=s_ab,
        mutual=s_a + s_b - s_ab,
        closed_form=log_da + coherent,
        single_system=log_da - s_a,
        holevo_sdc=holevo_quantity(rho, ens),
        coherent_info=coherent,
        advantage=coherent > ADVANTAGE_TOL,
        regime=regime(rho),
        closed_form_reversed=math.log2(rho.dim_b) + s_a - s_ab,
    )


def dense_coding_advantage(rho):
    """``(S(rho_B) - S(rho_AB) > 1e-9, S(rho_B) - S(rho_AB))``."""
    _, s_b, s_ab = entropies(rho)
    coherent = s_b - s_ab
    return coherent > ADVANTAGE_TOL, coherent


def check_capacity_identity(rho, ens, trials=20, seed=0):
    """``|holevo_quantity - dense_coding_capacity|`` for a depolarizing ``ens``."""
    dev = encoders.verify_depolarizer(ens, trials, seed)
    if dev >= DEPOLARIZER_TOL:
        raise InvalidEnsemble(f"ensemble is not depolarizing (deviation {dev:.3e})")
    return abs(holevo_quantity(rho, ens) - dense_coding_capacity(rho))


# --- Werner family, closed form ---------------------------------------------


def werner_spectrum(p):
    """``[(1+3p)/4, (1-p)/4, (1-p)/4, (1-p)/4]``."""
    return [(1 + 3 * p) / 4] + [(1 - p) / 4] * 3


def werner_coherent_info(p):
    """``S(rho_B) - S(rho_AB) = 1 - H(spectrum)`` without any eigensolver."""
    h = -sum(x * math.log2(x) for x in werner_spectrum(p) if x > 0)
    return 1.0 - h


def werner_threshold(tol=1e-6):
    """Werner weight where the coherent information crosses zero (bisection)."""
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if werner_coherent_info(mid) > 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
