"""Classical capacity of superdense coding for mixed bipartite states."""

from densecap._backend import BACKEND
from densecap.capacity import (
    CapacityReport,
    capacity_decomposition,
    check_capacity_identity,
    dense_coding_advantage,
    dense_coding_capacity,
    holevo_quantity,
)
from densecap.encoders import (
    EncodingEnsemble,
    apply_ensemble,
    heisenberg_weyl_set,
    make_ensemble,
    sdc_qubit_set,
    sdc_qutrit_set,
    verify_depolarizer,
)
from densecap.linalg import von_neumann_entropy
from densecap.optimizer import optimize_holevo, random_ensemble
from densecap.states import (
    DensityMatrix,
    bell_state,
    random_mixed,
    random_pure,
    random_separable,
    validate_density,
    werner_state,
)

__version__ = "0.1.0"
