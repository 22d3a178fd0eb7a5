"""
plumbroot: weighted graded roots and the two-variable series of negative
definite plumbed 3-manifolds, in exact rational arithmetic.
"""
import os

from plumbroot.admissible import (
    average_families, check_a3, check_admissible, f_gamma_k, f_hat, f_hat_pm, family_from_seeds, seeds_of,
)
from plumbroot.core import (
    MoveKind, NeumannMove, Plumbing, apply_move, brieskorn_plumbing, intersection_matrix, is_negative_definite,
    parse_plumbing, random_plumbing, read_plumbing, star_plumbing,
)
from plumbroot.oracle import zhat_oracle
from plumbroot.root import (
    GradingMode, build_root, canonical_code, chi, epsilon_theta, lattice_context, local_min_candidates,
    module_ranks, normalize_root, sublevel_components,
)
from plumbroot.series import conjugation_check, p_k_n, specialize_t1, two_var_series, verify_stabilization
from plumbroot.spinc import (
    canonical_spinc, conjugate, d_invariant, enumerate_spinc, k_to_a, same_spinc, transport_spinc,
)


def _read_version() -> str:
    path = os.path.join(os.path.dirname(os.path.dirname(__file__)), "VERSION.txt")
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read().strip()
    except OSError:
        return "0.0.0"


__version__ = _read_version()
