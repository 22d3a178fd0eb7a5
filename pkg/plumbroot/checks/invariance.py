"""
Neumann invariance: the normalized weighted root and the truncated series
must not change when the plumbing is moved and k is transported.
"""
from typing import Tuple

from plumbroot.basecheck import FuzzCase, VerificationCheck
from plumbroot.basefamily import AdmissibleFamily
from plumbroot.root import (
    GradingMode, LatticeContext, WeightedGradedRoot, build_root, canonical_code, chi_min, lattice_context,
    normalize_root, stabilization_level,
)
from plumbroot.series import two_var_series


def aligned_roots(
        left: LatticeContext,
        right: LatticeContext,
        F: AdmissibleFamily
) -> Tuple[WeightedGradedRoot, WeightedGradedRoot]:
    """
    Both roots with min chi moved to 0 and built up to the same normalized top,
    the larger of the two stabilization spans.
    """
    left_min, right_min = chi_min(left), chi_min(right)
    span = max(stabilization_level(left) - left_min, stabilization_level(right) - right_min)
    return (
        normalize_root(build_root(left, F, top=left_min + span), GradingMode.CHI_MIN_ZERO),
        normalize_root(build_root(right, F, top=right_min + span), GradingMode.CHI_MIN_ZERO),
    )


class RootInvarianceCheck(VerificationCheck):

    check_name = "root_invariance"

    def run(self, case: FuzzCase):
        base = lattice_context(case.plumbing, case.k)
        moved = lattice_context(case.moved, case.moved_k)
        before, after = aligned_roots(base, moved, case.family)

        rows = [self.row(case, before.d_invariant == after.d_invariant,
                         f"d {before.d_invariant} vs {after.d_invariant}")]
        same = canonical_code(before) == canonical_code(after)
        rows.append(self.row(case, same, "" if same else f"{len(before.vertices)} vs {len(after.vertices)} vertices"))
        return rows


class SeriesInvarianceCheck(VerificationCheck):

    check_name = "series_invariance"

    def run(self, case: FuzzCase):
        base = lattice_context(case.plumbing, case.k)
        moved = lattice_context(case.moved, case.moved_k)
        before = two_var_series(base, case.family, case.order)
        after = two_var_series(moved, case.family, case.order)

        if before.delta != after.delta:
            return [self.row(case, False, f"Delta {before.delta} vs {after.delta}")]
        return [self.row(case, before.agrees_with(after), f"{len(before.poly)} terms")]
