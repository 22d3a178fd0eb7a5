"""
The lattice series at t = 1 against the principal-value oracle, on both
sides of the move.
"""
from plumbroot.basecheck import FuzzCase, VerificationCheck
from plumbroot.families.fhat import FHat
from plumbroot.oracle import zhat_oracle
from plumbroot.root import lattice_context
from plumbroot.series import specialize_t1, two_var_series


class OracleEquivalenceCheck(VerificationCheck):

    check_name = "oracle_equivalence"

    def run(self, case: FuzzCase):
        family = FHat()
        rows = []
        for label, plumbing, k in (("base", case.plumbing, case.k), ("moved", case.moved, case.moved_k)):
            ctx = lattice_context(plumbing, k)
            lattice_side = specialize_t1(two_var_series(ctx, family, case.order))
            oracle_side = zhat_oracle(plumbing, ctx.a, case.order)
            rows.append(self.row(case, lattice_side.agrees_with(oracle_side), label))
        return rows
