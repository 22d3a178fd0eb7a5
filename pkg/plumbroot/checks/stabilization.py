from plumbroot.basecheck import FuzzCase, VerificationCheck
from plumbroot.root import lattice_context
from plumbroot.series import verify_stabilization


class StabilizationCheck(VerificationCheck):

    check_name = "stabilization"

    def run(self, case: FuzzCase):
        report = verify_stabilization(lattice_context(case.plumbing, case.k), case.family, case.order)
        detail = f"certified level {report.certified_level}, {len(report.unstable)} unstable"
        return [self.row(case, report.ok, detail)]
