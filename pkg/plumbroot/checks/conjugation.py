from plumbroot.basecheck import FuzzCase, VerificationCheck
from plumbroot.series import conjugation_check


class ConjugationCheck(VerificationCheck):
    """Only for families that claim F_n(-r) = (-1)^n F_n(r)."""

    check_name = "conjugation"

    def run(self, case: FuzzCase):
        if not case.family.claims_a3:
            return []
        result = conjugation_check(case.plumbing, case.k, case.family, case.order)
        return [self.row(case, result.ok, f"{len(result.mismatches)} mismatched bidegrees")]
