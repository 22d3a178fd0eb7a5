"""
Verification checks run by `plumbroot verify`; every module here is imported
by orchestrator.load_checks and its VerificationCheck subclasses register.
"""
