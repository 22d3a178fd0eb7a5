"""
Admissible families. Every module in this package is imported by
plumbroot.orchestrator.load_families, which registers its classes.
"""
