"""
monores core engine
Monomial basic objects, resolution invariants, blowups and bound checks
"""
