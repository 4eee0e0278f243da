"""Buyers valuing bundles by matroid rank arrive one after another.

Whoever comes first and however they break ties, welfare stays optimal.
"""
from matroid_pricing import GraphicMatroid, UniformMatroid, price_rank_valuations, verify_conjecture0

# buyer 1 values acyclic edge sets of a 4-cycle with a chord; buyer 2 any two edges
m1 = GraphicMatroid(4, [[0, 1], [1, 2], [2, 3], [3, 0], [0, 2]])
m2 = UniformMatroid(5, 2)

result = price_rank_valuations(m1, m2)
print("prices:", [str(p) for p in result.prices])
report = verify_conjecture0(m1, m2, result.prices)
print("optimal welfare:", report.flags["optimum"])
print("first-buyer choices examined:", report.flags["first_picks"])
print("verified:", report.passed)
