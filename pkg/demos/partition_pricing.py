"""Price four items for two buyers: one picks one item per pair, the other any two.

Prints the price vector, the bases it steers each buyer to, and the
exhaustive check that any cheapest/dearest tie-break still works.
"""
from matroid_pricing import PartitionMatroid, UniformMatroid, price_conjecture2, verify_conjecture2

pairs = PartitionMatroid([[0, 1], [2, 3]], [1, 1])
any_two = UniformMatroid(4, 2)

result = price_conjecture2(pairs, any_two, "partition")
print("prices:", [str(p) for p in result.prices])
print("cheapest basis of the pair matroid:", sorted(result.B1))
print("dearest basis of the uniform matroid:", sorted(result.B2))

report = verify_conjecture2(pairs, any_two, result.prices)
print("verified:", report.passed, "| unique extremes:", report.flags)
