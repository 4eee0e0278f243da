"""Run the overlap-shrinking loop on two laminar matroids and trace it."""
from matroid_pricing import LaminarMatroid, price_conjecture2_sbo, verify_conjecture2

m1 = LaminarMatroid(6, [(range(6), 3), ([0, 1, 2], 2), ([0, 1], 1)])
m2 = LaminarMatroid(6, [(range(6), 3), ([3, 4, 5], 2), ([4, 5], 1)])

result = price_conjecture2_sbo(m1, m2)
print("overlap after each round:", result.overlaps)
print("rounds:", result.iterations)
print("final bases:", sorted(result.B1), sorted(result.B2))
print("prices:", [str(p) for p in result.prices])
print("verified:", verify_conjecture2(m1, m2, result.prices).passed)
