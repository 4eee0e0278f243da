"""Additive buyers restricted to matroid bases: prices that force a
welfare-maximizing split no matter how ties are broken."""
from fractions import Fraction

from matroid_pricing import (PartitionMatroid, UniformMatroid, dual, price_weighted,
                             verify_conjecture3)

m1 = PartitionMatroid([[0, 1], [2, 3], [4, 5]], [1, 1, 1])
m2 = dual(UniformMatroid(6, 3))   # buyer 2 takes whatever three items remain
w1 = [5, 2, 4, 4, 1, 3]
w2 = [Fraction(7, 2), 3, 1, 6, 2, 2]

result = price_weighted(m1, w1, m2, w2)
print("weight split q1:", [str(x) for x in result.q1])
print("weight split q2:", [str(x) for x in result.q2])
print("epsilon:", result.epsilon)
print("prices:", [str(p) for p in result.prices])
report = verify_conjecture3(m1, w1, m2, w2, result.prices)
print("optimal welfare:", report.flags["optimum"], "| verified:", report.passed)
