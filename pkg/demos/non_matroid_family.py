"""A four-item set system where no price vector works, and why."""
from matroid_pricing.verify import NO_PRICE_FAMILY1, NO_PRICE_FAMILY2, remark_constraints, remark_counterexample_check

print("buyer 1 bundles:", [sorted(b) for b in NO_PRICE_FAMILY1])
print("buyer 2 bundles:", [sorted(b) for b in NO_PRICE_FAMILY2])
for a, b in remark_constraints():
    print(f"forced: p[{a}] < p[{b}]")
print("the forced inequalities form a cycle, no ordering works:", remark_counterexample_check())
