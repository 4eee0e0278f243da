"""Two gross-substitutes buyers given as explicit valuation tables."""
from matroid_pricing.generate import gen_instance
from matroid_pricing.gross_substitutes import (ValuationTable, check_mnat_exc, price_gs,
                                               verify_gs_prices)

inst = gen_instance("gs-table", 5, 7)
v1, v2 = (ValuationTable.from_json(d) for d in inst["valuations"])
print("exchange property holds:", check_mnat_exc(v1) is True and check_mnat_exc(v2) is True)

result = price_gs(v1, v2, seed=1)
print("weight split q:", [str(x) for x in result.q])
print("set prices found by:", result.method)
print("prices:", [str(p) for p in result.prices])
print("verified:", verify_gs_prices(v1, v2, result.prices).passed)
