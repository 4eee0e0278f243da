"""Item prices that steer two buyers to a welfare-optimal split without a
central tie-breaker, for matroid rank, weighted-basis, and
gross-substitutes valuations."""
from .algorithms import (WeightSplit, check_split, common_basis, max_common_independent,
                         max_weight_basis, max_weight_common_basis_split,
                         min_overlap_common_basis, partition_into_bases,
                         partition_into_independent, restrict_to_max_weight_bases,
                         union_is_basis)
from .errors import *  # noqa: F401,F403
from .exchange import (ExchangeDigraph, assign_prices, build_exchange_digraph,
                       build_union_exchange_digraph, shortest_dicycle)
from .gross_substitutes import (NEG_INF, ValuationTable, argmax_set, check_mnat_exc,
                                intersection_split, price_gs, reflect, verify_gs_prices,
                                weighted_rank_valuation)
from .matroid import (ExplicitMatroid, FreeMatroid, GraphicMatroid, LaminarMatroid, Matroid,
                      PartitionMatroid, TransversalMatroid, UniformMatroid, add_parallel,
                      as_special_partition, build_matroid, contract, delete, direct_sum, dual,
                      union)
from .pipelines import (PricingResult, bipartite_edge_weights, matching_selections,
                        max_union_bases, price_conjecture1, price_conjecture2,
                        price_conjecture2_partition, price_conjecture2_sbo,
                        price_rank_valuations, price_weighted)
from .sbo import SboBijection, dm_merge_two, sbo_bijection, validate_sbo_bijection
from .verify import (VerificationReport, enumerate_bases, remark_counterexample_check,
                     verify_conjecture0, verify_conjecture1, verify_conjecture2,
                     verify_conjecture3)

__version__ = "0.1.0"
