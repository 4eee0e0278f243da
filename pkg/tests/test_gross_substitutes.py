import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from matroid_pricing import (GraphicMatroid, PartitionMatroid, UniformMatroid, dual,
                             enumerate_bases, price_conjecture1)
from matroid_pricing.errors import MalformedDescriptor, NotMnatConcave, SearchExhausted
from matroid_pricing.generate import gen_instance, random_matroid_with_bases
from matroid_pricing.gross_substitutes import (NEG_INF, ValuationTable, argmax_set,
                                               check_mnat_exc, find_set_prices,
                                               indicator_valuation, intersection_split,
                                               price_gs, reflect, verify_gs_prices,
                                               weighted_rank_valuation)
from matroid_pricing.verify import NO_PRICE_FAMILY1, NO_PRICE_FAMILY2


def _bases_table(m):
    return indicator_valuation(m.n, enumerate_bases(m))


def _masks(sets):
    return frozenset(sum(1 << e for e in s) for s in sets)


def test_neg_inf_is_max_plus_bottom():
    assert NEG_INF + 3 is NEG_INF and 3 + NEG_INF is NEG_INF
    assert NEG_INF < Fraction(-10 ** 9) and not NEG_INF > 0
    assert max([NEG_INF, Fraction(-1)]) == -1


def test_matroid_indicator_passes_exchange():
    assert check_mnat_exc(_bases_table(UniformMatroid(4, 2))) is True


def test_weighted_rank_passes_exchange():
    rng = random.Random(3)
    for _ in range(10):
        n = rng.randint(1, 5)
        B = frozenset(rng.sample(range(n), rng.randint(0, n)))
        m = random_matroid_with_bases(rng, n, [B], rng.choice(["graphic", "transversal", "laminar"]))
        v = weighted_rank_valuation(m, [rng.randint(0, 9) for _ in range(n)])
        assert check_mnat_exc(v) is True


def test_remark_family_fails_exchange():
    x, y, i = check_mnat_exc(indicator_valuation(4, NO_PRICE_FAMILY2))
    # {0,1} and {2,3} with i = 0: no exchange stays inside the family
    assert (x, y, i) == (0b0011, 0b1100, 0)


def test_reflect():
    m = GraphicMatroid(4, [[0, 1], [1, 2], [2, 3], [3, 0], [0, 2]])
    v = _bases_table(m)
    r = reflect(v)
    assert reflect(r) == v
    assert len(r.domain) == len(v.domain)
    assert set(r.domain) == _masks(enumerate_bases(dual(m)))


def test_argmax_set():
    const = ValuationTable.from_function(3, lambda x: Fraction(7))
    assert argmax_set(const) == frozenset(range(8))
    v = weighted_rank_valuation(UniformMatroid(3, 2), [3, 2, 1])
    q = [0, 0, 5]
    direct = {x for x in range(8)
              if v[x] - sum(q[i] for i in range(3) if x >> i & 1) ==
              max(v[y] - sum(q[i] for i in range(3) if y >> i & 1) for y in range(8))}
    assert argmax_set(v, q) == direct == {0b011}


def test_split_with_zero_partner():
    v1 = weighted_rank_valuation(UniformMatroid(3, 2), [1, 4, 2])
    zero = ValuationTable.from_function(3, lambda x: Fraction(0))
    cert = intersection_split(v1, zero)
    assert cert.q == (0, 0, 0) and cert.optimum == 6


def test_split_on_basis_indicators():
    v1 = _bases_table(PartitionMatroid([[0, 1], [2, 3]], [1, 1]))
    v2s = _bases_table(UniformMatroid(4, 2))
    cert = intersection_split(v1, v2s)
    Q1 = argmax_set(v1, cert.q, -1)
    Q2s = argmax_set(v2s, cert.q, +1)
    common = set(v1.domain) & set(v2s.domain)
    assert cert.maximizers == Q1 & Q2s == common


def test_split_exact_on_weighted_ranks():
    for seed in range(15):
        inst = gen_instance("gs-table", 2 + seed % 5, seed)
        v1, v2 = [ValuationTable.from_json(d) for d in inst["valuations"]]
        v2s = reflect(v2)
        cert = intersection_split(v1, v2s)
        full = max(a + b for a, b in zip(v1.values, v2s.values))
        g = max(a - sum(cert.q[i] for i in range(v1.n) if x >> i & 1) for x, a in enumerate(v1.values)) \
            + max(b + sum(cert.q[i] for i in range(v1.n) if x >> i & 1) for x, b in enumerate(v2s.values))
        assert cert.optimum == full == g
        assert cert.maximizers == argmax_set(v1, cert.q, -1) & argmax_set(v2s, cert.q, +1)
        assert all(x == int(x) for x in cert.q_scaled)


def test_split_rejects_non_exchange_input():
    # v1 lives on {} and {0, 1} only, which breaks the exchange property
    v1 = ValuationTable(2, (3, NEG_INF, NEG_INF, 2))
    v2s = ValuationTable(2, (NEG_INF, 3, 2, 1))
    assert check_mnat_exc(v1) == (0b11, 0b00, 0)
    with pytest.raises(NotMnatConcave):
        intersection_split(v1, v2s)


def test_price_gs_rejects_non_exchange_input():
    with pytest.raises(NotMnatConcave):
        price_gs(indicator_valuation(4, NO_PRICE_FAMILY2), indicator_valuation(4, NO_PRICE_FAMILY1))


def test_price_gs_matroid_delegation_matches_pipeline():
    m1 = PartitionMatroid([[0, 1], [2, 3]], [1, 1])
    m2 = UniformMatroid(4, 2)
    v1, v2 = _bases_table(m1), _bases_table(m2)
    res = price_gs(v1, v2)
    assert res.method.startswith("matroid/")
    assert res.p_hat == price_conjecture1(m1, m2).prices
    assert verify_gs_prices(v1, v2, res.prices).passed


def test_price_gs_with_zero_partner():
    v1 = weighted_rank_valuation(UniformMatroid(4, 2), [3, 1, 4, 1])
    zero = ValuationTable.from_function(4, lambda x: Fraction(0))
    res = price_gs(v1, zero)
    assert verify_gs_prices(v1, zero, res.prices).passed


def test_verify_flags_bad_prices():
    # every bundle worth the same to buyer 1; buyer 2 values the pair only
    v1 = ValuationTable.from_function(2, lambda x: Fraction(1))
    v2 = ValuationTable.from_function(2, lambda x: Fraction(5) if x == 0b11 else Fraction(0))
    rep = verify_gs_prices(v1, v2, [0, 0])
    assert not rep.passed and {v["set"] for v in rep.violations} >= {"01", "10", "11"}


def test_single_item_market():
    v1 = ValuationTable(1, (0, 3))
    v2 = ValuationTable(1, (0, 1))
    assert verify_gs_prices(v1, v2, [2]).passed


def test_search_exhausted():
    with pytest.raises(SearchExhausted) as exc:
        find_set_prices(_masks(NO_PRICE_FAMILY1), _masks(NO_PRICE_FAMILY2) | {0}, 4, trials=30)
    assert exc.value.trials == 30


def test_json_round_trip():
    v = ValuationTable.from_json({"n": 2, "values": [["00", "0"], ["01", "1/2"], ["11", "-inf"]]})
    assert v[0b01] == Fraction(1, 2) and v[0b10] is NEG_INF and v[0b11] is NEG_INF
    assert ValuationTable.from_json(v.to_json()) == v
    with pytest.raises(MalformedDescriptor):
        ValuationTable.from_json({"n": 2, "values": [["0", "1"]]})
    with pytest.raises(MalformedDescriptor):
        ValuationTable(1, (NEG_INF, NEG_INF))


@given(st.integers(0, 10 ** 6))
def test_price_gs_property(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    vs = []
    for _ in range(2):
        B = frozenset(rng.sample(range(n), rng.randint(0, n)))
        m = random_matroid_with_bases(rng, n, [B], rng.choice(["uniform", "graphic", "partition"]))
        vs.append(weighted_rank_valuation(m, [rng.randint(0, 6) for _ in range(n)]))
    res = price_gs(*vs)
    assert verify_gs_prices(*vs, res.prices).passed
