import json
from fractions import Fraction

import pytest

from pellcheck.arith import FactorPolicy, Factorization, factor
from pellcheck.lehmer import LehmerReason, LehmerStatus
from pellcheck.sequences import digits10, pell_pair, pell_sequence
from pellcheck.verifier import (
    FactorCache,
    IndexReport,
    VerificationReport,
    VerifyContext,
    bound_chain,
    cache_load,
    cache_store,
    e8_enclosure,
    e8_threshold_check,
    final_inequality_holds,
    final_threshold,
    pomerance_rhs,
    run_identity_suite,
    verify_index,
    verify_range,
    _ineq_a_decide,
    _ineq_b_decide,
)
from pellcheck.intervals import certify

FAST = FactorPolicy(trial_bound=10**4, rho_budget_ms=200, max_total_ms=5000,
                    pm1_b1=10**4, pm1_b2=0)
STARVED = FactorPolicy(trial_bound=100, rho_budget_ms=1, max_total_ms=50,
                       pm1_b1=0, pm1_b2=0)


# ---------------------------------------------------------------------------
# verify_index


def test_verify_index_examples():
    r = verify_index(7, FAST)
    assert (r.verdict.status, r.verdict.reason, r.verdict.evidence) == (
        LehmerStatus.REJECTED, LehmerReason.NOT_SQUAREFREE, 13)
    r = verify_index(2, FAST)
    assert (r.verdict.status, r.verdict.reason) == (
        LehmerStatus.NOT_COMPOSITE, LehmerReason.IS_PRIME)
    r = verify_index(9, FAST)
    assert (r.verdict.status, r.verdict.reason, r.verdict.evidence) == (
        LehmerStatus.REJECTED, LehmerReason.FACTOR_WITNESS, 197)
    r = verify_index(1, FAST)
    assert (r.verdict.status, r.verdict.reason) == (
        LehmerStatus.NOT_COMPOSITE, LehmerReason.IS_UNIT)


def test_verify_index_invariants():
    for n in (1, 2, 4, 7, 9, 12, 15):
        r = verify_index(n, FAST)
        assert r.verdict.target == pell_pair(n).p
        assert r.pell_digits == digits10(pell_pair(n).p)
        assert r.pq_relation_ok and r.nu2_lemma_ok
        assert r.split_product_ok is (None if n % 2 == 0 or n < 3 else True)
        for p, e, res in r.factors_found:
            assert pell_pair(n).p % p**e == 0
            assert res == p % 4


def test_verify_index_rejects_zero():
    with pytest.raises(ValueError):
        verify_index(0, FAST)


def test_even_indices_short_circuit():
    r = verify_index(10, FAST)
    assert (r.verdict.status, r.verdict.reason) == (
        LehmerStatus.REJECTED, LehmerReason.EVEN)
    assert r.work_units < 1000  # no factoring happened


def test_seeding_soundness():
    context = VerifyContext(FAST)
    for n in (9, 15, 21, 35):
        p_n = pell_pair(n).p
        for s in context.seeds_for(n, p_n):
            assert p_n % s == 0, (n, s)


def test_elapsed_excluded_from_equality():
    a = verify_index(9, FAST)
    b = IndexReport(
        n=a.n, pell_digits=a.pell_digits, verdict=a.verdict,
        pq_relation_ok=a.pq_relation_ok, nu2_lemma_ok=a.nu2_lemma_ok,
        split_product_ok=a.split_product_ok, factors_found=a.factors_found,
        work_units=a.work_units, elapsed_ms=a.elapsed_ms + 123.0,
    )
    assert a == b


# ---------------------------------------------------------------------------
# verify_range


def test_verify_range_small():
    report = verify_range(12, FAST)
    statuses = {r.n: r.verdict.status for r in report.indices}
    assert statuses[1] == LehmerStatus.NOT_COMPOSITE
    assert statuses[2] == LehmerStatus.NOT_COMPOSITE   # P_2 = 2 is prime
    assert statuses[4] == LehmerStatus.REJECTED        # P_4 = 12, even
    assert statuses[7] == LehmerStatus.REJECTED
    assert report.status_counts["not_composite"] == 5  # n = 1, 2, 3, 5, 11
    assert report.status_counts["rejected"] == 7
    assert report.holds_indices == ()
    assert report.undecided_indices == ()
    assert report.reproduced
    assert report.bounds.final_threshold == 21
    assert report.bounds.omega_floor == 15


def test_verify_range_rejects_zero():
    with pytest.raises(ValueError):
        verify_range(0, FAST)


def test_verify_range_starved_budgets_never_hold():
    # undecided entries are permitted under tiny budgets, holds never are
    report = verify_range(50, STARVED)
    assert report.holds_indices == ()
    for r in report.indices:
        assert r.verdict.status in (LehmerStatus.NOT_COMPOSITE,
                                    LehmerStatus.REJECTED,
                                    LehmerStatus.UNDECIDED)


def test_verify_range_can_surface_undecided():
    # a 1 ms total budget cannot even pay for the default trial sweep, so
    # odd composite targets must come back undecided, honestly reported
    policy = FactorPolicy(trial_bound=10**6, rho_budget_ms=1,
                          max_total_ms=1, pm1_b1=0, pm1_b2=0)
    report = verify_range(10, policy)
    assert report.holds_indices == ()
    assert 7 in report.undecided_indices   # P_7 = 169 stays unfactored
    # (n = 9 still decides: the seed 5 comes from P_3 for free and the
    # residual 197 is caught by the primality screen, not by factoring)
    assert not report.reproduced


def test_verify_range_deterministic():
    a = verify_range(30, FAST)
    b = verify_range(30, FAST)
    assert a.to_json() == b.to_json()
    assert a == b


def test_report_round_trip():
    report = verify_range(15, FAST)
    parsed = VerificationReport.from_json(report.to_json())
    assert parsed == report
    assert parsed.to_json() == report.to_json()
    # canonical form carries no volatile timing
    data = json.loads(report.to_json())
    assert data["schema"] == 1
    assert "elapsed" not in json.dumps(data)


# ---------------------------------------------------------------------------
# bound chain


def test_bound_chain_examples():
    r = bound_chain(300, 15)
    assert r.ineq_a_holds is True
    r = bound_chain(3000, 15)
    assert r.two_power_satisfiable is False
    assert r.two_power_min_index == 2**30 - 1
    assert r.two_power_targets is None  # even index
    r = bound_chain(201, 15)
    assert digits10(r.pomerance_rhs) == 38539
    assert r.pomerance_rhs == 15 ** (2**15)


def test_bound_chain_odd_indices_get_exact_targets():
    r = bound_chain(3001, 15)
    assert r.two_power_targets == (1500, 1501)
    assert r.two_power_satisfiable is False
    r = bound_chain(2**30 - 1, 15)
    assert r.two_power_targets == (2**29 - 1, 2**29)
    assert r.two_power_satisfiable is True


def test_bound_chain_small_k():
    # ln 1 = 0, so inequality (a) must certify False without escalating
    r = bound_chain(300, 1)
    assert r.ineq_a_holds is False


def test_bound_chain_validates_inputs():
    with pytest.raises(ValueError):
        bound_chain(15, 15)
    with pytest.raises(ValueError):
        bound_chain(300, 0)
    with pytest.raises(ValueError):
        pomerance_rhs(64)  # far beyond the materialization cap


def test_bound_chain_booleans_stable_under_refinement():
    for n, k in ((300, 15), (3000, 15), (300, 1), (10**6, 15)):
        assert certify(_ineq_a_decide(n, k)) == certify(
            _ineq_a_decide(n, k), start_bits=768)
        assert certify(_ineq_b_decide(n, k)) == certify(
            _ineq_b_decide(n, k), start_bits=768)


def test_final_threshold():
    assert final_threshold() == 21
    assert final_inequality_holds(16) is True
    assert final_inequality_holds(20) is True
    assert final_inequality_holds(21) is False
    assert final_inequality_holds(22) is False
    with pytest.raises(ValueError):
        final_inequality_holds(15)


def test_e8_threshold():
    assert e8_threshold_check() is True
    enc = e8_enclosure()
    assert Fraction("2980.9") < enc.lo <= enc.hi < Fraction("2981.0")
    assert enc.lo <= Fraction(
        "2980.9579870417282747435920994528886737559679391328") <= enc.hi


# ---------------------------------------------------------------------------
# factor cache


def test_cache_store_load_round_trip(tmp_path):
    path = tmp_path / "cache.txt"
    cache = FactorCache(str(path))
    f9 = factor(pell_pair(9).p, FAST)
    cache_store(cache, 9, f9)
    assert cache_load(cache, 9) == f9
    assert cache_load(cache, 11) is None
    cache.write_file()

    reloaded = FactorCache(str(path))
    assert reloaded.load(9) == f9
    assert reloaded.rejected == []
    assert reloaded.loaded == 1


def test_cache_file_format(tmp_path):
    path = tmp_path / "cache.txt"
    cache = FactorCache(str(path))
    cache.store(9, factor(pell_pair(9).p, FAST))
    cache.store(15, Factorization(target=pell_pair(15).p,
                                  factors=((5, 2),), cofactor=7801))
    cache.write_file()
    lines = path.read_text().splitlines()
    assert lines == [
        "9 5^1 197^1 cofactor=1 complete=1",
        "15 5^2 cofactor=7801 complete=0",
    ]


def test_cache_rejects_corrupt_entries(tmp_path):
    path = tmp_path / "cache.txt"
    path.write_text("\n".join([
        "9 5^1 196^1 cofactor=1 complete=1",    # wrong product
        "9 5^1 197^1 cofactor=1 complete=0",    # inconsistent flag
        "9 985^1 cofactor=1 complete=1",        # listed factor not prime
        "this is not a record",
        "9 5^1 197^1 cofactor=1 complete=1",    # the one valid line
    ]) + "\n")
    cache = FactorCache(str(path))
    assert cache.loaded == 1
    assert len(cache.rejected) == 4
    assert cache.load(9) == factor(pell_pair(9).p, FAST)


def test_cache_store_validates_target():
    cache = FactorCache()
    with pytest.raises(ValueError):
        cache.store(9, factor(12, FAST))  # target is not P_9
    with pytest.raises(ValueError):
        cache.store(9, Factorization(target=pell_pair(9).p,
                                     factors=((985, 1),)))


def test_cache_upgrade_prefers_complete():
    cache = FactorCache()
    partial = Factorization(target=pell_pair(9).p, factors=((5, 1),),
                            cofactor=197)
    full = factor(pell_pair(9).p, FAST)
    cache.store(9, full)
    cache.store(9, partial)          # must not downgrade
    assert cache.load(9) == full


def test_verify_range_uses_cache(tmp_path):
    path = tmp_path / "cache.txt"
    cache = FactorCache(str(path))
    report = verify_range(20, FAST, cache=cache)
    assert report.cache_stored > 0
    cache.write_file()
    # a second run seeded from the file decides everything instantly
    cache2 = FactorCache(str(path))
    report2 = verify_range(20, FAST, cache=cache2)
    assert report2.reproduced == report.reproduced
    assert [r.verdict.status for r in report2.indices] == [
        r.verdict.status for r in report.indices]


# ---------------------------------------------------------------------------
# identity suite runner


def test_identity_suite():
    result = run_identity_suite(400, nu2_n_max=600)
    assert result.all_ok
    assert result.n_max == 400 and result.nu2_n_max == 600
    assert result.pq_relation_ok and result.split_product_ok
    assert result.nu2_lemma_ok and result.nu2_transfer_ok
    assert result.failures == ()


def test_identity_suite_matches_sequences():
    # cross-check one value the suite depends on against the public API
    ps = pell_sequence(9)
    assert ps[9] - 1 == 984
