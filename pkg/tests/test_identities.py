import pytest

from pellcheck.arith import nu2
from pellcheck.identities import (
    check_nu2_lemma,
    check_pq_relation,
    residue_mod4_of_factor,
    split_pell_minus_one,
)
from pellcheck.sequences import pell_lucas_sequence, pell_sequence


@pytest.mark.parametrize("n", [0, 3, 5])
def test_pq_relation_examples(n):
    assert check_pq_relation(n)


def test_pq_relation_range():
    for n in range(2001):
        assert check_pq_relation(n)


@pytest.mark.parametrize("n,p_idx,q_idx,p_part,q_part", [
    (5, 2, 3, 2, 14),     # 2 * 14 = 28 = P_5 - 1
    (7, 4, 3, 12, 14),    # 12 * 14 = 168 = P_7 - 1
    (9, 4, 5, 12, 82),    # 12 * 82 = 984 = P_9 - 1
    (3, 2, 1, 2, 2),      # 2 * 2 = 4 = P_3 - 1
])
def test_split_examples(n, p_idx, q_idx, p_part, q_part):
    s = split_pell_minus_one(n)
    assert (s.p_index, s.q_index) == (p_idx, q_idx)
    assert (s.p_part, s.q_part) == (p_part, q_part)


def test_split_branches_by_residue_mod_4():
    for n in range(3, 1000, 2):
        s = split_pell_minus_one(n)
        if n % 4 == 1:
            assert (s.p_index, s.q_index) == ((n - 1) // 2, (n + 1) // 2)
        else:
            assert (s.p_index, s.q_index) == ((n + 1) // 2, (n - 1) // 2)
        assert sorted((s.p_index, s.q_index)) == [(n - 1) // 2, (n + 1) // 2]


def test_split_product_range():
    ps = pell_sequence(2000)
    qs = pell_lucas_sequence(2000)
    for n in range(3, 2001, 2):
        s = split_pell_minus_one(n)
        assert s.p_part == ps[s.p_index]
        assert s.q_part == qs[s.q_index]
        assert s.p_part * s.q_part == ps[n] - 1


def test_split_rejects_bad_indices():
    with pytest.raises(ValueError):
        split_pell_minus_one(4)
    with pytest.raises(ValueError):
        split_pell_minus_one(1)


@pytest.mark.parametrize("n", [4, 6, 1])
def test_nu2_lemma_examples(n):
    assert check_nu2_lemma(n)


def test_nu2_lemma_range():
    for n in range(1, 2001):
        assert check_nu2_lemma(n)


def test_nu2_lemma_rejects_zero():
    with pytest.raises(ValueError):
        check_nu2_lemma(0)


def test_valuation_transfer_spot_values():
    # nu2(P_n - 1) = nu2(n - eps), eps = +1 iff n = 1 (mod 4)
    ps = pell_sequence(9)
    assert nu2(ps[5] - 1) == 2 == nu2(4)
    assert nu2(ps[9] - 1) == 3 == nu2(8)


def test_valuation_transfer_range():
    ps = pell_sequence(2000)
    for n in range(3, 2001, 2):
        eps = 1 if n % 4 == 1 else -1
        assert nu2(ps[n] - 1) == nu2(n - eps), n


@pytest.mark.parametrize("n,q", [(5, 29), (7, 13), (9, 197)])
def test_residue_examples(n, q):
    assert residue_mod4_of_factor(n, q) == 1


def test_residue_rejects_bad_input():
    with pytest.raises(ValueError):
        residue_mod4_of_factor(4, 3)        # even index
    with pytest.raises(ValueError):
        residue_mod4_of_factor(9, 196)      # not prime
    with pytest.raises(ValueError):
        residue_mod4_of_factor(9, 7)        # prime but not a factor
