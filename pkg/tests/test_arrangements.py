from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from elspl.arrangements import (
    ArrangementSpace,
    border_key,
    enumerate_pi_k,
    ihat,
    lemma3_sort,
    naive_sort,
    naive_tilde_sort,
)
from elspl.instance import generate_instance


def test_space_sizes():
    sp = ArrangementSpace(5, (0, 3, 7))
    assert sp.size == comb(5 + 3, 3)
    for k in range(6):
        assert len(sp.by_nu[k]) == comb(k + 2, 2)
        assert sorted(sp.counts[i] for i in sp.by_nu[k]) == sorted(enumerate_pi_k(5, 2, k))


def test_rank_follows_mixed_radix_code():
    sp = ArrangementSpace(4, (0, 2, 5))
    assert sp.code == sorted(sp.code)
    assert sp.index((0, 0, 0)) == sp.zero
    i = sp.index((1, 2, 1))
    assert sp.nu[i] == 4 and sp.omega[i] == 2 * 2 + 5
    assert sp.arrangement(i).counts == (1, 2, 1)
    with pytest.raises(ValueError):
        sp.index((3, 2, 0))


def test_neighbour_tables():
    sp = ArrangementSpace(3, (0, 4))
    i = sp.index((1, 1))
    assert sp.counts[sp.sub[1][i]] == (1, 0)
    assert sp.counts[sp.add[0][i]] == (2, 1)
    assert sp.add[0][sp.index((2, 1))] == -1


def test_ihat_and_border_key(t2_instance):
    # after period 1, one B_1 period (5 units) covers d_2 = 4 with 1 left over
    assert ihat(t2_instance, 1, (0, 1)) == 4 - 5
    assert ihat(t2_instance, 0, (1, 1)) == 7 - 5
    with pytest.raises(ValueError):
        ihat(t2_instance, 2, (0, 1))
    # K_t(n) = omega(n) - D(t - nu(n), t), demand through the free period itself
    assert border_key(t2_instance, 2, (0, 1)) == 5 - 7


def test_sort_example():
    inst = generate_instance(3, 6, 2)
    sp = ArrangementSpace.for_instance(inst)
    seqs = lemma3_sort(inst, sp)
    for t in range(1, inst.T + 1):
        assert seqs.hat[t] == naive_sort(inst, t, sp)
        keys = seqs.hat_keys[t]
        assert keys == sorted(keys)
    for t in range(0, inst.T + 1):
        assert seqs.tilde[t] == naive_tilde_sort(inst, t, sp)


def test_split_choice_does_not_change_order():
    inst = generate_instance(11, 5, 2)
    sp = ArrangementSpace.for_instance(inst)
    ref = lemma3_sort(inst, sp)
    for j in range(sp.m + 1):
        other = lemma3_sort(inst, sp, split=j)
        assert other.hat == ref.hat and other.tilde == ref.tilde


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 7), st.integers(0, 2))
def test_sort_matches_naive(seed, T, m):
    inst = generate_instance(seed, T, m)
    sp = ArrangementSpace.for_instance(inst)
    seqs = lemma3_sort(inst, sp)
    assert all(seqs.hat[t] == naive_sort(inst, t, sp) for t in range(1, T + 1))
    assert all(seqs.tilde[t] == naive_tilde_sort(inst, t, sp) for t in range(T + 1))
