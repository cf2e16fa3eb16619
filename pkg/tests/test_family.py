import threading

import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.stateful import RuleBasedStateMachine, invariant, rule

from tripletindex import (IndexConfig, IndexFamily, Oracle, ShiftedIndex, Strategy,
                          family_footprint_bits)
from conftest import SAMPLE_KEYS


def test_insert_populates_every_shift(abcd):
    fam = IndexFamily(abcd)
    fam.insert("BCDAAD")
    assert "BCDAAD" in fam and "BCDAAD" in fam.rev
    for i in range(1, 6):
        assert "BCDAAD" in fam.shifted[i]
    # S1 indexes "CDAAD" reversed ("DAADC") and stores the full key
    s1 = fam.shifted[1]
    assert list(s1.container_at("ADC", 3)) == ["BCDAAD"]


def test_short_shifts_use_shortstore(abcd):
    fam = IndexFamily(abcd)
    fam.insert("ABC")
    assert list(fam.shifted[1].shortstore) == ["ABC"]
    assert list(fam.shifted[2].shortstore) == ["ABC"]
    assert len(fam.shifted[3]) == 0


def test_insert_then_delete_empties_everything(abcd):
    fam = IndexFamily(abcd, "tree")
    fam.insert("BCDAAD")
    assert not fam.insert("BCDAAD")
    assert fam.delete("BCDAAD")
    assert not fam.delete("BCDAAD")
    for s in [fam.base, fam.rev.inner] + fam.shifted[1:]:
        assert len(s) == 0 and not s.containers


def test_prefix(sample_family):
    assert sample_family.prefix_search("ABC") == {"ABCDA"}
    assert sample_family.prefix_search("CCDA") == {"CCDA"}
    assert sample_family.prefix_search("DDD") == set()
    assert sample_family.prefix_search("A") == {"ABCDA", "ADCDB"}


def test_prefix_with_absent_symbol():
    fam = IndexFamily(IndexConfig("ABCDZ", 6))
    for key in SAMPLE_KEYS:
        fam.insert(key)
    assert fam.prefix_search("ZAB") == set()
    assert fam.prefix_search("Z") == set()


def test_substring_positions(sample_family):
    assert sample_family.substring_positions("BCDA").positions() == [1, 2]
    assert sample_family.substring_positions("CCDD").positions() == []
    assert sample_family.substring_positions("DCDA").positions() == [2]
    with pytest.raises(ValueError):
        sample_family.substring_positions("CD")


def test_substring(sample_family):
    r = sample_family.substring_query("BCDA")
    assert r.keys == {"ABCDA", "BCDAAD"}
    assert r.prefix_searches == 2 and r.structures == (0, 1)
    r = sample_family.substring_query("CCDD")
    assert r.keys == set() and r.prefix_searches == 0
    r = sample_family.substring_query("DCDA")
    assert r.keys == set() and r.structures == (1,)
    assert sample_family.substring_search("CD") == {"ABCDA", "ADCDB", "CCDA", "BCDAAD"}


def test_footprint():
    assert family_footprint_bits(IndexConfig.of_size(26, 29)) == 29_562_832
    assert family_footprint_bits(IndexConfig.of_size(2, 3)) == 144
    fam = IndexFamily(IndexConfig.of_size(2, 3))
    assert fam.footprint_bits() == {"base": 48, "reverse_family": 144, "total": 192}
    # one reverse structure plus l-1 shifted ones, each a full grid
    members = [fam.rev.inner] + fam.shifted[1:]
    assert sum(s.grid.addressable_bits for s in members) == 144


def test_shift_range(abcd):
    for bad in (0, 6):
        with pytest.raises(ValueError):
            ShiftedIndex(abcd, bad)
    with pytest.raises(ValueError):
        ShiftedIndex(abcd, 2).insert("AB")


def test_concurrent_inserts_stay_consistent():
    cfg = IndexConfig("ABCD", 8)
    fam = IndexFamily(cfg)
    import itertools
    keys = ["".join(p) for p in itertools.product("ABCD", repeat=5)][:400]

    def work(chunk):
        for key in chunk:
            fam.insert(key)

    threads = [threading.Thread(target=work, args=(keys[i::4],)) for i in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(fam) == len(fam.rev.inner) == len(fam.shifted[4]) == 400


keys_st = st.text("ABC", min_size=1, max_size=7)
frag_st = st.text("ABC", min_size=1, max_size=8)


class FamilyModel(RuleBasedStateMachine):
    def __init__(self):
        super().__init__()
        self.fam = IndexFamily(IndexConfig("ABC", 7), "tree")
        self.oracle = Oracle()

    @rule(key=keys_st)
    def insert(self, key):
        assert self.fam.insert(key) == self.oracle.insert(key)

    @rule(key=keys_st)
    def delete(self, key):
        assert self.fam.delete(key) == self.oracle.delete(key)

    @rule(frag=frag_st, strategy=st.sampled_from(Strategy))
    def query(self, frag, strategy):
        o = self.oracle
        assert self.fam.prefix_search(frag, strategy) == o.prefix(frag)
        assert self.fam.suffix_search(frag, strategy) == o.suffix(frag)
        assert self.fam.substring_search(frag, strategy) == o.substring(frag)

    @invariant()
    def structures_agree(self):
        n = len(self.oracle)
        assert len(self.fam) == len(self.fam.rev.inner) == n
        for i, s in enumerate(self.fam.shifted[1:], 1):
            assert len(s) == sum(len(k) > i for k in self.oracle.keys)


TestFamilyModel = FamilyModel.TestCase
TestFamilyModel.settings = settings(max_examples=40, stateful_step_count=30, deadline=None)
