import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.stateful import RuleBasedStateMachine, invariant, rule

from tripletindex import (EncodingError, IndexConfig, KeyLengthError, Oracle, PositionVector,
                          SearchOutcome, Strategy, TripletId, TripletIndex, triplets_of)

STRATS = list(Strategy)


def test_triplets_of(abcd):
    t = abcd.triplet
    assert triplets_of("ACAD", abcd) == [(t("ACA"), 1), (t("CAD"), 2)]
    assert triplets_of("ADCDB", abcd) == [(t("ADC"), 1), (t("DCD"), 2), (t("CDB"), 3)]
    assert triplets_of("ABC", abcd) == [(TripletId(0, 1, 2), 1)]
    with pytest.raises(EncodingError):
        triplets_of("ABE", abcd)
    with pytest.raises(KeyLengthError):
        triplets_of("ABCDABC", abcd)


def test_insert_sets_bits(abcd):
    idx = TripletIndex(abcd)
    assert idx.insert("ACAD")
    g = idx.grid
    assert g.test_position("ACA", 1) and g.test_position("CAD", 2) and g.test_mark("CAD", 2)
    assert list(idx.container_at("CAD", 2)) == ["A"]


def test_sample_marks(sample):
    g = sample.grid
    assert g.mark_vector("CDA") == PositionVector.from_positions({2, 3}, 6)
    assert g.test_mark("CDB", 3) and g.test_mark("AAD", 4)


@pytest.mark.parametrize("variant", ["list", "tree"])
def test_duplicate_insert_leaves_state(abcd, variant):
    a, b = TripletIndex(abcd, variant), TripletIndex(abcd, variant)
    a.insert("ACAD")
    b.insert("ACAD")
    assert not b.insert("ACAD")
    assert np.array_equal(a.grid.position_plane, b.grid.position_plane)
    assert np.array_equal(a.grid.mark_plane, b.grid.mark_plane)
    assert list(a.keys()) == list(b.keys()) and a.f == b.f and len(b) == 1


def test_sample_searches(sample):
    assert sample.search("ADCDB") == SearchOutcome(True, None, 1)
    assert sample.search("DCDB") == SearchOutcome(False, 1, 0)
    assert sample.search("ADCDA") == SearchOutcome(False, "container", 1)
    assert sample.search("ADCDA", Strategy.DIRECT) == SearchOutcome(False, "container", 1)
    assert sample.search("DCDB", Strategy.DIRECT) == SearchOutcome(False, "mark", 0)


def test_container_rejects_shared_triplets():
    idx = TripletIndex(IndexConfig("ABCD", 4))
    idx.insert("ABCA")
    idx.insert("DBCD")
    out = idx.search("ABCD")
    assert not out.found and out.pruned_at == "container"


def test_sample_suffixes(sample):
    r = sample.suffix_query("BCDA")
    assert r.keys == {"ABCDA"}
    assert set(r.candidates) == {2, 3} and r.containers_probed == 2
    r = sample.suffix_query("ACDA")
    assert r.keys == set() and not r.candidates and r.containers_probed == 0
    r = sample.suffix_query("DCDA")
    assert r.keys == set() and set(r.candidates) == {3} and r.containers_probed == 1


def test_suffix_longer_than_l(sample):
    assert sample.suffix_search("ABCDABC") == set()


def test_delete_semantics(abcd):
    idx = TripletIndex(abcd)
    idx.insert("ACAD")
    assert idx.delete("ACAD")
    assert not idx.grid.test_mark("CAD", 2)
    assert idx.grid.test_position("ACA", 1)
    assert not idx.delete("ACAD")
    idx.insert("ACAD")
    idx.insert("BCAD")
    idx.delete("ACAD")
    assert idx.grid.test_mark("CAD", 2) and len(idx.container_at("CAD", 2)) == 1


def test_update(abcd):
    idx = TripletIndex(abcd)
    idx.insert("ACAD")
    assert not idx.update("BBBB", "CCCC")
    assert "CCCC" not in idx
    assert idx.update("ACAD", "DDD")
    assert list(idx.keys()) == ["DDD"]
    with pytest.raises(EncodingError):
        idx.update("DDD", "XYZ")
    assert "DDD" in idx


def test_stats(sample, abcd):
    # (CDA,2), (CDA,3), (CDB,3), (AAD,4)
    assert sample.stats() == {"m": 4, "container_count": 4, "max_container_size": 1,
                            "avg_container_size": 1.0, "shortstore_size": 0}
    assert TripletIndex(abcd).stats() == {"m": 0, "container_count": 0, "max_container_size": 0,
                                          "avg_container_size": 0.0, "shortstore_size": 0}


@given(st.lists(st.text("ABCD", min_size=1, max_size=6), max_size=10))
def test_stats_recount(keys):
    idx = TripletIndex(IndexConfig("ABCD", 6))
    for key in keys:
        idx.insert(key)
    long_keys = {k for k in keys if len(k) >= 3}
    groups = {}
    for key in long_keys:
        groups.setdefault((key[-3:], len(key)), set()).add(key)
    sizes = [len(v) for v in groups.values()]
    s = idx.stats()
    assert s["m"] == len(set(keys))
    assert s["container_count"] == len(groups)
    assert s["max_container_size"] == max(sizes, default=0)
    assert s["shortstore_size"] == len(set(keys) - long_keys)


def test_short_keys(abcd):
    idx = TripletIndex(abcd)
    for key in ["A", "AB", "CAB"]:
        idx.insert(key)
    assert idx.search("AB").found and not idx.search("BA").found
    assert idx.suffix_search("B") == {"AB", "CAB"}
    assert idx.suffix_search("AB") == {"AB", "CAB"}


keys_st = st.text("ABC", min_size=1, max_size=7)


class IndexModel(RuleBasedStateMachine):
    """Random insert/delete interleavings against a shadow set."""

    def __init__(self):
        super().__init__()
        cfg = IndexConfig("ABC", 7)
        self.idx = {v: TripletIndex(cfg, v) for v in ("list", "tree")}
        self.oracle = Oracle()
        self.positions = np.zeros_like(self.idx["list"].grid.position_plane)

    @rule(key=keys_st)
    def insert(self, key):
        expect = self.oracle.insert(key)
        for idx in self.idx.values():
            assert idx.insert(key) == expect

    @rule(key=keys_st)
    def delete(self, key):
        expect = self.oracle.delete(key)
        for idx in self.idx.values():
            assert idx.delete(key) == expect

    @rule(key=keys_st)
    def search(self, key):
        for idx in self.idx.values():
            for s in STRATS:
                assert idx.search(key, s).found == self.oracle.exact(key)

    @rule(suffix=st.text("ABC", min_size=1, max_size=8))
    def suffix(self, suffix):
        for idx in self.idx.values():
            for s in STRATS:
                assert idx.suffix_search(suffix, s) == self.oracle.suffix(suffix)

    @invariant()
    def marks_track_containers(self):
        for idx in self.idx.values():
            marked = {(int(c), int(p) + 1) for c, p in
                      zip(*np.nonzero(np.unpackbits(idx.grid._mark, axis=1,
                                                    bitorder="little")[:, :7]))}
            assert marked == set(idx.containers)
            assert all(len(c) for c in idx.containers.values())

    @invariant()
    def positions_never_clear(self):
        plane = self.idx["list"].grid.position_plane
        assert not np.any(self.positions & ~plane)
        self.positions = plane.copy()

    @invariant()
    def counts(self):
        for idx in self.idx.values():
            assert len(idx) == len(self.oracle)
            assert set(idx.keys()) == self.oracle.keys


TestIndexModel = IndexModel.TestCase
TestIndexModel.settings = settings(max_examples=50, stateful_step_count=40, deadline=None)
