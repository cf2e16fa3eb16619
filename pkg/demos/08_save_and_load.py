#! /usr/bin/env python3
"""Saving an index and reading it back unchanged."""
import os
import tempfile

from tripletindex import IndexConfig, IndexFamily, load, save

fam = IndexFamily(IndexConfig("ABCD", 6), "tree")
for key in ["ABCDA", "ADCDB", "CCDA", "BCDAAD"]:
    fam.insert(key)

with tempfile.TemporaryDirectory() as tmp:
    path = os.path.join(tmp, "sample.idx")
    save(fam, path)
    back = load(path)
    print(os.path.getsize(path), "bytes on disk")
    assert back.substring_search("BCDA") == fam.substring_search("BCDA")
    save(back, path + ".2")
    with open(path, "rb") as a, open(path + ".2", "rb") as b:
        assert a.read() == b.read()
print("round trip ok")
