#! /usr/bin/env python3
"""The bit grid behind the index.

Every triplet of symbols owns one row of ``l`` position bits and one row
of ``l`` mark bits.  The grid is allocated up front, so its size depends
only on the alphabet size and the maximum key length.
"""
from tripletindex import BitGrid, IndexConfig, footprint_bits

# =============================================================================
# A four-symbol alphabet and keys of at most six symbols.

config = IndexConfig("ABCD", 6)
grid = BitGrid(config)
print("grid bits:", grid.addressable_bits, "=", footprint_bits(config))

# Indexing the key ACAD sets a position bit for each of its triplets and a
# mark bit for the last one.

grid.set_position("ACA", 1)
grid.set_mark("CAD", 2)
assert grid.test_position("CAD", 2)      # a mark always implies a position

# Rows come back as position vectors, which shift and intersect like sets
# of positions.

v = grid.position_vector("CAD")
print("CAD at", v.positions(), "shifted toward the end:", v.shift_toward_end(1).positions())

# At full scale the
# grid stays small: 26 symbols and keys up to 29 long need about 124 KiB.

big = IndexConfig.of_size(26, 29)
print(f"k=26, l=29: {footprint_bits(big):,} bits = {footprint_bits(big) / 8 / 1024:.1f} KiB")
