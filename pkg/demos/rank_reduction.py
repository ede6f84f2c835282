#!/usr/bin/env python3
"""Show the shape reduction that makes rank-bound tests cheap.

For a Hankel matrix the question "is rank(H_{m,n}(x)) <= r" has the same
answer on the much smaller view H_{r,s}(x) with s = m+n-r, because
adjacent shapes (one row traded for one column) can only change a
bounded rank in lockstep.  So rather than reducing an (m+1) x (n+1)
matrix, it is enough to reduce an (r+1) x (s+1) one; for small r this is
a handful of rows regardless of how lopsided the original shape is.
"""

from hankelcensus import FieldSpec, HankelShape, SeqTuple, materialize_hankel, rank_gauss
from hankelcensus.ranklaw import rank_le_fast, rank_pair, rank_via_reduction

field = FieldSpec(5)
# x_i = 2^i + 3^i mod 5: a sum of two geometric sequences, so rank 2
codes = [(pow(2, i, 5) + pow(3, i, 5)) % 5 for i in range(11)]
x = SeqTuple.from_codes(field, codes)

m, n = 5, 5
full = materialize_hankel(x, HankelShape(m, n))
print(f"full matrix H_({m},{n}) over {field}:")
print(full)
print("direct rank:", rank_gauss(full))

rank, shape = rank_via_reduction(x, m, n)
print(f"reduction probes found rank {rank} on the "
      f"{shape.rows}x{shape.cols} view H_({shape.rdeg},{shape.cdeg})")

print("\nbound tests, each on its own reduced shape:")
for r in range(min(m, n) + 1):
    s = m + n - r
    print(f"  rank <= {r} on H_({r},{s}) [{r + 1}x{s + 1}]: {rank_le_fast(x, m, n, r)}")

print("\nadjacent-shape ranks around (3, 3):")
pair = rank_pair(x, 3, 3)
print(f"  tall H_(3,2): rank {pair.rank_tall}   wide H_(2,3): rank {pair.rank_wide}")
