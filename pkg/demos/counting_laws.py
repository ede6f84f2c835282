#!/usr/bin/env python3
"""Walk through the counting laws on small fields, formula vs brute force.

A Hankel matrix built from x = (x_0, ..., x_{m+n}) has entry (i, j) equal
to x_{i+j}.  Over GF(Q) the number of tuples whose matrix has rank at
most r is exactly Q^(2r), and pinning the first k entries to any fixed
prefix divides the count by exactly Q^k: the prefix-fixed count Q^(2r-k)
does not depend on which prefix you pick.  This script sweeps every small
parameter choice and shows the formula and the exhaustive count side by
side.
"""

from hankelcensus import CountQuery, FieldSpec, brute_census, brute_count_rank_le
from hankelcensus.census import count_rank_eq_formula, count_rank_le_formula
from hankelcensus.hankel import iter_seq_tuples

for q in (2, 3):
    field = FieldSpec.from_order(q)
    print(f"== {field} ==")
    print("unrestricted counts, m=2, n=3:")
    for r in range(3):
        query = CountQuery(field, 2, 3, r)
        print(
            f"  rank <= {r}: formula {count_rank_le_formula(query):>6}"
            f"   brute {brute_count_rank_le(query):>6}"
        )

    print("prefix-fixed counts, m=n=2, r=2, k=2 (one line per prefix):")
    for a in iter_seq_tuples(field, 2):
        query = CountQuery(field, 2, 2, 2, a)
        print(
            f"  prefix {a}: formula {count_rank_le_formula(query):>4}"
            f"   brute {brute_count_rank_le(query):>4}"
        )

    print("exact-rank census, m=1, n=2:")
    dist = brute_census(field, 1, 2)
    for rank, count in dist.sorted_items():
        formula = count_rank_eq_formula(field, 1, 2, rank)
        print(f"  rank {rank}: {count:>4} tuples (formula {formula})")
    print(f"  total {dist.total} = {q}^4")
    print()
