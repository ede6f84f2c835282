#!/usr/bin/env python3
"""Turn a Jacobi-Trudi matrix upside down and count its singular fills.

The v x v matrix J with entry (i, j) = y_{u-i+j} (where y_0 is read as 1
and negative indices as 0) becomes a plain Hankel matrix when its rows
are reversed; the corresponding tuple starts with v-u-1 zeros and a one,
then carries y_1, ..., y_{u+v-1}.  Because row reversal only changes the
determinant's sign, counting singular J's reduces to the prefix-fixed
determinant count for Hankel matrices, giving exactly Q^(u+v-2) singular
tuples.
"""

from hankelcensus import (
    FieldSpec,
    HankelShape,
    SeqTuple,
    brute_count_jt_singular,
    det,
    jt_matrix,
    jt_to_hankel,
    materialize_hankel,
)
from hankelcensus.census import count_jt_singular_formula
from hankelcensus.hankel import row_reversal_sign

field = FieldSpec(3)
u, v = 2, 5
y = SeqTuple.from_codes(field, [1, 2, 0, 1, 2, 1])

J = jt_matrix(y, u, v)
print(f"J for u={u}, v={v} over {field}, built from y = {y}:")
print(J)

x = jt_to_hankel(y, u, v)
H = materialize_hankel(x, HankelShape(v - 1, v - 1))
print(f"\nupside down it is the Hankel view of x = {x}:")
print(H)

sign = row_reversal_sign(field, v)
print(f"\ndet(J) = {det(J)}, det(H) = {det(H)}, reversal sign {sign}")
assert det(J) == sign * det(H)

print("\nsingular counts (formula / flip route / direct determinant):")
for uu, vv in ((1, 3), (2, 2), (2, 5), (4, 3)):
    formula = count_jt_singular_formula(field, uu, vv)
    flip = brute_count_jt_singular(field, uu, vv, path="flip")
    direct = brute_count_jt_singular(field, uu, vv, path="direct")
    print(f"  u={uu} v={vv}: {formula} / {flip} / {direct}")
