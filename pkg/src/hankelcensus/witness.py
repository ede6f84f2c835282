"""Constructive gadgets behind the kernel-counting arguments.

Given a row vector v of length m+1 and a prefix a of length k, a tuple x
of length m+n+1 is *weakly nice* when it starts with a and v annihilates
its (m, n) Hankel view, and *strongly nice* when it starts with a and the
truncated vector R(v) (v with its trailing zero dropped) annihilates the
wider (m-1, n+1) view.  For nonzero v with last entry 0 the two notions
differ by exactly one free entry, x_{j+n+1}, where j is the largest index
with v_j != 0; `alpha` and `beta` are the mutually inverse maps that trade
that entry for a field element.

`solve_tail` is the complementary gadget for last(v) != 0: the tail
entries x_m..x_{m+n} are then uniquely determined from the head by back
substitution, so annihilating tuples with a fixed k-prefix number Q^{m-k}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dataclass_field

from hankelcensus.gf import FieldElement, FieldSpec
from hankelcensus.hankel import (
    DenseMatrix,
    HankelShape,
    RowVector,
    SeqTuple,
    materialize_hankel,
)
from hankelcensus.ranklaw import kernel_count_nonzero

__all__ = [
    "NiceContext",
    "last",
    "solve_tail",
    "R_map",
    "R_inv",
    "is_weakly_nice",
    "is_strongly_nice",
    "alpha",
    "beta",
    "sumlast_sides",
    "count_annihilators_literal",
]


def last(v: RowVector) -> FieldElement:
    """Final entry of a nonempty row vector."""
    if len(v) == 0:
        raise ValueError("empty row vector has no last entry")
    return v.entries[-1]


def R_map(v: RowVector) -> RowVector:
    """Drop the trailing entry, which must be zero."""
    if last(v):
        raise ValueError("R is only defined on vectors with last entry 0")
    return RowVector(v.field, v.entries[:-1])


def R_inv(w: RowVector) -> RowVector:
    """Append a zero entry; inverse of R_map on its domain."""
    return RowVector(w.field, w.entries + (w.field.zero,))


def _annihilates_codes(
    spec: FieldSpec, vcodes: tuple[int, ...], xcodes: tuple[int, ...], ncols: int
) -> bool:
    # v . (Hankel view with `ncols` columns) == 0, evaluated on codes
    add, mul = spec.add_code, spec.mul_code
    width = len(vcodes)
    for t in range(ncols):
        acc = 0
        for i in range(width):
            vi = vcodes[i]
            if vi:
                acc = add(acc, mul(vi, xcodes[i + t]))
        if acc:
            return False
    return True


def solve_tail(v: RowVector, head: SeqTuple, n: int) -> SeqTuple:
    """The unique x of length m+n+1 extending head with v annihilating it.

    Needs last(v) != 0; head supplies x_0..x_{m-1} and each tail entry is
    x_{m+t} = -(v_0 x_t + ... + v_{m-1} x_{m+t-1}) / v_m for t = 0..n.
    """
    if not last(v):
        raise ValueError("solve_tail needs last(v) != 0")
    if head.field != v.field:
        raise ValueError("head and v live in different fields")
    m = len(v) - 1
    if len(head) != m:
        raise ValueError(f"head must have {m} entries, got {len(head)}")
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    spec = v.field
    add, mul, neg = spec.add_code, spec.mul_code, spec.neg_code
    vcodes = v.codes
    vm_inv = spec.inv_code(vcodes[m])
    x = list(head.codes)
    for t in range(n + 1):
        acc = 0
        for i in range(m):
            vi = vcodes[i]
            if vi:
                acc = add(acc, mul(vi, x[i + t]))
        x.append(mul(neg(acc), vm_inv))
    return SeqTuple.from_codes(spec, x)


@dataclass(frozen=True)
class NiceContext:
    """Fixed data (v, a) for the weakly/strongly nice predicates.

    Requires v nonzero with last entry 0 and a prefix of length k <= n+1;
    j, the largest index with v_j != 0, is derived at construction.
    """

    field: FieldSpec
    m: int
    n: int
    v: RowVector
    a: SeqTuple
    j: int = dataclass_field(init=False)

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError(f"need m, n >= 0, got m={self.m}, n={self.n}")
        if self.v.field != self.field or self.a.field != self.field:
            raise ValueError("v and a must live in the context field")
        if len(self.v) != self.m + 1:
            raise ValueError(f"v must have {self.m + 1} entries, got {len(self.v)}")
        if not self.v:
            raise ValueError("v must be nonzero")
        if last(self.v):
            raise ValueError("context needs last(v) = 0")
        if len(self.a) > self.n + 1:
            raise ValueError(f"prefix length {len(self.a)} exceeds n+1 = {self.n + 1}")
        j = max(i for i, e in enumerate(self.v.entries) if e)
        object.__setattr__(self, "j", j)

    @property
    def k(self) -> int:
        return len(self.a)


def _check_tuple(x: SeqTuple, ctx: NiceContext) -> None:
    if x.field != ctx.field:
        raise ValueError("tuple lives in a different field")
    if len(x) != ctx.m + ctx.n + 1:
        raise ValueError(f"tuple must have {ctx.m + ctx.n + 1} entries, got {len(x)}")


def is_weakly_nice(x: SeqTuple, ctx: NiceContext) -> bool:
    """x starts with a and v annihilates its (m, n) Hankel view."""
    _check_tuple(x, ctx)
    if x.entries[: ctx.k] != ctx.a.entries:
        return False
    return _annihilates_codes(ctx.field, ctx.v.codes, x.codes, ctx.n + 1)


def is_strongly_nice(x: SeqTuple, ctx: NiceContext) -> bool:
    """x starts with a and R(v) annihilates its (m-1, n+1) Hankel view."""
    _check_tuple(x, ctx)
    if x.entries[: ctx.k] != ctx.a.entries:
        return False
    return _annihilates_codes(ctx.field, ctx.v.codes[:-1], x.codes, ctx.n + 2)


def alpha(y: FieldElement, x: SeqTuple, ctx: NiceContext) -> SeqTuple:
    """Replace entry x_{j+n+1} of a strongly nice tuple by y."""
    if y.spec != ctx.field:
        raise ValueError("y lives in a different field")
    if not is_strongly_nice(x, ctx):
        raise ValueError("alpha needs a strongly nice input tuple")
    pos = ctx.j + ctx.n + 1
    entries = x.entries[:pos] + (y,) + x.entries[pos + 1 :]
    return SeqTuple(ctx.field, entries)


def beta(x: SeqTuple, ctx: NiceContext) -> tuple[FieldElement, SeqTuple]:
    """Extract entry x_{j+n+1} of a weakly nice tuple and restore z.

    z is the unique value making the one extra annihilation equation hold:
    z = -(v_0 x_{n+1} + v_1 x_{n+2} + ... + v_{j-1} x_{j+n}) / v_j.
    """
    if not is_weakly_nice(x, ctx):
        raise ValueError("beta needs a weakly nice input tuple")
    spec = ctx.field
    add, mul = spec.add_code, spec.mul_code
    vcodes = ctx.v.codes
    xcodes = x.codes
    j, n = ctx.j, ctx.n
    acc = 0
    for i in range(j):
        vi = vcodes[i]
        if vi:
            acc = add(acc, mul(vi, xcodes[n + 1 + i]))
    z = mul(spec.neg_code(acc), spec.inv_code(vcodes[j]))
    pos = j + n + 1
    y = x.entries[pos]
    entries = x.entries[:pos] + (spec.element(z),) + x.entries[pos + 1 :]
    return y, SeqTuple(spec, entries)


def count_annihilators_literal(M: DenseMatrix, max_vectors: int = 10**6) -> int:
    """Count nonzero v with v M = 0 by enumerating all Q^rows row vectors.

    Slow roll-call oracle for cross-checking the rank-nullity count.
    """
    spec = M.field
    q = spec.order
    if q**M.rows > max_vectors:
        raise ValueError(f"enumeration of {q}^{M.rows} vectors exceeds {max_vectors}")
    cols = M.cols
    code_cols = [
        [M.data[i * cols + j].code for i in range(M.rows)] for j in range(cols)
    ]
    add, mul = spec.add_code, spec.mul_code
    count = 0
    for vcodes in itertools.product(range(q), repeat=M.rows):
        if not any(vcodes):
            continue
        ok = True
        for col in code_cols:
            acc = 0
            for vi, mij in zip(vcodes, col):
                if vi:
                    acc = add(acc, mul(vi, mij))
            if acc:
                ok = False
                break
        if ok:
            count += 1
    return count


def sumlast_sides(
    field: FieldSpec, m: int, n: int, a: SeqTuple, *, literal: bool = False
) -> tuple[int, int]:
    """Both sides of the summed annihilator identity for prefix a.

    Left side: over all x with the given k-prefix, the number of nonzero
    left-annihilators of H_{m,n}(x) minus Q times the number for
    H_{m-1,n+1}(x).  Right side: (Q-1) Q^{2m-k}.  Annihilators are counted
    through rank-nullity by default; literal=True enumerates row vectors
    instead.
    """
    if m < 0 or n < 0:
        raise ValueError(f"need m, n >= 0, got m={m}, n={n}")
    if a.field != field:
        raise ValueError("prefix lives in a different field")
    k = len(a)
    if k > m or k > n + 1:
        raise ValueError(f"need k <= m and k <= n+1, got k={k}, m={m}, n={n}")
    q = field.order
    total_full = 0
    total_shaved = 0
    free = m + n + 1 - k
    head = a.entries
    for tail in itertools.product(field.elements(), repeat=free):
        x = SeqTuple(field, head + tail)
        full = materialize_hankel(x, HankelShape(m, n))
        shaved = materialize_hankel(x, HankelShape(m - 1, n + 1))
        if literal:
            total_full += count_annihilators_literal(full)
            total_shaved += count_annihilators_literal(shaved)
        else:
            total_full += kernel_count_nonzero(full)
            total_shaved += kernel_count_nonzero(shaved)
    lhs = total_full - q * total_shaved
    rhs = (q - 1) * q ** (2 * m - k)
    return lhs, rhs
