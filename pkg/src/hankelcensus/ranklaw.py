"""Rank laws relating adjacent Hankel shapes, and the fast rank-bound test.

The adjacent pair for degrees (rdeg, cdeg) is the "tall" matrix
H_{rdeg,cdeg-1} next to the "wide" matrix H_{rdeg-1,cdeg}.  Their ranks
obey a chain of implications which, iterated, reduce the rank-bound test
rank(H_{m,n}(x)) <= r to the same test on the much smaller H_{r,s}(x)
with s = m+n-r.  That reduction is the only speedup this package uses.

The kernel-counting identity relates the rank-bound truth value to sizes
of left kernels of the two widest shapes; both sides are exposed so the
identity can be checked instance by instance.
"""

from __future__ import annotations

from dataclasses import dataclass

from hankelcensus.hankel import (
    DenseMatrix,
    HankelShape,
    SeqTuple,
    _hankel_code_rows,
    _rank_codes,
    left_kernel_dim,
    materialize_hankel,
    rank_gauss,
)

__all__ = [
    "RankPair",
    "rank_pair",
    "rank_le_fast",
    "rank_via_reduction",
    "elkies_identity_sides",
    "kernel_count_nonzero",
]


@dataclass(frozen=True)
class RankPair:
    """Ranks of the tall (rdeg, cdeg-1) and wide (rdeg-1, cdeg) views."""

    rank_tall: int
    rank_wide: int


def rank_pair(x: SeqTuple, rdeg: int, cdeg: int) -> RankPair:
    """Both adjacent ranks, each by direct elimination."""
    if rdeg < 0 or cdeg < 0:
        raise ValueError(f"need rdeg, cdeg >= 0, got ({rdeg},{cdeg})")
    n = len(x) - 1
    if rdeg + cdeg > n + 1:
        raise ValueError(f"need rdeg+cdeg <= {n + 1} for a tuple of length {len(x)}")
    tall = materialize_hankel(x, HankelShape(rdeg, cdeg - 1))
    wide = materialize_hankel(x, HankelShape(rdeg - 1, cdeg))
    return RankPair(rank_gauss(tall), rank_gauss(wide))


def rank_le_fast(x: SeqTuple, m: int, n: int, r: int) -> bool:
    """Whether rank(H_{m,n}(x)) <= r, tested on the reduced shape.

    Only the (r+1) x (m+n-r+1) view H_{r,s}(x), s = m+n-r, is
    materialized; its rank is <= r exactly when the full matrix's is.
    """
    if r < 0 or m < 0 or n < 0:
        raise ValueError(f"need m, n, r >= 0, got m={m}, n={n}, r={r}")
    if r > m or r > n:
        raise ValueError(f"the reduction needs r <= m and r <= n, got m={m}, n={n}, r={r}")
    if m + n > len(x) - 1:
        raise ValueError(f"need m+n <= {len(x) - 1} for this tuple")
    s = m + n - r
    rows = _hankel_code_rows(x.codes, r, s)
    return _rank_codes(x.field, rows, r) <= r


def rank_via_reduction(x: SeqTuple, m: int, n: int) -> tuple[int, HankelShape]:
    """Exact rank of H_{m,n}(x) by probing rank bounds on reduced shapes.

    Probes r = 0, 1, ... through rank_le_fast; the first bound that holds
    is the rank.  Returns the rank and the shape the deciding test ran on
    ((m, n) itself when the matrix has full rank min(m,n)+1).
    """
    lo = min(m, n)
    for r in range(lo + 1):
        if rank_le_fast(x, m, n, r):
            return r, HankelShape(r, m + n - r)
    return lo + 1, HankelShape(m, n)


def kernel_count_nonzero(M: DenseMatrix) -> int:
    """Number of nonzero row vectors v with v M = 0, i.e. Q^nullity - 1."""
    return M.field.order ** left_kernel_dim(M) - 1


def elkies_identity_sides(x: SeqTuple, m: int, n: int) -> tuple[int, int]:
    """Both sides of the kernel-counting identity for H_{m,n}(x).

    Left side: (Q-1) * [rank(H_{m,n}(x)) <= m].  Right side: the number of
    nonzero left-annihilators of H_{m,n}(x) minus Q times the number for
    H_{m-1,n+1}(x), both counted through rank-nullity.  The two sides are
    equal for every x when m <= n+1.
    """
    if m < 0 or n < 0:
        raise ValueError(f"need m, n >= 0, got m={m}, n={n}")
    if m > n + 1:
        raise ValueError(f"identity needs m <= n+1, got m={m}, n={n}")
    if m + n > len(x) - 1:
        raise ValueError(f"need m+n <= {len(x) - 1} for this tuple")
    q = x.field.order
    full = materialize_hankel(x, HankelShape(m, n))
    shaved = materialize_hankel(x, HankelShape(m - 1, n + 1))
    lhs = (q - 1) * (1 if rank_gauss(full) <= m else 0)
    rhs = kernel_count_nonzero(full) - q * kernel_count_nonzero(shaved)
    return lhs, rhs
