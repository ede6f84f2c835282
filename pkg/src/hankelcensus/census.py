"""Counting laws for Hankel ranks: closed forms, brute force, sampling.

The closed forms count (m+n+1)-tuples over GF(Q) whose (m, n) Hankel view
satisfies a rank condition, optionally with the first k entries pinned to
a prefix a:

  * rank <= r with k <= r <= m and r <= n (the "standard" range), or
    with k <= r = m = n+1 (the "full-width" range, where the column count
    already caps the rank): Q^(2r-k) tuples;
  * rank exactly r for m <= n: a four-branch piecewise formula;
  * det = 0 for the square (n, n) view with k <= n: Q^(2n-k);
  * singular Jacobi-Trudi matrices with u, v >= 1: Q^(u+v-2).

Every formula is paired with an exhaustive counter that enumerates all
Q^(m+n+1-k) completions, and with a seeded Monte Carlo estimator for
fields too large to sweep.  `verify` drives formula-vs-oracle comparisons
and the property suites over a parameter grid and returns one report per
checked family.

Enumeration partitions the suffix space by the value of the first free
entry; slices may run on a thread pool and are recombined in slice order,
so results never depend on the level of parallelism.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from math import sqrt
from typing import Iterable, Iterator, NamedTuple, Sequence

from hankelcensus.gf import FieldSpec
from hankelcensus.hankel import (
    RowVector,
    SeqTuple,
    _hankel_code_rows,
    _rank_codes,
    _rank_kernel,
    det,
    jt_matrix,
    jt_to_hankel,
)
from hankelcensus.ranklaw import elkies_identity_sides, rank_le_fast
from hankelcensus.witness import (
    NiceContext,
    R_inv,
    R_map,
    _annihilates_codes,
    alpha,
    beta,
    is_strongly_nice,
    is_weakly_nice,
    solve_tail,
    sumlast_sides,
)

__all__ = [
    "CapExceededError",
    "CountQuery",
    "RankDistribution",
    "CensusReport",
    "MonteCarloEstimate",
    "DEFAULT_CAP",
    "SUITES",
    "count_rank_le_formula",
    "count_rank_eq_formula",
    "count_det_zero_formula",
    "count_jt_singular_formula",
    "rank_le_probability",
    "brute_count_rank_le",
    "brute_census",
    "brute_count_jt_singular",
    "monte_carlo_rank_le",
    "make_report",
    "all_passed",
    "verify",
    "suite_lemmas",
    "suite_identities",
    "suite_witnesses",
    "suite_theorems",
    "suite_jt",
]

DEFAULT_CAP = 10**7

SUITES = ("lemmas", "identities", "witnesses", "theorems", "jt")


class CapExceededError(RuntimeError):
    """An exhaustive run would exceed the enumeration cap."""

    def __init__(self, required: int, cap: int):
        super().__init__(f"enumeration needs {required} rank tests, cap is {cap}")
        self.required = required
        self.cap = cap


@dataclass(frozen=True)
class CountQuery:
    """Parameters of a prefix-fixed rank-bound count.

    The regime records which closed-form range the parameters sit in:
    "standard" (k <= r <= m, r <= n), "full-width" (k <= r = m = n+1,
    the column count already caps the rank), or "none" (no closed form
    is claimed; brute force still works).
    """

    field: FieldSpec
    m: int
    n: int
    r: int
    prefix: SeqTuple | None = None
    regime: str = dataclass_field(init=False)

    def __post_init__(self):
        if self.prefix is None:
            object.__setattr__(self, "prefix", SeqTuple(self.field, ()))
        if self.m < 0 or self.n < 0 or self.r < 0:
            raise ValueError(f"need m, n, r >= 0, got m={self.m}, n={self.n}, r={self.r}")
        if self.prefix.field != self.field:
            raise ValueError("prefix lives in a different field")
        k = len(self.prefix)
        if k > self.m + self.n + 1:
            raise ValueError(f"prefix length {k} exceeds tuple length {self.m + self.n + 1}")
        if k <= self.r <= self.m and self.r <= self.n:
            regime = "standard"
        elif k <= self.r and self.r == self.m == self.n + 1:
            regime = "full-width"
        else:
            regime = "none"
        object.__setattr__(self, "regime", regime)

    @property
    def k(self) -> int:
        return len(self.prefix)

    @property
    def tuple_len(self) -> int:
        return self.m + self.n + 1


@dataclass(frozen=True)
class RankDistribution:
    """Exact tally of tuple counts by rank; covers ranks 0..min(m,n)+1."""

    counts: dict[int, int]
    total: int

    def __post_init__(self):
        if sum(self.counts.values()) != self.total:
            raise ValueError("counts do not sum to total")

    def count_le(self, r: int) -> int:
        return sum(c for rho, c in self.counts.items() if rho <= r)

    def sorted_items(self) -> list[tuple[int, int]]:
        return sorted(self.counts.items())


class MonteCarloEstimate(NamedTuple):
    estimate: Fraction
    stderr: float
    successes: int
    trials: int


@dataclass(frozen=True)
class CensusReport:
    """Self-describing record of one verification or count run."""

    check: str
    field: FieldSpec
    params: dict
    mode: str  # formula | brute | monte-carlo
    formula_value: object
    observed_value: object
    verdict: str | None  # match | mismatch | estimate-within-tolerance | skipped
    elapsed_s: float


def make_report(
    check: str,
    field: FieldSpec,
    params: dict,
    *,
    formula,
    observed,
    mode: str = "brute",
    elapsed_s: float = 0.0,
) -> CensusReport:
    """Build a report, deciding the verdict from the two values."""
    if mode == "monte-carlo":
        est: MonteCarloEstimate = observed
        diff = abs(est.estimate - formula)
        within = diff == 0 or float(diff) <= 4.0 * est.stderr
        verdict = "estimate-within-tolerance" if within else "mismatch"
    elif formula is None or observed is None:
        verdict = None
    else:
        verdict = "match" if formula == observed else "mismatch"
    return CensusReport(check, field, params, mode, formula, observed, verdict, elapsed_s)


def all_passed(reports: Iterable[CensusReport]) -> bool:
    return all(r.verdict != "mismatch" for r in reports)


# ----------------------------------------------------------------------
# Closed-form counts
# ----------------------------------------------------------------------


def count_rank_le_formula(query: CountQuery) -> int:
    """Number of prefix-fixed tuples with rank <= r: Q^(2r-k)."""
    if query.regime == "none":
        raise ValueError(
            "no closed form outside the ranges k <= r <= m, r <= n and "
            f"k <= r = m = n+1 (got m={query.m}, n={query.n}, r={query.r}, k={query.k})"
        )
    return query.field.order ** (2 * query.r - query.k)


def count_rank_eq_formula(field: FieldSpec, m: int, n: int, r: int) -> int:
    """Number of tuples with rank exactly r, for m <= n (piecewise)."""
    if m < 0 or n < 0 or r < 0:
        raise ValueError(f"need m, n, r >= 0, got m={m}, n={n}, r={r}")
    if m > n:
        raise ValueError(
            f"formula needs m <= n (got m={m}, n={n}); swap the degrees first, "
            "rank is transpose-invariant"
        )
    q = field.order
    if r == 0:
        return 1
    if r <= m:
        return q ** (2 * r - 2) * (q**2 - 1)
    if r == m + 1:
        return q ** (2 * r - 2) * (q ** (n - m + 1) - 1)
    return 0


def count_det_zero_formula(field: FieldSpec, n: int, k: int) -> int:
    """Number of prefix-fixed (2n+1)-tuples with singular (n, n) view."""
    if n < 0 or k < 0:
        raise ValueError(f"need n, k >= 0, got n={n}, k={k}")
    if k > n:
        raise ValueError(f"formula needs k <= n, got k={k}, n={n}")
    return field.order ** (2 * n - k)


def count_jt_singular_formula(field: FieldSpec, u: int, v: int) -> int:
    """Number of (u+v-1)-tuples with singular Jacobi-Trudi matrix."""
    if u < 1 or v < 1:
        raise ValueError(
            f"count needs u >= 1 and v >= 1 (got u={u}, v={v}): at u=0 or v=0 "
            "the matrix is unitriangular or empty, so no tuple is singular"
        )
    return field.order ** (u + v - 2)


def rank_le_probability(query: CountQuery) -> Fraction:
    """Probability that a uniform prefix-fixed tuple has rank <= r."""
    if query.regime == "none":
        raise ValueError("no closed-form probability outside the formula ranges")
    q = query.field.order
    exponent = 2 * query.r - query.tuple_len
    if exponent >= 0:
        return Fraction(q**exponent)
    return Fraction(1, q**-exponent)


# ----------------------------------------------------------------------
# Exhaustive enumeration engine
# ----------------------------------------------------------------------


def _map_blocks(fn, blocks, jobs: int):
    if jobs > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=min(jobs, len(blocks))) as ex:
            return list(ex.map(fn, blocks))
    return [fn(b) for b in blocks]


def _check_cap(q: int, free: int, cap: int) -> None:
    work = q**free
    if work > cap:
        raise CapExceededError(work, cap)


def _test_shape(m: int, n: int, r: int) -> tuple[int, int]:
    # rank <= r is decided on the reduced (r, m+n-r) view whenever the
    # reduction hypotheses r <= m, r <= n hold; otherwise on (m, n) itself
    if r <= m and r <= n:
        return r, m + n - r
    return m, n


def _count_rank_le_codes(
    spec: FieldSpec,
    m: int,
    n: int,
    r: int,
    prefix_codes: Sequence[int],
    cap: int,
    jobs: int,
) -> int:
    q = spec.order
    k = len(prefix_codes)
    free = m + n + 1 - k
    _check_cap(q, free, cap)
    rdeg, cdeg = _test_shape(m, n, r)
    nrows, ncols = rdeg + 1, cdeg + 1
    kern = _rank_kernel(spec)
    head = list(prefix_codes)

    def count_block(first: tuple[int, ...]) -> int:
        x = head + list(first) + [0] * (free - len(first))
        if len(first) == free:
            rows = [x[i : i + ncols] for i in range(nrows)]
            return 1 if kern(rows, r) <= r else 0
        base = k + len(first)
        cnt = 0
        for rest in itertools.product(range(q), repeat=free - len(first)):
            x[base:] = rest
            rows = [x[i : i + ncols] for i in range(nrows)]
            if kern(rows, r) <= r:
                cnt += 1
        return cnt

    blocks = [()] if free == 0 else [(c,) for c in range(q)]
    return sum(_map_blocks(count_block, blocks, jobs))


def brute_count_rank_le(query: CountQuery, cap: int = DEFAULT_CAP, *, jobs: int = 1) -> int:
    """Exact count of prefix completions with rank(H_{m,n}(x)) <= r.

    Works in any regime; the closed form only exists in the "standard"
    and "full-width" regimes, but the enumeration itself is unconditional.
    """
    return _count_rank_le_codes(
        query.field, query.m, query.n, query.r, query.prefix.codes, cap, jobs
    )


def brute_census(
    field: FieldSpec,
    m: int,
    n: int,
    prefix: SeqTuple | None = None,
    cap: int = DEFAULT_CAP,
    *,
    jobs: int = 1,
) -> RankDistribution:
    """Full rank histogram over all prefix completions."""
    if m < 0 or n < 0:
        raise ValueError(f"need m, n >= 0, got m={m}, n={n}")
    if prefix is None:
        prefix = SeqTuple(field, ())
    if prefix.field != field:
        raise ValueError("prefix lives in a different field")
    q = field.order
    k = len(prefix)
    if k > m + n + 1:
        raise ValueError(f"prefix length {k} exceeds tuple length {m + n + 1}")
    free = m + n + 1 - k
    _check_cap(q, free, cap)
    max_rank = min(m, n) + 1
    nrows, ncols = m + 1, n + 1
    kern = _rank_kernel(field)
    head = list(prefix.codes)

    def census_block(first: tuple[int, ...]) -> list[int]:
        tallies = [0] * (max_rank + 1)
        x = head + list(first) + [0] * (free - len(first))
        if len(first) == free:
            rows = [x[i : i + ncols] for i in range(nrows)]
            tallies[kern(rows, max_rank)] += 1
            return tallies
        base = k + len(first)
        for rest in itertools.product(range(q), repeat=free - len(first)):
            x[base:] = rest
            rows = [x[i : i + ncols] for i in range(nrows)]
            tallies[kern(rows, max_rank)] += 1
        return tallies

    blocks = [()] if free == 0 else [(c,) for c in range(q)]
    parts = _map_blocks(census_block, blocks, jobs)
    tallies = [sum(col) for col in zip(*parts)]
    counts = {rho: tallies[rho] for rho in range(max_rank + 1)}
    return RankDistribution(counts, q**free)


def brute_count_jt_singular(
    field: FieldSpec,
    u: int,
    v: int,
    cap: int = DEFAULT_CAP,
    *,
    path: str = "flip",
) -> int:
    """Count tuples with singular Jacobi-Trudi matrix, exhaustively.

    path="flip" (default) runs each tuple through the upside-down Hankel
    reduction and tests det = 0 as a rank bound on the (v-1, v-1) view;
    path="direct" evaluates the determinant of the Jacobi-Trudi matrix
    itself.  The two routes must agree instance-wise.
    """
    if u < 1 or v < 1:
        raise ValueError(f"need u >= 1 and v >= 1, got u={u}, v={v}")
    if path not in ("flip", "direct"):
        raise ValueError(f"unknown path {path!r}")
    q = field.order
    _check_cap(q, u + v - 1, cap)
    count = 0
    zero = field.zero
    for y in _iter_tuples(field, u + v - 1):
        if path == "flip":
            x = jt_to_hankel(y, u, v)
            rows = _hankel_code_rows(x.codes, v - 1, v - 1)
            if _rank_codes(field, rows, v - 1) <= v - 1:
                count += 1
        else:
            if det(jt_matrix(y, u, v)) == zero:
                count += 1
    return count


def _iter_tuples(
    field: FieldSpec, length: int, prefix: SeqTuple | None = None
) -> Iterator[SeqTuple]:
    head = () if prefix is None else prefix.entries
    free = length - len(head)
    if free == 0:  # do not touch the element table of a huge field
        yield SeqTuple(field, head)
        return
    for tail in itertools.product(field.elements(), repeat=free):
        yield SeqTuple(field, head + tail)


# ----------------------------------------------------------------------
# Seeded Monte Carlo
# ----------------------------------------------------------------------

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix64(z: int) -> int:
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def _draw_codes(spec: FieldSpec, key: int, count: int) -> list[int]:
    """Uniform element codes by rejection sampling on ceil(log2 Q) bits."""
    q = spec.order
    bits = (q - 1).bit_length()
    nwords = (bits + 63) // 64
    mask = (1 << bits) - 1
    out: list[int] = []
    j = 0
    while len(out) < count:
        w = 0
        for _ in range(nwords):
            j += 1
            w = (w << 64) | _mix64((key + j * _GOLDEN) & _MASK64)
        c = w & mask
        if c < q:
            out.append(c)
    return out


def monte_carlo_rank_le(
    query: CountQuery, trials: int, rng_seed: int
) -> MonteCarloEstimate:
    """Estimate the probability that a random completion has rank <= r.

    Suffixes come from a counter-based generator keyed off (seed, trial),
    so the estimate is reproducible across platforms and independent of
    any parallel schedule.
    """
    if trials < 1:
        raise ValueError(f"need trials >= 1, got {trials}")
    spec = query.field
    m, n, r = query.m, query.n, query.r
    free = query.tuple_len - query.k
    rdeg, cdeg = _test_shape(m, n, r)
    nrows, ncols = rdeg + 1, cdeg + 1
    kern = _rank_kernel(spec)
    head = list(query.prefix.codes)
    base_key = _mix64(rng_seed & _MASK64)
    successes = 0
    for t in range(trials):
        trial_key = _mix64((base_key + (t + 1) * _GOLDEN) & _MASK64)
        x = head + _draw_codes(spec, trial_key, free)
        rows = [x[i : i + ncols] for i in range(nrows)]
        if kern(rows, r) <= r:
            successes += 1
    p_hat = successes / trials
    stderr = sqrt(p_hat * (1.0 - p_hat) / trials)
    return MonteCarloEstimate(Fraction(successes, trials), stderr, successes, trials)


# ----------------------------------------------------------------------
# Verification suites
# ----------------------------------------------------------------------


def _timed(check, field, params, formula, observed, mode, started) -> CensusReport:
    return make_report(
        check,
        field,
        params,
        formula=formula,
        observed=observed,
        mode=mode,
        elapsed_s=time.perf_counter() - started,
    )


def _len_bound(q: int, ceiling: int = 1024, lo: int = 1, hi: int = 4) -> int:
    n = lo
    while n < hi and q ** (n + 2) <= ceiling:
        n += 1
    return n


def _lemma_bound(q: int) -> int:
    if q == 2:
        return 6
    if q == 3:
        return 4
    return _len_bound(q)


def suite_lemmas(
    field: FieldSpec,
    max_n: int | None = None,
    *,
    cap: int = DEFAULT_CAP,
    jobs: int = 1,
) -> list[CensusReport]:
    """Exhaustive sweep of the adjacent-rank chain and the shape reduction.

    For every tuple x of length max_n+1 and every legal shape, checks the
    five adjacent-rank implications and that the fast rank-bound test
    agrees with the direct one.  Each check reports its violation count
    against an expected 0.
    """
    started = time.perf_counter()
    q = field.order
    bound = max_n if max_n is not None else _lemma_bound(q)
    _check_cap(q, bound + 1, cap)
    names = (
        "adjacent-rank/tall-le-wide",
        "adjacent-rank/wide-le-tall",
        "adjacent-rank/equal",
        "adjacent-rank/saturated",
        "adjacent-rank/bound-equivalence",
        "rank-bound-reduction",
    )
    violations = dict.fromkeys(names, 0)
    instances = dict.fromkeys(names, 0)
    firsts: dict[str, str] = {}
    kern = _rank_kernel(field)
    shapes = [
        (p_, q_)
        for p_ in range(bound + 2)
        for q_ in range(bound + 2 - p_)
    ]
    reductions = [
        (m, n, r)
        for m in range(bound + 1)
        for n in range(bound + 1 - m)
        for r in range(min(m, n) + 1)
    ]
    for codes in itertools.product(range(q), repeat=bound + 1):
        ranks: dict[tuple[int, int], int] = {}

        def rank_of(rd: int, cd: int) -> int:
            if rd < 0 or cd < 0:
                return 0
            got = ranks.get((rd, cd))
            if got is None:
                got = kern(_hankel_code_rows(codes, rd, cd), min(rd, cd) + 1)
                ranks[(rd, cd)] = got
            return got

        def flag(name: str, where: str) -> None:
            violations[name] += 1
            firsts.setdefault(name, where)

        for p_, q_ in shapes:
            tall = rank_of(p_, q_ - 1)
            wide = rank_of(p_ - 1, q_)
            where = f"shape=({p_},{q_}) x={codes}"
            if tall <= p_:
                instances["adjacent-rank/tall-le-wide"] += 1
                if tall > wide:
                    flag("adjacent-rank/tall-le-wide", where)
            if wide <= q_:
                instances["adjacent-rank/wide-le-tall"] += 1
                if wide > tall:
                    flag("adjacent-rank/wide-le-tall", where)
            if tall <= p_ and wide <= q_:
                instances["adjacent-rank/equal"] += 1
                if tall != wide:
                    flag("adjacent-rank/equal", where)
            if tall > p_:
                instances["adjacent-rank/saturated"] += 1
                if wide != p_:
                    flag("adjacent-rank/saturated", where)
            for r in range(min(p_, q_)):  # r+1 <= p and r+1 <= q
                instances["adjacent-rank/bound-equivalence"] += 1
                if (tall <= r) != (wide <= r):
                    flag("adjacent-rank/bound-equivalence", f"r={r} {where}")
        x = SeqTuple.from_codes(field, codes)
        for m, n, r in reductions:
            instances["rank-bound-reduction"] += 1
            direct = rank_of(m, n) <= r
            if rank_le_fast(x, m, n, r) != direct:
                flag("rank-bound-reduction", f"m={m} n={n} r={r} x={codes}")
    reports = []
    for name in names:
        params = {"max_n": bound, "instances": instances[name], "unit": "violations"}
        if name in firsts:
            params["first_violation"] = firsts[name]
        reports.append(
            _timed(name, field, params, 0, violations[name], "brute", started)
        )
    return reports


_GADGET_WORK_LIMIT = 300_000


def _gadget_bounds(q: int) -> tuple[int, int] | None:
    # (max m, max n) for the exhaustive gadget sweeps, scaled so that the
    # dominant sweep (all v of length m+1 times all q^(m+n+1) tuples)
    # stays desk-scale; None means even the smallest grid is too big
    for m, n in ((3, 2), (2, 2), (2, 1), (1, 1), (1, 0)):
        if (q - 1) * q**m * q ** (m + n + 1) <= _GADGET_WORK_LIMIT:
            return m, n
    return None


def _gadget_bounds_or_raise(q: int, max_n: int | None, cap: int) -> tuple[int, int]:
    if max_n is not None:
        return min(3, max_n), min(2, max_n)
    bounds = _gadget_bounds(q)
    if bounds is None:
        raise CapExceededError((q - 1) * q * q**2, _GADGET_WORK_LIMIT)
    return bounds


def suite_identities(
    field: FieldSpec,
    max_n: int | None = None,
    *,
    cap: int = DEFAULT_CAP,
    jobs: int = 1,
) -> list[CensusReport]:
    """Instance-wise checks of the two kernel-counting identities."""
    q = field.order
    reports = []
    started = time.perf_counter()
    if max_n is not None:
        n_hi = max_n
    else:
        n_hi = 3 if q == 2 else 2 if q == 3 else 1 if q <= 7 else 0
    bad = 0
    instances = 0
    first = None
    for n in range(n_hi + 1):
        for m in range(n + 2):
            _check_cap(q, m + n + 1, cap)
            for x in _iter_tuples(field, m + n + 1):
                lhs, rhs = elkies_identity_sides(x, m, n)
                instances += 1
                if lhs != rhs:
                    bad += 1
                    first = first or f"m={m} n={n} x={x.codes} sides=({lhs},{rhs})"
    params = {"max_n": n_hi, "instances": instances, "unit": "violations"}
    if first:
        params["first_violation"] = first
    reports.append(
        _timed("annihilator-count-identity", field, params, 0, bad, "brute", started)
    )
    started = time.perf_counter()
    m_hi, n2_hi = _gadget_bounds_or_raise(q, max_n, cap)
    bad = 0
    instances = 0
    first = None
    for m in range(1, m_hi + 1):
        for n in range(n2_hi + 1):
            _check_cap(q, m + n + 1, cap)
            for k in range(min(m, n + 1) + 1):
                for a in _iter_tuples(field, k):
                    lhs, rhs = sumlast_sides(field, m, n, a)
                    instances += 1
                    if lhs != rhs:
                        bad += 1
                        first = first or f"m={m} n={n} a={a} sides=({lhs},{rhs})"
    params = {"max_m": m_hi, "max_n": n2_hi, "instances": instances, "unit": "violations"}
    if first:
        params["first_violation"] = first
    reports.append(
        _timed("annihilator-sum-identity", field, params, 0, bad, "brute", started)
    )
    return reports


def suite_witnesses(
    field: FieldSpec,
    max_n: int | None = None,
    *,
    cap: int = DEFAULT_CAP,
    jobs: int = 1,
) -> list[CensusReport]:
    """Exhaustive checks of the constructive gadgets.

    Covers: solve_tail outputs are exactly the annihilating tuples and
    number Q^(m-k) per prefix; the trailing-zero truncation map is a
    bijection; alpha and beta are mutually inverse between F x {strongly
    nice} and {weakly nice}; the freed entry is unconstrained; and the
    weak/strong counts differ by a factor of exactly Q.
    """
    q = field.order
    m_hi, n_hi = _gadget_bounds_or_raise(q, max_n, cap)
    reports = []
    elements = field.elements()

    firsts: dict[str, str] = {}

    def flag(name: str, counts: dict, where: str) -> None:
        counts[name] += 1
        firsts.setdefault(name, where)

    # tail solver: one oracle sweep per v gives the whole solution set
    started = time.perf_counter()
    bad = dict.fromkeys(("tail-solver-annihilation", "tail-solver-count"), 0)
    inst_solve = 0
    inst_count = 0
    for m in range(m_hi + 1):
        for n in range(n_hi + 1):
            _check_cap(q, m + n + 1, cap)
            length = m + n + 1
            all_codes = list(itertools.product(range(q), repeat=length))
            for vtail in itertools.product(range(q), repeat=m):
                for vlast in range(1, q):
                    vcodes = vtail + (vlast,)
                    v = RowVector.from_codes(field, vcodes)
                    solutions = {
                        xc
                        for xc in all_codes
                        if _annihilates_codes(field, vcodes, xc, n + 1)
                    }
                    constructed = set()
                    for head in _iter_tuples(field, m):
                        out = solve_tail(v, head, n)
                        inst_solve += 1
                        if out.codes not in solutions:
                            flag(
                                "tail-solver-annihilation",
                                bad,
                                f"v={vcodes} head={head.codes}",
                            )
                        constructed.add(out.codes)
                    if constructed != solutions:
                        flag("tail-solver-annihilation", bad, f"v={vcodes} m={m} n={n}")
                    for k in range(m + 1):
                        buckets: dict[tuple[int, ...], int] = {}
                        for sol in solutions:
                            key = sol[:k]
                            buckets[key] = buckets.get(key, 0) + 1
                        inst_count += q**k
                        expected = q ** (m - k)
                        if len(buckets) != q**k or any(
                            c != expected for c in buckets.values()
                        ):
                            flag("tail-solver-count", bad, f"v={vcodes} m={m} n={n} k={k}")
    params = {"max_m": m_hi, "max_n": n_hi, "instances": inst_solve, "unit": "violations"}
    if "tail-solver-annihilation" in firsts:
        params["first_violation"] = firsts["tail-solver-annihilation"]
    reports.append(
        _timed("tail-solver-annihilation", field, params, 0, bad["tail-solver-annihilation"], "brute", started)
    )
    params = {"max_m": m_hi, "max_n": n_hi, "instances": inst_count, "unit": "violations"}
    if "tail-solver-count" in firsts:
        params["first_violation"] = firsts["tail-solver-count"]
    reports.append(
        _timed("tail-solver-count", field, params, 0, bad["tail-solver-count"], "brute", started)
    )

    # truncation map bijection
    started = time.perf_counter()
    bad_trunc = 0
    inst = 0
    first_trunc = None
    for m in range(1, m_hi + 1):
        image = set()
        for vtail in itertools.product(range(q), repeat=m):
            v = RowVector.from_codes(field, vtail + (0,))
            w = R_map(v)
            inst += 1
            if R_inv(w) != v:
                bad_trunc += 1
                first_trunc = first_trunc or f"v={vtail + (0,)}"
            if any(vtail):
                image.add(w.codes)
        nonzero_small = {c for c in itertools.product(range(q), repeat=m) if any(c)}
        if image != nonzero_small:
            bad_trunc += 1
            first_trunc = first_trunc or f"image mismatch at m={m}"
    params = {"max_m": m_hi, "instances": inst, "unit": "violations"}
    if first_trunc:
        params["first_violation"] = first_trunc
    reports.append(
        _timed("truncation-bijection", field, params, 0, bad_trunc, "brute", started)
    )

    # alpha/beta bijection, count ratio, freed-entry closure
    started = time.perf_counter()
    bad = dict.fromkeys(
        ("free-entry-bijection", "weak-strong-count-ratio", "free-entry-closure"), 0
    )
    inst_bij = 0
    inst_ratio = 0
    inst_closure = 0
    for m in range(1, m_hi + 1):
        for n in range(n_hi + 1):
            _check_cap(q, m + n + 1, cap)
            length = m + n + 1
            for vtail in itertools.product(range(q), repeat=m):
                if not any(vtail):
                    continue
                v = RowVector.from_codes(field, vtail + (0,))
                for k in range(n + 2):
                    for a in _iter_tuples(field, k):
                        ctx = NiceContext(field, m, n, v, a)
                        where = f"v={v.codes} a={a.codes} m={m} n={n}"
                        weak = []
                        strong = []
                        for x in _iter_tuples(field, length, a):
                            if is_weakly_nice(x, ctx):
                                weak.append(x)
                            if is_strongly_nice(x, ctx):
                                strong.append(x)
                        inst_ratio += 1
                        if len(weak) != q * len(strong):
                            flag("weak-strong-count-ratio", bad, where)
                        pos = ctx.j + ctx.n + 1
                        for x in weak:
                            y, s = beta(x, ctx)
                            inst_bij += 1
                            if not is_strongly_nice(s, ctx) or alpha(y, s, ctx) != x:
                                flag("free-entry-bijection", bad, f"{where} x={x.codes}")
                            for y2 in elements:
                                mutated = SeqTuple(
                                    field,
                                    x.entries[:pos] + (y2,) + x.entries[pos + 1 :],
                                )
                                inst_closure += 1
                                if not is_weakly_nice(mutated, ctx):
                                    flag("free-entry-closure", bad, f"{where} x={x.codes}")
                        for s in strong:
                            for y in elements:
                                x2 = alpha(y, s, ctx)
                                inst_bij += 1
                                if not is_weakly_nice(x2, ctx) or beta(x2, ctx) != (y, s):
                                    flag("free-entry-bijection", bad, f"{where} x={s.codes}")
    for name, count in (
        ("free-entry-bijection", inst_bij),
        ("weak-strong-count-ratio", inst_ratio),
        ("free-entry-closure", inst_closure),
    ):
        params = {"max_m": m_hi, "max_n": n_hi, "instances": count, "unit": "violations"}
        if name in firsts:
            params["first_violation"] = firsts[name]
        reports.append(_timed(name, field, params, 0, bad[name], "brute", started))
    return reports


def _prefix_family(field, m, n, r, k, formula, cap, jobs):
    """Brute counts over all k-prefixes; spots the first formula miss.

    Returns (observed, extra_params, total): observed is the common count
    when every prefix matches the formula, otherwise the first deviating
    count with its prefix recorded in extra_params.
    """
    first_bad = None
    total = 0
    for a in _iter_tuples(field, k):
        got = brute_count_rank_le(CountQuery(field, m, n, r, a), cap, jobs=jobs)
        total += got
        if got != formula and first_bad is None:
            first_bad = (str(a), got)
    if first_bad is not None:
        return first_bad[1], {"prefix": first_bad[0]}, total
    return formula, {}, total


def suite_theorems(
    field: FieldSpec,
    max_n: int | None = None,
    *,
    cap: int = DEFAULT_CAP,
    jobs: int = 1,
) -> list[CensusReport]:
    """Formula-vs-oracle sweeps for all counting laws on a small grid."""
    q = field.order
    if max_n is not None:
        bound = max_n
    else:
        bound = 3 if q <= 4 else 2 if q <= 9 else 1 if q <= 30 else 0
    reports = []
    # prefix-fixed and unrestricted rank-bound counts
    for n in range(bound + 1):
        for m in range(n + 1):
            for r in range(m + 1):
                for k in range(r + 1):
                    started = time.perf_counter()
                    formula = q ** (2 * r - k)
                    observed, extra, total = _prefix_family(
                        field, m, n, r, k, formula, cap, jobs
                    )
                    check = "unrestricted-count" if k == 0 else "prefix-fixed-count"
                    reports.append(
                        _timed(
                            check,
                            field,
                            {"m": m, "n": n, "r": r, "k": k, **extra},
                            formula,
                            observed,
                            "brute",
                            started,
                        )
                    )
                    if k > 0:
                        reports.append(
                            _timed(
                                "prefix-count-consistency",
                                field,
                                {"m": m, "n": n, "r": r, "k": k},
                                q ** (2 * r),
                                total,
                                "brute",
                                started,
                            )
                        )
    # full-width range r = m = n+1
    for m in range(1, bound + 1):
        n = m - 1
        for k in range(m + 1):
            started = time.perf_counter()
            formula = q ** (m + n + 1 - k)
            observed, extra, _ = _prefix_family(field, m, n, m, k, formula, cap, jobs)
            reports.append(
                _timed(
                    "full-width-count",
                    field,
                    {"m": m, "n": n, "r": m, "k": k, **extra},
                    formula,
                    observed,
                    "brute",
                    started,
                )
            )
    # rank-exact census against the piecewise formula, branch by branch
    census_bound = bound if q <= 3 else min(bound, 2 if q <= 9 else 1)
    for n in range(census_bound + 1):
        for m in range(n + 1):
            started = time.perf_counter()
            dist = brute_census(field, m, n, None, cap, jobs=jobs)
            for r in range(m + 3):
                reports.append(
                    _timed(
                        "rank-exact-census",
                        field,
                        {"m": m, "n": n, "r": r},
                        count_rank_eq_formula(field, m, n, r),
                        dist.counts.get(r, 0),
                        "brute",
                        started,
                    )
                )
            reports.append(
                _timed(
                    "census-total",
                    field,
                    {"m": m, "n": n},
                    q ** (m + n + 1),
                    dist.total,
                    "brute",
                    started,
                )
            )
    # determinant-vanishing counts
    det_bound = min(2 if q <= 3 else 1, bound)
    for n in range(det_bound + 1):
        for k in range(n + 1):
            started = time.perf_counter()
            formula = count_det_zero_formula(field, n, k)
            observed, extra, _ = _prefix_family(field, n, n, n, k, formula, cap, jobs)
            reports.append(
                _timed(
                    "det-zero-count",
                    field,
                    {"n": n, "k": k, **extra},
                    formula,
                    observed,
                    "brute",
                    started,
                )
            )
    return reports


def suite_jt(
    field: FieldSpec,
    max_n: int | None = None,
    *,
    cap: int = DEFAULT_CAP,
    jobs: int = 1,
) -> list[CensusReport]:
    """Jacobi-Trudi singular counts via both the flip and the determinant."""
    q = field.order
    if max_n is not None:
        weight = max_n
    else:
        weight = 6 if q <= 3 else 4 if q <= 9 else 2
    reports = []
    for total in range(1, weight + 1):
        for u in range(1, total + 1):
            v = total + 1 - u
            started = time.perf_counter()
            formula = count_jt_singular_formula(field, u, v)
            flip = brute_count_jt_singular(field, u, v, cap, path="flip")
            direct = brute_count_jt_singular(field, u, v, cap, path="direct")
            params = {"u": u, "v": v}
            reports.append(
                _timed("jt-singular-count-flip", field, params, formula, flip, "brute", started)
            )
            reports.append(
                _timed("jt-singular-count-direct", field, params, formula, direct, "brute", started)
            )
            reports.append(
                _timed("jt-path-agreement", field, params, flip, direct, "brute", started)
            )
    return reports


_SUITE_FUNCS = {
    "lemmas": suite_lemmas,
    "identities": suite_identities,
    "witnesses": suite_witnesses,
    "theorems": suite_theorems,
    "jt": suite_jt,
}


def verify(
    suite: str,
    fields: Sequence[FieldSpec],
    *,
    max_n: int | None = None,
    cap: int = DEFAULT_CAP,
    jobs: int = 1,
) -> list[CensusReport]:
    """Run one suite (or "all") over the given fields.

    Returns one report per checked instance family; resource-capped
    entries come back with verdict "skipped" instead of raising.
    """
    if suite == "all":
        names = SUITES
    elif suite in _SUITE_FUNCS:
        names = (suite,)
    else:
        raise ValueError(f"unknown suite {suite!r}; pick one of {('all',) + SUITES}")
    reports: list[CensusReport] = []
    for field in fields:
        for name in names:
            fn = _SUITE_FUNCS[name]
            try:
                reports.extend(fn(field, max_n, cap=cap, jobs=jobs))
            except CapExceededError as exc:
                reports.append(
                    CensusReport(
                        name,
                        field,
                        {"reason": str(exc)},
                        "brute",
                        None,
                        None,
                        "skipped",
                        0.0,
                    )
                )
    return reports
