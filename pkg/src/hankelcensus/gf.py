"""Exact arithmetic in finite fields GF(p^d).

Elements are canonical coefficient vectors: the element
c0 + c1*t + ... + c_{d-1}*t^{d-1} of GF(p)[t]/(modulus) is stored as the
tuple (c0, c1, ..., c_{d-1}) with every ci in [0, p).  Each element also
has an integer *code* in [0, Q), Q = p^d, obtained by reading the
coefficients as little-endian base-p digits; code order is the canonical
enumeration order (0 first, 1 second, then t, 1+t, ... for GF(4)).

Prime fields work for any prime p < 2^31.  Extension fields ship with
fixed Conway moduli for Q in {4, 8, 9, 16, 25, 27, 32, 49, 64}; any other
extension field needs an explicit irreducible modulus.

Field spec text format: "Q" for a built-in field (e.g. "9"), or
"p^d:c0,c1,...,cd" with little-endian modulus coefficients.  Elements
render as plain integers when d = 1 and as "c0+c1*t+..." otherwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Sequence

__all__ = [
    "FieldSpec",
    "FieldElement",
    "ff_add",
    "ff_sub",
    "ff_neg",
    "ff_mul",
    "ff_inv",
    "ff_elements",
    "parse_field",
    "parse_element",
    "format_element",
    "BUILTIN_ORDERS",
]

_MAX_PRIME = 2**31

# Largest field order for which full Q x Q operation tables are built.
_TABLE_LIMIT = 1024

# Conway polynomials (little-endian, monic) for the built-in extension orders.
_BUILTIN_MODULI: dict[int, tuple[int, tuple[int, ...]]] = {
    4: (2, (1, 1, 1)),
    8: (2, (1, 1, 0, 1)),
    9: (3, (2, 2, 1)),
    16: (2, (1, 1, 0, 0, 1)),
    25: (5, (2, 4, 1)),
    27: (3, (1, 2, 0, 1)),
    32: (2, (1, 0, 1, 0, 0, 1)),
    49: (7, (3, 6, 1)),
    64: (2, (1, 1, 0, 1, 1, 0, 1)),
}

BUILTIN_ORDERS = tuple(sorted(_BUILTIN_MODULI))


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


# ----------------------------------------------------------------------
# Polynomial helpers over GF(p).  Polynomials are little-endian integer
# lists with no trailing zeros ([] is the zero polynomial).
# ----------------------------------------------------------------------


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    # m need not be monic; its leading coefficient is inverted once.
    r = [x % p for x in a]
    _poly_trim(r)
    dm = len(m) - 1
    lead_inv = pow(m[-1], p - 2, p)
    while len(r) - 1 >= dm and r:
        f = r[-1] * lead_inv % p
        shift = len(r) - 1 - dm
        for i, mi in enumerate(m):
            r[shift + i] = (r[shift + i] - f * mi) % p
        _poly_trim(r)
    return r


def _poly_powmod(base: Sequence[int], e: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    b = _poly_mod(base, m, p)
    while e > 0:
        if e & 1:
            result = _poly_mod(_poly_mul(result, b, p), m, p)
        b = _poly_mod(_poly_mul(b, b, p), m, p)
        e >>= 1
    return result


def _poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _poly_trim([x % p for x in a])
    b = _poly_trim([x % p for x in b])
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Irreducibility of a monic polynomial over GF(p).

    Small search spaces are checked by trial division over all monic
    divisors of degree <= d/2; larger ones use the gcd conditions with
    x^(p^i) - x.
    """
    d = len(modulus) - 1
    if d == 1:
        return True
    n_candidates = sum(p**e for e in range(1, d // 2 + 1))
    if n_candidates <= 4096:
        for e in range(1, d // 2 + 1):
            for low in itertools.product(range(p), repeat=e):
                divisor = list(low) + [1]
                if not _poly_mod(modulus, divisor, p):
                    return False
        return True
    x = [0, 1]
    t = x
    for _ in range(d):
        t = _poly_powmod(t, p, modulus, p)
    diff = _poly_trim([(a - b) % p for a, b in itertools.zip_longest(t, x, fillvalue=0)])
    if diff:
        return False
    for e in _prime_factors(d):
        t = x
        for _ in range(d // e):
            t = _poly_powmod(t, p, modulus, p)
        diff = _poly_trim([(a - b) % p for a, b in itertools.zip_longest(t, x, fillvalue=0)])
        g = _poly_gcd(modulus, diff, p)
        if len(g) - 1 > 0:
            return False
    return True


class _OpTables(NamedTuple):
    add: list[list[int]]
    sub: list[list[int]]
    mul: list[list[int]]
    inv: list[int]


class FieldSpec:
    """A concrete finite field GF(p^d) with canonical element encoding.

    Immutable after construction; all arithmetic helpers are pure, so a
    spec can be shared freely across threads.
    """

    __slots__ = ("p", "d", "modulus", "order", "_tables", "_elements")

    def __init__(self, p: int, d: int = 1, modulus: Sequence[int] | None = None):
        if not isinstance(p, int) or not _is_prime(p):
            raise ValueError(f"characteristic {p!r} is not prime")
        if p >= _MAX_PRIME:
            raise ValueError(f"characteristic {p} exceeds 2^31")
        if not isinstance(d, int) or d < 1:
            raise ValueError(f"extension degree must be a positive integer, got {d!r}")
        if d == 1:
            modulus = (0, 1)  # identity modulus; ignored for prime fields
        else:
            if modulus is None:
                key = p**d
                if key in _BUILTIN_MODULI and _BUILTIN_MODULI[key][0] == p:
                    modulus = _BUILTIN_MODULI[key][1]
                else:
                    raise ValueError(
                        f"no built-in modulus for GF({p}^{d}); supply an irreducible one"
                    )
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != d + 1:
                raise ValueError(
                    f"modulus must have degree {d} ({d + 1} coefficients), got {len(modulus)}"
                )
            if modulus[-1] != 1:
                raise ValueError("modulus must be monic")
            if not _is_irreducible(modulus, p):
                raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "modulus", tuple(modulus))
        object.__setattr__(self, "order", p**d)
        object.__setattr__(self, "_tables", None)
        object.__setattr__(self, "_elements", None)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("FieldSpec is immutable")

    @classmethod
    def from_order(cls, q: int) -> "FieldSpec":
        """Build the canonical field of order q (prime, or a built-in extension)."""
        if not isinstance(q, int) or q < 2:
            raise ValueError(f"field order must be an integer >= 2, got {q!r}")
        if _is_prime(q):
            return cls(q)
        if q in _BUILTIN_MODULI:
            p, modulus = _BUILTIN_MODULI[q]
            d = len(modulus) - 1
            return cls(p, d, modulus)
        p = _smallest_prime_factor(q)
        rest, d = q, 0
        while rest % p == 0:
            rest //= p
            d += 1
        if rest == 1:
            raise ValueError(
                f"no built-in modulus for GF({p}^{d}) = GF({q}); "
                f"supply one as '{p}^{d}:c0,...,c{d}'"
            )
        raise ValueError(f"{q} is not a prime power")

    # -- identity ------------------------------------------------------

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return self.p == other.p and self.d == other.d and self.modulus == other.modulus

    def __hash__(self):
        return hash((self.p, self.d, self.modulus))

    def __repr__(self):
        if self.d == 1:
            return f"FieldSpec({self.p})"
        return f"FieldSpec({self.p}, {self.d}, {self.modulus})"

    def __str__(self):
        return f"GF({self.order})"

    def spec_string(self) -> str:
        """Round-trippable text form: 'p' or 'p^d:c0,...,cd'."""
        if self.d == 1:
            return str(self.p)
        return f"{self.p}^{self.d}:" + ",".join(str(c) for c in self.modulus)

    # -- element construction ------------------------------------------

    def element(self, value: "int | Sequence[int] | FieldElement") -> "FieldElement":
        """Element from an integer code (residue when d = 1) or coefficients."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, int):
            if self.d == 1:
                return FieldElement(self, (value % self.p,))
            if not 0 <= value < self.order:
                raise ValueError(f"code {value} out of range for {self}")
            return FieldElement(self, self.decode(value))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.d:
            raise ValueError(f"too many coefficients for {self}")
        coeffs += [0] * (self.d - len(coeffs))
        return FieldElement(self, tuple(coeffs))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.d)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, (1,) + (0,) * (self.d - 1))

    def elements(self) -> "list[FieldElement]":
        """All Q elements in canonical (little-endian odometer) order."""
        cached = self._elements
        if cached is None:
            cached = [FieldElement(self, self.decode(i)) for i in range(self.order)]
            object.__setattr__(self, "_elements", cached)
        return cached

    # -- integer-code arithmetic (hot-path friendly) --------------------

    def encode(self, coeffs: Sequence[int]) -> int:
        code = 0
        for c in reversed(coeffs):
            code = code * self.p + c
        return code

    def decode(self, code: int) -> tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.d):
            code, c = divmod(code, p)
            out.append(c)
        return tuple(out)

    @property
    def tables(self) -> _OpTables | None:
        """Full Q x Q operation tables, or None when the field is too large."""
        if self.order > _TABLE_LIMIT:
            return None
        tab = self._tables
        if tab is None:
            tab = self._build_tables()
            object.__setattr__(self, "_tables", tab)
        return tab

    def _build_tables(self) -> _OpTables:
        q, p = self.order, self.p
        coeffs = [self.decode(i) for i in range(q)]
        add = [[0] * q for _ in range(q)]
        sub = [[0] * q for _ in range(q)]
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            ca = coeffs[a]
            for b in range(q):
                cb = coeffs[b]
                add[a][b] = self.encode([(x + y) % p for x, y in zip(ca, cb)])
                sub[a][b] = self.encode([(x - y) % p for x, y in zip(ca, cb)])
                mul[a][b] = self._mul_code_raw(a, b)
        inv = [0] * q
        for a in range(1, q):
            inv[a] = self._inv_code_raw(a)
        return _OpTables(add, sub, mul, inv)

    def _mul_code_raw(self, a: int, b: int) -> int:
        prod = _poly_mul(self.decode(a), self.decode(b), self.p)
        red = _poly_mod(prod, self.modulus, self.p)
        red += [0] * (self.d - len(red))
        return self.encode(red)

    def _inv_code_raw(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"inversion of zero in {self}")
        out, e = 1, self.order - 2
        base = a
        while e > 0:
            if e & 1:
                out = self._mul_code_raw(out, base)
            base = self._mul_code_raw(base, base)
            e >>= 1
        return out

    def add_code(self, a: int, b: int) -> int:
        if self.d == 1:
            return (a + b) % self.p
        tab = self.tables
        if tab is not None:
            return tab.add[a][b]
        p = self.p
        return self.encode([(x + y) % p for x, y in zip(self.decode(a), self.decode(b))])

    def sub_code(self, a: int, b: int) -> int:
        if self.d == 1:
            return (a - b) % self.p
        tab = self.tables
        if tab is not None:
            return tab.sub[a][b]
        p = self.p
        return self.encode([(x - y) % p for x, y in zip(self.decode(a), self.decode(b))])

    def neg_code(self, a: int) -> int:
        if self.d == 1:
            return -a % self.p
        return self.sub_code(0, a)

    def mul_code(self, a: int, b: int) -> int:
        if self.d == 1:
            return a * b % self.p
        tab = self.tables
        if tab is not None:
            return tab.mul[a][b]
        return self._mul_code_raw(a, b)

    def inv_code(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"inversion of zero in {self}")
        if self.d == 1:
            return pow(a, self.p - 2, self.p)
        tab = self.tables
        if tab is not None:
            return tab.inv[a]
        return self._inv_code_raw(a)


def _smallest_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


@dataclass(frozen=True)
class FieldElement:
    """An element of a FieldSpec, stored as canonical coefficients."""

    spec: FieldSpec
    coeffs: tuple[int, ...]

    @property
    def code(self) -> int:
        return self.spec.encode(self.coeffs)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return ff_add(self, other)

    def __sub__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return ff_sub(self, other)

    def __neg__(self):
        return ff_neg(self)

    def __mul__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return ff_mul(self, other)

    def __truediv__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return ff_mul(self, ff_inv(other))

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"<{format_element(self)} in {self.spec}>"


def _require_same_field(a: FieldElement, b: FieldElement) -> FieldSpec:
    if a.spec != b.spec:
        raise ValueError(f"elements from different fields: {a.spec} vs {b.spec}")
    return a.spec


def ff_add(a: FieldElement, b: FieldElement) -> FieldElement:
    """Coefficient-wise sum mod p."""
    spec = _require_same_field(a, b)
    p = spec.p
    return FieldElement(spec, tuple((x + y) % p for x, y in zip(a.coeffs, b.coeffs)))


def ff_sub(a: FieldElement, b: FieldElement) -> FieldElement:
    spec = _require_same_field(a, b)
    p = spec.p
    return FieldElement(spec, tuple((x - y) % p for x, y in zip(a.coeffs, b.coeffs)))


def ff_neg(a: FieldElement) -> FieldElement:
    p = a.spec.p
    return FieldElement(a.spec, tuple(-x % p for x in a.coeffs))


def ff_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    """Polynomial product reduced mod the modulus and mod p."""
    spec = _require_same_field(a, b)
    if spec.d == 1:
        return FieldElement(spec, (a.coeffs[0] * b.coeffs[0] % spec.p,))
    prod = _poly_mul(a.coeffs, b.coeffs, spec.p)
    red = _poly_mod(prod, spec.modulus, spec.p)
    red += [0] * (spec.d - len(red))
    return FieldElement(spec, tuple(red))


def ff_inv(a: FieldElement) -> FieldElement:
    """Multiplicative inverse by Fermat power a^(Q-2); zero raises."""
    if not a:
        raise ZeroDivisionError(f"inversion of zero in {a.spec}")
    spec = a.spec
    return spec.element(spec.inv_code(a.code))


def ff_elements(spec: FieldSpec) -> list[FieldElement]:
    """All Q elements, little-endian odometer order over coefficients."""
    return spec.elements()


# ----------------------------------------------------------------------
# Text format
# ----------------------------------------------------------------------


def format_element(a: FieldElement) -> str:
    if a.spec.d == 1:
        return str(a.coeffs[0])
    terms = []
    for i, c in enumerate(a.coeffs):
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        elif i == 1:
            terms.append("t" if c == 1 else f"{c}*t")
        else:
            terms.append(f"t^{i}" if c == 1 else f"{c}*t^{i}")
    return "+".join(terms) if terms else "0"


def parse_element(spec: FieldSpec, text: str) -> FieldElement:
    """Parse the format produced by format_element."""
    text = text.strip()
    if not text:
        raise ValueError("empty element literal")
    if spec.d == 1:
        try:
            return spec.element(int(text))
        except ValueError as exc:
            raise ValueError(f"bad element literal {text!r} for {spec}") from exc
    coeffs = [0] * spec.d
    for term in text.split("+"):
        term = term.strip()
        if not term:
            raise ValueError(f"bad element literal {text!r}")
        if "t" not in term:
            power = 0
            coeff = term
        else:
            coeff_s, _, power_s = term.partition("t")
            coeff_s = coeff_s.strip()
            if coeff_s.endswith("*"):
                coeff_s = coeff_s[:-1].strip()
            coeff = coeff_s or "1"
            if power_s == "":
                power = 1
            elif power_s.startswith("^"):
                power = power_s[1:]
            else:
                raise ValueError(f"bad term {term!r} in element literal {text!r}")
        try:
            c = int(coeff)
            power = int(power)
        except ValueError as exc:
            raise ValueError(f"bad term {term!r} in element literal {text!r}") from exc
        if not 0 <= power < spec.d:
            raise ValueError(f"power t^{power} out of range for {spec}")
        coeffs[power] = (coeffs[power] + c) % spec.p
    return FieldElement(spec, tuple(coeffs))


def parse_field(text: str) -> FieldSpec:
    """Parse a field spec string: 'Q' or 'p^d:c0,c1,...,cd'."""
    text = text.strip()
    if ":" in text:
        head, _, tail = text.partition(":")
        base, _, deg = head.partition("^")
        try:
            p = int(base)
            d = int(deg) if deg else 1
            coeffs = [int(c) for c in tail.split(",")]
        except ValueError as exc:
            raise ValueError(f"bad field spec {text!r}") from exc
        return FieldSpec(p, d, coeffs)
    try:
        q = int(text)
    except ValueError as exc:
        raise ValueError(f"bad field spec {text!r}") from exc
    return FieldSpec.from_order(q)
