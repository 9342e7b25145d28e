"""Exact arithmetic in F_p and F_{p^k}.

An element of F_{p^k} = F_p[t]/(f) is stored as its coefficient vector
(c_0, ..., c_{k-1}), low degree first.  Internally every element also has an
integer *index* sum(c_i * p**i) in [0, p**k); the index order is the canonical
order used by :func:`enumerate_field` and by every search in the package.

Small extension fields (q <= ``TABLE_LIMIT``) get exp/log tables built lazily
from a primitive element, so multiplication is two lookups.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence, Union

from .errors import FieldDivisionByZero, NonPrime, ResourceLimit, SpecMismatch

MAX_DEGREE = 12
TABLE_LIMIT = 3**8


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# --- dense univariate helpers over F_p (lists, low degree first) -----------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _upoly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    inv_lead = pow(m[-1], p - 2, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _upoly_mulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _upoly_mod(out, m, p)


def _upoly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while b:
        a, b = b, _upoly_mod(a, b, p)
    return a


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Ben-Or test: f of degree k is irreducible iff gcd(X^(p^i) - X, f) = 1
    for 1 <= i <= k // 2."""
    f = _trim([c % p for c in modulus])
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    if f[0] == 0:
        return False
    power = [0, 1]  # X
    for _ in range(k // 2):
        # power <- power^p mod f
        acc, base, e = [1], power, p
        while e:
            if e & 1:
                acc = _upoly_mulmod(acc, base, f, p)
            base = _upoly_mulmod(base, base, f, p)
            e >>= 1
        power = acc
        diff = list(power) + [0] * max(0, 2 - len(power))
        diff[1] = (diff[1] - 1) % p
        if len(_upoly_gcd(f, diff, p)) > 1:
            return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k over F_p,
    comparing (c_0, ..., c_{k-1}) low to high."""
    if k == 1:
        return (0, 1)
    for n in range(p**k):
        low = []
        for _ in range(k):
            n, r = divmod(n, p)
            low.append(r)
        # n-th tuple in lex order with c_0 most significant
        cand = tuple(reversed(low)) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")  # unreachable


@dataclass(frozen=True)
class FieldSpec:
    """The field F_p[t]/(modulus); ``modulus`` is monic, coefficients low first."""

    p: int
    k: int
    modulus: tuple[int, ...]
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise NonPrime(f"{self.p} is not prime")
        if self.k < 1:
            raise ValueError("extension degree must be >= 1")
        mod = tuple(int(c) for c in self.modulus)
        object.__setattr__(self, "modulus", mod)
        if len(mod) != self.k + 1 or mod[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        if any(not 0 <= c < self.p for c in mod):
            raise ValueError("modulus coefficients must be reduced mod p")
        if not is_irreducible(mod, self.p):
            raise ValueError(f"modulus {mod} is reducible over F_{self.p}")

    @property
    def order(self) -> int:
        return self.p**self.k

    @property
    def is_prime_field(self) -> bool:
        return self.k == 1

    def __str__(self) -> str:
        if self.k == 1:
            return f"F_{self.p}"
        return f"F_{self.p}^{self.k}"

    # -- construction of elements ------------------------------------------
    def __call__(self, value: Union[int, Sequence[int], "FieldElement"]) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise SpecMismatch(f"element of {value.spec} used in {self}")
            return value
        if isinstance(value, int):
            return FieldElement.from_index(self, value % self.p)
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.k:
            coeffs = _upoly_mod(coeffs, list(self.modulus), self.p)
        return FieldElement.from_index(self, self._encode(coeffs))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement.from_index(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement.from_index(self, 1)

    @property
    def gen(self) -> "FieldElement":
        """The class of t (equal to 0 when k = 1, since the modulus is X)."""
        return self((0, 1))

    def element(self, index: int) -> "FieldElement":
        return FieldElement.from_index(self, index)

    # -- raw index arithmetic ------------------------------------------------
    def _encode(self, coeffs: Sequence[int]) -> int:
        n = 0
        for c in reversed(list(coeffs)):
            n = n * self.p + c
        return n

    def _decode(self, n: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            n, r = divmod(n, self.p)
            out.append(r)
        return tuple(out)

    @cached_property
    def _tables(self):
        """(exp, log) tables, or None when the field is too large."""
        q = self.order
        if self.k == 1 or q > TABLE_LIMIT:
            return None
        mod = list(self.modulus)
        for g in range(2, q):
            g_coeffs = _trim(list(self._decode(g)))
            exp = [1]
            cur = [1]
            for _ in range(q - 2):
                cur = _upoly_mulmod(cur, g_coeffs, mod, self.p)
                idx = self._encode(cur)
                if idx == 1:
                    break
                exp.append(idx)
            if len(exp) == q - 1:
                log = [0] * q
                for e, v in enumerate(exp):
                    log[v] = e
                return exp, log
        raise AssertionError("no primitive element")  # unreachable

    def _add(self, x: int, y: int) -> int:
        if self.k == 1:
            return (x + y) % self.p
        p, out, place = self.p, 0, 1
        while x or y:
            x, rx = divmod(x, p)
            y, ry = divmod(y, p)
            out += ((rx + ry) % p) * place
            place *= p
        return out

    def _neg(self, x: int) -> int:
        if self.k == 1:
            return (-x) % self.p
        p, out, place = self.p, 0, 1
        while x:
            x, r = divmod(x, p)
            out += ((-r) % p) * place
            place *= p
        return out

    def _sub(self, x: int, y: int) -> int:
        return self._add(x, self._neg(y))

    def _mul(self, x: int, y: int) -> int:
        if self.k == 1:
            return x * y % self.p
        if x == 0 or y == 0:
            return 0
        tables = self._tables
        if tables is not None:
            exp, log = tables
            return exp[(log[x] + log[y]) % (self.order - 1)]
        prod = _upoly_mulmod(
            _trim(list(self._decode(x))), _trim(list(self._decode(y))), list(self.modulus), self.p
        )
        return self._encode(prod)

    def _inv(self, x: int) -> int:
        if x == 0:
            raise FieldDivisionByZero("division by zero in " + str(self))
        if self.k == 1:
            return pow(x, self.p - 2, self.p)
        tables = self._tables
        if tables is not None:
            exp, log = tables
            return exp[(-log[x]) % (self.order - 1)]
        return self._pow(x, self.order - 2)

    def _pow(self, x: int, e: int) -> int:
        if e < 0:
            return self._pow(self._inv(x), -e)
        acc = 1
        while e:
            if e & 1:
                acc = self._mul(acc, x)
            x = self._mul(x, x)
            e >>= 1
        return acc

    def _from_int(self, n: int) -> int:
        return n % self.p


@dataclass(frozen=True, eq=False)
class FieldElement:
    """An element of the field described by ``spec``."""

    spec: FieldSpec
    coeffs: tuple[int, ...]
    index: int = field(repr=False, compare=False)

    @classmethod
    def from_index(cls, spec: FieldSpec, index: int) -> "FieldElement":
        return cls(spec, spec._decode(index), index)

    # -- helpers ----------------------------------------------------------
    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise SpecMismatch(f"cannot combine elements of {self.spec} and {other.spec}")
            return other.index
        if isinstance(other, int):
            return other % self.spec.p
        return NotImplemented

    def _wrap(self, index: int) -> "FieldElement":
        return FieldElement.from_index(self.spec, index)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.spec._add(self.index, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.spec._sub(self.index, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.spec._sub(o, self.index))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.spec._mul(self.index, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.spec._mul(self.index, self.spec._inv(o)))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.spec._mul(o, self.spec._inv(self.index)))

    def __neg__(self):
        return self._wrap(self.spec._neg(self.index))

    def __pow__(self, e: int):
        # 0**0 == 1 by convention (moment sums q_0 count residues)
        return self._wrap(self.spec._pow(self.index, e))

    def inverse(self) -> "FieldElement":
        return self._wrap(self.spec._inv(self.index))

    def frobenius(self) -> "FieldElement":
        return self ** self.spec.p

    # -- predicates / comparison -------------------------------------------
    def is_zero(self) -> bool:
        return self.index == 0

    def __bool__(self) -> bool:
        return self.index != 0

    def in_prime_field(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.index == other.index
        if isinstance(other, int):
            return self.index == other % self.spec.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.spec.p, self.spec.modulus, self.index))

    def __lt__(self, other: "FieldElement") -> bool:
        if self.spec != other.spec:
            raise SpecMismatch("cannot order elements of different fields")
        return self.index < other.index

    def __int__(self) -> int:
        if not self.in_prime_field():
            raise ValueError(f"{self} is not in the prime field")
        return self.coeffs[0]

    def __str__(self) -> str:
        if self.spec.k == 1:
            return str(self.coeffs[0])
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}{mono}")
        return " + ".join(reversed(terms)) if terms else "0"

    def __repr__(self) -> str:
        return f"FieldElement({self}, {self.spec})"


def make_field(p: int, k: int = 1, modulus: Sequence[int] | None = None,
               max_degree: int = MAX_DEGREE) -> FieldSpec:
    """Return F_{p^k}; the modulus defaults to the smallest irreducible."""
    if not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    if k > max_degree:
        raise ResourceLimit(f"extension degree {k} exceeds the configured bound {max_degree}")
    if modulus is None:
        modulus = smallest_irreducible(p, k)
    return FieldSpec(p, k, tuple(modulus))


def enumerate_field(spec: FieldSpec) -> Iterator[FieldElement]:
    """All elements in canonical (index) order."""
    for n in range(spec.order):
        yield FieldElement.from_index(spec, n)


def arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    if a.spec != b.spec:
        raise SpecMismatch(f"cannot combine elements of {a.spec} and {b.spec}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def pow_frobenius(a: FieldElement, mode: str = "frobenius", e: int | None = None) -> FieldElement:
    if mode == "frobenius":
        return a.frobenius()
    if mode == "power":
        if e is None or e < 0:
            raise ValueError("power mode needs an exponent e >= 0")
        return a**e
    raise ValueError(f"unknown mode {mode!r}")
