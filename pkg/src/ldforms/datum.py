"""Characterizing data of multiplicative good deformation data.

A datum is a list of (pole, residue) pairs.  It describes a logarithmic form
``sum h_i dx/(x - x_i)`` and is valid when the residues are nonzero and sum to
zero, the poles are distinct, the weighted moments ``sum h_i x_i^k`` vanish for
``1 <= k <= m-1`` and the leading moment ``u = sum h_i x_i^m`` does not.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DuplicatePoles, InvalidDatum, ZeroScale
from .field import FieldElement, FieldSpec
from .poly import MultiPoly
from .symfun import complete_homogeneous


@dataclass(frozen=True)
class ResidueTuple:
    h: tuple[int, ...]
    p: int

    def __post_init__(self) -> None:
        h = tuple(int(x) % self.p for x in self.h)
        if any(x == 0 for x in h):
            raise ValueError("residues must be nonzero mod p")
        object.__setattr__(self, "h", h)

    def __len__(self) -> int:
        return len(self.h)

    def __iter__(self):
        return iter(self.h)

    @property
    def total(self) -> int:
        return sum(self.h) % self.p


@dataclass(frozen=True)
class Partition:
    blocks: tuple[frozenset[int], ...]

    @classmethod
    def of(cls, blocks: Iterable[Iterable[int]]) -> "Partition":
        return cls(tuple(sorted((frozenset(b) for b in blocks), key=lambda b: sorted(b))))

    def covers(self, n: int) -> bool:
        seen: set[int] = set()
        for b in self.blocks:
            if not b or seen & b:
                return False
            seen |= b
        return seen == set(range(n))

    def __len__(self) -> int:
        return len(self.blocks)


@dataclass(frozen=True)
class CharacterizingDatum:
    spec: FieldSpec
    pairs: tuple[tuple[FieldElement, int], ...]

    def __post_init__(self) -> None:
        p = self.spec.p
        pairs = tuple((self.spec(x), int(h) % p) for x, h in self.pairs)
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def build(cls, spec: FieldSpec, poles: Sequence, residues: Sequence[int]) -> "CharacterizingDatum":
        if len(poles) != len(residues):
            raise ValueError("poles and residues differ in length")
        return cls(spec, tuple((spec(x), h) for x, h in zip(poles, residues)))

    @property
    def poles(self) -> list[FieldElement]:
        return [x for x, _ in self.pairs]

    @property
    def residues(self) -> list[int]:
        return [h for _, h in self.pairs]

    @property
    def m_plus_1(self) -> int:
        return len(self.pairs)

    @property
    def m(self) -> int:
        return len(self.pairs) - 1

    def moment(self, k: int) -> FieldElement:
        """sum h_i x_i^k, with 0^0 = 1."""
        total = self.spec.zero
        for x, h in self.pairs:
            total = total + x**k * h
        return total

    def sorted(self) -> "CharacterizingDatum":
        return CharacterizingDatum(self.spec, tuple(sorted(self.pairs, key=lambda t: (t[0].index, t[1]))))


@dataclass
class DatumVerdict:
    valid: bool
    u: FieldElement
    violations: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.valid


def verify_datum(d: CharacterizingDatum) -> DatumVerdict:
    """Check every validity clause and report each one that fails."""
    p = d.spec.p
    violations = []
    for i, h in enumerate(d.residues):
        if h % p == 0:
            violations.append(f"residue zero at index {i}")
    s = sum(d.residues) % p
    if s:
        violations.append(f"residue sum {s} != 0")
    first: dict[FieldElement, int] = {}
    for i, x in enumerate(d.poles):
        if x in first:
            violations.append(f"duplicate poles at indices ({first[x]}, {i})")
        else:
            first[x] = i
    for k in range(1, d.m):
        if not d.moment(k).is_zero():
            violations.append(f"moment k={k} nonzero")
    u = d.moment(d.m) if d.pairs else d.spec.zero
    if u.is_zero():
        violations.append("leading moment u = 0")
    return DatumVerdict(not violations, u, violations)


def numerator_oracle(d: CharacterizingDatum, var: str = "X") -> MultiPoly:
    """N(X) = sum_i h_i prod_{j != i} (X - x_j).

    The datum is valid exactly when N is a nonzero constant, and that constant
    is u.
    """
    poles = d.poles
    if len(set(poles)) != len(poles):
        raise DuplicatePoles("poles are not pairwise distinct")
    X = MultiPoly.var(d.spec, var)
    total = MultiPoly.const(d.spec, 0, (var,))
    for i, (_, h) in enumerate(d.pairs):
        term = MultiPoly.const(d.spec, h, (var,))
        for j, y in enumerate(poles):
            if j != i:
                term = term * (X - y)
        total = total + term
    return total


def oracle_verdict(d: CharacterizingDatum) -> tuple[bool, FieldElement | None]:
    """(valid, u) read off the numerator oracle, without touching moments."""
    if any(h % d.spec.p == 0 for h in d.residues):
        return False, None
    try:
        n = numerator_oracle(d)
    except DuplicatePoles:
        return False, None
    if n.is_constant() and not n.is_zero():
        return True, n.constant_value()
    return False, None


def check_homogeneous_relations(d: CharacterizingDatum, K: int) -> bool:
    """sum h_i x_i^(m+k) = u * c_k(x) for 1 <= k <= K, plus sum x_i = 0 when p | m+1."""
    verdict = verify_datum(d)
    if not verdict.valid:
        raise InvalidDatum("; ".join(verdict.violations))
    u = verdict.u
    poles = d.poles
    for k in range(1, K + 1):
        if d.moment(d.m + k) != u * complete_homogeneous(poles, k, d.spec.one):
            return False
    if d.m_plus_1 % d.spec.p == 0:
        total = d.spec.zero
        for x in poles:
            total = total + x
        if not total.is_zero():
            return False
    return True


def apply_affine(d: CharacterizingDatum, alpha, beta) -> CharacterizingDatum:
    """Map every pole x to alpha*x + beta; residues are untouched."""
    alpha = d.spec(alpha)
    beta = d.spec(beta)
    if alpha.is_zero():
        raise ZeroScale("alpha must be nonzero")
    return CharacterizingDatum(d.spec, tuple((alpha * x + beta, h) for x, h in d.pairs))


def scale_residues(d: CharacterizingDatum, c: int) -> CharacterizingDatum:
    if c % d.spec.p == 0:
        raise ZeroScale("residue scale must be nonzero mod p")
    return CharacterizingDatum(d.spec, tuple((x, h * c) for x, h in d.pairs))


def residue_type(residues: Iterable[int], p: int) -> tuple[int, ...]:
    """(n_1, ..., n_{p-1}): how many residues equal each nonzero value."""
    counts = [0] * (p - 1)
    for h in residues:
        r = int(h) % p
        if r == 0:
            raise ValueError("residues must be nonzero mod p")
        counts[r - 1] += 1
    return tuple(counts)


__all__ = [
    "ResidueTuple", "Partition", "CharacterizingDatum", "DatumVerdict", "verify_datum",
    "numerator_oracle", "oracle_verdict", "check_homogeneous_relations", "apply_affine",
    "scale_residues", "residue_type",
]
