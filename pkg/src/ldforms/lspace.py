"""Candidate two-dimensional spaces of good deformation data.

A candidate is given by p+1 pole sets X^(0..p) of equal size lam and two
residue maps r1, r2 (the residues of the basis forms w1, w2).  The form
w1 + j*w2 (j < p) loses its poles exactly on X^(j), so r1 + j*r2 vanishes
there; w2 has no pole on X^(p) and w1 none on X^(0).

The per-set residue view used by the moment relations takes w1's residue on
X^(1..p) and w2's residue on X^(0).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence

from .datum import CharacterizingDatum, residue_type, verify_datum
from .errors import MalformedCandidate, WrongPrime
from .field import FieldElement, FieldSpec
from .poly import MultiPoly
from .symfun import elementary, poly_from_roots


def lemma31_predicate(m_plus_1: int, lam: int, p: int, n: int = 2) -> bool:
    """A space of dimension n with m+1 poles per form needs m+1 = lam * p^(n-1)."""
    return m_plus_1 == lam * p ** (n - 1)


@dataclass(frozen=True)
class LSpaceCandidate:
    p: int
    lam: int
    spec: FieldSpec
    pole_sets: tuple[tuple[FieldElement, ...], ...]
    r1: Mapping[FieldElement, int]
    r2: Mapping[FieldElement, int]
    u: FieldElement
    v: FieldElement

    def __post_init__(self) -> None:
        sets = tuple(tuple(self.spec(x) for x in s) for s in self.pole_sets)
        object.__setattr__(self, "pole_sets", sets)
        object.__setattr__(self, "r1", {self.spec(x): int(h) % self.p for x, h in dict(self.r1).items()})
        object.__setattr__(self, "r2", {self.spec(x): int(h) % self.p for x, h in dict(self.r2).items()})
        object.__setattr__(self, "u", self.spec(self.u))
        object.__setattr__(self, "v", self.spec(self.v))

    @property
    def a(self) -> FieldElement:
        return self.u / self.v

    @property
    def m_plus_1(self) -> int:
        return self.lam * self.p

    def all_poles(self) -> list[FieldElement]:
        return [x for s in self.pole_sets for x in s]

    def set_residues(self, j: int) -> list[int]:
        """h_i^(j): w2's residues on X^(0), w1's on the other sets."""
        r = self.r2 if j == 0 else self.r1
        return [r.get(x, 0) for x in self.pole_sets[j]]

    def key(self):
        return (self.spec.k, self.a.index,
                tuple(tuple(x.index for x in s) for s in self.pole_sets),
                tuple((x.index, self.r1.get(x, 0), self.r2.get(x, 0)) for x in self.all_poles()))


def _combination(c: LSpaceCandidate, c1: int, c2: int) -> CharacterizingDatum:
    p = c.p
    pairs = []
    for x in c.all_poles():
        h = (c1 * c.r1.get(x, 0) + c2 * c.r2.get(x, 0)) % p
        if h:
            pairs.append((x, h))
    return CharacterizingDatum(c.spec, tuple(pairs))


def assemble_form(c: LSpaceCandidate, j: int) -> CharacterizingDatum:
    """Datum of w1 + j*w2 for j < p, of w2 for j = p."""
    if not 0 <= j <= c.p:
        raise MalformedCandidate(f"j must lie in 0..{c.p}")
    problems = structural_problems(c)
    if problems:
        raise MalformedCandidate("; ".join(problems))
    pairs = []
    for i, s in enumerate(c.pole_sets):
        if i == j:
            continue
        for x in s:
            h = c.r2[x] if j == c.p else (c.r1.get(x, 0) + j * c.r2.get(x, 0)) % c.p
            pairs.append((x, h))
    return CharacterizingDatum(c.spec, tuple(pairs))


def combination_datum(c: LSpaceCandidate, c1: int, c2: int) -> CharacterizingDatum:
    """Datum of c1*w1 + c2*w2: poles where the combined residue is nonzero."""
    if c1 % c.p == 0 and c2 % c.p == 0:
        raise ValueError("the zero combination has no datum")
    return _combination(c, c1, c2)


def structural_problems(c: LSpaceCandidate) -> list[str]:
    p = c.p
    out = []
    if len(c.pole_sets) != p + 1:
        out.append(f"expected {p + 1} pole sets, got {len(c.pole_sets)}")
        return out
    for j, s in enumerate(c.pole_sets):
        if len(s) != c.lam:
            out.append(f"X{j} has {len(s)} poles, expected {c.lam}")
    poles = c.all_poles()
    seen: dict[FieldElement, int] = {}
    for j, s in enumerate(c.pole_sets):
        for x in s:
            if x in seen:
                out.append(f"pole {x} repeated (X{seen[x]} and X{j})")
            seen[x] = j
    for x in poles:
        j = seen[x]
        h1, h2 = c.r1.get(x, 0) % p, c.r2.get(x, 0) % p
        if j == 0 and h1:
            out.append(f"r1 nonzero at {x} in X0")
        if j == p and h2:
            out.append(f"r2 nonzero at {x} in X{p}")
        if j != 0 and not h1:
            out.append(f"r1 vanishes at {x} in X{j}")
        if j != p and not h2:
            out.append(f"r2 vanishes at {x} in X{j}")
        if j < p and (h1 + j * h2) % p:
            out.append(f"r1 + {j}*r2 nonzero at {x} in X{j}")
    extra = (set(c.r1) | set(c.r2)) - set(poles)
    if extra:
        out.append(f"residues given at {len(extra)} points outside the pole sets")
    if c.u.is_zero() or c.v.is_zero():
        out.append("u and v must be nonzero")
    else:
        a = c.a
        for j in range(p):
            if (a + j).is_zero():
                out.append(f"a + {j} = 0 (a lies in the prime field)")
    return out


@dataclass
class LSpaceReport:
    passed: bool
    clauses: dict[str, bool]
    messages: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.passed


def verify_lspace(c: LSpaceCandidate) -> LSpaceReport:
    """Structural checks, validity of all p+1 forms, pole sharing, pole count."""
    msgs: list[str] = []
    problems = structural_problems(c)
    msgs.extend(problems)
    structural = not problems
    forms_ok = False
    sharing = False
    if structural:
        forms_ok = True
        for j in range(c.p + 1):
            verdict = verify_datum(assemble_form(c, j))
            if not verdict.valid:
                forms_ok = False
                msgs.append(f"form {j}: " + "; ".join(verdict.violations))
        w1 = verify_datum(assemble_form(c, 0))
        w2 = verify_datum(assemble_form(c, c.p))
        if w1.valid and w1.u != c.u:
            forms_ok = False
            msgs.append(f"leading moment of w1 is {w1.u}, candidate says u = {c.u}")
        if w2.valid and w2.u != c.v:
            forms_ok = False
            msgs.append(f"leading moment of w2 is {w2.u}, candidate says v = {c.v}")
        shared = set(assemble_form(c, 0).poles) & set(assemble_form(c, c.p).poles)
        sharing = len(shared) == c.lam * (c.p - 1)
        if not sharing:
            msgs.append(f"w1 and w2 share {len(shared)} poles, expected {c.lam * (c.p - 1)}")
    count = structural and lemma31_predicate(len(c.all_poles()) - c.lam, c.lam, c.p)
    clauses = {"forms": forms_ok, "structure": structural, "sharing": sharing, "pole_count": count}
    return LSpaceReport(all(clauses.values()), clauses, msgs)


def _S(c: LSpaceCandidate, j: int, i: int) -> FieldElement:
    return elementary(list(c.pole_sets[j]), i, c.spec.one)


def check_lemma32(c: LSpaceCandidate) -> bool:
    """(a+j) S_i(X^(j)) = a S_i(X^(0)) + j S_i(X^(p)) for 1 <= i <= lam, 1 <= j < p."""
    a = c.a
    for j in range(1, c.p):
        for i in range(1, c.lam + 1):
            if (a + j) * _S(c, j, i) != a * _S(c, 0, i) + _S(c, c.p, i) * j:
                return False
    return True


def check_polynomial_relation(c: LSpaceCandidate) -> bool:
    """(u + j v) P^(j) = u P^(0) + j v P^(p) as polynomials."""
    P = [poly_from_roots(list(s), c.spec) for s in c.pole_sets]
    for j in range(1, c.p):
        if P[j] * (c.u + c.v * j) != P[0] * c.u + P[c.p] * (c.v * j):
            return False
    return True


def check_cor33(c: LSpaceCandidate) -> bool:
    values = {_S(c, j, 1) for j in range(c.p + 1)}
    return len(values) == 1


def q_moment(c: LSpaceCandidate, j: int, k: int) -> FieldElement:
    total = c.spec.zero
    for x, h in zip(c.pole_sets[j], c.set_residues(j)):
        total = total + x**k * h
    return total


def check_q_relations(c: LSpaceCandidate) -> bool:
    """Both q_k families for 0 <= k <= 3*lam - 2 (p = 3 only)."""
    if c.p != 3:
        raise WrongPrime("the q_k relations are stated for p = 3")
    for k in range(0, 3 * c.lam - 1):
        q = [q_moment(c, j, k) for j in range(4)]
        if not (q[1] + q[2] + q[3]).is_zero():
            return False
        if not (q[0] - q[1] + q[2]).is_zero():
            return False
    return True


@dataclass
class TypeProfile:
    types: list[tuple[int, ...]]
    flags: list[str]

    @property
    def ok(self) -> bool:
        return not self.flags


def type_profile(c: LSpaceCandidate) -> TypeProfile:
    if c.p != 3:
        raise WrongPrime("type profiles are analysed for p = 3")
    types = [residue_type(c.set_residues(j), 3) for j in range(4)]
    flags = []
    for j, t in enumerate(types):
        if c.lam == 5 and t not in ((4, 1), (1, 4)):
            flags.append(f"X{j} has type {t}, expected (4, 1) or (1, 4)")
        if c.lam == 2 and t != (1, 1):
            flags.append(f"X{j} has type {t}, expected (1, 1)")
    return TypeProfile(types, flags)


def admissible_types(lam: int) -> list[tuple[int, int]] | None:
    """Types every set must have at p = 3, or None when unconstrained."""
    if lam == 2:
        return [(1, 1)]
    if lam == 5:
        return [(4, 1), (1, 4)]
    return None


def closure_holds(c: LSpaceCandidate) -> bool:
    """Every nonzero F_p-combination of w1, w2 is a valid datum."""
    for c1, c2 in product(range(c.p), repeat=2):
        if c1 == 0 and c2 == 0:
            continue
        if not verify_datum(_combination(c, c1, c2)).valid:
            return False
    return True


def shared_pole_count(c: LSpaceCandidate) -> int:
    return len(set(assemble_form(c, 0).poles) & set(assemble_form(c, c.p).poles))


def from_sets(spec: FieldSpec, p: int, sets: Sequence[Sequence], h1: Sequence[Sequence[int]] | None,
              h2: Sequence[Sequence[int]] | None, u, v) -> LSpaceCandidate:
    """Build a candidate from explicit per-set residue lists for w1 and w2."""
    lam = len(sets[0])
    r1: dict = {}
    r2: dict = {}
    for j, s in enumerate(sets):
        for i, x in enumerate(s):
            x = spec(x)
            if h1 is not None and h1[j] is not None:
                r1[x] = h1[j][i] % p
            if h2 is not None and h2[j] is not None:
                r2[x] = h2[j][i] % p
    return LSpaceCandidate(p, lam, spec, tuple(tuple(s) for s in sets), r1, r2, u, v)


__all__ = [
    "lemma31_predicate", "LSpaceCandidate", "assemble_form", "combination_datum", "structural_problems",
    "LSpaceReport", "verify_lspace", "check_lemma32", "check_polynomial_relation", "check_cor33",
    "q_moment", "check_q_relations", "TypeProfile", "type_profile", "admissible_types", "closure_holds",
    "shared_pole_count", "from_sets",
]
