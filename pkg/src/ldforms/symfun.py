"""Symmetric-function toolkit.

Functions here accept "ring values": field elements, polynomials or rational
functions -- anything supporting ``+``, ``-``, ``*`` and multiplication by a
Python int.  Lists of values are the roots / poles of a pole set.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .errors import ResourceLimit
from .field import FieldElement, FieldSpec, enumerate_field
from .poly import MultiPoly

ROOT_SEARCH_LIMIT = 3**8


def _one_like(x):
    return x * 0 + 1


def elementary(values: Sequence, k: int, one=None):
    """S_k(values); S_0 = 1 and S_k = 0 for k > len(values)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if one is None:
        if not values:
            return 1 if k == 0 else 0
        one = _one_like(values[0])
    if k == 0:
        return one
    if k > len(values):
        return one * 0
    # e_0..e_k by the product recurrence; avoids the combinatorial blow-up
    e = [one] + [one * 0] * k
    for v in values:
        for i in range(k, 0, -1):
            e[i] = e[i] + e[i - 1] * v
    return e[k]


def elementary_all(values: Sequence, one=None) -> list:
    """[S_0, ..., S_n] for n = len(values)."""
    if one is None:
        one = _one_like(values[0]) if values else 1
    e = [one] + [one * 0] * len(values)
    for v in values:
        for i in range(len(values), 0, -1):
            e[i] = e[i] + e[i - 1] * v
    return e


def power_sum(values: Sequence, k: int, one=None):
    """p_k = sum of v**k; p_0 = len(values) (0**0 = 1)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if one is None:
        if not values:
            return 0
        one = _one_like(values[0])
    total = one * 0
    for v in values:
        total = total + (v**k if k else one)
    return total


def complete_homogeneous(values: Sequence, k: int, one=None):
    """c_k: sum of all degree-k monomials in the values."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if one is None:
        if not values:
            return 1 if k == 0 else 0
        one = _one_like(values[0])
    # c_k(x_1..x_n) = c_k(x_1..x_{n-1}) + x_n c_{k-1}(x_1..x_n)
    c = [one] + [one * 0] * k
    for v in values:
        for i in range(1, k + 1):
            c[i] = c[i] + v * c[i - 1]
    return c[k]


def symmetric(values: Sequence, k: int, kind: str = "elementary"):
    if kind == "elementary":
        return elementary(values, k)
    if kind == "power_sum":
        return power_sum(values, k)
    if kind == "complete_homogeneous":
        return complete_homogeneous(values, k)
    raise ValueError(f"unknown kind {kind!r}")


def newton_bridge(e: Sequence, K: int, n: int | None = None) -> list:
    """Power sums p_1..p_K from elementary symmetric values e_1..e_n.

    Uses the division-free recurrence
    p_k = e_1 p_{k-1} - e_2 p_{k-2} + ... + (-1)^(k-1) k e_k,
    with e_j = 0 for j > n; it is valid verbatim in characteristic p.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    e = list(e)
    n = len(e) if n is None else n
    one = _one_like(e[0]) if e else 1
    el = [one] + e + [one * 0] * max(0, K - len(e))
    p = [one * n]
    for k in range(1, K + 1):
        acc = one * 0
        for i in range(1, min(k - 1, n) + 1):
            term = el[i] * p[k - i]
            acc = acc + term if i % 2 == 1 else acc - term
        if k <= n:
            term = el[k] * k
            acc = acc + term if k % 2 == 1 else acc - term
        p.append(acc)
    return p[1:]


def poly_from_roots(roots: Sequence[FieldElement], spec: FieldSpec | None = None,
                    var: str = "X") -> MultiPoly:
    """Monic prod (X - r)."""
    if spec is None:
        if not roots:
            raise ValueError("need a field spec for an empty root list")
        spec = roots[0].spec
    out = MultiPoly.const(spec, 1, (var,))
    X = MultiPoly.var(spec, var)
    for r in roots:
        out = out * (X - r)
    return out


def hatted_poly(S: Sequence, var: str = "X", spec: FieldSpec | None = None):
    """Truncated polynomial sum_{i=0}^n S_{n-i} X^i from [S_0, ..., S_n].

    With scalar S values returns a MultiPoly; with polynomial values returns a
    polynomial in ``var`` plus the variables of the S values.
    """
    if not S:
        raise ValueError("S must contain at least S_0")
    n = len(S) - 1
    if all(isinstance(s, (int, FieldElement)) for s in S):
        if spec is None:
            spec = next((s.spec for s in S if isinstance(s, FieldElement)), None)
        if spec is None:
            raise ValueError("need a field spec for integer input")
        return MultiPoly(spec, (var,), {(i,): S[n - i] for i in range(n + 1)})
    field = next(s.field for s in S if hasattr(s, "field"))
    X = MultiPoly.var(field, var)
    out = 0
    for i in range(n + 1):
        out = out + S[n - i] * X**i
    return out


def roots_in_field(poly: MultiPoly, spec: FieldSpec | None = None,
                   limit: int = ROOT_SEARCH_LIMIT) -> list[tuple[FieldElement, int]]:
    """Roots with multiplicity, by exhaustive evaluation (Horner) over the field."""
    if poly.is_zero():
        raise ValueError("the zero polynomial has every element as a root")
    spec = spec or poly.field
    if spec.order > limit:
        raise ResourceLimit(f"root search over {spec} exceeds the limit {limit}")
    coeffs = [c.index for c in poly.univariate_coeffs()]
    out = []
    for x in range(spec.order):
        mult = 0
        cur = coeffs
        while len(cur) > 1:
            # synthetic division by (X - x)
            q = [0] * (len(cur) - 1)
            acc = 0
            for i in range(len(cur) - 1, 0, -1):
                acc = spec._add(spec._mul(acc, x), cur[i])
                q[i - 1] = acc
            rem = spec._add(spec._mul(acc, x), cur[0])
            if rem:
                break
            mult += 1
            cur = q
        if mult:
            out.append((spec.element(x), mult))
    return out


def brute_elementary(values: Sequence, k: int):
    """Elementary symmetric value straight from the definition (test oracle)."""
    total = 0
    for combo in combinations(values, k):
        prod = 1
        for v in combo:
            prod = v * prod
        total = prod + total
    return total


__all__ = [
    "elementary", "elementary_all", "power_sum", "complete_homogeneous", "symmetric",
    "newton_bridge", "poly_from_roots", "hatted_poly", "roots_in_field", "brute_elementary",
    "enumerate_field",
]
