"""Sparse multivariate polynomials and reduced rational functions over a finite field.

A :class:`MultiPoly` maps exponent vectors to nonzero coefficients.  The
coefficients are kept as raw field indices (see :mod:`ldforms.field`), which
for a prime field are just the residues 0..p-1.  Binary operations between
polynomials over different variable tuples first merge the variable lists, so
``x + y`` just works.

:class:`RatFun` is a quotient num/den reduced by a multivariate gcd and
normalized so the graded-lex leading coefficient of the denominator is 1;
equal rational functions therefore have identical representations.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Sequence, Union

from .errors import FieldDivisionByZero, SpecMismatch
from .field import FieldElement, FieldSpec, make_field

Exp = tuple[int, ...]
Scalar = Union[int, FieldElement]


def _grlex_key(e: Exp):
    return (sum(e), e)


class MultiPoly:
    __slots__ = ("field", "variables", "terms", "_hash")

    def __init__(self, field: FieldSpec, variables: Sequence[str], terms: Mapping[Exp, Scalar] = ()):
        self.field = field
        self.variables = tuple(variables)
        clean: dict[Exp, int] = {}
        n = len(self.variables)
        for e, c in dict(terms).items():
            e = tuple(e)
            if len(e) != n:
                raise ValueError(f"exponent {e} does not match {n} variables")
            raw = _raw(field, c)
            if raw:
                clean[e] = field._add(clean.get(e, 0), raw) if e in clean else raw
                if not clean[e]:
                    del clean[e]
        self.terms = clean
        self._hash = None

    @classmethod
    def _from_raw(cls, field, variables, terms):
        obj = cls.__new__(cls)
        obj.field = field
        obj.variables = variables
        obj.terms = terms
        obj._hash = None
        return obj

    # -- constructors -----------------------------------------------------
    @classmethod
    def var(cls, field: FieldSpec, name: str, variables: Sequence[str] | None = None) -> "MultiPoly":
        variables = tuple(variables) if variables is not None else (name,)
        e = tuple(1 if v == name else 0 for v in variables)
        return cls._from_raw(field, variables, {e: 1})

    @classmethod
    def const(cls, field: FieldSpec, value: Scalar, variables: Sequence[str] = ()) -> "MultiPoly":
        variables = tuple(variables)
        raw = _raw(field, value)
        return cls._from_raw(field, variables, {(0,) * len(variables): raw} if raw else {})

    @classmethod
    def gens(cls, field: FieldSpec, names: Union[str, Sequence[str]]) -> tuple["MultiPoly", ...]:
        if isinstance(names, str):
            names = names.replace(",", " ").split()
        return tuple(cls.var(field, n, names) for n in names)

    # -- variable bookkeeping ---------------------------------------------
    def with_variables(self, variables: Sequence[str]) -> "MultiPoly":
        variables = tuple(variables)
        if variables == self.variables:
            return self
        pos = []
        for i, v in enumerate(self.variables):
            if v in variables:
                pos.append(variables.index(v))
            else:
                pos.append(None)
        n = len(variables)
        out = {}
        for e, c in self.terms.items():
            new = [0] * n
            for i, d in enumerate(e):
                if d:
                    if pos[i] is None:
                        raise ValueError(f"variable {self.variables[i]} missing from {variables}")
                    new[pos[i]] = d
            out[tuple(new)] = c
        return MultiPoly._from_raw(self.field, variables, out)

    def used_variables(self) -> tuple[str, ...]:
        used = [False] * len(self.variables)
        for e in self.terms:
            for i, d in enumerate(e):
                if d:
                    used[i] = True
        return tuple(v for v, u in zip(self.variables, used) if u)

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.field != self.field:
                raise SpecMismatch(f"polynomials over {self.field} and {other.field}")
            return other
        if isinstance(other, (int, FieldElement)):
            return MultiPoly.const(self.field, other, self.variables)
        return NotImplemented

    def _align(self, other: "MultiPoly"):
        if self.variables == other.variables:
            return self, other
        merged = list(self.variables)
        for v in other.variables:
            if v not in merged:
                merged.append(v)
        return self.with_variables(merged), other.with_variables(merged)

    # -- ring operations ----------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._align(other)
        f = a.field
        out = dict(a.terms)
        for e, c in b.terms.items():
            s = f._add(out.get(e, 0), c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly._from_raw(f, a.variables, out)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return MultiPoly._from_raw(f, self.variables, {e: f._neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._align(other)
        f = a.field
        out: dict[Exp, int] = {}
        if f.k == 1:
            p = f.p
            for e1, c1 in a.terms.items():
                for e2, c2 in b.terms.items():
                    e = tuple(x + y for x, y in zip(e1, e2))
                    out[e] = (out.get(e, 0) + c1 * c2) % p
            out = {e: c for e, c in out.items() if c}
        else:
            for e1, c1 in a.terms.items():
                for e2, c2 in b.terms.items():
                    e = tuple(x + y for x, y in zip(e1, e2))
                    s = f._add(out.get(e, 0), f._mul(c1, c2))
                    if s:
                        out[e] = s
                    else:
                        out.pop(e, None)
        return MultiPoly._from_raw(f, a.variables, out)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "MultiPoly":
        f = self.field
        raw = _raw(f, c)
        if not raw:
            return MultiPoly._from_raw(f, self.variables, {})
        return MultiPoly._from_raw(f, self.variables, {e: f._mul(v, raw) for e, v in self.terms.items()})

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative exponent")
        result = MultiPoly.const(self.field, 1, self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, FieldElement)):
            raw = _raw(self.field, other)
            return self.scale(self.field.element(self.field._inv(raw)))
        return RatFun(self, other)

    def __rtruediv__(self, other):
        return RatFun(MultiPoly.const(self.field, other, self.variables), self)

    # -- predicates & accessors ---------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> FieldElement:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        if not self.terms:
            return self.field.zero
        (c,) = self.terms.values()
        return self.field.element(c)

    def coefficient(self, exps: Mapping[str, int] | Exp) -> FieldElement:
        if isinstance(exps, Mapping):
            for name in exps:
                if exps[name] and name not in self.variables:
                    return self.field.zero
            e = tuple(exps.get(v, 0) for v in self.variables)
        else:
            e = tuple(exps)
        return self.field.element(self.terms.get(e, 0))

    def degree(self, var: str | None = None) -> int:
        """Total degree, or degree in ``var``; the zero polynomial has degree -1."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        if var not in self.variables:
            return 0
        i = self.variables.index(var)
        return max(e[i] for e in self.terms)

    def leading_term(self) -> tuple[Exp, FieldElement]:
        e = max(self.terms, key=_grlex_key)
        return e, self.field.element(self.terms[e])

    def univariate_coeffs(self, var: str | None = None) -> list[FieldElement]:
        """Dense coefficient list (low degree first) of a univariate polynomial."""
        used = self.used_variables()
        if var is None:
            if len(used) > 1:
                raise ValueError(f"polynomial in {used} is not univariate")
            var = used[0] if used else (self.variables[0] if self.variables else "X")
        elif any(v != var for v in used):
            raise ValueError(f"polynomial is not univariate in {var}")
        d = self.degree(var)
        out = [self.field.zero] * (d + 1)
        if d < 0:
            return []
        i = self.variables.index(var) if var in self.variables else None
        for e, c in self.terms.items():
            out[e[i] if i is not None else 0] = self.field.element(c)
        return out

    @classmethod
    def from_univariate(cls, field: FieldSpec, coeffs: Sequence[Scalar], var: str = "X") -> "MultiPoly":
        return cls(field, (var,), {(i,): c for i, c in enumerate(coeffs)})

    def as_poly_in(self, var: str) -> dict[int, "MultiPoly"]:
        """Split into {degree in var: coefficient polynomial in the other variables}."""
        rest = tuple(v for v in self.variables if v != var)
        if var not in self.variables:
            return {0: self.with_variables(rest)} if self.terms else {}
        i = self.variables.index(var)
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            parts.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        return {d: MultiPoly._from_raw(self.field, rest, t) for d, t in parts.items()}

    # -- evaluation / substitution ------------------------------------------
    def subs(self, values: Mapping[str, object]) -> "MultiPoly | RatFun | FieldElement":
        """Substitute field elements, ints, polynomials or rational functions.

        Returns a polynomial (or rational function if any value is one).
        """
        keep = tuple(v for v in self.variables if v not in values)
        base = MultiPoly.const(self.field, 1, keep)
        powers: dict[tuple[str, int], object] = {}
        total = MultiPoly.const(self.field, 0, keep)
        idx = {v: i for i, v in enumerate(self.variables)}
        for e, c in self.terms.items():
            rest = tuple(e[idx[v]] for v in keep)
            term = MultiPoly._from_raw(self.field, keep, {rest: c})
            for v, val in values.items():
                if v not in idx:
                    continue
                d = e[idx[v]]
                if d:
                    key = (v, d)
                    if key not in powers:
                        powers[key] = _lift(self.field, val) ** d
                    term = term * powers[key]
            total = total + term
        del base
        return total

    def __call__(self, *args, **kwargs):
        if args:
            if len(args) != len(self.variables):
                raise ValueError("positional evaluation needs one value per variable")
            kwargs = dict(zip(self.variables, args))
        out = self.subs(kwargs)
        if isinstance(out, MultiPoly) and out.is_constant():
            return out.constant_value()
        return out

    def derivative(self, var: str) -> "MultiPoly":
        if var not in self.variables:
            return MultiPoly._from_raw(self.field, self.variables, {})
        i = self.variables.index(var)
        f = self.field
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                m = f._mul(c, f._from_int(e[i]))
                if m:
                    ne = list(e)
                    ne[i] -= 1
                    out[tuple(ne)] = m
        return MultiPoly._from_raw(f, self.variables, out)

    # -- equality / hashing / rendering --------------------------------------
    def _key(self):
        used = self.used_variables()
        idx = [self.variables.index(v) for v in used]
        return frozenset(
            (tuple((v, e[i]) for v, i in zip(used, idx) if e[i]), c) for e, c in self.terms.items()
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, FieldElement)):
            other = MultiPoly.const(self.field, other, self.variables)
        if isinstance(other, RatFun):
            return other == self
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.field == other.field and self._key() == other._key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def sorted_terms(self) -> list[tuple[Exp, int]]:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def render(self) -> str:
        """Canonical text: graded-lex descending, every coefficient explicit."""
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            coef = _render_coeff(self.field, c)
            mono = [v if d == 1 else f"{v}^{d}" for v, d in zip(self.variables, e) if d]
            parts.append("*".join([coef] + mono))
        return " + ".join(parts)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(v if d == 1 else f"{v}^{d}" for v, d in zip(self.variables, e) if d)
            coef = _render_coeff(self.field, c)
            if mono and coef == "1":
                parts.append(mono)
            elif mono:
                parts.append(f"{coef}*{mono}")
            else:
                parts.append(coef)
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


def _raw(field: FieldSpec, c: Scalar) -> int:
    if isinstance(c, FieldElement):
        if c.spec != field:
            raise SpecMismatch(f"coefficient from {c.spec} in a polynomial over {field}")
        return c.index
    if isinstance(c, int):
        return c % field.p
    raise TypeError(f"unsupported coefficient {c!r}")


def _lift(field: FieldSpec, val):
    if isinstance(val, (MultiPoly, RatFun, FactoredFrac)):
        return val
    return MultiPoly.const(field, val)


def _render_coeff(field: FieldSpec, raw: int) -> str:
    if field.k == 1:
        return str(raw)
    return "(" + ",".join(str(c) for c in field._decode(raw)) + ")"


def parse_poly(text: str, field: FieldSpec, variables: Sequence[str]) -> MultiPoly:
    """Inverse of :meth:`MultiPoly.render` (and of ``str`` for prime fields)."""
    variables = tuple(variables)
    text = text.strip()
    if text == "0":
        return MultiPoly(field, variables)
    terms: dict[Exp, int] = {}
    for chunk in text.split(" + "):
        chunk = chunk.strip()
        factors = [f.strip() for f in chunk.split("*")]
        coeff: Scalar = 1
        e = [0] * len(variables)
        for fac in factors:
            if re.fullmatch(r"\d+", fac):
                coeff = int(fac)
            elif re.fullmatch(r"\([0-9, ]+\)", fac):
                coeff = field(tuple(int(c) for c in fac[1:-1].split(",")))
            else:
                m = re.fullmatch(r"([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?", fac)
                if not m or m.group(1) not in variables:
                    raise ValueError(f"cannot parse factor {fac!r}")
                e[variables.index(m.group(1))] += int(m.group(2) or 1)
        key = tuple(e)
        terms[key] = field._add(terms.get(key, 0), _raw(field, coeff))
    # terms hold raw field indices, not integers mod p
    return MultiPoly._from_raw(field, variables, {e: c for e, c in terms.items() if c})


# --- division and gcd ---------------------------------------------------------

def _lead_lex(p: MultiPoly) -> Exp:
    return max(p.terms)


def divide_exact(f: MultiPoly, g: MultiPoly) -> MultiPoly | None:
    """Return q with f = q*g, or None if g does not divide f (lex division)."""
    if g.is_zero():
        raise FieldDivisionByZero("division by the zero polynomial")
    f, g = f._align(g)
    fld = f.field
    if g.is_constant():
        return f.scale(fld.element(fld._inv(next(iter(g.terms.values())))))
    lg = _lead_lex(g)
    inv_lc = fld._inv(g.terms[lg])
    rem = dict(f.terms)
    quot: dict[Exp, int] = {}
    while rem:
        lr = max(rem)
        if any(x < y for x, y in zip(lr, lg)):
            return None
        qe = tuple(x - y for x, y in zip(lr, lg))
        qc = fld._mul(rem[lr], inv_lc)
        quot[qe] = qc
        for e, c in g.terms.items():
            ne = tuple(x + y for x, y in zip(e, qe))
            s = fld._sub(rem.get(ne, 0), fld._mul(c, qc))
            if s:
                rem[ne] = s
            else:
                rem.pop(ne, None)
    return MultiPoly._from_raw(fld, f.variables, quot)


def _content_gcd(polys: Iterable[MultiPoly], variables) -> MultiPoly:
    g = None
    for c in polys:
        g = c if g is None else poly_gcd(g, c)
        if g.is_constant() and not g.is_zero():
            return MultiPoly.const(g.field, 1, variables)
    return g


def poly_gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Monic (graded-lex leading coefficient 1) gcd via recursive primitive PRS."""
    f, g = f._align(g)
    fld = f.field
    if f.is_zero():
        return _monic(g)
    if g.is_zero():
        return _monic(f)
    if f.is_constant() or g.is_constant():
        return MultiPoly.const(fld, 1, f.variables)
    used = set(f.used_variables()) | set(g.used_variables())
    vars_ = f.variables
    main = next(v for v in vars_ if v in used)
    rest = tuple(v for v in vars_ if v != main)
    fu, gu = f.as_poly_in(main), g.as_poly_in(main)
    if len(fu) == 1 and len(gu) == 1:
        # both pure powers of main times contents
        (df, cf), = fu.items()
        (dg, cg), = gu.items()
        c = poly_gcd(cf, cg).with_variables(vars_)
        return _monic(c * MultiPoly.var(fld, main, vars_) ** min(df, dg))
    cont_f = _content_gcd(fu.values(), rest)
    cont_g = _content_gcd(gu.values(), rest)
    cont = poly_gcd(cont_f, cont_g)
    a = _univ_primitive(fu, cont_f)
    b = _univ_primitive(gu, cont_g)
    if max(a) < max(b):
        a, b = b, a
    while b:
        r = _pseudo_rem(a, b)
        if not r:
            a = b
            break
        rc = _content_gcd(r.values(), rest)
        a, b = b, _univ_primitive(r, rc)
        if max(b) == 0:
            a = {0: MultiPoly.const(fld, 1, rest)}
            break
    xm = MultiPoly.var(fld, main, vars_)
    result = MultiPoly(fld, vars_)
    for d, c in a.items():
        result = result + c.with_variables(vars_) * xm**d
    return _monic(result * cont.with_variables(vars_))


def _univ_primitive(u: dict[int, MultiPoly], content: MultiPoly) -> dict[int, MultiPoly]:
    if content.is_constant():
        inv = content.constant_value().inverse()
        return {d: c.scale(inv) for d, c in u.items()}
    out = {}
    for d, c in u.items():
        q = divide_exact(c, content)
        assert q is not None
        out[d] = q
    return out


def _pseudo_rem(a: dict[int, MultiPoly], b: dict[int, MultiPoly]) -> dict[int, MultiPoly]:
    a = dict(a)
    db = max(b)
    lb = b[db]
    while a and max(a) >= db:
        da = max(a)
        la = a.pop(da)
        shift = da - db
        new = {d: c * lb for d, c in a.items()}
        for d, c in b.items():
            if d == db:
                continue
            key = d + shift
            val = new.get(key)
            t = c * la
            val = -t if val is None else val - t
            if val:
                new[key] = val
            else:
                new.pop(key, None)
        a = {d: c for d, c in new.items() if c}
    return a


def _monic(f: MultiPoly) -> MultiPoly:
    if f.is_zero():
        return f
    _, lc = f.leading_term()
    if lc == 1:
        return f
    return f.scale(lc.inverse())


class RatFun:
    """A reduced quotient of two polynomials."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, reduce: bool = True):
        if isinstance(num, RatFun) and den is None:
            self.num, self.den = num.num, num.den
            return
        if not isinstance(num, MultiPoly):
            if isinstance(den, MultiPoly):
                num = MultiPoly.const(den.field, num, den.variables)
            else:
                raise TypeError("RatFun needs at least one polynomial argument")
        if den is None:
            den = MultiPoly.const(num.field, 1, num.variables)
        elif not isinstance(den, MultiPoly):
            den = MultiPoly.const(num.field, den, num.variables)
        if den.is_zero():
            raise FieldDivisionByZero("rational function with zero denominator")
        num, den = num._align(den)
        if reduce:
            if num.is_zero():
                den = MultiPoly.const(num.field, 1, num.variables)
            elif not den.is_constant():
                g = poly_gcd(num, den)
                if not g.is_constant():
                    num = divide_exact(num, g)
                    den = divide_exact(den, g)
            _, lc = den.leading_term()
            if lc != 1:
                inv = lc.inverse()
                num, den = num.scale(inv), den.scale(inv)
        self.num, self.den = num, den

    @property
    def field(self) -> FieldSpec:
        return self.num.field

    @property
    def variables(self) -> tuple[str, ...]:
        return self.num.variables

    @staticmethod
    def _coerce(x, like: "RatFun") -> "RatFun":
        if isinstance(x, RatFun):
            return x
        if isinstance(x, MultiPoly):
            return RatFun(x, reduce=False) if True else None
        if isinstance(x, (int, FieldElement)):
            return RatFun(MultiPoly.const(like.field, x, like.variables), reduce=False)
        return NotImplemented

    def __add__(self, other):
        o = RatFun._coerce(other, self)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RatFun(self.num + o.num, self.den)
        g = poly_gcd(self.den, o.den)
        if g.is_constant():
            return RatFun(self.num * o.den + o.num * self.den, self.den * o.den)
        d1 = divide_exact(self.den, g)
        d2 = divide_exact(o.den, g)
        return RatFun(self.num * d2 + o.num * d1, d1 * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun._raw(-self.num, self.den)

    def __sub__(self, other):
        o = RatFun._coerce(other, self)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = RatFun._coerce(other, self)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = RatFun._coerce(other, self)
        if o is NotImplemented:
            return o
        # cross-cancel before multiplying keeps intermediate sizes small
        g1 = poly_gcd(self.num, o.den) if not o.den.is_constant() else None
        g2 = poly_gcd(o.num, self.den) if not self.den.is_constant() else None
        n1, d2 = self.num, o.den
        if g1 is not None and not g1.is_constant():
            n1, d2 = divide_exact(n1, g1), divide_exact(d2, g1)
        n2, d1 = o.num, self.den
        if g2 is not None and not g2.is_constant():
            n2, d1 = divide_exact(n2, g2), divide_exact(d1, g2)
        return RatFun(n1 * n2, d1 * d2, reduce=False)._renorm()

    __rmul__ = __mul__

    def _renorm(self) -> "RatFun":
        if self.num.is_zero():
            return RatFun._raw(self.num, MultiPoly.const(self.field, 1, self.variables))
        _, lc = self.den.leading_term()
        if lc != 1:
            inv = lc.inverse()
            return RatFun._raw(self.num.scale(inv), self.den.scale(inv))
        return self

    @classmethod
    def _raw(cls, num, den):
        obj = cls.__new__(cls)
        num, den = num._align(den)
        obj.num, obj.den = num, den
        return obj

    def inverse(self) -> "RatFun":
        if self.num.is_zero():
            raise FieldDivisionByZero("inverse of the zero rational function")
        return RatFun._raw(self.den, self.num)._renorm()

    def __truediv__(self, other):
        o = RatFun._coerce(other, self)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = RatFun._coerce(other, self)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int) -> "RatFun":
        if n < 0:
            return self.inverse() ** (-n)
        return RatFun._raw(self.num**n, self.den**n)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> MultiPoly:
        if not self.is_polynomial():
            raise ValueError("rational function has a nonconstant denominator")
        return self.num.scale(self.den.constant_value().inverse())

    def subs(self, values: Mapping[str, object]):
        n = self.num.subs(values)
        d = self.den.subs(values)
        return RatFun(n) / RatFun(d)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, FieldElement, MultiPoly)):
            other = RatFun._coerce(other, self)
        if not isinstance(other, RatFun):
            return NotImplemented
        # cross-multiplication is independent of how either side was normalized
        return (self.num * other.den - other.num * self.den).is_zero()

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def render(self) -> str:
        if self.den.is_constant():
            return self.as_poly().render()
        return f"({self.num.render()}) / ({self.den.render()})"

    def __str__(self) -> str:
        if self.den.is_constant():
            return str(self.as_poly())
        return f"({self.num}) / ({self.den})"

    def __repr__(self) -> str:
        return f"RatFun({self})"


def ratfun_ops(f: RatFun, g: RatFun, op: str):
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "div":
        return f / g
    if op == "eq":
        return f == g
    raise ValueError(f"unknown operation {op!r}")


def ring(p: int, names: Union[str, Sequence[str]]) -> tuple[MultiPoly, ...]:
    """Generators of F_p[names]; a convenience for tests and the certifier."""
    return MultiPoly.gens(make_field(p), names)


class FactoredFrac:
    """num / prod(f**e) with the denominator kept as a product of named factors.

    No gcd is ever computed: addition takes the factor-wise lcm and
    cancellation is exact trial division by the known factors, which keeps the
    long elimination chains in the certifier fast.  Equality is decided by
    cross-multiplication, so it does not depend on the factor bookkeeping.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: Mapping[MultiPoly, int] | None = None):
        self.num = num
        self.den = {f: e for f, e in (den or {}).items() if e}

    @classmethod
    def of(cls, value, like=None) -> "FactoredFrac":
        if isinstance(value, FactoredFrac):
            return value
        if isinstance(value, MultiPoly):
            return cls(value)
        if isinstance(value, RatFun):
            return cls(value.num) / cls(value.den)
        if like is None:
            raise TypeError("cannot lift a scalar without a reference polynomial")
        ref = like.num if isinstance(like, FactoredFrac) else like
        return cls(MultiPoly.const(ref.field, value, ref.variables))

    @property
    def field(self) -> FieldSpec:
        return self.num.field

    def _cancel(self) -> "FactoredFrac":
        num = self.num
        if num.is_zero():
            return FactoredFrac(num)
        den = dict(self.den)
        for f in list(den):
            while den[f]:
                q = divide_exact(num, f)
                if q is None:
                    break
                num = q
                den[f] -= 1
        return FactoredFrac(num, den)

    def denominator(self) -> MultiPoly:
        out = MultiPoly.const(self.field, 1, self.num.variables)
        for f, e in self.den.items():
            out = out * f**e
        return out

    def __add__(self, other):
        o = FactoredFrac.of(other, self)
        if not o.den and not self.den:
            return FactoredFrac(self.num + o.num)
        lcm = dict(self.den)
        for f, e in o.den.items():
            lcm[f] = max(lcm.get(f, 0), e)
        n1, n2 = self.num, o.num
        for f, e in lcm.items():
            if e - self.den.get(f, 0):
                n1 = n1 * f ** (e - self.den.get(f, 0))
            if e - o.den.get(f, 0):
                n2 = n2 * f ** (e - o.den.get(f, 0))
        return FactoredFrac(n1 + n2, lcm)._cancel()

    __radd__ = __add__

    def __neg__(self):
        return FactoredFrac(-self.num, self.den)

    def __sub__(self, other):
        return self + (-FactoredFrac.of(other, self))

    def __rsub__(self, other):
        return FactoredFrac.of(other, self) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return FactoredFrac(self.num * other, self.den)
        o = FactoredFrac.of(other, self)
        den = dict(self.den)
        for f, e in o.den.items():
            den[f] = den.get(f, 0) + e
        return FactoredFrac(self.num * o.num, den)._cancel()

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "FactoredFrac":
        if n < 0:
            return self.inverse() ** (-n)
        return FactoredFrac(self.num**n, {f: e * n for f, e in self.den.items()})

    def inverse(self, factors: Sequence[MultiPoly] = ()) -> "FactoredFrac":
        """1/self.  The old numerator is split over ``factors`` (and the old
        denominator factors) by trial division; any remainder becomes a new
        denominator factor."""
        if self.num.is_zero():
            raise FieldDivisionByZero("inverse of zero")
        rest = self.num
        den: dict[MultiPoly, int] = {}
        for f in list(self.den) + [_monic(f) for f in factors]:
            while not rest.is_constant():
                q = divide_exact(rest, f)
                if q is None:
                    break
                rest = q
                den[f] = den.get(f, 0) + 1
        if rest.is_constant():
            num = MultiPoly.const(self.field, rest.constant_value().inverse(), self.num.variables)
        else:
            lc = rest.leading_term()[1]
            num = MultiPoly.const(self.field, lc.inverse(), self.num.variables)
            m = rest.scale(lc.inverse())
            den[m] = den.get(m, 0) + 1
        for f, e in self.den.items():
            num = num * f**e
        return FactoredFrac(num, den)._cancel()

    def __truediv__(self, other):
        if isinstance(other, (int, FieldElement)):
            raw = _raw(self.field, other)
            return FactoredFrac(self.num.scale(self.field.element(self.field._inv(raw))), self.den)
        return self * FactoredFrac.of(other, self).inverse()

    def __rtruediv__(self, other):
        return FactoredFrac.of(other, self) * self.inverse()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFun):
            other = FactoredFrac(other.num) * FactoredFrac(other.den).inverse()
        try:
            o = FactoredFrac.of(other, self)
        except TypeError:
            return NotImplemented
        return (self - o).is_zero()

    __hash__ = None

    def subs(self, values: Mapping[str, object]) -> "FactoredFrac":
        out = FactoredFrac.of(self.num.subs(values))
        for f, e in self.den.items():
            out = out / FactoredFrac.of(f.subs(values)) ** e
        return out

    def to_ratfun(self) -> RatFun:
        return RatFun(self.num, self.denominator())

    def _den_parts(self, fmt):
        items = sorted(self.den.items(), key=lambda t: t[0].render())
        return " * ".join(f"({fmt(f)})" + (f"^{e}" if e > 1 else "") for f, e in items)

    def render(self) -> str:
        if not self.den:
            return self.num.render()
        return f"({self.num.render()}) / ({self._den_parts(MultiPoly.render)})"

    def __str__(self) -> str:
        if not self.den:
            return str(self.num)
        return f"({self.num}) / ({self._den_parts(str)})"

    __repr__ = __str__
