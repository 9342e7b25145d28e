"""Exhaustive searches for characterizing data and two-dimensional spaces.

Everything is enumerated in a fixed order and results are canonical-sorted
before they are returned, so the output never depends on the shard count or
on the number of worker processes.
"""

from __future__ import annotations

import multiprocessing
import os
import signal
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterator, Sequence

from .datum import CharacterizingDatum, ResidueTuple, residue_type, verify_datum
from .errors import DegenerateOrbit, ResidueSumNonzero, ResourceLimit
from .field import FieldElement, FieldSpec, enumerate_field, make_field
from .lspace import LSpaceCandidate, admissible_types, verify_lspace
from .symfun import elementary_all, roots_in_field
from .poly import MultiPoly

BUDGET_ENV = "LDFORMS_NODE_BUDGET"
DEFAULT_BUDGET = 2_000_000
FIELD_CEILING = 3**6
INTERRUPTED = "interrupted"


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV} must be a positive integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError(f"{BUDGET_ENV} must be a positive integer, got {raw!r}")
    return value


# -- normalization ------------------------------------------------------------

def _datum_key(pairs) -> tuple:
    return tuple(sorted((x.index, h) for x, h in pairs))


def _datum_images(d: CharacterizingDatum):
    """Affine images of d drawn from an orbit-invariant finite family."""
    spec, p = d.spec, d.spec.p
    poles = d.poles
    n = len(poles)
    if n % p:
        shift = spec.zero
        for x in poles:
            shift = shift + x
        shift = shift / n
        centred = [x - shift for x in poles]
        for y in centred:
            if not y.is_zero():
                inv = y.inverse()
                yield [((x - shift) * inv, h) for x, h in d.pairs]
    else:
        for y0 in poles:
            for y1 in poles:
                if y1 != y0:
                    inv = (y1 - y0).inverse()
                    yield [((x - y0) * inv, h) for x, h in d.pairs]


def normalize_datum(d: CharacterizingDatum) -> CharacterizingDatum:
    """Canonical representative of the affine orbit of d.

    When p does not divide the number of poles the poles are first centred
    (their sum becomes 0); otherwise two poles are sent to 0 and 1.  Among the
    resulting images the one with the smallest sorted pair list wins.
    """
    best = None
    for image in _datum_images(d):
        key = _datum_key(image)
        if best is None or key < best[0]:
            best = (key, image)
    if best is None:
        raise DegenerateOrbit("all poles coincide; no normalization exists")
    return CharacterizingDatum(d.spec, tuple(sorted(best[1], key=lambda t: (t[0].index, t[1]))))


def _map_candidate(c: LSpaceCandidate, alpha: FieldElement, beta: FieldElement) -> LSpaceCandidate:
    f = lambda x: alpha * x + beta  # noqa: E731
    scale = alpha ** (c.m_plus_1 - 1)
    sets = tuple(tuple(sorted((f(x) for x in s), key=lambda y: y.index)) for s in c.pole_sets)
    return LSpaceCandidate(c.p, c.lam, c.spec, sets,
                           {f(x): h for x, h in c.r1.items()}, {f(x): h for x, h in c.r2.items()},
                           c.u * scale, c.v * scale)


def normalize_lspace(c: LSpaceCandidate) -> LSpaceCandidate:
    """Same idea as for data, driven by X^(0): centre it (or send two of its
    poles to 0, 1 when p | lam) and send one of its poles to 1."""
    spec = c.spec
    X0 = list(c.pole_sets[0])
    maps = []
    if c.lam % c.p:
        s = spec.zero
        for x in X0:
            s = s + x
        shift = s / c.lam
        for y in X0:
            if y != shift:
                inv = (y - shift).inverse()
                maps.append((inv, -shift * inv))
    else:
        for y0 in X0:
            for y1 in X0:
                if y1 != y0:
                    inv = (y1 - y0).inverse()
                    maps.append((inv, -y0 * inv))
    if not maps:
        raise DegenerateOrbit("X0 is a single point; no normalization exists")
    images = [_map_candidate(c, al, be) for al, be in maps]
    return min(images, key=lambda img: img.key())


def normalize(obj):
    if isinstance(obj, CharacterizingDatum):
        return normalize_datum(obj)
    if isinstance(obj, LSpaceCandidate):
        return normalize_lspace(obj)
    raise TypeError(f"cannot normalize {type(obj).__name__}")


# -- datum search -------------------------------------------------------------

@dataclass
class SearchOptions:
    budget: int | None = None
    shards: int = 1
    workers: int = 1
    field_ceiling: int = FIELD_CEILING
    use_type_constraints: bool = True
    resume: dict[int, tuple] | None = None

    def node_budget(self) -> int:
        return self.budget if self.budget is not None else default_budget()


def search_datum(p: int, spec: FieldSpec, h: ResidueTuple | Sequence[int],
                 opts: SearchOptions | None = None) -> list[CharacterizingDatum]:
    """Every valid datum with residues h, one canonical form per affine orbit.

    The affine group is 2-transitive, so x_0 = 0 and x_1 = 1 lose nothing.
    Poles x_2 .. x_{m-1} are enumerated and x_m is solved from the first
    moment equation, which is linear in it.
    """
    opts = opts or SearchOptions()
    if not isinstance(h, ResidueTuple):
        h = ResidueTuple(tuple(h), p)
    if spec.p != p:
        raise ValueError("residue prime and field characteristic differ")
    if h.total:
        raise ResidueSumNonzero(f"residue sum is {h.total}, not 0")
    if spec.order > opts.field_ceiling:
        raise ResourceLimit(f"{spec} exceeds the field-size ceiling {opts.field_ceiling}")
    n = len(h)
    if n > spec.order:
        return []
    budget = opts.node_budget()
    res = list(h.h)
    elems = list(enumerate_field(spec))
    found: dict[tuple, CharacterizingDatum] = {}
    nodes = 0

    def finish(poles: list[FieldElement]) -> None:
        d = CharacterizingDatum(spec, tuple(zip(poles, res)))
        if verify_datum(d).valid:
            c = normalize_datum(d)
            found.setdefault(_datum_key(c.pairs), c)

    if n == 2:
        finish([spec.zero, spec.one])
    else:
        m = n - 1
        inv_last = spec(res[m]).inverse()

        def extend(poles: list[FieldElement], used: set[FieldElement], partial: FieldElement) -> None:
            nonlocal nodes
            nodes += 1
            if nodes > budget:
                raise ResourceLimit(f"node budget {budget} exhausted")
            if len(poles) == m:
                # first moment: partial + h_m x_m = 0
                last = -partial * inv_last
                if last not in used:
                    finish(poles + [last])
                return
            hi = res[len(poles)]
            for x in elems:
                if x not in used:
                    used.add(x)
                    extend(poles + [x], used, partial + x * hi)
                    used.discard(x)

        start = [spec.zero, spec.one]
        extend(start, set(start), spec.one * res[1])
    return [found[k] for k in sorted(found)]


def brute_force_data(p: int, spec: FieldSpec, h: Sequence[int]) -> list[CharacterizingDatum]:
    """All pole tuples filtered by verify_datum, normalized (test oracle)."""
    out = {}
    for poles in product(list(enumerate_field(spec)), repeat=len(h)):
        d = CharacterizingDatum(spec, tuple(zip(poles, h)))
        if verify_datum(d).valid:
            c = normalize_datum(d)
            out.setdefault(_datum_key(c.pairs), c)
    return [out[k] for k in sorted(out)]


# -- L-space search -----------------------------------------------------------

@dataclass
class ShardResult:
    shard: int
    candidates: list[LSpaceCandidate] = field(default_factory=list)
    nodes: int = 0
    last: tuple | None = None
    complete: bool = False
    error: str | None = None


def _sum(values, zero):
    s = zero
    for v in values:
        s = s + v
    return s


def _x0_sets(spec: FieldSpec, lam: int, elems: list[FieldElement]) -> Iterator[tuple[tuple, list]]:
    """Normalized X^(0) choices with their cursor keys."""
    one, zero = spec.one, spec.zero
    if lam == 1:
        # centring leaves the single pole at 0 and no scale to fix
        yield (), [zero]
    elif lam % spec.p:
        # contains 1, sum 0; the last pole is forced and must exceed the others
        rest = [x for x in elems if x != one]
        for free in combinations(rest, lam - 2):
            last = -(one + _sum(free, zero))
            if last == one or last in free or (free and last.index <= free[-1].index):
                continue
            yield tuple(x.index for x in free), sorted([one, *free, last], key=lambda y: y.index)
    else:
        rest = [x for x in elems if x != one and x != zero]
        for free in combinations(rest, lam - 2):
            yield tuple(x.index for x in free), sorted([zero, one, *free], key=lambda y: y.index)


def _x3_sets(spec: FieldSpec, lam: int, target: FieldElement, avoid: set, elems: list[FieldElement]):
    """lam-subsets with the given first symmetric function avoiding ``avoid``."""
    pool = [x for x in elems if x not in avoid]
    if lam == 1:
        if target not in avoid:
            yield (target.index,), [target]
        return
    for free in combinations(pool, lam - 1):
        last = target - _sum(free, spec.zero)
        if last in avoid or last in free or last.index <= free[-1].index:
            continue
        yield tuple(x.index for x in free), list(free) + [last]


def _split_distinct(S: list[FieldElement], spec: FieldSpec, lam: int) -> list[FieldElement] | None:
    coeffs = [S[lam - i] * (-1) ** (lam - i) for i in range(lam + 1)]
    poly = MultiPoly.from_univariate(spec, coeffs)
    roots = roots_in_field(poly, spec, limit=spec.order)
    if len(roots) != lam or any(mult != 1 for _, mult in roots):
        return None
    return [r for r, _ in roots]


def _residue_choices(lam: int, p: int, types) -> list[tuple[int, ...]]:
    out = []
    for combo in product(range(1, p), repeat=lam):
        if types is None or residue_type(combo, p) in types:
            out.append(combo)
    return out


def _assign_residues(spec: FieldSpec, lam: int, sets: list[list[FieldElement]], a: FieldElement,
                     use_types: bool) -> Iterator[LSpaceCandidate]:
    p = spec.p
    types = admissible_types(lam) if (use_types and p == 3) else None
    choices = _residue_choices(lam, p, types)
    # sign normalization: w2 has residue 1 at the first pole of X^(0), w1 has
    # residue 1 at the first pole of X^(p)
    first = [c for c in choices if c[0] == 1]
    per_set = [first] + [choices] * (p - 1) + [first]
    for hs in product(*per_set):
        r1: dict = {}
        r2: dict = {}
        for j, (s, h) in enumerate(zip(sets, hs)):
            for x, hx in zip(s, h):
                if j == 0:
                    r2[x] = hx
                elif j == p:
                    r1[x] = hx
                else:
                    # per-set residue is w1's; w1 + j*w2 vanishes here
                    r1[x] = hx
                    r2[x] = (-hx * pow(j, -1, p)) % p
        if use_types is False or types is None:
            # cheap necessary condition before the full verifier: residue sums
            if sum(r1.values()) % p or sum(r2.values()) % p:
                continue
        m = lam * p - 1
        u = _sum((x**m * h for x, h in r1.items()), spec.zero)
        v = _sum((x**m * h for x, h in r2.items()), spec.zero)
        if u.is_zero() or v.is_zero() or u / v != a:
            continue
        cand = LSpaceCandidate(p, lam, spec, tuple(tuple(s) for s in sets), r1, r2, u, v)
        if verify_lspace(cand).passed:
            yield cand


def _expand(spec: FieldSpec, lam: int, a: FieldElement, inv: list, X0: list, S0: list, X3: list,
            use_types: bool) -> list[LSpaceCandidate]:
    p = spec.p
    S3 = elementary_all(X3, spec.one)
    sets = [X0]
    taken = set(X0) | set(X3)
    for j in range(1, p):
        Sj = [(a * s0 + s3 * j) * inv[j] for s0, s3 in zip(S0, S3)]
        roots = _split_distinct(Sj, spec, lam)
        if roots is None or taken & set(roots):
            return []
        taken |= set(roots)
        sets.append(sorted(roots, key=lambda y: y.index))
    sets.append(sorted(X3, key=lambda y: y.index))
    return list(_assign_residues(spec, lam, sets, a, use_types))


def _run_shard(lam: int, k_max: int, shard: int, shards: int, budget: int, ceiling: int,
               use_types: bool, resume: tuple | None) -> ShardResult:
    """One shard of the L-space enumeration.

    Cursors (k, a, X0 key, X3 key) increase strictly along the enumeration,
    and ``last`` only advances once a cursor's candidates are recorded, so a
    run stopped by the budget or by Ctrl-C resumes from ``last`` losslessly.
    """
    out = ShardResult(shard, last=resume)
    p = 3
    try:
        for k in range(1, k_max + 1):
            if p**k > ceiling:
                raise ResourceLimit(f"F_{p}^{k} exceeds the field-size ceiling {ceiling}")
            spec = make_field(p, k)
            if (p + 1) * lam > spec.order:
                continue
            elems = list(enumerate_field(spec))
            a_values = [a for a in elems if not a.in_prime_field()]
            for pos, a in enumerate(a_values):
                if pos % shards != shard:
                    continue
                if resume is not None and (k, a.index) < resume[:2]:
                    continue
                inv = [(a + j).inverse() for j in range(p)]
                for key0, X0 in _x0_sets(spec, lam, elems):
                    S0 = elementary_all(X0, spec.one)
                    for key3, X3 in _x3_sets(spec, lam, S0[1], set(X0), elems):
                        cursor = (k, a.index, key0, key3)
                        if resume is not None and cursor <= resume:
                            continue
                        if _STOP is not None and _STOP.is_set():
                            raise KeyboardInterrupt
                        if out.nodes >= budget:
                            raise ResourceLimit(f"node budget {budget} exhausted")
                        out.nodes += 1
                        out.candidates.extend(_expand(spec, lam, a, inv, X0, S0, X3, use_types))
                        out.last = cursor
        out.complete = True
    except ResourceLimit as exc:
        out.error = str(exc)
    except KeyboardInterrupt:
        out.error = INTERRUPTED
    return out


_STOP = None


def _worker_init(stop) -> None:
    # workers stop through the shared event, so they finish their cursor cleanly
    global _STOP
    _STOP = stop
    signal.signal(signal.SIGINT, signal.SIG_IGN)


def run_lspace_shards(lam: int, k_max: int, opts: SearchOptions | None = None) -> list[ShardResult]:
    """Run every shard; results are returned even when a shard stops early.

    After Ctrl-C the remaining shards are not started and come back
    incomplete with their resume cursor, ready for a checkpoint.
    """
    opts = opts or SearchOptions()
    if lam < 1 or k_max < 1:
        raise ValueError("lambda and k_max must be >= 1")
    if opts.shards < 1 or opts.workers < 1:
        raise ValueError("shards and workers must be >= 1")
    if 3**k_max > opts.field_ceiling:
        raise ResourceLimit(f"F_3^{k_max} exceeds the field-size ceiling {opts.field_ceiling}")
    budget = opts.node_budget()
    resume = opts.resume or {}
    args = [(lam, k_max, s, opts.shards, budget, opts.field_ceiling, opts.use_type_constraints,
             resume.get(s)) for s in range(opts.shards)]
    pending = {s: ShardResult(s, last=resume.get(s), error=INTERRUPTED) for s in range(opts.shards)}
    if opts.workers > 1 and opts.shards > 1:
        manager = multiprocessing.Manager()
        stop = manager.Event()
        pool = multiprocessing.Pool(min(opts.workers, opts.shards), initializer=_worker_init, initargs=(stop,))
        try:
            jobs = [pool.apply_async(_run_shard, a) for a in args]
            results = []
            try:
                for job in jobs:
                    results.append(job.get())
            except KeyboardInterrupt:
                stop.set()
                results = []
                for i, job in enumerate(jobs):
                    try:
                        results.append(job.get(timeout=60))
                    except Exception:
                        results.append(pending[i])
            return results
        finally:
            pool.terminate()
            pool.join()
            manager.shutdown()
    results = []
    for a in args:
        r = _run_shard(*a)
        results.append(r)
        if r.error == INTERRUPTED:
            results.extend(pending[s] for s in range(len(results), opts.shards))
            break
    return results


def merge_shards(results: Sequence[ShardResult]) -> list[LSpaceCandidate]:
    seen: dict[tuple, LSpaceCandidate] = {}
    for r in results:
        for c in r.candidates:
            n = normalize_lspace(c)
            assert verify_lspace(n).passed, "search emitted a candidate its verifier rejects"
            seen.setdefault(n.key(), n)
    return [seen[k] for k in sorted(seen)]


def search_lspace(lam: int, k_max: int, opts: SearchOptions | None = None) -> list[LSpaceCandidate]:
    """Candidates over F_{3^k}, k <= k_max, each passing verify_lspace.

    X^(1) and X^(2) are not enumerated: they are the root sets of
    (a P^(0) + j P^(3)) / (a + j), and a candidate survives only when those
    split into distinct roots away from the other sets.  Raises ResourceLimit
    if any shard runs out of budget.
    """
    results = run_lspace_shards(lam, k_max, opts)
    for r in results:
        if r.error == INTERRUPTED:
            raise KeyboardInterrupt
        if r.error:
            raise ResourceLimit(f"shard {r.shard}: {r.error}")
    return merge_shards(results)


__all__ = [
    "BUDGET_ENV", "DEFAULT_BUDGET", "FIELD_CEILING", "INTERRUPTED", "default_budget", "normalize", "normalize_datum",
    "normalize_lspace", "SearchOptions", "search_datum", "brute_force_data", "ShardResult",
    "run_lspace_shards", "merge_shards", "search_lspace",
]
