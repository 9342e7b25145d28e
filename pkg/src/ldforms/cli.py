"""Command-line front end.

Exit codes: 0 valid / found / verified, 1 invalid / empty / negative answer,
2 usage or parse error, 3 resource limit or interrupted search.  With
``--expect negative`` the codes 0 and 1 swap, so a run whose expected answer
is "no" can gate CI.
"""

from __future__ import annotations

import argparse
import sys
from itertools import product
from pathlib import Path
from typing import Sequence

from . import certify as cert
from .datum import CharacterizingDatum, ResidueTuple, verify_datum
from .errors import LDFormsError, ParseError, ResourceLimit
from .field import make_field
from .formats import (Checkpoint, parse_checkpoint, parse_datum_file, serialize_checkpoint, serialize_datum,
                      serialize_lspace)
from .lspace import LSpaceCandidate, admissible_types, verify_lspace
from .partition import block_structure, partition_condition, witness_partition
from .search import INTERRUPTED, SearchOptions, default_budget, merge_shards, run_lspace_shards, search_datum

OK, NEGATIVE, USAGE, RESOURCE = 0, 1, 2, 3
DEFAULT_CHECKPOINT = "ldforms.ckpt"


class UsageError(Exception):
    pass


class _Out:
    def __init__(self, machine: bool, stream):
        self.machine = machine
        self.stream = stream

    def human(self, text: str) -> None:
        if not self.machine:
            print(text, file=self.stream)

    def record(self, *fields) -> None:
        if self.machine:
            print(" ".join(str(f) for f in fields), file=self.stream)

    def both(self, text: str, *fields) -> None:
        self.human(text)
        self.record(*fields)


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t != ""]
    except ValueError:
        raise UsageError(f"expected a comma-separated integer list, got {text!r}") from None


def _residues(p: int, text: str) -> ResidueTuple:
    values = _int_list(text)
    if not values:
        raise UsageError("empty residue list")
    try:
        return ResidueTuple(tuple(v % p for v in values), p)
    except (ValueError, LDFormsError) as exc:
        raise UsageError(str(exc)) from None


def _budget(args) -> int:
    if args.budget is not None:
        if args.budget < 1:
            raise UsageError("--budget must be positive")
        return args.budget
    try:
        return default_budget()
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _positive(name: str, value: int) -> None:
    if value < 1:
        raise UsageError(f"{name} must be positive")


# -- subcommands ---------------------------------------------------------------------

def cmd_verify_datum(args, out: _Out) -> int:
    d = parse_datum_file(args.file)
    if not isinstance(d, CharacterizingDatum):
        raise UsageError("expected a datum file; use verify-space for L-space files")
    v = verify_datum(d)
    if v.valid:
        out.both(f"valid, u = {v.u}", "valid", "u", v.u.index)
        return OK
    out.human("invalid: " + "; ".join(v.violations))
    out.record("invalid")
    for msg in v.violations:
        out.record("violation", msg)
    return NEGATIVE


def cmd_verify_space(args, out: _Out) -> int:
    c = parse_datum_file(args.file)
    if not isinstance(c, LSpaceCandidate):
        raise UsageError("expected an L-space file; use verify-datum for data")
    r = verify_lspace(c)
    out.both("valid L-space" if r.passed else "invalid L-space", "valid" if r.passed else "invalid")
    for name in sorted(r.clauses):
        ok = "pass" if r.clauses[name] else "fail"
        out.both(f"  {name}: {ok}", "clause", name, ok)
    for msg in r.messages:
        out.both(f"  {msg}", "message", msg)
    return OK if r.passed else NEGATIVE


def cmd_partition(args, out: _Out) -> int:
    h = _residues(args.p, args.h)
    if h.total:
        raise UsageError(f"residue sum is {h.total} mod {args.p}, not 0")
    if partition_condition(h):
        w = witness_partition(h)
        blocks = [sorted(b) for b in w.blocks]
        out.both(f"partition condition holds; witness {blocks}", "holds",
                 " ".join(",".join(map(str, b)) for b in blocks))
        return OK
    out.both("partition condition fails", "fails")
    return NEGATIVE


def cmd_block_structure(args, out: _Out) -> int:
    h = _residues(args.p, args.h)
    try:
        blocks = block_structure(h)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if blocks is None:
        out.both("no constant-block structure", "none")
        return NEGATIVE
    out.both(f"blocks {blocks}", "blocks", " ".join(",".join(map(str, b)) for b in blocks))
    return OK


def _write_many(directory: str | None, stem: str, texts: list[str]) -> None:
    if directory is None:
        return
    path = Path(directory)
    path.mkdir(parents=True, exist_ok=True)
    for i, text in enumerate(texts, start=1):
        (path / f"{stem}_{i:03d}.txt").write_text(text, encoding="utf-8")


def cmd_search_datum(args, out: _Out) -> int:
    _positive("--k", args.k)
    spec = make_field(args.p, args.k)
    h = _residues(args.p, args.h)
    if h.total:
        raise UsageError(f"residue sum is {h.total} mod {args.p}, not 0")
    found = search_datum(args.p, spec, h, SearchOptions(budget=_budget(args)))
    out.both(f"{len(found)} canonical data over {spec}", "count", len(found))
    for d in found:
        pairs = " ".join(f"{x.index}:{r}" for x, r in d.pairs)
        out.human("  " + ", ".join(f"{x} -> {r}" for x, r in d.pairs))
        out.record("datum", pairs)
    _write_many(args.out, "datum", [serialize_datum(d) for d in found])
    return OK if found else NEGATIVE


def cmd_search_space(args, out: _Out) -> int:
    _positive("--lambda", args.lam)
    _positive("--kmax", args.kmax)
    _positive("--shards", args.shards)
    _positive("--workers", args.workers)
    use_types = not args.all_residues
    carried: dict[int, list] = {}
    resume = None
    if args.resume:
        cp = parse_checkpoint(Path(args.resume).read_text(encoding="utf-8"))
        if (cp.lam, cp.k_max, cp.shards, cp.use_type_constraints) != (args.lam, args.kmax, args.shards, use_types):
            raise UsageError("checkpoint was written for different --lambda/--kmax/--shards/--all-residues")
        resume = cp.resume_map()
        carried = {r.shard: list(r.candidates) for r in cp.results}
    opts = SearchOptions(budget=_budget(args), shards=args.shards, workers=args.workers,
                         use_type_constraints=use_types, resume=resume)
    results = run_lspace_shards(args.lam, args.kmax, opts)
    for r in results:
        r.candidates = carried.get(r.shard, []) + r.candidates
        if resume and resume.get(r.shard) == (args.kmax + 1,):
            r.complete, r.error = True, None
    stopped = [r for r in results if not r.complete]
    if stopped:
        path = args.checkpoint or DEFAULT_CHECKPOINT
        Path(path).write_text(serialize_checkpoint(Checkpoint(args.lam, args.kmax, args.shards, use_types,
                                                              results)), encoding="utf-8")
        reason = "interrupted" if any(r.error == INTERRUPTED for r in stopped) else stopped[0].error
        out.both(f"search stopped ({reason}); checkpoint written to {path}", "stopped", path)
        return RESOURCE
    found = merge_shards(results)
    out.both(f"{len(found)} candidates for lambda = {args.lam}, k <= {args.kmax}", "count", len(found))
    for c in found:
        out.human(f"  F_3^{c.spec.k}, a = {c.a}: " + " | ".join(
            ", ".join(str(x) for x in s) for s in c.pole_sets))
        out.record("candidate", c.spec.k, c.a.index,
                   " | ".join(",".join(str(x.index) for x in s) for s in c.pole_sets))
    _write_many(args.out, "space", [serialize_lspace(c) for c in found])
    return OK if found else NEGATIVE


def cmd_certify(args, out: _Out) -> int:
    fmt = "machine" if out.machine else "text"
    if args.step:
        try:
            report = cert.certify_step(args.step)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    else:
        report = cert.certify_thm313()
    text = cert.render_certificate(report, fmt)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    out.stream.write(text)
    if args.step and args.step != cert.PIPELINE_PREFIX:
        return OK if report.all_verified else NEGATIVE
    return OK if report.conclusion == cert.RESULT_OK else NEGATIVE


def _types(p: int, lam: int):
    for counts in product(range(lam + 1), repeat=p - 1):
        if sum(counts) == lam:
            yield tuple(counts)


def cmd_enumerate_types(args, out: _Out) -> int:
    _positive("--lambda", args.lam)
    try:
        make_field(args.p)
    except LDFormsError as exc:
        raise UsageError(str(exc)) from None
    allowed = admissible_types(args.lam) if args.p == 3 else None
    n_ok = 0
    for t in sorted(_types(args.p, args.lam), reverse=True):
        if allowed is None:
            status = "unconstrained"
        elif t in allowed:
            status = "admissible"
        elif args.lam in t:
            status = "excluded (one residue value on the whole set)"
        else:
            status = "excluded"
        n_ok += not status.startswith("excluded")
        out.both(f"{t}: {status}", "type", ",".join(map(str, t)), status.split()[0])
    return OK if n_ok else NEGATIVE


# -- parser ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("human", "machine"), default="human")
    common.add_argument("--expect", choices=("positive", "negative"), default="positive",
                        help="with 'negative', exit 0 when the answer is no and 1 when it is yes")
    parser = _Parser(prog="ldforms", description="Logarithmic differential forms in characteristic p.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify-datum", parents=[common], help="check a datum file")
    p.add_argument("file")
    p.set_defaults(run=cmd_verify_datum)

    p = sub.add_parser("verify-space", parents=[common], help="check an L-space file")
    p.add_argument("file")
    p.set_defaults(run=cmd_verify_space)

    for name, run in (("partition", cmd_partition), ("block-structure", cmd_block_structure)):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--h", required=True, help="comma-separated residues, e.g. 1,1,-1,-1")
        p.set_defaults(run=run)

    p = sub.add_parser("search-datum", parents=[common], help="all data with given residues, up to affine maps")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--h", required=True)
    p.add_argument("--budget", type=int)
    p.add_argument("--out", help="directory for one datum file per result")
    p.set_defaults(run=cmd_search_datum)

    p = sub.add_parser("search-space", parents=[common], help="two-dimensional spaces at p = 3")
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--budget", type=int)
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--all-residues", action="store_true", help="do not restrict residue types")
    p.add_argument("--checkpoint", help=f"where to write a checkpoint (default {DEFAULT_CHECKPOINT})")
    p.add_argument("--resume", help="continue from a checkpoint file")
    p.add_argument("--out", help="directory for one L-space file per result")
    p.set_defaults(run=cmd_search_space)

    p = sub.add_parser("certify", parents=[common], help="run the certificate for L_{15,2} at p = 3")
    p.add_argument("--step", help="run one step: " + ", ".join(cert.step_names()))
    p.add_argument("--out", help="also write the certificate to this file")
    p.set_defaults(run=cmd_certify)

    p = sub.add_parser("enumerate-types", parents=[common], help="residue types of a pole set of size lambda")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.set_defaults(run=cmd_enumerate_types)
    return parser


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    out = _Out(args.format == "machine", stdout)
    try:
        code = args.run(args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=stderr)
        return USAGE
    except OSError as exc:
        print(f"error: {exc}", file=stderr)
        return USAGE
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=stderr)
        return RESOURCE
    except KeyboardInterrupt:
        print("interrupted", file=stderr)
        return RESOURCE
    except LDFormsError as exc:
        print(f"error: {exc}", file=stderr)
        return USAGE
    if args.expect == "negative" and code in (OK, NEGATIVE):
        code = NEGATIVE if code == OK else OK
    return code


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
