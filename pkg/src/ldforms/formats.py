"""Text formats for data, L-space candidates and search checkpoints.

All three share one line-oriented layout: ``[section]`` headers followed by
``key = value`` lines or record lines.  ``#`` starts a comment and blank lines
are ignored.  Serializers emit a canonical form, and parsing canonical text
then serializing gives back the same bytes.  FORMATS.md has the grammars.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .datum import CharacterizingDatum
from .errors import ParseError
from .field import FieldElement, FieldSpec, is_irreducible, is_prime, make_field
from .lspace import LSpaceCandidate
from .search import ShardResult

DONE = "done"


@dataclass
class _Line:
    no: int
    text: str
    indent: int


@dataclass
class _Section:
    name: str
    line: int
    body: list[_Line] = field(default_factory=list)


_HEADER = re.compile(r"\[([A-Za-z0-9_ ]+)\]\s*$")
_INT = re.compile(r"\d+")
_TUPLE = re.compile(r"\(\s*(.*?)\s*\)")


def _sections(text: str, allowed) -> dict[str, _Section]:
    out: dict[str, _Section] = {}
    current = None
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        stripped = body.lstrip()
        if not stripped:
            continue
        indent = len(body) - len(stripped)
        m = _HEADER.match(stripped)
        if m:
            name = m.group(1).strip()
            if not allowed(name):
                raise ParseError(f"unknown section [{name}]", no, indent + 1)
            if name in out:
                raise ParseError(f"duplicate section [{name}]", no, indent + 1)
            current = out[name] = _Section(name, no)
            continue
        if stripped.startswith("["):
            raise ParseError("malformed section header", no, indent + 1)
        if current is None:
            raise ParseError("content before the first section", no, indent + 1)
        current.body.append(_Line(no, stripped, indent))
    return out


def _need(sections: dict[str, _Section], name: str, last_line: int) -> _Section:
    if name not in sections:
        raise ParseError(f"missing section [{name}]", last_line, 1)
    return sections[name]


def _keyvals(sec: _Section, keys: tuple[str, ...]) -> dict[str, tuple[str, int, int]]:
    """key -> (value, line, column of value)."""
    out: dict[str, tuple[str, int, int]] = {}
    for ln in sec.body:
        if "=" not in ln.text:
            raise ParseError("expected 'key = value'", ln.no, ln.indent + 1)
        key, _, value = ln.text.partition("=")
        key = key.strip()
        if key not in keys:
            raise ParseError(f"unknown field '{key}' in [{sec.name}]", ln.no, ln.indent + 1)
        if key in out:
            raise ParseError(f"duplicate field '{key}' in [{sec.name}]", ln.no, ln.indent + 1)
        col = ln.indent + ln.text.index("=") + 2 + (len(value) - len(value.lstrip()))
        out[key] = (value.strip(), ln.no, col)
    for key in keys:
        if key not in out:
            raise ParseError(f"missing field '{key}' in [{sec.name}]", sec.line, 1)
    return out


def _int(value: str, line: int, col: int, what: str) -> int:
    if not _INT.fullmatch(value):
        raise ParseError(f"{what} must be a nonnegative integer", line, col)
    return int(value)


def _coeffs(value: str, line: int, col: int, p: int, length: int | None, what: str) -> tuple[int, ...]:
    m = _TUPLE.fullmatch(value)
    if not m:
        raise ParseError(f"{what} must be a parenthesized tuple", line, col)
    inner = m.group(1)
    if not inner:
        raise ParseError(f"{what} is empty", line, col)
    out = []
    offset = col + value.index("(") + 1
    pos = 0
    for part in inner.split(","):
        token = part.strip()
        tcol = offset + pos + (len(part) - len(part.lstrip()))
        if not _INT.fullmatch(token):
            raise ParseError(f"{what} entries must be integers", line, tcol)
        c = int(token)
        if c >= p:
            raise ParseError("coefficient not reduced", line, tcol)
        out.append(c)
        pos += len(part) + 1
    if length is not None and len(out) != length:
        raise ParseError(f"{what} needs {length} coefficients, got {len(out)}", line, col)
    return tuple(out)


def _fmt_tuple(values) -> str:
    return "(" + ", ".join(str(v) for v in values) + ")"


def _fmt_elem(x: FieldElement) -> str:
    return _fmt_tuple(x.coeffs)


def _field_section(sections: dict[str, _Section], last: int) -> FieldSpec:
    sec = _need(sections, "field", last)
    kv = _keyvals(sec, ("p", "k", "modulus"))
    p = _int(*kv["p"], "p")
    if not is_prime(p):
        raise ParseError(f"p = {p} is not prime", kv["p"][1], kv["p"][2])
    k = _int(*kv["k"], "k")
    if k < 1:
        raise ParseError("k must be at least 1", kv["k"][1], kv["k"][2])
    mod = _coeffs(*kv["modulus"], p, k + 1, "modulus")
    if mod[-1] != 1:
        raise ParseError("modulus must be monic", kv["modulus"][1], kv["modulus"][2])
    if not is_irreducible(mod, p):
        raise ParseError("modulus is not irreducible", kv["modulus"][1], kv["modulus"][2])
    return make_field(p, k, mod)


def _field_text(spec: FieldSpec) -> list[str]:
    return ["[field]", f"p = {spec.p}", f"k = {spec.k}", f"modulus = {_fmt_tuple(spec.modulus)}"]


_RECORD = re.compile(r"pole\s*=\s*(\([^)]*\))\s*,\s*(.*)$")


def _record(ln: _Line, spec: FieldSpec, keys: tuple[str, ...], allow_zero: bool):
    m = _RECORD.match(ln.text)
    if not m:
        raise ParseError("expected 'pole = (c_0, ..., c_{k-1}), " + ", ".join(f"{k} = h" for k in keys) + "'",
                         ln.no, ln.indent + 1)
    pole = spec(_coeffs(m.group(1), ln.no, ln.indent + 1 + m.start(1), spec.p, spec.k, "pole"))
    rest = m.group(2)
    base = ln.indent + 1 + m.start(2)
    parts = rest.split(",")
    if len(parts) != len(keys):
        raise ParseError(f"expected fields {', '.join(keys)} after the pole", ln.no, base)
    values = []
    pos = 0
    for key, part in zip(keys, parts):
        col = base + pos + (len(part) - len(part.lstrip()))
        name, eq, value = part.partition("=")
        if not eq or name.strip() != key:
            raise ParseError(f"expected '{key} = h'", ln.no, col)
        vcol = col + part.strip().index("=") + 1 + (len(value) - len(value.lstrip()))
        value = value.strip()
        if not _INT.fullmatch(value):
            raise ParseError(f"{key} must be an integer in 0..p-1", ln.no, vcol)
        h = int(value)
        if h >= spec.p:
            raise ParseError(f"{key} not reduced mod p", ln.no, vcol)
        if h == 0 and not allow_zero:
            raise ParseError(f"{key} must be nonzero mod p", ln.no, vcol)
        values.append(h)
        pos += len(part) + 1
    return pole, values


# -- data -------------------------------------------------------------------

def parse_datum(text: str) -> CharacterizingDatum:
    sections = _sections(text, lambda n: n in ("field", "datum"))
    last = max(1, len(text.splitlines()))
    spec = _field_section(sections, last)
    sec = _need(sections, "datum", last)
    pairs = []
    for ln in sec.body:
        pole, (h,) = _record(ln, spec, ("residue",), allow_zero=False)
        pairs.append((pole, h))
    if not pairs:
        raise ParseError("[datum] lists no poles", sec.line, 1)
    return CharacterizingDatum(spec, tuple(pairs))


def serialize_datum(d: CharacterizingDatum) -> str:
    lines = _field_text(d.spec) + ["", "[datum]"]
    lines += [f"pole = {_fmt_elem(x)}, residue = {h}" for x, h in d.pairs]
    return "\n".join(lines) + "\n"


# -- L-space candidates --------------------------------------------------------

def parse_lspace(text: str) -> LSpaceCandidate:
    sections = _sections(text, lambda n: n in ("field", "space") or re.fullmatch(r"X\d+", n) is not None)
    last = max(1, len(text.splitlines()))
    spec = _field_section(sections, last)
    p = spec.p
    for name, sec in sections.items():
        if name.startswith("X") and int(name[1:]) > p:
            raise ParseError(f"section [{name}] beyond X{p}", sec.line, 1)
    sp = _need(sections, "space", last)
    kv = _keyvals(sp, ("lambda", "u", "v"))
    lam = _int(*kv["lambda"], "lambda")
    if lam < 1:
        raise ParseError("lambda must be at least 1", kv["lambda"][1], kv["lambda"][2])
    u = spec(_coeffs(*kv["u"], p, spec.k, "u"))
    v = spec(_coeffs(*kv["v"], p, spec.k, "v"))
    sets, r1, r2 = [], {}, {}
    for j in range(p + 1):
        sec = _need(sections, f"X{j}", last)
        poles = []
        for ln in sec.body:
            pole, (h1, h2) = _record(ln, spec, ("r1", "r2"), allow_zero=True)
            if pole in r1:
                raise ParseError(f"pole {_fmt_elem(pole)} listed twice", ln.no, ln.indent + 1)
            poles.append(pole)
            r1[pole], r2[pole] = h1, h2
        sets.append(tuple(poles))
    return LSpaceCandidate(p, lam, spec, tuple(sets), r1, r2, u, v)


def serialize_lspace(c: LSpaceCandidate) -> str:
    lines = _field_text(c.spec) + ["", "[space]", f"lambda = {c.lam}", f"u = {_fmt_elem(c.u)}",
                                   f"v = {_fmt_elem(c.v)}"]
    for j, s in enumerate(c.pole_sets):
        lines += ["", f"[X{j}]"]
        lines += [f"pole = {_fmt_elem(x)}, r1 = {c.r1.get(x, 0)}, r2 = {c.r2.get(x, 0)}" for x in s]
    return "\n".join(lines) + "\n"


def parse_document(text: str) -> CharacterizingDatum | LSpaceCandidate:
    """A datum or an L-space, told apart by their second section."""
    if re.search(r"^\s*\[space\]", text, re.MULTILINE):
        return parse_lspace(text)
    return parse_datum(text)


def parse_datum_file(path: str | Path) -> CharacterizingDatum | LSpaceCandidate:
    return parse_document(Path(path).read_text(encoding="utf-8"))


# -- checkpoints -------------------------------------------------------------------

@dataclass
class Checkpoint:
    lam: int
    k_max: int
    shards: int
    use_type_constraints: bool
    results: list[ShardResult]

    def resume_map(self) -> dict[int, tuple]:
        """Cursor per shard for SearchOptions.resume; finished shards get a
        cursor past the end of the enumeration."""
        out = {}
        for r in self.results:
            if r.complete:
                out[r.shard] = (self.k_max + 1,)
            elif r.last is not None:
                out[r.shard] = r.last
        return out


def _fmt_key(key: tuple) -> str:
    return "[" + ",".join(str(i) for i in key) + "]"


def _fmt_cursor(c: tuple | None) -> str:
    if c is None:
        return "none"
    k, a, key0, key3 = c
    return f"{k} {a} {_fmt_key(key0)} {_fmt_key(key3)}"


_CURSOR = re.compile(r"(\d+) (\d+) \[([\d,]*)\] \[([\d,]*)\]")


def _parse_key(s: str) -> tuple[int, ...]:
    return tuple(int(t) for t in s.split(",")) if s else ()


def _fmt_candidate(c: LSpaceCandidate) -> str:
    blocks = [f"{c.spec.k} {c.u.index} {c.v.index}"]
    for s in c.pole_sets:
        blocks.append(",".join(f"{x.index}:{c.r1.get(x, 0)}:{c.r2.get(x, 0)}" for x in s))
    return " | ".join(blocks)


def _parse_candidate(value: str, lam: int, line: int, col: int) -> LSpaceCandidate:
    blocks = [b.strip() for b in value.split("|")]
    head = blocks[0].split()
    if len(blocks) != 5 or len(head) != 3 or not all(_INT.fullmatch(t) for t in head):
        raise ParseError("found entry must read 'k u v | X0 | X1 | X2 | X3'", line, col)
    k, u, v = (int(t) for t in head)
    spec = make_field(3, k)
    sets, r1, r2 = [], {}, {}
    for b in blocks[1:]:
        poles = []
        for item in b.split(","):
            parts = item.split(":")
            if len(parts) != 3 or not all(_INT.fullmatch(t) for t in parts):
                raise ParseError("pole entries must read 'index:r1:r2'", line, col)
            idx, h1, h2 = (int(t) for t in parts)
            if idx >= spec.order or h1 >= 3 or h2 >= 3:
                raise ParseError("index or residue not reduced", line, col)
            x = spec.element(idx)
            poles.append(x)
            r1[x], r2[x] = h1, h2
        sets.append(tuple(poles))
    if u >= spec.order or v >= spec.order:
        raise ParseError("index not reduced", line, col)
    return LSpaceCandidate(3, lam, spec, tuple(sets), r1, r2, spec.element(u), spec.element(v))


def serialize_checkpoint(cp: Checkpoint) -> str:
    lines = ["[checkpoint]", f"lambda = {cp.lam}", f"kmax = {cp.k_max}", f"shards = {cp.shards}",
             f"types = {'on' if cp.use_type_constraints else 'off'}"]
    for r in sorted(cp.results, key=lambda r: r.shard):
        lines += ["", f"[shard {r.shard}]", f"complete = {'yes' if r.complete else 'no'}",
                  f"cursor = {DONE if r.complete else _fmt_cursor(r.last)}"]
        lines += [f"found = {_fmt_candidate(c)}" for c in r.candidates]
    return "\n".join(lines) + "\n"


def parse_checkpoint(text: str) -> Checkpoint:
    sections = _sections(text, lambda n: n == "checkpoint" or re.fullmatch(r"shard \d+", n) is not None)
    last = max(1, len(text.splitlines()))
    head = _need(sections, "checkpoint", last)
    kv = _keyvals(head, ("lambda", "kmax", "shards", "types"))
    lam = _int(*kv["lambda"], "lambda")
    k_max = _int(*kv["kmax"], "kmax")
    shards = _int(*kv["shards"], "shards")
    if min(lam, k_max, shards) < 1:
        raise ParseError("lambda, kmax and shards must be positive", head.line, 1)
    if kv["types"][0] not in ("on", "off"):
        raise ParseError("types must be 'on' or 'off'", kv["types"][1], kv["types"][2])
    results = []
    for s in range(shards):
        sec = _need(sections, f"shard {s}", last)
        fixed = _Section(sec.name, sec.line, [ln for ln in sec.body if not ln.text.startswith("found")])
        kvs = _keyvals(fixed, ("complete", "cursor"))
        flag, fl, fc = kvs["complete"]
        if flag not in ("yes", "no"):
            raise ParseError("complete must be 'yes' or 'no'", fl, fc)
        cur, cl, cc = kvs["cursor"]
        if flag == "yes":
            if cur != DONE:
                raise ParseError(f"a complete shard has cursor '{DONE}'", cl, cc)
            last_cursor = None
        elif cur == "none":
            last_cursor = None
        else:
            m = _CURSOR.fullmatch(cur)
            if not m:
                raise ParseError("cursor must read 'k a [x0 indices] [x3 indices]'", cl, cc)
            last_cursor = (int(m.group(1)), int(m.group(2)), _parse_key(m.group(3)), _parse_key(m.group(4)))
        found = []
        for ln in sec.body:
            if ln.text.startswith("found"):
                key, eq, value = ln.text.partition("=")
                if key.strip() != "found" or not eq:
                    raise ParseError("expected 'found = ...'", ln.no, ln.indent + 1)
                found.append(_parse_candidate(value.strip(), lam, ln.no, ln.indent + ln.text.index("=") + 3))
        results.append(ShardResult(s, found, 0, last_cursor, flag == "yes"))
    for name, sec in sections.items():
        if name.startswith("shard") and int(name.split()[1]) >= shards:
            raise ParseError(f"section [{name}] beyond shards = {shards}", sec.line, 1)
    return Checkpoint(lam, k_max, shards, kv["types"][0] == "on", results)


__all__ = [
    "parse_datum", "serialize_datum", "parse_lspace", "serialize_lspace", "parse_document", "parse_datum_file",
    "Checkpoint", "parse_checkpoint", "serialize_checkpoint", "DONE",
]
