"""Identity records and the identity file format.

One record per identity, fields separated by ';' at top level (semicolons
inside parentheses belong to phi argument groups):

    identity <name> ;
      params <p1> <p2> ... ;
      require <constraint>, <constraint>, ... ;   # optional
      derive <name> := <expr> ;                   # optional, repeatable
      lhs <expr> ;
      rhs <expr> ;
      source "<tag>"

Constraints: nonzero(e), notone(e), invertible(e) with e a DSL expression,
and distinct(p1, p2) on parameter names.  '#' starts a comment outside
quotes.  Derived bindings are evaluated after the base parameters are
sampled; they may be full series (for example a rational function of a
and q).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources

from .errors import RegistryError
from . import dsl

__all__ = ["Constraint", "IdentityDef", "parse_identities", "load_registry", "builtin_text"]

_NAME_RE = re.compile(r"^[A-Za-z0-9_.\-]+$")
_CONSTRAINT_RE = re.compile(r"^(nonzero|notone|invertible|distinct)\s*\((.*)\)$", re.S)


@dataclass(frozen=True)
class Constraint:
    kind: str  # nonzero | notone | invertible | distinct
    expr: object  # AST for the value kinds, (name, name) for distinct
    text: str

    def __str__(self):
        return self.text


@dataclass(frozen=True)
class IdentityDef:
    name: str
    params: tuple
    constraints: tuple
    derives: tuple  # ((name, ast), ...)
    lhs: object
    rhs: object
    source: str


def _strip_comments(text):
    out = []
    in_quote = False
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == '"':
            in_quote = not in_quote
            out.append(ch)
        elif ch == "#" and not in_quote:
            while i < len(text) and text[i] != "\n":
                i += 1
            continue
        else:
            out.append(ch)
        i += 1
    return "".join(out)


def _split_top(text, sep):
    parts = []
    depth = 0
    in_quote = False
    cur = []
    for ch in text:
        if ch == '"':
            in_quote = not in_quote
        elif not in_quote:
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == sep and depth == 0:
                parts.append("".join(cur))
                cur = []
                continue
        cur.append(ch)
    parts.append("".join(cur))
    return parts


def _parse_constraint(text):
    text = text.strip()
    m = _CONSTRAINT_RE.match(text)
    if not m:
        raise RegistryError("unrecognized constraint %r" % text)
    kind, inner = m.group(1), m.group(2)
    if kind == "distinct":
        names = [p.strip() for p in inner.split(",")]
        if len(names) != 2 or not all(len(n) == 1 and n.islower() for n in names):
            raise RegistryError("distinct(...) needs two parameter names: %r" % text)
        return Constraint(kind, tuple(names), text)
    return Constraint(kind, dsl.parse(inner), text)


def _finish_record(fields, where):
    got = {k for k, _ in fields}
    for req in ("identity", "params", "lhs", "rhs", "source"):
        if req not in got:
            raise RegistryError("%s: record missing %r field" % (where, req))
    name = params = lhs = rhs = source = None
    constraints = []
    derives = []
    for key, rest in fields:
        if key == "identity":
            name = rest.strip()
            if not _NAME_RE.match(name):
                raise RegistryError("%s: bad identity name %r" % (where, name))
        elif key == "params":
            params = tuple(rest.split())
            for p in params:
                if len(p) != 1 or not p.islower() or p == "q":
                    raise RegistryError("%s: bad parameter name %r" % (where, p))
            if len(set(params)) != len(params):
                raise RegistryError("%s: duplicate parameter" % where)
        elif key == "require":
            constraints = [_parse_constraint(c) for c in _split_top(rest, ",") if c.strip()]
        elif key == "derive":
            lhs_name, _, expr = rest.partition(":=")
            dname = lhs_name.strip()
            if len(dname) != 1 or not dname.islower() or dname == "q" or not expr.strip():
                raise RegistryError("%s: bad derive field %r" % (where, rest.strip()))
            derives.append((dname, dsl.parse(expr)))
        elif key == "lhs":
            lhs = dsl.parse(rest)
        elif key == "rhs":
            rhs = dsl.parse(rest)
        elif key == "source":
            source = rest.strip()
            if not (source.startswith('"') and source.endswith('"') and len(source) >= 2):
                raise RegistryError("%s: source must be a quoted string" % where)
            source = source[1:-1]
        else:
            raise RegistryError("%s: unknown field %r" % (where, key))
    ident = IdentityDef(name, params, tuple(constraints), tuple(derives), lhs, rhs, source)
    _validate(ident, where)
    return ident


def _validate(ident, where):
    known = set(ident.params) | {d for d, _ in ident.derives}
    if len(known) != len(ident.params) + len(ident.derives):
        raise RegistryError("%s: derived name collides with a parameter" % where)
    trees = [ident.lhs, ident.rhs]
    trees += [ast for _, ast in ident.derives]
    trees += [c.expr for c in ident.constraints if c.kind != "distinct"]
    for tree in trees:
        missing = dsl.free_params(tree) - known
        if missing:
            raise RegistryError(
                "%s: undeclared parameter(s) %s" % (where, ", ".join(sorted(missing))))
        clash = dsl.sum_indices(tree) & known
        if clash:
            raise RegistryError(
                "%s: sum index shadows parameter(s) %s" % (where, ", ".join(sorted(clash))))
    for c in ident.constraints:
        if c.kind == "distinct" and not set(c.expr) <= known:
            raise RegistryError("%s: distinct(...) names an unknown parameter" % where)
    seen = set()
    for dname, ast in ident.derives:
        bad = dsl.free_params(ast) - set(ident.params) - seen
        if bad:
            raise RegistryError(
                "%s: derive %r uses %s before definition" % (where, dname, sorted(bad)))
        seen.add(dname)


def parse_identities(text, where="<string>"):
    """Parse identity records from file text."""
    text = _strip_comments(text)
    records = []
    fields = []
    pending = list(_split_top(text, ";"))
    pending.reverse()
    while pending:
        body = pending.pop().strip()
        if not body:
            continue
        key, _, rest = body.partition(" ")
        key = key.strip()
        if key == "identity" and fields:
            records.append(_finish_record(fields, where))
            fields = []
        if key == "source":
            # A record ends at its source string; anything after the
            # closing quote begins the next record.
            opn = rest.find('"')
            cls = rest.find('"', opn + 1) if opn >= 0 else -1
            if cls >= 0 and rest[cls + 1:].strip():
                pending.append(rest[cls + 1:])
                rest = rest[: cls + 1]
        fields.append((key, rest))
    if fields:
        records.append(_finish_record(fields, where))
    return records


def builtin_text():
    return resources.files("qtheta").joinpath("data/builtin.qid").read_text(encoding="utf-8")


def load_registry(paths=()):
    """Built-in corpus plus identities from the given files; names unique."""
    idents = parse_identities(builtin_text(), "builtin corpus")
    for path in paths:
        with open(path, "r", encoding="utf-8") as fh:
            idents += parse_identities(fh.read(), str(path))
    seen = {}
    for ident in idents:
        if ident.name in seen:
            raise RegistryError("duplicate identity name %r" % ident.name)
        seen[ident.name] = ident
    return idents
