"""Parser and printer for the bound-quiver description language.

One declaration per line, ``#`` starts a comment::

    algebra EX1 field 101
    vertices 1..3
    arrow gamma : 1 -> 2
    arrow alpha : 1 -> 3
    arrow beta : 3 -> 2
    rel alpha*beta

    module M
    dim 1 = 1
    dim 2 = 1
    map gamma = [[1]]

Relation terms list arrows in traversal order: ``alpha*beta`` walks
``alpha`` first and then ``beta``, which is the composite written
``beta alpha`` in the usual right-to-left notation.  A map for an arrow
``v -> w`` is a ``dim w`` by ``dim v`` matrix given row by row.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

_IDENT = r"[A-Za-z_][A-Za-z0-9_']*"
_VERTEX = r"[A-Za-z0-9_]+"


class DSLError(ValueError):
    """Syntax or semantic error in a quiver description, with its position."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Relation:
    # (coefficient, arrows in traversal order)
    terms: tuple[tuple[int, tuple[str, ...]], ...]

    def __str__(self) -> str:
        out = []
        for i, (c, path) in enumerate(self.terms):
            word = "*".join(path)
            if i == 0:
                out.append(word if c == 1 else f"{c}*{word}")
            else:
                out.append(f"+ {word}" if c == 1 else f"+ {c}*{word}")
        return " ".join(out)


@dataclass
class ModuleSpec:
    name: str
    dims: dict[str, int] = field(default_factory=dict)
    maps: dict[str, list[list[int]]] = field(default_factory=dict)


@dataclass
class QuiverSpec:
    name: str
    p: int
    vertices: list[str] = field(default_factory=list)
    arrows: list[Arrow] = field(default_factory=list)
    relations: list[Relation] = field(default_factory=list)
    modules: dict[str, ModuleSpec] = field(default_factory=dict)

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    def path_ends(self, path: tuple[str, ...]) -> tuple[str, str]:
        arrows = [self.arrow(a) for a in path]
        return arrows[0].source, arrows[-1].target


class _Line:
    def __init__(self, text: str, lineno: int):
        self.text = text
        self.lineno = lineno
        self.pos = 0

    def error(self, message: str, pos: int | None = None) -> DSLError:
        return DSLError(message, self.lineno, (self.pos if pos is None else pos) + 1)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def take(self, pattern: str, what: str) -> str:
        self.skip_ws()
        m = re.compile(pattern).match(self.text, self.pos)
        if not m:
            raise self.error(f"expected {what}")
        self.pos = m.end()
        return m.group(0)

    def peek(self, literal: str) -> bool:
        self.skip_ws()
        return self.text.startswith(literal, self.pos)

    def expect(self, literal: str) -> None:
        if not self.peek(literal):
            raise self.error(f"expected '{literal}'")
        self.pos += len(literal)

    def finish(self) -> None:
        if not self.at_end():
            raise self.error("unexpected trailing input")


def _strip_comment(raw: str) -> str:
    i = raw.find("#")
    return raw if i < 0 else raw[:i]


def _parse_vertices(ln: _Line) -> list[str]:
    first = ln.take(_VERTEX, "vertex id")
    if ln.peek(".."):
        ln.expect("..")
        last = ln.take(_VERTEX, "vertex id")
        if not (first.isdigit() and last.isdigit()):
            raise ln.error("ranges need integer endpoints")
        a, b = int(first), int(last)
        if b < a:
            raise ln.error("empty vertex range")
        return [str(i) for i in range(a, b + 1)]
    out = [first]
    while ln.peek(","):
        ln.expect(",")
        out.append(ln.take(_VERTEX, "vertex id"))
    return out


def _parse_relation(ln: _Line) -> list[tuple[int, list[tuple[str, int]]]]:
    terms = []
    sign = 1
    first = True
    while True:
        if not first:
            ln.skip_ws()
            if ln.at_end():
                break
            if ln.peek("+"):
                ln.expect("+")
                sign = 1
            elif ln.peek("-"):
                ln.expect("-")
                sign = -1
            else:
                raise ln.error("expected '+' or '-'")
        elif ln.peek("-"):
            ln.expect("-")
            sign = -1
        coeff = 1
        ln.skip_ws()
        m = re.compile(r"\d+").match(ln.text, ln.pos)
        if m:
            coeff = int(m.group(0))
            ln.pos = m.end()
            ln.expect("*")
        word = []
        col = ln.pos
        word.append((ln.take(_IDENT, "arrow name"), col))
        while ln.peek("*"):
            ln.expect("*")
            ln.skip_ws()
            col = ln.pos
            word.append((ln.take(_IDENT, "arrow name"), col))
        terms.append((sign * coeff, word))
        first = False
    return terms


def _parse_matrix(ln: _Line) -> list[list[int]]:
    ln.expect("[")
    rows: list[list[int]] = []
    if ln.peek("]"):
        ln.expect("]")
        return rows
    while True:
        ln.expect("[")
        row: list[int] = []
        if not ln.peek("]"):
            row.append(int(ln.take(r"-?\d+", "integer")))
            while ln.peek(","):
                ln.expect(",")
                row.append(int(ln.take(r"-?\d+", "integer")))
        ln.expect("]")
        rows.append(row)
        if ln.peek(","):
            ln.expect(",")
            continue
        ln.expect("]")
        return rows


def parse_spec(text: str, default_field: int = 101, base: QuiverSpec | None = None) -> QuiverSpec:
    """Parse a quiver description (or a module file when ``base`` is given).

    A module file starts with ``algebra <ident>`` naming ``base`` and then
    contains only ``module`` blocks, which are added to a copy of ``base``.
    """
    spec: QuiverSpec | None = None
    if base is not None:
        spec = QuiverSpec(base.name, base.p, list(base.vertices), list(base.arrows),
                          list(base.relations), dict(base.modules))
    current: ModuleSpec | None = None
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw)
        if not body.strip():
            continue
        ln = _Line(body, lineno)
        keyword = ln.take(r"[a-z]+", "keyword")
        if keyword == "algebra":
            if header_seen:
                raise ln.error("duplicate 'algebra' header", 0)
            name = ln.take(_IDENT, "algebra name")
            p = default_field
            if ln.peek("field"):
                ln.expect("field")
                p = int(ln.take(r"\d+", "prime"))
            ln.finish()
            header_seen = True
            if base is not None:
                if name != base.name:
                    raise ln.error(f"module file refers to algebra {name}, expected {base.name}", 0)
                continue
            from .linalg import check_prime

            try:
                check_prime(p)
            except ValueError as exc:
                raise ln.error(str(exc), 0) from None
            spec = QuiverSpec(name, p)
            continue
        if spec is None:
            raise ln.error("missing 'algebra' header", 0)
        if keyword == "vertices":
            if base is not None:
                raise ln.error("module files cannot declare vertices", 0)
            for v in _parse_vertices(ln):
                if v in spec.vertices:
                    raise ln.error(f"duplicate vertex {v}", 0)
                spec.vertices.append(v)
            ln.finish()
        elif keyword == "arrow":
            if base is not None:
                raise ln.error("module files cannot declare arrows", 0)
            name = ln.take(_IDENT, "arrow name")
            ln.expect(":")
            scol = ln.pos
            s = ln.take(_VERTEX, "source vertex")
            ln.expect("->")
            tcol = ln.pos
            t = ln.take(_VERTEX, "target vertex")
            ln.finish()
            for v, col in ((s, scol), (t, tcol)):
                if v not in spec.vertices:
                    raise ln.error(f"unknown vertex {v}", col)
            if any(a.name == name for a in spec.arrows):
                raise ln.error(f"duplicate arrow {name}", 0)
            spec.arrows.append(Arrow(name, s, t))
        elif keyword == "rel":
            if base is not None:
                raise ln.error("module files cannot declare relations", 0)
            terms = []
            ends = None
            for coeff, word in _parse_relation(ln):
                names = []
                for a, col in word:
                    try:
                        spec.arrow(a)
                    except KeyError:
                        raise ln.error(f"unknown arrow {a}", col) from None
                    names.append(a)
                if len(names) < 2:
                    raise ln.error("relation terms must have length at least 2", word[0][1])
                for x, y in zip(names, names[1:]):
                    if spec.arrow(x).target != spec.arrow(y).source:
                        raise ln.error(f"arrows {x} and {y} do not compose", word[0][1])
                e = spec.path_ends(tuple(names))
                if ends is not None and e != ends:
                    raise ln.error("relation terms are not parallel paths", word[0][1])
                ends = e
                terms.append((coeff % spec.p, tuple(names)))
            terms = [t for t in terms if t[0]]
            if terms:
                spec.relations.append(Relation(tuple(terms)))
        elif keyword == "module":
            name = ln.take(_IDENT, "module name")
            ln.finish()
            if name in spec.modules:
                raise ln.error(f"duplicate module {name}", 0)
            current = ModuleSpec(name, {v: 0 for v in spec.vertices})
            spec.modules[name] = current
        elif keyword == "dim":
            if current is None:
                raise ln.error("'dim' outside a module block", 0)
            col = ln.pos
            v = ln.take(_VERTEX, "vertex")
            if v not in spec.vertices:
                raise ln.error(f"unknown vertex {v}", col + 1)
            ln.expect("=")
            current.dims[v] = int(ln.take(r"\d+", "dimension"))
            ln.finish()
        elif keyword == "map":
            if current is None:
                raise ln.error("'map' outside a module block", 0)
            col = ln.pos
            a = ln.take(_IDENT, "arrow name")
            try:
                arrow = spec.arrow(a)
            except KeyError:
                raise ln.error(f"unknown arrow {a}", col + 1) from None
            ln.expect("=")
            rows = _parse_matrix(ln)
            ln.finish()
            rdim, cdim = current.dims[arrow.target], current.dims[arrow.source]
            if rdim * cdim and (len(rows) != rdim or any(len(r) != cdim for r in rows)):
                raise ln.error(f"map {a} must be {rdim}x{cdim}", col + 1)
            current.maps[a] = rows
        else:
            raise ln.error(f"unknown keyword '{keyword}'", 0)
    if spec is None:
        raise DSLError("empty description: missing 'algebra' header")
    if not spec.vertices:
        raise DSLError("algebra declares no vertices")
    return spec


def spec_to_text(spec: QuiverSpec, with_modules: bool = True) -> str:
    lines = [f"algebra {spec.name} field {spec.p}", "vertices " + ",".join(spec.vertices)]
    lines += [f"arrow {a.name} : {a.source} -> {a.target}" for a in spec.arrows]
    lines += [f"rel {r}" for r in spec.relations]
    if with_modules:
        for m in spec.modules.values():
            lines.append(module_spec_to_text(m))
    return "\n".join(lines) + "\n"


def module_spec_to_text(m: ModuleSpec) -> str:
    lines = [f"module {m.name}"]
    lines += [f"dim {v} = {d}" for v, d in m.dims.items() if d]
    for a, rows in m.maps.items():
        body = ",".join("[" + ",".join(str(x) for x in r) + "]" for r in rows)
        lines.append(f"map {a} = [{body}]")
    return "\n".join(lines)
