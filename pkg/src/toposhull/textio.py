"""Line-oriented description files for monoids, M-sets and maps.

::

    # comments run to the end of the line
    monoid M
    elements 1 e
    unit 1
    table
    1 e
    e e

    mset A over M
    elements a b
    action          # row x, column j: label of x.e_j
    a b
    b b

    map f from A to A
    a -> b
    b -> b
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .errors import InputSyntaxError, UnknownReference, ValidationError
from .monoid import FiniteMonoid
from .mset import EquivariantMap, MSet

HEADERS = ("monoid", "mset", "map")
_LABEL = re.compile(r"^[^\s#]+$")


@dataclass
class Token:
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[list[Token]]:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = [Token(m.group(), lineno, m.start() + 1) for m in re.finditer(r"\S+", body)]
        if toks:
            lines.append(toks)
    return lines


@dataclass
class Workspace:
    monoids: dict[str, FiniteMonoid] = field(default_factory=dict)
    msets: dict[str, MSet] = field(default_factory=dict)
    maps: dict[str, EquivariantMap] = field(default_factory=dict)
    source: str = "<input>"

    def kind_of(self, name: str) -> str | None:
        for kind, table in (("monoid", self.monoids), ("mset", self.msets), ("map", self.maps)):
            if name in table:
                return kind
        return None

    def monoid_name(self, M: FiniteMonoid) -> str:
        for name, N in self.monoids.items():
            if N == M:
                return name
        raise UnknownReference(repr(M))

    def mset_name(self, A: MSet) -> str | None:
        for name, B in self.msets.items():
            if B == A:
                return name
        return None

    def get_monoid(self, name: str) -> FiniteMonoid:
        if name not in self.monoids:
            raise UnknownReference(name)
        return self.monoids[name]

    def get_mset(self, name: str) -> MSet:
        if name not in self.msets:
            raise UnknownReference(name)
        return self.msets[name]

    def get_map(self, name: str) -> EquivariantMap:
        if name not in self.maps:
            raise UnknownReference(name)
        return self.maps[name]


class _Parser:
    def __init__(self, text: str, source: str, ws: Workspace):
        self.lines = _tokenize(text)
        self.pos = 0
        self.source = source
        self.ws = ws

    def error(self, tok_or_line, expected: str, col: int | None = None):
        if isinstance(tok_or_line, Token):
            return InputSyntaxError(tok_or_line.line, tok_or_line.col, expected, self.source)
        return InputSyntaxError(tok_or_line, col or 1, expected, self.source)

    def peek(self) -> list[Token] | None:
        return self.lines[self.pos] if self.pos < len(self.lines) else None

    def at_header(self) -> bool:
        line = self.peek()
        return line is None or line[0].text in HEADERS

    def declare(self, tok: Token):
        if not _LABEL.match(tok.text) or tok.text in HEADERS:
            raise self.error(tok, "a name")
        if self.ws.kind_of(tok.text) is not None:
            raise self.error(tok, f"a fresh name ({tok.text!r} is already declared)")

    def validated(self, header: Token, build):
        try:
            return build()
        except ValidationError as exc:
            raise ValidationError(f"{self.source}:{header.line}: {type(exc).__name__}: {exc}") from exc

    def run(self):
        while self.peek() is not None:
            line = self.lines[self.pos]
            self.pos += 1
            head = line[0]
            if head.text == "monoid":
                self.parse_monoid(line)
            elif head.text == "mset":
                self.parse_mset(line)
            elif head.text == "map":
                self.parse_map(line)
            else:
                raise self.error(head, "'monoid', 'mset' or 'map'")

    @staticmethod
    def _arity(line: list[Token], n: int, what: str, err):
        if len(line) != n:
            bad = line[n] if len(line) > n else None
            if bad is not None:
                raise err(bad, f"{n} {what} (found {len(line)})")
            last = line[-1]
            raise err(last.line, f"{n} {what} (found {len(line)})", last.col + len(last.text))

    def _labels(self, tok: Token, rest: list[Token]) -> list[str]:
        labels = []
        for t in rest:
            if not _LABEL.match(t.text) or t.text == "->" or t.text in HEADERS:
                raise self.error(t, "an element label")
            if t.text in labels:
                raise self.error(t, f"distinct element labels ({t.text!r} repeats)")
            labels.append(t.text)
        return labels

    def _rows(self, after: Token, labels: list[str], width: int, index: dict[str, int], what: str):
        rows = []
        for _ in range(len(labels)):
            line = self.peek()
            if line is None or line[0].text in HEADERS:
                where = line[0] if line else None
                if where is not None:
                    raise self.error(where, f"{len(labels)} {what} rows")
                raise self.error(after.line, f"{len(labels)} {what} rows", after.col + len(after.text))
            self.pos += 1
            self._arity(line, width, "entries per row", self.error)
            row = []
            for t in line:
                if t.text not in index:
                    raise self.error(t, f"a declared element label (got {t.text!r})")
                row.append(index[t.text])
            rows.append(row)
        return rows

    def parse_monoid(self, line: list[Token]):
        head = line[0]
        self._arity(line, 2, "tokens: monoid <name>", self.error)
        name = line[1]
        self.declare(name)
        elements = unit = table = None
        while not self.at_header():
            stmt = self.lines[self.pos]
            self.pos += 1
            kw = stmt[0]
            if kw.text == "elements":
                if elements is not None:
                    raise self.error(kw, "a single 'elements' line")
                elements = self._labels(kw, stmt[1:])
                if not elements:
                    raise self.error(kw.line, "at least one element", kw.col + len(kw.text))
            elif kw.text == "unit":
                self._arity(stmt, 2, "tokens: unit <element>", self.error)
                unit = stmt[1]
            elif kw.text == "table":
                if elements is None:
                    raise self.error(kw, "'elements' before 'table'")
                self._arity(stmt, 1, "token: table", self.error)
                index = {e: i for i, e in enumerate(elements)}
                table = self._rows(kw, elements, len(elements), index, "table")
            else:
                raise self.error(kw, "'elements', 'unit' or 'table'")
        for part, label in ((elements, "elements"), (unit, "unit"), (table, "table")):
            if part is None:
                raise self.error(head, f"a '{label}' line in monoid {name.text}")
        if unit.text not in elements:
            raise self.error(unit, "the unit to be a declared element")
        M = self.validated(head, lambda: FiniteMonoid(elements, table, elements.index(unit.text)))
        self.ws.monoids[name.text] = M

    def parse_mset(self, line: list[Token]):
        head = line[0]
        self._arity(line, 4, "tokens: mset <name> over <monoid>", self.error)
        name, over, mon = line[1], line[2], line[3]
        if over.text != "over":
            raise self.error(over, "'over'")
        self.declare(name)
        if mon.text not in self.ws.monoids:
            raise UnknownReference(mon.text, mon.line)
        M = self.ws.monoids[mon.text]
        elements = action = None
        while not self.at_header():
            stmt = self.lines[self.pos]
            self.pos += 1
            kw = stmt[0]
            if kw.text == "elements":
                if elements is not None:
                    raise self.error(kw, "a single 'elements' line")
                elements = self._labels(kw, stmt[1:])
            elif kw.text == "action":
                if elements is None:
                    raise self.error(kw, "'elements' before 'action'")
                self._arity(stmt, 1, "token: action", self.error)
                index = {e: i for i, e in enumerate(elements)}
                action = self._rows(kw, elements, M.size, index, "action")
            else:
                raise self.error(kw, "'elements' or 'action'")
        if elements is None:
            raise self.error(head, f"an 'elements' line in mset {name.text}")
        if action is None:
            if elements:
                raise self.error(head, f"an 'action' block in mset {name.text}")
            action = []
        table = action if action else np.zeros((0, M.size), dtype=np.int64)
        A = self.validated(head, lambda: MSet(M, elements, table))
        self.ws.msets[name.text] = A

    def parse_map(self, line: list[Token]):
        head = line[0]
        self._arity(line, 6, "tokens: map <name> from <A> to <B>", self.error)
        name, frm, a, to, b = line[1:6]
        if frm.text != "from":
            raise self.error(frm, "'from'")
        if to.text != "to":
            raise self.error(to, "'to'")
        self.declare(name)
        for t in (a, b):
            if t.text not in self.ws.msets:
                raise UnknownReference(t.text, t.line)
        A, B = self.ws.msets[a.text], self.ws.msets[b.text]
        if A.monoid != B.monoid:
            raise ValidationError(f"{self.source}:{head.line}: map {name.text} joins M-sets over different monoids")
        mapping: dict[int, int] = {}
        while not self.at_header():
            stmt = self.lines[self.pos]
            self.pos += 1
            self._arity(stmt, 3, "tokens: <x> -> <y>", self.error)
            x, arrow, y = stmt
            if arrow.text != "->":
                raise self.error(arrow, "'->'")
            if x.text not in A._index:
                raise self.error(x, f"an element of {a.text}")
            if y.text not in B._index:
                raise self.error(y, f"an element of {b.text}")
            xi = A.index(x.text)
            if xi in mapping:
                raise self.error(x, f"one assignment per element ({x.text!r} repeats)")
            mapping[xi] = B.index(y.text)
        missing = [A.elements[i] for i in range(A.size) if i not in mapping]
        if missing:
            raise self.error(head, f"assignments for every element of {a.text} (missing {' '.join(missing)})")
        f = self.validated(head, lambda: EquivariantMap(A, B, [mapping[i] for i in range(A.size)]))
        self.ws.maps[name.text] = f


def parse(text: str, source: str = "<input>", workspace: Workspace | None = None) -> Workspace:
    ws = workspace if workspace is not None else Workspace(source=source)
    _Parser(text, source, ws).run()
    return ws


# ---------------------------------------------------------------- emission

def _check_labels(labels):
    for e in labels:
        if not _LABEL.match(e) or e == "->" or e in HEADERS:
            raise ValidationError(f"label {e!r} cannot be written in the text format")


def format_monoid(name: str, M: FiniteMonoid) -> str:
    _check_labels(M.elements)
    lines = [f"monoid {name}", "elements " + " ".join(M.elements), f"unit {M.elements[M.identity]}", "table"]
    lines += [" ".join(M.elements[v] for v in row) for row in M.table.tolist()]
    return "\n".join(lines) + "\n"


def format_mset(name: str, A: MSet, monoid_name: str, definitions: dict[str, str] | None = None) -> str:
    _check_labels(A.elements)
    lines = []
    if definitions:
        lines += [f"# {label} = {definitions[label]}" for label in A.elements if label in definitions]
    lines += [f"mset {name} over {monoid_name}", ("elements " + " ".join(A.elements)).rstrip(), "action"]
    lines += [" ".join(A.elements[v] for v in row) for row in A.action.tolist()]
    return "\n".join(lines) + "\n"


def format_map(name: str, f: EquivariantMap, dom_name: str, cod_name: str) -> str:
    lines = [f"map {name} from {dom_name} to {cod_name}"]
    lines += [f"{f.dom.elements[x]} -> {f.cod.elements[int(y)]}" for x, y in enumerate(f.mapping)]
    return "\n".join(lines) + "\n"
