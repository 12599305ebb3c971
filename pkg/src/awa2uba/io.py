"""Text formats: the ``.awa`` input language, HOA v1 output, stats JSON."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .core import Awa, Nba, WeaknessError, complete, validate_weak
from .posbool import FALSE, TRUE, And, Formula, Or, Var, _Const
from .preorder import tpo


class ParseError(ValueError):
    def __init__(self, line: int, column: int, expected: str, found: str = ""):
        self.line = line
        self.column = column
        self.expected = expected
        self.found = found
        msg = f"line {line}, column {column}: expected {expected}"
        if found:
            msg += f", found {found!r}"
        super().__init__(msg)


class SemanticError(ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


@dataclass
class AwaDocument:
    awa: Awa
    name: str = ""
    line_map: dict = field(default_factory=dict)  # (state, letter) -> source line


_TOKEN = re.compile(r"\s*(?:(\d+)|(true|false)|([&|()]))")


class _FormulaParser:
    def __init__(self, text: str, line: int, offset: int):
        self.text = text
        self.line = line
        self.offset = offset
        self.pos = 0

    def _error(self, expected):
        rest = self.text[self.pos:].strip()
        col = self.offset + len(self.text) - len(self.text[self.pos:].lstrip()) + 1
        raise ParseError(self.line, col, expected, rest[:1] if rest else "end of line")

    def _peek(self):
        m = _TOKEN.match(self.text, self.pos)
        if not m:
            return None, None
        return m, m.group(0).strip()

    def parse(self) -> Formula:
        f = self._or()
        if self.text[self.pos:].strip():
            self._error("'&', '|' or end of line")
        return f

    def _or(self):
        parts = [self._and()]
        while True:
            m, tok = self._peek()
            if tok != "|":
                break
            self.pos = m.end()
            parts.append(self._and())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def _and(self):
        parts = [self._atom()]
        while True:
            m, tok = self._peek()
            if tok != "&":
                break
            self.pos = m.end()
            parts.append(self._atom())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def _atom(self):
        m, tok = self._peek()
        if m is None or tok in ("&", "|", ")"):
            self._error("state id, 'true', 'false' or '('")
        self.pos = m.end()
        if m.group(1):
            return Var(int(m.group(1)))
        if m.group(2):
            return TRUE if tok == "true" else FALSE
        f = self._or()
        m, tok = self._peek()
        if tok != ")":
            self._error("')'")
        self.pos = m.end()
        return f


def parse_formula(text: str, line: int = 1, offset: int = 0) -> Formula:
    return _FormulaParser(text, line, offset).parse()


_HEADERS = ("alphabet", "states", "initial", "accepting")


def parse_awa(text: str, allow_nonweak: bool = False) -> AwaDocument:
    """Parse the line-oriented ``awa v1`` format.

    Missing ``(state, letter)`` rows are completed with a rejecting sink.
    Non-weak input raises :class:`SemanticError` unless `allow_nonweak`.
    """
    lines = [(no, raw.split("#", 1)[0].rstrip()) for no, raw in
             enumerate(text.splitlines(), 1)]
    lines = [(no, s) for no, s in lines if s.strip()]
    if not lines or lines[0][1].strip() != "awa v1":
        no = lines[0][0] if lines else 1
        raise ParseError(no, 1, "'awa v1' header")
    name = ""
    header = {}
    raw = {}
    i = 1
    if i < len(lines) and lines[i][1].strip().startswith("name:"):
        name = lines[i][1].split(":", 1)[1].strip()
        i += 1
    for key in _HEADERS:
        if i >= len(lines):
            raise ParseError(lines[-1][0] + 1, 1, f"'{key}:'")
        no, s = lines[i]
        if not s.startswith(key + ":"):
            raise ParseError(no, 1, f"'{key}:'", s.split()[0])
        header[key] = (no, s[len(key) + 1:].split())
        raw[key] = s
        i += 1

    no, letters = header["alphabet"]
    if not letters:
        raise ParseError(no, len("alphabet:") + 1, "at least one letter")
    if len(set(letters)) != len(letters):
        raise SemanticError(no, "duplicate letters in alphabet")
    for tok in letters:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok):
            raise SemanticError(no, f"invalid letter {tok!r}")

    def ints(key, count=None):
        no, toks = header[key]
        if count is not None and len(toks) != count:
            raise ParseError(no, len(key) + 2, f"{count} integer(s)")
        out = []
        for t in toks:
            if not t.isdigit():
                raise ParseError(no, raw[key].index(t, len(key) + 1) + 1, "integer", t)
            out.append(int(t))
        return no, out

    _, (n,) = ints("states", 1)
    no, (initial,) = ints("initial", 1)
    if initial >= n:
        raise SemanticError(no, f"initial state {initial} out of range")
    no, accepting = ints("accepting")
    for q in accepting:
        if q >= n:
            raise SemanticError(no, f"accepting state {q} out of range")

    delta = {}
    line_map = {}
    current = None
    seen_states = set()
    for no, s in lines[i:]:
        m = re.fullmatch(r"state\s+(\d+)\s*:\s*", s)
        if m:
            current = int(m.group(1))
            if current >= n:
                raise SemanticError(no, f"state {current} out of range")
            if current in seen_states:
                raise SemanticError(no, f"state {current} declared twice")
            seen_states.add(current)
            continue
        m = re.fullmatch(r"(\s+)(\S+)\s*->(.*)", s)
        if not m or current is None:
            raise ParseError(no, 1, "'state N:' or '<letter> -> <formula>'", s.strip()[:1])
        letter = m.group(2)
        if letter not in letters:
            raise SemanticError(no, f"unknown letter {letter!r}")
        if (current, letter) in delta:
            raise SemanticError(no, f"duplicate row for state {current}, letter {letter}")
        f = parse_formula(m.group(3), no, m.start(3))
        for t in _atoms_of(f):
            if t >= n:
                raise SemanticError(no, f"state {t} out of range")
        delta[current, letter] = f
        line_map[current, letter] = no

    a = complete(Awa(letters, range(n), initial, accepting, delta))
    violation = validate_weak(a)
    if violation is not None and not allow_nonweak:
        raise SemanticError(header["accepting"][0], f"not weak: {violation}")
    return AwaDocument(a, name, line_map)


def _atoms_of(f):
    if isinstance(f, Var):
        yield f.state
    elif isinstance(f, (And, Or)):
        for c in f.children:
            yield from _atoms_of(c)


def print_formula(f: Formula) -> str:
    if isinstance(f, _Const):
        return "true" if f.value else "false"
    if isinstance(f, Var):
        return str(f.state)
    parts = []
    for c in f.children:
        text = print_formula(c)
        if type(c) is type(f) or (isinstance(f, And) and isinstance(c, Or)):
            text = f"({text})"
        parts.append(text)
    return (" & " if isinstance(f, And) else " | ").join(parts)


def print_awa(a: Awa, name: str = "") -> str:
    out = ["awa v1"]
    if name:
        out.append(f"name: {name}")
    out.append("alphabet: " + " ".join(a.alphabet))
    out.append(f"states: {a.n}")
    out.append(f"initial: {a.initial}")
    out.append("accepting:" + "".join(f" {q}" for q in sorted(a.accepting)))
    for q in a.states:
        out.append(f"state {q}:")
        for x in a.alphabet:
            if (q, x) in a.delta:
                out.append(f"  {x} -> {print_formula(a.delta[q, x])}")
    return "\n".join(out) + "\n"


def _letter_label(k: int, m: int) -> str:
    return "&".join(str(i) if i == k else f"!{i}" for i in range(m))


def print_hoa(b: Nba, names: bool = False, name: str = "") -> str:
    """HOA v1 with state-based Büchi acceptance and one-hot letter APs."""
    m = len(b.alphabet)
    out = ["HOA: v1"]
    if name:
        out.append(f'name: "{name}"')
    out.append(f"States: {len(b)}")
    for i in sorted(b.initial):
        out.append(f"Start: {i}")
    out.append(f"AP: {m} " + " ".join(f'"{x}"' for x in b.alphabet))
    out.append("acc-name: Buchi")
    out.append("Acceptance: 1 Inf(0)")
    out.append("properties: trans-labels explicit-labels state-acc")
    out.append("--BODY--")
    for i in range(len(b)):
        line = f"State: {i}"
        if names:
            line += ' "' + str(b.states[i]).replace('"', "'") + '"'
        if i in b.accepting:
            line += " {0}"
        out.append(line)
        for k, x in enumerate(b.alphabet):
            for t in sorted(b.post(i, x)):
                out.append(f"  [{_letter_label(k, m)}] {t}")
    out.append("--END--")
    return "\n".join(out) + "\n"


def parse_hoa(text: str) -> Nba:
    """Read back the HOA subset written by :func:`print_hoa`."""
    header, _, body = text.partition("--BODY--")
    if "--END--" not in body:
        raise ParseError(len(text.splitlines()), 1, "'--END--'")
    body = body.split("--END--", 1)[0]
    count = None
    initial = set()
    aps = []
    for no, line in enumerate(header.splitlines(), 1):
        line = line.strip()
        if line.startswith("States:"):
            count = int(line.split()[1])
        elif line.startswith("Start:"):
            initial.add(int(line.split()[1]))
        elif line.startswith("AP:"):
            aps = re.findall(r'"([^"]*)"', line)
        elif line.startswith("Acceptance:") and line.split(None, 1)[1] != "1 Inf(0)":
            raise ParseError(no, 13, "'1 Inf(0)'", line.split(None, 1)[1])
    if count is None:
        raise ParseError(1, 1, "'States:'")
    labels = {_letter_label(k, len(aps)): x for k, x in enumerate(aps)}
    delta: dict = {}
    accepting = set()
    names = [str(i) for i in range(count)]
    current = None
    for line in body.splitlines():
        line = line.strip()
        if not line:
            continue
        m = re.fullmatch(r'State:\s+(\d+)(?:\s+"([^"]*)")?(\s+\{0\})?', line)
        if m:
            current = int(m.group(1))
            if m.group(2) is not None:
                names[current] = m.group(2)
            if m.group(3):
                accepting.add(current)
            continue
        m = re.fullmatch(r"\[([^\]]*)\]\s+(\d+)", line)
        if not m or current is None or m.group(1) not in labels:
            raise ParseError(0, 1, "state header or one-hot labelled edge", line)
        key = (current, labels[m.group(1)])
        delta[key] = delta.get(key, frozenset()) | {int(m.group(2))}
    return Nba(aps, names, initial, delta, accepting)


def stats(b: Nba, a: Awa, algo: str = "u") -> dict:
    """Size figures for a construction together with the preorder-count bound.

    ``within_bound`` is only reported for single-SCC input; for ``bu`` the
    bound carries an extra factor ``n``.
    """
    comps = a.scc.components
    largest = max((len(c) for c in comps), default=0)
    t = tpo(largest)
    bound = 4 * t
    within = None
    if len(comps) == 1:
        limit = bound * a.n if algo == "bu" else bound
        within = len(b) <= limit
    return {
        "n": a.n,
        "scc_count": len(comps),
        "largest_scc": largest,
        "macrostates": len(b),
        "transitions": b.transition_count,
        "accepting_macrostates": len(b.accepting),
        "tpo_n": t,
        "bound_4tpo": bound,
        "within_bound": within,
    }


def stats_json(b: Nba, a: Awa, algo: str = "u") -> str:
    return json.dumps(stats(b, a, algo), sort_keys=False)


__all__ = [
    "AwaDocument", "ParseError", "SemanticError", "WeaknessError", "parse_awa",
    "parse_formula", "print_awa", "print_formula", "print_hoa", "parse_hoa",
    "stats", "stats_json",
]
