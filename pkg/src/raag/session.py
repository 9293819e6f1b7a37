"""Reading and writing session files.

A session file declares one independence alphabet and any number of named
objects::

    letters: a b c d e
    independent: a c, a d, a e, b d, d e
    word u = a e a d b a c d d
    slp X { X1 -> a ; X2 -> b ; X3 -> X1 X2 ; start X3 }
    gen tau { a => a b ; }

Blocks in braces may span several lines.  ``#`` starts a comment and ``1``
spells the empty word.  Inside an ``slp`` block a right-hand-side token is a
nonterminal when the block defines it and a letter otherwise.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .alphabet import IndependenceAlphabet, format_word, parse_letter
from .conjugacy import GeneratorTable
from .errors import ValidationError
from .slp import Slp, from_word

NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class ParseError(ValidationError):
    def __init__(self, line: int, msg: str, source: str = "<input>"):
        super().__init__(f"{source}:{line}: {msg}")
        self.line = line


@dataclass
class Session:
    alphabet: Optional[IndependenceAlphabet] = None
    objects: dict = field(default_factory=dict)
    generators: Optional[GeneratorTable] = None

    def get(self, name: str) -> Slp:
        if name not in self.objects:
            raise ValidationError(f"no word or slp named {name!r}")
        return self.objects[name]

    def table(self) -> GeneratorTable:
        if self.generators is None:
            if self.alphabet is None:
                raise ValidationError("no alphabet declared")
            self.generators = GeneratorTable(self.alphabet)
        return self.generators


def _statements(text: str, src: str = "<input>"):
    """Yield (line number, statement) with brace blocks joined."""
    buf, start, depth = [], 0, 0
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not buf:
            start = no
        buf.append(line)
        depth += line.count("{") - line.count("}")
        if depth < 0:
            raise ParseError(no, "unbalanced '}'", src)
        if depth == 0:
            yield start, " ".join(buf)
            buf = []
    if buf:
        raise ParseError(start, "unterminated '{' block", src)


def _letters(alpha: IndependenceAlphabet, tokens, line: int, src: str) -> list:
    if tokens == ["1"]:
        return []
    out = []
    for t in tokens:
        try:
            x = parse_letter(t)
            alpha.base_of(x)
        except ValidationError as e:
            raise ParseError(line, str(e), src) from None
        out.append(x)
    return out


def _block(stmt: str, line: int, src: str) -> tuple[str, list]:
    m = re.match(r"^\w+\s+([A-Za-z0-9_]+)\s*\{(.*)\}$", stmt)
    if not m:
        raise ParseError(line, f"malformed block: {stmt!r}", src)
    return m.group(1), [p.strip() for p in m.group(2).split(";") if p.strip()]


def parse_session(text: str, source: str = "<input>", into: Optional[Session] = None) -> Session:
    sess = into if into is not None else Session()
    for line, stmt in _statements(text, source):
        head = stmt.split(None, 1)[0].rstrip(":")
        if head == "letters":
            toks = stmt.split(":", 1)[1].split() if ":" in stmt else []
            if sess.alphabet is not None:
                # a table file may repeat the letters of the session it extends
                if toks == list(sess.alphabet.letters):
                    continue
                raise ParseError(line, "letters declared twice", source)
            try:
                sess.alphabet = IndependenceAlphabet(toks, [])
            except ValidationError as e:
                raise ParseError(line, str(e), source) from None
            continue
        if sess.alphabet is None:
            raise ParseError(line, "the 'letters:' line must come first", source)
        alpha = sess.alphabet
        if head == "independent":
            body = stmt.split(":", 1)[1] if ":" in stmt else ""
            pairs = [p.split() for p in body.split(",") if p.strip()]
            if any(len(p) != 2 for p in pairs):
                raise ParseError(line, "independent pairs are written 'a c, b d'", source)
            try:
                sess.alphabet = IndependenceAlphabet(alpha.letters, list(alpha.independent_pairs) + pairs)
            except ValidationError as e:
                raise ParseError(line, str(e), source) from None
            if sess.generators is not None:
                sess.generators.alphabet = sess.alphabet
        elif head == "word":
            m = re.match(r"^word\s+(\S+)\s*=(.*)$", stmt)
            if not m or not NAME_RE.match(m.group(1)):
                raise ParseError(line, "expected 'word NAME = letters'", source)
            sess.objects[m.group(1)] = from_word(_letters(alpha, m.group(2).split(), line, source))
        elif head == "slp":
            name, parts = _block(stmt, line, source)
            sess.objects[name] = _parse_slp(alpha, parts, line, source)
        elif head == "gen":
            name, parts = _block(stmt, line, source)
            images = {}
            for p in parts:
                if "=>" not in p:
                    raise ParseError(line, f"expected 'x => word' in generator {name}, got {p!r}", source)
                lhs, rhs = (s.strip() for s in p.split("=>", 1))
                x = _letters(alpha, [lhs], line, source)[0]
                if x.sign < 0:
                    raise ParseError(line, f"generator {name}: give images of positive letters only", source)
                images[x.base] = _letters(alpha, rhs.split(), line, source)
            sess.table().add(name, images)
        else:
            raise ParseError(line, f"unknown statement {head!r}", source)
    return sess


def _parse_slp(alpha: IndependenceAlphabet, parts: list, line: int, src: str) -> Slp:
    rules: dict = {}
    start = None
    for p in parts:
        if p.startswith("start"):
            toks = p.split()
            if len(toks) != 2:
                raise ParseError(line, "expected 'start NAME'", src)
            start = toks[1]
            continue
        if "->" not in p:
            raise ParseError(line, f"expected 'NAME -> symbols', got {p!r}", src)
        lhs, rhs = (s.strip() for s in p.split("->", 1))
        if not NAME_RE.match(lhs):
            raise ParseError(line, f"bad nonterminal name {lhs!r}", src)
        if lhs in rules:
            raise ParseError(line, f"nonterminal {lhs} defined twice", src)
        rules[lhs] = rhs.split()
    if start is None:
        raise ParseError(line, "slp block lacks 'start NAME'", src)
    prods = {}
    for lhs, toks in rules.items():
        syms = []
        for t in toks:
            if t in rules:
                syms.append(t)
            elif t == "1":
                continue
            else:
                syms.extend(_letters(alpha, [t], line, src))
        prods[lhs] = syms
    try:
        return Slp.from_productions(prods, start)
    except ValidationError as e:
        raise ParseError(line, str(e), src) from None


def load_session(path, into: Optional[Session] = None) -> Session:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise ValidationError(f"cannot read {path}: {e.strerror}") from None
    return parse_session(text, str(p), into)


def alphabet_text(alpha: IndependenceAlphabet) -> str:
    lines = ["letters: " + " ".join(alpha.letters)]
    if alpha.independent_pairs:
        pairs = sorted(tuple(sorted(p, key=alpha.letters.index)) for p in alpha.independent_pairs)
        lines.append("independent: " + ", ".join(f"{x} {y}" for x, y in pairs))
    return "\n".join(lines)


def session_text(alpha: IndependenceAlphabet, objects: dict, table: Optional[GeneratorTable] = None) -> str:
    """Serialize an alphabet, named SLPs and generators; readable by :func:`parse_session`."""
    out = [alphabet_text(alpha)]
    for name, s in objects.items():
        out.append(s.to_text(name))
    if table is not None:
        for name in table.generators:
            body = " ".join(f"{a} => {format_word(table.image(name, a)) or '1'} ;" for a in alpha.letters)
            out.append(f"gen {name} {{ {body} }}")
    return "\n".join(out) + "\n"
