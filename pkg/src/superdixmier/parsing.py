"""Parsers for scalar/element expressions and for algebra and functional files.

Expression grammar (whitespace-insensitive)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ['^' nat]
    atom   := nat | ident | 'sqrt' '(' expr ')' | '(' expr ')'

Division is only allowed by a nonzero scalar.  In element expressions each
identifier is a generator; products are straightened on the fly.
"""

import json
import re
from fractions import Fraction

from .exactlin.scalars import QQ, Surd, adjoin_sqrt, format_scalar

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_']*)|(.))")


class ParseError(ValueError):
    def __init__(self, message, text="", pos=None, line=None, column=None):
        self.text = text
        self.pos = pos
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = " (line %d, column %d)" % (line, column)
        elif pos is not None:
            where = " (column %d)" % (pos + 1)
        super().__init__(message + where)


def _tokenize(text):
    toks = []
    pos = 0
    while pos < len(text) and not text[pos:].isspace():
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1) is not None:
            toks.append(("num", int(m.group(1)), start))
        elif m.group(2) is not None:
            toks.append(("id", m.group(2), start))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError("unexpected character %r" % ch, text, start)
            toks.append(("op", ch, start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


def _is_scalar(x):
    return isinstance(x, (Fraction, Surd, int))


class _Parser:
    def __init__(self, text, resolve):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.resolve = resolve

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind, value=None):
        t = self.take()
        if t[0] != kind or (value is not None and t[1] != value):
            want = value if value is not None else kind
            raise ParseError("expected %r" % want, self.text, t[2])
        return t

    def parse(self):
        v = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError("unexpected %r" % (t[1],), self.text, t[2])
        return v

    def expr(self):
        neg = False
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            neg = t[1] == "-"
        v = self.term()
        if neg:
            v = -v
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                w = self.term()
                v = v + w if t[1] == "+" else v - w
            else:
                return v

    def term(self):
        v = self.factor()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "*/":
                self.take()
                w = self.factor()
                if t[1] == "*":
                    v = v * w
                else:
                    if not _is_scalar(w):
                        raise ParseError("division by a non-scalar", self.text, t[2])
                    if not w:
                        raise ParseError("division by zero", self.text, t[2])
                    v = v * (1 / Fraction(w)) if not isinstance(w, Surd) else v * w.inverse()
            else:
                return v

    def factor(self):
        v = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "num":
                raise ParseError("exponent must be a natural number", self.text, e[2])
            v = v ** e[1]
        return v

    def atom(self):
        t = self.take()
        if t[0] == "num":
            return Fraction(t[1])
        if t[0] == "id":
            if t[1] == "sqrt" and self.peek()[0] == "op" and self.peek()[1] == "(":
                self.take()
                inner = self.expr()
                self.expect("op", ")")
                if not _is_scalar(inner):
                    raise ParseError("sqrt of a non-scalar", self.text, t[2])
                if not inner:
                    return Fraction(0)
                return adjoin_sqrt(QQ, inner)[1]
            try:
                return self.resolve(t[1])
            except KeyError:
                raise ParseError("unknown identifier %r" % t[1], self.text, t[2]) from None
        if t[0] == "op" and t[1] == "(":
            v = self.expr()
            self.expect("op", ")")
            return v
        raise ParseError("unexpected %r" % (t[1],), self.text, t[2])


def _no_idents(name):
    raise KeyError(name)


def parse_scalar(text):
    text = str(text)
    v = _Parser(text, _no_idents).parse()
    if not _is_scalar(v):
        raise ParseError("not a scalar", text)
    return Fraction(v) if isinstance(v, int) else v


def parse_element(alg, text):
    """Parse an expression in the generators of alg into a straightened PBWElement."""
    from .pbw import generator, scalar

    def resolve(name):
        return generator(alg, alg.index(name))

    v = _Parser(text, resolve).parse()
    if _is_scalar(v):
        return scalar(alg, v)
    return v


# ---------------------------------------------------------------------------
# files
# ---------------------------------------------------------------------------

class InputError(ValueError):
    pass


def _parity(p, where):
    if p in (0, "0", "even"):
        return 0
    if p in (1, "1", "odd"):
        return 1
    raise InputError("%s: parity must be 0/1 or even/odd, got %r" % (where, p))


def load_json(path_or_text):
    if isinstance(path_or_text, dict):
        return path_or_text
    text = path_or_text
    src = "<string>"
    if not str(path_or_text).lstrip().startswith("{"):
        src = str(path_or_text)
        with open(path_or_text, encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("%s: %s" % (src, exc.msg), line=exc.lineno, column=exc.colno) from None


def algebra_from_data(data, validate_result=True):
    from .superlie import SuperLieAlgebra, validate

    if not isinstance(data, dict) or "generators" not in data:
        raise InputError("algebra file needs a 'generators' list")
    labels, pars = [], []
    for k, g in enumerate(data["generators"]):
        if "id" not in g:
            raise InputError("generator %d has no id" % k)
        labels.append(str(g["id"]))
        pars.append(_parity(g.get("parity", 0), "generator %s" % g["id"]))
    if len(set(labels)) != len(labels):
        raise InputError("generator ids are not unique")
    index = {lab: i for i, lab in enumerate(labels)}
    brackets = {}
    for k, b in enumerate(data.get("brackets", [])):
        try:
            i, j = index[b["left"]], index[b["right"]]
        except KeyError as exc:
            raise InputError("bracket %d references undeclared id %s" % (k, exc)) from None
        col = {}
        for lab, val in b.get("value", {}).items():
            if lab not in index:
                raise InputError("bracket %d value references undeclared id %r" % (k, lab))
            try:
                c = parse_scalar(str(val))
            except ParseError as exc:
                raise InputError("bracket %d: bad scalar %r: %s" % (k, val, exc)) from None
            if c:
                col[index[lab]] = c
        if (i, j) in brackets:
            raise InputError("bracket [%s,%s] given twice" % (labels[i], labels[j]))
        brackets[(i, j)] = col
    alg = SuperLieAlgebra.from_brackets(labels, pars, brackets, name=data.get("name"))
    if validate_result:
        rep = validate(alg)
        if not rep:
            raise InputError("algebra %s is invalid: %s" % (alg.name, rep))
    return alg


def parse_algebra(path_or_data):
    return algebra_from_data(load_json(path_or_data))


def functional_from_data(alg, data):
    from .polarization import Functional

    values = data.get("values", data) if isinstance(data, dict) else None
    if not isinstance(values, dict):
        raise InputError("functional needs a 'values' mapping")
    out = {}
    for lab, val in values.items():
        if lab == "name":
            continue
        if lab not in alg.labels:
            raise InputError("functional references undeclared id %r" % lab)
        out[lab] = parse_scalar(str(val))
    try:
        return Functional.from_values(alg, out)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def parse_functional(alg, path_or_data):
    return functional_from_data(alg, load_json(path_or_data))


def serialize_algebra(alg):
    brackets = []
    n = alg.dim
    for i in range(n):
        for j in range(i, n):
            col = alg.structure(i, j)
            if col:
                brackets.append(
                    {
                        "left": alg.labels[i],
                        "right": alg.labels[j],
                        "value": {alg.labels[k]: format_scalar(c) for k, c in col},
                    }
                )
    return {
        "name": alg.name,
        "generators": [{"id": l, "parity": p} for l, p in zip(alg.labels, alg.parities)],
        "brackets": brackets,
    }


def serialize_functional(alg, lam, name=None):
    out = {"values": {l: format_scalar(c) for l, c in zip(alg.labels, lam) if c}}
    if name:
        out = {"name": name, **out}
    return out
