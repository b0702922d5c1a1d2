"""Text form of polynomials.

    poly  := ['+'|'-'] term (('+'|'-') term)*
    term  := [coeff] ('*'? atom)*
    atom  := ('x'|'y') (('^'|'**') nat)?
    coeff := integer ('/' positive-integer)?

Whitespace is insignificant.  The star between factors is optional, the
leading coefficient defaults to 1.  format() on BivarPoly emits a canonical
member of this language, so parse(format(f)) == f.
"""

import re

from .exceptions import ParseError
from .poly import BivarPoly

_TOKEN = re.compile(r"\s*(\d+|\*\*|[*/+^x()y-])")


def _tokenize(text: str):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos:].strip()[0]!r} "
                                 f"in polynomial {text!r}")
            break
        tok = m.group(1)
        if tok in ("(", ")"):
            raise ParseError("parentheses are not part of the polynomial grammar")
        out.append(tok)
        pos = m.end()
    return out


def parse_poly(text: str, field) -> BivarPoly:
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty polynomial")
    pos = 0
    acc = BivarPoly.zero(field)
    sign = 1
    first = True
    while pos < len(toks):
        if toks[pos] in "+-":
            sign = -1 if toks[pos] == "-" else 1
            pos += 1
            if pos == len(toks):
                raise ParseError(f"dangling sign in {text!r}")
        elif not first:
            raise ParseError(f"expected '+' or '-' before term at token "
                             f"{toks[pos]!r} in {text!r}")
        term, pos = _parse_term(toks, pos, field, text)
        acc = acc + (term if sign > 0 else -term)
        sign = 1
        first = False
    return acc


def _parse_term(toks, pos, field, text):
    coeff = field.one()
    exps = {"x": 0, "y": 0}
    saw_factor = False

    if pos < len(toks) and toks[pos].isdigit():
        num = toks[pos]
        pos += 1
        if pos < len(toks) and toks[pos] == "/":
            if pos + 1 >= len(toks) or not toks[pos + 1].isdigit():
                raise ParseError(f"bad fraction in {text!r}")
            coeff = field.parse(f"{num}/{toks[pos + 1]}")
            pos += 2
        else:
            coeff = field.parse(num)
        saw_factor = True
        if pos < len(toks) and toks[pos] == "*":
            pos += 1
            if pos == len(toks) or toks[pos] not in ("x", "y"):
                raise ParseError(f"dangling '*' in {text!r}")

    while pos < len(toks) and toks[pos] in ("x", "y"):
        var = toks[pos]
        pos += 1
        e = 1
        if pos < len(toks) and toks[pos] in ("^", "**"):
            if pos + 1 >= len(toks) or not toks[pos + 1].isdigit():
                raise ParseError(f"bad exponent in {text!r}")
            e = int(toks[pos + 1])
            pos += 2
        exps[var] += e
        saw_factor = True
        if pos < len(toks) and toks[pos] == "*":
            pos += 1
            if pos == len(toks) or toks[pos] not in ("x", "y"):
                raise ParseError(f"dangling '*' in {text!r}")

    if not saw_factor:
        raise ParseError(f"expected a term at token {toks[pos]!r} in {text!r}")
    return BivarPoly(field, {(exps["x"], exps["y"]): coeff}), pos
