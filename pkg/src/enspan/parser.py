r"""
regex-formula parsing functions

functions:
    - parse_regex_formula -- parse pattern text into a RegexFormula
    - unparse             -- print a RegexFormula back in canonical pattern syntax

    - parse_alt    -- parse alternation
    - parse_concat -- parse concatenation
    - parse_item   -- parse atom with optional repetition suffix
    - parse_atom   -- parse a single atom
    - parse_class  -- parse character class body
    - parse_escape -- parse escape sequence

grammar:
    expr    := alt
    alt     := concat ("|" concat)*
    concat  := item*
    item    := atom ("*" | "+" | "?" | "{" n ("," n)? "}")?
    atom    := literal-byte | "." | "[" class "]" | "(" alt ")" | name "{" alt "}"
    name    := [A-Za-z_][A-Za-z0-9_]*

    A name is the maximal identifier run before "{"; a single letter followed
    by a counter (e.g. `a{2}`) is a repeated literal. Escapes: `\` followed by
    a non-alphanumeric byte, plus `\n`, `\r`, `\t` and `\xHH`.

    Patterns match anywhere in the document (leading & trailing Σ*).
    A pattern without captures is wrapped into the implicit capture `x{...}`.
"""

__author__ = "Evgeny A. Stepanov"
__email__ = "stepanov.evgeny.a@gmail.com"
__status__ = "dev"
__version__ = "0.1.0"


import re

from dataclasses import dataclass

from enspan.errors import PatternError


METACHARS = b"\\.{}[]|()*+?"
ALL_BYTES = frozenset(range(256))
NEWLINE = 0x0A

IMPLICIT_VARIABLE = "x"


@dataclass(frozen=True)
class Literal:
    byte: int


@dataclass(frozen=True)
class AnyChar:
    """ any byte except newline """


@dataclass(frozen=True)
class CharClass:
    members: frozenset[int]


@dataclass(frozen=True)
class Concat:
    items: tuple


@dataclass(frozen=True)
class Union:
    items: tuple


@dataclass(frozen=True)
class Star:
    child: object


@dataclass(frozen=True)
class Plus:
    child: object


@dataclass(frozen=True)
class Optional:
    child: object


@dataclass(frozen=True)
class Counter:
    child: object
    min: int
    max: int


@dataclass(frozen=True)
class Capture:
    variable: int
    child: object


@dataclass(frozen=True)
class Epsilon:
    """ empty word """


Node = Literal | AnyChar | CharClass | Concat | Union | Star | Plus | Optional | Counter | Capture | Epsilon

SIGMA_STAR = Star(CharClass(ALL_BYTES))


@dataclass(frozen=True)
class RegexFormula:
    """
    parsed pattern

    body      -- AST as written (without implicit capture & Σ* wrapping)
    variables -- variable names by dense id
    implicit  -- True if the body is wrapped into the implicit capture
    """
    body: Node
    variables: tuple[str, ...]
    implicit: bool = False

    @property
    def root(self) -> Node:
        """ AST with the implicit capture and the leading/trailing Σ* """
        body = Capture(0, self.body) if self.implicit else self.body
        return Concat((SIGMA_STAR, body, SIGMA_STAR))


def parse_regex_formula(text: str | bytes) -> RegexFormula:
    """
    parse pattern text
    :param text: pattern (str is encoded as UTF-8)
    :type text: str | bytes
    :return: formula
    :rtype: RegexFormula
    :raises PatternError: on syntax error, duplicate variable, min > max counter
    """
    data = text.encode("utf-8") if isinstance(text, str) else bytes(text)
    names: dict[str, int] = {}

    node, pos = parse_alt(data, 0, names)

    if pos < len(data):
        raise PatternError(f"unexpected {chr(data[pos])!r}", pos)

    if not names:
        return RegexFormula(node, (IMPLICIT_VARIABLE,), implicit=True)

    return RegexFormula(node, tuple(names), implicit=False)


def parse_alt(data: bytes, pos: int, names: dict[str, int]) -> tuple[Node, int]:
    """
    parse alternation
    :param data: pattern bytes
    :type data: bytes
    :param pos: current offset
    :type pos: int
    :param names: variable name to id mapping (updated)
    :type names: dict[str, int]
    :return: node & new offset
    :rtype: tuple[Node, int]
    """
    branches = []
    node, pos = parse_concat(data, pos, names)
    branches.append(node)

    while pos < len(data) and data[pos] == ord("|"):
        node, pos = parse_concat(data, pos + 1, names)
        branches.append(node)

    if len(branches) == 1:
        return branches[0], pos

    # flatten nested alternations
    items = []
    for branch in branches:
        items.extend(branch.items if isinstance(branch, Union) else (branch,))

    return Union(tuple(items)), pos


def parse_concat(data: bytes, pos: int, names: dict[str, int]) -> tuple[Node, int]:
    """ parse concatenation; empty concatenation is Epsilon """
    items = []
    while pos < len(data) and data[pos] not in b"|)}":
        node, pos = parse_item(data, pos, names)
        if isinstance(node, Epsilon):
            continue
        items.extend(node.items if isinstance(node, Concat) else (node,))

    if not items:
        return Epsilon(), pos

    return (items[0] if len(items) == 1 else Concat(tuple(items))), pos


def parse_item(data: bytes, pos: int, names: dict[str, int]) -> tuple[Node, int]:
    """ parse atom & optional repetition suffix """
    node, pos = parse_atom(data, pos, names)

    if pos >= len(data):
        return node, pos

    char = data[pos]

    if char == ord("*"):
        return Star(node), pos + 1
    if char == ord("+"):
        return Plus(node), pos + 1
    if char == ord("?"):
        return Optional(node), pos + 1

    if char == ord("{"):
        match = re.compile(rb"\{(\d+)(,(\d*))?\}").match(data, pos)
        if match is None:
            raise PatternError("invalid counter", pos)
        if match.group(2) is not None and not match.group(3):
            raise PatternError("unbounded counter", pos)
        low = int(match.group(1))
        high = int(match.group(3)) if match.group(3) else low
        if low > high:
            raise PatternError(f"counter min > max: {{{low},{high}}}", pos)
        return Counter(node, low, high), match.end()

    return node, pos


def parse_atom(data: bytes, pos: int, names: dict[str, int]) -> tuple[Node, int]:
    """ parse atom """
    if pos >= len(data):
        raise PatternError("unexpected end of pattern", pos)

    char = data[pos]

    if char == ord("("):
        node, end = parse_alt(data, pos + 1, names)
        if end >= len(data) or data[end] != ord(")"):
            raise PatternError("missing ')'", end)
        return node, end + 1

    if char == ord("["):
        return parse_class(data, pos + 1)

    if char == ord("."):
        return AnyChar(), pos + 1

    if char == ord("\\"):
        byte, end = parse_escape(data, pos)
        return Literal(byte), end

    if char in b"*+?{":
        raise PatternError("nothing to repeat", pos)

    if char in b")]}|":
        raise PatternError(f"unexpected {chr(char)!r}", pos)

    # capture: maximal identifier run followed by "{" that is not a counter
    match = re.compile(rb"[A-Za-z_][A-Za-z0-9_]*").match(data, pos)
    if match is not None:
        end = match.end()
        if end < len(data) and data[end] == ord("{") and not re.compile(rb"\{\d").match(data, end):
            name = match.group().decode("ascii")
            if name in names:
                raise PatternError(f"duplicate capture variable: {name}", pos)
            names[name] = len(names)
            variable = names[name]
            child, close = parse_alt(data, end + 1, names)
            if close >= len(data) or data[close] != ord("}"):
                raise PatternError("missing '}'", close)
            return Capture(variable, child), close + 1

    return Literal(char), pos + 1


def parse_class(data: bytes, pos: int) -> tuple[CharClass, int]:
    """
    parse character class body (after "[")
    :param data: pattern bytes
    :type data: bytes
    :param pos: offset of the first byte after "["
    :type pos: int
    :return: class & offset after "]"
    :rtype: tuple[CharClass, int]
    """
    start = pos - 1
    negate = pos < len(data) and data[pos] == ord("^")
    pos += int(negate)

    members = set()
    while True:
        if pos >= len(data):
            raise PatternError("missing ']'", start)
        if data[pos] == ord("]"):
            break

        low, pos = parse_class_byte(data, pos)

        # range
        if pos + 1 < len(data) and data[pos] == ord("-") and data[pos + 1] != ord("]"):
            high, pos = parse_class_byte(data, pos + 1)
            if low > high:
                raise PatternError("invalid class range", pos)
            members.update(range(low, high + 1))
        else:
            members.add(low)

    if not members:
        raise PatternError("empty class", start)

    return CharClass(frozenset(ALL_BYTES - members if negate else members)), pos + 1


def parse_class_byte(data: bytes, pos: int) -> tuple[int, int]:
    """ parse a class member byte """
    if data[pos] == ord("\\"):
        return parse_escape(data, pos)
    return data[pos], pos + 1


def parse_escape(data: bytes, pos: int) -> tuple[int, int]:
    """
    parse escape sequence starting with a backslash at pos
    :param data: pattern bytes
    :type data: bytes
    :param pos: offset of the backslash
    :type pos: int
    :return: byte & new offset
    :rtype: tuple[int, int]
    """
    if pos + 1 >= len(data):
        raise PatternError("trailing backslash", pos)

    char = data[pos + 1]

    if char == ord("x"):
        digits = data[pos + 2:pos + 4]
        if not re.fullmatch(rb"[0-9A-Fa-f]{2}", digits):
            raise PatternError("invalid \\x escape", pos)
        return int(digits, 16), pos + 4

    controls = {ord("n"): 0x0A, ord("r"): 0x0D, ord("t"): 0x09}
    if char in controls:
        return controls[char], pos + 2

    if chr(char).isalnum() or char >= 0x80:
        raise PatternError(f"unknown escape: \\{chr(char)}", pos)

    return char, pos + 2


# canonical printing

def unparse(formula: RegexFormula) -> str:
    """
    print formula body in canonical pattern syntax;
    parse_regex_formula(unparse(f)) == f for parsed formulas
    :param formula: formula
    :type formula: RegexFormula
    :return: pattern text
    :rtype: str
    """
    return unparse_node(formula.body, formula.variables)


def unparse_node(node: Node, variables: tuple[str, ...]) -> str:
    """ print node """
    match node:
        case Epsilon():
            return ""
        case Literal(byte=byte):
            return format_byte(byte, METACHARS)
        case AnyChar():
            return "."
        case CharClass(members=members):
            return format_class(members)
        case Concat(items=items):
            text = ""
            for item in items:
                part = unparse_node(item, variables)
                if isinstance(item, Union):
                    part = f"({part})"
                # keep a capture name from merging with a preceding letter
                if isinstance(item, Capture) and text and (text[-1].isalnum() or text[-1] == "_"):
                    part = f"({part})"
                text += part
            return text
        case Union(items=items):
            return "|".join(unparse_node(item, variables) for item in items)
        case Star(child=child):
            return unparse_repeated(child, variables) + "*"
        case Plus(child=child):
            return unparse_repeated(child, variables) + "+"
        case Optional(child=child):
            return unparse_repeated(child, variables) + "?"
        case Counter(child=child, min=low, max=high):
            suffix = f"{{{low}}}" if low == high else f"{{{low},{high}}}"
            return unparse_repeated(child, variables) + suffix
        case Capture(variable=variable, child=child):
            text = unparse_node(child, variables)
            if re.fullmatch(r"\d.*", text):
                text = f"({text})"
            return f"{variables[variable]}{{{text}}}"

    raise ValueError(f"unsupported node: {node!r}")


def unparse_repeated(child: Node, variables: tuple[str, ...]) -> str:
    """ print repetition operand, parenthesized unless atomic """
    text = unparse_node(child, variables)
    if isinstance(child, (Literal, AnyChar, CharClass)):
        return text
    return f"({text})"


def format_byte(byte: int, special: bytes) -> str:
    """ print a byte as pattern text """
    if byte in special:
        return "\\" + chr(byte)
    if 0x20 <= byte < 0x7F:
        return chr(byte)
    return f"\\x{byte:02x}"


def format_class(members: frozenset[int]) -> str:
    """ print character class in canonical form """
    special = b"\\]^-["
    negate = len(members) > 128 and len(members) < 256
    values = sorted(ALL_BYTES - members if negate else members)

    parts = []
    start = prev = values[0]
    for value in values[1:] + [None]:
        if value is not None and value == prev + 1:
            prev = value
            continue
        if prev - start >= 2:
            parts.append(format_byte(start, special) + "-" + format_byte(prev, special))
        else:
            parts.extend(format_byte(item, special) for item in range(start, prev + 1))
        if value is not None:
            start = prev = value

    return "[" + ("^" if negate else "") + "".join(parts) + "]"
