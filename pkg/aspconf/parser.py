"""
Concrete syntax for programs (``.lp``), policies (``.pol``) and queries.

Programs::

    ill(X,aids) ; ill(X,flu) :- treat(X,medi1), not treat(X,medi2).
    -ill(pete,flu).
    :- not goal.

Policies hold one element per statement, a conjunction of (NAF-)literals or
several conjunctions separated by ``|``::

    ill(X,aids).
    p(X), not q(X) | r(X).

Constants and predicates start lowercase, variables uppercase; ``%`` starts
a comment. Predicates starting with ``__`` are reserved for internal atoms.
"""

import functools
import logging
import operator

from lark import Lark, Transformer
from lark.exceptions import (
    UnexpectedCharacters,
    UnexpectedEOF,
    UnexpectedInput,
    UnexpectedToken,
    VisitError,
)

from aspconf.confidentiality import Policy
from aspconf.exceptions import ArityConflict, InternalAtomLeak, ParseError, ReservedPredicate
from aspconf.formula import Formula
from aspconf.program import RESERVED_PREFIX, Atom, BodyElem, Literal, Program, Rule, const, var
from aspconf.solver import Query

logger = logging.getLogger(__name__)

_COMMON = r"""
    body_elem:  "not" literal             -> naf_elem
              | literal                   -> pos_elem
    literal:    "-" atom                  -> neg_literal
              | atom                      -> pos_literal
    atom:       NAME ("(" term ("," term)* ")")?
    term:       NAME                      -> constant
              | NUMBER                    -> constant
              | VARIABLE                  -> variable

    NAME:       /_*[a-z][a-zA-Z0-9_]*/
    VARIABLE:   /[A-Z][a-zA-Z0-9_]*/
    NUMBER:     /[0-9]+/
    COMMENT:    /%[^\n]*/

    %import common.WS
    %ignore WS
    %ignore COMMENT
"""

_PROGRAM_GRAMMAR = (
    r"""
    start:      statement*
    statement:  head "."                  -> fact
              | head ":-" body "."        -> rule
              | ":-" body "."             -> constraint
    head:       literal (";" literal)*
    body:       body_elem ("," body_elem)*
"""
    + _COMMON
)

_POLICY_GRAMMAR = (
    r"""
    start:      element*
    element:    conjunction ("|" conjunction)* "."
    conjunction: body_elem ("," body_elem)*
"""
    + _COMMON
)

_QUERY_GRAMMAR = (
    r"""
    start:      body_elem ("," body_elem)* "."?
"""
    + _COMMON
)

_program_parser = Lark(_PROGRAM_GRAMMAR, parser="lalr")
_policy_parser = Lark(_POLICY_GRAMMAR, parser="lalr")
_query_parser = Lark(_QUERY_GRAMMAR, parser="lalr")


class SourceProgram:
    """
    Text to be parsed together with its origin label, one of
    ``kb``, ``prior``, ``policy`` or ``query``.
    """

    ORIGINS = ("kb", "prior", "policy", "query")

    def __init__(self, text, origin="kb", path=None):
        if origin not in self.ORIGINS:
            raise ValueError("unknown origin {0!r}".format(origin))
        self.text = text
        self.origin = origin
        self.path = path

    @classmethod
    def from_path(cls, path, origin="kb"):
        with open(path, encoding="utf-8") as f:
            return cls(f.read(), origin, path)

    def __repr__(self):
        return "<SourceProgram: {0} {1}>".format(self.origin, self.path or "<text>")


class _Builder(Transformer):
    def __init__(self, allow_reserved=False):
        super().__init__()
        self.allow_reserved = allow_reserved
        self.arities = {}

    def constant(self, children):
        return const(str(children[0]))

    def variable(self, children):
        return var(str(children[0]))

    def atom(self, children):
        name, terms = children[0], tuple(children[1:])
        if name.startswith(RESERVED_PREFIX) and not self.allow_reserved:
            raise ReservedPredicate(
                "predicates starting with '{0}' are reserved".format(RESERVED_PREFIX),
                name.line,
                name.column,
                str(name),
            )
        seen = self.arities.setdefault(str(name), len(terms))
        if seen != len(terms):
            raise ArityConflict(
                "predicate {0} used with arities {1} and {2}".format(
                    name, seen, len(terms)
                ),
                name.line,
                name.column,
                str(name),
            )
        return Atom(str(name), terms)

    def pos_literal(self, children):
        return Literal(children[0])

    def neg_literal(self, children):
        return Literal(children[0], True)

    def pos_elem(self, children):
        return BodyElem(children[0])

    def naf_elem(self, children):
        return BodyElem(children[0], True)

    def head(self, children):
        return frozenset(children)

    def body(self, children):
        return frozenset(children)

    def fact(self, children):
        return Rule(children[0])

    def rule(self, children):
        return Rule(children[0], children[1])

    def constraint(self, children):
        return Rule(frozenset(), children[0])

    def conjunction(self, children):
        return Formula(*children)

    def element(self, children):
        return functools.reduce(operator.or_, children)

    def start(self, children):
        return children


def _parse(lark_parser, src, allow_reserved=False):
    text = src.text if isinstance(src, SourceProgram) else src
    origin = src.origin if isinstance(src, SourceProgram) else None
    try:
        tree = lark_parser.parse(text)
    except UnexpectedCharacters as e:
        message = "unexpected character"
        if origin == "policy" and e.char == ":":
            message = "rules are not allowed in policy files"
        raise ParseError(message, e.line, e.column, e.char) from None
    except UnexpectedEOF as e:
        raise ParseError("unexpected end of input", e.line, e.column) from None
    except UnexpectedToken as e:
        if e.token.type == "$END":
            raise ParseError("unexpected end of input", e.line, e.column) from None
        raise ParseError("unexpected token", e.line, e.column, str(e.token)) from None
    except UnexpectedInput as e:
        raise ParseError(str(e), e.line, e.column) from None
    try:
        return _Builder(allow_reserved).transform(tree)
    except VisitError as e:
        raise e.orig_exc from None


def parse_program(src, allow_reserved=False):
    """
    Parse a program.

    :param src: program text
    :type src: SourceProgram or str
    :param allow_reserved: accept internal ``__`` predicates, for re-reading
        printed intermediate programs
    :raises ParseError: on the first syntax error, with position
    :raises ReservedPredicate: on a user predicate with the reserved prefix
    :raises ArityConflict: on a predicate used with two arities
    """
    return Program(_parse(_program_parser, src, allow_reserved))


def parse_policy(src):
    """
    Parse a policy file into a :class:`~aspconf.confidentiality.Policy` with
    one element per statement.
    """
    if isinstance(src, str):
        src = SourceProgram(src, "policy")
    return Policy(_parse(_policy_parser, src))


def parse_query(src):
    """Parse a conjunction of (NAF-)literals, the trailing dot is optional."""
    if isinstance(src, str):
        src = SourceProgram(src, "query")
    return Query(_parse(_query_parser, src))


def serialize(p, publishable=False):
    """
    Canonical text of ``p``: facts first, then rules, each group sorted, one
    rule per line.

    :param publishable: refuse programs that still contain internal atoms
    :raises InternalAtomLeak: if ``publishable`` and a reserved atom occurs
    """
    if publishable:
        for r in p:
            for l in r.literals():
                if l.is_reserved:
                    raise InternalAtomLeak(l)
    lines = [str(r) for r in p]
    return "".join(line + "\n" for line in lines)
