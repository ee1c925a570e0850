class AspconfException(Exception):
    """
    A base class that identifies all exceptions raised by :mod:`aspconf`.
    """


class ParseError(AspconfException, ValueError):
    """
    Raised when a program, policy or query text cannot be parsed.

    Only the first error is reported and no partial program is returned.
    """

    def __init__(self, message, line=None, column=None, token=None):
        super().__init__(message, line, column, token)
        self.message = message
        self.line = line
        self.column = column
        self.token = token

    def __str__(self):
        where = ""
        if self.line is not None:
            where = "line {0}, column {1}: ".format(self.line, self.column)
        found = ""
        if self.token is not None:
            found = " (found {0!r})".format(self.token)
        return "{0}{1}{2}".format(where, self.message, found)


class ReservedPredicate(ParseError):
    """
    A user predicate uses the reserved ``__`` prefix of internal atoms.
    """


class ArityConflict(ParseError):
    """
    The same predicate symbol occurs with two different arities.
    """


class EmptyUniverse(AspconfException):
    """
    Grounding was requested for rules with variables but no constant is
    available to substitute for them.
    """


class NonGroundRule(AspconfException):
    """
    An operation that is only defined for ground rules received a rule with
    variables.
    """

    def __init__(self, rule):
        super().__init__(rule)
        self.rule = rule

    def __str__(self):
        return "rule is not ground: {0}".format(self.rule)


class ResourceCap(AspconfException):
    """
    A configured resource cap was exceeded. Results are never truncated
    silently, the computation stops with this error instead.
    """

    def __init__(self, cap, limit, actual):
        super().__init__(cap, limit, actual)
        self.cap = cap
        self.limit = limit
        self.actual = actual

    def __str__(self):
        return "{0} cap exceeded: {1} > {2}".format(self.cap, self.actual, self.limit)


class InconsistentProgram(AspconfException):
    """
    The program has no consistent answer set where one is required.
    """


class InconsistentInput(InconsistentProgram):
    """
    The knowledge base together with the prior knowledge is inconsistent, so
    there is nothing to protect.
    """


class NonLiteralAbducible(AspconfException):
    """
    An update program was requested for an abductive program whose
    abducibles still contain rules. Apply the normal form first.
    """

    def __init__(self, rule):
        super().__init__(rule)
        self.rule = rule

    def __str__(self):
        return "abducible is not a literal: {0}".format(self.rule)


class UnknownUpdateAtom(AspconfException):
    """
    An answer set contains an update atom that the update program does not
    know about.
    """

    def __init__(self, atom):
        super().__init__(atom)
        self.atom = atom

    def __str__(self):
        return "unknown update atom: {0}".format(self.atom)


class EmptyPolicy(AspconfException):
    """
    A policy transformation was requested for a policy with no elements.
    """


class InternalAtomLeak(AspconfException):
    """
    A reserved internal atom was about to be written into a publishable
    program.
    """

    def __init__(self, literal):
        super().__init__(literal)
        self.literal = literal

    def __str__(self):
        return "internal atom in publishable program: {0}".format(self.literal)


class UnsupportedFormula(AspconfException, ValueError):
    """
    A policy formula falls outside conjunctions of (NAF-)literals and their
    disjunctions.
    """


__all__ = (
    AspconfException.__name__,
    ParseError.__name__,
    ReservedPredicate.__name__,
    ArityConflict.__name__,
    EmptyUniverse.__name__,
    NonGroundRule.__name__,
    ResourceCap.__name__,
    InconsistentProgram.__name__,
    InconsistentInput.__name__,
    NonLiteralAbducible.__name__,
    UnknownUpdateAtom.__name__,
    EmptyPolicy.__name__,
    InternalAtomLeak.__name__,
    UnsupportedFormula.__name__,
)
