"""
Copyright (c) Django Software Foundation and individual contributors.
All rights reserved.

Redistribution and use in source and binary forms, with or without modification,
are permitted provided that the following conditions are met:

    1. Redistributions of source code must retain the above copyright notice,
       this list of conditions and the following disclaimer.

    2. Redistributions in binary form must reproduce the above copyright
       notice, this list of conditions and the following disclaimer in the
       documentation and/or other materials provided with the distribution.

    3. Neither the name of Django nor the names of its contributors may be used
       to endorse or promote products derived from this software without
       specific prior written permission.

THIS SOFTWARE IS PROVIDED BY THE COPYRIGHT HOLDERS AND CONTRIBUTORS "AS IS" AND
ANY EXPRESS OR IMPLIED WARRANTIES, INCLUDING, BUT NOT LIMITED TO, THE IMPLIED
WARRANTIES OF MERCHANTABILITY AND FITNESS FOR A PARTICULAR PURPOSE ARE
DISCLAIMED. IN NO EVENT SHALL THE COPYRIGHT OWNER OR CONTRIBUTORS BE LIABLE FOR
ANY DIRECT, INDIRECT, INCIDENTAL, SPECIAL, EXEMPLARY, OR CONSEQUENTIAL DAMAGES
(INCLUDING, BUT NOT LIMITED TO, PROCUREMENT OF SUBSTITUTE GOODS OR SERVICES;
LOSS OF USE, DATA, OR PROFITS; OR BUSINESS INTERRUPTION) HOWEVER CAUSED AND ON
ANY THEORY OF LIABILITY, WHETHER IN CONTRACT, STRICT LIABILITY, OR TORT
(INCLUDING NEGLIGENCE OR OTHERWISE) ARISING IN ANY WAY OUT OF THE USE OF THIS
SOFTWARE, EVEN IF ADVISED OF THE POSSIBILITY OF SUCH DAMAGE.


Policy formulas as trees of AND/OR nodes over (NAF-)literals, combined with
`&` and `|` and expanded into disjunctive normal form.
"""

import itertools

from aspconf.exceptions import UnsupportedFormula
from aspconf.program import BodyElem, Literal


def _as_child(item):
    if isinstance(item, (BodyElem, Formula)):
        return item
    if isinstance(item, Literal):
        return BodyElem(item)
    raise TypeError(item)


class Formula:
    """
    A connective whose children are body elements or other formulas. Build
    leaves with ``Formula(l1, l2, ...)`` (a conjunction) and combine them
    with ``&`` and ``|``; ``~`` turns a single positive literal into its
    NAF-literal.
    """

    AND = "AND"
    OR = "OR"

    def __init__(self, *args, _connector=None):
        self.children = [_as_child(a) for a in args]
        self.connector = _connector or self.AND

    def __str__(self):
        return "({0}: {1})".format(
            self.connector, ", ".join(str(c) for c in self.children)
        )

    def __repr__(self):
        return "<Formula: {0}>".format(self)

    def __len__(self):
        return len(self.children)

    def __bool__(self):
        return bool(self.children)

    def __eq__(self, other):
        if not isinstance(other, Formula):
            return NotImplemented
        return self.connector == other.connector and self.children == other.children

    def __hash__(self):
        return hash((self.connector,) + tuple(self.children))

    def _combine(self, other, conn):
        if not isinstance(other, Formula):
            raise TypeError(other)
        if not other:
            return self
        if not self:
            return other
        children = []
        for part in (self, other):
            # (AB)(CD) == (ABCD)
            if part.connector == conn or len(part) == 1:
                children.extend(part.children)
            else:
                children.append(part)
        return Formula(*children, _connector=conn)

    def __or__(self, other):
        return self._combine(other, self.OR)

    def __and__(self, other):
        return self._combine(other, self.AND)

    def __invert__(self):
        if len(self.children) == 1 and isinstance(self.children[0], BodyElem):
            elem = self.children[0]
            if not elem.naf:
                return Formula(BodyElem(elem.literal, naf=True))
        raise UnsupportedFormula(
            "negation as failure applies to single literals only: {0}".format(self)
        )

    def dnf(self):
        """
        The disjuncts of this formula in disjunctive normal form, each a
        frozenset of body elements, in order of first appearance.
        """
        expanded = []
        for child in self.children:
            if isinstance(child, Formula):
                expanded.append(child.dnf())
            else:
                expanded.append([frozenset([child])])
        if self.connector == self.OR:
            disjuncts = [c for part in expanded for c in part]
        else:
            disjuncts = [
                frozenset().union(*combo) for combo in itertools.product(*expanded)
            ]
        unique = []
        for c in disjuncts:
            if c not in unique:
                unique.append(c)
        return unique

    def variables(self):
        names = set()
        for c in self.dnf():
            for b in c:
                names.update(b.literal.variables())
        return frozenset(names)

    def constants(self):
        names = set()
        for c in self.dnf():
            for b in c:
                names.update(b.literal.constants())
        return frozenset(names)
