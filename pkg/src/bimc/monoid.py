"""Output monoids with computable most general equalizers.

A pair (m1, m2) is equalizable when some (x1, x2) satisfies
m1*x1 == m2*x2; a most general equalizer (mge) is an equalizer that
every other equalizer factors through on the right.  Every monoid here
is right cancellative and provides eta(m1, m2) returning an mge, or
None when the pair has no equalizer at all.

Four instances are available: free words over a finite alphabet,
non-negative rationals under addition, integers under addition, and
pairs combining any two of the above componentwise.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction


class DescriptorMismatch(TypeError):
    """Combined values belong to different monoids."""


class AccumulationFailure(ValueError):
    """Equalizer accumulation hit a non-equalizable intermediate pair."""


class Monoid:
    """Base descriptor.  Subclasses implement the raw payload operations;
    callers normally go through the module-level functions on MonoidValue."""

    def unit_payload(self):
        raise NotImplementedError

    def op_payload(self, a, b):
        raise NotImplementedError

    def eta_payload(self, a, b):
        """Mge of (a, b) as a payload pair, or None if not equalizable."""
        raise NotImplementedError

    def inverse_payload(self, a):
        """Two-sided inverse payload, or None if a is not invertible."""
        raise NotImplementedError

    def check_payload(self, a):
        """Validate and normalize a raw payload, returning the stored form."""
        raise NotImplementedError

    def format_payload(self, a) -> str:
        raise NotImplementedError

    def parse_payload(self, text: str):
        raise NotImplementedError

    @property
    def unit(self) -> MonoidValue:
        return MonoidValue(self, self.unit_payload())

    def value(self, payload) -> MonoidValue:
        return MonoidValue(self, payload)


# characters that would break descriptor and value literal parsing
_FORBIDDEN_SYMBOL_CHARS = set('"(),')


@dataclass(frozen=True)
class FreeWords(Monoid):
    """Free monoid over a finite alphabet of single-character symbols.

    Payloads are plain strings; the unit is the empty word.  A pair of
    words is equalizable iff one is a prefix of the other, and the mge
    pads the shorter side with the leftover suffix.
    """

    alphabet: tuple[str, ...]

    def __post_init__(self):
        if not self.alphabet:
            raise ValueError("free monoid needs a nonempty alphabet")
        seen = set()
        for c in self.alphabet:
            if not isinstance(c, str) or len(c) != 1:
                raise ValueError(f"alphabet symbols must be single characters, got {c!r}")
            if c.isspace() or c in _FORBIDDEN_SYMBOL_CHARS:
                raise ValueError(f"symbol not allowed in literals: {c!r}")
            if c in seen:
                raise ValueError(f"duplicate alphabet symbol {c!r}")
            seen.add(c)

    def unit_payload(self):
        return ""

    def op_payload(self, a, b):
        return a + b

    def eta_payload(self, a, b):
        if b.startswith(a):
            return (b[len(a):], "")
        if a.startswith(b):
            return ("", a[len(b):])
        return None

    def inverse_payload(self, a):
        return "" if a == "" else None

    def check_payload(self, a):
        if not isinstance(a, str):
            raise ValueError(f"free word payload must be str, got {type(a).__name__}")
        bad = set(a) - set(self.alphabet)
        if bad:
            raise ValueError(f"symbols outside the alphabet: {sorted(bad)!r}")
        return a

    def format_payload(self, a) -> str:
        return f'"{a}"'

    def parse_payload(self, text: str):
        if len(text) < 2 or text[0] != '"' or text[-1] != '"':
            raise ValueError(f"free word literal must be quoted, got {text!r}")
        return self.check_payload(text[1:-1])

    def lex_key(self, a):
        """Sort key realizing lexicographic order with proper prefixes first,
        using the declared symbol order."""
        rank = {c: i for i, c in enumerate(self.alphabet)}
        return tuple(rank[c] for c in a)


_RAT_RE = re.compile(r"^\d+(/\d+)?$")
_INT_RE = re.compile(r"^[+-]?\d+$")


@dataclass(frozen=True)
class NonNegRationals(Monoid):
    """Non-negative rationals under addition, kept exact as Fractions.

    Any pair (m, n) is equalizable; the mge is (M - m, M - n) with
    M = max(m, n).  Only 0 is invertible.
    """

    def unit_payload(self):
        return Fraction(0)

    def op_payload(self, a, b):
        return a + b

    def eta_payload(self, a, b):
        m = max(a, b)
        return (m - a, m - b)

    def inverse_payload(self, a):
        return Fraction(0) if a == 0 else None

    def check_payload(self, a):
        if isinstance(a, float):
            raise ValueError("floats are not accepted, use Fraction or int")
        a = Fraction(a)
        if a < 0:
            raise ValueError(f"negative rational {a}")
        return a

    def format_payload(self, a) -> str:
        return str(a)

    def parse_payload(self, text: str):
        if not _RAT_RE.match(text):
            raise ValueError(f"bad rational literal {text!r}")
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise ValueError(f"zero denominator in {text!r}") from None


@dataclass(frozen=True)
class Integers(Monoid):
    """Integers under addition.  A group, so eta(g, h) = (0, g - h) and
    every element is invertible."""

    def unit_payload(self):
        return 0

    def op_payload(self, a, b):
        return a + b

    def eta_payload(self, a, b):
        return (0, a - b)

    def inverse_payload(self, a):
        return -a

    def check_payload(self, a):
        if isinstance(a, bool) or not isinstance(a, int):
            raise ValueError(f"integer payload expected, got {a!r}")
        return a

    def format_payload(self, a) -> str:
        return str(a)

    def parse_payload(self, text: str):
        if not _INT_RE.match(text):
            raise ValueError(f"bad integer literal {text!r}")
        return int(text)


@dataclass(frozen=True)
class PairOf(Monoid):
    """Cartesian product of two component monoids, componentwise.

    A pair of pairs is equalizable iff both components are, and the mge
    pairs up the component mges.
    """

    left: Monoid
    right: Monoid

    def unit_payload(self):
        return (self.left.unit_payload(), self.right.unit_payload())

    def op_payload(self, a, b):
        return (self.left.op_payload(a[0], b[0]), self.right.op_payload(a[1], b[1]))

    def eta_payload(self, a, b):
        el = self.left.eta_payload(a[0], b[0])
        if el is None:
            return None
        er = self.right.eta_payload(a[1], b[1])
        if er is None:
            return None
        return ((el[0], er[0]), (el[1], er[1]))

    def inverse_payload(self, a):
        il = self.left.inverse_payload(a[0])
        if il is None:
            return None
        ir = self.right.inverse_payload(a[1])
        if ir is None:
            return None
        return (il, ir)

    def check_payload(self, a):
        if not isinstance(a, tuple) or len(a) != 2:
            raise ValueError(f"pair payload must be a 2-tuple, got {a!r}")
        return (self.left.check_payload(a[0]), self.right.check_payload(a[1]))

    def format_payload(self, a) -> str:
        return f"({self.left.format_payload(a[0])},{self.right.format_payload(a[1])})"

    def parse_payload(self, text: str):
        text = text.strip()
        if not (text.startswith("(") and text.endswith(")")):
            raise ValueError(f"pair literal must be parenthesized, got {text!r}")
        lt, rt = _split_top_level(text[1:-1], text)
        return (self.left.parse_payload(lt.strip()), self.right.parse_payload(rt.strip()))


@dataclass(frozen=True)
class MonoidValue:
    """An element of a concrete monoid: descriptor plus raw payload."""

    monoid: Monoid
    payload: object

    def __post_init__(self):
        object.__setattr__(self, "payload", self.monoid.check_payload(self.payload))

    def __mul__(self, other: MonoidValue) -> MonoidValue:
        return op(self, other)

    def __repr__(self):
        return f"MonoidValue({self.monoid.format_payload(self.payload)})"


def _same_monoid(a: MonoidValue, b: MonoidValue) -> Monoid:
    if a.monoid != b.monoid:
        raise DescriptorMismatch(f"{a.monoid} vs {b.monoid}")
    return a.monoid


def op(a: MonoidValue, b: MonoidValue) -> MonoidValue:
    m = _same_monoid(a, b)
    return MonoidValue(m, m.op_payload(a.payload, b.payload))


def eta(a: MonoidValue, b: MonoidValue):
    """Most general equalizer of (a, b), or None when no equalizer exists.

    Equal arguments always yield (e, e), checked before anything else.
    """
    m = _same_monoid(a, b)
    if a.payload == b.payload:
        e = m.unit
        return (e, e)
    r = m.eta_payload(a.payload, b.payload)
    if r is None:
        return None
    return (MonoidValue(m, r[0]), MonoidValue(m, r[1]))


def inverse(a: MonoidValue):
    r = a.monoid.inverse_payload(a.payload)
    return None if r is None else MonoidValue(a.monoid, r)


def solve_right(m: MonoidValue, n: MonoidValue):
    """The unique c with m*c == n, or None when no such c exists.

    Exists iff (m, n) is equalizable with an invertible second mge
    component; then c = x1 * x2^-1 for (x1, x2) = eta(m, n).
    """
    r = eta(m, n)
    if r is None:
        return None
    x2i = inverse(r[1])
    if x2i is None:
        return None
    return r[0] * x2i


def mu_n(values):
    """Mge of a tuple of values: the componentwise-minimal (x1..xk) with
    all values[i]*xi equal.  None when the tuple is not equalizable.

    Built by extending the mge of the first k-1 components with
    eta(values[-2], values[-1]), re-aligning through one more eta.
    """
    values = tuple(values)
    if not values:
        raise ValueError("mu_n of an empty tuple")
    m = values[0].monoid
    for v in values[1:]:
        _same_monoid(values[0], v)
    if len(values) == 1:
        return (m.unit,)
    acc = eta(values[0], values[1])
    if acc is None:
        return None
    acc = list(acc)
    for i in range(1, len(values) - 1):
        w = eta(values[i], values[i + 1])
        if w is None:
            return None
        z = eta(acc[-1], w[0])
        if z is None:
            return None
        zx, zy = z
        acc = [x * zx for x in acc] + [w[1] * zy]
    return tuple(acc)


def gamma_n(pairs, monoid: Monoid | None = None):
    """Accumulate a chain of pairwise mges into a tuple mge.

    pairs[i] must be an mge of some (n_i, n_i+1); the result then equals
    mu_n(n_1..n_k) without ever touching the n_i themselves.  The empty
    chain needs an explicit monoid and yields (e,).  Raises
    AccumulationFailure if an intermediate pair is not equalizable.
    """
    pairs = tuple(pairs)
    if not pairs:
        if monoid is None:
            raise ValueError("empty chain needs an explicit monoid")
        return (monoid.unit,)
    acc = list(pairs[0])
    for x1, x2 in pairs[1:]:
        h = eta(acc[-1], x1)
        if h is None:
            raise AccumulationFailure(f"cannot align {acc[-1]!r} with {x1!r}")
        h1, h2 = h
        acc = [z * h1 for z in acc] + [x2 * h2]
    return tuple(acc)


def _split_top_level(inner: str, whole: str) -> tuple[str, str]:
    """Split 'a,b' at the single comma not nested in parens or quotes."""
    depth = 0
    in_quote = False
    for i, c in enumerate(inner):
        if in_quote:
            if c == '"':
                in_quote = False
        elif c == '"':
            in_quote = True
        elif c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
        elif c == "," and depth == 0:
            return inner[:i], inner[i + 1:]
    raise ValueError(f"expected a top-level comma in {whole!r}")


def parse_descriptor(text: str) -> Monoid:
    """Parse a descriptor literal: free:<alphabet>, nnrat, intgrp, or
    product(<d1>,<d2>)."""
    s = text.strip()
    if s == "nnrat":
        return NonNegRationals()
    if s == "intgrp":
        return Integers()
    if s.startswith("free:"):
        return FreeWords(tuple(s[len("free:"):]))
    if s.startswith("product(") and s.endswith(")"):
        lt, rt = _split_top_level(s[len("product("):-1], s)
        return PairOf(parse_descriptor(lt), parse_descriptor(rt))
    raise ValueError(f"bad monoid descriptor {text!r}")


def format_descriptor(m: Monoid) -> str:
    if isinstance(m, FreeWords):
        return "free:" + "".join(m.alphabet)
    if isinstance(m, NonNegRationals):
        return "nnrat"
    if isinstance(m, Integers):
        return "intgrp"
    if isinstance(m, PairOf):
        return f"product({format_descriptor(m.left)},{format_descriptor(m.right)})"
    raise ValueError(f"unknown descriptor {m!r}")


def parse_value(m: Monoid, text: str) -> MonoidValue:
    return MonoidValue(m, m.parse_payload(text.strip()))


def format_value(v: MonoidValue) -> str:
    return v.monoid.format_payload(v.payload)
