"""Second-order polynomials P(n, l): AST, the two compositions, and the
degree calculus.

deg(P) is an ordinary polynomial in d = deg(l), built structurally with
deg(l(P)) = d * deg(P), deg(P+Q) = max, deg(P*Q) = sum.  The max of two
incomparable polynomials is kept as a pointwise function (every degree
object can always be evaluated at integer d; the coefficient form is
reported whenever the max resolves by coefficient dominance, which it
does on all of the calculus identities tested here).

Everything in this module is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

from .errors import DomainError

# -- AST ----------------------------------------------------------------------


@dataclass(frozen=True)
class Const:
    value: int

    def __post_init__(self):
        if self.value < 1:
            raise DomainError("constants are positive integers")


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class App:
    arg: "Sop"


@dataclass(frozen=True)
class Sum:
    left: "Sop"
    right: "Sop"


@dataclass(frozen=True)
class Prod:
    left: "Sop"
    right: "Sop"


Sop = Union[Const, Var, App, Sum, Prod]

N = Var()


def const(k: int) -> Const:
    return Const(k)


def ell(p: Sop) -> App:
    return App(p)


def add(p: Sop, q: Sop) -> Sum:
    return Sum(p, q)


def mul(p: Sop, q: Sop) -> Prod:
    return Prod(p, q)


def sop_eval(p: Sop, n: int, length_fn: Callable[[int], int]) -> int:
    """Structural evaluation of P(n, l)."""
    if isinstance(p, Const):
        return p.value
    if isinstance(p, Var):
        return n
    if isinstance(p, App):
        return length_fn(sop_eval(p.arg, n, length_fn))
    if isinstance(p, Sum):
        return sop_eval(p.left, n, length_fn) + sop_eval(p.right, n, length_fn)
    if isinstance(p, Prod):
        return sop_eval(p.left, n, length_fn) * sop_eval(p.right, n, length_fn)
    raise DomainError(f"not a second-order polynomial node: {p!r}")


def sop_compose_subst(q: Sop, p: Sop) -> Sop:
    """(Q o P)(n, l) = Q(P(n, l), l): substitute into the n-slot."""
    if isinstance(q, Const):
        return q
    if isinstance(q, Var):
        return p
    if isinstance(q, App):
        return App(sop_compose_subst(q.arg, p))
    if isinstance(q, Sum):
        return Sum(sop_compose_subst(q.left, p), sop_compose_subst(q.right, p))
    if isinstance(q, Prod):
        return Prod(sop_compose_subst(q.left, p), sop_compose_subst(q.right, p))
    raise DomainError(f"not a second-order polynomial node: {q!r}")


def sop_compose_bullet(q: Sop, p: Sop) -> Sop:
    """(Q . P)(n, l) = Q(n, P(., l)): every application l(X) becomes
    P with its n-slot filled by the transformed X."""
    if isinstance(q, (Const, Var)):
        return q
    if isinstance(q, App):
        return sop_compose_subst(p, sop_compose_bullet(q.arg, p))
    if isinstance(q, Sum):
        return Sum(sop_compose_bullet(q.left, p), sop_compose_bullet(q.right, p))
    if isinstance(q, Prod):
        return Prod(sop_compose_bullet(q.left, p), sop_compose_bullet(q.right, p))
    raise DomainError(f"not a second-order polynomial node: {q!r}")


def sop_format(p: Sop) -> str:
    if isinstance(p, Const):
        return str(p.value)
    if isinstance(p, Var):
        return "n"
    if isinstance(p, App):
        return f"l({sop_format(p.arg)})"
    if isinstance(p, Sum):
        return f"({sop_format(p.left)}+{sop_format(p.right)})"
    if isinstance(p, Prod):
        return f"{sop_format(p.left)}*{sop_format(p.right)}"
    raise DomainError(f"not a second-order polynomial node: {p!r}")


# -- degree calculus ----------------------------------------------------------


class DegreePoly:
    """Degree of a second-order polynomial as a function of d = deg(l).

    Carries the exact coefficient list (ascending powers of d) whenever
    the structural maxima resolve by coefficient dominance.
    """

    def __init__(self, coeffs: list[int] | None, fn: Callable[[int], int]):
        if coeffs is not None:
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
        self.coeffs = tuple(coeffs) if coeffs is not None else None
        self._fn = fn

    @staticmethod
    def from_coeffs(coeffs: list[int]) -> "DegreePoly":
        cs = list(coeffs)

        def fn(d: int) -> int:
            acc = 0
            for c in reversed(cs):
                acc = acc * d + c
            return acc

        return DegreePoly(cs, fn)

    def __call__(self, d: int) -> int:
        if self.coeffs is not None:
            acc = 0
            for c in reversed(self.coeffs):
                acc = acc * d + c
            return acc
        return self._fn(d)

    def __eq__(self, other):
        if not isinstance(other, DegreePoly):
            return NotImplemented
        if self.coeffs is not None and other.coeffs is not None:
            return self.coeffs == other.coeffs
        # pointwise functions: compare on enough sample points
        return all(self(d) == other(d) for d in range(0, 16))

    def __hash__(self):
        return hash(self.coeffs)

    def plus_max(self, other: "DegreePoly") -> "DegreePoly":
        fn = lambda d: max(self(d), other(d))
        if self.coeffs is not None and other.coeffs is not None:
            a, b = list(self.coeffs), list(other.coeffs)
            size = max(len(a), len(b))
            a += [0] * (size - len(a))
            b += [0] * (size - len(b))
            if all(x >= y for x, y in zip(a, b)):
                return DegreePoly(a, fn)
            if all(y >= x for x, y in zip(a, b)):
                return DegreePoly(b, fn)
        return DegreePoly(None, fn)

    def times_sum(self, other: "DegreePoly") -> "DegreePoly":
        fn = lambda d: self(d) + other(d)
        if self.coeffs is not None and other.coeffs is not None:
            a, b = list(self.coeffs), list(other.coeffs)
            size = max(len(a), len(b))
            a += [0] * (size - len(a))
            b += [0] * (size - len(b))
            return DegreePoly([x + y for x, y in zip(a, b)], fn)
        return DegreePoly(None, fn)

    def app_scale(self) -> "DegreePoly":
        fn = lambda d: d * self(d)
        if self.coeffs is not None:
            return DegreePoly([0] + list(self.coeffs), fn)
        return DegreePoly(None, fn)

    def compose(self, other: "DegreePoly") -> "DegreePoly":
        """(self o other)(d) = self(other(d))."""
        return DegreePoly(None, lambda d: self(other(d)))

    def product(self, other: "DegreePoly") -> "DegreePoly":
        """Polynomial product (for deg(Q(P(n,l),l)) = deg(Q) deg(P))."""
        fn = lambda d: self(d) * other(d)
        if self.coeffs is not None and other.coeffs is not None:
            out = [0] * (len(self.coeffs) + len(other.coeffs) - 1 or 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return DegreePoly(out, fn)
        return DegreePoly(None, fn)

    def format(self) -> str:
        if self.coeffs is None:
            return "<pointwise max; values at d=0..4: %s>" % (
                [self(d) for d in range(5)])
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("d" if c == 1 else f"{c}d")
            else:
                parts.append(f"d^{i}" if c == 1 else f"{c}d^{i}")
        return "+".join(parts) or "0"

    def __repr__(self):
        return f"DegreePoly({self.format()})"


def sop_deg(p: Sop) -> DegreePoly:
    """deg(1) = 0, deg(n) = 1, deg(l(P)) = d deg(P),
    deg(P+Q) = max, deg(P*Q) = sum."""
    if isinstance(p, Const):
        return DegreePoly.from_coeffs([0])
    if isinstance(p, Var):
        return DegreePoly.from_coeffs([1])
    if isinstance(p, App):
        return sop_deg(p.arg).app_scale()
    if isinstance(p, Sum):
        return sop_deg(p.left).plus_max(sop_deg(p.right))
    if isinstance(p, Prod):
        return sop_deg(p.left).times_sum(sop_deg(p.right))
    raise DomainError(f"not a second-order polynomial node: {p!r}")


def machine_compose_bounds(T1: Sop, S1: Sop, T2: Sop, S2: Sop) -> tuple[Sop, Sop]:
    """Composed oracle-machine bounds: S3 = S1(n, S2(., l)),
    Ttilde = T1(n, S2(., l)), T3 = Ttilde * T2(Ttilde, l)."""
    S3 = sop_compose_bullet(S1, S2)
    Tt = sop_compose_bullet(T1, S2)
    T3 = Prod(Tt, sop_compose_subst(T2, Tt))
    return T3, S3


# -- expression syntax for the CLI --------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text.replace(" ", "")
        self.pos = 0

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise DomainError(f"expected {ch!r} at position {self.pos} in {self.text!r}")
        self.pos += 1

    def parse(self) -> Sop:
        node = self.expr()
        if self.pos != len(self.text):
            raise DomainError(f"trailing input at position {self.pos}")
        return node

    def expr(self) -> Sop:
        node = self.term()
        while self.peek() == "+":
            self.pos += 1
            node = Sum(node, self.term())
        return node

    def term(self) -> Sop:
        node = self.factor()
        while self.peek() == "*":
            self.pos += 1
            node = Prod(node, self.factor())
        return node

    def factor(self) -> Sop:
        node = self.atom()
        if self.peek() == "^":
            self.pos += 1
            k = self.number()
            if k < 1:
                raise DomainError("exponents are positive")
            out = node
            for _ in range(k - 1):
                out = Prod(out, node)
            return out
        return node

    def number(self) -> int:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            raise DomainError(f"expected a number at position {self.pos}")
        return int(self.text[start:self.pos])

    def atom(self) -> Sop:
        c = self.peek()
        if c == "n":
            self.pos += 1
            return N
        if c == "l":
            self.pos += 1
            self.expect("(")
            node = self.expr()
            self.expect(")")
            return App(node)
        if c == "(":
            self.pos += 1
            node = self.expr()
            self.expect(")")
            return node
        if c.isdigit():
            return Const(self.number())
        raise DomainError(f"unexpected character {c!r} at position {self.pos}")


def sop_parse(text: str) -> Sop:
    return _Parser(text).parse()
