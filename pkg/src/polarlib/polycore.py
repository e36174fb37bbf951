"""Exact sparse multivariate polynomials over the rationals.

A :class:`Poly` is an immutable map from exponent vectors to nonzero rational
coefficients, together with an ordered tuple of variable names.  Binary
operations on polynomials with different variable lists align them by name
(the left operand's order first, then new names from the right operand).

Coefficients are kept as ``int`` whenever they are integral and as
:class:`fractions.Fraction` otherwise; both compare and hash consistently, and
the integer fast path matters a great deal inside resultant computations.

Terms are printed and iterated in graded lexicographic order, highest first,
so ``str(p)`` is a canonical form: equal polynomials print identically.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd as _igcd
from math import lcm as _ilcm
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

from .errors import InputError, ParseError

Rational = Union[int, Fraction]
Monomial = Tuple[int, ...]

NEG_INF = float("-inf")

_VAR_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9]*\Z")


def as_rational(c) -> Rational:
    """Convert ``c`` to an exact int or Fraction (floats are rejected)."""
    if isinstance(c, bool):
        raise InputError(f"not a rational number: {c!r}")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, str):
        try:
            c = Fraction(c.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational number: {c!r}") from exc
        return c.numerator if c.denominator == 1 else c
    raise InputError(f"not a rational number: {c!r}")


def _norm(c: Rational) -> Rational:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _grlex_key(e: Monomial):
    return (sum(e), e)


class Poly:
    """Sparse polynomial with exact rational coefficients.

    >>> x, y = Poly.var("x"), Poly.var("y")
    >>> str(x**2 * y - 3 * x + Fraction(1, 2))
    'x^2*y - 3*x + 1/2'
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, variables: Sequence[str] = (), terms: Mapping[Monomial, Rational] | None = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise InputError(f"duplicate variable names in {variables}")
        for v in variables:
            if not _VAR_RE.match(v):
                raise InputError(f"invalid variable name {v!r}")
        k = len(variables)
        clean: Dict[Monomial, Rational] = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != k or any(a < 0 for a in e):
                raise InputError(f"bad exponent vector {e} for variables {variables}")
            c = as_rational(c)
            if c:
                clean[e] = c
        self.vars = variables
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, variables: Tuple[str, ...], terms: Dict[Monomial, Rational]) -> "Poly":
        # trusted constructor: terms already normalized and nonzero
        p = object.__new__(cls)
        p.vars = variables
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c, variables: Sequence[str] = ()) -> "Poly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, name: str, variables: Sequence[str] | None = None) -> "Poly":
        variables = (name,) if variables is None else tuple(variables)
        if name not in variables:
            raise InputError(f"{name!r} is not among {variables}")
        e = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {e: 1})

    @classmethod
    def zero(cls, variables: Sequence[str] = ()) -> "Poly":
        return cls._raw(tuple(variables), {})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Rational:
        if not self.is_constant():
            raise InputError(f"{self} is not constant")
        return next(iter(self.terms.values()), 0)

    def degree(self):
        """Total degree; ``-inf`` for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def degree_in(self, v: str):
        if not self.terms:
            return NEG_INF
        if v not in self.vars:
            return 0
        i = self.vars.index(v)
        return max(e[i] for e in self.terms)

    def used_vars(self) -> Tuple[str, ...]:
        return tuple(v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_term(self) -> Tuple[Monomial, Rational]:
        if not self.terms:
            raise InputError("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def leading_coefficient(self) -> Rational:
        return self.leading_term()[1]

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def top_form(self) -> "Poly":
        """Homogeneous part of highest total degree."""
        if not self.terms:
            return self
        d = self.degree()
        return Poly._raw(self.vars, {e: c for e, c in self.terms.items() if sum(e) == d})

    # -- variable bookkeeping ------------------------------------------------

    def with_vars(self, variables: Sequence[str]) -> "Poly":
        """Re-express over ``variables``; every used variable must be present."""
        variables = tuple(variables)
        if variables == self.vars:
            return self
        idx = []
        for i, v in enumerate(self.vars):
            if v in variables:
                idx.append((i, variables.index(v)))
            elif any(e[i] for e in self.terms):
                raise InputError(f"variable {v!r} of {self} missing from {variables}")
        k = len(variables)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * k
            for i, j in idx:
                ne[j] = e[i]
            out[tuple(ne)] = c
        return Poly._raw(variables, out)

    def drop_unused(self) -> "Poly":
        return self.with_vars(self.used_vars())

    def _align(self, other) -> Tuple["Poly", "Poly"]:
        if not isinstance(other, Poly):
            other = Poly.const(other, self.vars)
        if other.vars == self.vars:
            return self, other
        merged = self.vars + tuple(v for v in other.vars if v not in self.vars)
        return self.with_vars(merged), other.with_vars(merged)

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        a, b = self._align(other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _norm(s)
            else:
                out.pop(e, None)
        return Poly._raw(a.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, (Poly, int, Fraction)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = as_rational(other)
            if not other:
                return Poly.zero(self.vars)
            return Poly._raw(self.vars, {e: _norm(c * other) for e, c in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self._align(other)
        out: Dict[Monomial, Rational] = {}
        bt = list(b.terms.items())
        for ea, ca in a.terms.items():
            for eb, cb in bt:
                e = tuple(i + j for i, j in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return Poly._raw(a.vars, {e: _norm(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if other.is_constant() and not other.is_zero():
                other = other.constant_value()
            else:
                return self.exact_div(other)
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        inv = Fraction(1) / other
        return self * inv

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise InputError("polynomial exponent must be a non-negative integer")
        result = Poly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def exact_div(self, other: "Poly") -> "Poly":
        """Quotient ``self / other``; raises if the division is not exact."""
        a, b = self._align(other)
        if b.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lb, cb = b.leading_term()
        rest = [(e, c) for e, c in b.terms.items() if e != lb]
        rem = dict(a.terms)
        quot: Dict[Monomial, Rational] = {}
        while rem:
            la = max(rem, key=_grlex_key)
            ca = rem[la]
            shift = tuple(i - j for i, j in zip(la, lb))
            if any(s < 0 for s in shift):
                raise InputError(f"{self} is not divisible by {other}")
            q = _norm(Fraction(ca) / cb) if type(ca) is Fraction or type(cb) is Fraction or ca % cb else ca // cb
            quot[shift] = q
            del rem[la]
            for e, c in rest:
                ne = tuple(i + j for i, j in zip(e, shift))
                v = rem.get(ne, 0) - q * c
                if v:
                    rem[ne] = _norm(v)
                else:
                    rem.pop(ne, None)
        return Poly._raw(a.vars, quot)

    def remainder(self, other: "Poly") -> "Poly":
        """Remainder of multivariate division by a single divisor (graded lex).

        It is zero exactly when ``other`` divides ``self``.
        """
        a, b = self._align(other)
        if b.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lb, cb = b.leading_term()
        rest = [(e, c) for e, c in b.terms.items() if e != lb]
        work = dict(a.terms)
        out: Dict[Monomial, Rational] = {}
        while work:
            la = max(work, key=_grlex_key)
            ca = work.pop(la)
            shift = tuple(i - j for i, j in zip(la, lb))
            if any(s < 0 for s in shift):
                out[la] = ca
                continue
            q = Fraction(ca) / cb
            for e, c in rest:
                ne = tuple(i + j for i, j in zip(e, shift))
                v = work.get(ne, 0) - q * c
                if v:
                    work[ne] = _norm(v)
                else:
                    work.pop(ne, None)
        return Poly._raw(a.vars, out)

    # -- comparison ------------------------------------------------------------

    def _sparse_key(self):
        return frozenset(
            (frozenset((v, k) for v, k in zip(self.vars, e) if k), c) for e, c in self.terms.items()
        )

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if self.vars == other.vars:
            return self.terms == other.terms
        return self._sparse_key() == other._sparse_key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._sparse_key())
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- calculus and evaluation -------------------------------------------

    def differentiate(self, v: str) -> "Poly":
        if v not in self.vars:
            raise InputError(f"unknown variable {v!r}; polynomial variables are {self.vars}")
        i = self.vars.index(v)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[ne] = c * e[i]
        return Poly._raw(self.vars, out)

    def evaluate(self, point: Mapping[str, Rational]) -> Fraction:
        missing = [v for v in self.vars if v not in point]
        if missing:
            raise InputError(f"unbound variable(s) {missing}")
        vals = [as_rational(point[v]) for v in self.vars]
        total = 0
        for e, c in self.terms.items():
            t = c
            for val, k in zip(vals, e):
                if k:
                    t = t * val**k
            total += t
        return Fraction(total)

    def substitute(self, mapping: Mapping[str, object]) -> "Poly":
        """Substitute polynomials or rationals for some variables.

        Substituted variables disappear from the variable list unless they
        occur in the replacement polynomials.
        """
        keep = tuple(v for v in self.vars if v not in mapping)
        base_vars = keep
        repl = {}
        for v, r in mapping.items():
            if v not in self.vars:
                continue
            if not isinstance(r, Poly):
                r = Poly.const(r)
            repl[v] = r
            base_vars = base_vars + tuple(w for w in r.vars if w not in base_vars)
        repl = {v: r.with_vars(base_vars) for v, r in repl.items()}
        keep_idx = [(self.vars.index(v), base_vars.index(v)) for v in keep]
        sub_idx = [(self.vars.index(v), repl[v]) for v in repl]
        powers: Dict[Tuple[str, int], Poly] = {}
        result = Poly.zero(base_vars)
        k = len(base_vars)
        for e, c in self.terms.items():
            mono = [0] * k
            for i, j in keep_idx:
                mono[j] = e[i]
            term = Poly._raw(base_vars, {tuple(mono): c})
            for i, r in sub_idx:
                if e[i]:
                    key = (self.vars[i], e[i])
                    if key not in powers:
                        powers[key] = r ** e[i]
                    term = term * powers[key]
            result = result + term
        return result

    def homogenize(self, new_var: str) -> "Poly":
        if new_var in self.vars:
            raise InputError(f"{new_var!r} already a variable of {self}")
        d = self.degree()
        if d == NEG_INF:
            return Poly.zero(self.vars + (new_var,))
        return Poly._raw(self.vars + (new_var,), {e + (d - sum(e),): c for e, c in self.terms.items()})

    def dehomogenize(self, var: str) -> "Poly":
        if var not in self.vars:
            raise InputError(f"unknown variable {var!r}")
        if not self.is_homogeneous():
            raise InputError(f"{self} is not homogeneous")
        return self.substitute({var: 1})

    # -- univariate views ------------------------------------------------------

    def coefficients_in(self, v: str) -> list:
        """Coefficients ``[c_0, c_1, ...]`` of ``self`` as a polynomial in ``v``.

        The coefficients live over the remaining variables.
        """
        if v not in self.vars:
            return [self]
        i = self.vars.index(v)
        rest = self.vars[:i] + self.vars[i + 1:]
        buckets: Dict[int, Dict[Monomial, Rational]] = {}
        for e, c in self.terms.items():
            buckets.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        if not buckets:
            return []
        return [Poly._raw(rest, buckets.get(k, {})) for k in range(max(buckets) + 1)]

    @classmethod
    def from_coefficients(cls, coeffs: Sequence["Poly"], v: str, rest: Sequence[str]) -> "Poly":
        rest = tuple(rest)
        variables = rest + (v,)
        out = {}
        for k, c in enumerate(coeffs):
            if not isinstance(c, Poly):
                c = Poly.const(c, rest)
            for e, a in c.with_vars(rest).terms.items():
                out[e + (k,)] = a
        return Poly._raw(variables, out)

    # -- coefficient normalization -----------------------------------------

    def content_rational(self) -> Fraction:
        """Positive rational ``c`` such that ``self / c`` has coprime integer coefficients."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            c = Fraction(c)
            num = _igcd(num, c.numerator)
            den = _ilcm(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "Poly":
        """Integer-primitive associate with positive graded-lex leading coefficient."""
        if not self.terms:
            return self
        c = self.content_rational()
        if self.leading_coefficient() < 0:
            c = -c
        return self / c

    def monic(self) -> "Poly":
        return self / self.leading_coefficient()

    # -- printing --------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"Poly({str(self)!r}, vars={self.vars})"


# ---------------------------------------------------------------------------
# affine changes of coordinates


class LinearChange:
    """Invertible affine substitution of ``k`` variables.

    ``matrix`` is ``(k+1) x (k+1)``; the image of variable ``j`` is
    ``sum_i x_i * matrix[i][j] + matrix[k][j]``, i.e. the last row holds the
    translation.  The last column must be ``(0, ..., 0, 1)``.
    """

    __slots__ = ("matrix",)

    def __init__(self, matrix: Sequence[Sequence[object]]):
        m = tuple(tuple(as_rational(a) for a in row) for row in matrix)
        n = len(m)
        if n == 0 or any(len(row) != n for row in m):
            raise InputError("LinearChange needs a square (k+1)x(k+1) matrix")
        if any(m[i][n - 1] != 0 for i in range(n - 1)) or m[n - 1][n - 1] != 1:
            raise InputError("last column of an affine change must be (0, ..., 0, 1)")
        if rational_det(m) == 0:
            raise InputError("singular matrix: linear change is not invertible")
        self.matrix = m

    @property
    def size(self) -> int:
        return len(self.matrix) - 1

    @classmethod
    def identity(cls, k: int) -> "LinearChange":
        return cls([[1 if i == j else 0 for j in range(k + 1)] for i in range(k + 1)])

    @classmethod
    def shear(cls, k: int, target: int, source: int, factor) -> "LinearChange":
        """``x_target -> x_target + factor * x_source``."""
        if target == source:
            raise InputError("shear needs two distinct variables")
        m = [[1 if i == j else 0 for j in range(k + 1)] for i in range(k + 1)]
        m[source][target] = factor
        return cls(m)

    def images(self, variables: Sequence[str]) -> Dict[str, Poly]:
        k = self.size
        variables = tuple(variables)
        out = {}
        for j, v in enumerate(variables):
            terms = {}
            for i in range(k):
                if self.matrix[i][j]:
                    terms[tuple(1 if t == i else 0 for t in range(k))] = self.matrix[i][j]
            if self.matrix[k][j]:
                terms[(0,) * k] = self.matrix[k][j]
            out[v] = Poly(variables, terms)
        return out


def apply_linear_change(p: Poly, change: LinearChange) -> Poly:
    if change.size != len(p.vars):
        raise InputError(f"change acts on {change.size} variables, polynomial has {len(p.vars)}")
    return p.substitute(change.images(p.vars)).with_vars(p.vars)


def rational_det(m: Sequence[Sequence[Rational]]) -> Fraction:
    """Determinant of a rational matrix by Gaussian elimination."""
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return det


# ---------------------------------------------------------------------------
# text syntax


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<var>[a-zA-Z][a-zA-Z0-9]*)|(?P<op>\*\*|[-+*/^()]))"
)


def _tokenize(s: str):
    pos = 0
    out = []
    while pos < len(s):
        if s[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {s[pos:].lstrip()[:1]!r}", len(s) - len(s[pos:].lstrip()))
        kind = m.lastgroup
        start = m.start(kind)
        tok = m.group(kind)
        if tok == "**":
            tok = "^"
        out.append((kind, tok, start))
        pos = m.end()
    out.append(("end", "", len(s)))
    return out


class _Parser:
    def __init__(self, text: str, variables: Sequence[str] | None):
        self.tokens = _tokenize(text)
        self.i = 0
        self.fixed = variables is not None
        self.vars = list(variables or ())

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, tok):
        t = self.take()
        if t[1] != tok:
            raise ParseError(f"expected {tok!r}, found {t[1] or 'end of input'!r}", t[2])

    def parse(self) -> Poly:
        if self.peek()[0] == "end":
            raise ParseError("empty polynomial", 0)
        p = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError(f"unexpected token {t[1]!r}", t[2])
        return p.with_vars(self.vars)

    def expr(self) -> Poly:
        p = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.unary()
        while self.peek()[1] in ("*", "/"):
            _, op, pos = self.take()
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    raise ParseError("division only by nonzero constants", pos)
                p = p / q.constant_value()
        return p

    def unary(self) -> Poly:
        if self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            p = self.unary()
            return -p if op == "-" else p
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            t = self.take()
            if t[0] != "num" or not t[1].isdigit():
                raise ParseError("exponent must be a non-negative integer", t[2])
            base = base ** int(t[1])
        return base

    def atom(self) -> Poly:
        kind, tok, pos = self.take()
        if kind == "num":
            return Poly.const(Fraction(tok))
        if kind == "var":
            if tok not in self.vars:
                if self.fixed:
                    raise ParseError(f"unknown variable {tok!r}", pos)
                self.vars.append(tok)
            return Poly.var(tok)
        if tok == "(":
            p = self.expr()
            self.expect(")")
            return p
        raise ParseError(f"unexpected {tok or 'end of input'!r}", pos)


def parse_poly(text: str, variables: Sequence[str] | None = None) -> Poly:
    """Parse the textual polynomial syntax.

    Terms are joined by ``+``/``-``; factors by ``*``; powers use ``^`` (or
    ``**``) with non-negative integer exponents; division is allowed only by
    constants, so ``3/2*x`` and ``x^2/4`` work.  Variables are inferred in
    order of first appearance unless ``variables`` is given, in which case any
    other name is an error.
    """
    return _Parser(text, variables).parse()


def poly_vars(*polys: Poly) -> Tuple[str, ...]:
    """Merged variable tuple of several polynomials (first-seen order)."""
    out: list = []
    for p in polys:
        for v in p.vars:
            if v not in out:
                out.append(v)
    return tuple(out)


def align(polys: Iterable[Poly]) -> list:
    polys = list(polys)
    vs = poly_vars(*polys)
    return [p.with_vars(vs) for p in polys]
