"""Elimination machinery: fraction-free determinants, Sylvester resultants,
gcds, squarefree decomposition and exact root bookkeeping.

Everything here is exact.  Univariate routines accept any :class:`Poly` that
uses at most one variable.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .errors import InputError
from .polycore import Poly, Rational, align, as_rational, poly_vars

__all__ = [
    "SquarefreeDecomposition",
    "bareiss_det",
    "coprime_base",
    "count_distinct_roots",
    "gcd",
    "rational_roots",
    "resultant",
    "root_multiplicity",
    "squarefree_decompose",
    "squarefree_factors",
    "squarefree_part",
    "sylvester_matrix",
]


# ---------------------------------------------------------------------------
# determinants and resultants


def bareiss_det(matrix: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant of a square matrix of polynomials by Bareiss elimination.

    Every intermediate division is exact, so no rational functions appear.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise InputError("determinant of a non-square matrix")
    if n == 0:
        return Poly.const(1)
    rows = align(e if isinstance(e, Poly) else Poly.const(e) for row in matrix for e in row)
    m = [rows[i * n:(i + 1) * n] for i in range(n)]
    vs = rows[0].vars
    sign = 1
    prev = Poly.const(1, vs)
    for k in range(n - 1):
        if m[k][k].is_zero():
            piv = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if piv is None:
                return Poly.zero(vs)
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pk = m[k][k]
        for i in range(k + 1, n):
            aik = m[i][k]
            for j in range(k + 1, n):
                num = pk * m[i][j] - aik * m[k][j]
                m[i][j] = num if prev.is_constant() and prev.constant_value() == 1 else num.exact_div(prev)
            m[i][k] = Poly.zero(vs)
        prev = pk
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def sylvester_matrix(f: Poly, g: Poly, v: str) -> List[List[Poly]]:
    f, g = align([f, g])
    fc = f.coefficients_in(v)
    gc = g.coefficients_in(v)
    m, n = len(fc) - 1, len(gc) - 1
    size = m + n
    zero = Poly.zero(fc[0].vars)
    rows = []
    for i in range(n):
        row = [zero] * size
        for k, c in enumerate(reversed(fc)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k, c in enumerate(reversed(gc)):
            row[i + k] = c
        rows.append(row)
    return rows


def resultant(f: Poly, g: Poly, v: str) -> Poly:
    """Sylvester resultant ``Res_v(f, g)``, a polynomial in the other variables.

    >>> from polarlib.polycore import parse_poly
    >>> str(resultant(parse_poly("y^2 - x"), parse_poly("y - x"), "y"))
    'x^2 - x'
    """
    f, g = align([f, g])
    if v not in f.vars:
        raise InputError(f"variable {v!r} does not occur")
    df, dg = f.degree_in(v), g.degree_in(v)
    if df is None or df < 1 or dg < 1:
        raise InputError(f"resultant needs positive degree in {v!r} for both polynomials")
    return bareiss_det(sylvester_matrix(f, g, v))


# ---------------------------------------------------------------------------
# gcd machinery


def _main_var(*polys: Poly):
    for v in poly_vars(*polys):
        if any(p.degree_in(v) > 0 for p in polys):
            return v
    return None


def _content_in(p: Poly, v: str) -> Poly:
    g = Poly.zero(p.vars)
    for c in p.coefficients_in(v):
        if not c.is_zero():
            g = gcd(g, c.with_vars(p.vars) if v not in c.vars else c)
            if g.is_constant():
                break
    return g.with_vars(p.vars) if not g.is_zero() else g


def _prem(a: Poly, b: Poly, v: str) -> Poly:
    """A pseudo-remainder of ``a`` by ``b`` w.r.t. ``v`` (up to a constant factor)."""
    db = b.degree_in(v)
    bc = b.coefficients_in(v)
    lb = bc[-1].with_vars(a.vars)
    xv = Poly.var(v, a.vars)
    r = a
    while not r.is_zero() and r.degree_in(v) >= db:
        dr = r.degree_in(v)
        lr = r.coefficients_in(v)[-1].with_vars(a.vars)
        r = lb * r - lr * xv ** (dr - db) * b
    return r


def _image_mod_p(p: Poly, v: str, point: dict) -> List[int]:
    i = p.vars.index(v)
    out = [0] * (p.degree_in(v) + 1)
    for e, c in p.terms.items():
        c = Fraction(c)
        t = c.numerator * pow(c.denominator, -1, _PRIME)
        for w, k in zip(p.vars, e):
            if k and w != v:
                t = t * pow(point[w], k, _PRIME)
        out[e[i]] = (out[e[i]] + t) % _PRIME
    return out


def _coprime_by_evaluation(a: Poly, b: Poly, v: str) -> bool:
    """Cheap certificate that the primitive parts of ``a`` and ``b`` in ``v`` are coprime.

    Other variables are specialised to pseudo-random residues; if the images
    keep their degree in ``v`` and are coprime modulo a prime, so are the
    originals.  A ``False`` answer is inconclusive.
    """
    rng = random.Random(len(a.terms) * 7919 + len(b.terms))
    point = {w: rng.randrange(1, _PRIME) for w in a.vars if w != v}
    ia, ib = _image_mod_p(a, v, point), _image_mod_p(b, v, point)
    if not ia[-1] or not ib[-1]:
        return False
    return _coprime_mod_p(ia, ib)


def _int_terms(p: Poly) -> dict:
    q = p.primitive()
    return {e: int(c) for e, c in q.terms.items()}


def _eval_at(terms: dict, i: int, xi: int) -> dict:
    out: dict = {}
    for e, c in terms.items():
        key = e[:i] + (0,) + e[i + 1:]
        out[key] = out.get(key, 0) + c * xi ** e[i]
    return {e: c for e, c in out.items() if c}


def _lift(terms: dict, i: int, xi: int) -> dict:
    """Undo :func:`_eval_at` by reading each coefficient in balanced base ``xi``."""
    out = {}
    half = xi // 2
    for e, c in terms.items():
        k = 0
        while c:
            digit = c % xi
            if digit > half:
                digit -= xi
            if digit:
                out[e[:i] + (k,) + e[i + 1:]] = digit
            c = (c - digit) // xi
            k += 1
    return out


def _heuristic_gcd(f: dict, g: dict, nvars: int):
    """Heuristic gcd of integer polynomials; ``None`` when it gives up."""
    used = [i for i in range(nvars) if any(e[i] for e in f) or any(e[i] for e in g)]
    if not used:
        cf = 0
        for c in list(f.values()) + list(g.values()):
            cf = math.gcd(cf, c)
        return {(0,) * nvars: cf}
    i = used[0]
    norm = min(max(abs(c) for c in f.values()), max(abs(c) for c in g.values()))
    xi = 2 * norm + 29
    for _ in range(6):
        fe, ge = _eval_at(f, i, xi), _eval_at(g, i, xi)
        if fe and ge:
            h = _heuristic_gcd(fe, ge, nvars)
            if h is not None:
                lifted = _lift(h, i, xi)
                if lifted:
                    return lifted
        xi = xi * 73794 // 27011
    return None


def _try_heuristic_gcd(a: Poly, b: Poly):
    h = _heuristic_gcd(_int_terms(a), _int_terms(b), len(a.vars))
    if not h:
        return None
    g = Poly(a.vars, h).primitive()
    try:
        a.exact_div(g)
        b.exact_div(g)
    except InputError:
        return None
    return g


def gcd(a: Poly, b: Poly) -> Poly:
    """Greatest common divisor over Q, normalized by :meth:`Poly.primitive`.

    Univariate inputs run the monic Euclidean algorithm; multivariate inputs
    recurse on content and primitive part with a primitive remainder sequence.
    """
    a, b = align([a, b])
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    v = _main_var(a, b)
    if v is None:
        return Poly.const(1, a.vars)
    if len(a.used_vars() + tuple(w for w in b.used_vars() if w not in a.used_vars())) == 1:
        return _gcd_univariate(a, b, v)
    da, db = a.degree_in(v), b.degree_in(v)
    if da == 0:
        return gcd(a, _content_in(b, v))
    if db == 0:
        return gcd(_content_in(a, v), b)
    coprime = _coprime_by_evaluation(a, b, v)
    if not coprime:
        h = _try_heuristic_gcd(a, b)
        if h is not None:
            return h
    ca, cb = _content_in(a, v), _content_in(b, v)
    c = gcd(ca, cb)
    if coprime:
        return c.primitive() if not c.is_zero() else Poly.const(1, a.vars)
    pa, pb = a.exact_div(ca).primitive(), b.exact_div(cb).primitive()
    if da < db:
        pa, pb = pb, pa
    while True:
        r = _prem(pa, pb, v)
        if r.is_zero():
            g = pb
            break
        if r.degree_in(v) == 0:
            g = Poly.const(1, a.vars)
            break
        pa, pb = pb, r.exact_div(_content_in(r, v)).primitive()
    g = g.exact_div(_content_in(g, v)) if g.degree_in(v) > 0 else Poly.const(1, a.vars)
    return (c * g).primitive()


def _dense(p: Poly, v: str) -> List[Fraction]:
    return [Fraction(c.constant_value()) if not c.is_zero() else Fraction(0) for c in p.coefficients_in(v)]


def _from_dense(coeffs: Sequence[Fraction], v: str, variables) -> Poly:
    i = variables.index(v)
    k = len(variables)
    terms = {}
    for deg, c in enumerate(coeffs):
        if c:
            e = [0] * k
            e[i] = deg
            terms[tuple(e)] = c
    return Poly(variables, terms)


def _strip(c: List[Fraction]) -> List[Fraction]:
    while c and not c[-1]:
        c.pop()
    return c


def _dense_divmod(a: List[Fraction], b: List[Fraction]):
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], a
    q = [Fraction(0)] * (len(a) - db)
    lb = b[-1]
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] / lb
        q[k] = c
        if c:
            for i, bc in enumerate(b):
                a[k + i] -= c * bc
    return q, _strip(a[:db])


def _integral(a: List[Fraction]) -> List[int]:
    den = 1
    for c in a:
        den = den * Fraction(c).denominator // math.gcd(den, Fraction(c).denominator)
    ints = [int(c * den) for c in a]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    return [c // g for c in ints] if g > 1 else ints


_PRIME = (1 << 61) - 1


def _coprime_mod_p(a: List[int], b: List[int]) -> bool:
    """True when ``a`` and ``b`` are certainly coprime over Q (checked modulo a prime)."""
    if a[-1] % _PRIME == 0 or b[-1] % _PRIME == 0:
        return False
    a = [c % _PRIME for c in a]
    b = [c % _PRIME for c in b]
    while b:
        inv = pow(b[-1], -1, _PRIME)
        b = [c * inv % _PRIME for c in b]
        while len(a) >= len(b) and a:
            q = a[-1]
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[shift + i] = (a[shift + i] - q * c) % _PRIME
            a.pop()
            while a and not a[-1]:
                a.pop()
        a, b = b, a
    # the modular gcd bounds the degree of the rational gcd from above
    return len(a) == 1


def _dense_gcd(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    """Monic gcd via an integer primitive remainder sequence."""
    a, b = _strip(list(a)), _strip(list(b))
    if not b:
        a, b = b, a
    if not a:
        if not b:
            return []
        return [Fraction(c) / b[-1] for c in b]
    a, b = _integral(a), _integral(b)
    if len(a) < len(b):
        a, b = b, a
    if len(b) == 1 or _coprime_mod_p(a, b):
        return [Fraction(1)]
    while b:
        lb = b[-1]
        a = list(a)
        while len(a) >= len(b) and a:
            lr = a[-1]
            shift = len(a) - len(b)
            a = [c * lb for c in a]
            for i, c in enumerate(b):
                a[shift + i] -= lr * c
            a.pop()
            _strip(a)
        a, b = b, (_integral(a) if a else a)
    return [Fraction(c, a[-1]) for c in a]


def _dense_deriv(a: List[Fraction]) -> List[Fraction]:
    return [i * c for i, c in enumerate(a)][1:]


def _gcd_univariate(a: Poly, b: Poly, v: str) -> Poly:
    g = _dense_gcd(_dense(a, v), _dense(b, v))
    return _from_dense(g, v, a.vars).primitive()


def _univariate_var(p: Poly) -> str | None:
    used = p.used_vars()
    if len(used) > 1:
        raise InputError(f"expected a univariate polynomial, got one in {used}")
    if used:
        return used[0]
    return p.vars[0] if p.vars else None


# ---------------------------------------------------------------------------
# squarefree decomposition


@dataclass(frozen=True)
class SquarefreeDecomposition:
    """``content * prod(f ** m for f, m in factors)`` equals the input."""

    factors: Tuple[Tuple[Poly, int], ...]
    content: Fraction

    def expand(self) -> Poly:
        vs = poly_vars(*(f for f, _ in self.factors)) if self.factors else ()
        out = Poly.const(self.content, vs)
        for f, m in self.factors:
            out = out * f**m
        return out


def squarefree_decompose(p: Poly) -> SquarefreeDecomposition:
    """Yun's algorithm for a nonzero univariate polynomial over Q.

    Factors are monic (so their leading coefficients are positive) and
    pairwise coprime; ``content`` is the leading coefficient of ``p``.
    """
    if p.is_zero():
        raise InputError("squarefree decomposition of the zero polynomial")
    v = _univariate_var(p)
    lc = Fraction(p.leading_coefficient())
    if v is None or p.degree() == 0:
        return SquarefreeDecomposition((), lc)
    f = [c / lc for c in _dense(p, v)]
    factors = []
    df = _dense_deriv(f)
    a0 = _dense_gcd(f, df)
    b, _ = _dense_divmod(f, a0)
    c, _ = _dense_divmod(df, a0)
    d = _dense_sub(c, _dense_deriv(b))
    i = 1
    while len(b) > 1:
        a = _dense_gcd(b, d)
        if len(a) > 1:
            factors.append((_from_dense(a, v, p.vars), i))
        b, _ = _dense_divmod(b, a)
        c, _ = _dense_divmod(d, a)
        d = _dense_sub(c, _dense_deriv(b))
        i += 1
    return SquarefreeDecomposition(tuple(factors), lc)


def _dense_sub(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _strip([Fraction(x) for x in out])


def squarefree_part(p: Poly) -> Poly:
    """``p / gcd(p, p')`` made monic; a nonzero constant maps to 1."""
    dec = squarefree_decompose(p)
    vs = p.vars
    out = Poly.const(1, vs)
    for f, _ in dec.factors:
        out = out * f
    return out.with_vars(vs)


def squarefree_factors(p: Poly) -> List[Tuple[Poly, int]]:
    """Squarefree factorization of a multivariate polynomial (up to a constant).

    Returns pairwise coprime primitive squarefree factors with multiplicities.
    """
    if p.is_zero():
        raise InputError("squarefree factorization of the zero polynomial")
    v = _main_var(p)
    if v is None:
        return []
    cont = _content_in(p, v)
    pp = p.exact_div(cont)
    out: dict = {}
    # Yun on the primitive part with respect to v
    dp = pp.differentiate(v)
    a0 = gcd(pp, dp)
    b = pp.exact_div(a0)
    c = dp.exact_div(a0)
    d = c - b.differentiate(v)
    i = 1
    while b.degree_in(v) > 0:
        a = gcd(b, d)
        if a.degree_in(v) > 0:
            out[a.primitive()] = out.get(a.primitive(), 0) + i
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.differentiate(v)
        i += 1
    result = list(out.items())
    if not cont.is_constant():
        result.extend(squarefree_factors(cont))
    return result


def coprime_base(polys: Sequence[Poly]) -> List[Poly]:
    """Refine polynomials into pairwise coprime primitive pieces.

    Every input is, up to a constant, a product of powers of the returned
    pieces.
    """
    work = [p.primitive() for p in polys if not p.is_zero() and not p.is_constant()]
    base: List[Poly] = []
    while work:
        f = work.pop()
        for i, g in enumerate(base):
            h = gcd(f, g)
            if not h.is_constant():
                base.pop(i)
                for piece in (h, g.exact_div(h), f.exact_div(h)):
                    if not piece.is_constant():
                        work.append(piece.primitive())
                break
        else:
            if f not in base:
                base.append(f)
    return base


# ---------------------------------------------------------------------------
# roots


def root_multiplicity(p: Poly, a) -> int:
    """Largest ``k`` with ``(x - a)**k`` dividing the univariate ``p``."""
    if p.is_zero():
        raise InputError("root multiplicity in the zero polynomial")
    v = _univariate_var(p)
    if v is None:
        return 0
    a = Fraction(as_rational(a))
    coeffs = _dense(p, v)
    k = 0
    while len(coeffs) > 1:
        # synthetic division by (x - a)
        q = [Fraction(0)] * (len(coeffs) - 1)
        acc = Fraction(0)
        for i in range(len(coeffs) - 1, 0, -1):
            acc = acc * a + coeffs[i]
            q[i - 1] = acc
        rem = acc * a + coeffs[0]
        if rem:
            break
        coeffs = q
        k += 1
    return k


def count_distinct_roots(p: Poly) -> int:
    """Number of distinct complex roots of a nonzero univariate polynomial."""
    if p.is_zero():
        raise InputError("root count of the zero polynomial")
    return sum(f.degree() for f, _ in squarefree_decompose(p).factors)


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
    while True:
        c = rng.randrange(1, n)
        f = lambda t: (t * t + c) % n  # noqa: E731
        x = y = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = f(x)
            y = f(f(y))
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def _factorint(n: int) -> dict:
    n = abs(n)
    out: dict = {}
    for q in range(2, 1000):
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        if q * q > n:
            break
    stack = [n] if n > 1 else []
    rng = random.Random(0)
    while stack:
        m = stack.pop()
        if _is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m, rng)
        stack.extend((d, m // d))
    return out


def _divisors(n: int) -> List[int]:
    divs = [1]
    for q, e in _factorint(n).items():
        divs = [d * q**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def rational_roots(p: Poly) -> List[Fraction]:
    """Distinct rational roots of a nonzero univariate polynomial, ascending."""
    if p.is_zero():
        raise InputError("rational roots of the zero polynomial")
    v = _univariate_var(p)
    if v is None or p.degree() == 0:
        return []
    sq = squarefree_part(p).primitive()
    coeffs = [int(c) for c in _dense(sq, v)]
    roots = []
    if coeffs[0] == 0:
        roots.append(Fraction(0))
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
    if len(coeffs) > 1:
        lead, const = coeffs[-1], coeffs[0]
        f1 = sum(coeffs)
        fm1 = sum(c if i % 2 == 0 else -c for i, c in enumerate(coeffs))
        for q in _divisors(lead):
            for r in _divisors(const):
                if math.gcd(r, q) != 1:
                    continue
                for s in (r, -r):
                    # standard pruning: (q - s) | f(1) and (q + s) | f(-1)
                    if f1 and (q - s) and f1 % (q - s):
                        continue
                    if fm1 and (q + s) and fm1 % (q + s):
                        continue
                    x = Fraction(s, q)
                    acc = Fraction(0)
                    for c in reversed(coeffs):
                        acc = acc * x + c
                    if acc == 0:
                        roots.append(x)
    return sorted(set(roots))


def divide_out_root(p: Poly, a: Rational, k: int) -> Poly:
    """``p / (x - a)**k`` for the univariate ``p``."""
    v = _univariate_var(p)
    if v is None or k == 0:
        return p
    lin = Poly.var(v, p.vars) - as_rational(a)
    return p.exact_div(lin**k)
