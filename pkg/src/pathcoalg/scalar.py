"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored on the power basis 1, z, ..., z^(phi(N)-1) of zeta_N modulo
the N-th cyclotomic polynomial, with rational (Fraction) coordinates.  Mixed
conductors are handled by lazy promotion to the lcm; every element is kept at
its minimal conductor so equality and hashing are structural.

Text grammar (bit-exact round trip): rationals as ``p/q``, roots of unity as
``z<N>^<e>``, products with ``*``, sums with ``+``/``-``, parentheses.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd

from .errors import DivisionByZero, ParseError, SquareRootUnavailable, ZeroInput

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _lcm(a, b):
    return a * b // gcd(a, b)


def phi(n):
    """Euler totient."""
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            result *= p - 1
            m //= p
            while m % p == 0:
                result *= p
                m //= p
        p += 1
    if m > 1:
        result *= m - 1
    return result


def _divisors(n):
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


_cyclo_cache = {1: [-1, 1]}


def cyclotomic_poly(n):
    """Integer coefficient list (low degree first) of the n-th cyclotomic polynomial."""
    if n in _cyclo_cache:
        return _cyclo_cache[n]
    # (x^n - 1) divided by the product of Phi_d over proper divisors d of n
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in _divisors(n):
        if d == n:
            continue
        den = cyclotomic_poly(d)
        # exact polynomial division num // den
        quot = [0] * (len(num) - len(den) + 1)
        rem = list(num)
        for i in range(len(quot) - 1, -1, -1):
            c = rem[i + len(den) - 1] // den[-1]
            quot[i] = c
            if c:
                for j, dc in enumerate(den):
                    rem[i + j] -= c * dc
        num = quot
    _cyclo_cache[n] = num
    return num


def _reduce_mod_cyclo(coeffs, n):
    """Reduce a polynomial (list of Fractions) modulo Phi_n; return a vector of
    length phi(n)."""
    deg = phi(n)
    poly = cyclotomic_poly(n)
    work = list(coeffs)
    if len(work) < deg:
        work += [_ZERO] * (deg - len(work))
    for i in range(len(work) - 1, deg - 1, -1):
        c = work[i]
        if c:
            for j in range(len(poly) - 1):
                work[i - deg + j] -= c * poly[j]
            work[i] = _ZERO
    return work[:deg]


_embed_cache = {}


def _embed_vec(d, n, j):
    """Coordinates of zeta_d^j in the power basis of zeta_n (d | n)."""
    key = (d, n, j)
    if key not in _embed_cache:
        e = (n // d) * j
        poly = [_ZERO] * e + [_ONE]
        _embed_cache[key] = tuple(_reduce_mod_cyclo(poly, n))
    return _embed_cache[key]


class CycScalar:
    """An element of a cyclotomic field Q(zeta_n), immutable."""

    __slots__ = ("n", "coeffs", "_hash")

    def __init__(self, n, coeffs):
        # assumes coeffs already reduced mod Phi_n and at minimal conductor;
        # use the constructors below
        self.n = n
        self.coeffs = tuple(coeffs)
        self._hash = None

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_rational(q):
        return CycScalar(1, (Fraction(q),))

    @staticmethod
    def root_of_unity(n, e=1):
        e %= n
        vec = _reduce_mod_cyclo([_ZERO] * e + [_ONE], n)
        return _canonical(n, vec)

    # -- basic predicates ---------------------------------------------------

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def is_rational(self):
        return self.n == 1

    def as_rational(self):
        if self.n != 1:
            raise ValueError("not rational")
        return self.coeffs[0]

    def __bool__(self):
        return not self.is_zero()

    # -- conductor handling -------------------------------------------------

    def promote(self, n):
        """Re-express in conductor n (self.n must divide n).  Not canonical;
        internal use for common-field arithmetic."""
        if n == self.n:
            return self.coeffs
        vec = [_ZERO] * phi(n)
        for j, c in enumerate(self.coeffs):
            if c:
                emb = _embed_vec(self.n, n, j)
                for i, e in enumerate(emb):
                    if e:
                        vec[i] += c * e
        return vec

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CycScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return CycScalar(1, (Fraction(other),))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.n == 1 and other.n == 1:
            return CycScalar(1, (self.coeffs[0] + other.coeffs[0],))
        n = _lcm(self.n, other.n)
        a, b = self.promote(n), other.promote(n)
        return _canonical(n, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return CycScalar(self.n, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.n == 1 and other.n == 1:
            return CycScalar(1, (self.coeffs[0] * other.coeffs[0],))
        if self.n == 1:
            q = self.coeffs[0]
            if q == 0:
                return ZERO
            return _canonical(other.n, [q * c for c in other.coeffs])
        if other.n == 1:
            q = other.coeffs[0]
            if q == 0:
                return ZERO
            return _canonical(self.n, [q * c for c in self.coeffs])
        n = _lcm(self.n, other.n)
        a, b = self.promote(n), other.promote(n)
        prod = [_ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return _canonical(n, _reduce_mod_cyclo(prod, n))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("division by zero scalar")
        if self.n == 1:
            return CycScalar(1, (1 / self.coeffs[0],))
        inv = _poly_inverse(list(self.coeffs), self.n)
        return _canonical(self.n, inv)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.coeffs))
        return self._hash

    def sort_key(self):
        """Deterministic total order key (conductor, then coordinates)."""
        return (self.n, self.coeffs)

    # -- serialization ------------------------------------------------------

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            neg = c < 0
            mag = -c if neg else c
            if j == 0:
                body = _fmt_rational(mag)
            elif mag == 1:
                body = f"z{self.n}^{j}"
            else:
                body = f"{_fmt_rational(mag)}*z{self.n}^{j}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("-" if neg else "+") + body)
        return "".join(parts)

    def __repr__(self):
        return f"CycScalar({self!s})"


def _fmt_rational(q):
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _canonical(n, vec):
    """Demote (n, vec) to the minimal conductor representation."""
    if n == 1:
        return CycScalar(1, tuple(vec))
    if all(c == 0 for c in vec[1:]):
        return CycScalar(1, (vec[0],))
    for d in _divisors(n):
        if d == n:
            break
        if phi(d) > phi(n):
            continue
        sol = _try_express(vec, d, n)
        if sol is not None:
            return CycScalar(d, tuple(sol))
    return CycScalar(n, tuple(vec))


def _try_express(vec, d, n):
    """Solve for coordinates of vec (in the zeta_n basis) over the zeta_d basis,
    or return None if vec is not in Q(zeta_d)."""
    cols = [_embed_vec(d, n, j) for j in range(phi(d))]
    rows = len(vec)
    ncols = len(cols)
    # Gaussian elimination on [cols | vec]
    aug = [[cols[j][i] for j in range(ncols)] + [vec[i]] for i in range(rows)]
    piv_rows = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, rows):
            if aug[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_rows.append((r, c))
        r += 1
    # consistency: rows beyond rank must have zero rhs
    for i in range(r, rows):
        if aug[i][ncols] != 0:
            return None
    sol = [_ZERO] * ncols
    for rr, c in piv_rows:
        sol[c] = aug[rr][ncols]
    return sol


def _poly_inverse(coeffs, n):
    """Inverse of coeffs modulo Phi_n via the extended Euclidean algorithm
    over Q[x]."""
    mod = [Fraction(c) for c in cyclotomic_poly(n)]

    def trim(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    def divmod_poly(a, b):
        a = list(a)
        q = [_ZERO] * max(1, len(a) - len(b) + 1)
        while len(a) >= len(b) and trim(list(a)):
            if len(a) < len(b):
                break
            c = a[-1] / b[-1]
            k = len(a) - len(b)
            q[k] += c
            for j in range(len(b)):
                a[k + j] -= c * b[j]
            trim(a)
        return q, a if a else [_ZERO]

    r0, r1 = mod, trim([Fraction(c) for c in coeffs])
    s0, s1 = [_ZERO], [_ONE]
    while trim(list(r1)):
        q, r = divmod_poly(r0, r1)
        # s_next = s0 - q*s1
        prod = [_ZERO] * (len(q) + len(s1) - 1)
        for i, x in enumerate(q):
            if x:
                for j, y in enumerate(s1):
                    if y:
                        prod[i + j] += x * y
        s_next = [
            (s0[i] if i < len(s0) else _ZERO) - (prod[i] if i < len(prod) else _ZERO)
            for i in range(max(len(s0), len(prod)))
        ]
        r0, r1 = r1, trim(r) or [_ZERO]
        s0, s1 = s1, s_next
    # r0 is the gcd, a nonzero constant (Phi_n is irreducible)
    g = r0[0]
    inv = [c / g for c in s0]
    return _reduce_mod_cyclo(inv, n)


ZERO = CycScalar(1, (_ZERO,))
ONE = CycScalar(1, (_ONE,))
MINUS_ONE = CycScalar(1, (Fraction(-1),))


def cyc(value):
    """Coerce an int, Fraction, str (scalar grammar), or CycScalar."""
    if isinstance(value, CycScalar):
        return value
    if isinstance(value, (int, Fraction)):
        return CycScalar(1, (Fraction(value),))
    if isinstance(value, str):
        return parse_scalar(value)
    raise TypeError(f"cannot coerce {value!r} to a scalar")


def root_of_unity_order(a):
    """Least d with a^d = 1, or None if a is not a root of unity."""
    a = cyc(a)
    if a.is_zero():
        raise ZeroInput("root_of_unity_order of zero")
    bound = _lcm(2, a.n)
    for d in _divisors(bound):
        if (a ** d) == ONE:
            return d
    return None


def sqrt(a):
    """An exact square root when the element is (rational) * zeta_N^e with a
    +/- perfect-square rational part; raises SquareRootUnavailable otherwise."""
    a = cyc(a)
    if a.is_zero():
        return ZERO
    n = a.n
    for e in range(n):
        r = a * CycScalar.root_of_unity(n, e)
        if r.is_rational():
            # a = r * zeta_n^(-e) = r * zeta_n^(n - e)
            q = r.as_rational()
            root = _rational_sqrt(q)
            if root is None:
                root = _rational_sqrt(-q)
                if root is None:
                    break
                root = cyc(root) * CycScalar.root_of_unity(4, 1)
            else:
                root = cyc(root)
            if e % n == 0:
                return root
            return root * CycScalar.root_of_unity(2 * n, n - e)
    raise SquareRootUnavailable(f"no constructible square root for {a}")


def _rational_sqrt(q):
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn, rd = _isqrt_exact(num), _isqrt_exact(den)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd)


def _isqrt_exact(k):
    from math import isqrt

    r = isqrt(k)
    return r if r * r == k else None


# -- parser -----------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<rat>\d+(?:/\d+)?)|(?P<root>z\d+(?:\^-?\d+)?)|(?P<op>[-+*()]))"
)


def _tokenize(text):
    pos, tokens = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ParseError(f"bad scalar syntax at {text[pos:]!r}")
            break
        pos = m.end()
        if m.group("rat"):
            tokens.append(("rat", Fraction(m.group("rat"))))
        elif m.group("root"):
            body = m.group("root")[1:]
            if "^" in body:
                nn, ee = body.split("^")
            else:
                nn, ee = body, "1"
            tokens.append(("root", (int(nn), int(ee))))
        else:
            tokens.append((m.group("op"), None))
    return tokens


def parse_scalar(text):
    """Parse the scalar grammar into a CycScalar."""
    tokens = _tokenize(text)
    pos = [0]

    def peek():
        return tokens[pos[0]][0] if pos[0] < len(tokens) else None

    def take():
        t = tokens[pos[0]]
        pos[0] += 1
        return t

    def atom():
        kind = peek()
        if kind == "rat":
            return cyc(take()[1])
        if kind == "root":
            n, e = take()[1]
            if n < 1:
                raise ParseError("root-of-unity index must be positive")
            return CycScalar.root_of_unity(n, e % n)
        if kind == "(":
            take()
            v = expr()
            if peek() != ")":
                raise ParseError("missing closing parenthesis")
            take()
            return v
        raise ParseError(f"unexpected token in scalar: {text!r}")

    def factor():
        if peek() == "-":
            take()
            return -factor()
        if peek() == "+":
            take()
            return factor()
        return atom()

    def term():
        v = factor()
        while peek() == "*":
            take()
            v = v * factor()
        return v

    def expr():
        v = term()
        while peek() in ("+", "-"):
            op = take()[0]
            w = term()
            v = v + w if op == "+" else v - w
        return v

    if not tokens:
        raise ParseError("empty scalar")
    v = expr()
    if pos[0] != len(tokens):
        raise ParseError(f"trailing input in scalar: {text!r}")
    return v
