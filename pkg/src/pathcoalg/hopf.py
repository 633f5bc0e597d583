"""The pointed Hopf algebras B(m, n; lambda, s, t, k).

Generators a, b (grouplike) and x, y (skew-primitive) subject to
ab = ba, a^m = b^n, x^2 = s(1 - a^2), y^2 = t(1 - b^2), xy + lam*yx = k(1 - ab),
ax = -xa, bx = -lam^-1*xb, ay = -lam*ya, by = -yb.  Elements are kept in the
normal form a^i b^j x^p y^q with p, q in {0, 1} by term rewriting.

The module also embeds finite windows of the basis into the grid path
coalgebra (vertices = canonical group elements) and answers path-membership
queries there.
"""

from __future__ import annotations

import math
import random

from .coalgebra import CoElement, SubCoalgebra, path_element
from .errors import (
    AxiomFailure,
    ConstraintViolation,
    ForbiddenPair,
    LambdaOrderViolation,
    ParamMismatch,
    ParityViolation,
    ParseError,
    WindowTooSmall,
)
from .quiver import Path, grid_quiver, grid_vertex_label, group_canonical_pair
from .scalar import ONE, ZERO, cyc, parse_scalar


class BmnParams:
    """Validated, sign-normalized parameters (m, n, lam, s, t, k)."""

    def __init__(self, m, n, lam, s, t, k):
        self.m = m
        self.n = n
        self.lam = lam
        self.s = s
        self.t = t
        self.k = k
        self.lam_inv = lam.inverse()
        self._mono_cache = {}

    def canon(self, i, j):
        return group_canonical_pair(self.m, self.n, i, j)

    def window(self, radius):
        """Canonical group exponent pairs within the box |i|, |j| <= radius."""
        out = []
        for i in range(-radius, radius + 1):
            for j in range(-radius, radius + 1):
                if self.canon(i, j) == (i, j):
                    out.append((i, j))
        return out

    def sign_x(self, i, j):
        """Scalar from commuting x rightward past a^i b^j."""
        return (-ONE) ** i * (-self.lam) ** j

    def sign_y(self, i, j):
        """Scalar from commuting y rightward past a^i b^j."""
        return (-self.lam_inv) ** i * (-ONE) ** j

    def as_tuple(self):
        return (self.m, self.n, self.lam, self.s, self.t, self.k)

    def __eq__(self, other):
        if not isinstance(other, BmnParams):
            return NotImplemented
        return self.as_tuple() == other.as_tuple()

    def __hash__(self):
        return hash(self.as_tuple())

    def to_json(self):
        return {
            "m": self.m,
            "n": self.n,
            "lambda": str(self.lam),
            "s": str(self.s),
            "t": str(self.t),
            "k": str(self.k),
        }

    @staticmethod
    def from_json(data):
        return validate_params(
            int(data["m"]),
            int(data["n"]),
            parse_scalar(str(data["lambda"])),
            parse_scalar(str(data["s"])),
            parse_scalar(str(data["t"])),
            parse_scalar(str(data["k"])),
        )

    def __repr__(self):
        return (
            f"BmnParams(m={self.m}, n={self.n}, lam={self.lam}, "
            f"s={self.s}, t={self.t}, k={self.k})"
        )


def validate_params(m, n, lam, s, t, k):
    """Check the parameter laws and sign-normalize (m, n) so that m >= 0
    (and n >= 0 when m = 0)."""
    lam, s, t, k = cyc(lam), cyc(s), cyc(t), cyc(k)
    if m < 0 or (m == 0 and n < 0):
        m, n = -m, -n
    if (m, n) == (1, 1):
        raise ForbiddenPair("(m, n) = +/-(1, 1) is excluded")
    if (m + n) % 2 != 0:
        raise ParityViolation(f"m + n = {m + n} must be even")
    if lam.is_zero():
        raise LambdaOrderViolation("lambda must be nonzero")
    if (m, n) != (0, 0):
        d = math.gcd(abs(m), abs(n))
        if lam ** d != ONE:
            raise LambdaOrderViolation(
                f"lambda^gcd(m, n) = lambda^{d} must equal 1"
            )
    if lam == ONE:
        pass
    elif lam == -ONE and k.is_zero():
        pass
    elif k.is_zero() and s.is_zero() and t.is_zero():
        pass
    else:
        raise ConstraintViolation(
            "need lambda = 1, or lambda = -1 with k = 0, or k = s = t = 0"
        )
    return BmnParams(m, n, lam, s, t, k)


def group_canonical(params, i, j):
    return params.canon(i, j)


# -- elements and normal-form arithmetic -------------------------------------
# basis key: ((i, j), p, q) for a^i b^j x^p y^q


def _rightmul_x(params, key):
    """key * x as a dict of basis keys."""
    g, p, q = key
    if q == 0:
        if p == 0:
            return {(g, 1, 0): ONE}
        # x^2 = s(1 - a^2); the two terms cancel when a^2 folds to 1
        out = {}
        _accumulate(out, (g, 0, 0), params.s)
        _accumulate(out, (params.canon(g[0] + 2, g[1]), 0, 0), -params.s)
        return out
    # move x past the trailing y:  yx = lam^-1*k*(1 - ab) - lam^-1*xy
    out = {}
    li = params.lam_inv
    coeff = li * params.k
    if not coeff.is_zero():
        out[(g, p, 0)] = coeff
        shifted = params.canon(g[0] + 1, g[1] + 1)
        sign = params.sign_x(1, 1) ** p
        _accumulate(out, (shifted, p, 0), -coeff * sign)
    for key2, c in _rightmul_x(params, (g, p, 0)).items():
        g2, p2, _ = key2
        _accumulate(out, (g2, p2, 1), -li * c)
    return out


def _rightmul_y(params, key):
    """key * y as a dict of basis keys."""
    g, p, q = key
    if q == 0:
        return {(g, p, 1): ONE}
    # y^2 = t(1 - b^2); the two terms cancel when b^2 folds to 1
    out = {}
    _accumulate(out, (g, p, 0), params.t)
    shifted = params.canon(g[0], g[1] + 2)
    sign = params.sign_x(0, 2) ** p
    _accumulate(out, (shifted, p, 0), -params.t * sign)
    return out


def _accumulate(target, key, value):
    new = target.get(key, ZERO) + value
    if new.is_zero():
        target.pop(key, None)
    else:
        target[key] = new


def _mono_mul(params, key1, key2):
    """Product of two basis monomials as a dict of basis keys."""
    cached = params._mono_cache.get((key1, key2))
    if cached is not None:
        return cached
    (g1, p1, q1), (g2, p2, q2) = key1, key2
    coeff = ONE
    if p1:
        coeff = coeff * params.sign_x(*g2)
    if q1:
        coeff = coeff * params.sign_y(*g2)
    g = params.canon(g1[0] + g2[0], g1[1] + g2[1])
    terms = {(g, p1, q1): coeff}
    for _ in range(p2):
        nxt = {}
        for key, c in terms.items():
            for key_out, c2 in _rightmul_x(params, key).items():
                _accumulate(nxt, key_out, c * c2)
        terms = nxt
    for _ in range(q2):
        nxt = {}
        for key, c in terms.items():
            for key_out, c2 in _rightmul_y(params, key).items():
                _accumulate(nxt, key_out, c * c2)
        terms = nxt
    params._mono_cache[(key1, key2)] = terms
    return terms


class BmnElement:
    """A sparse combination of normal-form basis monomials."""

    __slots__ = ("params", "terms")

    def __init__(self, params, terms):
        self.params = params
        clean = {}
        for key, coeff in terms.items():
            coeff = cyc(coeff)
            if not coeff.is_zero():
                clean[key] = coeff
        self.terms = clean

    def is_zero(self):
        return not self.terms

    def _check(self, other):
        if self.params != other.params:
            raise ParamMismatch("elements have different parameters")

    def __add__(self, other):
        if not isinstance(other, BmnElement):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            _accumulate(out, key, c)
        return BmnElement(self.params, out)

    def __sub__(self, other):
        if not isinstance(other, BmnElement):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return BmnElement(self.params, {k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, BmnElement):
            return multiply(self, other)
        s = cyc(other)
        return BmnElement(self.params, {k: c * s for k, c in self.terms.items()})

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        if not isinstance(other, BmnElement):
            return NotImplemented
        return self.params == other.params and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms):
            parts.append(f"{_fmt_coeff(self.terms[key])}*{_fmt_key(key)}")
        return "+".join(parts)

    def __repr__(self):
        return f"BmnElement({self!s})"


def _fmt_coeff(c):
    body = str(c)
    if "+" in body or "-" in body:
        return f"({body})"
    return body


def _fmt_key(key):
    (i, j), p, q = key
    parts = []
    if i:
        parts.append(f"a^{i}" if i != 1 else "a")
    if j:
        parts.append(f"b^{j}" if j != 1 else "b")
    if p:
        parts.append("x")
    if q:
        parts.append("y")
    return "*".join(parts) if parts else "1"


def element(params, terms):
    return BmnElement(params, terms)


def unit(params):
    return BmnElement(params, {(params.canon(0, 0), 0, 0): ONE})


def group_element(params, i, j):
    return BmnElement(params, {(params.canon(i, j), 0, 0): ONE})


def basis_element(params, i, j, p, q):
    return BmnElement(params, {(params.canon(i, j), p, q): ONE})


def gen_a(params):
    return group_element(params, 1, 0)


def gen_b(params):
    return group_element(params, 0, 1)


def gen_x(params):
    return basis_element(params, 0, 0, 1, 0)


def gen_y(params):
    return basis_element(params, 0, 0, 0, 1)


def multiply(u, v):
    if u.params != v.params:
        raise ParamMismatch("elements have different parameters")
    out = {}
    for k1, c1 in u.terms.items():
        for k2, c2 in v.terms.items():
            c = c1 * c2
            for key, c3 in _mono_mul(u.params, k1, k2).items():
                _accumulate(out, key, c * c3)
    return BmnElement(u.params, out)


def counit(u):
    total = ZERO
    for (g, p, q), c in u.terms.items():
        if p == 0 and q == 0:
            total = total + c
    return total


class TensorElement:
    """A sparse element of the tensor square, keyed by basis-key pairs."""

    __slots__ = ("params", "terms")

    def __init__(self, params, terms):
        self.params = params
        clean = {}
        for key, coeff in terms.items():
            coeff = cyc(coeff)
            if not coeff.is_zero():
                clean[key] = coeff
        self.terms = clean

    def __add__(self, other):
        out = dict(self.terms)
        for key, c in other.terms.items():
            _accumulate(out, key, c)
        return TensorElement(self.params, out)

    def __sub__(self, other):
        neg = {k: -c for k, c in other.terms.items()}
        return self + TensorElement(self.params, neg)

    def __mul__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        out = {}
        for (l1, r1), c1 in self.terms.items():
            for (l2, r2), c2 in other.terms.items():
                c = c1 * c2
                left = _mono_mul(self.params, l1, l2)
                right = _mono_mul(self.params, r1, r2)
                for kl, cl in left.items():
                    for kr, cr in right.items():
                        _accumulate(out, (kl, kr), c * cl * cr)
        return TensorElement(self.params, out)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.params == other.params and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        return f"TensorElement({len(self.terms)} terms)"


def _delta_generators(params):
    one = (params.canon(0, 0), 0, 0)
    a = (params.canon(1, 0), 0, 0)
    b = (params.canon(0, 1), 0, 0)
    x = (params.canon(0, 0), 1, 0)
    y = (params.canon(0, 0), 0, 1)
    dx = TensorElement(params, {(one, x): ONE, (x, a): ONE})
    dy = TensorElement(params, {(one, y): ONE, (y, b): ONE})
    return dx, dy


def comultiply(u):
    params = u.params
    dx, dy = _delta_generators(params)
    out = TensorElement(params, {})
    for (g, p, q), c in u.terms.items():
        gk = (g, 0, 0)
        t = TensorElement(params, {(gk, gk): c})
        if p:
            t = t * dx
        if q:
            t = t * dy
        out = out + t
    return out


def antipode(u):
    params = u.params
    a_inv = group_element(params, -1, 0)
    b_inv = group_element(params, 0, -1)
    s_x = -(gen_x(params) * a_inv)
    s_y = -(gen_y(params) * b_inv)
    out = BmnElement(params, {})
    for (g, p, q), c in u.terms.items():
        term = group_element(params, -g[0], -g[1])
        if p:
            term = s_x * term
        if q:
            term = s_y * term
        out = out + term * c
    return out


# -- axiom verification ------------------------------------------------------


def _delta_key(params, key):
    """Comultiplication of a single basis monomial as a dict."""
    return comultiply(BmnElement(params, {key: ONE})).terms


def verify_hopf_axioms(params, radius, product_pairs=12, seed=0):
    """Exact verification of the Hopf axioms on every basis monomial with
    group part in the window, plus multiplicativity on random monomial pairs.

    Raises AxiomFailure with a witness; returns a report dict on success."""
    keys = [
        ((i, j), p, q)
        for (i, j) in params.window(radius)
        for p in (0, 1)
        for q in (0, 1)
    ]
    one = unit(params)
    for key in keys:
        u = BmnElement(params, {key: ONE})
        du = comultiply(u)
        # coassociativity
        lhs, rhs = {}, {}
        for (l, r), c in du.terms.items():
            for (l2, r2), c2 in _delta_key(params, l).items():
                _accumulate(lhs, (l2, r2, r), c * c2)
            for (l2, r2), c2 in _delta_key(params, r).items():
                _accumulate(rhs, (l, l2, r2), c * c2)
        if lhs != rhs:
            raise AxiomFailure("coassociativity fails", witness=str(u))
        # counit laws
        left = BmnElement(params, {})
        right = BmnElement(params, {})
        for (l, r), c in du.terms.items():
            if l[1] == 0 and l[2] == 0:
                left = left + BmnElement(params, {r: c})
            if r[1] == 0 and r[2] == 0:
                right = right + BmnElement(params, {l: c})
        if left != u or right != u:
            raise AxiomFailure("counit law fails", witness=str(u))
        # antipode law
        target = one * counit(u)
        conv_l = BmnElement(params, {})
        conv_r = BmnElement(params, {})
        for (l, r), c in du.terms.items():
            el = BmnElement(params, {l: ONE})
            er = BmnElement(params, {r: ONE})
            conv_l = conv_l + (antipode(el) * er) * c
            conv_r = conv_r + (el * antipode(er)) * c
        if conv_l != target or conv_r != target:
            raise AxiomFailure("antipode law fails", witness=str(u))
    rng = random.Random(seed)
    for _ in range(product_pairs):
        k1 = keys[rng.randrange(len(keys))]
        k2 = keys[rng.randrange(len(keys))]
        u = BmnElement(params, {k1: ONE})
        v = BmnElement(params, {k2: ONE})
        uv = u * v
        if comultiply(uv) != comultiply(u) * comultiply(v):
            raise AxiomFailure(
                "comultiplication is not multiplicative", witness=f"{u} , {v}"
            )
        if counit(uv) != counit(u) * counit(v):
            raise AxiomFailure("counit is not multiplicative", witness=f"{u} , {v}")
        if antipode(uv) != antipode(v) * antipode(u):
            raise AxiomFailure(
                "antipode is not anti-multiplicative", witness=f"{u} , {v}"
            )
    return {
        "params": params.to_json(),
        "window_radius": radius,
        "basis_checked": len(keys),
        "product_pairs": product_pairs,
        "ok": True,
    }


# -- embedding into the grid path coalgebra ----------------------------------


class Truncation:
    """A finite window of the Hopf algebra realized inside the grid path
    coalgebra.

    coalgebra: the smallest closed subcoalgebra containing the window images;
    images: basis key -> CoElement for every key with group part in the window;
    rank: dimension of the span of those images."""

    def __init__(self, params, radius, quiver, coalgebra, images, window):
        self.params = params
        self.radius = radius
        self.quiver = quiver
        self.coalgebra = coalgebra
        self.images = images
        self.window = window
        self.rank = len(images)

    def image_of(self, i, j, p, q):
        key = (self.params.canon(i, j), p, q)
        img = self.images.get(key)
        if img is None:
            raise WindowTooSmall(f"group part {key[0]} outside the window")
        return img


def _image_of_key(params, quiver, key):
    (i, j), p, q = key
    g = grid_vertex_label(i, j)
    if p == 0 and q == 0:
        return path_element(quiver, Path(g))
    if p == 1 and q == 0:
        return path_element(quiver, Path(g, (f"x@{g}",)))
    if p == 0 and q == 1:
        return path_element(quiver, Path(g, (f"y@{g}",)))
    ga = grid_vertex_label(*params.canon(i + 1, j))
    gb = grid_vertex_label(*params.canon(i, j + 1))
    return path_element(quiver, Path(g, (f"x@{g}", f"y@{ga}"))) - path_element(
        quiver, Path(g, (f"y@{g}", f"x@{gb}")), params.lam
    )


def truncate_to_subcoalgebra(params, radius):
    """Embed the window-indexed basis into the grid path coalgebra.

    Returns a Truncation whose coalgebra is spanned by the images of
    a^i b^j x^p y^q for (i, j) in the window, completed at the boundary so the
    span is closed under comultiplication."""
    if radius < 0:
        raise WindowTooSmall("radius must be nonnegative")
    window = params.window(radius)
    shift_a = {params.canon(i + 1, j) for i, j in window}
    shift_b = {params.canon(i, j + 1) for i, j in window}
    shift_ab = {params.canon(i + 1, j + 1) for i, j in window}
    groups = sorted(set(window) | shift_a | shift_b | shift_ab)
    x_groups = sorted(set(window) | shift_b)
    y_groups = sorted(set(window) | shift_a)
    ambient = max(abs(c) for g in groups for c in g)
    quiver = grid_quiver(params.m, params.n, ambient)
    basis = [_image_of_key(params, quiver, (g, 0, 0)) for g in groups]
    basis += [_image_of_key(params, quiver, (g, 1, 0)) for g in x_groups]
    basis += [_image_of_key(params, quiver, (g, 0, 1)) for g in y_groups]
    basis += [_image_of_key(params, quiver, (g, 1, 1)) for g in window]
    coalg = SubCoalgebra(quiver, basis)
    images = {}
    for g in window:
        for p in (0, 1):
            for q in (0, 1):
                images[(g, p, q)] = _image_of_key(params, quiver, (g, p, q))
    return Truncation(params, radius, quiver, coalg, images, window)


def contains_path_combination(params, radius, i, j, c1, c2, truncation=None):
    """Whether c1*(a^i b^j x | a^{i+1} b^j y) + c2*(a^i b^j y | a^i b^{j+1} x)
    lies in the embedded subcoalgebra."""
    trunc = truncation or truncate_to_subcoalgebra(params, radius)
    g = params.canon(i, j)
    if g not in set(trunc.window):
        raise WindowTooSmall(f"group part {g} outside the window")
    quiver = trunc.quiver
    v = grid_vertex_label(*g)
    ga = grid_vertex_label(*params.canon(g[0] + 1, g[1]))
    gb = grid_vertex_label(*params.canon(g[0], g[1] + 1))
    probe = path_element(quiver, Path(v, (f"x@{v}", f"y@{ga}")), c1) + path_element(
        quiver, Path(v, (f"y@{v}", f"x@{gb}")), c2
    )
    return trunc.coalgebra.contains(probe)


def translate(params, quiver, shift, path):
    """Translate a grid path by a group element (di, dj)."""
    di, dj = shift
    i, j = _parse_grid_label(path.start)
    start = grid_vertex_label(*params.canon(i + di, j + dj))
    if start not in quiver.vertex_set:
        raise WindowTooSmall(f"translated vertex {start} outside the window")
    arrows = []
    for aid in path.arrows:
        kind, _, label = aid.partition("@")
        ai, aj = _parse_grid_label(label)
        new_label = grid_vertex_label(*params.canon(ai + di, aj + dj))
        new_id = f"{kind}@{new_label}"
        if new_id not in quiver.arrow_by_id:
            raise WindowTooSmall(f"translated arrow {new_id} outside the window")
        arrows.append(new_id)
    out = Path(start, tuple(arrows))
    if not out.is_valid(quiver):
        raise WindowTooSmall("translated path leaves the window")
    return out


def _parse_grid_label(label):
    if not label.startswith("a") or "b" not in label:
        raise ParseError(f"not a grid vertex label: {label!r}")
    body = label[1:]
    i_str, _, j_str = body.partition("b")
    try:
        return int(i_str), int(j_str)
    except ValueError as exc:
        raise ParseError(f"not a grid vertex label: {label!r}") from exc


# -- element grammar ---------------------------------------------------------


def _split_signed(text):
    chunks, depth, cur, last = [], 0, "", ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parentheses in {text!r}")
        # a sign right after '^' or '*' belongs to an exponent or scalar
        if depth == 0 and ch in "+-" and cur and last not in "^*+-(/":
            chunks.append(cur)
            cur = ch
        else:
            cur += ch
        if not ch.isspace():
            last = ch
    if depth != 0:
        raise ParseError(f"unbalanced parentheses in {text!r}")
    if cur:
        chunks.append(cur)
    return chunks


def _gen_factor(params, name, exponent):
    if name == "a":
        return group_element(params, exponent, 0)
    if name == "b":
        return group_element(params, 0, exponent)
    if exponent < 0:
        raise ParseError(f"{name} is not invertible")
    base = gen_x(params) if name == "x" else gen_y(params)
    out = unit(params)
    for _ in range(exponent):
        out = out * base
    return out


def parse_bmn_element(params, text):
    """Parse products of a, b, x, y (with integer exponents on a, b) and
    scalar literals, joined by + and -."""
    text = text.strip()
    if not text:
        raise ParseError("empty element")
    if text == "0":
        return BmnElement(params, {})
    total = BmnElement(params, {})
    for chunk in _split_signed(text):
        sign = ONE
        body = chunk.strip()
        if body.startswith("+"):
            body = body[1:]
        elif body.startswith("-"):
            sign = -ONE
            body = body[1:]
        body = body.strip()
        if not body:
            raise ParseError(f"dangling sign in {text!r}")
        term = unit(params) * sign
        for factor in body.split("*"):
            factor = factor.strip()
            if not factor:
                raise ParseError(f"empty factor in {chunk!r}")
            name, sep, exp_str = factor.partition("^")
            if name in ("a", "b", "x", "y"):
                if sep and not _is_int(exp_str):
                    raise ParseError(f"bad exponent in {factor!r}")
                exponent = int(exp_str) if sep else 1
                term = term * _gen_factor(params, name, exponent)
            else:
                term = term * parse_scalar(factor)
        total = total + term
    return total


def _is_int(text):
    try:
        int(text)
        return True
    except ValueError:
        return False
