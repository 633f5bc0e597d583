"""Isomorphism testing, canonical forms, and automorphism groups for the
four-parameter family.

Two parameter tuples give isomorphic algebras iff a generator rescaling
(a,b,x,y) -> (a',b',alpha x',beta y') matches the parameters
(lambda,s,t,k) = (lambda', alpha^2 s', beta^2 t', alpha beta k'), or the
same with a<->b and x<->y swapped (requires the grid pair to swap and
lambda = lambda' = 1).  Witnesses are verified at the level of defining
relations and the Hopf structure maps.
"""

from __future__ import annotations

from .errors import (
    NotCanonical,
    NotClosed,
    NotDiscreteParams,
    SquareRootUnavailable,
)
from .hopf import (
    BmnParams,
    TensorElement,
    antipode,
    comultiply,
    counit,
    element,
    gen_a,
    gen_b,
    gen_x,
    gen_y,
    group_element,
    unit,
    validate_params,
)
from .scalar import ONE, ZERO, cyc, sqrt


class IsoWitness:
    """A generator rescaling: phi keeps (a,b) fixed, psi swaps a<->b and
    x<->y.  alpha and beta scale the images of x and y."""

    def __init__(self, kind, alpha, beta):
        if kind not in ("phi", "psi"):
            raise ValueError(f"unknown witness kind {kind!r}")
        self.kind = kind
        self.alpha = cyc(alpha)
        self.beta = cyc(beta)

    def matrix(self):
        if self.kind == "phi":
            return [[self.alpha, ZERO], [ZERO, self.beta]]
        return [[ZERO, self.alpha], [self.beta, ZERO]]

    def to_json(self):
        return {
            "kind": self.kind,
            "alpha": str(self.alpha),
            "beta": str(self.beta),
        }

    def __eq__(self, other):
        if not isinstance(other, IsoWitness):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.alpha == other.alpha
            and self.beta == other.beta
        )

    def __repr__(self):
        return f"IsoWitness({self.kind}, {self.alpha}, {self.beta})"


def witness_from_matrix(mat):
    """Inverse of IsoWitness.matrix; None when the matrix is neither diagonal
    nor antidiagonal with nonzero entries."""
    a, b = mat[0][0], mat[0][1]
    c, d = mat[1][0], mat[1][1]
    if b.is_zero() and c.is_zero() and not a.is_zero() and not d.is_zero():
        return IsoWitness("phi", a, d)
    if a.is_zero() and d.is_zero() and not b.is_zero() and not c.is_zero():
        return IsoWitness("psi", b, c)
    return None


def compose(w1, w2):
    """Composition through the 2x2 representation."""
    m1, m2 = w1.matrix(), w2.matrix()
    prod = [
        [
            m1[i][0] * m2[0][j] + m1[i][1] * m2[1][j]
            for j in range(2)
        ]
        for i in range(2)
    ]
    out = witness_from_matrix(prod)
    if out is None:
        raise NotClosed("composition left the witness shapes")
    return out


def _pair_matches_swapped(p1, p2):
    """(m1,n1) = +-(n2,m2) after the sign normalization both params carry."""
    m, n = p2.n, p2.m
    if m < 0 or (m == 0 and n < 0):
        m, n = -m, -n
    return (p1.m, p1.n) == (m, n)


def _solve_rescaling(s, t, k, s2, t2, k2):
    """alpha, beta with s = alpha^2 s2, t = beta^2 t2, k = alpha beta k2,
    or None.  Zero patterns must agree."""
    for left, right in ((s, s2), (t, t2), (k, k2)):
        if left.is_zero() != right.is_zero():
            return None
    alpha = sqrt(s / s2) if not s2.is_zero() else None
    beta = sqrt(t / t2) if not t2.is_zero() else None
    if k2.is_zero():
        return (alpha or ONE, beta or ONE)
    ratio = k / k2
    if alpha is not None and beta is not None:
        if alpha * beta == ratio:
            return (alpha, beta)
        if alpha * beta == -ratio:
            return (alpha, -beta)
        return None  # (s/s2)(t/t2) != (k/k2)^2
    if alpha is not None:
        return (alpha, ratio / alpha)
    if beta is not None:
        return (ratio / beta, beta)
    return (ONE, ratio)


def are_isomorphic(p1, p2):
    """A witness mapping the first algebra onto the second, or None."""
    if (p1.m, p1.n) == (p2.m, p2.n) and p1.lam == p2.lam:
        sol = _solve_rescaling(p1.s, p1.t, p1.k, p2.s, p2.t, p2.k)
        if sol is not None:
            return IsoWitness("phi", sol[0], sol[1])
    if (
        _pair_matches_swapped(p1, p2)
        and p1.lam == ONE
        and p2.lam == ONE
    ):
        sol = _solve_rescaling(p1.s, p1.t, p1.k, p2.t, p2.s, p2.k)
        if sol is not None:
            return IsoWitness("psi", sol[0], sol[1])
    return None


def _tensor_of(u, v):
    out = {}
    for ku, cu in u.terms.items():
        for kv, cv in v.terms.items():
            out[(ku, kv)] = out.get((ku, kv), ZERO) + cu * cv
    return TensorElement(u.params, out)


def verify_witness(w, p1, p2):
    """Check that the generator assignment sends every defining relation to a
    relation and commutes with the comultiplication, counit, and antipode."""
    if w.alpha.is_zero() or w.beta.is_zero():
        return False
    if w.kind == "phi":
        va, vb = (1, 0), (0, 1)
        img_x, img_y = gen_x(p2) * w.alpha, gen_y(p2) * w.beta
    else:
        va, vb = (0, 1), (1, 0)
        img_x, img_y = gen_y(p2) * w.alpha, gen_x(p2) * w.beta
    img_a = group_element(p2, *va)
    img_b = group_element(p2, *vb)
    one = unit(p2)
    zero = element(p2, {})
    lam, s, t, k = p1.lam, p1.s, p1.t, p1.k

    def grp(coeff_a, coeff_b):
        return group_element(
            p2,
            coeff_a * va[0] + coeff_b * vb[0],
            coeff_a * va[1] + coeff_b * vb[1],
        )

    relations = [
        img_a * img_b - img_b * img_a,
        grp(p1.m, 0) - grp(0, p1.n),
        img_x * img_y + (img_y * img_x) * lam - (one - grp(1, 1)) * k,
        img_a * img_x + img_x * img_a,
        (img_b * img_x) * lam + img_x * img_b,
        img_x * img_x - (one - grp(2, 0)) * s,
        img_b * img_y + img_y * img_b,
        img_a * img_y + (img_y * img_a) * lam,
        img_y * img_y - (one - grp(0, 2)) * t,
    ]
    if any(r != zero for r in relations):
        return False
    # comultiplication, counit, antipode on the generators
    for g in (img_a, img_b):
        if comultiply(g) != _tensor_of(g, g) or counit(g) != ONE:
            return False
    for skew, grouplike in ((img_x, img_a), (img_y, img_b)):
        expected = _tensor_of(one, skew) + _tensor_of(skew, grouplike)
        if comultiply(skew) != expected or not counit(skew).is_zero():
            return False
        inv = group_element(
            p2, -_vec(grouplike)[0], -_vec(grouplike)[1]
        )
        if antipode(skew) != (skew * inv) * (-1):
            return False
    return True


def _vec(group_elem):
    ((g, _, _),) = group_elem.terms.keys()
    return g


def _prefer_sign(value):
    """Deterministic pick between value and -value (shortest printed form,
    ties broken lexicographically)."""
    a, b = value, -value
    ka = (len(str(a)), str(a))
    kb = (len(str(b)), str(b))
    return a if ka <= kb else b


def canonical_form(params):
    """The table representative of the isomorphism class, with the witness
    used to reach it."""
    if params.m == params.n and params.m != 0:
        raise NotDiscreteParams("canonical forms cover m != n or m = n = 0")
    lam, s, t, k = params.lam, params.s, params.t, params.k
    s0, t0, k0 = s.is_zero(), t.is_zero(), k.is_zero()
    swap_available = params.m == -params.n and lam == ONE
    kind = "phi"
    if s0 and t0 and k0:
        tag, rep, alpha, beta = "1", (lam, 0, 0, 0), ONE, ONE
    elif lam == -ONE:
        if s0:
            tag, rep, alpha, beta = "2", (-1, 0, 1, 0), ONE, sqrt(t)
        elif t0:
            tag, rep, alpha, beta = "3", (-1, 1, 0, 0), sqrt(s), ONE
        else:
            tag, rep, alpha, beta = "4", (-1, 1, 1, 0), sqrt(s), sqrt(t)
    elif not s0 and not t0:
        alpha, beta = sqrt(s), sqrt(t)
        kc = _prefer_sign(k / (alpha * beta))
        if kc != k / (alpha * beta):
            alpha = -alpha
        tag, rep = "5", (1, 1, 1, kc)
    elif not s0 and k0:
        tag, rep, alpha, beta = "6", (1, 1, 0, 0), sqrt(s), ONE
    elif not t0 and k0:
        if swap_available:
            kind = "psi"
            tag, rep, alpha, beta = "6", (1, 1, 0, 0), ONE, sqrt(t)
        else:
            tag, rep, alpha, beta = "6'", (1, 0, 1, 0), ONE, sqrt(t)
    elif not s0:  # k != 0
        alpha = sqrt(s)
        tag, rep, beta = "7", (1, 1, 0, 1), k / alpha
    elif not t0:  # k != 0
        beta = sqrt(t)
        if swap_available:
            kind = "psi"
            tag, rep, alpha = "7", (1, 1, 0, 1), k / beta
        else:
            tag, rep, alpha = "7'", (1, 0, 1, 1), k / beta
    else:  # only k nonzero
        tag, rep, alpha, beta = "8", (1, 0, 0, 1), ONE, k
    canonical = validate_params(params.m, params.n, *rep)
    return tag, canonical, IsoWitness(kind, alpha, beta)


_GENERIC = "any"
_SIGN = "square is 1"
_PRODUCT = "product is 1"

_GROUP_NAMES = {
    # (alpha constrained, beta constrained, product constrained, swap)
    (False, False, False, False): "Kx x Kx",
    (False, False, False, True): "(Kx x Kx) : Z/2",
    (False, True, False, False): "Kx x Z/2",
    (True, False, False, False): "Kx x Z/2",
    (True, True, False, False): "Z/2 x Z/2",
    (True, True, False, True): "D_4",
    (True, True, True, False): "Z/2",
    (True, True, True, True): "Z/2 x Z/2",
    (True, False, True, False): "Z/2",
    (False, True, True, False): "Z/2",
    (False, False, True, False): "Kx",
    (False, False, True, True): "Dih(Kx)",
}


class AutDescription:
    def __init__(self, family, group_name, alpha_constraint, beta_constraint,
                 product_constraint, includes_swap):
        self.family = family
        self.group_name = group_name
        self.alpha_constraint = alpha_constraint
        self.beta_constraint = beta_constraint
        self.product_constraint = product_constraint
        self.includes_swap = includes_swap

    def to_json(self):
        return {
            "family": self.family,
            "group_name": self.group_name,
            "constraints": {
                "alpha": self.alpha_constraint,
                "beta": self.beta_constraint,
                "alpha_beta": self.product_constraint,
            },
            "includes_swap": self.includes_swap,
        }

    def __repr__(self):
        return f"AutDescription({self.family}, {self.group_name})"


def automorphism_group(params):
    """The automorphism group of a canonical representative, as generator
    constraints plus the structured group name from the tables."""
    tag, canonical, _ = canonical_form(params)
    if canonical != params:
        raise NotCanonical(f"parameters reduce to {canonical}")
    s0, t0, k0 = params.s.is_zero(), params.t.is_zero(), params.k.is_zero()
    alpha_sign = not s0
    beta_sign = not t0
    product_one = not k0
    swap = (
        params.m == -params.n
        and params.lam == ONE
        and s0 == t0
    )
    family = tag
    if tag == "5":
        family = "5A" if k0 else "5B"
    name = _GROUP_NAMES[(alpha_sign, beta_sign, product_one, swap)]
    return AutDescription(
        family,
        name,
        _SIGN if alpha_sign else _GENERIC,
        _SIGN if beta_sign else _GENERIC,
        _PRODUCT if product_one else None,
        swap,
    )


def rho_representation(witnesses):
    """2x2 matrices of the grouplike-action representation; checks that the
    image is multiplicatively closed in shape."""
    mats = [w.matrix() for w in witnesses]
    for w1 in witnesses:
        for w2 in witnesses:
            compose(w1, w2)  # raises NotClosed on shape failure
    return mats


def centralizer_index(witnesses):
    """Index of the swap-free subset; the set must be closed under
    composition."""
    for w1 in witnesses:
        for w2 in witnesses:
            prod = compose(w1, w2)
            if not any(prod == w for w in witnesses):
                raise NotClosed(f"{w1} * {w2} = {prod} missing from the set")
    index = 2 if any(w.kind == "psi" for w in witnesses) else 1
    assert index <= 2
    return index
