"""Finite-dimensional pointed subcoalgebras of path coalgebras.

Elements are sparse linear combinations of paths; comultiplication splits
paths.  The module provides diamond bases, skew-primitive spaces, Ext-quivers,
the coradical filtration, covering-map verification, dual algebras,
separability-element checks, and localization of dual algebras.
"""

from __future__ import annotations

import re

from .errors import (
    AmbientMismatch,
    BasisNotDiamond,
    CapacityExceeded,
    EmptySubset,
    InvalidDescription,
    InvalidMorphism,
    NotACovering,
    NotClosedUnderDelta,
    NotGrouplike,
    NotPointed,
    ParseError,
    UnknownVertex,
)
from .linalg import SparseBasis, nullspace
from .quiver import Path, Quiver
from .scalar import ONE, ZERO, CycScalar, cyc, parse_scalar


class CoElement:
    """A sparse linear combination of paths in a fixed ambient quiver."""

    __slots__ = ("quiver", "terms")

    def __init__(self, quiver, terms):
        self.quiver = quiver
        clean = {}
        for path, coeff in terms.items():
            coeff = cyc(coeff)
            if not coeff.is_zero():
                clean[path] = coeff
        self.terms = clean

    def is_zero(self):
        return not self.terms

    def support(self):
        return sorted(self.terms)

    def coefficient(self, path):
        return self.terms.get(path, ZERO)

    def _check_ambient(self, other):
        if self.quiver is not other.quiver and self.quiver != other.quiver:
            raise AmbientMismatch("elements live in different quivers")

    def __add__(self, other):
        if not isinstance(other, CoElement):
            return NotImplemented
        self._check_ambient(other)
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, ZERO) + c
        return CoElement(self.quiver, out)

    def __sub__(self, other):
        if not isinstance(other, CoElement):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return CoElement(self.quiver, {p: -c for p, c in self.terms.items()})

    def __mul__(self, scalar):
        s = cyc(scalar)
        return CoElement(self.quiver, {p: c * s for p, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, CoElement):
            return NotImplemented
        return self.quiver == other.quiver and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((p, c) for p, c in self.terms.items()))

    def delta(self):
        """Comultiplication: list of (left path, right path, coefficient)."""
        out = {}
        for path, coeff in self.terms.items():
            v = path.start
            for k in range(path.length + 1):
                left = Path(path.start, path.arrows[:k])
                mid = left.target(self.quiver)
                right = Path(mid, path.arrows[k:])
                key = (left, right)
                out[key] = out.get(key, ZERO) + coeff
        return [(l, r, c) for (l, r), c in out.items() if not c.is_zero()]

    def delta_dict(self):
        return {(l, r): c for l, r, c in self.delta()}

    def counit(self):
        total = ZERO
        for path, coeff in self.terms.items():
            if path.length == 0:
                total = total + coeff
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for path in self.support():
            parts.append(f"{_fmt_scalar(self.terms[path])}*{_fmt_path(path)}")
        return "+".join(parts)

    def __repr__(self):
        return f"CoElement({self!s})"


def _fmt_scalar(s):
    body = str(s)
    if "+" in body or "-" in body:
        return f"({body})"
    return body


def _fmt_path(path):
    if path.length == 0:
        return f"e_{path.start}"
    return f"({'|'.join(path.arrows)})"


def coelement(quiver, terms):
    """Build a CoElement from {Path: scalar-like}."""
    return CoElement(quiver, terms)


def path_element(quiver, path, coeff=1):
    if not path.is_valid(quiver):
        raise InvalidDescription(f"path {path!r} is not valid in the quiver")
    return CoElement(quiver, {path: cyc(coeff)})


def grouplike(quiver, v):
    return path_element(quiver, quiver.trivial_path(v))


def parse_path(quiver, text):
    text = text.strip()
    if text.startswith("e_"):
        v = text[2:]
        if v not in quiver.vertex_set:
            raise ParseError(f"unknown vertex in path {text!r}")
        return Path(v)
    if text.startswith("(") and text.endswith(")"):
        ids = [a.strip() for a in text[1:-1].split("|")]
        if not ids or any(not a for a in ids):
            raise ParseError(f"bad path {text!r}")
        first = ids[0]
        if first not in quiver.arrow_by_id:
            raise ParseError(f"unknown arrow {first!r}")
        p = Path(quiver.arrow(first)[1], tuple(ids))
        if not p.is_valid(quiver):
            raise ParseError(f"non-composable path {text!r}")
        return p
    raise ParseError(f"bad path syntax {text!r}")


def _split_top_level(text, seps):
    """Split at top-level (depth-0) occurrences of characters in seps,
    keeping the separators."""
    chunks, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parentheses in {text!r}")
        if depth == 0 and ch in seps and cur:
            chunks.append(cur)
            cur = ch
        else:
            cur += ch
    if depth != 0:
        raise ParseError(f"unbalanced parentheses in {text!r}")
    if cur:
        chunks.append(cur)
    return chunks


def parse_coelement(quiver, text):
    """Parse the element grammar: `<scalar>*<path>` terms joined by +/-."""
    text = text.strip()
    if not text:
        raise ParseError("empty element")
    if text == "0":
        return CoElement(quiver, {})
    terms = {}
    for chunk in _split_top_level(text, "+-"):
        sign = ONE
        body = chunk
        if body.startswith("+"):
            body = body[1:]
        elif body.startswith("-"):
            sign = -ONE
            body = body[1:]
        body = body.strip()
        if not body:
            raise ParseError(f"dangling sign in {text!r}")
        # split scalar factor from the trailing path at the last top-level '*'
        pieces = _split_top_level(body, "*")
        # pieces alternate: first piece plain, later pieces start with '*'
        path_str = pieces[-1]
        if path_str.startswith("*"):
            path_str = path_str[1:]
            scalar_str = "".join(pieces[:-1])
        else:
            scalar_str = None
        path_str = path_str.strip()
        if not (path_str.startswith("e_") or path_str.startswith("(")):
            raise ParseError(f"missing path in term {chunk!r}")
        path = parse_path(quiver, path_str)
        coeff = sign if scalar_str is None else sign * parse_scalar(scalar_str)
        terms[path] = terms.get(path, ZERO) + coeff
    return CoElement(quiver, terms)


class Diamond:
    """A basis element whose supported paths share a source and a sink."""

    __slots__ = ("element", "source", "sink")

    def __init__(self, element, source, sink):
        self.element = element
        self.source = source
        self.sink = sink

    @staticmethod
    def from_element(element):
        quiver = element.quiver
        sources = {p.start for p in element.terms}
        sinks = {p.target(quiver) for p in element.terms}
        if len(sources) != 1 or len(sinks) != 1:
            raise BasisNotDiamond(f"element {element} is not a diamond")
        return Diamond(element, sources.pop(), sinks.pop())

    def __eq__(self, other):
        if not isinstance(other, Diamond):
            return NotImplemented
        return self.element == other.element

    def __hash__(self):
        return hash(self.element)

    def __repr__(self):
        return f"Diamond({self.element}, {self.source}->{self.sink})"


class SubCoalgebra:
    """A finite-dimensional subcoalgebra of a path coalgebra, given by a basis.

    Closure under comultiplication and presence of the relevant grouplikes are
    verified eagerly at construction.
    """

    def __init__(self, quiver, basis, validate=True):
        self.quiver = quiver
        self.basis = list(basis)
        self._engine = SparseBasis()
        for i, b in enumerate(self.basis):
            if b.is_zero():
                raise InvalidDescription("zero element in basis")
            if b.quiver != quiver:
                raise AmbientMismatch("basis element in wrong quiver")
            if not self._engine.add(dict(b.terms), i):
                raise InvalidDescription("basis is linearly dependent")
        self._diamonds = None
        if validate:
            self._validate()

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, element):
        return self._engine.contains(element.terms)

    def coords(self, element):
        """Coordinates in the stored basis, or None."""
        comb = self._engine.coords(element.terms)
        if comb is None:
            return None
        return [comb.get(i, ZERO) for i in range(self.dim)]

    def from_coords(self, coeffs):
        out = CoElement(self.quiver, {})
        for c, b in zip(coeffs, self.basis):
            c = cyc(c)
            if not c.is_zero():
                out = out + b * c
        return out

    def vertices_used(self):
        vs = set()
        for b in self.basis:
            for p in b.terms:
                vs.add(p.start)
                vs.add(p.target(self.quiver))
        return sorted(vs)

    def grouplikes(self):
        """Vertices v with e_v in the subcoalgebra."""
        out = []
        for v in self.vertices_used():
            if self.contains(grouplike(self.quiver, v)):
                out.append(v)
        return out

    def _validate(self):
        for b in self.basis:
            dd = b.delta_dict()
            rows, cols = {}, {}
            for (l, r), c in dd.items():
                rows.setdefault(l, {})[r] = c
                cols.setdefault(r, {})[l] = c
            for l, row in rows.items():
                if not self._engine.contains(row):
                    raise NotClosedUnderDelta(
                        f"delta({b}) leaves the span (right tensor factor)"
                    )
            for r, col in cols.items():
                if not self._engine.contains(col):
                    raise NotClosedUnderDelta(
                        f"delta({b}) leaves the span (left tensor factor)"
                    )
        for v in self.vertices_used():
            if not self.contains(grouplike(self.quiver, v)):
                raise NotClosedUnderDelta(f"missing grouplike at vertex {v!r}")

    # -- serialization ------------------------------------------------------

    def to_json(self):
        return {
            "quiver": self.quiver.to_json(),
            "basis": [
                [[_fmt_path(p), str(b.terms[p])] for p in b.support()] for b in self.basis
            ],
        }

    @staticmethod
    def from_json(data, validate=True):
        quiver = Quiver.from_json(data["quiver"])
        basis = []
        for entry in data["basis"]:
            terms = {}
            for path_str, scalar_str in entry:
                terms[parse_path(quiver, path_str)] = parse_scalar(scalar_str)
            basis.append(CoElement(quiver, terms))
        return SubCoalgebra(quiver, basis, validate=validate)

    def __repr__(self):
        return f"SubCoalgebra(dim {self.dim} in {self.quiver!r})"


def path_coalgebra(quiver, max_length):
    """The subcoalgebra spanned by all paths of length <= max_length."""
    basis = [path_element(quiver, p) for p in quiver.paths_up_to(max_length)]
    return SubCoalgebra(quiver, basis, validate=False)


def span_subcoalgebra(quiver, elements, validate=True):
    """Subcoalgebra spanned by the given elements (dependencies dropped)."""
    engine = SparseBasis()
    basis = []
    for e in elements:
        if not e.is_zero() and engine.add(dict(e.terms)):
            basis.append(e)
    return SubCoalgebra(quiver, basis, validate=validate)


def diamond_basis(coalg):
    """A basis of diamonds, grouped by (source, sink); grouplikes come first in
    their block and the other loop-block diamonds are normalized to counit 0."""
    if coalg._diamonds is not None:
        return coalg._diamonds
    quiver = coalg.quiver
    blocks = {}
    for b in coalg.basis:
        comps = {}
        for p, c in b.terms.items():
            comps.setdefault((p.start, p.target(quiver)), {})[p] = c
        for key, terms in comps.items():
            comp = CoElement(quiver, terms)
            if not coalg.contains(comp):
                raise NotClosedUnderDelta(
                    "bidegree component leaves the subcoalgebra"
                )
            blocks.setdefault(key, []).append(comp)
    diamonds = []
    engine = SparseBasis()
    for key in sorted(blocks):
        u, v = key
        if u == v:
            e_v = grouplike(quiver, v)
            if coalg.contains(e_v):
                if engine.add(dict(e_v.terms)):
                    diamonds.append(Diamond(e_v, v, v))
                members = [c - e_v * c.counit() for c in blocks[key]]
            else:
                members = blocks[key]
        else:
            members = blocks[key]
        for comp in members:
            if not comp.is_zero() and engine.add(dict(comp.terms)):
                diamonds.append(Diamond(comp, u, v))
    if len(diamonds) != coalg.dim:
        raise BasisNotDiamond("diamond decomposition does not span")
    coalg._diamonds = diamonds
    return diamonds


def _solve_combination(coalg, candidates, condition):
    """Find all combinations x = sum c_i candidates_i with condition(x) == {}.

    condition maps a CoElement to a sparse dict; must be linear.  Returns the
    list of solution CoElements (a basis of the solution space)."""
    mats = [condition(c) for c in candidates]
    keys = sorted({k for m in mats for k in m})
    rows = [[mats[i].get(k, ZERO) for i in range(len(candidates))] for k in keys]
    sols = nullspace(rows) if rows else [
        [ONE if i == j else ZERO for i in range(len(candidates))]
        for j in range(len(candidates))
    ]
    out = []
    for c in sols:
        x = CoElement(coalg.quiver, {})
        for coeff, cand in zip(c, candidates):
            if not coeff.is_zero():
                x = x + cand * coeff
        if not x.is_zero():
            out.append(x)
    return out


def skew_primitives(coalg, g, h):
    """Basis of P(g,h) = {x : delta(x) = e_g (x) x + x (x) e_h}."""
    for v in (g, h):
        if v not in coalg.quiver.vertex_set:
            raise NotGrouplike(f"{v!r} is not a vertex of the ambient quiver")
    e_g = grouplike(coalg.quiver, g)
    e_h = grouplike(coalg.quiver, h)
    if not coalg.contains(e_g):
        raise NotGrouplike(f"{g!r} is not grouplike in the subcoalgebra")
    if not coalg.contains(e_h):
        raise NotGrouplike(f"{h!r} is not grouplike in the subcoalgebra")
    pg, ph = Path(g), Path(h)
    # solutions live in span(e_g, e_h) + the (g, h) bidegree block
    candidates = [e_g] + ([] if g == h else [e_h])
    for d in diamond_basis(coalg):
        if d.source == g and d.sink == h and d.element.terms.get(Path(g)) is None:
            if not (g == h and d.element == e_g):
                candidates.append(d.element)

    def condition(x):
        out = dict(x.delta_dict())
        for p, c in x.terms.items():
            for key, coeff in (((pg, p), c), ((p, ph), c)):
                val = out.get(key, ZERO) - coeff
                if val.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = val
        return out

    return _solve_combination(coalg, candidates, condition)


def coradical_filtration(coalg):
    """The chain C_0 <= C_1 <= ... ending at C; returns (chain, loewy_length).

    C_0 is the grouplike span; C_{i+1} = {x : delta(x) in C_i (x) C + C (x) C_0}.
    Raises NotPointed if the chain stabilizes strictly below C."""
    gs = coalg.grouplikes()
    if not gs:
        raise NotPointed("no grouplikes found")
    quiver = coalg.quiver
    level = SparseBasis()
    for v in gs:
        level.add({Path(v): ONE})
    chain = [SubCoalgebra(quiver, [grouplike(quiver, v) for v in gs], validate=False)]
    if chain[0].dim == coalg.dim:
        return chain, 1
    while True:
        current = level
        rows_by_key = {}
        for i, b in enumerate(coalg.basis):
            cols = {}
            for (l, r), c in b.delta_dict().items():
                if r.length > 0:
                    cols.setdefault(r, {})[l] = c
            for q, col in cols.items():
                res, _ = current.residue(col)
                for p, c in res.items():
                    rows_by_key.setdefault((q, p), {})[i] = c
        keys = sorted(rows_by_key)
        rows = [
            [rows_by_key[k].get(i, ZERO) for i in range(coalg.dim)] for k in keys
        ]
        if rows:
            sols = nullspace(rows)
        else:
            # no constraints: the next level is everything
            sols = [
                [ONE if i == j else ZERO for i in range(coalg.dim)]
                for j in range(coalg.dim)
            ]
        members = []
        nxt = SparseBasis()
        for c in sols:
            x = coalg.from_coords(c)
            if not x.is_zero() and nxt.add(dict(x.terms)):
                members.append(x)
        if nxt.dim <= current.dim:
            raise NotPointed("coradical filtration stalls below the coalgebra")
        chain.append(SubCoalgebra(quiver, members, validate=False))
        level = nxt
        if nxt.dim == coalg.dim:
            return chain, len(chain)


def ext_quiver(coalg):
    """The quiver with vertices the grouplikes and dim P(g,h) - [g != h]
    arrows g -> h.  Requires the coalgebra to be pointed."""
    coradical_filtration(coalg)  # raises NotPointed when not pointed
    gs = coalg.grouplikes()
    pairs = {(g, g) for g in gs}
    for d in diamond_basis(coalg):
        pairs.add((d.source, d.sink))
    arrows = []
    for g, h in sorted(pairs):
        dim_p = len(skew_primitives(coalg, g, h))
        count = dim_p - (1 if g != h else 0)
        for k in range(count):
            arrows.append((f"p{k}@{g}>{h}", g, h))
    return Quiver(gs, arrows)


class CoalgebraMap:
    """A linear map between subcoalgebras, given by images of the domain basis."""

    def __init__(self, domain, codomain, images):
        self.domain = domain
        self.codomain = codomain
        self.images = list(images)
        if len(self.images) != domain.dim:
            raise InvalidMorphism("one image per domain basis element required")
        for img in self.images:
            if not codomain.contains(img):
                raise InvalidMorphism("image leaves the codomain")

    def apply(self, element):
        c = self.domain.coords(element)
        if c is None:
            raise InvalidMorphism("element outside the domain")
        out = CoElement(self.codomain.quiver, {})
        for coeff, img in zip(c, self.images):
            if not coeff.is_zero():
                out = out + img * coeff
        return out

    def _delta_in_basis(self, element, coalg):
        """Coefficients of delta(element) over basis (x) basis of coalg."""
        dd = element.delta_dict()
        lookup = {}
        for pivot, _, crow in coalg._engine.rows:
            lookup[pivot] = crow
        out = {}
        for (l, r), c in dd.items():
            cl = lookup.get(l)
            cr = lookup.get(r)
            if cl is None or cr is None:
                continue
            for i, a in cl.items():
                for j, b in cr.items():
                    key = (i, j)
                    val = out.get(key, ZERO) + c * a * b
                    if val.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = val
        return out

    def coalgebra_map_failure(self):
        """None if the map is a coalgebra homomorphism, else a witness."""
        for b, img in zip(self.domain.basis, self.images):
            if not (b.counit() - img.counit()).is_zero():
                return {"element": str(b), "axiom": "counit"}
            # delta(pi(b)) must equal (pi (x) pi)(delta(b))
            lhs = img.delta_dict()
            rhs = {}
            for (i, j), c in self._delta_in_basis(b, self.domain).items():
                for (p, cp) in self.images[i].terms.items():
                    for (q, cq) in self.images[j].terms.items():
                        key = (p, q)
                        val = rhs.get(key, ZERO) + c * cp * cq
                        if val.is_zero():
                            rhs.pop(key, None)
                        else:
                            rhs[key] = val
            diff = dict(lhs)
            for key, c in rhs.items():
                val = diff.get(key, ZERO) - c
                if val.is_zero():
                    diff.pop(key, None)
                else:
                    diff[key] = val
            if diff:
                return {"element": str(b), "axiom": "comultiplication"}
        return None

    def is_coalgebra_map(self):
        return self.coalgebra_map_failure() is None

    @staticmethod
    def identity(coalg):
        return CoalgebraMap(coalg, coalg, list(coalg.basis))


def _as_diamonds(basis):
    out = []
    for b in basis:
        out.append(b if isinstance(b, Diamond) else Diamond.from_element(b))
    return out


def verify_covering(pi, basis_dom, basis_cod):
    """Check the covering conditions for pi with the given diamond bases.

    Returns (ok, report); on failure the report carries a counterexample."""
    bd = _as_diamonds(basis_dom)
    bc = _as_diamonds(basis_cod)
    report = {
        "domain_basis_size": len(bd),
        "codomain_basis_size": len(bc),
        "counterexample": None,
    }

    def fail(reason, witness=None):
        report["counterexample"] = {"reason": reason, "witness": witness}
        report["is_covering"] = False
        return False, report

    for coalg, basis, name in ((pi.domain, bd, "domain"), (pi.codomain, bc, "codomain")):
        engine = SparseBasis()
        for d in basis:
            if not coalg.contains(d.element):
                raise BasisNotDiamond(f"{name} basis element outside the coalgebra")
            if not engine.add(dict(d.element.terms)):
                raise BasisNotDiamond(f"{name} basis is linearly dependent")
        if engine.dim != coalg.dim:
            raise BasisNotDiamond(f"{name} basis does not span")
        elems = {d.element for d in basis}
        for v in coalg.quiver.vertices:
            if grouplike(coalg.quiver, v) not in elems:
                raise BasisNotDiamond(f"{name} basis must contain every vertex")
        for aid, src, _dst in coalg.quiver.arrows:
            arrow_elem = path_element(coalg.quiver, Path(src, (aid,)))
            if arrow_elem not in elems:
                raise BasisNotDiamond(f"{name} basis must contain every arrow")

    witness = pi.coalgebra_map_failure()
    if witness is not None:
        return fail("not a coalgebra map", witness)

    cod_elems = {d.element for d in bc}
    images = {}
    for d in bd:
        img = pi.apply(d.element)
        if img not in cod_elems:
            return fail("image of a basis diamond is not a basis diamond", str(d.element))
        images[d] = img
    if {i for i in images.values()} != cod_elems:
        return fail("basis image does not cover the codomain basis")

    for i, d1 in enumerate(bd):
        for d2 in bd[i + 1 :]:
            if d1.source == d2.source or d1.sink == d2.sink:
                if images[d1] == images[d2]:
                    return fail(
                        "two diamonds with shared source or sink have equal image",
                        [str(d1.element), str(d2.element)],
                    )
    report["is_covering"] = True
    return True, report


def map_path(morphism, path):
    v = morphism.vertex_map[path.start]
    return Path(v, tuple(morphism.arrow_map[a] for a in path.arrows))


def induced_quotient_covering(coalg, morphism):
    """Push a subcoalgebra along a vertex-gluing quiver morphism; returns the
    image subcoalgebra and the covering map onto it."""
    if morphism.domain != coalg.quiver:
        raise InvalidMorphism("morphism domain must be the ambient quiver")
    if not morphism.is_valid():
        raise InvalidMorphism("not a quiver morphism")
    arrow_imgs = list(morphism.arrow_map.values())
    if len(arrow_imgs) != len(set(arrow_imgs)) or set(arrow_imgs) != set(
        morphism.codomain.arrow_by_id
    ):
        raise InvalidMorphism("morphism must biject arrows (vertex gluing)")
    target = morphism.codomain
    images = []
    for b in coalg.basis:
        terms = {}
        for p, c in b.terms.items():
            q = map_path(morphism, p)
            terms[q] = terms.get(q, ZERO) + c
        images.append(CoElement(target, terms))
    image_coalg = span_subcoalgebra(target, images, validate=False)
    return image_coalg, CoalgebraMap(coalg, image_coalg, images)


class DualAlgebra:
    """A finite-dimensional algebra by structure constants, with distinguished
    orthogonal idempotents (one per grouplike of the dualized coalgebra)."""

    def __init__(self, dim, structure, idempotents, labels=None):
        self.dim = dim
        # structure: dict (i, j) -> dict k -> CycScalar, e_i * e_j = sum_k c e_k
        self.structure = structure
        # idempotents: ordered dict-like list of (label, vector)
        self.idempotents = list(idempotents)
        self.labels = labels or [f"d{i}" for i in range(dim)]

    def multiply(self, u, v):
        out = [ZERO] * self.dim
        for i, a in enumerate(u):
            if a.is_zero():
                continue
            for j, b in enumerate(v):
                if b.is_zero():
                    continue
                for k, c in self.structure.get((i, j), {}).items():
                    out[k] = out[k] + a * b * c
        return out

    def basis_vector(self, i):
        return [ONE if j == i else ZERO for j in range(self.dim)]

    def unit(self):
        out = [ZERO] * self.dim
        for _, vec in self.idempotents:
            for k, c in enumerate(vec):
                out[k] = out[k] + c
        return out

    def left_mult_matrix(self, vec):
        cols = [self.multiply(vec, self.basis_vector(j)) for j in range(self.dim)]
        return [[cols[j][k] for j in range(self.dim)] for k in range(self.dim)]

    def is_associative(self):
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    lhs = self.multiply(
                        self.multiply(self.basis_vector(i), self.basis_vector(j)),
                        self.basis_vector(k),
                    )
                    rhs = self.multiply(
                        self.basis_vector(i),
                        self.multiply(self.basis_vector(j), self.basis_vector(k)),
                    )
                    if any(not (a - b).is_zero() for a, b in zip(lhs, rhs)):
                        return False
        return True

    def is_unital(self):
        one = self.unit()
        for i in range(self.dim):
            b = self.basis_vector(i)
            if self.multiply(one, b) != b or self.multiply(b, one) != b:
                return False
        return True

    def radical_basis(self):
        """Basis of the Jacobson radical (characteristic 0: the radical of the
        trace form of the regular representation)."""
        mats = [self.left_mult_matrix(self.basis_vector(i)) for i in range(self.dim)]
        gram = []
        for i in range(self.dim):
            row = []
            for j in range(self.dim):
                tr = ZERO
                for k in range(self.dim):
                    for l in range(self.dim):
                        tr = tr + mats[i][k][l] * mats[j][l][k]
                row.append(tr)
            gram.append(row)
        return nullspace(gram)

    def radical_chain(self):
        """Radical powers rad >= rad^2 >= ... as lists of vectors."""
        rad = self.radical_basis()
        chain = [rad]
        current = rad
        while current:
            nxt_engine = SparseBasis()
            nxt = []
            for u in current:
                for v in rad:
                    w = self.multiply(u, v)
                    vec = {i: c for i, c in enumerate(w) if not c.is_zero()}
                    if vec and nxt_engine.add(vec):
                        nxt.append(w)
            if not nxt:
                break
            chain.append(nxt)
            current = nxt
        return chain


def dualize(coalg):
    """The dual algebra on the dual of a diamond basis; idempotents are the
    duals of the grouplikes."""
    db = diamond_basis(coalg)
    base = SubCoalgebra(coalg.quiver, [d.element for d in db], validate=False)
    lookup = {pivot: crow for pivot, _, crow in base._engine.rows}
    structure = {}
    for k, d in enumerate(db):
        for (l, r), c in d.element.delta_dict().items():
            cl = lookup.get(l)
            cr = lookup.get(r)
            if cl is None or cr is None:
                continue
            for i, a in cl.items():
                for j, b in cr.items():
                    cell = structure.setdefault((i, j), {})
                    val = cell.get(k, ZERO) + c * a * b
                    if val.is_zero():
                        cell.pop(k, None)
                        if not cell:
                            structure.pop((i, j))
                    else:
                        cell[k] = val
    idempotents = []
    labels = []
    for k, d in enumerate(db):
        if d.element.terms.get(Path(d.source)) is not None and d.source == d.sink:
            vec = [ONE if i == k else ZERO for i in range(len(db))]
            idempotents.append((d.source, vec))
            labels.append(str(d.source))
        else:
            labels.append(f"({d.source}>{d.sink})#{k}")
    return DualAlgebra(len(db), structure, idempotents, labels)


def localize(algebra, idempotent_labels):
    """The corner algebra eAe for e the sum of the chosen vertex idempotents."""
    chosen = list(idempotent_labels)
    if not chosen:
        raise EmptySubset("need at least one idempotent")
    by_label = dict(algebra.idempotents)
    missing = [l for l in chosen if l not in by_label]
    if missing:
        raise UnknownVertex(f"unknown idempotents {missing!r}")
    e = [ZERO] * algebra.dim
    for l in chosen:
        for k, c in enumerate(by_label[l]):
            e[k] = e[k] + c
    engine = SparseBasis()
    basis = []
    for k in range(algebra.dim):
        w = algebra.multiply(algebra.multiply(e, algebra.basis_vector(k)), e)
        vec = {i: c for i, c in enumerate(w) if not c.is_zero()}
        if vec and engine.add(vec, len(basis)):
            basis.append(w)
    dim = len(basis)

    def coords(vec_list):
        vec = {i: c for i, c in enumerate(vec_list) if not c.is_zero()}
        comb = engine.coords(vec)
        if comb is None:
            raise InvalidDescription("product escaped the corner algebra")
        return comb

    structure = {}
    for i in range(dim):
        for j in range(dim):
            prod = algebra.multiply(basis[i], basis[j])
            cell = {k: c for k, c in coords(prod).items() if not c.is_zero()}
            if cell:
                structure[(i, j)] = cell
    idempotents = []
    for l in chosen:
        comb = coords(by_label[l])
        idempotents.append((l, [comb.get(i, ZERO) for i in range(dim)]))
    return DualAlgebra(dim, structure, idempotents)


def gabriel_quiver(algebra):
    """Quiver of an algebra with the given orthogonal idempotents: arrows
    u -> v count dim e_u (rad/rad^2) e_v."""
    chain = algebra.radical_chain()
    rad = chain[0] if chain else []
    rad2 = chain[1] if len(chain) > 1 else []
    labels = [l for l, _ in algebra.idempotents]
    by_label = dict(algebra.idempotents)
    arrows = []
    for u in labels:
        for v in labels:
            engine = SparseBasis()
            for w in rad2:
                engine.add({i: c for i, c in enumerate(w) if not c.is_zero()})
            base_dim = engine.dim
            for r in rad:
                w = algebra.multiply(algebra.multiply(by_label[u], r), by_label[v])
                engine.add({i: c for i, c in enumerate(w) if not c.is_zero()})
            for k in range(engine.dim - base_dim):
                arrows.append((f"r{k}@{u}>{v}", u, v))
    return Quiver(labels, arrows)


def separability_check(pi, capacity=40):
    """Verify the separability element e = sum g* (x)_{D*} g* for a covering:
    u(e) = 1 and e commutes with every dual basis element."""
    ok, _report = verify_covering(pi, diamond_basis(pi.domain), diamond_basis(pi.codomain))
    if not ok:
        raise NotACovering("separability check requires a covering map")
    if pi.domain.dim > capacity:
        raise CapacityExceeded(
            f"domain dimension {pi.domain.dim} exceeds capacity {capacity}"
        )
    cstar = dualize(pi.domain)
    dstar = dualize(pi.codomain)
    dom_db = diamond_basis(pi.domain)
    cod_base = SubCoalgebra(
        pi.codomain.quiver, [d.element for d in diamond_basis(pi.codomain)], validate=False
    )
    d = cstar.dim
    dprime = dstar.dim
    # pi in diamond bases: P[i][j] = j-th codomain coordinate of pi(domain diamond i)
    pmat = []
    for dia in dom_db:
        comb = cod_base._engine.coords(pi.apply(dia.element).terms)
        pmat.append([comb.get(j, ZERO) for j in range(dprime)])
    # generators of the subalgebra image of the dual map: s_j = sum_i P[i][j] c^i
    subgens = [[pmat[i][j] for i in range(d)] for j in range(dprime)]

    def tensor_add(target, vec_left, vec_right, sign=1):
        for k, a in enumerate(vec_left):
            if a.is_zero():
                continue
            for l, b in enumerate(vec_right):
                if b.is_zero():
                    continue
                val = target.get((k, l), ZERO) + a * b * sign
                if val.is_zero():
                    target.pop((k, l), None)
                else:
                    target[(k, l)] = val

    relations = SparseBasis()
    for a in range(d):
        ua = cstar.basis_vector(a)
        for j in range(dprime):
            asj = cstar.multiply(ua, subgens[j])
            sja_right = {}
            for c in range(d):
                uc = cstar.basis_vector(c)
                rel = {}
                tensor_add(rel, asj, uc)
                tensor_add(rel, ua, cstar.multiply(subgens[j], uc), sign=-1)
                if rel:
                    relations.add(rel)
    # e = sum over grouplike duals g* (x) g*
    idem_vecs = [vec for _, vec in cstar.idempotents]
    u_of_e = [ZERO] * d
    for g in idem_vecs:
        prod = cstar.multiply(g, g)
        for k, c in enumerate(prod):
            u_of_e[k] = u_of_e[k] + c
    if u_of_e != cstar.unit():
        return False
    for x in range(d):
        ux = cstar.basis_vector(x)
        diff = {}
        for g in idem_vecs:
            tensor_add(diff, cstar.multiply(ux, g), g)
            tensor_add(diff, g, cstar.multiply(g, ux), sign=-1)
        res, _ = relations.residue(diff)
        if res:
            return False
    return True
