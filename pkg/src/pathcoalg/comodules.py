"""Finite-dimensional right comodules over truncated subcoalgebras.

A comodule is stored by its coaction matrix: rho(m_j) = sum_i m_i (x) c[i][j]
with entries in a fixed SubCoalgebra, satisfying the comatrix identities
Delta(c_ij) = sum_l c_il (x) c_lj and eps(c_ij) = delta_ij.

The module builds the simple / string / diamond / band comodules over the
grid-window coalgebras, computes Hom spaces and endomorphism rings exactly,
decides indecomposability, and settles discreteness of the corepresentation
type.
"""

from __future__ import annotations

from .coalgebra import CoElement, SubCoalgebra, path_element, span_subcoalgebra
from .errors import (
    AmbientMismatch,
    InvalidDescription,
    InvalidSpec,
    NotDiscreteParams,
    RequiresMEqualsN,
    WindowTooSmall,
)
from .hopf import truncate_to_subcoalgebra
from .linalg import SparseBasis, nullspace
from .quiver import Path, grid_vertex_label
from .scalar import ONE, ZERO, cyc


class Comodule:
    """A right comodule given by a coaction matrix over a subcoalgebra."""

    def __init__(self, coalgebra, coaction, labels=None, validate=True):
        self.coalgebra = coalgebra
        self.coaction = [list(row) for row in coaction]
        self.dim = len(self.coaction)
        for row in self.coaction:
            if len(row) != self.dim:
                raise InvalidDescription("coaction matrix must be square")
        self.labels = list(labels) if labels else [f"m{i}" for i in range(self.dim)]
        if validate:
            self._validate()

    def _validate(self):
        c = self.coaction
        for i in range(self.dim):
            for j in range(self.dim):
                entry = c[i][j]
                if not entry.is_zero() and not self.coalgebra.contains(entry):
                    raise InvalidDescription(
                        f"coaction entry ({i},{j}) leaves the coalgebra"
                    )
                eps = entry.counit()
                expected = ONE if i == j else ZERO
                if not (eps - expected).is_zero():
                    raise InvalidDescription(
                        f"counit law fails at entry ({i},{j})"
                    )
                lhs = entry.delta_dict()
                rhs = {}
                for l in range(self.dim):
                    left, right = c[i][l], c[l][j]
                    if left.is_zero() or right.is_zero():
                        continue
                    for p, cp in left.terms.items():
                        for q, cq in right.terms.items():
                            key = (p, q)
                            val = rhs.get(key, ZERO) + cp * cq
                            if val.is_zero():
                                rhs.pop(key, None)
                            else:
                                rhs[key] = val
                if lhs != rhs:
                    raise InvalidDescription(
                        f"comatrix identity fails at entry ({i},{j})"
                    )

    def dimension_vector(self):
        """Composition multiplicities, keyed by grouplike vertex."""
        out = {}
        for i in range(self.dim):
            for p, coeff in self.coaction[i][i].terms.items():
                if p.length == 0:
                    out[p.start] = out.get(p.start, ZERO) + coeff
        return {v: c for v, c in out.items() if not c.is_zero()}

    def to_json(self):
        return {
            "dimension": self.dim,
            "labels": self.labels,
            "coaction": [[str(e) for e in row] for row in self.coaction],
        }

    def __repr__(self):
        return f"Comodule(dim {self.dim})"


def direct_sum(m1, m2):
    _check_ambient(m1, m2)
    d1, d2 = m1.dim, m2.dim
    zero = CoElement(m1.coalgebra.quiver, {})
    c = [[zero] * (d1 + d2) for _ in range(d1 + d2)]
    for i in range(d1):
        for j in range(d1):
            c[i][j] = m1.coaction[i][j]
    for i in range(d2):
        for j in range(d2):
            c[d1 + i][d1 + j] = m2.coaction[i][j]
    labels = [f"l.{x}" for x in m1.labels] + [f"r.{x}" for x in m2.labels]
    return Comodule(m1.coalgebra, c, labels, validate=False)


def coefficient_coalgebra(mod):
    """Span of the coaction entries; closed by the comatrix identity."""
    entries = [e for row in mod.coaction for e in row if not e.is_zero()]
    return span_subcoalgebra(mod.coalgebra.quiver, entries)


def _check_ambient(m1, m2):
    if m1.coalgebra is not m2.coalgebra and m1.coalgebra.quiver != m2.coalgebra.quiver:
        raise AmbientMismatch("comodules over different coalgebras")


class HomSpace:
    """Basis of comodule morphisms M -> N, as dim(N) x dim(M) scalar
    matrices."""

    def __init__(self, source, target, basis):
        self.source = source
        self.target = target
        self.basis = basis

    @property
    def dim(self):
        return len(self.basis)


def _sparse_nullspace(rows, ncols):
    engine = SparseBasis()
    for row in rows:
        if row:
            engine.add(row)
    dense = [
        [vec.get(c, ZERO) for c in range(ncols)] for vec in engine.basis_vectors()
    ]
    if not dense:
        return [
            [ONE if c == f else ZERO for c in range(ncols)] for f in range(ncols)
        ]
    return nullspace(dense)


def hom(m1, m2):
    """All f with rho_N(f(m)) = (f (x) id)(rho_M(m))."""
    _check_ambient(m1, m2)
    dm, dn = m1.dim, m2.dim
    nunk = dn * dm

    def unk(r, c):
        return r * dm + c

    rows = []
    for l in range(dn):
        for j in range(dm):
            per_path = {}
            for k in range(dn):
                for p, coeff in m2.coaction[l][k].terms.items():
                    per_path.setdefault(p, {})
                    _acc(per_path[p], unk(k, j), coeff)
            for i in range(dm):
                for p, coeff in m1.coaction[i][j].terms.items():
                    per_path.setdefault(p, {})
                    _acc(per_path[p], unk(l, i), -coeff)
            for p, row in per_path.items():
                if row:
                    rows.append(row)
    sols = _sparse_nullspace(rows, nunk)
    basis = []
    for vec in sols:
        basis.append([[vec[unk(r, c)] for c in range(dm)] for r in range(dn)])
    return HomSpace(m1, m2, basis)


def _acc(target, key, value):
    new = target.get(key, ZERO) + value
    if new.is_zero():
        target.pop(key, None)
    else:
        target[key] = new


def _mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0])
    out = [[ZERO] * cols for _ in range(rows)]
    for i in range(rows):
        for k in range(inner):
            if a[i][k].is_zero():
                continue
            for j in range(cols):
                if not b[k][j].is_zero():
                    out[i][j] = out[i][j] + a[i][k] * b[k][j]
    return out


def _mat_rank(mat):
    engine = SparseBasis()
    for row in mat:
        engine.add({i: c for i, c in enumerate(row) if not c.is_zero()})
    return engine.dim


def is_indecomposable(mod):
    """True iff End(M) is local, via the trace-form radical (char 0)."""
    end = hom(mod, mod)
    r = end.dim
    if r == 0:
        return False  # zero module
    gram = []
    for i in range(r):
        row = []
        for j in range(r):
            prod = _mat_mul(end.basis[i], end.basis[j])
            tr = ZERO
            for d in range(mod.dim):
                tr = tr + prod[d][d]
            row.append(tr)
        gram.append(row)
    nullity = len(nullspace(gram))
    return r - nullity == 1


def are_isomorphic(m1, m2, attempts=6):
    """Search Hom(M, N) for an invertible element."""
    if m1.dim != m2.dim:
        return False
    hs = hom(m1, m2)
    if not hs.basis:
        return m1.dim == 0
    for f in hs.basis:
        if _mat_rank(f) == m1.dim:
            return True
    # generic combinations with deterministic small weights
    for trial in range(attempts):
        combo = [[ZERO] * m1.dim for _ in range(m1.dim)]
        for idx, f in enumerate(hs.basis):
            w = cyc((trial + 2) ** idx)
            for r in range(m1.dim):
                for c in range(m1.dim):
                    combo[r][c] = combo[r][c] + f[r][c] * w
        if _mat_rank(combo) == m1.dim:
            return True
    return False


# -- socle series ------------------------------------------------------------


def _socle_vectors(mod):
    """Vectors v with rho(v) in M (x) C_0."""
    rows = []
    for i in range(mod.dim):
        per_path = {}
        for j in range(mod.dim):
            for p, coeff in mod.coaction[i][j].terms.items():
                if p.length > 0:
                    per_path.setdefault(p, {})
                    _acc(per_path[p], j, coeff)
        rows.extend(row for row in per_path.values() if row)
    return _sparse_nullspace(rows, mod.dim)


def _quotient_comodule(mod, sub_vectors):
    engine = SparseBasis()
    for v in sub_vectors:
        engine.add({i: c for i, c in enumerate(v) if not c.is_zero()})
    pivots = set(engine.pivots())
    keep = [i for i in range(mod.dim) if i not in pivots]
    # residues of the unit vectors give the projection onto the complement
    proj = []
    for i in range(mod.dim):
        res, _ = engine.residue({i: ONE})
        proj.append(res)
    zero = CoElement(mod.coalgebra.quiver, {})
    c = [[zero] * len(keep) for _ in range(len(keep))]
    for jj, j in enumerate(keep):
        for i in range(mod.dim):
            entry = mod.coaction[i][j]
            if entry.is_zero():
                continue
            for ii, knew in enumerate(keep):
                w = proj[i].get(knew)
                if w is not None and not w.is_zero():
                    c[ii][jj] = c[ii][jj] + entry * w
    labels = [mod.labels[i] for i in keep]
    return Comodule(mod.coalgebra, c, labels, validate=False)


def socle_series_dims(mod):
    """Dimensions of the socle layers, bottom first."""
    dims = []
    current = mod
    while current.dim > 0:
        soc = _socle_vectors(current)
        if not soc:
            raise InvalidDescription("socle vanished on a nonzero comodule")
        dims.append(len(soc))
        if len(soc) == current.dim:
            break
        current = _quotient_comodule(current, soc)
    return dims


def loewy_length(mod):
    return len(socle_series_dims(mod))


def is_uniserial(mod):
    """True iff every socle layer is simple (1-dimensional)."""
    if mod.dim == 0:
        return False
    return all(d == 1 for d in socle_series_dims(mod))


# -- constructions over grid windows -----------------------------------------


class StringSpec:
    """An alternating zig-zag walk: start position, first letter 'x' or 'y',
    number of arrows, and whether the first step ascends (walk starts at a
    valley) or descends (starts at a peak)."""

    def __init__(self, start, first_letter, length, up_first=False):
        self.start = tuple(start)
        self.first_letter = first_letter
        self.length = length
        self.up_first = up_first

    def __repr__(self):
        return (
            f"StringSpec({self.start}, {self.first_letter!r}, "
            f"{self.length}, up_first={self.up_first})"
        )


def _step(letter):
    if letter == "x":
        return (1, 0)
    if letter == "y":
        return (0, 1)
    raise InvalidSpec(f"unknown step letter {letter!r}")


def _grid_arrow(trunc, letter, g):
    label = grid_vertex_label(*g)
    try:
        elem = path_element(trunc.quiver, Path(label, (f"{letter}@{label}",)))
    except InvalidDescription:
        raise WindowTooSmall(f"arrow {letter}@{label} outside the window")
    if not trunc.coalgebra.contains(elem):
        raise WindowTooSmall(f"arrow {letter}@{label} outside the window")
    return elem


def _grid_vertex(trunc, g):
    label = grid_vertex_label(*g)
    try:
        elem = path_element(trunc.quiver, Path(label))
    except InvalidDescription:
        raise WindowTooSmall(f"vertex {label} outside the window")
    if not trunc.coalgebra.contains(elem):
        raise WindowTooSmall(f"vertex {label} outside the window")
    return elem


def build_simple(trunc, i, j):
    g = trunc.params.canon(i, j)
    return Comodule(
        trunc.coalgebra,
        [[_grid_vertex(trunc, g)]],
        labels=[grid_vertex_label(*g)],
    )


def build_string(trunc, spec):
    """The string comodule of an alternating walk.

    Basis: one vector per walk node; each walk arrow u -> w contributes
    m_u (x) arrow to the coaction of the node at w."""
    if spec.length < 1:
        raise InvalidSpec("string needs at least one arrow")
    params = trunc.params
    letter = spec.first_letter
    if letter not in ("x", "y"):
        raise InvalidSpec(f"unknown step letter {letter!r}")
    down = not spec.up_first
    nodes = [params.canon(*spec.start)]
    arrows = []  # (source_node_index, target_node_index, letter, source_pos)
    for _ in range(spec.length):
        cur = nodes[-1]
        di, dj = _step(letter)
        if down:
            nxt = params.canon(cur[0] + di, cur[1] + dj)
            arrows.append((len(nodes) - 1, len(nodes), letter, cur))
        else:
            nxt = params.canon(cur[0] - di, cur[1] - dj)
            arrows.append((len(nodes), len(nodes) - 1, letter, nxt))
        nodes.append(nxt)
        down = not down
        letter = "y" if letter == "x" else "x"
    if len(set(nodes)) != len(nodes):
        raise InvalidSpec("walk revisits a node; use a band instead")
    zero = CoElement(trunc.quiver, {})
    d = len(nodes)
    c = [[zero] * d for _ in range(d)]
    for idx, g in enumerate(nodes):
        c[idx][idx] = _grid_vertex(trunc, g)
    for src, tgt, let, pos in arrows:
        c[src][tgt] = c[src][tgt] + _grid_arrow(trunc, let, pos)
    labels = [grid_vertex_label(*g) for g in nodes]
    return Comodule(trunc.coalgebra, c, labels)


def build_diamond(trunc, i, j):
    """The 4-dimensional comodule with socle at a^i b^j and top at
    a^{i+1} b^{j+1}."""
    params = trunc.params
    g = params.canon(i, j)
    ga = params.canon(g[0] + 1, g[1])
    gb = params.canon(g[0], g[1] + 1)
    gab = params.canon(g[0] + 1, g[1] + 1)
    p_elem = trunc.image_of(g[0], g[1], 1, 1)
    zero = CoElement(trunc.quiver, {})
    c = [[zero] * 4 for _ in range(4)]
    c[0][0] = _grid_vertex(trunc, g)
    c[1][1] = _grid_vertex(trunc, ga)
    c[2][2] = _grid_vertex(trunc, gb)
    c[3][3] = _grid_vertex(trunc, gab)
    c[0][1] = _grid_arrow(trunc, "x", g)
    c[0][2] = _grid_arrow(trunc, "y", g)
    c[0][3] = p_elem
    c[1][3] = _grid_arrow(trunc, "y", ga)
    c[2][3] = _grid_arrow(trunc, "x", gb) * (-params.lam)
    labels = [grid_vertex_label(*v) for v in (g, ga, gb, gab)]
    return Comodule(trunc.coalgebra, c, labels)


def build_band_family(params, length, mus, truncation=None):
    """Band comodules for m = n != 0: the closed zig-zag of the given period
    with the scalar mu on the closing edge."""
    if params.m != params.n or params.m == 0:
        raise RequiresMEqualsN("bands exist only for m = n != 0")
    n = params.n
    if length % n != 0 or length <= 0:
        raise InvalidSpec(f"band period must be a positive multiple of {n}")
    for mu in mus:
        if cyc(mu).is_zero():
            raise InvalidSpec("band parameter mu must be nonzero")
    trunc = truncation or truncate_to_subcoalgebra(params, n)
    # peaks (t, -t); the closing valley uses a^n = b^n
    peaks = [params.canon(t, -t) for t in range(length)]
    valleys = [params.canon(t + 1, -t) for t in range(length)]
    out = []
    for mu in mus:
        mu = cyc(mu)
        zero = CoElement(trunc.quiver, {})
        d = 2 * length
        c = [[zero] * d for _ in range(d)]
        for t in range(length):
            c[t][t] = _grid_vertex(trunc, peaks[t])
            vt = length + t
            c[vt][vt] = _grid_vertex(trunc, valleys[t])
            c[t][vt] = _grid_arrow(trunc, "x", peaks[t])
            nxt = (t + 1) % length
            ya = _grid_arrow(trunc, "y", peaks[nxt])
            if nxt == 0:
                ya = ya * mu
            c[nxt][vt] = c[nxt][vt] + ya
        labels = [f"p{t}" for t in range(length)] + [f"v{t}" for t in range(length)]
        out.append(Comodule(trunc.coalgebra, c, labels))
    return out


# -- enumeration and discreteness --------------------------------------------


def _in_box(g, radius):
    return abs(g[0]) <= radius and abs(g[1]) <= radius


def enumerate_indecomposables(params, radius, max_total_dim, truncation=None):
    """All simples, strings, and diamonds fully supported in the window, up to
    the total-dimension bound, pairwise non-isomorphic."""
    if params.m == params.n and params.m != 0:
        raise NotDiscreteParams("enumeration requires m != n or m = n = 0")
    trunc = truncation or truncate_to_subcoalgebra(params, radius)
    window = set(trunc.window)
    out = []
    seen = set()
    if max_total_dim >= 1:
        for g in sorted(window):
            out.append(("simple", (g,), build_simple(trunc, *g)))
    if max_total_dim >= 4:
        for g in sorted(window):
            corners = (
                g,
                params.canon(g[0] + 1, g[1]),
                params.canon(g[0], g[1] + 1),
                params.canon(g[0] + 1, g[1] + 1),
            )
            if all(v in window for v in corners) and len(set(corners)) == 4:
                out.append(("diamond", (g,), build_diamond(trunc, *g)))
    if max_total_dim >= 2:
        for g in sorted(window):
            for first in ("x", "y"):
                for up_first in (False, True):
                    for length in range(1, max_total_dim):
                        if length + 1 > max_total_dim:
                            break
                        spec = StringSpec(g, first, length, up_first)
                        try:
                            mod = build_string(trunc, spec)
                        except (WindowTooSmall, InvalidSpec):
                            break
                        nodes = frozenset(mod.labels)
                        if not all(
                            _label_in_window(lbl, window) for lbl in mod.labels
                        ):
                            break
                        key = ("string", nodes, _support_key(mod))
                        if key not in seen:
                            seen.add(key)
                            out.append(("string", nodes, mod))
    return [
        {"kind": kind, "support": support, "module": mod}
        for kind, support, mod in out
    ]


def _label_in_window(label, window):
    from .hopf import _parse_grid_label

    return _parse_grid_label(label) in window


def _support_key(mod):
    paths = set()
    for row in mod.coaction:
        for e in row:
            paths.update(e.terms)
    return frozenset(paths)


def decide_discrete(params, band_mus=(1, 2, 3)):
    """Discrete iff m != n or m = n = 0; otherwise returns a band-family
    witness of pairwise hom-orthogonal equal-dimension-vector
    indecomposables."""
    if params.m != params.n or params.m == 0:
        return {"discrete": True, "witness": None}
    mods = build_band_family(params, params.n, list(band_mus))
    pairwise = True
    for i in range(len(mods)):
        for j in range(len(mods)):
            if i != j and hom(mods[i], mods[j]).dim != 0:
                pairwise = False
    witness = {
        "band_parameters": [str(cyc(mu)) for mu in band_mus],
        "dimension": mods[0].dim,
        "dimension_vectors_equal": all(
            m.dimension_vector() == mods[0].dimension_vector() for m in mods
        ),
        "pairwise_hom_orthogonal": pairwise,
        "all_indecomposable": all(is_indecomposable(m) for m in mods),
        "modules": [m.to_json() for m in mods],
    }
    return {"discrete": False, "witness": witness}
