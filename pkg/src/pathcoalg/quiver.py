"""Quiver combinatorics.

Quivers are finite directed multigraphs with labeled vertices and identified
arrows.  This module provides the folded grid quivers attached to the abelian
groups <a, b | ab=ba, a^m=b^n>, star quivers, homogeneity checks, the
Dynkin/Euclidean graph classifier, quotient (vertex-gluing) morphisms, and a
bounded exhaustive search for bipartite non-Dynkin covers.
"""

from __future__ import annotations

import json
from collections import deque

from .errors import (
    Disconnected,
    ForbiddenPair,
    InvalidDescription,
    InvalidPartition,
    ParseError,
    UnknownVertex,
)


class Path:
    """A path in a quiver: a start vertex and a composable arrow id sequence.

    The empty sequence is the trivial path at its start vertex.
    """

    __slots__ = ("start", "arrows")

    def __init__(self, start, arrows=()):
        self.start = start
        self.arrows = tuple(arrows)

    @property
    def length(self):
        return len(self.arrows)

    def source(self):
        return self.start

    def target(self, quiver):
        v = self.start
        for a in self.arrows:
            _, src, dst = quiver.arrow(a)
            v = dst
        return v

    def is_valid(self, quiver):
        if self.start not in quiver.vertex_set:
            return False
        v = self.start
        for a in self.arrows:
            if a not in quiver.arrow_by_id:
                return False
            _, src, dst = quiver.arrow(a)
            if src != v:
                return False
            v = dst
        return True

    def __eq__(self, other):
        if not isinstance(other, Path):
            return NotImplemented
        return self.start == other.start and self.arrows == other.arrows

    def __hash__(self):
        return hash((self.start, self.arrows))

    def __lt__(self, other):
        return (self.length, self.start, self.arrows) < (
            other.length,
            other.start,
            other.arrows,
        )

    def __repr__(self):
        if not self.arrows:
            return f"Path(e_{self.start})"
        return f"Path({self.start}:{'|'.join(self.arrows)})"

    def __str__(self):
        if not self.arrows:
            return f"e_{self.start}"
        return f"({'|'.join(self.arrows)})"


class Quiver:
    """A finite quiver: vertex labels plus arrows (id, source, target)."""

    def __init__(self, vertices, arrows):
        self.vertices = list(vertices)
        self.vertex_set = set(self.vertices)
        if len(self.vertex_set) != len(self.vertices):
            raise InvalidDescription("duplicate vertex labels")
        self.arrows = [tuple(a) for a in arrows]
        self.arrow_by_id = {}
        for aid, src, dst in self.arrows:
            if aid in self.arrow_by_id:
                raise InvalidDescription(f"duplicate arrow id {aid!r}")
            if src not in self.vertex_set or dst not in self.vertex_set:
                raise UnknownVertex(f"arrow {aid!r} has undeclared endpoint")
            self.arrow_by_id[aid] = (aid, src, dst)

    def arrow(self, aid):
        if aid not in self.arrow_by_id:
            raise UnknownVertex(f"unknown arrow id {aid!r}")
        return self.arrow_by_id[aid]

    def out_arrows(self, v):
        return [a for a in self.arrows if a[1] == v]

    def in_arrows(self, v):
        return [a for a in self.arrows if a[2] == v]

    def trivial_path(self, v):
        if v not in self.vertex_set:
            raise UnknownVertex(f"unknown vertex {v!r}")
        return Path(v)

    def paths_up_to(self, max_length):
        """All paths of length <= max_length, shortest first."""
        result = [Path(v) for v in self.vertices]
        frontier = list(result)
        for _ in range(max_length):
            nxt = []
            for p in frontier:
                tail = p.target(self)
                for aid, _, _ in self.out_arrows(tail):
                    nxt.append(Path(p.start, p.arrows + (aid,)))
            result.extend(nxt)
            frontier = nxt
            if not frontier:
                break
        return result

    def induced(self, vertex_subset):
        vs = [v for v in self.vertices if v in vertex_subset]
        missing = set(vertex_subset) - self.vertex_set
        if missing:
            raise UnknownVertex(f"unknown vertices {sorted(missing)!r}")
        keep = set(vs)
        ars = [a for a in self.arrows if a[1] in keep and a[2] in keep]
        return Quiver(vs, ars)

    def undirected_adjacency(self):
        """Neighbor multiset map ignoring orientation (loops excluded)."""
        adj = {v: [] for v in self.vertices}
        for _, src, dst in self.arrows:
            if src != dst:
                adj[src].append(dst)
                adj[dst].append(src)
        return adj

    def is_connected(self):
        if not self.vertices:
            return True
        adj = self.undirected_adjacency()
        seen = {self.vertices[0]}
        todo = deque(seen)
        while todo:
            v = todo.popleft()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == len(self.vertices)

    # -- serialization ------------------------------------------------------

    def to_text(self):
        lines = [f"v {v}" for v in self.vertices]
        lines += [f"a {aid} {src} {dst}" for aid, src, dst in self.arrows]
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text):
        vertices, arrows = [], []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if parts[0] == "v" and len(parts) == 2:
                vertices.append(parts[1])
            elif parts[0] == "a" and len(parts) == 4:
                arrows.append((parts[1], parts[2], parts[3]))
            else:
                raise ParseError(f"bad quiver line {lineno}: {raw!r}")
        return Quiver(vertices, arrows)

    def to_json(self):
        return {"vertices": list(self.vertices), "arrows": [list(a) for a in self.arrows]}

    @staticmethod
    def from_json(data):
        try:
            return Quiver(data["vertices"], [tuple(a) for a in data["arrows"]])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad quiver JSON: {exc}") from exc

    def __repr__(self):
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"

    def __eq__(self, other):
        if not isinstance(other, Quiver):
            return NotImplemented
        return set(self.vertices) == set(other.vertices) and set(self.arrows) == set(
            other.arrows
        )


class QuiverMorphism:
    """A quiver map: compatible vertex and arrow assignments."""

    def __init__(self, domain, codomain, vertex_map, arrow_map):
        self.domain = domain
        self.codomain = codomain
        self.vertex_map = dict(vertex_map)
        self.arrow_map = dict(arrow_map)

    def is_valid(self):
        for v in self.domain.vertices:
            if self.vertex_map.get(v) not in self.codomain.vertex_set:
                return False
        for aid, src, dst in self.domain.arrows:
            img = self.arrow_map.get(aid)
            if img not in self.codomain.arrow_by_id:
                return False
            _, isrc, idst = self.codomain.arrow(img)
            if isrc != self.vertex_map[src] or idst != self.vertex_map[dst]:
                return False
        return True

    def to_json(self):
        return {"vertex_map": dict(self.vertex_map), "arrow_map": dict(self.arrow_map)}


# -- grid quivers -----------------------------------------------------------


def group_canonical_pair(m, n, i, j):
    """Canonical exponent pair for a^i b^j in <a, b | ab=ba, a^m=b^n>."""
    if m < 0 or (m == 0 and n < 0):
        m, n = -m, -n
    if m > 0:
        k = i // m
        return (i - k * m, j + k * n)
    if n > 0:
        k = j // n
        return (i, j - k * n)
    return (i, j)


def grid_vertex_label(i, j):
    return f"a{i}b{j}"


def grid_quiver(m, n, radius):
    """The finite window of the folded grid quiver: canonical vertices a^i b^j
    with |i|, |j| <= radius, an a-arrow and a b-arrow out of each vertex when
    the target stays in the window."""
    if (m, n) in ((1, 1), (-1, -1)):
        raise ForbiddenPair("(m, n) = +/-(1, 1) has no grid quiver")
    if radius < 0:
        raise InvalidDescription("radius must be nonnegative")
    coords = []
    for i in range(-radius, radius + 1):
        for j in range(-radius, radius + 1):
            if group_canonical_pair(m, n, i, j) == (i, j):
                coords.append((i, j))
    coord_set = set(coords)
    vertices = [grid_vertex_label(i, j) for i, j in coords]
    arrows = []
    for i, j in coords:
        v = grid_vertex_label(i, j)
        tx = group_canonical_pair(m, n, i + 1, j)
        if tx in coord_set:
            arrows.append((f"x@{v}", v, grid_vertex_label(*tx)))
        ty = group_canonical_pair(m, n, i, j + 1)
        if ty in coord_set:
            arrows.append((f"y@{v}", v, grid_vertex_label(*ty)))
    return Quiver(vertices, arrows)


# -- stars and homogeneity --------------------------------------------------


def star(quiver, v):
    """Subquiver on v, its neighbors, and all arrows incident to v."""
    if v not in quiver.vertex_set:
        raise UnknownVertex(f"unknown vertex {v!r}")
    incident = [a for a in quiver.arrows if a[1] == v or a[2] == v]
    verts = [v] + sorted({w for _, s, t in incident for w in (s, t) if w != v})
    return Quiver(verts, incident)


def _star_signature(quiver, v):
    out = {t for _, s, t in quiver.arrows if s == v and t != v}
    inn = {s for _, s, t in quiver.arrows if t == v and s != v}
    loops = sum(1 for _, s, t in quiver.arrows if s == v and t == v)
    return len(out), len(inn), loops


def _stars_isomorphic(s1, c1, s2, c2):
    """Digraph isomorphism of two star quivers fixing center -> center.

    Returns a vertex map or None.  Arrow multiplicities must match.
    """

    def profile(q, center, w):
        to_w = sum(1 for _, s, t in q.arrows if s == center and t == w)
        from_w = sum(1 for _, s, t in q.arrows if s == w and t == center)
        return (to_w, from_w)

    n1 = [w for w in s1.vertices if w != c1]
    n2 = [w for w in s2.vertices if w != c2]
    if len(n1) != len(n2):
        return None
    if sum(1 for _, s, t in s1.arrows if s == t) != sum(
        1 for _, s, t in s2.arrows if s == t
    ):
        return None
    # match neighbors by (in, out) multiplicity profile
    by_profile = {}
    for w in n2:
        by_profile.setdefault(profile(s2, c2, w), []).append(w)
    mapping = {c1: c2}
    used = set()

    def assign(idx):
        if idx == len(n1):
            return True
        w = n1[idx]
        for cand in by_profile.get(profile(s1, c1, w), []):
            if cand not in used:
                used.add(cand)
                mapping[w] = cand
                if assign(idx + 1):
                    return True
                used.discard(cand)
                del mapping[w]
        return False

    return dict(mapping) if assign(0) else None


def check_homogeneous(quiver, vertices=None):
    """Report whether every vertex looks alike: same out/in/loop counts and
    pairwise isomorphic stars.  An optional vertex subset restricts which
    vertices are compared; their stars are still taken in the full quiver."""
    checked = list(quiver.vertices) if vertices is None else [
        v for v in quiver.vertices if v in set(vertices)
    ]
    if vertices is not None and len(checked) != len(set(vertices)):
        raise UnknownVertex("vertex restriction contains unknown vertices")
    if not checked:
        return {
            "out_degree": 0,
            "in_degree": 0,
            "loops": 0,
            "is_homogeneous": True,
            "star_iso_witnesses": {},
        }
    sigs = {v: _star_signature(quiver, v) for v in checked}
    uniform = len(set(sigs.values())) == 1
    base = checked[0]
    base_star = star(quiver, base)
    witnesses = {}
    all_iso = True
    for v in checked:
        if not uniform:
            witnesses[v] = None
            all_iso = False
            continue
        w = _stars_isomorphic(base_star, base, star(quiver, v), v)
        witnesses[v] = w
        if w is None:
            all_iso = False
    homogeneous = uniform and all_iso
    out_d, in_d, loops = sigs[base]
    return {
        "out_degree": out_d if homogeneous else None,
        "in_degree": in_d if homogeneous else None,
        "loops": loops if homogeneous else None,
        "is_homogeneous": homogeneous,
        "star_iso_witnesses": witnesses,
        "per_vertex": {v: {"out": s[0], "in": s[1], "loops": s[2]} for v, s in sigs.items()},
    }


# -- Dynkin / Euclidean classification --------------------------------------


class GraphClass:
    """Underlying-graph type: Dynkin A/D/E, extended (Euclidean) type, or Other."""

    __slots__ = ("kind", "family", "index")

    def __init__(self, kind, family=None, index=None):
        self.kind = kind  # "Dynkin" | "Euclidean" | "Other"
        self.family = family
        self.index = index

    def __eq__(self, other):
        if not isinstance(other, GraphClass):
            return NotImplemented
        return (self.kind, self.family, self.index) == (
            other.kind,
            other.family,
            other.index,
        )

    def __hash__(self):
        return hash((self.kind, self.family, self.index))

    def __str__(self):
        if self.kind == "Other":
            return "Other"
        tilde = "~" if self.kind == "Euclidean" else ""
        return f"{self.family}{tilde}{self.index}"

    __repr__ = __str__

    @property
    def is_dynkin(self):
        return self.kind == "Dynkin"


OTHER = GraphClass("Other")


def _arm_lengths(adj, center):
    """Lengths of the simple arms leaving a branch vertex of a tree."""
    arms = []
    for first in adj[center]:
        length = 1
        prev, cur = center, first
        while len(adj[cur]) == 2:
            nxt = [w for w in adj[cur] if w != prev]
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    return sorted(arms)


def graph_class(quiver):
    """Classify the underlying multigraph (orientation ignored)."""
    if not quiver.is_connected():
        raise Disconnected("graph classification needs a connected quiver")
    nv = len(quiver.vertices)
    if nv == 0:
        raise Disconnected("empty quiver")
    if any(s == t for _, s, t in quiver.arrows):
        return OTHER
    edges = [(s, t) for _, s, t in quiver.arrows]
    ne = len(edges)
    # parallel edges
    pair_counts = {}
    for s, t in edges:
        key = frozenset((s, t))
        pair_counts[key] = pair_counts.get(key, 0) + 1
    if any(c > 1 for c in pair_counts.values()):
        if nv == 2 and ne == 2:
            return GraphClass("Euclidean", "A", 1)
        return OTHER
    adj = quiver.undirected_adjacency()
    degrees = {v: len(adj[v]) for v in quiver.vertices}
    if ne == nv:
        # connected with |E| = |V| and no multi-edges: a single cycle iff 2-regular
        if all(d == 2 for d in degrees.values()):
            return GraphClass("Euclidean", "A", nv - 1)
        return OTHER
    if ne != nv - 1:
        return OTHER
    # tree
    branch = [v for v in quiver.vertices if degrees[v] >= 3]
    if not branch:
        return GraphClass("Dynkin", "A", nv)
    if len(branch) == 1:
        c = branch[0]
        arms = _arm_lengths(adj, c)
        if degrees[c] == 4:
            return GraphClass("Euclidean", "D", 4) if arms == [1, 1, 1, 1] else OTHER
        if degrees[c] > 4:
            return OTHER
        p, q, r = arms
        if p == 1 and q == 1:
            return GraphClass("Dynkin", "D", nv)
        if arms == [2, 2, 2]:
            return GraphClass("Euclidean", "E", 6)
        if arms == [1, 2, 2]:
            return GraphClass("Dynkin", "E", 6)
        if arms == [1, 2, 3]:
            return GraphClass("Dynkin", "E", 7)
        if arms == [1, 3, 3]:
            return GraphClass("Euclidean", "E", 7)
        if arms == [1, 2, 4]:
            return GraphClass("Dynkin", "E", 8)
        if arms == [1, 2, 5]:
            return GraphClass("Euclidean", "E", 8)
        return OTHER
    if len(branch) == 2:
        b1, b2 = branch
        if degrees[b1] == degrees[b2] == 3:
            # double fork: both branch vertices carry two leaves plus the
            # connecting path
            leaves1 = sum(1 for w in adj[b1] if degrees[w] == 1)
            leaves2 = sum(1 for w in adj[b2] if degrees[w] == 1)
            if leaves1 == 2 and leaves2 == 2:
                return GraphClass("Euclidean", "D", nv - 1)
        return OTHER
    return OTHER


# -- quotients --------------------------------------------------------------


def quotient(quiver, partition):
    """Glue the vertices inside each partition block; arrows are kept with
    multiplicity.  Returns (quotient quiver, canonical morphism)."""
    blocks = [sorted(set(block)) for block in partition]
    flat = [v for block in blocks for v in block]
    if len(flat) != len(set(flat)):
        raise InvalidPartition("partition blocks overlap")
    if set(flat) != quiver.vertex_set:
        raise InvalidPartition("partition must cover the vertices exactly")
    labels = {}
    new_vertices = []
    for block in blocks:
        label = block[0] if len(block) == 1 else "+".join(str(v) for v in block)
        new_vertices.append(label)
        for v in block:
            labels[v] = label
    new_arrows = [(aid, labels[src], labels[dst]) for aid, src, dst in quiver.arrows]
    q = Quiver(new_vertices, new_arrows)
    morphism = QuiverMorphism(quiver, q, labels, {aid: aid for aid, _, _ in quiver.arrows})
    return q, morphism


# -- bipartite non-Dynkin covers --------------------------------------------


def _is_nondynkin_bipartite(vert_images, vert_side, cover_arrows):
    """Classify the partial cover's underlying graph; loops are impossible by
    construction (sources and sinks are disjoint)."""
    pair_seen = set()
    for _, u, w in cover_arrows:
        key = (u, w)
        if key in pair_seen:
            return True  # parallel edge: contains a Kronecker subgraph
        pair_seen.add(key)
    nv, ne = len(vert_images), len(cover_arrows)
    if ne >= nv:
        return True  # connected with a cycle
    q = Quiver(
        list(vert_images),
        [(f"c{i}", u, w) for i, (_, u, w) in enumerate(cover_arrows)],
    )
    return not graph_class(q).is_dynkin


def find_nondynkin_cover(qtarget, size_bound):
    """Search for a connected bipartite quiver with non-Dynkin underlying graph,
    at most size_bound vertices, and a vertex-gluing morphism onto a subquiver
    of qtarget (arrows map injectively).  Returns (Quiver, QuiverMorphism) or
    None; the search is exhaustive up to the bound."""
    target_arrows = sorted(qtarget.arrows)
    if not target_arrows:
        return None

    # state: tuple of cover arrows (target_arrow_id, src_idx, dst_idx) plus the
    # image vertex of every cover vertex index; sides: even trick not needed --
    # a vertex is a source or sink by which ends it appears on.
    def canonical(state_arrows, images):
        # relabel vertices by first appearance in the sorted arrow list
        order = {}
        out = []
        for aid, u, w in sorted(state_arrows):
            for v in (u, w):
                if v not in order:
                    order[v] = len(order)
            out.append((aid, order[u], order[w]))
        img = tuple(images[v] for v in sorted(order, key=order.get))
        return (tuple(out), img)

    start_states = []
    for aid, src, dst in target_arrows:
        start_states.append(((aid, 0, 1), {0: src, 1: dst}, {0: "src", 1: "dst"}))

    queue = deque()
    seen = set()
    for arrow, images, sides in start_states:
        state = ((arrow,), tuple(sorted(images.items())), tuple(sorted(sides.items())))
        key = canonical([arrow], images)
        if key not in seen:
            seen.add(key)
            queue.append(state)

    def build_result(cover_arrows, images):
        verts = [f"v{i}" for i in sorted(images)]
        ars = [(f"{aid}#{i}", f"v{u}", f"v{w}") for i, (aid, u, w) in enumerate(cover_arrows)]
        cover = Quiver(verts, ars)
        vmap = {f"v{i}": images[i] for i in images}
        amap = {f"{aid}#{i}": aid for i, (aid, u, w) in enumerate(cover_arrows)}
        return cover, QuiverMorphism(cover, qtarget, vmap, amap)

    while queue:
        cover_arrows, images_t, sides_t = queue.popleft()
        images = dict(images_t)
        sides = dict(sides_t)
        if _is_nondynkin_bipartite(images, sides, cover_arrows):
            return build_result(list(cover_arrows), images)
        used = {aid for aid, _, _ in cover_arrows}
        next_vertex = max(images) + 1
        for aid, src, dst in target_arrows:
            if aid in used:
                continue
            # attach at an existing source-side vertex whose image is src
            src_hosts = [v for v in images if images[v] == src and sides[v] == "src"]
            dst_hosts = [v for v in images if images[v] == dst and sides[v] == "dst"]
            candidates = []
            for u in src_hosts:
                for w in dst_hosts:
                    candidates.append((u, w, None))
                if len(images) < size_bound:
                    candidates.append((u, next_vertex, "dst"))
            for w in dst_hosts:
                if len(images) < size_bound:
                    candidates.append((next_vertex, w, "src"))
            for u, w, new_side in candidates:
                new_images = dict(images)
                new_sides = dict(sides)
                if new_side == "dst":
                    new_images[w] = dst
                    new_sides[w] = "dst"
                elif new_side == "src":
                    new_images[u] = src
                    new_sides[u] = "src"
                new_arrows = tuple(sorted(cover_arrows + ((aid, u, w),)))
                key = canonical(list(new_arrows), new_images)
                if key in seen:
                    continue
                seen.add(key)
                queue.append(
                    (
                        new_arrows,
                        tuple(sorted(new_images.items())),
                        tuple(sorted(new_sides.items())),
                    )
                )
    return None


# -- link components of the grouplike graph ---------------------------------


def classify_link_component(m, n, num_generators, cyclic_order=None):
    """Shape of one connected component of the arrow-link structure over the
    grouplike group: (1) single vertex, (2) oriented cycle, (3) infinite line,
    (4) folded grid quiver."""
    if num_generators == 0:
        if cyclic_order not in (None, 1):
            raise InvalidDescription("no generators means a trivial group")
        return 1
    if num_generators == 1:
        if cyclic_order is None or cyclic_order == 0:
            return 3
        if cyclic_order < 1:
            raise InvalidDescription("cyclic order must be positive or None")
        return 2
    if num_generators == 2:
        if (m, n) in ((1, 1), (-1, -1)):
            raise InvalidDescription("(m, n) = +/-(1, 1) is excluded")
        return 4
    raise InvalidDescription("num_generators must be 0, 1, or 2")


def quiver_to_json_str(quiver):
    return json.dumps(quiver.to_json(), sort_keys=True)
