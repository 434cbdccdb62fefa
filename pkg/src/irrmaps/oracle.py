"""Ground-truth map enumeration by gluing labeled polygons.

A map with n labeled faces of degrees 2*l_1, ..., 2*l_n is encoded by a
perfect matching (the gluing) on the sides of n labeled polygons:

  * sides are darts 0..S-1, polygon i contributing 2*l_i consecutive ones;
  * phi advances one step counterclockwise along a polygon boundary;
  * alpha is the gluing involution (matched sides form an edge);
  * sigma = phi o alpha rotates darts around their tail vertex.

Vertices are sigma-orbits, faces are the polygons, and the genus comes from
Euler's formula V - E + F = 2 - 2g.  Summing accepted matchings and dividing
by prod(2*l_i) yields the automorphism-weighted count sum_m 1/|Aut(m)| over
face-labeled maps: side labelings of a fixed labeled map form a free orbit
space of size prod(2*l_i)/|Aut(m)|, because an orientation-preserving
automorphism fixing an oriented edge of a connected map is the identity.

The search prunes branches only on provably monotone grounds:

  * a sigma-chain closing at length one is a finished degree-1 vertex;
  * closed vertices only accumulate, and bounds on how many more chains can
    still close cap the final vertex count on both sides of the Euler
    target;
  * gluing two sides on distinct boundary circles of one connected
    component creates exactly one handle (oriented gluings), so the handle
    budget of the target genus prunes hard, especially for genus 0;
  * a component whose boundary is fully glued while others remain can never
    connect.

Essential irreducibility of a higher-genus map is decided on finite balls
of its universal cover, developed face by face around a lift of each
vertex: the rotation around a cover vertex is zipped shut exactly when it
matches the full base rotation, so every vertex within the requested radius
of the base lift ends up with a complete star and complete incident faces.
A simple cycle of length at most 2b through the base lift stays within
distance b of it, so radius b suffices to test both the length bound and
the bounding-face condition.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .families import ConsistencyError

DEFAULT_GUARD_SIDES = 18
COVER_FACE_GUARD = 200000

#: below this many sides a parallel run is not worth the process spawn
PARALLEL_THRESHOLD_SIDES = 14


class SizeError(ValueError):
    """The requested enumeration exceeds the configured desk-scale guard."""


class OracleError(ValueError):
    """Inadmissible oracle request."""


@dataclass(frozen=True)
class GluingSpec:
    """What to enumerate: genus, face half-degrees, and the constraint."""

    genus: int
    degrees: tuple[int, ...]
    b: int = 0
    allow_degree_one: bool = False
    constraint: str = "irreducible"  # or "girth": only the cycle-length bound
    guard_sides: int = DEFAULT_GUARD_SIDES

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(self.degrees))

    @property
    def total_sides(self) -> int:
        return sum(2 * l for l in self.degrees)

    def validate(self) -> None:
        if self.genus < 0:
            raise OracleError("genus must be nonnegative")
        if self.b < 0:
            raise OracleError("b must be nonnegative")
        if not self.degrees or any(l < 1 for l in self.degrees):
            raise OracleError("face half-degrees must be positive")
        if self.genus == 0 and len(self.degrees) < 3:
            raise OracleError("planar counts need at least 3 faces")
        if self.constraint == "irreducible":
            if any(l < max(self.b, 1) for l in self.degrees):
                raise OracleError("half-degrees must be at least max(b, 1)")
        elif self.constraint == "girth":
            if self.b < 1:
                raise OracleError("girth mode needs b >= 1")
            if any(l < self.b for l in self.degrees):
                raise OracleError("girth mode needs half-degrees at least b")
        else:
            raise OracleError(f"unknown constraint {self.constraint!r}")
        if self.total_sides > self.guard_sides:
            raise SizeError(
                f"{self.total_sides} sides exceed the guard of {self.guard_sides}")


# ============================================================
# Plain matching enumeration (no pruning)
# ============================================================


def enumerate_matchings(degrees, visitor=None,
                        guard_sides: int = DEFAULT_GUARD_SIDES) -> int:
    """Visit every perfect matching of the polygon sides exactly once.

    Canonical order: repeatedly pair the smallest unmatched side with each
    larger unmatched side.  Returns the number of matchings visited; if
    ``visitor`` is given it is called with each matching (tuple of pairs).
    """
    S = sum(2 * l for l in degrees)
    if S % 2:
        raise OracleError("odd number of sides")
    if S > guard_sides:
        raise SizeError(f"{S} sides exceed the guard of {guard_sides}")
    partner = [-1] * S
    pairs: list[tuple[int, int]] = []
    count = 0

    def rec(lo: int):
        nonlocal count
        while lo < S and partner[lo] != -1:
            lo += 1
        if lo >= S:
            count += 1
            if visitor is not None:
                visitor(tuple(pairs))
            return
        for c in range(lo + 1, S):
            if partner[c] != -1:
                continue
            partner[lo] = c
            partner[c] = lo
            pairs.append((lo, c))
            rec(lo + 1)
            pairs.pop()
            partner[lo] = -1
            partner[c] = -1

    rec(0)
    return count


# ============================================================
# Assembled maps
# ============================================================


class HalfEdgeMap:
    """A polygon gluing assembled into a rotation system."""

    def __init__(self, degrees, matching):
        degrees = tuple(degrees)
        S = sum(2 * l for l in degrees)
        nxt = [0] * S
        poly_of = [0] * S
        base = 0
        for i, l in enumerate(degrees):
            k = 2 * l
            for j in range(k):
                nxt[base + j] = base + (j + 1) % k
                poly_of[base + j] = i
            base += k
        if matching and isinstance(matching[0], (list, tuple)):
            partner = [-1] * S
            for a, c in matching:
                partner[a] = c
                partner[c] = a
        else:
            partner = list(matching)
        if len(partner) != S or any(p < 0 for p in partner):
            raise OracleError("matching is not a perfect matching of the sides")
        self.degrees = degrees
        self.S = S
        self.nxt = nxt
        self.prv = [0] * S
        for s in range(S):
            self.prv[nxt[s]] = s
        self.poly_of = poly_of
        self.partner = partner

        # vertices = orbits of sigma = phi o alpha
        vertex_of = [-1] * S
        vertices: list[tuple[int, ...]] = []
        for s in range(S):
            if vertex_of[s] != -1:
                continue
            orbit = []
            cur = s
            while vertex_of[cur] == -1:
                vertex_of[cur] = len(vertices)
                orbit.append(cur)
                cur = nxt[partner[cur]]
            vertices.append(tuple(orbit))
        self.vertices = vertices
        self.vertex_of = vertex_of

        # edges: one id per alpha-orbit
        edge_of = [-1] * S
        nedges = 0
        for s in range(S):
            if edge_of[s] == -1:
                edge_of[s] = nedges
                edge_of[partner[s]] = nedges
                nedges += 1
        self.edge_of = edge_of
        self.nedges = nedges

        chi = len(vertices) - nedges + len(degrees)
        if chi % 2:
            raise ConsistencyError("odd Euler characteristic from an oriented gluing")
        self.genus = (2 - chi) // 2

        offsets = [sum(2 * l for l in degrees[:i]) for i in range(len(degrees))]
        seen = {0}
        stack = [0]
        while stack:
            p = stack.pop()
            for j in range(2 * degrees[p]):
                q = poly_of[partner[offsets[p] + j]]
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        self.connected = len(seen) == len(degrees)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def vertex_degrees(self) -> list[int]:
        return [len(o) for o in self.vertices]

    def min_degree(self) -> int:
        return min(self.vertex_degrees())

    def cycle_graph(self):
        """Adjacency view: (num vertices, adj) with adj[v] = [(w, edge id)]."""
        adj = [[] for _ in self.vertices]
        for s in range(self.S):
            if s < self.partner[s]:
                u = self.vertex_of[s]
                w = self.vertex_of[self.partner[s]]
                e = self.edge_of[s]
                adj[u].append((w, e))
                if w != u:
                    adj[w].append((u, e))
        return len(self.vertices), adj

    def face_contours(self) -> list[tuple[int, frozenset | None]]:
        """(degree, edge set) per face; None when the contour repeats an edge."""
        out = []
        base = 0
        for l in self.degrees:
            k = 2 * l
            ids = [self.edge_of[base + j] for j in range(k)]
            out.append((k, frozenset(ids) if len(set(ids)) == k else None))
            base += k
        return out


def assemble_map(spec: GluingSpec, matching) -> HalfEdgeMap | None:
    """Assemble a matching; reject (None) if disconnected or the wrong genus."""
    hmap = HalfEdgeMap(spec.degrees, matching)
    if not hmap.connected or hmap.genus != spec.genus:
        return None
    return hmap


# ============================================================
# Simple cycle enumeration
# ============================================================


def simple_cycles_up_to(graph, L: int, through: int | None = None) -> list[frozenset]:
    """All vertex-simple cycles of edge-length <= L, as edge-id sets.

    ``graph`` is a HalfEdgeMap, a CoverBall, or a (num vertices, adjacency)
    pair as produced by ``cycle_graph``.  A simple cycle is determined by
    its edge set, so each one is reported once regardless of traversal
    direction or starting point.  ``through`` restricts the search to
    cycles passing through the given vertex.
    """
    if hasattr(graph, "cycle_graph"):
        graph = graph.cycle_graph()
    nv, adj = graph
    if L < 1 or nv == 0:
        return []
    found: set[frozenset] = set()
    starts = [through] if through is not None else range(nv)

    dist = None
    if through is not None:
        # lower bound on the edges needed to come back: prune far excursions
        dist = [L + 1] * nv
        dist[through] = 0
        queue = deque([through])
        while queue:
            u = queue.popleft()
            if dist[u] >= L:
                continue
            for (w, _) in adj[u]:
                if dist[w] > dist[u] + 1:
                    dist[w] = dist[u] + 1
                    queue.append(w)

    for s in starts:
        on_path = [False] * nv
        on_path[s] = True
        path_edges: list[int] = []
        used: set[int] = set()

        def dfs(u: int, depth: int):
            for (w, eid) in adj[u]:
                if eid in used:
                    continue
                if w == s:
                    # closing edge; loops (u == s, depth 0) count as 1-cycles
                    found.add(frozenset(path_edges + [eid]))
                    continue
                if depth + 1 >= L or on_path[w]:
                    continue
                if dist is not None and depth + 1 + dist[w] > L:
                    continue
                if through is None and w < s:
                    continue  # canonical: each cycle is rooted at its least vertex
                on_path[w] = True
                used.add(eid)
                path_edges.append(eid)
                dfs(w, depth + 1)
                path_edges.pop()
                used.discard(eid)
                on_path[w] = False

        dfs(s, 0)
    return sorted(found, key=lambda f: (len(f), sorted(f)))


def _cycles_ok(cycles, two_b: int, contours: set, girth_only: bool) -> bool:
    for cyc in cycles:
        k = len(cyc)
        if k < two_b:
            return False
        if k == two_b and not girth_only and cyc not in contours:
            return False
    return True


def check_irreducible(hmap: HalfEdgeMap, b: int, girth_only: bool = False) -> bool:
    """Essential 2b-irreducibility (or just essential girth >= 2b).

    Planar maps are checked directly: no simple cycle shorter than 2b, and
    every simple 2b-cycle equals the contour of a face of degree 2b (edge-set
    equality; a contour that repeats an edge is not a simple cycle and cannot
    certify).  For genus >= 1 the same two tests run on radius-b balls of the
    universal cover around a lift of every vertex; a cycle of length <= 2b
    through the base lift stays within distance b, so the ball decides it.
    With ``girth_only`` the bounding-face condition is skipped.
    """
    if b == 0:
        return True
    two_b = 2 * b
    if hmap.genus == 0:
        cycles = simple_cycles_up_to(hmap.cycle_graph(), two_b)
        contours = {c for (deg, c) in hmap.face_contours()
                    if deg == two_b and c is not None}
        return _cycles_ok(cycles, two_b, contours, girth_only)
    for v in range(hmap.num_vertices):
        if len(hmap.vertices[v]) < 2:
            continue  # no cycle passes through a degree-1 vertex
        # completeness within distance b-1 suffices: every edge of a cycle of
        # length <= 2b through the lift has an endpoint within distance b-1,
        # and the bounding face (if any) is incident to such a vertex too.
        ball = CoverBall(hmap, v, b - 1)
        cycles = simple_cycles_up_to(ball.cycle_graph(), two_b, through=ball.base_lift)
        contours = {c for (deg, c) in ball.face_contours()
                    if deg == two_b and c is not None}
        if not _cycles_ok(cycles, two_b, contours, girth_only):
            return False
    return True


# ============================================================
# Universal-cover balls
# ============================================================


class CoverBall:
    """A simply connected ball of the universal cover of a genus >= 1 map.

    Built by attaching lifts of base faces along the boundary.  Cover darts
    live in a union-find: when two growth fronts wrap around a vertex they
    may have created two lifts of one cover face, and the rotation-closing
    gluing (zip) then forces a dart identification, which propagates around
    the face cycles and through existing gluings.  All zips and
    identifications are facts of the cover, so running them to a fixpoint is
    order-independent.  On return, every cover vertex within graph distance
    ``radius`` of the base lift is complete (full rotation, all incident
    face lifts present).
    """

    def __init__(self, base: HalfEdgeMap, base_vertex: int, radius: int,
                 max_faces: int = COVER_FACE_GUARD):
        if radius < 0:
            raise OracleError("radius must be nonnegative")
        if base.genus < 1:
            raise OracleError("cover balls are for genus >= 1 maps")
        self.base = base
        self.radius = radius
        self.max_faces = max_faces
        self._base_deg = [len(base.vertices[base.vertex_of[s]]) for s in range(base.S)]

        self.proj: list[int] = []
        self.cnxt: list[int] = []
        self.cprv: list[int] = []
        self.part: list[int] = []   # alpha on class representatives, -1 if unglued
        self.rep: list[int] = []    # union-find parent
        self.nfaces_created = 0

        self._seed = self._new_face_over(base.vertices[base_vertex][0])
        self._develop()
        self._finalize()

    # ----- union-find -----

    def _find(self, d: int) -> int:
        r = self.rep
        while r[d] != d:
            r[d] = r[r[d]]
            d = r[d]
        return d

    # ----- construction -----

    def _new_face_over(self, anchor_side: int) -> int:
        """Create the lift of the base polygon containing anchor_side."""
        if self.nfaces_created >= self.max_faces:
            raise SizeError("cover ball exceeded the face guard")
        self.nfaces_created += 1
        base = self.base
        k = 2 * base.degrees[base.poly_of[anchor_side]]
        first = len(self.proj)
        side = anchor_side
        for j in range(k):
            self.proj.append(side)
            self.cnxt.append(first + (j + 1) % k)
            self.cprv.append(first + (j - 1) % k)
            self.part.append(-1)
            self.rep.append(first + j)
            side = base.nxt[side]
        return first

    def _glue(self, x: int, y: int) -> None:
        """Record alpha(x) = y, identifying darts when partners collide."""
        self._force([("glue", x, y)])

    def _identify(self, x: int, y: int) -> None:
        self._force([("ident", x, y)])

    def _force(self, ops) -> None:
        queue = list(ops)
        while queue:
            op, x, y = queue.pop()
            x, y = self._find(x), self._find(y)
            if op == "glue":
                if x == y:
                    raise ConsistencyError("cover dart glued to itself")
                px, py = self.part[x], self.part[y]
                if px == -1 and py == -1:
                    if self.base.partner[self.proj[x]] != self.proj[y]:
                        raise ConsistencyError(
                            "cover gluing does not project to a base edge")
                    self.part[x] = y
                    self.part[y] = x
                elif px != -1:
                    queue.append(("ident", y, px))
                else:
                    queue.append(("ident", x, py))
            else:  # ident
                if x == y:
                    continue
                if self.proj[x] != self.proj[y]:
                    raise ConsistencyError("identified darts project differently")
                self.rep[y] = x
                py = self.part[y]
                if py != -1:
                    py = self._find(py)
                    px = self.part[x]
                    if px == -1:
                        self.part[x] = py
                        self.part[py] = x
                    else:
                        queue.append(("ident", self._find(px), py))
                # identifying one dart identifies the whole face lift
                queue.append(("ident", self._find(self.cnxt[x]),
                              self._find(self.cnxt[y])))

    def _classes(self) -> list[int]:
        return [d for d in range(len(self.proj)) if self._find(d) == d]

    def _sigma(self, x: int) -> int:
        """sigma on classes where defined (alpha glued), else -1."""
        p = self.part[x]
        if p == -1:
            return -1
        return self._find(self.cnxt[self._find(p)])

    def _chains(self):
        """Maximal sigma-paths on classes: list of (darts, closed_flag)."""
        classes = self._classes()
        succ = {x: self._sigma(x) for x in classes}
        pred: dict[int, int] = {}
        for x, s in succ.items():
            if s != -1:
                if s in pred:
                    raise ConsistencyError("cover rotation branches")
                pred[s] = x
        chains = []
        seen = set()
        for x in classes:
            if x in seen or x in pred:
                continue
            # open chain starting at x
            run = [x]
            seen.add(x)
            cur = succ[x]
            while cur != -1:
                run.append(cur)
                seen.add(cur)
                cur = succ[cur]
            chains.append((run, False))
        for x in classes:
            if x in seen:
                continue
            run = [x]
            seen.add(x)
            cur = succ[x]
            while cur != x:
                run.append(cur)
                seen.add(cur)
                cur = succ[cur]
            chains.append((run, True))
        return chains

    def _distances(self, chains) -> dict[int, int]:
        vert_of = {}
        for i, (run, _) in enumerate(chains):
            for x in run:
                vert_of[x] = i
        adj: dict[int, set[int]] = {}
        for x in vert_of:
            u = vert_of[x]
            w = vert_of[self._find(self.cnxt[x])]
            adj.setdefault(u, set()).add(w)
            adj.setdefault(w, set()).add(u)
        root = vert_of[self._find(self._seed)]
        dist = {root: 0}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in adj.get(u, ()):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def _settle(self) -> None:
        """Run all forced zips and identifications to a fixpoint.

        Facts read off a valid partial development stay true after more
        gluings, so a whole snapshot of due actions can be applied in batch:
        a chain longer than the base degree means a growth front wrapped
        around the vertex, making its rotation periodic (run[0] and
        run[need] are the same cover dart); a full open chain zips shut.
        """
        while True:
            acted = False
            for run, closed in self._chains():
                need = self._base_deg[self.proj[run[0]]]
                if len(run) > need:
                    if closed and len(run) % need:
                        raise ConsistencyError("cover rotation of the wrong degree")
                    a, c = self._find(run[0]), self._find(run[need])
                    if a != c:
                        self._identify(a, c)
                        acted = True
                elif closed and len(run) != need:
                    raise ConsistencyError("cover rotation closed too early")
                elif not closed and len(run) == need:
                    e = self._find(run[-1])
                    t = self._find(self.cprv[self._find(run[0])])
                    p = self.part[e]
                    if p == -1 or self._find(p) != t:
                        self._glue(e, t)
                        acted = True
            if not acted:
                return

    def _develop(self) -> None:
        while True:
            self._settle()
            chains = self._chains()
            dist = self._distances(chains)
            targets = [run[-1] for i, (run, closed) in enumerate(chains)
                       if not closed and dist.get(i, self.radius + 1) <= self.radius]
            if not targets:
                return
            for end in targets:
                e = self._find(end)
                if self.part[e] != -1:
                    continue  # settled by a cascade from an earlier attach
                nd = self._new_face_over(self.base.partner[self.proj[e]])
                self._glue(e, nd)
            self._settle()

    def _finalize(self) -> None:
        chains = self._chains()
        self._chain_list = chains
        self._vert_of = {}
        for i, (run, _) in enumerate(chains):
            for x in run:
                self._vert_of[x] = i
        self.num_vertices = len(chains)
        self.base_lift = self._vert_of[self._find(self._seed)]

    # ----- queries -----

    def _edge_id(self, x: int) -> int:
        p = self.part[x]
        return x if p == -1 else min(x, self._find(p))

    def cycle_graph(self):
        adj = [[] for _ in range(self.num_vertices)]
        done = set()
        for x in self._vert_of:
            e = self._edge_id(x)
            if e in done:
                continue
            done.add(e)
            u = self._vert_of[x]
            w = self._vert_of[self._find(self.cnxt[x])]
            adj[u].append((w, e))
            if w != u:
                adj[w].append((u, e))
        return self.num_vertices, adj

    def face_contours(self):
        out = []
        seen = set()
        for x in self._vert_of:
            # face cycle through x, canonicalized by its least class id
            cyc = [x]
            cur = self._find(self.cnxt[x])
            while cur != x:
                cyc.append(cur)
                cur = self._find(self.cnxt[cur])
            key = min(cyc)
            if key in seen:
                continue
            seen.add(key)
            ids = [self._edge_id(d) for d in cyc]
            out.append((len(cyc), frozenset(ids) if len(set(ids)) == len(cyc) else None))
        return out

    def complete_within_radius(self) -> bool:
        chains = self._chain_list
        dist = self._distances(chains)
        return all(closed for i, (run, closed) in enumerate(chains)
                   if dist.get(i, self.radius + 1) <= self.radius)

    def validate_local_isomorphism(self) -> bool:
        """Closed cover rotations must project bijectively onto base rotations."""
        base = self.base
        for run, closed in self._chain_list:
            if not closed:
                continue
            seq = [self.proj[x] for x in run]
            bv = base.vertex_of[seq[0]]
            orbit = base.vertices[bv]
            if len(seq) != len(orbit):
                return False
            k = orbit.index(seq[0])
            if seq != [orbit[(k + j) % len(orbit)] for j in range(len(orbit))]:
                return False
        return True


# ============================================================
# The pruned counting engine
# ============================================================


def _leaf_passes(spec: GluingSpec, partner) -> bool:
    if spec.b == 0:
        return True
    hmap = HalfEdgeMap(spec.degrees, partner)
    return check_irreducible(hmap, spec.b, girth_only=(spec.constraint == "girth"))


def _search(spec: GluingSpec, forced: tuple = ()) -> int:
    """Count accepted matchings; ``forced`` fixes the first gluings."""
    degrees = spec.degrees
    n = len(degrees)
    S = sum(2 * l for l in degrees)
    E = S // 2
    g_target = spec.genus
    V_target = E - n + 2 - 2 * g_target
    if V_target < 1:
        return 0
    mindeg2 = not spec.allow_degree_one

    nxt = [0] * S
    poly_of = [0] * S
    base = 0
    for i, l in enumerate(degrees):
        k = 2 * l
        for j in range(k):
            nxt[base + j] = base + (j + 1) % k
            poly_of[base + j] = i
        base += k

    partner = [-1] * S
    bnx = list(nxt)
    bpv = [0] * S
    for s in range(S):
        bpv[nxt[s]] = s
    cstart = list(range(S))   # valid at chain ends
    cend = list(range(S))     # valid at chain starts
    clen = [1] * S            # valid at chain starts
    proot = list(range(n))
    popen = [2 * l for l in degrees]

    closedV = 0
    singles = S
    genus_acc = 0
    ncomp = n
    accepted = 0

    def find(x: int) -> int:
        while proot[x] != x:
            x = proot[x]
        return x

    def link(u: int, v: int, trail) -> bool:
        nonlocal closedV, singles
        su = cstart[u]
        if su == v:
            length = clen[v]
            if length == 1 and mindeg2:
                return False
            closedV += 1
            if length == 1:
                singles -= 1
            trail.append((1, length, 0, 0, 0))
            return True
        ev = cend[v]
        lu, lv = clen[su], clen[v]
        clen[su] = lu + lv
        cend[su] = ev
        cstart[ev] = su
        d = (1 if lu == 1 else 0) + (1 if lv == 1 else 0)
        singles -= d
        trail.append((2, su, ev, (u, v, lu), d))
        return True

    def glue(a: int, c: int, remaining: int):
        """Apply the gluing; return (trail, ok)."""
        nonlocal closedV, singles, genus_acc, ncomp
        trail = []
        partner[a] = c
        partner[c] = a

        # components and boundary circles
        ra = find(poly_of[a])
        rc = find(poly_of[c])
        cur = bnx[a]
        while cur != a and cur != c:
            cur = bnx[cur]
        same_circle = cur == c
        ok = True
        if same_circle:
            trail.append((3, ra, popen[ra], 0, 0))
            popen[ra] -= 2
            root = ra
        elif ra == rc:
            genus_acc += 1
            trail.append((4, ra, popen[ra], 0, 0))
            popen[ra] -= 2
            root = ra
            if genus_acc > g_target:
                ok = False
        else:
            trail.append((5, rc, ra, popen[ra], popen[rc]))
            proot[rc] = ra
            popen[ra] = popen[ra] + popen[rc] - 2
            ncomp -= 1
            root = ra
        if ok and popen[root] == 0 and ncomp > 1:
            ok = False  # sealed component can never connect to the rest

        if ok:
            na, pa = bnx[a], bpv[a]
            nc, pc = bnx[c], bpv[c]
            if same_circle:
                if na != c:
                    trail.append((6, pc, bnx[pc], na, bpv[na]))
                    bnx[pc] = na
                    bpv[na] = pc
                if nc != a:
                    trail.append((6, pa, bnx[pa], nc, bpv[nc]))
                    bnx[pa] = nc
                    bpv[nc] = pa
            else:
                if na == a and nc == c:
                    pass
                elif na == a:
                    trail.append((6, pc, bnx[pc], nc, bpv[nc]))
                    bnx[pc] = nc
                    bpv[nc] = pc
                elif nc == c:
                    trail.append((6, pa, bnx[pa], na, bpv[na]))
                    bnx[pa] = na
                    bpv[na] = pa
                else:
                    trail.append((6, pa, bnx[pa], nc, bpv[nc]))
                    bnx[pa] = nc
                    bpv[nc] = pa
                    trail.append((6, pc, bnx[pc], na, bpv[na]))
                    bnx[pc] = na
                    bpv[na] = pc

        if ok:
            ok = link(a, nxt[c], trail)
        if ok:
            ok = link(c, nxt[a], trail)

        if ok:
            if closedV > V_target:
                ok = False
            else:
                chains = 2 * remaining
                vmax = closedV + (chains - singles) + singles // 2 if mindeg2 \
                    else closedV + chains
                if vmax < V_target:
                    ok = False
        return trail, ok

    def unglue(a: int, c: int, trail):
        nonlocal closedV, singles, genus_acc, ncomp
        for rec in reversed(trail):
            tag = rec[0]
            if tag == 1:
                closedV -= 1
                if rec[1] == 1:
                    singles += 1
            elif tag == 2:
                _, su, ev, (u, v, lu), d = rec
                clen[su] = lu
                cend[su] = u
                cstart[ev] = v
                singles += d
            elif tag == 3:
                popen[rec[1]] = rec[2]
            elif tag == 4:
                popen[rec[1]] = rec[2]
                genus_acc -= 1
            elif tag == 5:
                _, rc, ra, oa, oc = rec
                proot[rc] = rc
                popen[ra] = oa
                popen[rc] = oc
                ncomp += 1
            elif tag == 6:
                _, i, oldn, j, oldp = rec
                bnx[i] = oldn
                bpv[j] = oldp
        partner[a] = -1
        partner[c] = -1

    def rec(lo: int, matched: int):
        nonlocal accepted
        if matched == E:
            if ncomp == 1 and closedV == V_target:
                if genus_acc != g_target:
                    raise ConsistencyError("handle count disagrees with Euler count")
                if _leaf_passes(spec, partner):
                    accepted += 1
            return
        while partner[lo] != -1:
            lo += 1
        remaining = E - matched - 1
        for c in range(lo + 1, S):
            if partner[c] != -1:
                continue
            trail, ok = glue(lo, c, remaining)
            if ok:
                rec(lo + 1, matched + 1)
            unglue(lo, c, trail)

    matched = 0
    prefix = []
    ok_all = True
    for a, c in forced:
        trail, ok = glue(a, c, E - matched - 1)
        prefix.append((a, c, trail))
        matched += 1
        if not ok:
            ok_all = False
            break
    if ok_all:
        rec(0, matched)
    for a, c, trail in reversed(prefix):
        unglue(a, c, trail)
    return accepted


def _branch_task(args):
    spec_fields, forced = args
    spec = GluingSpec(**spec_fields)
    return _search(spec, forced)


def brute_count(spec: GluingSpec, parallel: bool | None = None) -> Fraction:
    """Automorphism-weighted count of accepted maps: matchings / prod(2 l_i).

    Accepts matchings whose map is connected, has the target genus, respects
    the degree-one setting, and passes the irreducibility (or girth) test.
    """
    spec.validate()
    S = spec.total_sides
    weight = 1
    for l in spec.degrees:
        weight *= 2 * l

    if parallel is None:
        parallel = S >= PARALLEL_THRESHOLD_SIDES and (os.cpu_count() or 1) > 1
    if not parallel:
        return Fraction(_search(spec), weight)

    spec_fields = dict(
        genus=spec.genus, degrees=spec.degrees, b=spec.b,
        allow_degree_one=spec.allow_degree_one, constraint=spec.constraint,
        guard_sides=spec.guard_sides)
    # split on the partner of dart 0, then of the next unmatched dart
    tasks = []
    for c in range(1, S):
        first = (0, c)
        lo = 1 if c != 1 else 2
        for c2 in range(lo + 1, S):
            if c2 == c:
                continue
            tasks.append((spec_fields, (first, (lo, c2))))
    import multiprocessing as mp
    ctx = mp.get_context("fork")
    with ctx.Pool(min(os.cpu_count() or 1, 8)) as pool:
        parts = pool.map(_branch_task, tasks, chunksize=8)
    return Fraction(sum(parts), weight)
