"""Finite balls of the universal cover of V, by attach-and-fold expansion.

A Ball wraps a Complex2 together with a cellwise covering map into V, the
base vertex, per-vertex depths (graph distance on the 1-skeleton; lozenge
diagonals are not edges) and interior flags.  A cell is interior when its
full star is present: a vertex once its link realizes every corner of its
image's link exactly once, an edge once all three incident face-sides
exist.

Expansion to the next radius completes the star of every vertex at depth
<= radius: for each missing corner of the image link a fresh copy of the
corresponding V-face is attached at that corner, and the result is folded
to a fixpoint.  Folding identifies two edges leaving a common vertex with
the same covering image, and two face copies over the same V-face that
share an edge at the same boundary position.  Ball boundary words are
stored aligned with their image words, so folds are always positionwise.

Cell identifiers are canonical: after each operation the ball is renumbered
by a breadth-first traversal from the base ordered by covering images,
which makes serializations byte-stable across runs and construction
histories.
"""

from __future__ import annotations

from collections import deque

from .corecomplex import Complex2, Face, reverse


class FoldConflictError(RuntimeError):
    """Raised when folding would identify cells built in earlier rounds.

    The expansion rule never merges cells with different covering images
    (identification keys carry the image), so the remaining failure mode is
    two previously verified cells collapsing together, which signals a bad
    fixture or an expansion bug.  The offending cell trail is attached.
    """

    def __init__(self, kind, trail):
        super().__init__(f"fold would merge two settled {kind}s: {trail}")
        self.trail = trail


class Ball:
    """Immutable radius-annotated chunk of the universal cover of V."""

    def __init__(self, complex2, v_complex, base, radius,
                 vertex_image, edge_image, face_image,
                 interior_vertices=None, interior_edges=None):
        """Interior flags are computed from star completeness unless given
        explicitly (tests use the override to model damaged balls whose
        annotation still claims completeness)."""
        self.complex = complex2
        self.v_complex = v_complex
        self.base = base
        self.radius = radius
        self.vertex_image = dict(vertex_image)
        self.edge_image = dict(edge_image)
        self.face_image = dict(face_image)
        self.depth = self._depths()
        if interior_vertices is None:
            interior_vertices = (
                v for v in complex2.vertices if self._vertex_complete(v))
        if interior_edges is None:
            interior_edges = (
                e for e in complex2.edges
                if len(complex2.edge_sides(e))
                == len(v_complex.edge_sides(self.edge_image[e])))
        self.interior_vertices = frozenset(interior_vertices)
        self.interior_edges = frozenset(interior_edges)

    def _depths(self):
        dist = {self.base: 0}
        queue = deque([self.base])
        adj = {v: [] for v in self.complex.vertices}
        for eid, (s, t) in self.complex.edges.items():
            adj[s].append(t)
            adj[t].append(s)
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        return dist

    def _vertex_complete(self, v):
        p = self.vertex_image[v]
        germs = self.complex.germs_at(v)
        imgs = [self.map_oedge(g) for g in germs]
        if len(set(imgs)) != len(imgs):
            return False
        if len(imgs) != len(self.v_complex.germs_at(p)):
            return False
        corners = self.complex.corners_at(v)
        cimgs = [(self.face_image[f], i) for f, i in corners]
        if len(set(cimgs)) != len(cimgs):
            return False
        return len(cimgs) == len(self.v_complex.corners_at(p))

    def map_oedge(self, oedge):
        eid, sign = oedge
        return (self.edge_image[eid], sign)

    def face_depth(self, fid):
        word = self.complex.faces[fid].word
        return min(self.depth[self.complex.src(oe)] for oe in word)

    def edge_depth(self, eid):
        s, t = self.complex.edges[eid]
        return min(self.depth[s], self.depth[t])

    def interior_faces(self):
        return frozenset(
            f for f in self.complex.faces
            if all(self.complex.src(oe) in self.interior_vertices
                   for oe in self.complex.faces[f].word))


def base_ball(v_complex, base_vertex):
    """The radius-0 ball: a single vertex over the chosen V vertex."""
    if base_vertex not in v_complex.vertices:
        raise KeyError(f"unknown vertex {base_vertex!r}")
    cx = Complex2(vertices=["v0"], edges={}, faces=[])
    return Ball(cx, v_complex, "v0", 0,
                vertex_image={"v0": base_vertex}, edge_image={}, face_image={})


class _Builder:
    """Mutable workspace: arrays plus union-find over each cell kind."""

    def __init__(self, v_complex):
        self.V = v_complex
        self.vpar, self.vimg, self.vgen = [], [], []
        self.epar, self.esrc, self.etgt, self.esym, self.egen = [], [], [], [], []
        self.fpar, self.fimg, self.fword, self.fgen = [], [], [], []
        self.gen = 0

    # union-find -----------------------------------------------------------
    def vfind(self, a):
        while self.vpar[a] != a:
            self.vpar[a] = self.vpar[self.vpar[a]]
            a = self.vpar[a]
        return a

    def efind(self, a):
        while self.epar[a] != a:
            self.epar[a] = self.epar[self.epar[a]]
            a = self.epar[a]
        return a

    def ffind(self, a):
        while self.fpar[a] != a:
            self.fpar[a] = self.fpar[self.fpar[a]]
            a = self.fpar[a]
        return a

    def new_vertex(self, image):
        self.vpar.append(len(self.vpar))
        self.vimg.append(image)
        self.vgen.append(self.gen)
        return len(self.vpar) - 1

    def new_edge(self, src, tgt, sym):
        self.epar.append(len(self.epar))
        self.esrc.append(src)
        self.etgt.append(tgt)
        self.esym.append(sym)
        self.egen.append(self.gen)
        return len(self.epar) - 1

    def new_face(self, image, word):
        self.fpar.append(len(self.fpar))
        self.fimg.append(image)
        self.fword.append(list(word))
        self.fgen.append(self.gen)
        return len(self.fpar) - 1

    def vunion(self, a, b):
        a, b = self.vfind(a), self.vfind(b)
        if a == b:
            return False
        if self.vimg[a] != self.vimg[b]:
            raise FoldConflictError("vertex", (a, self.vimg[a], b, self.vimg[b]))
        if self.vgen[a] < self.gen and self.vgen[b] < self.gen:
            raise FoldConflictError("vertex", (a, b, "generation", self.vgen[a]))
        if b < a:
            a, b = b, a
        self.vpar[b] = a
        return True

    def eunion(self, a, b):
        a, b = self.efind(a), self.efind(b)
        if a == b:
            return False
        if self.esym[a] != self.esym[b]:
            raise FoldConflictError("edge", (a, self.esym[a], b, self.esym[b]))
        if self.egen[a] < self.gen and self.egen[b] < self.gen:
            raise FoldConflictError("edge", (a, b, "generation", self.egen[a]))
        if b < a:
            a, b = b, a
        self.epar[b] = a
        self.vunion(self.esrc[a], self.esrc[b])
        self.vunion(self.etgt[a], self.etgt[b])
        return True

    def funion(self, a, b):
        a, b = self.ffind(a), self.ffind(b)
        if a == b:
            return False
        if self.fimg[a] != self.fimg[b]:
            raise FoldConflictError("face", (a, self.fimg[a], b, self.fimg[b]))
        if self.fgen[a] < self.gen and self.fgen[b] < self.gen:
            raise FoldConflictError("face", (a, b, "generation", self.fgen[a]))
        if b < a:
            a, b = b, a
        self.fpar[b] = a
        for (e1, s1), (e2, s2) in zip(self.fword[a], self.fword[b]):
            assert s1 == s2
            self.eunion(e1, e2)
        return True

    # folding --------------------------------------------------------------
    def live_edges(self):
        return [e for e in range(len(self.epar)) if self.efind(e) == e]

    def live_faces(self):
        return [f for f in range(len(self.fpar)) if self.ffind(f) == f]

    def fold(self):
        """Identify to a fixpoint; returns number of merges performed."""
        merges = 0
        while True:
            changed = False
            groups = {}
            for e in self.live_edges():
                groups.setdefault((self.vfind(self.esrc[e]), self.esym[e], 0), []).append(e)
                groups.setdefault((self.vfind(self.etgt[e]), self.esym[e], 1), []).append(e)
            for members in groups.values():
                for other in members[1:]:
                    if self.eunion(members[0], other):
                        changed = True
                        merges += 1
            fgroups = {}
            for f in self.live_faces():
                for pos, (e, _s) in enumerate(self.fword[f]):
                    fgroups.setdefault((self.fimg[f], pos, self.efind(e)), []).append(f)
            for members in fgroups.values():
                for other in members[1:]:
                    if self.funion(members[0], other):
                        changed = True
                        merges += 1
            if not changed:
                return merges

    # loading and attaching --------------------------------------------------
    def load(self, ball):
        vmap, emap = {}, {}
        for v in ball.complex.vertices:
            vmap[v] = self.new_vertex(ball.vertex_image[v])
        for eid, (s, t) in sorted(ball.complex.edges.items()):
            emap[eid] = self.new_edge(vmap[s], vmap[t], ball.edge_image[eid])
        fmap = {}
        for fid in ball.complex.face_ids():
            face = ball.complex.faces[fid]
            word = [(emap[e], s) for e, s in face.word]
            fmap[fid] = self.new_face(ball.face_image[fid], word)
        return vmap

    def attach_corner(self, v, v_fid, corner):
        """Fresh copy of V-face v_fid glued at vertex v on the given corner."""
        word = self.V.faces[v_fid].word
        n = len(word)
        corners = []
        for j in range(n):
            img = self.V.src(word[j])
            corners.append(v if j == corner else self.new_vertex(img))
        face_word = []
        for j in range(n):
            sym, sign = word[j]
            a, b = corners[j], corners[(j + 1) % n]
            eid = self.new_edge(a, b, sym) if sign > 0 else self.new_edge(b, a, sym)
            face_word.append((eid, sign))
        self.new_face(v_fid, face_word)

    def vertex_corners(self, v):
        """Current corner images at live vertex root v: list of (V fid, i)."""
        out = []
        for f in self.live_faces():
            word = self.fword[f]
            n = len(word)
            for i in range(n):
                eid, sign = word[i]
                root = self.efind(eid)
                start = self.esrc[root] if sign > 0 else self.etgt[root]
                if self.vfind(start) == v:
                    out.append((self.fimg[f], i))
        return out

    def complete_star(self, v):
        """Attach copies for every missing corner at v; returns count."""
        v = self.vfind(v)
        present = set(self.vertex_corners(v))
        p = self.vimg[v]
        missing = [c for c in self.V.corners_at(p) if c not in present]
        for v_fid, corner in sorted(missing):
            self.attach_corner(v, v_fid, corner)
        return len(missing)


def _canonical_ball(builder, base_root, radius):
    """Compact the builder into an immutable Ball with canonical ids."""
    V = builder.V
    # adjacency over live roots
    germs = {}
    for e in builder.live_edges():
        s, t = builder.vfind(builder.esrc[e]), builder.vfind(builder.etgt[e])
        germs.setdefault(s, []).append((builder.esym[e], 1, e, t))
        germs.setdefault(t, []).append((builder.esym[e], -1, e, s))
    for v in germs:
        germs[v].sort()

    vnum, enum = {}, {}
    order = deque([base_root])
    vnum[base_root] = 0
    edge_order = []
    while order:
        v = order.popleft()
        for _sym, _sign, e, w in germs.get(v, ()):
            if e not in enum:
                enum[e] = len(enum)
                edge_order.append(e)
            if w not in vnum:
                vnum[w] = len(vnum)
                order.append(w)
    # isolated base (radius 0) has no germs
    vertices = {f"v{idx}" for idx in vnum.values()}
    vertex_image = {f"v{vnum[v]}": builder.vimg[v] for v in vnum}
    edges = {}
    edge_image = {}
    for e in edge_order:
        eid = f"e{enum[e]}"
        edges[eid] = (f"v{vnum[builder.vfind(builder.esrc[e])]}",
                      f"v{vnum[builder.vfind(builder.etgt[e])]}")
        edge_image[eid] = builder.esym[e]

    face_rows = []
    for f in builder.live_faces():
        word = tuple((f"e{enum[builder.efind(e)]}", s) for e, s in builder.fword[f])
        face_rows.append((builder.fimg[f], tuple(enum[builder.efind(e)] for e, _s in builder.fword[f]), word))
    face_rows.sort()
    faces = []
    face_image = {}
    for idx, (img, _key, word) in enumerate(face_rows):
        fid = f"f{idx}"
        faces.append(Face(fid, V.faces[img].kind, word))
        face_image[fid] = img

    cx = Complex2(vertices=vertices, edges=edges, faces=faces)
    return Ball(cx, V, "v0", radius, vertex_image, edge_image, face_image)


def expand_ball(ball):
    """The ball of radius +1: complete every star at depth <= radius."""
    builder = _Builder(ball.v_complex)
    vmap = builder.load(ball)
    builder.gen = 1
    targets = sorted(
        (ball.depth[v], v) for v in ball.complex.vertices
        if ball.depth[v] <= ball.radius)
    for _ in range(8):
        builder.fold()
        attached = 0
        for _d, v in targets:
            attached += builder.complete_star(vmap[v])
            builder.fold()
        if attached == 0:
            break
    else:
        raise FoldConflictError("ball", ("expansion did not stabilize",))
    return _canonical_ball(builder, builder.vfind(vmap[ball.base]), ball.radius + 1)


def expand_to_radius(v_complex, base_vertex, radius):
    b = base_ball(v_complex, base_vertex)
    for _ in range(radius):
        b = expand_ball(b)
    return b


def restrict_ball(ball, radius):
    """The sub-ball of the given radius: faces within depth radius-1."""
    if radius > ball.radius:
        raise ValueError("cannot restrict to a larger radius")
    keep = [f for f in ball.complex.face_ids() if ball.face_depth(f) <= radius - 1]
    builder = _Builder(ball.v_complex)
    vmap, emap = {}, {}

    def getv(v):
        if v not in vmap:
            vmap[v] = builder.new_vertex(ball.vertex_image[v])
        return vmap[v]

    base_root = getv(ball.base)
    for fid in keep:
        word = []
        for eid, sign in ball.complex.faces[fid].word:
            if eid not in emap:
                s, t = ball.complex.edges[eid]
                emap[eid] = builder.new_edge(getv(s), getv(t), ball.edge_image[eid])
            word.append((emap[eid], sign))
        builder.new_face(ball.face_image[fid], word)
    return _canonical_ball(builder, base_root, radius)


def ball_census(ball):
    """Counts per depth: vertices by exact depth, edges and faces by the
    depth of their nearest vertex, faces split by kind."""
    census = {}
    for v in ball.complex.vertices:
        d = ball.depth[v]
        census.setdefault(d, {"vertices": 0, "edges": 0, "triangles": 0, "lozenges": 0})
        census[d]["vertices"] += 1
    for e in ball.complex.edges:
        d = ball.edge_depth(e)
        census.setdefault(d, {"vertices": 0, "edges": 0, "triangles": 0, "lozenges": 0})
        census[d]["edges"] += 1
    for f in ball.complex.face_ids():
        d = ball.face_depth(f)
        census.setdefault(d, {"vertices": 0, "edges": 0, "triangles": 0, "lozenges": 0})
        kind = ball.complex.faces[f].kind
        census[d]["triangles" if kind == "triangle" else "lozenges"] += 1
    return dict(sorted(census.items()))


def ball_isomorphisms(b1, b2, limit=None):
    """Cellular isomorphisms b1 -> b2 ignoring the covering maps.

    Development search: each candidate starts from a labeled isomorphism of
    the base links and spreads across interior stars, where rigidity (an
    interior link automorphism fixing a germ is the identity) forces every
    extension.  Sound for balls whose faces all touch an interior vertex,
    which holds for the expansion output at any radius >= 1.
    """
    from .hamgraph import labeled_isomorphisms

    cx1, cx2 = b1.complex, b2.complex
    if len(cx1.faces) != len(cx2.faces) or len(cx1.edges) != len(cx2.edges):
        return []
    if len(cx1.vertices) != len(cx2.vertices):
        return []
    for fid in cx1.face_ids():
        if not any(cx1.src(oe) in b1.interior_vertices
                   for oe in cx1.faces[fid].word):
            raise ValueError("development search needs every face on an interior vertex")

    link1 = cx1.vertex_link(b1.base)
    link2 = cx2.vertex_link(b2.base)
    results = []
    for base_iso in labeled_isomorphisms(link1, link2):
        iso = _develop_ball_iso(b1, b2, base_iso)
        if iso is not None:
            results.append(iso)
            if limit is not None and len(results) >= limit:
                break
    return results


def _develop_ball_iso(b1, b2, base_link_iso):
    """Extend a base link isomorphism across both balls, or None."""
    from .cellmap import CellMap
    from .hamgraph import labeled_isomorphisms

    cx1, cx2 = b1.complex, b2.complex
    vmap = {b1.base: b2.base}
    emap = {}
    fmap = {}

    def corner_edge_map(link, iso, other_link):
        """link edge tag -> other link edge tag under a node bijection."""
        pairs = {}
        index2 = {}
        for (u, v, lbl, tag) in other_link.edges:
            index2.setdefault((frozenset((u, v)), lbl), []).append(tag)
        for (u, v, lbl, tag) in link.edges:
            key = (frozenset((iso[u], iso[v])), lbl)
            cand = index2.get(key, [])
            if len(cand) != 1:
                return None
            pairs[tag] = cand[0]
        return pairs

    def map_face(f1, i1, f2, i2):
        """Align corner i1 of f1 with corner i2 of f2; False on conflict."""
        face1, face2 = cx1.faces[f1], cx2.faces[f2]
        n = len(face1.word)
        if len(face2.word) != n or face1.kind != face2.kind:
            return False
        if f1 in fmap:
            return fmap[f1] == f2
        # germ correspondence at the shared corner decides the direction
        a1, b1_ = cx1.corner_germs(f1, i1)
        a2, b2_ = cx2.corner_germs(f2, i2)
        flip = None
        ia1 = emap.get(a1[0])
        ib1 = emap.get(b1_[0])

        def oimg(oe, table_val):
            sym, sign = oe
            isym, isign = table_val
            return (isym, isign * sign)

        if ia1 is not None:
            img = oimg(a1, ia1)
            if img == a2:
                flip = False
            elif img == b2_:
                flip = True
            else:
                return False
        if ib1 is not None and flip is None:
            img = oimg(b1_, ib1)
            if img == b2_:
                flip = False
            elif img == a2:
                flip = True
            else:
                return False
        if flip is None:
            return False
        for k in range(n):
            j1 = (i1 + k) % n
            j2 = (i2 + k) % n if not flip else (i2 - k) % n
            oe1 = face1.word[j1]
            oe2 = face2.word[j2] if not flip else tuple_reverse(face2.word[(j2 - 1) % n])
            if not assign_edge(oe1, oe2):
                return False
        fmap[f1] = f2
        return True

    def tuple_reverse(oe):
        return (oe[0], -oe[1])

    def assign_edge(oe1, oe2):
        sym1, sign1 = oe1
        sym2, sign2 = oe2
        val = (sym2, sign2) if sign1 > 0 else (sym2, -sign2)
        if sym1 in emap:
            if emap[sym1] != val:
                return False
        else:
            emap[sym1] = val
        for v, w in ((cx1.src(oe1), cx2.src(oe2)), (cx1.tgt(oe1), cx2.tgt(oe2))):
            if v in vmap:
                if vmap[v] != w:
                    return False
            else:
                vmap[v] = w
        return True

    # seed: map the whole base star through the base link isomorphism
    link1 = cx1.vertex_link(b1.base)
    link2 = cx2.vertex_link(b2.base)
    for g1_, g2_ in base_link_iso.items():
        if not assign_edge(g1_, g2_):
            return None
    corner_map = corner_edge_map(link1, base_link_iso, link2)
    if corner_map is None:
        return None
    for (f1, i1), (f2, i2) in sorted(corner_map.items()):
        if not map_face(f1, i1, f2, i2):
            return None

    done = {b1.base}
    queue = deque([v for v in sorted(vmap, key=str) if v != b1.base])
    seen_q = set(queue)
    while queue:
        v = queue.popleft()
        if v in done:
            continue
        done.add(v)
        if v not in b1.interior_vertices:
            continue
        w = vmap.get(v)
        if w is None or w not in b2.interior_vertices:
            return None
        lk1 = cx1.vertex_link(v)
        lk2 = cx2.vertex_link(w)
        # the germ images already fixed must extend uniquely to a link iso
        pinned = [(g, emapped) for g in lk1.nodes
                  for emapped in [_germ_image(g, emap)] if emapped is not None]
        if not pinned:
            return None
        isos = [iso for iso in labeled_isomorphisms(lk1, lk2)
                if all(iso[g] == img for g, img in pinned)]
        if len(isos) != 1:
            return None
        iso = isos[0]
        for g1_, g2_ in iso.items():
            if not assign_edge(g1_, g2_):
                return None
        cmap = corner_edge_map(lk1, iso, lk2)
        if cmap is None:
            return None
        for (f1, i1), (f2, i2) in sorted(cmap.items()):
            if not map_face(f1, i1, f2, i2):
                return None
        for u in sorted(vmap, key=str):
            if u not in done and u not in seen_q:
                queue.append(u)
                seen_q.add(u)

    if len(fmap) != len(cx1.faces) or len(emap) != len(cx1.edges):
        return None
    if len(set(fmap.values())) != len(fmap):
        return None
    if len(set(vmap.values())) != len(vmap) or len(vmap) != len(cx1.vertices):
        return None
    m = CellMap(cx1, cx2, vmap, emap, fmap)
    from .cellmap import check_cellmap
    if check_cellmap(m):
        return None
    return m


def _germ_image(germ, emap):
    sym, sign = germ
    if sym not in emap:
        return None
    isym, isign = emap[sym]
    return (isym, isign * sign)


def verify_cover(ball):
    """Certificate of the Ball invariants; violations are content, not errors.

    Checks the covering map commutes with sources, targets and boundary
    words, that interior links are labeled-isomorphic to the image links in
    V (with their angular girth reported), that interior edges carry all
    three face-sides, and that depths agree with a fresh traversal.
    """
    from .corecomplex import validate_complex
    from .hamgraph import angular_girth, labeled_isomorphic

    cx, V = ball.complex, ball.v_complex
    problems = list(validate_complex(cx))
    for eid in cx.edges:
        sym = ball.edge_image[eid]
        s, t = cx.edges[eid]
        if ball.vertex_image[s] != V.src((sym, 1)) or ball.vertex_image[t] != V.tgt((sym, 1)):
            problems.append(f"edge {eid}: covering map does not commute with endpoints")
    for fid in cx.face_ids():
        word = cx.faces[fid].word
        target = V.faces[ball.face_image[fid]].word
        if tuple(ball.map_oedge(oe) for oe in word) != tuple(target):
            problems.append(f"face {fid}: boundary word image is misaligned")
    vertex_rows = {}
    for v in sorted(cx.vertices, key=lambda s: int(s[1:])):
        interior = v in ball.interior_vertices
        if ball.depth[v] <= ball.radius - 1 and not interior:
            problems.append(
                f"vertex {v}: depth {ball.depth[v]} requires a complete star "
                f"at radius {ball.radius}")
        row = {"depth": ball.depth[v], "interior": interior}
        if interior:
            link = cx.vertex_link(v)
            image_link = V.vertex_link(ball.vertex_image[v])
            iso = labeled_isomorphic(link, image_link)
            row["link_matches_image"] = iso is not None
            row["girth"] = angular_girth(link)
            if iso is None:
                problems.append(f"vertex {v}: interior link does not match its image link")
        vertex_rows[v] = row
    for eid in sorted(cx.edges, key=lambda s: int(s[1:])):
        sides = len(cx.edge_sides(eid))
        expected = len(V.edge_sides(ball.edge_image[eid]))
        if eid in ball.interior_edges and sides != expected:
            problems.append(f"edge {eid}: interior but degree {sides} != {expected}")
        if sides > expected:
            problems.append(f"edge {eid}: degree {sides} exceeds image degree {expected}")
    expected_depths = ball._depths()
    if expected_depths != ball.depth:
        problems.append("depth table inconsistent with traversal")
    interior_count = len(ball.interior_vertices)
    return {
        "radius": ball.radius,
        "ok": not problems,
        "problems": problems,
        "interior_vertex_count": interior_count,
        "vertices": vertex_rows,
        "cells": {
            "vertices": len(cx.vertices),
            "edges": len(cx.edges),
            "faces": len(cx.faces),
        },
    }


def serialize_ball(ball):
    """Deterministic text dump, diffable across runs and versions."""
    lines = [f"ball radius={ball.radius} base={ball.base}"]
    for v in sorted(ball.complex.vertices, key=lambda s: int(s[1:])):
        mark = " interior" if v in ball.interior_vertices else ""
        lines.append(f"vertex {v} depth={ball.depth[v]} image={ball.vertex_image[v]}{mark}")
    for e in sorted(ball.complex.edges, key=lambda s: int(s[1:])):
        s, t = ball.complex.edges[e]
        mark = " interior" if e in ball.interior_edges else ""
        lines.append(f"edge {e} : {s} -> {t} image={ball.edge_image[e]}{mark}")
    for f in sorted(ball.complex.face_ids(), key=lambda s: int(s[1:])):
        face = ball.complex.faces[f]
        word = " ".join(f"{e}{'+' if s > 0 else '-'}" for e, s in face.word)
        lines.append(f"face {f} {face.kind} : {word} image={ball.face_image[f]}")
    return "\n".join(lines) + "\n"
