"""Cellular maps between 2-complexes and the automorphism group of V.

A CellMap is an explicit table: vertex -> vertex, oriented edge -> oriented
edge (commuting with reversal, source and target) and face -> face, where
each face's boundary word must map to the image face's word up to rotation
and reversal.  For lozenges the rotation must be even so that small corners
go to small corners.

The automorphism search is exhaustive: images and alignments of the four
triangles determine all twelve edge images (every edge lies on exactly one
triangle in V), after which the lozenge face images are forced or fail.
"""

from __future__ import annotations

from itertools import permutations

from .corecomplex import LOZENGE, TRIANGLE, reverse


class CellMapError(ValueError):
    pass


class CellMap:
    """A cellular morphism between two complexes (possibly the same)."""

    def __init__(self, source, target, vertex_map, edge_map, face_map):
        """edge_map is keyed on plain symbols with oriented-edge values;
        the reverse of a symbol maps to the reversed value."""
        self.source = source
        self.target = target
        self.vertex_map = dict(vertex_map)
        self.edge_map = dict(edge_map)
        self.face_map = dict(face_map)

    def map_oedge(self, oedge):
        sym, sign = oedge
        img_sym, img_sign = self.edge_map[sym]
        return (img_sym, img_sign * sign)

    def map_word(self, word):
        return tuple(self.map_oedge(oe) for oe in word)

    def __eq__(self, other):
        return (isinstance(other, CellMap)
                and self.vertex_map == other.vertex_map
                and self.edge_map == other.edge_map
                and self.face_map == other.face_map)

    def __hash__(self):
        return hash((
            tuple(sorted(self.vertex_map.items())),
            tuple(sorted(self.edge_map.items())),
            tuple(sorted(self.face_map.items())),
        ))

    def key(self):
        """Deterministic sort key (by edge images)."""
        return tuple(sorted((s, v) for s, v in self.edge_map.items()))

    def compose(self, other):
        """self after other (apply ``other`` first)."""
        if other.target is not self.source:
            raise CellMapError("composition domains do not match")
        vmap = {v: self.vertex_map[w] for v, w in other.vertex_map.items()}
        emap = {s: self.map_oedge(oe) for s, oe in other.edge_map.items()}
        fmap = {f: self.face_map[g] for f, g in other.face_map.items()}
        return CellMap(other.source, self.target, vmap, emap, fmap)

    def is_identity(self):
        return (all(v == w for v, w in self.vertex_map.items())
                and all(self.edge_map[s] == (s, 1) for s in self.edge_map)
                and all(f == g for f, g in self.face_map.items()))

    def order(self, limit=64):
        """Order of the map as an automorphism (source == target)."""
        acc = self
        for n in range(1, limit + 1):
            if acc.is_identity():
                return n
            acc = acc.compose(self)
        raise CellMapError(f"order exceeds {limit}")


def identity_map(cx):
    return CellMap(
        cx, cx,
        {v: v for v in cx.vertices},
        {s: (s, 1) for s in cx.edges},
        {f: f for f in cx.faces},
    )


def word_match(word, target_word, even_rotation_only):
    """Alignment of ``word`` onto ``target_word``: (rotation, flipped) or None.

    ``word`` matches if some rotation of it (or of its reversal) equals
    ``target_word``.  With ``even_rotation_only`` (lozenges) only rotations
    preserving corner parity are allowed.
    """
    n = len(word)
    if n != len(target_word):
        return None
    rev = tuple((s, -sg) for s, sg in reversed(word))
    for flipped, cand in ((False, tuple(word)), (True, rev)):
        for r in range(n):
            if even_rotation_only and r % 2 == 1:
                continue
            if cand[r:] + cand[:r] == tuple(target_word):
                return (r, flipped)
    return None


def check_cellmap(m):
    """All structural violations of a CellMap, as strings; empty iff valid."""
    src, tgt = m.source, m.target
    problems = []
    if sorted(m.vertex_map) != sorted(src.vertices):
        problems.append("vertex map domain mismatch")
    if sorted(set(m.vertex_map.values())) != sorted(tgt.vertices):
        problems.append("vertex map is not onto the target vertices")
    if sorted(m.edge_map) != sorted(src.edges):
        problems.append("edge map domain mismatch")
    for sym, (img, sign) in m.edge_map.items():
        if img not in tgt.edges:
            problems.append(f"edge {sym}: image {img} undeclared")
            continue
        s, t = src.edges[sym]
        if m.vertex_map.get(s) != tgt.src((img, sign)):
            problems.append(f"edge {sym}: source does not commute")
        if m.vertex_map.get(t) != tgt.tgt((img, sign)):
            problems.append(f"edge {sym}: target does not commute")
    img_syms = sorted(img for img, _sign in m.edge_map.values())
    if img_syms != sorted(tgt.edges):
        problems.append("edge map is not a bijection on symbols")
    for fid, gid in m.face_map.items():
        face, gface = src.faces[fid], tgt.faces[gid]
        if face.kind != gface.kind:
            problems.append(f"face {fid}: kind changes under the map")
            continue
        align = word_match(
            m.map_word(face.word), gface.word,
            even_rotation_only=(face.kind == LOZENGE))
        if align is None:
            problems.append(f"face {fid}: word does not match face {gid}")
    if sorted(m.face_map) != sorted(src.faces):
        problems.append("face map domain mismatch")
    if sorted(set(m.face_map.values())) != sorted(tgt.faces):
        problems.append("face map is not onto the target faces")
    return problems


def _face_image_of_word(cx, word, kind):
    """The face of cx whose boundary equals word (up to allowed moves)."""
    for fid in cx.face_ids():
        face = cx.faces[fid]
        if face.kind != kind:
            continue
        if word_match(word, face.word, even_rotation_only=(kind == LOZENGE)) is not None:
            return fid
    return None


def isomorphisms(cx1, cx2, limit=None):
    """All cellular isomorphisms cx1 -> cx2, deterministically ordered.

    Backtracks over images and alignments of the triangles of cx1; in the
    complexes of interest every edge lies on exactly one triangle, so the
    triangle assignment determines the whole edge map, and the lozenge face
    map is then forced or inconsistent.
    """
    tris1 = sorted(f for f in cx1.faces if cx1.faces[f].kind == TRIANGLE)
    tris2 = sorted(f for f in cx2.faces if cx2.faces[f].kind == TRIANGLE)
    lozs1 = sorted(f for f in cx1.faces if cx1.faces[f].kind == LOZENGE)
    if len(tris1) != len(tris2) or len(cx1.edges) != len(cx2.edges):
        return []
    for sym in cx1.edges:
        uses = sum(1 for t in tris1
                   for s, _sg in cx1.faces[t].word if s == sym)
        if uses != 1:
            raise CellMapError(
                "isomorphism search requires every edge on exactly one triangle")

    results = []

    def extend(i, edge_map, vertex_map, face_map, used_faces):
        if i == len(tris1):
            m = CellMap(cx1, cx2, vertex_map, edge_map, face_map)
            # lozenge images are forced by the edge map
            fmap = dict(face_map)
            ok = True
            used = set(used_faces)
            for fid in lozs1:
                img_word = m.map_word(cx1.faces[fid].word)
                gid = _face_image_of_word(cx2, img_word, LOZENGE)
                if gid is None or gid in used:
                    ok = False
                    break
                used.add(gid)
                fmap[fid] = gid
            if ok:
                full = CellMap(cx1, cx2, vertex_map, edge_map, fmap)
                if not check_cellmap(full):
                    results.append(full)
            return
        fid = tris1[i]
        word = cx1.faces[fid].word
        for gid in tris2:
            if gid in used_faces:
                continue
            gword = cx2.faces[gid].word
            rev = tuple((s, -sg) for s, sg in reversed(gword))
            for base in (tuple(gword), rev):
                for r in range(3):
                    target = base[r:] + base[:r]
                    new_edge_map = dict(edge_map)
                    new_vertex_map = dict(vertex_map)
                    good = True
                    for (sym, sign), (tsym, tsign) in zip(word, target):
                        img = (tsym, tsign) if sign > 0 else (tsym, -tsign)
                        if sym in new_edge_map and new_edge_map[sym] != img:
                            good = False
                            break
                        new_edge_map[sym] = img
                        for v, w in ((cx1.src((sym, sign)), cx2.src((tsym, tsign))),
                                     (cx1.tgt((sym, sign)), cx2.tgt((tsym, tsign)))):
                            if v in new_vertex_map and new_vertex_map[v] != w:
                                good = False
                                break
                            new_vertex_map[v] = w
                        if not good:
                            break
                    if good:
                        new_face_map = dict(face_map)
                        new_face_map[fid] = gid
                        extend(i + 1, new_edge_map, new_vertex_map,
                               new_face_map, used_faces | {gid})
                        if limit is not None and len(results) >= limit:
                            return

    extend(0, {}, {}, {}, frozenset())
    results.sort(key=lambda m: m.key())
    if limit is not None:
        results = results[:limit]
    return results


def automorphism_group(cx):
    """All cellular automorphisms of cx, sorted deterministically."""
    return isomorphisms(cx, cx)


def map_from_edge_table(cx, table):
    """Build an automorphism of cx from a symbol table.

    ``table`` maps edge symbols to oriented edges (sym or (sym, sign));
    entries give both directions of each swap, or single fixed points.  The
    vertex and face maps are derived; raises CellMapError if the table does
    not define an automorphism.
    """
    edge_map = {}
    for sym, img in table.items():
        edge_map[sym] = img if isinstance(img, tuple) else (img, 1)
    for sym in cx.edges:
        if sym not in edge_map:
            edge_map[sym] = (sym, 1)
    vertex_map = {}
    for sym, (img, sign) in edge_map.items():
        for v, w in ((cx.src((sym, 1)), cx.src((img, sign))),
                     (cx.tgt((sym, 1)), cx.tgt((img, sign)))):
            if v in vertex_map and vertex_map[v] != w:
                raise CellMapError(f"edge table inconsistent at vertex {v}")
            vertex_map[v] = w
    probe = CellMap(cx, cx, vertex_map, edge_map, {})
    face_map = {}
    used = set()
    for fid in cx.face_ids():
        face = cx.faces[fid]
        gid = _face_image_of_word(cx, probe.map_word(face.word), face.kind)
        if gid is None:
            raise CellMapError(f"edge table does not map face {fid} to a face")
        if gid in used:
            raise CellMapError(f"edge table maps two faces onto {gid}")
        used.add(gid)
        face_map[fid] = gid
    m = CellMap(cx, cx, vertex_map, edge_map, face_map)
    problems = check_cellmap(m)
    if problems:
        raise CellMapError("; ".join(problems))
    return m


# The three involution tables for V, as subscript maps on the fixture's
# edge symbols.  theta1 flips every lozenge along its long diagonal, theta2
# reverses arrows while exchanging the x and y families (it takes S to S'),
# theta3 exchanges the a/b and c/d charts.

def theta1_table():
    return {
        "x_a": "x_d", "x_d": "x_a", "x_b": "x_c", "x_c": "x_b",
        "y_a": "y_d", "y_d": "y_a", "y_b": "y_c", "y_c": "y_b",
        "z_a": "z_d", "z_d": "z_a", "z_b": "z_c", "z_c": "z_b",
    }


def theta2_table():
    return {
        "x_a": ("y_a", -1), "y_a": ("x_a", -1),
        "x_c": ("y_b", -1), "y_b": ("x_c", -1),
        "x_b": ("y_c", -1), "y_c": ("x_b", -1),
        "x_d": ("y_d", -1), "y_d": ("x_d", -1),
        "z_a": ("z_a", -1),
        "z_b": ("z_c", -1), "z_c": ("z_b", -1),
        "z_d": ("z_d", -1),
    }


def theta3_table():
    return {
        "x_a": "x_b", "x_b": "x_a", "x_c": "x_d", "x_d": "x_c",
        "y_a": "y_b", "y_b": "y_a", "y_c": "y_d", "y_d": "y_c",
        "z_a": "z_b", "z_b": "z_a", "z_c": "z_d", "z_d": "z_c",
    }


def theta_maps(v_complex):
    """The three named automorphisms of V built from their tables."""
    return {
        "theta1": map_from_edge_table(v_complex, theta1_table()),
        "theta2": map_from_edge_table(v_complex, theta2_table()),
        "theta3": map_from_edge_table(v_complex, theta3_table()),
    }


def generated_subgroup(generators, limit=256):
    """Closure of a generator list under composition."""
    if not generators:
        return []
    elems = {}
    frontier = list(generators)
    ident = identity_map(generators[0].source)
    elems[ident.key()] = ident
    for g in generators:
        elems[g.key()] = g
    while frontier:
        nxt = []
        for g in frontier:
            for h in list(elems.values()):
                for prod in (g.compose(h), h.compose(g)):
                    k = prod.key()
                    if k not in elems:
                        elems[k] = prod
                        nxt.append(prod)
        frontier = nxt
        if len(elems) > limit:
            raise CellMapError("generated group exceeds limit")
    return sorted(elems.values(), key=lambda m: m.key())


def verify_theta_relations(v_complex, group=None):
    """Relation report for theta1, theta2, theta3 inside Aut(V).

    Checks, and reports rather than assumes: membership of the tables in
    the full automorphism group, involutivity, pairwise commutation,
    generation of the whole group, element orders, and the action of each
    map on the faces.
    """
    if group is None:
        group = automorphism_group(v_complex)
    thetas = theta_maps(v_complex)
    keys = {m.key() for m in group}
    report = {
        "group_order": len(group),
        "element_orders": sorted(m.order() for m in group),
        "members": {name: m.key() in keys for name, m in thetas.items()},
        "involutive": {name: m.compose(m).is_identity() for name, m in thetas.items()},
        "commute": {},
        "face_action": {name: dict(sorted(m.face_map.items()))
                        for name, m in thetas.items()},
    }
    names = sorted(thetas)
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            a, b = thetas[names[i]], thetas[names[j]]
            report["commute"][f"{names[i]}*{names[j]}"] = (
                a.compose(b) == b.compose(a))
    gen = generated_subgroup(list(thetas.values()))
    report["generated_order"] = len(gen)
    report["generates_group"] = {m.key() for m in gen} == keys
    report["exponent_two"] = all(o <= 2 for o in report["element_orders"])
    report["all_pairs_commute"] = all(report["commute"].values())
    return report
