"""Exhaustive surface census on a ball: the independent oracle.

Plain depth-first search over in/out assignments of the constrained faces,
in a fixed order, with local pruning only:

* an interior edge never carries more than two member sides and must keep
  two reachable;
* a vertex trace never branches (degree <= 2 per germ) and never closes a
  cycle early;
* every germ of an interior vertex must keep two usable corners among
  member and undecided faces;
* once every face at an interior vertex is decided, the trace must be one
  spanning cycle.

Full assignments are kept when every interior edge has coverage exactly 2,
every interior vertex carries one spanning trace cycle, and the member set
is nonempty and connected through shared edges.  Nothing here knows about
cycle types or the ladder; agreement with the propagation engine is the
point of the module.
"""

from __future__ import annotations


class BudgetExceeded(RuntimeError):
    pass


def _trace_tables(cx, vertices):
    """Per interior vertex: link node count, and per face the link edges it
    contributes as (node, node) pairs."""
    tables = {}
    for v in vertices:
        link = cx.vertex_link(v)
        by_face = {}
        for (u, w, _lbl, tag) in link.edges:
            by_face.setdefault(tag[0], []).append((u, w))
        tables[v] = (link.node_count(), by_face)
    return tables


def count_surfaces_exhaustive(ball, budget=10**8):
    """All interior-Hamiltonian face sets of the ball, as sorted id tuples.

    Raises BudgetExceeded when the number of explored assignments passes
    the budget.  Guarded to radius <= 2 by the callers; the search itself
    only depends on the budget.
    """
    cx = ball.complex
    vertices = sorted(ball.interior_vertices, key=lambda v: (ball.depth[v], int(v[1:])))
    edges = sorted(ball.interior_edges, key=str)
    tables = _trace_tables(cx, vertices)

    rel = set()
    for v in vertices:
        rel.update(tables[v][1])
    edge_faces = {}
    for sym in edges:
        edge_faces[sym] = [fid for fid, _i, _s in cx.edge_sides(sym)]
        rel.update(edge_faces[sym])

    # decide faces along the face-adjacency structure so that the local
    # checks constrain every new decision immediately
    neighbors = {f: set() for f in rel}
    for sym in cx.edges:
        inc = [fid for fid, _i, _s in cx.edge_sides(sym) if fid in rel]
        for a in inc:
            for b in inc:
                if a != b:
                    neighbors[a].add(b)
    start = min(rel, key=lambda f: (ball.face_depth(f), int(f[1:])))
    order = [start]
    placed = {start}
    frontier = sorted(neighbors[start], key=lambda f: (ball.face_depth(f), int(f[1:])))
    while len(order) < len(rel):
        if not frontier:
            rest = sorted(rel - placed, key=lambda f: (ball.face_depth(f), int(f[1:])))
            frontier = rest[:1]
        f = frontier.pop(0)
        if f in placed:
            continue
        order.append(f)
        placed.add(f)
        for g in sorted(neighbors[f], key=lambda h: (ball.face_depth(h), int(h[1:]))):
            if g not in placed:
                frontier.append(g)
    pos = {f: k for k, f in enumerate(order)}

    faces_at_vertex = {v: sorted(tables[v][1], key=lambda f: pos[f]) for v in vertices}
    vertices_of_face = {f: [] for f in order}
    for v in vertices:
        for f in tables[v][1]:
            vertices_of_face[f].append(v)
    edges_of_face = {f: [] for f in order}
    for sym in edges:
        for f in edge_faces[sym]:
            edges_of_face[f].append(sym)

    UNDEC, KEEP, DROP = -1, 1, 0
    state = {f: UNDEC for f in order}
    nodes = 0
    solutions = []

    def edge_ok(sym):
        members = sum(1 for f in edge_faces[sym] if state[f] == KEEP)
        open_ = sum(1 for f in edge_faces[sym] if state[f] == UNDEC)
        return members <= 2 and members + open_ >= 2

    def vertex_ok(v, final):
        _node_count, by_face = tables[v]
        deg = {}
        adj = {}
        avail = {}
        link_nodes = set()
        for f, pairs in by_face.items():
            for (a, b) in pairs:
                link_nodes.add(a)
                link_nodes.add(b)
                if state[f] != DROP:
                    avail[a] = avail.get(a, 0) + 1
                    avail[b] = avail.get(b, 0) + 1
                if state[f] == KEEP:
                    deg[a] = deg.get(a, 0) + 1
                    deg[b] = deg.get(b, 0) + 1
                    adj.setdefault(a, []).append(b)
                    adj.setdefault(b, []).append(a)
        if any(d > 2 for d in deg.values()):
            return False
        # a spanning trace cycle needs two corners through every germ
        for n in link_nodes:
            if avail.get(n, 0) < 2:
                return False
        # no closed member cycle may miss part of the link
        seen = set()
        component_count = 0
        for start in adj:
            if start in seen:
                continue
            component_count += 1
            comp = {start}
            stack = [start]
            while stack:
                n = stack.pop()
                for m in adj.get(n, ()):
                    if m not in comp:
                        comp.add(m)
                        stack.append(m)
            seen |= comp
            if all(deg.get(n, 0) == 2 for n in comp) and comp != link_nodes:
                return False
        if final:
            # one spanning cycle: every germ degree 2, single component
            if component_count != 1 or seen != link_nodes:
                return False
            if any(deg.get(n, 0) != 2 for n in link_nodes):
                return False
        return True

    def consistent_after(f):
        for sym in edges_of_face[f]:
            if not edge_ok(sym):
                return False
        for v in vertices_of_face[f]:
            final = all(state[g] != UNDEC for g in faces_at_vertex[v])
            if not vertex_ok(v, final):
                return False
        return True

    def final_check():
        for sym in edges:
            if sum(1 for f in edge_faces[sym] if state[f] == KEEP) != 2:
                return False
        members = {f for f in order if state[f] == KEEP}
        if not members:
            return False
        # connectivity through shared edges (any edge of the ball)
        neighbors = {f: set() for f in members}
        for sym in cx.edges:
            inc = [fid for fid, _i, _s in cx.edge_sides(sym) if fid in members]
            for a in inc:
                for b in inc:
                    if a != b:
                        neighbors[a].add(b)
        start = min(members, key=str)
        seen = {start}
        stack = [start]
        while stack:
            f = stack.pop()
            for g in neighbors[f]:
                if g not in seen:
                    seen.add(g)
                    stack.append(g)
        return len(seen) == len(members)

    def search(k):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"census exceeded {budget} nodes")
        if k == len(order):
            if final_check():
                solutions.append(tuple(sorted(f for f in order if state[f] == KEEP)))
            return
        f = order[k]
        for value in (KEEP, DROP):
            state[f] = value
            if consistent_after(f):
                search(k + 1)
        state[f] = UNDEC

    search(0)
    return sorted(set(solutions)), nodes
