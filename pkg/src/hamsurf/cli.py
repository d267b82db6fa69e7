"""Command line surface: one subcommand per claim family.

Every subcommand emits a list of certificates (JSON by default, or a text
table) and exits nonzero iff any certificate fails.  ``check-all`` runs
everything.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from pathlib import Path

from . import __version__
from .certs import check, error_certificate, to_json, to_text
from .charts import (ChartError, build_S, build_Sprime, build_V,
                     flat_piece_census, load_charts, load_default_charts)
from .cellmap import theta_maps, verify_theta_relations, automorphism_group
from .census import BudgetExceeded, count_surfaces_exhaustive
from .corecomplex import (LOZENGE, TRIANGLE, link_circle_length,
                          surface_report, validate_complex)
from .cover import expand_to_radius, restrict_ball, serialize_ball, verify_cover
from .hamgraph import (angular_girth, classify_cycle, CycleType,
                       enumerate_hamiltonian_cycles, is_vertex_transitive,
                       labeled_isomorphic, moebius_ladder, parse_graph_file)
from .surfaces import (is_hamiltonian, periodicity_check, propagate_surface,
                       vertex_trace_types)

MAX_RADIUS = 3


def _load(args):
    if args.charts:
        return load_charts(args.charts)
    return load_default_charts()


def cmd_check_ladder(args):
    certs = []
    L = moebius_ladder()
    cycles = enumerate_hamiltonian_cycles(L)
    by_rungs = Counter(c.rung_count for c in cycles)
    certs.append(check(
        "the ladder carries exactly five Hamiltonian cycles",
        "ladder.census", len(cycles) == 5 and by_rungs == Counter({0: 1, 2: 4}),
        {"count": len(cycles), "by_rung_count": dict(by_rungs)}))
    types = Counter(classify_cycle(c).value for c in cycles)
    certs.append(check(
        "cycle types split one/two/two with none unclassified",
        "ladder.types", types == Counter({"type1": 1, "type2": 2, "type3": 2}),
        {"types": dict(types)}))
    structure = _ladder_rung_structure(L, cycles)
    certs.append(check(
        "every two-rung cycle omits two consecutive rungs",
        "ladder.omitted-rungs", structure["omitted_consecutive"],
        structure))
    certs.append(check(
        "used rungs sit three rim edges apart on both arcs",
        "ladder.used-rung-distance", structure["used_distance_three"],
        structure))
    parity = _tutte_parity(L, cycles)
    certs.append(check(
        "every edge lies on an even number of Hamiltonian cycles",
        "ladder.edge-parity", parity["even"], parity))
    certs.append(check(
        "the unlabeled ladder is vertex transitive",
        "ladder.vertex-transitive", is_vertex_transitive(L), {}))
    certs.append(check(
        "angular girth of the ladder is six units",
        "ladder.girth", angular_girth(L) == 6, {"girth": angular_girth(L)}))
    try:
        coxeter_path = args.coxeter
        if coxeter_path:
            text = Path(coxeter_path).read_text()
        else:
            from importlib import resources
            text = resources.files("hamsurf.data").joinpath("coxeter.graph").read_text()
        g = parse_graph_file(text)
        n_cycles = len(enumerate_hamiltonian_cycles(g))
        certs.append(check(
            "the 28-vertex cubic girth-7 graph has no Hamiltonian cycle",
            "ladder.coxeter", n_cycles == 0,
            {"nodes": g.node_count(), "cycles": n_cycles}))
    except (OSError, ValueError) as exc:
        certs.append(error_certificate(
            "the 28-vertex cubic girth-7 graph has no Hamiltonian cycle",
            "ladder.coxeter", str(exc)))
    return certs


def _ladder_rung_structure(L, cycles):
    rim = {}
    for (u, v, _lbl, _tag) in L.edges:
        if frozenset((u, v)) not in L.rungs:
            rim.setdefault(u, set()).add(v)
            rim.setdefault(v, set()).add(u)
    omitted_ok = True
    used_ok = True
    for c in (c for c in cycles if c.rung_count == 2):
        used, omitted = set(), set()
        cyc_edges = {frozenset((L.edges[i][0], L.edges[i][1])) for i in c.edge_indices}
        for rung in L.rungs:
            (used if rung in cyc_edges else omitted).add(rung)
        # omitted pair consecutive: endpoints joined by single rim edges
        (a1, a2), (b1, b2) = (sorted(r) for r in sorted(omitted, key=sorted))
        joined = ((b1 in rim[a1] and b2 in rim[a2]) or (b2 in rim[a1] and b1 in rim[a2]))
        omitted_ok = omitted_ok and joined
        # used pair: the two cycle arcs between the rungs are 3 rim edges
        arc_edges = [e for e in cyc_edges if e not in used]
        used_ok = used_ok and len(arc_edges) == 6 and _arcs_of_three(L, cyc_edges, used)
    return {"omitted_consecutive": omitted_ok, "used_distance_three": used_ok}


def _arcs_of_three(L, cyc_edges, used_rungs):
    adj = {}
    for e in cyc_edges:
        u, v = tuple(e)
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    start = sorted(adj, key=str)[0]
    seq = [start]
    prev = None
    while True:
        nxt = [w for w in adj[seq[-1]] if w != prev]
        prev = seq[-1]
        seq.append(nxt[0])
        if seq[-1] == start:
            break
    # split the cycle at the used rungs and measure the two arcs
    marks = [i for i in range(len(seq) - 1)
             if frozenset((seq[i], seq[i + 1])) in used_rungs]
    if len(marks) != 2:
        return False
    arc1 = marks[1] - marks[0] - 1
    arc2 = (len(seq) - 1) - arc1 - 2
    return arc1 == 3 and arc2 == 3


def _tutte_parity(L, cycles):
    counts = Counter()
    for c in cycles:
        for i in c.edge_indices:
            counts[i] += 1
    return {"even": all(v % 2 == 0 for v in counts.values()),
            "per_edge": sorted(counts.values())}


def cmd_check_quotient(args):
    certs = []
    try:
        cd = _load(args)
    except (ChartError, OSError) as exc:
        return [error_certificate("chart fixture loads", "quotient.fixture", str(exc))]
    d = cd.digest
    certs.append(check(
        "chart fixture has 12 edges, 3 vertices, 4 triangles, 9 lozenge records",
        "quotient.fixture", len(cd.edges) == 12 and len(cd.vertices) == 3
        and len(cd.triangles) == 4 and len(cd.lozenge_records()) == 9,
        {"edges": len(cd.edges), "vertices": len(cd.vertices),
         "triangles": len(cd.triangles), "lozenge_records": len(cd.lozenge_records())}, d))
    V = build_V(cd)
    S = build_S(cd)
    Sp = build_Sprime(cd)
    certs.append(check(
        "the ten-face complex passes validation",
        "quotient.valid", not validate_complex(V), {}, d))
    rep = surface_report(S)
    lengths = {v: link_circle_length(S, v) for v in S.vertices}
    certs.append(check(
        "S is a closed surface with Euler characteristic -2",
        "quotient.surface", rep.is_closed_surface and rep.euler_characteristic == -2,
        {"closed": rep.is_closed_surface, "chi": rep.euler_characteristic}, d))
    certs.append(check(
        "every link of S is one circle of angular length 10 units",
        "quotient.links-ten", all(n == 10 for n in lengths.values()),
        {"lengths": lengths}, d))
    certs.append(check(
        "S is orientable of genus two",
        "quotient.genus", bool(rep.orientable) and rep.genus_or_crosscaps == 2,
        {"orientable": rep.orientable, "genus_or_crosscaps": rep.genus_or_crosscaps},
        d))
    rep_p = surface_report(Sp)
    certs.append(check(
        "S' matches the surface report of S",
        "quotient.sibling", rep_p == rep,
        {"chi": rep_p.euler_characteristic, "closed": rep_p.is_closed_surface}, d))
    degrees = {sym: V.edge_face_degree(sym) for sym in V.edges}
    certs.append(check(
        "every edge of V lies on exactly three faces",
        "quotient.order-two", all(v == 3 for v in degrees.values()),
        {"degrees": sorted(set(degrees.values()))}, d))
    L = moebius_ladder()
    link_ok = {v: labeled_isomorphic(V.vertex_link(v), L) is not None for v in V.vertices}
    certs.append(check(
        "every vertex link of V is the labeled Moebius ladder",
        "quotient.links-ladder", all(link_ok.values()), {"links": link_ok}, d))
    pieces = flat_piece_census(V)
    kinds = sorted(p["kind"] or "?" for p in pieces)
    certs.append(check(
        "the lozenge pairs close into two tori and one Klein bottle",
        "quotient.flat-pieces", kinds == ["klein_bottle", "torus", "torus"],
        {"pieces": {" ".join(p["faces"]): p["kind"] for p in pieces}}, d))
    shared = set(S.faces) & set(Sp.faces)
    certs.append(check(
        "S and S' intersect exactly in the four triangles",
        "quotient.intersection", shared == set(cd.triangles),
        {"shared": sorted(shared)}, d))
    return certs


def cmd_check_cover(args):
    certs = []
    try:
        cd = _load(args)
    except (ChartError, OSError) as exc:
        return [error_certificate("chart fixture loads", "cover.fixture", str(exc))]
    radius = args.radius
    if radius > MAX_RADIUS:
        return [error_certificate(
            "expansion radius within configured cap", "cover.radius",
            f"radius {radius} exceeds cap {MAX_RADIUS}", cd.digest)]
    V = build_V(cd)
    d = cd.digest
    for base in V.vertices:
        ball = expand_to_radius(V, base, radius)
        rep = verify_cover(ball)
        certs.append(check(
            f"ball of radius {radius} from {base} verifies as a cover chunk",
            "cover.verify", rep["ok"],
            {"base": base, "cells": rep["cells"],
             "interior_vertices": rep["interior_vertex_count"],
             "problems": rep["problems"][:5]}, d))
        girths = {v: row.get("girth") for v, row in rep["vertices"].items()
                  if row["interior"]}
        certs.append(check(
            f"interior links from {base} have angular girth six",
            "cover.girth", all(g == 6 for g in girths.values()),
            {"base": base, "girths": sorted(set(girths.values()))}, d))
        if radius >= 1:
            smaller = expand_to_radius(V, base, radius - 1)
            again = restrict_ball(ball, radius - 1)
            certs.append(check(
                f"restricting the radius-{radius} ball reproduces radius {radius-1}",
                "cover.idempotent",
                serialize_ball(again) == serialize_ball(smaller),
                {"base": base}, d))
    return certs


def cmd_find_surfaces(args):
    certs = []
    try:
        cd = _load(args)
    except (ChartError, OSError) as exc:
        return [error_certificate("chart fixture loads", "surfaces.fixture", str(exc))]
    radius = args.radius
    if radius > MAX_RADIUS:
        return [error_certificate(
            "expansion radius within configured cap", "surfaces.radius",
            f"radius {radius} exceeds cap {MAX_RADIUS}", cd.digest)]
    V = build_V(cd)
    d = cd.digest
    ball = expand_to_radius(V, V.vertices[0], radius)
    cx = ball.complex
    seeds = [f for f in cx.face_ids() if cx.faces[f].kind == LOZENGE
             and any(cx.src(oe) in ball.interior_vertices for oe in cx.faces[f].word)]
    surfaces = {}
    for seed in seeds:
        for choice in ("with", "other"):
            fs = propagate_surface(ball, seed, choice)
            surfaces[tuple(sorted(fs.members))] = fs
    certs.append(check(
        "propagation finds exactly two surfaces over all seeds and choices",
        "surfaces.two", len(surfaces) == 2,
        {"radius": radius, "seeds": len(seeds), "surfaces": len(surfaces)}, d))
    ham = {key: is_hamiltonian(fs)[0] for key, fs in surfaces.items()}
    certs.append(check(
        "both propagated face sets are interior-Hamiltonian",
        "surfaces.hamiltonian", all(ham.values()), {"ok": sorted(ham.values())}, d))
    types = set()
    for fs in surfaces.values():
        types |= {t.value for t in vertex_trace_types(fs).values()}
    certs.append(check(
        "every vertex trace of both surfaces is a type-3 cycle",
        "surfaces.type-three", types == {"type3"}, {"types": sorted(types)}, d))
    tris = {f for f in cx.face_ids() if cx.faces[f].kind == TRIANGLE
            and all(cx.src(oe) in ball.interior_vertices for oe in cx.faces[f].word)}
    certs.append(check(
        "both surfaces contain every interior triangle",
        "surfaces.triangles",
        all(tris <= fs.members for fs in surfaces.values()),
        {"interior_triangles": len(tris)}, d))
    projections = sorted(periodicity_check(ball, fs) for fs in surfaces.values())
    certs.append(check(
        "the two surfaces project onto S and S', one each",
        "surfaces.periodicity", projections == ["S", "S'"],
        {"projections": projections}, d))
    if radius <= 2:
        try:
            sols, nodes = count_surfaces_exhaustive(ball, budget=args.budget)
            certs.append(check(
                "the exhaustive census returns the same two face sets",
                "surfaces.census", set(sols) == set(surfaces),
                {"solutions": len(sols), "nodes": nodes}, d))
        except BudgetExceeded as exc:
            certs.append(error_certificate(
                "the exhaustive census returns the same two face sets",
                "surfaces.census", str(exc), d))
    else:
        certs.append(error_certificate(
            "the exhaustive census returns the same two face sets",
            "surfaces.census", f"census capped at radius 2, got {radius}", d))
    return certs


def cmd_check_aut(args):
    certs = []
    try:
        cd = _load(args)
    except (ChartError, OSError) as exc:
        return [error_certificate("chart fixture loads", "aut.fixture", str(exc))]
    V = build_V(cd)
    d = cd.digest
    group = automorphism_group(V)
    rep = verify_theta_relations(V, group)
    certs.append(check(
        "the automorphism group of V has order eight",
        "aut.order", rep["group_order"] == 8,
        {"order": rep["group_order"]}, d))
    certs.append(check(
        "every automorphism is an involution or the identity",
        "aut.exponent-two", rep["exponent_two"],
        {"element_orders": rep["element_orders"]}, d))
    certs.append(check(
        "the three involution tables are automorphisms of V",
        "aut.tables", all(rep["members"].values()) and all(rep["involutive"].values()),
        {"members": rep["members"], "involutive": rep["involutive"]}, d))
    certs.append(check(
        "the three tables generate the whole group",
        "aut.generate", rep["generates_group"],
        {"generated_order": rep["generated_order"]}, d))
    certs.append(check(
        "all pairs of the three tables commute",
        "aut.commute", rep["all_pairs_commute"], {"pairs": rep["commute"]}, d))
    thetas = theta_maps(V)
    s_faces = set(cd.surface_faces("S"))
    image = {thetas["theta2"].face_map[f] for f in s_faces}
    certs.append(check(
        "the arrow-reversing involution carries S onto S'",
        "aut.swap", image == set(cd.surface_faces("S'")),
        {"image": sorted(image),
         "triangle_action": {k: v for k, v in thetas["theta2"].face_map.items()
                             if k in cd.triangles}}, d))
    return certs


COMMANDS = {
    "check-ladder": cmd_check_ladder,
    "check-quotient": cmd_check_quotient,
    "check-cover": cmd_check_cover,
    "find-surfaces": cmd_find_surfaces,
    "check-aut": cmd_check_aut,
}


def cmd_check_all(args):
    certs = []
    for name in ("check-ladder", "check-quotient", "check-cover",
                 "find-surfaces", "check-aut"):
        certs.extend(COMMANDS[name](args))
    return certs


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hamsurf",
        description="verify the finite claims about the quotient complex V, "
                    "its covering balls and its Hamiltonian surfaces")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in list(COMMANDS) + ["check-all"]:
        p = sub.add_parser(name)
        p.add_argument("--charts", default=None,
                       help="chart fixture path (default: shipped fixture)")
        p.add_argument("--radius", type=int, default=2,
                       help="ball radius for cover/surface checks (default 2)")
        p.add_argument("--budget", type=int, default=10**8,
                       help="backtracking node budget for the census")
        p.add_argument("--coxeter", default=None,
                       help="path to the 28-vertex graph fixture")
        p.add_argument("--out", default=None,
                       help="directory to write <command>.json into")
        p.add_argument("--format", choices=("json", "text"), default="json")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    runner = COMMANDS.get(args.command, cmd_check_all)
    certs = runner(args)
    rendered = to_json(certs) if args.format == "json" else to_text(certs)
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / f"{args.command}.json").write_text(to_json(certs))
    sys.stdout.write(rendered)
    return 0 if all(c.ok() for c in certs) else 1


if __name__ == "__main__":
    sys.exit(main())
