import hashlib

import pytest

from hamsurf.corecomplex import Complex2, validate_complex
from hamsurf.cover import (Ball, ball_census, ball_isomorphisms, base_ball,
                           expand_ball, expand_to_radius, restrict_ball,
                           serialize_ball, verify_cover)
from hamsurf.hamgraph import angular_girth, labeled_isomorphic


def test_base_ball(V):
    b0 = base_ball(V, "Q")
    assert b0.radius == 0
    assert len(b0.complex.vertices) == 1
    assert not b0.complex.edges and not b0.complex.faces
    assert b0.vertex_image[b0.base] == "Q"
    assert ball_census(b0) == {0: {"vertices": 1, "edges": 0, "triangles": 0, "lozenges": 0}}
    with pytest.raises(KeyError):
        base_ball(V, "nope")


def test_first_star(V, ball1):
    assert ball1.radius == 1
    census = ball_census(ball1)
    assert census[0]["triangles"] == 4
    assert census[0]["lozenges"] == 8
    assert len(ball1.complex.faces) == 12
    assert len(ball1.complex.vertices) == 17
    assert len(ball1.complex.edges) == 28
    assert ball1.interior_vertices == {ball1.base}
    rep = verify_cover(ball1)
    assert rep["ok"], rep["problems"]
    assert rep["interior_vertex_count"] == 1


def test_base_link_is_ladder(V, ball1, ladder):
    link = ball1.complex.vertex_link(ball1.base)
    assert labeled_isomorphic(link, ladder) is not None
    assert angular_girth(link) == 6


def test_radius_two(V, ball2):
    rep = verify_cover(ball2)
    assert rep["ok"], rep["problems"]
    assert rep["interior_vertex_count"] == 9
    cells = rep["cells"]
    assert cells == {"vertices": 81, "edges": 156, "faces": 76}
    # contractible chunk
    assert cells["vertices"] - cells["edges"] + cells["faces"] == 1


def test_interior_stars(V, ball2):
    cx = ball2.complex
    for v in ball2.interior_vertices:
        faces = {f for f, _i in cx.corners_at(v)}
        kinds = [cx.faces[f].kind for f in faces]
        assert len(faces) == 12
        assert kinds.count("triangle") == 4
        assert kinds.count("lozenge") == 8
    for eid in ball2.interior_edges:
        assert len(cx.edge_sides(eid)) == 3


def test_ball_complex_is_valid(ball2):
    assert validate_complex(ball2.complex) == []


def test_covering_map_commutes(V, ball2):
    cx = ball2.complex
    for eid, (s, t) in cx.edges.items():
        sym = ball2.edge_image[eid]
        assert ball2.vertex_image[s] == V.src((sym, 1))
        assert ball2.vertex_image[t] == V.tgt((sym, 1))
    for fid in cx.face_ids():
        img_word = tuple(ball2.map_oedge(oe) for oe in cx.faces[fid].word)
        assert img_word == tuple(V.faces[ball2.face_image[fid]].word)


def test_idempotent_restriction(V, ball1, ball2):
    assert serialize_ball(restrict_ball(ball2, 1)) == serialize_ball(ball1)
    b0 = base_ball(V, "P")
    assert serialize_ball(restrict_ball(ball1, 0)) == serialize_ball(b0)


def test_radius_three_verifies_and_restricts(V, ball2):
    b3 = expand_ball(ball2)
    assert b3.radius == 3
    rep = verify_cover(b3)
    assert rep["ok"], rep["problems"][:3]
    assert serialize_ball(restrict_ball(b3, 2)) == serialize_ball(ball2)


def test_serialization_deterministic(V):
    a = serialize_ball(expand_to_radius(V, "P", 2))
    b = serialize_ball(expand_to_radius(V, "P", 2))
    assert a == b


def test_census_regression(ball2):
    # frozen after the first verified run
    census = ball_census(ball2)
    assert census[0] == {"vertices": 1, "edges": 8, "triangles": 4, "lozenges": 8}
    assert census[1] == {"vertices": 8, "edges": 52, "triangles": 24, "lozenges": 40}
    assert census[2] == {"vertices": 40, "edges": 96, "triangles": 0, "lozenges": 0}
    assert census[3] == {"vertices": 32, "edges": 0, "triangles": 0, "lozenges": 0}
    digest = hashlib.sha256(serialize_ball(ball2).encode()).hexdigest()
    assert digest == BALL2_DIGEST


# value frozen from the first verified expansion of the shipped fixture
BALL2_DIGEST = "9c1abfb4941b6de58621fd5bcc272ea3c5536ff52e8c85ae06ed7a700226afdb"


def test_base_vertex_independence(V):
    balls = {v: expand_to_radius(V, v, 2) for v in V.vertices}
    for a in V.vertices:
        for b in V.vertices:
            isos = ball_isomorphisms(balls[a], balls[b], limit=1)
            assert isos, (a, b)
            from hamsurf.cellmap import check_cellmap
            assert check_cellmap(isos[0]) == []


def test_base_vertex_independence_radius_one(V):
    balls = {v: expand_to_radius(V, v, 1) for v in V.vertices}
    assert ball_isomorphisms(balls["P"], balls["Q"], limit=1)
    assert ball_isomorphisms(balls["Q"], balls["R"], limit=1)


def _delete_face(ball, fid):
    """A ball with one face removed (interior flags recomputed)."""
    cx = ball.complex
    faces = [cx.faces[f] for f in cx.face_ids() if f != fid]
    cx2 = Complex2(cx.vertices, dict(cx.edges), faces)
    imgs = {f: ball.face_image[f] for f in cx2.faces}
    return Ball(cx2, ball.v_complex, ball.base, ball.radius,
                ball.vertex_image, ball.edge_image, imgs)


def test_deleted_face_fails_verification(ball1):
    fid = ball1.complex.face_ids()[0]
    broken = _delete_face(ball1, fid)
    rep = verify_cover(broken)
    assert not rep["ok"]
    assert any("complete star" in p for p in rep["problems"])


def test_restrict_rejects_larger_radius(ball1):
    with pytest.raises(ValueError):
        restrict_ball(ball1, 5)
