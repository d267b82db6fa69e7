"""Chart-file loading and construction of the quotient complexes S, S', V.

The chart format is line based:

    edge <symbol> : <v_from> -> <v_to>
    face <id> <triangle|lozenge> : <sym>[+|-] ...   (3 or 4 symbols)
    recheck <id> : <sym>[+|-] ...                   (re-transcription check)
    faceset <name> : <face id> ...

Vertices are inferred from edge declarations.  Lozenge words start at a
small corner.  ``recheck`` records must match the face record of the same
name up to rotation and reversal.  The shipped fixture describes the
ten-face quotient complex whose facesets are named S and S'.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from importlib import resources

from .corecomplex import (
    Complex2,
    Face,
    LOZENGE,
    TRIANGLE,
    subcomplex,
    surface_report,
    validate_complex,
)


class ChartError(ValueError):
    pass


@dataclass
class ChartData:
    """Parsed and validated chart file."""

    edges: dict = field(default_factory=dict)     # sym -> (src, tgt)
    triangles: dict = field(default_factory=dict)  # fid -> word
    lozenges: dict = field(default_factory=dict)   # fid -> word
    rechecks: dict = field(default_factory=dict)   # fid -> word
    facesets: dict = field(default_factory=dict)   # name -> tuple of fids
    digest: str = ""
    path: str = ""

    @property
    def vertices(self):
        verts = set()
        for s, t in self.edges.values():
            verts.add(s)
            verts.add(t)
        return sorted(verts)

    def lozenge_records(self):
        """All lozenge boundary records including the recheck copies."""
        out = [(fid, word) for fid, word in sorted(self.lozenges.items())]
        out += [(fid, word) for fid, word in sorted(self.rechecks.items())]
        return out

    def surface_faces(self, name):
        try:
            return self.facesets[name]
        except KeyError:
            raise ChartError(f"chart file declares no faceset {name!r}") from None


def _parse_word(tokens, lineno):
    word = []
    for tok in tokens:
        if len(tok) < 2 or tok[-1] not in "+-":
            raise ChartError(f"line {lineno}: bad oriented symbol {tok!r}")
        word.append((tok[:-1], 1 if tok[-1] == "+" else -1))
    return tuple(word)


def cyclic_words_equal(w1, w2):
    """True iff the boundary words agree up to rotation and reversal."""
    if len(w1) != len(w2):
        return False
    n = len(w1)
    rev = tuple((sym, -sign) for sym, sign in reversed(w1))
    for cand in (tuple(w1), rev):
        for r in range(n):
            if cand[r:] + cand[:r] == tuple(w2):
                return True
    return False


def parse_charts(text, path=""):
    """Parse chart text; raises ChartError with line numbers."""
    cd = ChartData(path=path)
    cd.digest = hashlib.sha256(text.encode()).hexdigest()
    kinds = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "edge":
            if len(parts) != 6 or parts[2] != ":" or parts[4] != "->":
                raise ChartError(f"line {lineno}: malformed edge record")
            sym, src, tgt = parts[1], parts[3], parts[5]
            if sym in cd.edges:
                raise ChartError(f"line {lineno}: duplicate edge {sym}")
            cd.edges[sym] = (src, tgt)
        elif parts[0] == "face":
            if len(parts) < 5 or parts[3] != ":":
                raise ChartError(f"line {lineno}: malformed face record")
            fid, kind = parts[1], parts[2]
            if kind not in (TRIANGLE, LOZENGE):
                raise ChartError(f"line {lineno}: unknown face kind {kind!r}")
            word = _parse_word(parts[4:], lineno)
            want = 3 if kind == TRIANGLE else 4
            if len(word) != want:
                raise ChartError(
                    f"line {lineno}: {kind} {fid} has {len(word)} sides, expected {want}")
            for sym, _sign in word:
                if sym not in cd.edges:
                    raise ChartError(f"line {lineno}: undeclared edge symbol {sym!r}")
            if fid in kinds:
                raise ChartError(f"line {lineno}: duplicate face id {fid}")
            kinds[fid] = kind
            (cd.triangles if kind == TRIANGLE else cd.lozenges)[fid] = word
        elif parts[0] == "recheck":
            if len(parts) < 4 or parts[2] != ":":
                raise ChartError(f"line {lineno}: malformed recheck record")
            fid = parts[1]
            cd.rechecks[fid] = _parse_word(parts[3:], lineno)
        elif parts[0] == "faceset":
            if len(parts) < 4 or parts[2] != ":":
                raise ChartError(f"line {lineno}: malformed faceset record")
            cd.facesets[parts[1]] = tuple(parts[3:])
        else:
            raise ChartError(f"line {lineno}: unknown record {parts[0]!r}")
    return cd


def validate_chartdata(cd):
    """Structural checks beyond per-line parsing; raises ChartError."""
    if len(cd.edges) != 12:
        raise ChartError(f"expected 12 edge symbols, found {len(cd.edges)}")
    if len(cd.vertices) != 3:
        raise ChartError(f"expected 3 vertices, found {len(cd.vertices)}")
    if len(cd.triangles) != 4:
        raise ChartError(f"expected 4 triangles, found {len(cd.triangles)}")
    if len(cd.lozenges) != 6:
        raise ChartError(f"expected 6 lozenge faces, found {len(cd.lozenges)}")
    for fid, word in cd.rechecks.items():
        if fid not in cd.lozenges:
            raise ChartError(f"recheck {fid}: no lozenge of that name")
        if not cyclic_words_equal(word, cd.lozenges[fid]):
            raise ChartError(
                f"recheck {fid}: word differs from the face record "
                f"(not a rotation or reversal)")
    use = {}
    for word in list(cd.triangles.values()) + list(cd.lozenges.values()):
        for sym, _sign in word:
            use[sym] = use.get(sym, 0) + 1
    for sym in cd.edges:
        if use.get(sym, 0) != 3:
            raise ChartError(
                f"edge {sym} used {use.get(sym, 0)} times across V, expected 3")
    for name in cd.facesets:
        tris = [f for f in cd.facesets[name] if f in cd.triangles]
        lozs = [f for f in cd.facesets[name] if f in cd.lozenges]
        unknown = [f for f in cd.facesets[name] if f not in cd.triangles and f not in cd.lozenges]
        if unknown:
            raise ChartError(f"faceset {name}: unknown faces {unknown}")
        if len(tris) != 4 or len(lozs) != 3:
            raise ChartError(
                f"faceset {name}: expected 4 triangles + 3 lozenges, "
                f"got {len(tris)} + {len(lozs)}")


def load_charts(path):
    """Load and validate a chart file from a filesystem path."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    cd = parse_charts(text, path=str(path))
    validate_chartdata(cd)
    return cd


def load_default_charts():
    """Load the chart fixture shipped inside the package."""
    text = resources.files("hamsurf.data").joinpath("brady_v.charts").read_text()
    cd = parse_charts(text, path="hamsurf.data/brady_v.charts")
    validate_chartdata(cd)
    return cd


def _build(cd, face_ids):
    faces = []
    for fid in face_ids:
        if fid in cd.triangles:
            faces.append(Face(fid, TRIANGLE, cd.triangles[fid]))
        elif fid in cd.lozenges:
            faces.append(Face(fid, LOZENGE, cd.lozenges[fid]))
        else:
            raise ChartError(f"unknown face {fid!r}")
    verts = set()
    for s, t in cd.edges.values():
        verts.add(s)
        verts.add(t)
    cx = Complex2(vertices=verts, edges=dict(cd.edges), faces=faces)
    sub = subcomplex(cx, face_ids)
    problems = validate_complex(sub)
    if problems:
        raise ChartError("chart data fails validation: " + "; ".join(problems))
    return sub


def build_S(cd):
    """The surface S: the four triangles plus the S faceset lozenges."""
    return _build(cd, cd.surface_faces("S"))


def build_Sprime(cd):
    """The sibling surface S': the same triangles plus the primed lozenges."""
    return _build(cd, cd.surface_faces("S'"))


def build_V(cd):
    """The full ten-face quotient complex."""
    return _build(cd, tuple(sorted(cd.triangles)) + tuple(sorted(cd.lozenges)))


def lozenge_families(cx):
    """Group the lozenges of V by shared edge-symbol set.

    Returns a sorted list of (family key, [fid, fid]) pairs; in V each
    family has exactly two members, one from S and one filling lozenge.
    """
    groups = {}
    for fid, face in cx.faces.items():
        if face.kind != LOZENGE:
            continue
        key = tuple(sorted(sym for sym, _sign in face.word))
        groups.setdefault(key, []).append(fid)
    return sorted((k, sorted(v)) for k, v in groups.items())


def flat_piece_census(v_complex):
    """Surface report for each unprimed/primed lozenge pair in V.

    Each pair closes up into a flat piece (every corner sum 6 units); the
    report records closedness, Euler characteristic and orientability, which
    distinguishes the tori from the Klein bottle.
    """
    out = []
    for key, fids in lozenge_families(v_complex):
        if len(fids) != 2:
            raise ValueError(f"lozenge family {key} has {len(fids)} members, expected 2")
        piece = subcomplex(v_complex, fids)
        rep = surface_report(piece)
        kind = None
        if rep.is_closed_surface and rep.euler_characteristic == 0:
            kind = "torus" if rep.orientable else "klein_bottle"
        out.append({
            "faces": tuple(fids),
            "report": rep,
            "kind": kind,
        })
    return out
