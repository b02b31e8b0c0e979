"""Instance files, hashing and diagram import/export.

Instance files are JSON objects::

    {"vertices": n,
     "maximal_simplices": [[ids...], ...],
     "certificates": {"simply_connected": "disc" | "ball" | "cone" | null},
     "subcomplexes": {"name": [ids...]},          # optional
     "boundary_cycle": [ids...],                   # optional
     "coordinates": [[x, y], ...],                 # optional, lattice points
     "metadata": {...}}                            # optional

Malformed input raises :class:`InvalidInput` whose message starts with a
JSON-path style location such as ``$.maximal_simplices[3][1]``.
"""
from __future__ import annotations

import hashlib
import json
import re
from pathlib import Path

from .complex import SimplicialComplex
from .errors import InvalidInput
from .gen import Instance

__all__ = [
    "instance_to_json",
    "instance_from_json",
    "load_instance",
    "save_instance",
    "instance_hash",
    "to_dot",
    "edges_from_dot",
    "coordinates_to_complex",
]


def instance_to_json(inst: Instance) -> dict:
    X = inst.complex
    out = {
        "vertices": X.vertex_count,
        "maximal_simplices": [list(s) for s in X.maximal_simplices],
        "certificates": {"simply_connected": X.certificate},
    }
    if inst.subcomplexes:
        out["subcomplexes"] = {k: sorted(v) for k, v in inst.subcomplexes.items()}
    if inst.boundary_cycle is not None:
        out["boundary_cycle"] = list(inst.boundary_cycle)
    if inst.coordinates is not None:
        out["coordinates"] = [list(p) for p in inst.coordinates]
    if inst.metadata:
        out["metadata"] = inst.metadata
    return out


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidInput(f"{where}: expected an integer, got {json.dumps(value)}")
    return value


def _int_list(value, where: str, n: int | None = None) -> list[int]:
    if not isinstance(value, list):
        raise InvalidInput(f"{where}: expected a list")
    out = [_int(v, f"{where}[{i}]") for i, v in enumerate(value)]
    if n is not None:
        for i, v in enumerate(out):
            if not 0 <= v < n:
                raise InvalidInput(f"{where}[{i}]: vertex {v} outside 0..{n - 1}")
    return out


def instance_from_json(obj) -> Instance:
    if not isinstance(obj, dict):
        raise InvalidInput("$: expected a JSON object")
    for key in ("vertices", "maximal_simplices"):
        if key not in obj:
            raise InvalidInput(f"$: missing required field {key!r}")
    n = _int(obj["vertices"], "$.vertices")
    if n < 0:
        raise InvalidInput("$.vertices: must be non-negative")
    ms = obj["maximal_simplices"]
    if not isinstance(ms, list):
        raise InvalidInput("$.maximal_simplices: expected a list")
    simplices = []
    for i, s in enumerate(ms):
        where = f"$.maximal_simplices[{i}]"
        s = _int_list(s, where, n)
        if not s:
            raise InvalidInput(f"{where}: empty simplex")
        if len(set(s)) != len(s):
            raise InvalidInput(f"{where}: repeated vertex")
        simplices.append(tuple(sorted(s)))
    cert = None
    certs = obj.get("certificates", {})
    if certs is not None:
        if not isinstance(certs, dict):
            raise InvalidInput("$.certificates: expected an object")
        cert = certs.get("simply_connected")
        if cert not in (None, "disc", "ball", "cone"):
            raise InvalidInput(f"$.certificates.simply_connected: unknown certificate {cert!r}")
    try:
        X = SimplicialComplex(n, tuple(simplices), cert)
    except InvalidInput as exc:
        raise InvalidInput(f"$.maximal_simplices: {exc}") from None
    subs = {}
    raw = obj.get("subcomplexes", {}) or {}
    if not isinstance(raw, dict):
        raise InvalidInput("$.subcomplexes: expected an object")
    for name, verts in raw.items():
        subs[name] = _int_list(verts, f"$.subcomplexes.{name}", n)
    boundary = obj.get("boundary_cycle")
    if boundary is not None:
        boundary = _int_list(boundary, "$.boundary_cycle", n)
    coords = obj.get("coordinates")
    if coords is not None:
        if not isinstance(coords, list) or len(coords) != n:
            raise InvalidInput("$.coordinates: expected one [x, y] pair per vertex")
        coords = [tuple(_int_list(p, f"$.coordinates[{i}]")) for i, p in enumerate(coords)]
        for i, p in enumerate(coords):
            if len(p) != 2:
                raise InvalidInput(f"$.coordinates[{i}]: expected two integers")
    meta = obj.get("metadata", {}) or {}
    if not isinstance(meta, dict):
        raise InvalidInput("$.metadata: expected an object")
    return Instance(X, subs, boundary, coords, meta)


def load_instance(path) -> Instance:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InvalidInput(f"{path}: {exc.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    try:
        return instance_from_json(obj)
    except InvalidInput as exc:
        raise InvalidInput(f"{path}: {exc}") from None


def save_instance(inst: Instance, path) -> None:
    Path(path).write_text(json.dumps(instance_to_json(inst), indent=1, sort_keys=True) + "\n")


def instance_hash(inst: Instance) -> str:
    X = inst.complex
    core = {
        "vertices": X.vertex_count,
        "maximal_simplices": [list(s) for s in X.maximal_simplices],
        "certificate": X.certificate,
        "subcomplexes": {k: sorted(v) for k, v in sorted(inst.subcomplexes.items())},
    }
    blob = json.dumps(core, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


# -- diagrams -----------------------------------------------------------------------


def to_dot(X: SimplicialComplex, coordinates=None) -> str:
    """Graphviz description of the 1-skeleton, with lattice positions if given."""
    lines = ["graph X {"]
    for v in range(X.vertex_count):
        if coordinates is not None:
            x, y = coordinates[v]
            # axial lattice coordinates drawn with 60-degree axes
            px, py = x + y / 2, y * 0.8660254037844386
            lines.append(f'  {v} [pos="{px:.4f},{py:.4f}!"];')
        else:
            lines.append(f"  {v};")
    for a, b in X.edges:
        lines.append(f"  {a} -- {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


_DOT_EDGE = re.compile(r"^\s*(\d+)\s*--\s*(\d+)\s*;?\s*$")
_DOT_NODE = re.compile(r"^\s*(\d+)\b")


def edges_from_dot(text: str) -> tuple[int, list[tuple[int, int]]]:
    """Vertex count and edge list of a graph written by :func:`to_dot`."""
    edges = []
    n = 0
    for line in text.splitlines():
        m = _DOT_EDGE.match(line)
        if m:
            a, b = int(m.group(1)), int(m.group(2))
            edges.append((min(a, b), max(a, b)))
            n = max(n, a + 1, b + 1)
            continue
        m = _DOT_NODE.match(line)
        if m:
            n = max(n, int(m.group(1)) + 1)
    return n, sorted(edges)


def coordinates_to_complex(coords) -> SimplicialComplex:
    """Full subcomplex of the triangular lattice on the given points, in the given order."""
    pts = [tuple(p) for p in coords]
    if len(set(pts)) != len(pts):
        raise InvalidInput("coordinates repeat a lattice point")
    index = {p: i for i, p in enumerate(pts)}
    simplices = []
    for (x, y), i in index.items():
        for d in ((1, 0), (0, 1), (-1, 1)):
            j = index.get((x + d[0], y + d[1]))
            if j is not None:
                simplices.append((i, j))
        for tri in (((1, 0), (0, 1)), ((1, 0), (1, -1))):
            js = [index.get((x + d[0], y + d[1])) for d in tri]
            if None not in js:
                simplices.append((i, *js))
    return SimplicialComplex.from_simplices(simplices, len(pts))
