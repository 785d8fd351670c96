"""JSON encodings of instances: matrices, complexes, grids, crosses,
snake inputs and representation sequences.

Grid lattice keys are 1-based "i,j" strings.  Prime-field entries are plain
integers reduced into [0, p); rational entries are integers or "num/den"
strings.  Encoders are deterministic so identical values serialize to
identical bytes.
"""

from __future__ import annotations

import json

from .complexes import ChainComplex
from .errors import FormatError
from .fields import Field, field_from_json, field_to_json
from .grids import Grid, StaircaseShape
from .linalg import LinearMap
from .quiverhom import (
    Quiver,
    Representation,
    RepMap,
    RightExactSequence,
    ShortExactSequence,
)
from .snake import SnakeInput


def matrix_to_json(m: LinearMap) -> dict:
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[m.field.scalar_to_json(x) for x in row] for row in m.data],
    }


def matrix_from_json(field: Field, obj, where: str = "matrix") -> LinearMap:
    if not isinstance(obj, dict) or not {"rows", "cols", "entries"} <= set(obj):
        raise FormatError(f"{where}: expected an object with rows/cols/entries")
    rows, cols = int(obj["rows"]), int(obj["cols"])
    entries = obj["entries"]
    if len(entries) != rows or any(len(r) != cols for r in entries):
        raise FormatError(f"{where}: entries do not match the declared shape")
    try:
        return LinearMap.from_rows(field, entries, rows, cols)
    except FormatError as exc:
        raise FormatError(f"{where}: {exc}") from exc


def complex_to_json(c: ChainComplex) -> dict:
    return {
        "field": field_to_json(c.field),
        "dims": list(c.dims),
        "maps": [matrix_to_json(m) for m in c.maps],
    }


def complex_from_json(obj, field_override: Field | None = None) -> ChainComplex:
    field = field_override or field_from_json(obj.get("field"))
    dims = [int(d) for d in obj.get("dims", [])]
    maps = [matrix_from_json(field, m, where=f"maps[{i}]")
            for i, m in enumerate(obj.get("maps", []))]
    return ChainComplex(field, dims, maps)


def _cell_key(cell) -> str:
    return f"{cell[0] + 1},{cell[1] + 1}"


def _parse_cell(key: str, where: str):
    try:
        i, j = key.split(",")
        cell = (int(i) - 1, int(j) - 1)
    except ValueError as exc:
        raise FormatError(f"{where}: bad lattice key {key!r}, expected \"i,j\"") from exc
    if cell[0] < 0 or cell[1] < 0:
        raise FormatError(f"{where}: lattice keys are 1-based, got {key!r}")
    return cell


def grid_to_json(g: Grid) -> dict:
    return {
        "field": field_to_json(g.field),
        "shape": list(g.shape.row_lengths),
        "spaces": {_cell_key(c): d for c, d in sorted(g.dims.items())},
        "hmaps": {_cell_key(c): matrix_to_json(m) for c, m in sorted(g.hmaps.items())},
        "vmaps": {_cell_key(c): matrix_to_json(m) for c, m in sorted(g.vmaps.items())},
        "orientation": g.orientation,
    }


def grid_from_json(obj, field_override: Field | None = None) -> Grid:
    if not isinstance(obj, dict):
        raise FormatError("grid: expected a JSON object")
    field = field_override or field_from_json(obj.get("field"))
    shape = StaircaseShape(obj.get("shape", []))
    spaces = {_parse_cell(k, "spaces"): int(v)
              for k, v in obj.get("spaces", {}).items()}
    hmaps = {_parse_cell(k, "hmaps"): matrix_from_json(field, m, where=f"hmaps[{k}]")
             for k, m in obj.get("hmaps", {}).items()}
    vmaps = {_parse_cell(k, "vmaps"): matrix_from_json(field, m, where=f"vmaps[{k}]")
             for k, m in obj.get("vmaps", {}).items()}
    orientation = obj.get("orientation", "kernel")
    return Grid(field, shape, spaces, hmaps, vmaps, orientation)


_SNAKE_KEYS = ("f", "g", "fp", "gp", "alpha", "beta", "gamma")


def snake_to_json(inp: SnakeInput) -> dict:
    out = {"field": field_to_json(inp.field)}
    for key in _SNAKE_KEYS:
        out[key] = matrix_to_json(getattr(inp, key))
    return out


def snake_from_json(obj, field_override: Field | None = None) -> SnakeInput:
    if not isinstance(obj, dict):
        raise FormatError("snake: expected a JSON object")
    field = field_override or field_from_json(obj.get("field"))
    maps = {}
    for key in _SNAKE_KEYS:
        if key not in obj:
            raise FormatError(f"snake: missing map {key!r}")
        maps[key] = matrix_from_json(field, obj[key], where=key)
    return SnakeInput(**maps)


_CROSS_KEYS = ("beta1", "beta2", "f", "g")


def cross_to_json(field: Field, beta1, beta2, f, g) -> dict:
    out = {"field": field_to_json(field)}
    for key, m in zip(_CROSS_KEYS, (beta1, beta2, f, g)):
        out[key] = matrix_to_json(m)
    return out


def cross_from_json(obj, field_override: Field | None = None):
    if not isinstance(obj, dict):
        raise FormatError("cross: expected a JSON object")
    field = field_override or field_from_json(obj.get("field"))
    maps = []
    for key in _CROSS_KEYS:
        if key not in obj:
            raise FormatError(f"cross: missing map {key!r}")
        maps.append(matrix_from_json(field, obj[key], where=key))
    return tuple(maps)


def quiver_to_json(q: Quiver) -> dict:
    return {"vertices": q.vertex_count, "arrows": [list(a) for a in q.arrows]}


def quiver_from_json(obj) -> Quiver:
    if not isinstance(obj, dict) or "vertices" not in obj:
        raise FormatError("quiver: expected an object with vertices/arrows")
    return Quiver(int(obj["vertices"]), obj.get("arrows", []))


def representation_to_json(r: Representation) -> dict:
    return {
        "quiver": quiver_to_json(r.quiver),
        "dims": list(r.vertex_dims),
        "maps": [matrix_to_json(m) for m in r.arrow_maps],
    }


def representation_from_json(field: Field, quiver: Quiver, obj, where: str) -> Representation:
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected an object with dims/maps")
    dims = [int(d) for d in obj.get("dims", [])]
    maps = [matrix_from_json(field, m, where=f"{where}.maps[{i}]")
            for i, m in enumerate(obj.get("maps", []))]
    return Representation(field, quiver, dims, maps)


def _rep_map_from_json(field, source, target, obj, where):
    if not isinstance(obj, list):
        raise FormatError(f"{where}: expected a list of per-vertex matrices")
    comps = [matrix_from_json(field, m, where=f"{where}[{v}]") for v, m in enumerate(obj)]
    return RepMap(source, target, comps)


def short_exact_to_json(seq: ShortExactSequence) -> dict:
    return {
        "field": field_to_json(seq.first.field),
        "quiver": quiver_to_json(seq.first.quiver),
        "A": {"dims": seq.first.vertex_dims,
              "maps": [matrix_to_json(m) for m in seq.first.arrow_maps]},
        "B": {"dims": seq.middle.vertex_dims,
              "maps": [matrix_to_json(m) for m in seq.middle.arrow_maps]},
        "C": {"dims": seq.last.vertex_dims,
              "maps": [matrix_to_json(m) for m in seq.last.arrow_maps]},
        "incl": [matrix_to_json(m) for m in seq.incl.components],
        "g": [matrix_to_json(m) for m in seq.proj.components],
    }


def short_exact_from_json(obj, field_override: Field | None = None) -> ShortExactSequence:
    if not isinstance(obj, dict):
        raise FormatError("sequence: expected a JSON object")
    field = field_override or field_from_json(obj.get("field"))
    quiver = quiver_from_json(obj.get("quiver"))
    first = representation_from_json(field, quiver, obj.get("A"), "A")
    middle = representation_from_json(field, quiver, obj.get("B"), "B")
    last = representation_from_json(field, quiver, obj.get("C"), "C")
    incl = _rep_map_from_json(field, first, middle, obj.get("incl"), "incl")
    proj = _rep_map_from_json(field, middle, last, obj.get("g"), "g")
    return ShortExactSequence(first, middle, last, incl, proj)


def right_exact_to_json(seq: RightExactSequence) -> dict:
    return {
        "field": field_to_json(seq.first.field),
        "quiver": quiver_to_json(seq.first.quiver),
        "X": {"dims": seq.first.vertex_dims,
              "maps": [matrix_to_json(m) for m in seq.first.arrow_maps]},
        "Y": {"dims": seq.middle.vertex_dims,
              "maps": [matrix_to_json(m) for m in seq.middle.arrow_maps]},
        "Z": {"dims": seq.last.vertex_dims,
              "maps": [matrix_to_json(m) for m in seq.last.arrow_maps]},
        "u": [matrix_to_json(m) for m in seq.map.components],
        "proj": [matrix_to_json(m) for m in seq.proj.components],
    }


def right_exact_from_json(obj, field_override: Field | None = None) -> RightExactSequence:
    if not isinstance(obj, dict):
        raise FormatError("sequence: expected a JSON object")
    field = field_override or field_from_json(obj.get("field"))
    quiver = quiver_from_json(obj.get("quiver"))
    first = representation_from_json(field, quiver, obj.get("X"), "X")
    middle = representation_from_json(field, quiver, obj.get("Y"), "Y")
    last = representation_from_json(field, quiver, obj.get("Z"), "Z")
    umap = _rep_map_from_json(field, first, middle, obj.get("u"), "u")
    proj = _rep_map_from_json(field, middle, last, obj.get("proj"), "proj")
    return RightExactSequence(first, middle, last, umap, proj)


def dump(obj, path: str):
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_file(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}") from exc
    except OSError as exc:
        raise FormatError(f"{path}: {exc}") from exc
