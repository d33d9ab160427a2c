"""Scene files: strict key-value descriptions of regions and run setups.

Grammar (one statement per line, ``#`` starts a comment):

    name = <identifier>
    dimension = 2
    seed = <int>
    mode = intersection | union
    box = <xmin> <xmax> <ymin> <ymax>
    primitive = half_plane nx=<f> ny=<f> c=<f>
    primitive = disk cx=<f> cy=<f> r=<f>
    primitive = anti_disk cx=<f> cy=<f> r=<f>
    primitive = ellipse cx=<f> cy=<f> a=<f> b=<f>
    primitive = polygon <x1>,<y1> <x2>,<y2> <x3>,<y3> ...
    primitive = graph height=<f> kappa_left=<f> dips=<x>:<w>:<d>;...
    generator_seed = <x> <y>
    harness_jump = <f>
    harness_margins = <f> <f> <f>
    harness_terms = <int>

Unknown keys, unknown primitive types, or malformed values are fatal, so
scene files always mean exactly what they say.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import SceneParseError
from .region import (
    AntiDisk,
    BumpBoundary,
    ConvexPolygon,
    Disk,
    EllipseRegion,
    GraphDomain,
    HalfPlane,
    Region,
)

_KNOWN_KEYS = {"name", "dimension", "seed", "mode", "box", "primitive",
               "generator_seed", "harness_jump", "harness_margins",
               "harness_terms"}


@dataclass
class Scene:
    name: str
    region: Region
    box: tuple = ((-2.0, 2.0), (-2.0, 2.0))
    time_box: tuple = (0.0, 2.0)
    seed: int = 0
    dimension: int = 2
    generator_seeds: list = field(default_factory=list)
    harness_jump: Optional[float] = None
    harness_margins: tuple = (0.05, 0.3, 9.0)
    harness_terms: int = 12


def _floats(values, n, what):
    parts = values.split()
    if len(parts) != n:
        raise SceneParseError(f"{what}: expected {n} numbers, got {values!r}")
    try:
        return [float(v) for v in parts]
    except ValueError as exc:
        raise SceneParseError(f"{what}: {exc}") from exc


def _parse_kv(parts, what, required):
    out = {}
    for p in parts:
        if "=" not in p:
            raise SceneParseError(f"{what}: expected key=value, got {p!r}")
        k, v = p.split("=", 1)
        if k in out:
            raise SceneParseError(f"{what}: duplicate key {k!r}")
        try:
            out[k] = float(v)
        except ValueError as exc:
            raise SceneParseError(f"{what}: bad number in {p!r}") from exc
    missing = required - set(out)
    extra = set(out) - required
    if missing or extra:
        raise SceneParseError(
            f"{what}: missing {sorted(missing)}, unknown {sorted(extra)}")
    return out


def _parse_primitive(spec: str):
    parts = spec.split()
    if not parts:
        raise SceneParseError("empty primitive")
    kind, args = parts[0], parts[1:]
    if kind == "half_plane":
        kv = _parse_kv(args, "half_plane", {"nx", "ny", "c"})
        return HalfPlane((kv["nx"], kv["ny"]), kv["c"])
    if kind == "disk":
        kv = _parse_kv(args, "disk", {"cx", "cy", "r"})
        return Disk((kv["cx"], kv["cy"]), kv["r"])
    if kind == "anti_disk":
        kv = _parse_kv(args, "anti_disk", {"cx", "cy", "r"})
        return AntiDisk((kv["cx"], kv["cy"]), kv["r"])
    if kind == "ellipse":
        kv = _parse_kv(args, "ellipse", {"cx", "cy", "a", "b"})
        return EllipseRegion((kv["cx"], kv["cy"]), kv["a"], kv["b"])
    if kind == "polygon":
        pts = []
        for a in args:
            xy = a.split(",")
            if len(xy) != 2:
                raise SceneParseError(f"polygon: bad vertex {a!r}")
            pts.append((float(xy[0]), float(xy[1])))
        return ConvexPolygon(pts)
    if kind == "graph":
        height = 1.0
        kappa_left = 0.0
        dips = ()
        seen = set()
        for a in args:
            if "=" not in a:
                raise SceneParseError(f"graph: expected key=value, got {a!r}")
            k, v = a.split("=", 1)
            if k in seen:
                raise SceneParseError(f"graph: duplicate key {k!r}")
            seen.add(k)
            if k == "height":
                height = float(v)
            elif k == "kappa_left":
                kappa_left = float(v)
            elif k == "dips":
                out = []
                if v:
                    for trip in v.split(";"):
                        xwd = trip.split(":")
                        if len(xwd) != 3:
                            raise SceneParseError(f"graph: bad dip {trip!r}")
                        out.append(tuple(float(t) for t in xwd))
                dips = tuple(out)
            else:
                raise SceneParseError(f"graph: unknown key {k!r}")
        return GraphDomain(BumpBoundary(height=height, kappa_left=kappa_left,
                                        dips=dips))
    raise SceneParseError(f"unknown primitive type {kind!r}")


def parse_scene_text(text: str) -> Scene:
    name = None
    dimension = 2
    seed = 0
    mode = "intersection"
    box = None
    primitives = []
    gen_seeds = []
    harness_jump = None
    harness_margins = (0.05, 0.3, 9.0)
    harness_terms = 12
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SceneParseError(f"line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _KNOWN_KEYS:
            raise SceneParseError(f"line {lineno}: unknown key {key!r}")
        if key == "name":
            name = value
        elif key == "dimension":
            dimension = int(value)
            if dimension != 2:
                raise SceneParseError("only dimension = 2 scenes are supported")
        elif key == "seed":
            seed = int(value)
        elif key == "mode":
            if value not in ("intersection", "union"):
                raise SceneParseError(f"line {lineno}: bad mode {value!r}")
            mode = value
        elif key == "box":
            v = _floats(value, 4, "box")
            box = ((v[0], v[1]), (v[2], v[3]))
        elif key == "primitive":
            primitives.append(_parse_primitive(value))
        elif key == "generator_seed":
            gen_seeds.append(np.array(_floats(value, 2, "generator_seed")))
        elif key == "harness_jump":
            harness_jump = float(value)
        elif key == "harness_margins":
            harness_margins = tuple(_floats(value, 3, "harness_margins"))
        elif key == "harness_terms":
            harness_terms = int(value)
    if name is None:
        raise SceneParseError("scene needs a name")
    if not primitives:
        raise SceneParseError("scene needs at least one primitive")
    region = Region(primitives, mode=mode, name=name)
    scene = Scene(name=name, region=region, seed=seed, dimension=dimension,
                  generator_seeds=gen_seeds, harness_jump=harness_jump,
                  harness_margins=harness_margins, harness_terms=harness_terms)
    if box is not None:
        scene.box = box
    return scene


def parse_scene_file(path) -> Scene:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_scene_text(fh.read())


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def scene_to_text(scene: Scene) -> str:
    lines = [f"name = {scene.name}",
             f"dimension = {scene.dimension}",
             f"seed = {scene.seed}",
             f"mode = {scene.region.mode}",
             "box = " + " ".join(_fmt(v) for pair in scene.box for v in pair)]
    for p in scene.region.primitives:
        lines.append("primitive = " + _primitive_to_text(p))
    for g in scene.generator_seeds:
        lines.append(f"generator_seed = {_fmt(g[0])} {_fmt(g[1])}")
    if scene.harness_jump is not None:
        lines.append(f"harness_jump = {_fmt(scene.harness_jump)}")
    lines.append("harness_margins = "
                 + " ".join(_fmt(m) for m in scene.harness_margins))
    lines.append(f"harness_terms = {scene.harness_terms}")
    return "\n".join(lines) + "\n"


def _primitive_to_text(p) -> str:
    if isinstance(p, AntiDisk):
        return (f"anti_disk cx={_fmt(p.center[0])} cy={_fmt(p.center[1])} "
                f"r={_fmt(p.radius)}")
    if isinstance(p, Disk):
        return (f"disk cx={_fmt(p.center[0])} cy={_fmt(p.center[1])} "
                f"r={_fmt(p.radius)}")
    if isinstance(p, HalfPlane):
        return (f"half_plane nx={_fmt(p.normal[0])} ny={_fmt(p.normal[1])} "
                f"c={_fmt(p.offset)}")
    if isinstance(p, EllipseRegion):
        return (f"ellipse cx={_fmt(p.center[0])} cy={_fmt(p.center[1])} "
                f"a={_fmt(p.a)} b={_fmt(p.b)}")
    if isinstance(p, ConvexPolygon):
        pts = " ".join(f"{_fmt(v[0])},{_fmt(v[1])}" for v in p.vertices)
        return f"polygon {pts}"
    if isinstance(p, GraphDomain):
        bd = p.boundary
        dips = ";".join(f"{_fmt(x)}:{_fmt(w)}:{_fmt(d)}" for x, w, d in bd.dips)
        return (f"graph height={_fmt(bd.height)} "
                f"kappa_left={_fmt(bd.kappa_left)} dips={dips}")
    raise SceneParseError(f"cannot serialize primitive {type(p).__name__}")


# ---------------------------------------------------------------------------
# bundled corpus
# ---------------------------------------------------------------------------

def half_plane_scene() -> Scene:
    region = Region([HalfPlane((0, -1), 0.0)], name="half_plane")
    return Scene(name="half_plane", region=region,
                 box=((-2.0, 2.0), (-1.0, 3.0)),
                 generator_seeds=[np.array([0.0, 0.0])])


def slab_scene() -> Scene:
    region = Region([HalfPlane((0, 1), 1.0), HalfPlane((0, -1), 1.0)],
                    name="slab")
    return Scene(name="slab", region=region, box=((-2.0, 2.0), (-2.0, 2.0)),
                 generator_seeds=[np.array([0.0, 1.0])])


def disk_scene() -> Scene:
    region = Region([Disk((0, 0), 1.0)], name="disk")
    return Scene(name="disk", region=region,
                 box=((-1.4, 1.4), (-1.4, 1.4)),
                 generator_seeds=[np.array([1.0, 0.0])])


def two_disks_scene() -> Scene:
    region = Region([AntiDisk((2, 0), 1.0), AntiDisk((-2, 0), 1.0)],
                    name="two_disks")
    return Scene(name="two_disks", region=region,
                 box=((-4.0, 4.0), (-3.0, 3.0)),
                 generator_seeds=[np.array([1.0, 0.0])],
                 harness_jump=1e-3)


def ellipse_scene() -> Scene:
    region = Region([EllipseRegion((0, 0), 2.0, 1.0)], name="ellipse")
    return Scene(name="ellipse", region=region,
                 box=((-2.4, 2.4), (-1.4, 1.4)),
                 generator_seeds=[np.array([2.0, 0.0])])


def jump_scene(eps1: float = 0.04, decay: float = 0.25,
               kappa_left: float = 1.0, n_dips: int = 6) -> Scene:
    from .classify import BumpFamilyParams
    params = BumpFamilyParams(eps1=eps1, decay=decay, n_dips=n_dips,
                              kappa_left=kappa_left)
    region = params.region()
    return Scene(name="jump", region=region,
                 box=((-1.5, 1.5), (-3.0, 1.4)),
                 generator_seeds=[np.array([0.0, 1.0])])


_BUILTIN = {
    "half_plane": half_plane_scene,
    "slab": slab_scene,
    "disk": disk_scene,
    "two_disks": two_disks_scene,
    "ellipse": ellipse_scene,
    "jump": jump_scene,
}


def corpus_names():
    return list(_BUILTIN)


def builtin_scene(name: str) -> Scene:
    if name not in _BUILTIN:
        raise SceneParseError(
            f"unknown builtin scene {name!r}; choices: {sorted(_BUILTIN)}")
    return _BUILTIN[name]()


def load_scene(spec: str) -> Scene:
    """A scene, from a bundled name or from a file path."""
    import os
    if os.path.exists(spec):
        return parse_scene_file(spec)
    return builtin_scene(spec)
