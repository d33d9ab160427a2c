"""Scene files, bundled corpus, and the command-line front end."""

import os

import numpy as np
import pytest

from horizonkit.cli import main
from horizonkit.errors import SceneParseError
from horizonkit.scenes import (
    builtin_scene,
    corpus_names,
    jump_scene,
    load_scene,
    parse_scene_text,
    scene_to_text,
)

SLAB_TEXT = """\
# a slab between two walls
name = slab
dimension = 2
seed = 7
mode = intersection
box = -2 2 -2 2
primitive = half_plane nx=0 ny=1 c=1
primitive = half_plane nx=0 ny=-1 c=1
generator_seed = 0 1
harness_margins = 0.05 0.3 9.0
harness_terms = 12
"""


def test_parse_slab_text():
    scene = parse_scene_text(SLAB_TEXT)
    assert scene.name == "slab"
    assert scene.seed == 7
    assert len(scene.region.primitives) == 2
    assert scene.region.distance_to_complement(np.array([0.0, 0.0])) == 1.0
    assert len(scene.generator_seeds) == 1


def test_roundtrip_serialization():
    for name in corpus_names():
        scene = builtin_scene(name)
        text = scene_to_text(scene)
        back = parse_scene_text(text)
        assert back.name == scene.name
        assert len(back.region.primitives) == len(scene.region.primitives)
        assert scene_to_text(back) == text
        # the regions agree numerically
        rng = np.random.default_rng(1)
        (x0, x1), (y0, y1) = scene.box
        for _ in range(20):
            x = rng.uniform((x0, y0), (x1, y1))
            a = scene.region.distance_to_complement(x)
            b = back.region.distance_to_complement(x)
            assert a == pytest.approx(b, abs=1e-14)


def test_unknown_key_fatal():
    with pytest.raises(SceneParseError):
        parse_scene_text(SLAB_TEXT + "color = blue\n")


def test_unknown_primitive_fatal():
    with pytest.raises(SceneParseError):
        parse_scene_text("name = x\nprimitive = blob r=1\n")


def test_malformed_primitive_fatal():
    with pytest.raises(SceneParseError):
        parse_scene_text("name = x\nprimitive = disk cx=0 cy=0\n")
    with pytest.raises(SceneParseError):
        parse_scene_text("name = x\nprimitive = disk cx=0 cy=0 r=1 q=2\n")


def test_builtin_names():
    assert set(corpus_names()) == {"half_plane", "slab", "disk", "two_disks",
                                   "ellipse", "jump"}
    with pytest.raises(SceneParseError):
        builtin_scene("nonexistent")


def test_jump_scene_graph_roundtrip():
    scene = jump_scene()
    text = scene_to_text(scene)
    back = parse_scene_text(text)
    x = np.array([0.1, -0.5])
    assert back.region.distance_to_complement(x) == pytest.approx(
        scene.region.distance_to_complement(x), abs=1e-14)


# -- CLI -------------------------------------------------------------------

def test_cli_horizon_and_determinism(tmp_path):
    out1 = tmp_path / "a"
    out2 = tmp_path / "b"
    assert main(["horizon", "slab", "--grid", "15", "--out", str(out1)]) == 0
    assert main(["horizon", "slab", "--grid", "15", "--out", str(out2)]) == 0
    csv1 = (out1 / "slab_horizon.csv").read_bytes()
    csv2 = (out2 / "slab_horizon.csv").read_bytes()
    assert csv1 == csv2
    assert (out1 / "slab_horizon.svg").exists()
    header = csv1.decode().splitlines()[0]
    assert header == "x,y,rho"


def test_cli_generators(tmp_path):
    out = tmp_path / "gen"
    assert main(["generators", "two_disks", "--out", str(out)]) == 0
    text = (out / "two_disks_generators.csv").read_text()
    lines = text.splitlines()
    assert lines[0].startswith("foot_x,foot_y")
    assert "half-open-at-future" in lines[1]


def test_cli_classify(tmp_path):
    out = tmp_path / "cls"
    assert main(["classify", "slab", "--samples", "8", "--out", str(out)]) == 0
    text = (out / "slab_profile_0.csv").read_text()
    assert text.splitlines()[0].startswith("u,base_x,base_y,height")
    assert "NotDifferentiable" in text


def test_cli_bad_scene_file_exits_2(tmp_path):
    bad = tmp_path / "bad.scene"
    bad.write_text("name = broken\nprimitive = disk cx=0 cy=0\n")
    assert main(["horizon", str(bad), "--out", str(tmp_path / "o")]) == 2


def test_cli_scene_file_loading(tmp_path):
    path = tmp_path / "myslab.scene"
    path.write_text(SLAB_TEXT)
    scene = load_scene(str(path))
    assert scene.name == "slab"
    out = tmp_path / "out"
    assert main(["generators", str(path), "--out", str(out)]) == 0
    assert (out / "slab_generators.csv").exists()


def test_cli_harness_on_control(tmp_path):
    out = tmp_path / "h"
    code = main(["harness", "two_disks", "--out", str(out)])
    assert code == 0
    text = (out / "two_disks_harness.csv").read_text()
    assert text.splitlines()[0].startswith("n,q_x,q_y,q_t")
    assert (out / "two_disks_harness_scene.svg").exists()
    assert (out / "two_disks_harness_chord.svg").exists()


def test_cli_lmodel_half_plane(tmp_path):
    out = tmp_path / "lm"
    code = main(["lmodel", "half_plane", "--radius", "0.3", "--plane", "0.4",
                 "--out", str(out)])
    assert code == 0
    assert (out / "half_plane_lmodel.csv").exists()
