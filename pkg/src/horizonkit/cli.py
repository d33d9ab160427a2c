"""Batch front end.

Subcommands take a scene (a bundled name like ``slab`` or a scene-file
path; see scenes.py for the exact file grammar), run a pipeline, and
write CSV tables plus SVG figures under --out.  Exit codes: 0 success,
1 failed verification, 2 bad scene or arguments.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import acceptance
from . import classify as cls
from . import figures
from . import harness as hrn
from .errors import HorizonKitError, SceneParseError
from .horizon import HorizonPoint, trace_generator
from .scenes import Scene, load_scene, scene_to_text


def _write(outdir, name, text):
    os.makedirs(outdir, exist_ok=True)
    path = os.path.join(outdir, name)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return path


def _fmt(x):
    return f"{x:.17g}"


def cmd_horizon(args):
    scene = load_scene(args.scene)
    region = scene.region
    (x0, x1), (y0, y1) = scene.box
    n = args.grid
    xs = np.linspace(x0, x1, n)
    ys = np.linspace(y0, y1, n)
    lines = ["x,y,rho"]
    for y in ys:
        for x in xs:
            rho = region.distance_to_complement(np.array([x, y]))
            lines.append(f"{_fmt(x)},{_fmt(y)},{_fmt(rho)}")
    _write(args.out, f"{scene.name}_horizon.csv", "\n".join(lines) + "\n")
    crease = region.crease_sample(scene.box, step=(x1 - x0) / 40.0)
    rows = ["x,y"]
    for z in crease.samples:
        rows.append(f"{_fmt(z[0])},{_fmt(z[1])}")
    _write(args.out, f"{scene.name}_crease.csv", "\n".join(rows) + "\n")
    figures.save_horizon_figure(region, scene.box, crease.samples,
                                os.path.join(args.out,
                                             f"{scene.name}_horizon.svg"))
    print(f"horizon: wrote {scene.name}_horizon.csv, {scene.name}_crease.csv, "
          f"{scene.name}_horizon.svg under {args.out}")
    return 0


def cmd_generators(args):
    scene = load_scene(args.scene)
    region = scene.region
    rows = ["foot_x,foot_y,dir_x,dir_y,cut_height,cut_x,cut_y,multiplicity,"
            "domain_kind"]
    for foot in scene.generator_seeds:
        gen = trace_generator(region, foot)
        cut = gen.cut_point
        mult = gen.cut_multiplicity
        rows.append(",".join([
            _fmt(gen.footpoint[0]), _fmt(gen.footpoint[1]),
            _fmt(gen.direction[0]), _fmt(gen.direction[1]),
            _fmt(gen.cut_height),
            _fmt(cut.base[0]) if cut else "nan",
            _fmt(cut.base[1]) if cut else "nan",
            "unbounded" if mult.unbounded else str(mult.count),
            gen.domain_kind,
        ]))
    _write(args.out, f"{scene.name}_generators.csv", "\n".join(rows) + "\n")
    print(f"generators: wrote {scene.name}_generators.csv under {args.out}")
    return 0


def cmd_classify(args):
    scene = load_scene(args.scene)
    region = scene.region
    code = 0
    for k, foot in enumerate(scene.generator_seeds):
        gen = trace_generator(region, foot)
        profile = cls.classify_generator(region, gen, n_samples=args.samples)
        report = cls.verify_structure(profile)
        name = f"{scene.name}_profile_{k}.csv"
        _write(args.out, name, cls.profile_to_csv(profile))
        jump = "none" if profile.jump is None else _fmt(profile.jump)
        print(f"classify: generator {k}: jump={jump} "
              f"structure={'pass' if report.passed else 'FAIL'} -> {name}")
        if not report.passed:
            code = 1
    return code


def cmd_jump_search(args):
    result = cls.search_jump_scene(budget=args.budget)
    rows = ["candidate,outcome"]
    if result is not None:
        for params, outcome in result.candidates_tried:
            rows.append(f"\"eps1={params.eps1} decay={params.decay} "
                        f"kappa_left={params.kappa_left}\",\"{outcome}\"")
    _write(args.out, "jump_search_report.csv", "\n".join(rows) + "\n")
    if result is None:
        print("jump-search: budget exhausted, no scene found")
        return 1
    scene = Scene(name="jump_winner", region=result.region,
                  box=((-1.5, 1.5), (-3.0, 1.4)),
                  generator_seeds=[np.array([0.0, 1.0])],
                  harness_jump=result.profile.jump)
    _write(args.out, "jump_winner.scene", scene_to_text(scene))
    _write(args.out, "jump_winner_profile.csv",
           cls.profile_to_csv(result.profile))
    print(f"jump-search: winner eps1={result.params.eps1} "
          f"decay={result.params.decay} kappa_left={result.params.kappa_left} "
          f"jump={result.profile.jump:.6g} -> jump_winner.scene")
    return 0


def _harness_inputs(args):
    scene = load_scene(args.scene)
    region = scene.region
    if not scene.generator_seeds:
        raise HorizonKitError("scene has no generator seeds")
    gen = trace_generator(region, scene.generator_seeds[0])
    jump = args.jump if args.jump is not None else scene.harness_jump
    if jump is None:
        profile = cls.classify_generator(region, gen)
        jump = profile.jump
    if jump is None:
        raise HorizonKitError(
            "no jump parameter: pass --jump or set harness_jump in the scene")
    return scene, region, gen, float(jump)


def cmd_harness(args):
    scene, region, gen, jump = _harness_inputs(args)
    params = hrn.select_params(region, gen, jump,
                               margins=scene.harness_margins,
                               n_terms=scene.harness_terms)
    report = hrn.run_harness(region, params)
    _write(args.out, f"{scene.name}_harness.csv", hrn.report_to_csv(report))
    verdict = hrn.contradiction_summary(region, report)
    base_p = params.base_at(params.t_p)
    w = 0.05 * region.scene_scale
    crease = region.crease_sample(
        ((base_p[0] - w, base_p[0] + w), (base_p[1] - w, base_p[1] + w)),
        step=w / 8.0)
    figures.save_harness_overview(
        region, report, os.path.join(args.out, f"{scene.name}_harness_scene.svg"),
        crease_samples=crease.samples)
    figures.save_harness_chord(
        report, os.path.join(args.out, f"{scene.name}_harness_chord.svg"))
    print(f"harness: {len(report.records)} terms; "
          f"curvature-pile-up={verdict.curvature_piles_up} "
          f"no-stable-second-order={verdict.no_stable_second_order_below} "
          f"achronal={verdict.achronality_holds}")
    return 0


def cmd_lmodel(args):
    scene = load_scene(args.scene)
    region = scene.region
    if not scene.generator_seeds:
        raise HorizonKitError("scene has no generator seeds")
    gen = trace_generator(region, scene.generator_seeds[0])
    s_mid = 0.5 * (gen.cut_height if np.isfinite(gen.cut_height)
                   else 2.0 * region.scene_scale)
    center = gen.point_at(s_mid)
    radius_u = args.radius if args.radius else 0.2 * s_mid
    plane_t = args.plane if args.plane is not None else 0.4 * s_mid
    rec = hrn.lmodel_reconstruct(region, center, radius_u, plane_t)
    grid = radius_u / 25.0
    det = {}
    gap = hrn.lmodel_verify(region, rec, center, radius_u, grid, plane_t,
                            details=det)
    rows = ["center_x,center_y,height,radius_u,plane_t,gap_upper,bound",
            ",".join(_fmt(v) for v in (center.base[0], center.base[1],
                                       center.height, radius_u, plane_t,
                                       gap, 2 * grid))]
    _write(args.out, f"{scene.name}_lmodel.csv", "\n".join(rows) + "\n")
    ok = gap <= 2 * grid
    print(f"lmodel: gap {gap:.4g} vs bound {2 * grid:.4g} -> "
          f"{'pass' if ok else 'FAIL'}")
    return 0 if ok else 1


def cmd_verify(args):
    results = acceptance.run_all(outdir=args.out, seed=args.seed,
                                 budget=args.budget)
    all_pass = True
    for r in results:
        print(f"{r.key} {'PASS' if r.passed else 'FAIL'}: {r.title} "
              f"({r.detail})")
        all_pass = all_pass and r.passed
    return 0 if all_pass else 1


def build_parser():
    ap = argparse.ArgumentParser(
        prog="horizonkit",
        description="Cauchy horizons of planar regions: heights, generators, "
                    "differentiability classes, curvature comparisons.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", default="out", help="output directory")

    p = sub.add_parser("horizon", help="sample the horizon height field")
    p.add_argument("scene", help="bundled scene name or scene file path")
    p.add_argument("--grid", type=int, default=81)
    common(p)
    p.set_defaults(func=cmd_horizon)

    p = sub.add_parser("generators", help="trace generators from scene seeds")
    p.add_argument("scene")
    common(p)
    p.set_defaults(func=cmd_generators)

    p = sub.add_parser("classify", help="label points along generators")
    p.add_argument("scene")
    p.add_argument("--samples", type=int, default=24)
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("jump-search", help="tune the dip family for a jump")
    p.add_argument("--budget", type=int, default=16)
    common(p)
    p.set_defaults(func=cmd_jump_search)

    p = sub.add_parser("harness", help="run the curvature comparison ladder")
    p.add_argument("scene")
    p.add_argument("--jump", type=float, default=None)
    common(p)
    p.set_defaults(func=cmd_harness)

    p = sub.add_parser("lmodel", help="rebuild the horizon from past cones")
    p.add_argument("scene")
    p.add_argument("--radius", type=float, default=None)
    p.add_argument("--plane", type=float, default=None)
    common(p)
    p.set_defaults(func=cmd_lmodel)

    p = sub.add_parser("verify", help="run the full acceptance suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=16)
    common(p)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0,) else 0
    try:
        return args.func(args)
    except SceneParseError as exc:
        print(f"scene error: {exc}", file=sys.stderr)
        return 2
    except HorizonKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
