"""Figure rendering for the report paths.

All figures are drawn with matplotlib (Agg backend) and saved as SVG next
to the delimited output.  The hash salt is pinned so repeated runs emit
structurally identical documents.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

matplotlib.rcParams["svg.hashsalt"] = "horizonkit"


def _rho_grid(region, box, n=121):
    (x0, x1), (y0, y1) = box
    xs = np.linspace(x0, x1, n)
    ys = np.linspace(y0, y1, n)
    zz = np.zeros((n, n))
    for j, y in enumerate(ys):
        for i, x in enumerate(xs):
            zz[j, i] = region.distance_to_complement(np.array([x, y]))
    return xs, ys, zz


def save_horizon_figure(region, box, crease_samples, path, n=121):
    """Contour map of the horizon height with the crease overlaid."""
    xs, ys, zz = _rho_grid(region, box, n)
    fig, ax = plt.subplots(figsize=(7, 6))
    cs = ax.contourf(xs, ys, zz, levels=24, cmap="viridis")
    ax.contour(xs, ys, zz, levels=[1e-12], colors="white", linewidths=1.2)
    fig.colorbar(cs, ax=ax, label="horizon height")
    if len(crease_samples):
        pts = np.asarray(crease_samples)
        ax.plot(pts[:, 0], pts[:, 1], ".", color="red", markersize=2,
                label="crease")
        ax.legend(loc="upper right")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_title(f"horizon height over {region.name or 'region'}")
    ax.set_aspect("equal")
    fig.savefig(path, format="svg")
    plt.close(fig)
    return path


def save_harness_overview(region, report, path, crease_samples=()):
    """Scene view of the comparison run: cone slices on the slice plane,
    crease ladder points, chord hits, and extracted points."""
    params = report.params
    base_p = params.base_at(params.t_p)
    base_f = params.base_at(params.t_f)
    base_minus = params.base_at(params.time_r)
    fig, ax = plt.subplots(figsize=(7, 6))
    for base, t, color, label in ((base_f, params.t_f, "tab:blue", "u_f cone"),
                                  (base_p, params.t_p, "tab:orange", "u_p cone")):
        r = t - params.time_r
        th = np.linspace(0, 2 * np.pi, 181)
        ax.plot(base[0] + r * np.cos(th), base[1] + r * np.sin(th),
                color=color, linewidth=1.0, label=label)
    if len(crease_samples):
        pts = np.asarray(crease_samples)
        ax.plot(pts[:, 0], pts[:, 1], ".", color="red", markersize=2,
                label="crease")
    qs = np.array([r.q.base for r in report.records])
    ax.plot(qs[:, 0], qs[:, 1], "x", color="black", markersize=5,
            label="q ladder")
    last = report.records[-1]
    ax.plot([last.p1[0], last.p2[0]], [last.p1[1], last.p2[1]], "o-",
            color="tab:green", markersize=4, label="chord hits")
    ax.plot([last.r_point[0]], [last.r_point[1]], "*", color="purple",
            markersize=10, label="extracted point")
    ax.plot([base_minus[0]], [base_minus[1]], "s", color="tab:red",
            markersize=6, label="u_minus point")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.legend(loc="best", fontsize=8)
    ax.set_title("curvature comparison on the slice plane")
    ax.set_aspect("equal")
    fig.savefig(path, format="svg")
    plt.close(fig)
    return path


def save_harness_chord(report, path, n=200):
    """Chord view of the last processed term: slice curve against the
    cone arc, with the extracted high-curvature point."""
    theta = report.theta_last
    last = report.records[-1]
    fig, ax = plt.subplots(figsize=(7, 4))
    if theta is not None:
        a, b = theta.domain
        ts = np.linspace(a, b, n)
        ax.plot(ts, [theta.f(t) for t in ts], label="horizon slice",
                color="tab:blue")
        chord = last.p2 - last.p1
        length = float(np.linalg.norm(chord))
        e1 = chord / length
        e2 = np.array([-e1[1], e1[0]])
        if float(e2 @ (report.params.anchor - last.p1)) < 0:
            e2 = -e2
        c2 = (float((last.q.base - last.p1) @ e1),
              float((last.q.base - last.p1) @ e2))
        r_q = last.q.height - report.params.time_r
        arc = c2[1] - np.sqrt(np.maximum(r_q ** 2 - (ts - c2[0]) ** 2, 0.0))
        ax.plot(ts, arc, label="cone arc", color="tab:orange", linestyle="--")
        t_star = float((last.r_point - last.p1) @ e1)
        ax.plot([t_star], [theta.f(t_star)], "*", color="purple",
                markersize=12, label="high-curvature point")
    ax.set_xlabel("chord parameter")
    ax.set_ylabel("offset")
    if theta is not None:
        ax.legend(loc="best", fontsize=8)
    ax.set_title(f"chord view, term n={last.n}")
    fig.savefig(path, format="svg")
    plt.close(fig)
    return path
