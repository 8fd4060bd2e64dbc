"""SVG and CSV renderings of Newton diagrams."""

from __future__ import annotations

import csv
import io
from typing import Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Polygon  # noqa: E402

from .gaussian import INF  # noqa: E402
from .polyhedron import LatticePolyhedron, regular_face  # noqa: E402

_STYLE = {
    "svg.hashsalt": "newton-contact",
    "svg.fonttype": "none",
    "font.size": 10,
    "axes.linewidth": 0.8,
}


def diagram_csv(P: LatticePolyhedron) -> str:
    """One row per bounded face: kind, dimension, normal, level, regular flag and vertices."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["kind", "dim", "normal", "level", "regular", "vertices"])
    if P.flat:
        return buf.getvalue()
    for f in P.bounded_faces:
        kind = "vertex" if f.dim == 0 else ("facet" if f.dim == P.dim - 1 else "face")
        a = f.a_determining
        w.writerow([kind, f.dim, " ".join(map(str, a)), f.level,
                    int(regular_face(f)), ";".join(" ".join(map(str, v)) for v in f.vertices)])
    return buf.getvalue()


def render_diagram(P: LatticePolyhedron, path: str, title: Optional[str] = None,
                   highlight: Optional[tuple] = None) -> None:
    """Draw the Newton polyhedron of a two-variable polynomial to ``path`` (SVG)."""
    if P.dim != 2:
        raise ValueError("diagrams are drawn for two variables only")
    if P.flat:
        raise ValueError("flat polyhedron has no diagram")
    verts = sorted(P.vertices, key=lambda v: (v[0], -v[1]))
    xs = [v[0] for v in P.support] + [v[0] for v in verts]
    ys = [v[1] for v in P.support] + [v[1] for v in verts]
    top = max(max(xs), max(ys)) + 2
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(4.5, 4.5))
        # the region: vertices in order of increasing x, closed through the box corner
        region = [(verts[0][0], top)] + list(verts) + [(top, verts[-1][1]), (top, top)]
        ax.add_patch(Polygon(region, closed=True, facecolor="#dde6f2", edgecolor="none", zorder=0))
        for f in P.bounded_facets():
            (x0, y0), (x1, y1) = f.vertices[0], f.vertices[-1]
            is_hl = highlight is not None and tuple(f.vertices) == tuple(highlight)
            ax.plot([x0, x1], [y0, y1], color="#b2182b" if is_hl else "#2166ac", lw=2, zorder=2)
            mx, my = (x0 + x1) / 2, (y0 + y1) / 2
            ax.annotate("(" + ",".join(map(str, f.a_determining)) + ")", (mx, my),
                        textcoords="offset points", xytext=(6, 6), fontsize=8, color="#444444")
        ax.plot([verts[0][0], verts[0][0]], [verts[0][1], top], color="#2166ac", lw=1, ls=":", zorder=1)
        ax.plot([verts[-1][0], top], [verts[-1][1], verts[-1][1]], color="#2166ac", lw=1, ls=":", zorder=1)
        sx = [s[0] for s in P.support]
        sy = [s[1] for s in P.support]
        ax.scatter(sx, sy, s=14, color="#777777", zorder=3, label="support")
        ax.scatter([v[0] for v in verts], [v[1] for v in verts], s=30, color="#b2182b", zorder=4,
                   label="vertices")
        for j, r in enumerate(P.rho):
            if r != INF:
                pt = (r, 0) if j == 0 else (0, r)
                ax.annotate(f"rho{j + 1}={r}", pt, textcoords="offset points",
                            xytext=(4, -12) if j == 0 else (6, 2), fontsize=8)
        ax.set_xlim(-0.5, top)
        ax.set_ylim(-0.5, top)
        ax.set_aspect("equal")
        ax.set_xlabel("exponent of z1")
        ax.set_ylabel("exponent of z2")
        ax.grid(True, lw=0.3, color="#cccccc")
        ax.legend(loc="upper right", fontsize=8, frameon=False)
        if title:
            ax.set_title(title, fontsize=9)
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None, "Creator": None})
        plt.close(fig)


__all__ = ["render_diagram", "diagram_csv"]
