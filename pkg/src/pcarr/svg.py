"""SVG rendering of certified circle scenes."""

from __future__ import annotations

from pathlib import Path

from .realizer import Certificate

PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd",
           "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f")


def render_svg(cert: Certificate, size: int = 400) -> str:
    if not isinstance(cert, Certificate):
        raise TypeError("only verified certificates can be exported")
    circles = cert.scene.circles
    x0 = min(c.a - c.r for c in circles)
    x1 = max(c.a + c.r for c in circles)
    y0 = min(c.b - c.r for c in circles)
    y1 = max(c.b + c.r for c in circles)
    span = max(x1 - x0, y1 - y0)
    pad = span / 20
    stroke = span / 200
    # flip the y axis so the picture matches the usual coordinate orientation
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="{x0 - pad:g} {-y1 - pad:g} {x1 - x0 + 2 * pad:g} {y1 - y0 + 2 * pad:g}">',
        f"<title>{cert.code.text}</title>",
    ]
    for i, c in enumerate(circles):
        lines.append(f'<circle cx="{c.a}" cy="{-c.b}" r="{c.r}" fill="none" '
                     f'stroke="{PALETTE[i % len(PALETTE)]}" stroke-width="{stroke:g}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def export_svg(cert: Certificate, out) -> None:
    Path(out).write_text(render_svg(cert), encoding="utf-8")
