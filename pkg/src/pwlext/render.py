"""SVG rendering of a function on the unit square: triangles colored by
gradient class, exact rational values printed at the grid vertices.

This is the only module where floating point appears, and only for pixel
placement; every label is the exact value's text.
"""

from __future__ import annotations

from .pwl import PwlFunction

_PALETTE = [
    "#ffd92f", "#8da0cb", "#66c2a5", "#fc8d62", "#e78ac3", "#a6d854",
    "#b3b3b3", "#e5c494", "#7fc97f", "#beaed4", "#fdc086", "#386cb0",
]


def _gradients(pi: PwlFunction):
    q = pi.q
    tris = []
    for a in range(q):
        for b in range(q):
            v00 = pi.grid_value(a, b)
            v10 = pi.grid_value(a + 1, b)
            v01 = pi.grid_value(a, b + 1)
            v11 = pi.grid_value(a + 1, b + 1)
            lower = (q * (v10 - v00), q * (v01 - v00))
            upper = (q * (v11 - v01), q * (v11 - v10))
            tris.append(((a, b), "lower", lower))
            tris.append(((a, b), "upper", upper))
    return tris


def render_svg(pi: PwlFunction, size: int = 480) -> str:
    q = pi.q
    pad = 28
    side = size - 2 * pad
    cell = side / q

    def pt(x: float, y: float) -> str:
        return f"{pad + x * cell:.2f},{pad + (q - y) * cell:.2f}"

    tris = _gradients(pi)
    color_of = {}
    for _, _, grad in tris:
        if grad not in color_of:
            color_of[grad] = _PALETTE[len(color_of) % len(_PALETTE)]

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    for (a, b), half, grad in tris:
        if half == "lower":
            pts = f"{pt(a, b)} {pt(a + 1, b)} {pt(a, b + 1)}"
        else:
            pts = f"{pt(a + 1, b)} {pt(a, b + 1)} {pt(a + 1, b + 1)}"
        out.append(f'<polygon points="{pts}" fill="{color_of[grad]}" '
                   f'stroke="#444" stroke-width="0.8"/>')
    fx = pi.f.x * q
    fy = pi.f.y * q
    if fx.denominator == 1 and fy.denominator == 1:
        out.append(f'<circle cx="{pad + int(fx) % q * cell:.2f}" '
                   f'cy="{pad + (q - int(fy) % q) * cell:.2f}" r="5" '
                   f'fill="none" stroke="red" stroke-width="2"/>')
    for a in range(q + 1):
        for b in range(q + 1):
            v = pi.grid_value(a, b)
            x = pad + a * cell
            y = pad + (q - b) * cell
            out.append(f'<rect x="{x - 11:.2f}" y="{y - 8:.2f}" width="22" height="16" '
                       f'fill="white" stroke="#999" stroke-width="0.5"/>')
            out.append(f'<text x="{x:.2f}" y="{y + 4:.2f}" font-size="11" '
                       f'text-anchor="middle" font-family="monospace">{v}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
