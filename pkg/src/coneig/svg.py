"""Static SVG plots of disks, exclusion annuli and eigenvalue markers.

Output is plain text built by hand so repeated runs are byte-identical.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence
from xml.sax.saxutils import escape

from .gersch import Disk

SIZE = 480
MARGIN = 24
PALETTE = ("#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860")


def _f(x: float) -> str:
    s = f"{x:.4f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _extent(disks, annulus, markers):
    boxes = []
    for d in disks:
        c = d.center.mid()
        r = float(d.radius)
        if math.isfinite(r):
            boxes.append((c.real - r, c.real + r, c.imag - r, c.imag + r))
    if annulus is not None:
        c, _, outer = annulus
        c = complex(c)
        if math.isfinite(outer):
            boxes.append((c.real - outer, c.real + outer, c.imag - outer, c.imag + outer))
    for z in markers:
        boxes.append((z.real, z.real, z.imag, z.imag))
    if not boxes:
        return -1.0, 1.0, -1.0, 1.0
    x0 = min(b[0] for b in boxes)
    x1 = max(b[1] for b in boxes)
    y0 = min(b[2] for b in boxes)
    y1 = max(b[3] for b in boxes)
    span = max(x1 - x0, y1 - y0, 1e-9) * 1.1
    cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
    return cx - span / 2, cx + span / 2, cy - span / 2, cy + span / 2


def render(
    disks: Sequence[Disk] = (),
    annulus: Optional[tuple] = None,
    markers: Sequence[complex] = (),
    title: str = "",
) -> str:
    """SVG document.

    Parameters
    ----------
    disks : closed disks drawn filled, colored by ``block``
    annulus : ``(center, inner, outer)``; the ring between the two radii is
        certified to contain no eigenvalue
    markers : approximate eigenvalues, drawn as crosses (non-rigorous)
    """
    markers = [complex(z) for z in markers]
    x0, x1, y0, y1 = _extent(disks, annulus, markers)
    scale = (SIZE - 2 * MARGIN) / (x1 - x0)

    def px(z: complex):
        return MARGIN + (z.real - x0) * scale, MARGIN + (y1 - z.imag) * scale

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f"<title>{escape(title)}</title>",
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="#ffffff"/>',
    ]
    ox, oy = px(0j)
    if MARGIN <= oy <= SIZE - MARGIN:
        out.append(f'<line x1="{MARGIN}" y1="{_f(oy)}" x2="{SIZE - MARGIN}" y2="{_f(oy)}" stroke="#999999" stroke-width="0.5"/>')
    if MARGIN <= ox <= SIZE - MARGIN:
        out.append(f'<line x1="{_f(ox)}" y1="{MARGIN}" x2="{_f(ox)}" y2="{SIZE - MARGIN}" stroke="#999999" stroke-width="0.5"/>')

    if annulus is not None:
        c, inner, outer = complex(annulus[0]), float(annulus[1]), float(annulus[2])
        cx, cy = px(c)
        big = 2 * SIZE if not math.isfinite(outer) else outer * scale
        out.append(
            f'<circle cx="{_f(cx)}" cy="{_f(cy)}" r="{_f(big)}" fill="#f0f0f0" stroke="#333333" '
            'stroke-dasharray="4 3" stroke-width="1"><title>exclusion radius</title></circle>'
        )
        out.append(
            f'<circle cx="{_f(cx)}" cy="{_f(cy)}" r="{_f(inner * scale)}" fill="#cfe3f5" stroke="#1f4e79" '
            'stroke-width="1"><title>inner disk</title></circle>'
        )

    for d in disks:
        r = float(d.radius)
        if not math.isfinite(r):
            continue
        color = PALETTE[(d.block or 0) % len(PALETTE)]
        cx, cy = px(d.center.mid())
        out.append(
            f'<circle cx="{_f(cx)}" cy="{_f(cy)}" r="{_f(r * scale)}" fill="{color}" fill-opacity="0.18" '
            f'stroke="{color}" stroke-width="1"><title>{escape(d.label)}</title></circle>'
        )

    for z in markers:
        cx, cy = px(z)
        out.append(
            f'<path d="M{_f(cx - 4)} {_f(cy - 4)}L{_f(cx + 4)} {_f(cy + 4)}M{_f(cx - 4)} {_f(cy + 4)}L{_f(cx + 4)} {_f(cy - 4)}" '
            'stroke="#000000" stroke-width="1.2"><title>approximate eigenvalue (non-rigorous)</title></path>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
