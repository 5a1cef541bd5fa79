"""SVG graph of a map: one polyline, integer ticks, breakpoints marked."""

from __future__ import annotations

from .plmap import PLMap

_SIZE = 480
_PAD = 40


def plot_svg(f: PLMap, title: str = "") -> str:
    pts = [(float(x), float(y)) for x, y in f.breaks]
    end = pts[-1][0] + 2
    pts.append((end, end + f.tail))
    top = max(end, end + f.tail)
    scale = (_SIZE - 2 * _PAD) / top

    def sx(v):
        return _PAD + v * scale

    def sy(v):
        return _SIZE - _PAD - v * scale

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SIZE}" height="{_SIZE}" '
        f'viewBox="0 0 {_SIZE} {_SIZE}">',
        f"<title>{_escape(title)}</title>",
        f'<line x1="{sx(0):.2f}" y1="{sy(0):.2f}" x2="{sx(top):.2f}" y2="{sy(0):.2f}" stroke="#888"/>',
        f'<line x1="{sx(0):.2f}" y1="{sy(0):.2f}" x2="{sx(0):.2f}" y2="{sy(top):.2f}" stroke="#888"/>',
        f'<line x1="{sx(0):.2f}" y1="{sy(0):.2f}" x2="{sx(top):.2f}" y2="{sy(top):.2f}" '
        'stroke="#ccc" stroke-dasharray="4 4"/>',
    ]
    step = max(1, int(top) // 20)
    for k in range(0, int(top) + 1, step):
        out.append(f'<line x1="{sx(k):.2f}" y1="{sy(0):.2f}" x2="{sx(k):.2f}" y2="{sy(0) + 4:.2f}" stroke="#888"/>')
        out.append(f'<line x1="{sx(0) - 4:.2f}" y1="{sy(k):.2f}" x2="{sx(0):.2f}" y2="{sy(k):.2f}" stroke="#888"/>')
        out.append(f'<text x="{sx(k):.2f}" y="{sy(0) + 16:.2f}" font-size="9" text-anchor="middle">{k}</text>')
    poly = " ".join(f"{sx(x):.3f},{sy(y):.3f}" for x, y in pts)
    out.append(f'<polyline points="{poly}" fill="none" stroke="#1f4e99" stroke-width="1.2"/>')
    for x, y in pts[:-1]:
        out.append(f'<circle cx="{sx(x):.3f}" cy="{sy(y):.3f}" r="1.8" fill="#c0392b"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
