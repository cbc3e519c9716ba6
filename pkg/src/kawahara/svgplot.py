"""Minimal SVG line plots (no plotting library needed)."""
import math
from xml.sax.saxutils import escape

from .io import atomic_write_text

COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")
W, H = 640, 420
LEFT, RIGHT, TOP, BOTTOM = 80, 20, 40, 60


def _transform(values, log):
    out = []
    for v in values:
        if log:
            out.append(math.log10(v) if v > 0 and math.isfinite(v) else None)
        else:
            out.append(v if math.isfinite(v) else None)
    return out


def _span(vals):
    vals = [v for v in vals if v is not None]
    if not vals:
        return 0.0, 1.0
    lo, hi = min(vals), max(vals)
    if hi == lo:
        pad = abs(lo) * 0.05 or 1.0
        return lo - pad, hi + pad
    return lo, hi


def line_plot(series, title="", xlabel="", ylabel="", logx=False, logy=False):
    """SVG text for ``series``: list of ``(label, xs, ys)``."""
    tx = [_transform(xs, logx) for _, xs, _ in series]
    ty = [_transform(ys, logy) for _, _, ys in series]
    x0, x1 = _span([v for s in tx for v in s])
    y0, y1 = _span([v for s in ty for v in s])

    def px(x):
        return LEFT + (x - x0) / (x1 - x0) * (W - LEFT - RIGHT)

    def py(y):
        return H - BOTTOM - (y - y0) / (y1 - y0) * (H - TOP - BOTTOM)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        f'<rect width="{W}" height="{H}" fill="white"/>',
        f'<rect x="{LEFT}" y="{TOP}" width="{W - LEFT - RIGHT}" height="{H - TOP - BOTTOM}" '
        'fill="none" stroke="black"/>',
        f'<text x="{W / 2}" y="24" text-anchor="middle" font-size="15">{escape(title)}</text>',
        f'<text x="{W / 2}" y="{H - 14}" text-anchor="middle" font-size="13">{escape(xlabel)}</text>',
        f'<text x="16" y="{H / 2}" text-anchor="middle" font-size="13" '
        f'transform="rotate(-90 16 {H / 2})">{escape(ylabel)}</text>',
    ]
    for i in range(5):
        xv = x0 + (x1 - x0) * i / 4
        yv = y0 + (y1 - y0) * i / 4
        xl = f"1e{xv:.1f}" if logx else f"{xv:.3g}"
        yl = f"1e{yv:.1f}" if logy else f"{yv:.3g}"
        parts.append(f'<text x="{px(xv):.1f}" y="{H - BOTTOM + 16}" text-anchor="middle" font-size="11">{xl}</text>')
        parts.append(f'<text x="{LEFT - 6}" y="{py(yv) + 4:.1f}" text-anchor="end" font-size="11">{yl}</text>')
    for j, ((label, _, _), xs, ys) in enumerate(zip(series, tx, ty)):
        color = COLORS[j % len(COLORS)]
        pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys) if x is not None and y is not None)
        if pts:
            parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        parts.append(f'<text x="{W - RIGHT - 8}" y="{TOP + 16 + 16 * j}" text-anchor="end" '
                     f'font-size="12" fill="{color}">{escape(label)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_plot(path, series, **kwargs):
    atomic_write_text(path, line_plot(series, **kwargs))


def invariant_drift_plot(path, record):
    series = []
    for name in ("i1", "i2", "i3"):
        v = getattr(record, name)
        series.append((f"|{name}(t) - {name}(0)|", list(record.times), [abs(x - v[0]) for x in v]))
    write_plot(path, series, title="Invariant drift", xlabel="t", ylabel="absolute drift", logy=True)


def convergence_plot(path, report):
    xlabel = "dt" if report.axis == "temporal" else "N"
    write_plot(path, [("L2 error", list(report.params), list(report.errors))],
               title=f"{report.axis} convergence", xlabel=xlabel, ylabel="error", logx=True, logy=True)


def soliton_plot(path, report):
    write_plot(path, [("L2 error", list(report.times), list(report.l2_errors))],
               title="Soliton transport error", xlabel="t", ylabel="L2 error", logy=True)
