"""Standalone SVG rendering of a dataset and its fitted curve."""

from __future__ import annotations

import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

from .dataset import DataSet
from .linreg import FittedModel, Link
from .logreg import predict_proba

WIDTH, HEIGHT = 640, 480
MARGIN = 56
CURVE_SAMPLES = 401
EXTENSION = 0.10


def nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / target
    mag = 10 ** math.floor(math.log10(raw))
    step = min((s * mag for s in (1, 2, 2.5, 5, 10) if s * mag >= raw), default=10 * mag)
    first = math.ceil(lo / step - 1e-9) * step
    ticks = []
    v = first
    while v <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(v) < 1e-12 * step else v)
        v += step
    return ticks


@dataclass(frozen=True)
class Frame:
    """Linear map from data coordinates to SVG pixels."""

    xlo: float
    xhi: float
    ylo: float
    yhi: float

    def px(self, x) -> np.ndarray:
        return MARGIN + (np.asarray(x) - self.xlo) / (self.xhi - self.xlo) * (WIDTH - 2 * MARGIN)

    def py(self, y) -> np.ndarray:
        return HEIGHT - MARGIN - (np.asarray(y) - self.ylo) / (self.yhi - self.ylo) * (HEIGHT - 2 * MARGIN)


def curve_grid(ds: DataSet, samples: int = CURVE_SAMPLES) -> np.ndarray:
    """Evenly spaced x covering the data range widened by 10% per side."""
    lo, hi = min(ds.x), max(ds.x)
    pad = EXTENSION * (hi - lo if hi > lo else 1.0)
    return np.linspace(lo - pad, hi + pad, samples)


def evaluate(model: FittedModel, x: np.ndarray) -> np.ndarray:
    if model.link is Link.SIGMOID:
        return np.asarray(predict_proba(model, x))
    return model.linear_predictor(x)


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _label(v: float) -> str:
    return f"{v:.6g}"


def render_svg(ds: DataSet, model: FittedModel, title: str = "") -> str:
    gx = curve_grid(ds)
    gy = evaluate(model, gx)
    if model.link is Link.SIGMOID:
        ylo, yhi = -0.05, 1.05
    else:
        vals = np.concatenate([gy, ds.ys])
        ylo, yhi = float(vals.min()), float(vals.max())
        pad = 0.05 * (yhi - ylo if yhi > ylo else 1.0)
        ylo, yhi = ylo - pad, yhi + pad
    fr = Frame(float(gx[0]), float(gx[-1]), ylo, yhi)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{WIDTH / 2}" y="{MARGIN / 2}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="14">{escape(title)}</text>')

    x0, x1 = MARGIN, WIDTH - MARGIN
    y0, y1 = HEIGHT - MARGIN, MARGIN
    out.append('<g id="axes" stroke="black" stroke-width="1">')
    out.append(f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}"/>')
    out.append(f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}"/>')
    out.append("</g>")
    out.append('<g id="ticks" font-family="sans-serif" font-size="11" fill="black">')
    for t in nice_ticks(fr.xlo, fr.xhi):
        px = _fmt(fr.px(t))
        out.append(f'<line x1="{px}" y1="{y0}" x2="{px}" y2="{y0 + 5}" stroke="black"/>')
        out.append(f'<text x="{px}" y="{y0 + 18}" text-anchor="middle">{_label(t)}</text>')
    for t in nice_ticks(fr.ylo, fr.yhi):
        py = _fmt(fr.py(t))
        out.append(f'<line x1="{x0 - 5}" y1="{py}" x2="{x0}" y2="{py}" stroke="black"/>')
        out.append(f'<text x="{x0 - 8}" y="{py}" text-anchor="end" dominant-baseline="middle">{_label(t)}</text>')
    out.append("</g>")

    pts = " ".join(f"{_fmt(a)},{_fmt(b)}" for a, b in zip(fr.px(gx), fr.py(gy)))
    out.append(f'<polyline id="curve" fill="none" stroke="red" stroke-width="2" points="{pts}"/>')

    # predicted values at the samples, drawn as small black crosses
    fitted = evaluate(model, ds.xs)
    out.append('<g id="predicted" stroke="black" stroke-width="1">')
    for a, b in zip(fr.px(ds.xs), fr.py(fitted)):
        out.append(f'<path d="M{_fmt(a - 4)},{_fmt(b)}H{_fmt(a + 4)}M{_fmt(a)},{_fmt(b - 4)}V{_fmt(b + 4)}"/>')
    out.append("</g>")

    out.append('<g id="data" fill="none" stroke="blue" stroke-width="1.5">')
    for a, b in zip(fr.px(ds.xs), fr.py(ds.ys)):
        out.append(f'<circle cx="{_fmt(a)}" cy="{_fmt(b)}" r="4"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
