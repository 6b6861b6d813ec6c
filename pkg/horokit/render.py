"""SVG scenes in the half-plane or the disk model.

Every drawable is projected to pixel space first; a geodesic is then the
circular arc through the images of its two endpoints and its top point, which
covers semicircles, vertical lines and disk arcs with one code path.
"""

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Tuple, Union

from .config import CounterexampleConfig
from .counterexample import build
from .errors import EmptyScene
from .flows import J_FRAME, Frame, basepoint, endpoints, geodesic_flow
from .hyperbolic_core import BoundaryPoint, Geodesic, Horoball, Point, horocycle_euclidean, halfplane_to_disk
from .isometry import Classification, classify, fixed_points
from .schottky import SchottkySpec, enumerate_orbit
from .utils import write_text

logger = logging.getLogger(__name__)

NS_SVG = "http://www.w3.org/2000/svg"
FRAME_LENGTH = 0.5

STYLE = {
    ".boundary": {"stroke": "#000", "stroke-width": 1.5, "fill": "none"},
    ".circle": {"stroke": "#1f4e9c", "stroke-width": 1, "fill": "none"},
    ".geodesic": {"stroke": "#555", "stroke-width": 1, "fill": "none"},
    ".axis": {"stroke": "#c0392b", "stroke-width": 0.75, "fill": "none", "stroke-dasharray": "4 3"},
    ".ray": {"stroke": "#27ae60", "stroke-width": 1.25, "fill": "none"},
    ".horoball": {"stroke": "#8e44ad", "stroke-width": 1, "fill": "#8e44ad", "fill-opacity": 0.08},
    ".orbit": {"fill": "#000"},
    ".frame": {"stroke": "#e67e22", "stroke-width": 2},
}

Pixel = Tuple[float, float]


# ------------------------------
# Scene
# ------------------------------
@dataclass
class Viewport:
    x_min: float = -110.0
    x_max: float = 25.0
    y_max: float = 12.0
    width: int = 800


@dataclass
class Scene:
    geodesics: List[Tuple[Geodesic, str]] = field(default_factory=list)
    horoballs: List[Horoball] = field(default_factory=list)
    points: List[Tuple[Point, str]] = field(default_factory=list)
    frames: List[Frame] = field(default_factory=list)

    @property
    def empty(self) -> bool:
        return not (self.geodesics or self.horoballs or self.points or self.frames)

    def add_frame(self, f: Frame, with_horoball: bool = True) -> None:
        minus, plus = endpoints(f)
        self.frames.append(f)
        self.geodesics.append((Geodesic(minus, plus), "ray"))
        if with_horoball:
            self.horoballs.append(Horoball(base=minus, anchor=basepoint(f)))


def scene_from_spec(spec: SchottkySpec, orbit_len: int = 0, axes: bool = True) -> Scene:
    scene = Scene()
    for pair in spec.pairs:
        scene.geodesics.append((pair.plus.geodesic, "circle"))
        scene.geodesics.append((pair.minus.geodesic, "circle"))
        # parabolic or identity pairings have no translation axis
        if axes and classify(pair.gamma) is Classification.HYPERBOLIC:
            scene.geodesics.append((Geodesic(*fixed_points(pair.gamma)), "axis"))
    if orbit_len:
        scene.points.extend((o.point, "orbit") for o in enumerate_orbit(spec, orbit_len))
    return scene


def scene_from_counterexample(config: CounterexampleConfig, orbit_len: int = 0) -> Scene:
    """The construction with its translation axes and the vector v based at i (v- = inf, v+ = 0)."""
    scene = scene_from_spec(build(config), orbit_len)
    scene.add_frame(J_FRAME)
    return scene


# ------------------------------
# SVG elements
# ------------------------------
def demangle(k: str) -> str:
    return k.rstrip("_").replace("_", "-")


def rounder(x) -> str:
    if isinstance(x, float):
        s = f"{x:.4f}".rstrip("0").rstrip(".")
        return "0" if s in ("-0", "") else s
    return str(x)


def props_repr(d: dict) -> str:
    return " ".join(f'{demangle(k)}="{rounder(v)}"' for k, v in d.items())


def rule_repr(d: dict, tab: str = 4 * " ") -> str:
    return "\n".join(f"{tab}{k}: {rounder(v)};" for k, v in d.items())


def style_repr(d: dict) -> str:
    return "\n".join(tag + " {\n" + rule_repr(rules) + "\n}" for tag, rules in d.items())


class Element:
    def __init__(self, tag: str, unary: bool = True, inner: str = "", **attr):
        self.tag = tag
        self.unary = unary
        self.inner = inner
        self.attr = attr

    def svg(self) -> str:
        props = props_repr(self.attr)
        pre = " " if props else ""
        if self.unary:
            return f"<{self.tag}{pre}{props} />"
        return f"<{self.tag}{pre}{props}>{self.inner}</{self.tag}>"


# ------------------------------
# Projection
# ------------------------------
def _circumcircle(p: Pixel, q: Pixel, r: Pixel) -> Optional[Tuple[float, float, float]]:
    ax, ay = p
    bx, by = q
    cx, cy = r
    den = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    a2, b2, c2 = ax * ax + ay * ay, bx * bx + by * by, cx * cx + cy * cy
    if abs(den) < 1e-12 * max(1.0, a2 + b2 + c2):
        return None
    ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / den
    uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / den
    return ux, uy, math.hypot(ax - ux, ay - uy)


def _arc(p: Pixel, m: Pixel, q: Pixel, tag: str) -> Element:
    """Arc from p through m to q; a straight segment when they are collinear."""
    circle = _circumcircle(p, m, q)
    start = f"M {rounder(p[0])} {rounder(p[1])}"
    if circle is None:
        return Element("path", d=f"{start} L {rounder(q[0])} {rounder(q[1])}", class_=tag)
    radius = circle[2]
    cross = (m[0] - p[0]) * (q[1] - m[1]) - (m[1] - p[1]) * (q[0] - m[0])
    sweep = 1 if cross > 0 else 0
    d = f"{start} A {rounder(radius)} {rounder(radius)} 0 0 {sweep} {rounder(q[0])} {rounder(q[1])}"
    return Element("path", d=d, class_=tag)


class _Projection:
    def __init__(self, model: str, view: Viewport):
        self.model = model
        self.view = view
        if model == "disk":
            self.width = self.height = float(view.width)
        else:
            self.scale = view.width / (view.x_max - view.x_min)
            self.width = float(view.width)
            self.height = view.y_max * self.scale

    def __call__(self, p: Union[Point, BoundaryPoint]) -> Pixel:
        if self.model == "disk":
            u = halfplane_to_disk(p)
            half = self.width / 2
            return half * (1 + u.real), half * (1 - u.imag)
        if isinstance(p, BoundaryPoint):
            if p.is_infinity:
                raise ValueError("infinity has no half-plane pixel")
            return (p.x - self.view.x_min) * self.scale, self.height
        return (p.x - self.view.x_min) * self.scale, (self.view.y_max - p.y) * self.scale

    def visible_span(self, lo: float, hi: float) -> bool:
        return self.model == "disk" or (hi >= self.view.x_min and lo <= self.view.x_max)

    def boundary(self) -> Element:
        if self.model == "disk":
            half = self.width / 2
            return Element("circle", cx=half, cy=half, r=half, class_="boundary")
        return Element("line", x1=0.0, y1=self.height, x2=self.width, y2=self.height, class_="boundary")


def _geodesic_element(g: Geodesic, proj: _Projection, tag: str) -> Optional[Element]:
    if g.is_vertical:
        foot = g.foot
        if not proj.visible_span(foot, foot):
            return None
        if proj.model == "halfplane":
            x = (foot - proj.view.x_min) * proj.scale
            return Element("path", d=f"M {rounder(x)} {rounder(proj.height)} L {rounder(x)} 0", class_=tag)
        mid = Point(foot, 1.0)
    else:
        if not proj.visible_span(g.center - g.radius, g.center + g.radius):
            return None
        mid = Point(g.center, g.radius)
    return _arc(proj(g.start), proj(mid), proj(g.end), tag)


def _horoball_element(h: Horoball, proj: _Projection) -> Optional[Element]:
    if h.base.is_infinity:
        level = h.anchor.y
        if proj.model == "halfplane":
            y = (proj.view.y_max - level) * proj.scale
            return Element("rect", x=0.0, y=0.0, width=proj.width, height=max(y, 0.0), class_="horoball")
        rim = [Point(0.0, level), Point(level, level), Point(-level, level)]
    else:
        cx, cy, r = horocycle_euclidean(h)
        if not proj.visible_span(cx - r, cx + r):
            return None
        if proj.model == "halfplane":
            x, y = proj(Point(cx, cy))
            return Element("circle", cx=x, cy=y, r=r * proj.scale, class_="horoball")
        rim = [Point(cx, 2 * r), Point(cx + r, r), Point(cx - r, r)]
    circle = _circumcircle(*(proj(p) for p in rim))
    if circle is None:
        return None
    return Element("circle", cx=circle[0], cy=circle[1], r=circle[2], class_="horoball")


def _visible(p: Pixel, proj: _Projection) -> bool:
    return all(math.isfinite(c) for c in p) and 0 <= p[0] <= proj.width and 0 <= p[1] <= proj.height


def svg_text(scene: Scene, model: str = "halfplane", view: Optional[Viewport] = None) -> str:
    if scene.empty:
        raise EmptyScene("nothing to draw")
    if model not in ("halfplane", "disk"):
        raise ValueError(f"unknown model {model!r}")
    proj = _Projection(model, view or Viewport())
    body: List[Element] = [Element("style", unary=False, inner="\n" + style_repr(STYLE) + "\n"), proj.boundary()]
    for h in scene.horoballs:
        el = _horoball_element(h, proj)
        if el is not None:
            body.append(el)
    for g, tag in scene.geodesics:
        el = _geodesic_element(g, proj, tag)
        if el is not None:
            body.append(el)
    for p, tag in scene.points:
        x, y = proj(p)
        if _visible((x, y), proj):
            body.append(Element("circle", cx=x, cy=y, r=2.0, class_=tag))
    for f in scene.frames:
        (x1, y1), (x2, y2) = proj(basepoint(f)), proj(basepoint(geodesic_flow(f, FRAME_LENGTH)))
        body.append(Element("line", x1=x1, y1=y1, x2=x2, y2=y2, class_="frame"))
    inner = "\n" + "\n".join(el.svg() for el in body) + "\n"
    doc = Element(
        "svg",
        unary=False,
        inner=inner,
        xmlns=NS_SVG,
        version="1.1",
        width=proj.width,
        height=proj.height,
        viewBox=f"0 0 {rounder(proj.width)} {rounder(proj.height)}",
    )
    logger.debug("rendered %d elements in the %s model", len(body), model)
    return doc.svg() + "\n"


def render_svg(scene: Scene, path: Union[str, Path], model: str = "halfplane", view: Optional[Viewport] = None) -> Path:
    return write_text(svg_text(scene, model, view), path)
